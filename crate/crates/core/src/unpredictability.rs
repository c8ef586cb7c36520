//! Per-team failure rates of the over-40 par-score prediction.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::dls::{predict_at, selected_states, OverSelection, ResourceTable};
use crate::match_data::{Dataset, Side, Team};
use crate::{Error, Result};

pub const INDEX_OVER: u8 = 40;
pub const DEFAULT_MIN_MATCHES: u32 = 40;

/// 2 x 2 counts indexed `[actual][predicted]` by [`Side::index`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ConfusionMatrix2 {
    pub counts: [[u64; 2]; 2],
}

impl ConfusionMatrix2 {
    pub fn from_counts(t1_t1: u64, t1_t2: u64, t2_t1: u64, t2_t2: u64) -> ConfusionMatrix2 {
        ConfusionMatrix2 {
            counts: [[t1_t1, t1_t2], [t2_t1, t2_t2]],
        }
    }

    pub fn get(&self, actual: Side, predicted: Side) -> u64 {
        self.counts[actual.index()][predicted.index()]
    }

    pub fn add(&mut self, actual: Side, predicted: Side) {
        self.counts[actual.index()][predicted.index()] += 1;
    }

    pub fn row_total(&self, actual: Side) -> u64 {
        self.counts[actual.index()].iter().sum()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn mispredictions(&self) -> u64 {
        self.get(Side::Team1, Side::Team2) + self.get(Side::Team2, Side::Team1)
    }
}

impl std::ops::AddAssign for ConfusionMatrix2 {
    fn add_assign(&mut self, rhs: ConfusionMatrix2) {
        for a in 0..2 {
            for p in 0..2 {
                self.counts[a][p] += rhs.counts[a][p];
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Role {
    Chasing,
    Defending,
}

impl Role {
    /// The side a team plays in this role.
    pub fn side(self) -> Side {
        match self {
            Role::Chasing => Side::Team2,
            Role::Defending => Side::Team1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scenario {
    WonChasing,
    LostChasing,
    WonDefending,
    LostDefending,
}

impl Scenario {
    pub const ALL: [Scenario; 4] = [
        Scenario::WonChasing,
        Scenario::LostChasing,
        Scenario::WonDefending,
        Scenario::LostDefending,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::WonChasing => "won_chasing",
            Scenario::LostChasing => "lost_chasing",
            Scenario::WonDefending => "won_defending",
            Scenario::LostDefending => "lost_defending",
        }
    }

    pub fn role(self) -> Role {
        match self {
            Scenario::WonChasing | Scenario::LostChasing => Role::Chasing,
            Scenario::WonDefending | Scenario::LostDefending => Role::Defending,
        }
    }

    /// The actual winner this scenario conditions on.
    pub fn actual(self) -> Side {
        match self {
            Scenario::WonChasing | Scenario::LostDefending => Side::Team2,
            Scenario::LostChasing | Scenario::WonDefending => Side::Team1,
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Scenario> {
        Scenario::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Argument(format!("unknown scenario `{s}`")))
    }
}

impl Serialize for Scenario {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioScore {
    pub team: Team,
    pub scenario: Scenario,
    pub failing_count: u64,
    pub scenario_total: u64,
    /// `failing_count / scenario_total`, a fraction.
    pub percentage: f64,
    /// Matches in the role's matrix.
    pub n_matches: u64,
}

impl ScenarioScore {
    /// Percentage on the 0-100 scale rounded to two decimals, as printed.
    pub fn percent_string(&self) -> String {
        format!("{:.2}", 100.0 * self.percentage)
    }

    fn cmp_fraction(&self, other: &ScenarioScore) -> Ordering {
        (u128::from(self.failing_count) * u128::from(other.scenario_total))
            .cmp(&(u128::from(other.failing_count) * u128::from(self.scenario_total)))
    }
}

/// Confusion matrix of the over-40 prediction over the matches `team` plays
/// in `role`.
pub fn team_confusion_at_40(
    dataset: &Dataset,
    table: &ResourceTable,
    team: &Team,
    role: Role,
) -> Result<ConfusionMatrix2> {
    if !dataset.teams().contains(team) {
        return Err(Error::Argument(format!("team `{team}` does not appear in the dataset")));
    }
    confusion(dataset, table, |m| m.team(role.side()) == team)
}

/// Over-40 confusion matrix across every match.
pub fn overall_confusion_at_40(dataset: &Dataset, table: &ResourceTable) -> Result<ConfusionMatrix2> {
    confusion(dataset, table, |_| true)
}

fn confusion(
    dataset: &Dataset,
    table: &ResourceTable,
    keep: impl Fn(&crate::match_data::MatchRecord) -> bool,
) -> Result<ConfusionMatrix2> {
    let mut cm = ConfusionMatrix2::default();
    for (m, s) in selected_states(dataset, OverSelection::Checkpoint(INDEX_OVER)) {
        if keep(m) {
            cm.add(m.actual_winner, predict_at(m, s, table)?.predicted);
        }
    }
    Ok(cm)
}

/// Share of the scenario's actual outcomes the prediction got wrong.
pub fn failing_percentage(team: &Team, matrix: &ConfusionMatrix2, scenario: Scenario) -> Result<ScenarioScore> {
    let actual = scenario.actual();
    let scenario_total = matrix.row_total(actual);
    if scenario_total == 0 {
        return Err(Error::UndefinedScore {
            team: team.to_string(),
            scenario: scenario.to_string(),
        });
    }
    let failing_count = matrix.get(actual, actual.opposite());
    Ok(ScenarioScore {
        team: team.clone(),
        scenario,
        failing_count,
        scenario_total,
        percentage: failing_count as f64 / scenario_total as f64,
        n_matches: matrix.total(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ranking {
    pub scenario: Scenario,
    pub min_matches: u32,
    /// Highest failing percentage first; rank is position + 1.
    pub scores: Vec<ScenarioScore>,
}

impl Ranking {
    pub fn ranked(&self) -> impl Iterator<Item = (usize, &ScenarioScore)> {
        self.scores.iter().enumerate().map(|(i, s)| (i + 1, s))
    }
}

/// Ranks teams with at least `min_matches` over-40 matches in the scenario's
/// role. Equal percentages are ordered by team name.
pub fn rank_teams(dataset: &Dataset, table: &ResourceTable, scenario: Scenario, min_matches: u32) -> Result<Ranking> {
    let mut scores = Vec::new();
    for team in dataset.teams() {
        let cm = team_confusion_at_40(dataset, table, &team, scenario.role())?;
        if cm.total() < u64::from(min_matches) || cm.row_total(scenario.actual()) == 0 {
            continue;
        }
        scores.push(failing_percentage(&team, &cm, scenario)?);
    }
    if scores.is_empty() {
        return Err(Error::NoQualifyingTeams {
            scenario: scenario.to_string(),
            min_matches,
        });
    }
    scores.sort_by(|a, b| b.cmp_fraction(a).then_with(|| a.team.as_str().cmp(b.team.as_str())));
    Ok(Ranking {
        scenario,
        min_matches,
        scores,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn team(s: &str) -> Team {
        Team::new(s).unwrap()
    }

    #[test]
    fn chasing_matrix_percentages() {
        let cm = ConfusionMatrix2::from_counts(41, 6, 8, 36);
        let won = failing_percentage(&team("Sri Lanka"), &cm, Scenario::WonChasing).unwrap();
        assert_eq!((won.failing_count, won.scenario_total), (8, 44));
        assert_eq!(won.percent_string(), "18.18");
        let lost = failing_percentage(&team("Sri Lanka"), &cm, Scenario::LostChasing).unwrap();
        assert_eq!((lost.failing_count, lost.scenario_total), (6, 47));
        assert_eq!(lost.percent_string(), "12.77");
        assert_eq!(won.failing_count + lost.failing_count, cm.mispredictions());
    }

    #[test]
    fn defending_matrix_percentages() {
        let cm = ConfusionMatrix2::from_counts(56, 12, 7, 39);
        let won = failing_percentage(&team("India"), &cm, Scenario::WonDefending).unwrap();
        assert_eq!(won.percent_string(), "17.65");
        let lost = failing_percentage(&team("India"), &cm, Scenario::LostDefending).unwrap();
        assert_eq!(lost.percent_string(), "15.22");
    }

    #[test]
    fn empty_row_is_undefined() {
        let cm = ConfusionMatrix2::from_counts(3, 1, 0, 0);
        let err = failing_percentage(&team("Kenya"), &cm, Scenario::WonChasing).unwrap_err();
        assert!(err.to_string().contains("Kenya"));
        assert!(err.to_string().contains("won_chasing"));
    }

    #[test]
    fn scenario_names_round_trip() {
        for s in Scenario::ALL {
            assert_eq!(s.name().parse::<Scenario>().unwrap(), s);
        }
    }
}
