//! Match and over data model, CSV ingestion and the synthetic corpus.

mod csv_io;
mod synth;

use std::collections::HashMap;
use std::fmt;

use chrono::NaiveDate;
use serde::Serialize;

use crate::{Error, Result};

pub use csv_io::{
    parse_matches, parse_snapshots, read_matches, read_snapshots, write_matches,
    write_matches_to, write_snapshots, write_snapshots_to, DroppedRow, MatchFile,
    MATCHES_HEADER, SNAPSHOTS_HEADER,
};
pub use synth::{synth_corpus, synth_corpus_with, SynthConfig, SYNTH_TEAMS};

pub const MAX_OVERS: u8 = 50;
pub const MAX_WICKETS: u8 = 10;

/// One side of a match: `Team1` bats first, `Team2` chases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    Team1,
    Team2,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Team1 => Side::Team2,
            Side::Team2 => Side::Team1,
        }
    }

    /// 0 for `Team1`, 1 for `Team2`.
    pub fn index(self) -> usize {
        match self {
            Side::Team1 => 0,
            Side::Team2 => 1,
        }
    }

    pub fn from_index(i: usize) -> Side {
        if i == 0 {
            Side::Team1
        } else {
            Side::Team2
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Team1 => "Team1",
            Side::Team2 => "Team2",
        })
    }
}

// Display names for teams whose spelling varies between sources. Keys are
// lower-case with all whitespace removed.
const KNOWN_TEAMS: &[&str] = &[
    "Afghanistan",
    "Africa XI",
    "Asia XI",
    "Australia",
    "Bangladesh",
    "Bermuda",
    "Canada",
    "England",
    "Hong Kong",
    "ICC World XI",
    "India",
    "Ireland",
    "Kenya",
    "Namibia",
    "Nepal",
    "Netherlands",
    "New Zealand",
    "Oman",
    "Pakistan",
    "Papua New Guinea",
    "Scotland",
    "South Africa",
    "Sri Lanka",
    "United Arab Emirates",
    "United States of America",
    "West Indies",
    "Zimbabwe",
];

fn squash(name: &str) -> String {
    name.chars()
        .filter(|c| !c.is_whitespace())
        .flat_map(char::to_lowercase)
        .collect()
}

/// Canonical team name.
///
/// Names are trimmed, inner whitespace is collapsed and case is ignored.
/// Known nations also match with their spaces removed, so `SriLanka`,
/// `sri lanka` and ` Sri  Lanka ` are the same team. Unknown names are
/// title-cased word by word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Team(String);

impl Team {
    pub fn new(raw: &str) -> Option<Team> {
        let words: Vec<&str> = raw.split_whitespace().collect();
        if words.is_empty() {
            return None;
        }
        let key = squash(raw);
        if let Some(known) = KNOWN_TEAMS.iter().find(|t| squash(t) == key) {
            return Some(Team((*known).to_string()));
        }
        let titled: Vec<String> = words
            .iter()
            .map(|w| {
                let mut chars = w.chars();
                match chars.next() {
                    Some(first) => first
                        .to_uppercase()
                        .chain(chars.flat_map(char::to_lowercase))
                        .collect(),
                    None => String::new(),
                }
            })
            .collect();
        Some(Team(titled.join(" ")))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Team {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// One completed ODI.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchRecord {
    pub match_id: String,
    pub date: NaiveDate,
    /// Batting first.
    pub team1: Team,
    /// Batting second.
    pub team2: Team,
    pub toss_winner: Team,
    pub team1_runs: u32,
    pub team1_wickets: u8,
    pub actual_winner: Side,
}

impl MatchRecord {
    /// Checks the record invariants; the first violation is reported.
    pub fn check(&self) -> Result<()> {
        let invalid = |field, message: String| Error::Invalid {
            line: None,
            field,
            message,
        };
        if self.match_id.trim().is_empty() {
            return Err(invalid("match_id", "empty".into()));
        }
        if self.team1 == self.team2 {
            return Err(invalid(
                "team2",
                format!("`{}` plays itself in match `{}`", self.team1, self.match_id),
            ));
        }
        if self.toss_winner != self.team1 && self.toss_winner != self.team2 {
            return Err(invalid(
                "toss_winner",
                format!("`{}` is not playing match `{}`", self.toss_winner, self.match_id),
            ));
        }
        if self.team1_wickets > MAX_WICKETS {
            return Err(invalid(
                "team1_wickets",
                format!("{} is outside 0..=10", self.team1_wickets),
            ));
        }
        Ok(())
    }

    pub fn team(&self, side: Side) -> &Team {
        match side {
            Side::Team1 => &self.team1,
            Side::Team2 => &self.team2,
        }
    }

    /// Which side `team` played, if any.
    pub fn side_of(&self, team: &Team) -> Option<Side> {
        if &self.team1 == team {
            Some(Side::Team1)
        } else if &self.team2 == team {
            Some(Side::Team2)
        } else {
            None
        }
    }
}

/// Second-innings state at the end of a completed over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverSnapshot {
    pub match_id: String,
    pub overs_bowled: u8,
    pub team2_runs: u32,
    pub team2_wickets: u8,
}

impl OverSnapshot {
    /// Overs left in the chase after this snapshot.
    pub fn overs_left(&self) -> u8 {
        MAX_OVERS - self.overs_bowled
    }

    /// Whether the par-score rule applies: overs remain and the chase is
    /// still alive.
    pub fn is_decidable(&self) -> bool {
        self.overs_bowled < MAX_OVERS && self.team2_wickets < MAX_WICKETS
    }
}

/// A validated corpus: matches plus their per-over chase snapshots.
///
/// Matches keep their input order; each match's snapshots are sorted by
/// `overs_bowled`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    matches: Vec<MatchRecord>,
    snapshots: Vec<Vec<OverSnapshot>>,
    index: HashMap<String, usize>,
}

impl Dataset {
    pub fn new(matches: Vec<MatchRecord>, snapshots: Vec<OverSnapshot>) -> Result<Dataset> {
        let mut index = HashMap::with_capacity(matches.len());
        for (i, m) in matches.iter().enumerate() {
            m.check()?;
            if index.insert(m.match_id.clone(), i).is_some() {
                return Err(Error::Invalid {
                    line: None,
                    field: "match_id",
                    message: format!("duplicate `{}`", m.match_id),
                });
            }
        }

        let mut grouped: Vec<Vec<OverSnapshot>> = vec![Vec::new(); matches.len()];
        for s in snapshots {
            let Some(&i) = index.get(&s.match_id) else {
                return Err(Error::OrphanSnapshot {
                    line: None,
                    match_id: s.match_id,
                });
            };
            grouped[i].push(s);
        }

        for (m, snaps) in matches.iter().zip(grouped.iter_mut()) {
            if snaps.is_empty() {
                return Err(Error::MissingSnapshots {
                    match_id: m.match_id.clone(),
                });
            }
            snaps.sort_by_key(|s| s.overs_bowled);
            check_innings(m, snaps)?;
        }

        Ok(Dataset {
            matches,
            snapshots: grouped,
            index,
        })
    }

    pub fn matches(&self) -> &[MatchRecord] {
        &self.matches
    }

    pub fn len(&self) -> usize {
        self.matches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matches.is_empty()
    }

    pub fn get(&self, match_id: &str) -> Option<(&MatchRecord, &[OverSnapshot])> {
        self.index
            .get(match_id)
            .map(|&i| (&self.matches[i], self.snapshots[i].as_slice()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MatchRecord, &[OverSnapshot])> {
        self.matches
            .iter()
            .zip(self.snapshots.iter().map(Vec::as_slice))
    }

    /// Every snapshot paired with its match.
    pub fn states(&self) -> impl Iterator<Item = (&MatchRecord, &OverSnapshot)> {
        self.iter()
            .flat_map(|(m, snaps)| snaps.iter().map(move |s| (m, s)))
    }

    pub fn snapshot_count(&self) -> usize {
        self.snapshots.iter().map(Vec::len).sum()
    }

    /// All snapshots in match order, then over order.
    pub fn snapshots(&self) -> impl Iterator<Item = &OverSnapshot> {
        self.snapshots.iter().flatten()
    }

    /// Distinct teams, sorted.
    pub fn teams(&self) -> Vec<Team> {
        let mut teams: Vec<Team> = self
            .matches
            .iter()
            .flat_map(|m| [m.team1.clone(), m.team2.clone()])
            .collect();
        teams.sort();
        teams.dedup();
        teams
    }
}

fn check_innings(m: &MatchRecord, snaps: &[OverSnapshot]) -> Result<()> {
    let err = |s: &OverSnapshot, message: String| Error::Snapshot {
        match_id: m.match_id.clone(),
        over: s.overs_bowled,
        message,
    };
    for (i, s) in snaps.iter().enumerate() {
        if !(1..=MAX_OVERS).contains(&s.overs_bowled) {
            return Err(err(s, "overs_bowled outside 1..=50".into()));
        }
        if s.team2_wickets > MAX_WICKETS {
            return Err(err(s, format!("team2_wickets {} outside 0..=10", s.team2_wickets)));
        }
        let Some(prev) = i.checked_sub(1).map(|j| &snaps[j]) else {
            continue;
        };
        if prev.overs_bowled == s.overs_bowled {
            return Err(err(s, "duplicate over".into()));
        }
        if s.team2_runs < prev.team2_runs {
            return Err(err(
                s,
                format!(
                    "team2_runs fell from {} to {}",
                    prev.team2_runs, s.team2_runs
                ),
            ));
        }
        if s.team2_wickets < prev.team2_wickets {
            return Err(err(
                s,
                format!(
                    "team2_wickets fell from {} to {}",
                    prev.team2_wickets, s.team2_wickets
                ),
            ));
        }
        if prev.team2_wickets >= MAX_WICKETS || prev.team2_runs > m.team1_runs {
            return Err(err(
                s,
                format!("innings already ended at over {}", prev.overs_bowled),
            ));
        }
    }
    Ok(())
}
