//! Resource table, par score, winner rule and accuracy evaluation.

mod selection;
mod table;

use serde::Serialize;

use crate::match_data::{Dataset, MatchRecord, OverSnapshot, Side};
use crate::{Error, Result};

pub use selection::OverSelection;
pub use table::{ResourceTable, TableError, OVERS_LEFT, WICKET_COLUMNS};
pub(crate) use table::to_tenths;

/// Resources remaining, in percent, at `(overs_left, wickets_lost)`.
pub fn resource_value(
    table: &ResourceTable,
    overs_left: u8,
    wickets_lost: u8,
) -> Result<f64, TableError> {
    table.value(overs_left, wickets_lost)
}

/// Runs the chasing side should have at `(overs_left, wickets_lost)`:
/// `floor(team1_runs - team1_runs * resource / 100)`.
pub fn par_score(
    team1_runs: u32,
    table: &ResourceTable,
    overs_left: u8,
    wickets_lost: u8,
) -> Result<u32, TableError> {
    table.value(overs_left, wickets_lost)?;
    Ok(par_from_tenths(team1_runs, table.tenths_at(overs_left, wickets_lost)))
}

/// Par with the resource value given in tenths of a percent.
#[inline]
pub(crate) fn par_from_tenths(team1_runs: u32, tenths: u16) -> u32 {
    let used = 1000 - u64::from(tenths.min(1000));
    (u64::from(team1_runs) * used / 1000) as u32
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WinnerPrediction {
    pub predicted: Side,
    pub par_score: u32,
}

/// Below par, the bowling side (`Team1`) wins; otherwise the chasing side.
pub fn predict_winner(par: u32, team2_runs: u32) -> WinnerPrediction {
    let predicted = if team2_runs < par {
        Side::Team1
    } else {
        Side::Team2
    };
    WinnerPrediction {
        predicted,
        par_score: par,
    }
}

/// Par-score prediction for one snapshot. Fails for snapshots the rule does
/// not apply to (over 50 or ten wickets down).
pub fn predict_at(
    record: &MatchRecord,
    snapshot: &OverSnapshot,
    table: &ResourceTable,
) -> Result<WinnerPrediction, TableError> {
    let par = par_score(
        record.team1_runs,
        table,
        snapshot.overs_left(),
        snapshot.team2_wickets,
    )?;
    Ok(predict_winner(par, snapshot.team2_runs))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AccuracyReport {
    pub n_samples: usize,
    pub n_correct: usize,
    pub accuracy: f64,
    pub selection: String,
}

impl AccuracyReport {
    pub fn new(n_correct: usize, n_samples: usize, selection: String) -> Result<AccuracyReport> {
        if n_samples == 0 {
            return Err(Error::EmptySelection(selection));
        }
        Ok(AccuracyReport {
            n_samples,
            n_correct,
            accuracy: n_correct as f64 / n_samples as f64,
            selection,
        })
    }
}

/// Snapshots picked by `selection` that the par-score rule applies to.
pub fn selected_states(
    dataset: &Dataset,
    selection: OverSelection,
) -> impl Iterator<Item = (&MatchRecord, &OverSnapshot)> {
    dataset
        .states()
        .filter(move |(_, s)| s.is_decidable() && selection.contains(s.overs_bowled))
}

/// Accuracy of the par-score prediction against the actual winner.
pub fn evaluate(
    dataset: &Dataset,
    table: &ResourceTable,
    selection: OverSelection,
) -> Result<AccuracyReport> {
    evaluate_where(dataset, table, selection, |_| true, &selection.label())
}

/// [`evaluate`] restricted to snapshots accepted by `keep`.
pub fn evaluate_where(
    dataset: &Dataset,
    table: &ResourceTable,
    selection: OverSelection,
    keep: impl Fn(&OverSnapshot) -> bool,
    description: &str,
) -> Result<AccuracyReport> {
    let (mut n, mut correct) = (0, 0);
    for (m, s) in selected_states(dataset, selection).filter(|(_, s)| keep(s)) {
        n += 1;
        if predict_at(m, s, table)?.predicted == m.actual_winner {
            correct += 1;
        }
    }
    AccuracyReport::new(correct, n, description.to_string())
}
