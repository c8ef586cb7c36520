use crate::dls::{predict_at, selected_states, OverSelection, ResourceTable};
use crate::match_data::{MatchRecord, OverSnapshot, Side};
use crate::{Error, Result};

pub const N_FEATURES: usize = 6;

/// One snapshot as classifier input, labeled with the actual winner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabeledExample {
    pub team1_runs: u32,
    pub team1_wickets: u8,
    pub team2_runs: u32,
    pub team2_wickets: u8,
    pub overs_played: u8,
    pub dl_prediction: Side,
    pub label: Side,
}

impl LabeledExample {
    pub fn from_state(
        record: &MatchRecord,
        snapshot: &OverSnapshot,
        table: &ResourceTable,
    ) -> Result<LabeledExample> {
        Ok(LabeledExample {
            team1_runs: record.team1_runs,
            team1_wickets: record.team1_wickets,
            team2_runs: snapshot.team2_runs,
            team2_wickets: snapshot.team2_wickets,
            overs_played: snapshot.overs_bowled,
            dl_prediction: predict_at(record, snapshot, table)?.predicted,
            label: record.actual_winner,
        })
    }

    /// Feature vector; the par prediction is encoded Team1 = 0, Team2 = 1.
    pub fn features(&self) -> [f64; N_FEATURES] {
        [
            f64::from(self.team1_runs),
            f64::from(self.team1_wickets),
            f64::from(self.team2_runs),
            f64::from(self.team2_wickets),
            f64::from(self.overs_played),
            self.dl_prediction.index() as f64,
        ]
    }
}

/// One example per selected snapshot.
pub fn make_examples(
    dataset: &crate::match_data::Dataset,
    table: &ResourceTable,
    selection: OverSelection,
) -> Result<Vec<LabeledExample>> {
    let examples = selected_states(dataset, selection)
        .map(|(m, s)| LabeledExample::from_state(m, s, table))
        .collect::<Result<Vec<_>>>()?;
    if examples.is_empty() {
        return Err(Error::EmptySelection(selection.label()));
    }
    Ok(examples)
}
