use crate::dls::{par_from_tenths, predict_winner, to_tenths, ResourceTable, OVERS_LEFT, WICKET_COLUMNS};
use crate::match_data::{Dataset, Side};
use crate::{Error, Result};

/// Table cells whose values a candidate replaces, as `(overs_left, wickets_lost)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scope {
    cells: Vec<(u8, u8)>,
}

impl Scope {
    pub fn new(cells: Vec<(u8, u8)>) -> Result<Scope> {
        for &(x, w) in &cells {
            if !(1..=OVERS_LEFT).contains(&x) || w >= WICKET_COLUMNS {
                return Err(Error::Argument(format!("cell ({x}, {w}) is outside the table")));
            }
        }
        Ok(Scope { cells })
    }

    pub fn cell(overs_left: u8, wickets_lost: u8) -> Result<Scope> {
        Scope::new(vec![(overs_left, wickets_lost)])
    }

    /// A whole wicket column, overs_left 50 down to 1.
    pub fn column(wickets_lost: u8) -> Result<Scope> {
        Scope::new((1..=OVERS_LEFT).rev().map(|x| (x, wickets_lost)).collect())
    }

    /// Every cell of wicket columns 0 to 3.
    pub fn edited() -> Scope {
        Scope {
            cells: (0..super::EDITED_WICKETS)
                .flat_map(|w| (1..=OVERS_LEFT).rev().map(move |x| (x, w)))
                .collect(),
        }
    }

    pub fn cells(&self) -> &[(u8, u8)] {
        &self.cells
    }
}

/// Snapshots that fall in `scope` and are correctly called by the par-score
/// rule once `values` are written into `base` over the scope's cells.
/// Values are clamped to `[0, 100]` and rounded to one decimal first.
pub fn fitness(values: &[f64], dataset: &Dataset, base: &ResourceTable, scope: &Scope) -> Result<u64> {
    if values.len() != scope.cells.len() {
        return Err(Error::Argument(format!(
            "{} candidate values for {} cells",
            values.len(),
            scope.cells.len()
        )));
    }
    let mut table = base.clone();
    for (&(x, w), &v) in scope.cells.iter().zip(values) {
        table.set_tenths(x, w, quantize_tenths(v));
    }
    let in_scope = |x: u8, w: u8| scope.cells.contains(&(x, w));
    let mut hits = 0;
    for (m, s) in dataset.states() {
        if !s.is_decidable() || !in_scope(s.overs_left(), s.team2_wickets) {
            continue;
        }
        let par = par_from_tenths(m.team1_runs, table.tenths_at(s.overs_left(), s.team2_wickets));
        if predict_winner(par, s.team2_runs).predicted == m.actual_winner {
            hits += 1;
        }
    }
    Ok(hits)
}

pub(crate) fn quantize_tenths(v: f64) -> u16 {
    let v = if v.is_nan() { 0.0 } else { v.clamp(0.0, 100.0) };
    to_tenths(v).expect("clamped value")
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Obs {
    team1_runs: u32,
    team2_runs: u32,
    winner: Side,
}

/// Decidable snapshots of the edited columns bucketed by cell, for fast
/// per-cell scoring.
pub(crate) struct CellIndex {
    // [overs_left - 1][wickets_lost]
    obs: Vec<[Vec<Obs>; super::EDITED_WICKETS as usize]>,
}

impl CellIndex {
    pub(crate) fn new(dataset: &Dataset) -> CellIndex {
        let mut obs: Vec<[Vec<Obs>; super::EDITED_WICKETS as usize]> =
            (0..OVERS_LEFT).map(|_| Default::default()).collect();
        for (m, s) in dataset.states() {
            if s.is_decidable() && s.team2_wickets < super::EDITED_WICKETS {
                obs[usize::from(s.overs_left() - 1)][usize::from(s.team2_wickets)].push(Obs {
                    team1_runs: m.team1_runs,
                    team2_runs: s.team2_runs,
                    winner: m.actual_winner,
                });
            }
        }
        CellIndex { obs }
    }

    pub(crate) fn count(&self, overs_left: u8, wickets_lost: u8) -> usize {
        self.obs[usize::from(overs_left - 1)][usize::from(wickets_lost)].len()
    }

    pub(crate) fn total(&self) -> usize {
        self.obs.iter().flatten().map(Vec::len).sum()
    }

    /// Correct calls in one cell with its value set to `tenths`.
    pub(crate) fn score(&self, overs_left: u8, wickets_lost: u8, tenths: u16) -> u64 {
        self.obs[usize::from(overs_left - 1)][usize::from(wickets_lost)]
            .iter()
            .filter(|o| predict_winner(par_from_tenths(o.team1_runs, tenths), o.team2_runs).predicted == o.winner)
            .count() as u64
    }

    pub(crate) fn score_table(&self, table: &ResourceTable) -> u64 {
        (0..super::EDITED_WICKETS)
            .map(|w| {
                (1..=OVERS_LEFT)
                    .map(|x| self.score(x, w, table.tenths_at(x, w)))
                    .sum::<u64>()
            })
            .sum()
    }
}
