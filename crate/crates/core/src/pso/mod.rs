//! Particle swarm re-fit of resource-table columns for wickets 0 to 3.
//!
//! Fitness is the number of snapshots the par-score rule calls correctly.
//! Two modes: an independent one-dimensional swarm per cell followed by a
//! monotone reconciliation, or one swarm per column whose particles are
//! repaired to be monotone after every move.

mod fitness;
mod swarm;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::dls::{evaluate_where, OverSelection, ResourceTable, OVERS_LEFT, WICKET_COLUMNS};
use crate::match_data::Dataset;
use crate::{seed, Error, Result};

pub use fitness::{fitness, Scope};
pub use swarm::Particle;

use fitness::{quantize_tenths, CellIndex};

/// Wicket columns the optimizer edits: 0, 1, 2 and 3 down.
pub const EDITED_WICKETS: u8 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsoMode {
    PerCell,
    PerColumn,
}

impl fmt::Display for PsoMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PsoMode::PerCell => "per-cell",
            PsoMode::PerColumn => "per-column",
        })
    }
}

impl FromStr for PsoMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<PsoMode> {
        match s {
            "per-cell" => Ok(PsoMode::PerCell),
            "per-column" => Ok(PsoMode::PerColumn),
            _ => Err(Error::Argument(format!("unknown pso mode `{s}`"))),
        }
    }
}

impl Serialize for PsoMode {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PsoConfig {
    pub swarm_size: usize,
    pub c1: f64,
    pub c2: f64,
    pub generations: usize,
    pub inertia: f64,
    /// Velocity cap as a fraction of the `[0, 100]` range.
    pub v_max: f64,
    pub seed: u64,
    pub mode: PsoMode,
    /// Keep each edited column non-increasing as overs run out.
    pub monotone: bool,
    /// Also keep each row non-increasing as wickets fall.
    pub enforce_wicket_order: bool,
}

impl Default for PsoConfig {
    fn default() -> Self {
        PsoConfig {
            swarm_size: 10,
            c1: 2.0,
            c2: 2.5,
            generations: 50,
            inertia: 0.7,
            v_max: 0.2,
            seed: 0,
            mode: PsoMode::PerCell,
            monotone: true,
            enforce_wicket_order: false,
        }
    }
}

impl PsoConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Argument(m.to_string()));
        if self.swarm_size < 2 {
            return bad("swarm size must be at least 2");
        }
        if self.generations < 1 {
            return bad("generations must be at least 1");
        }
        if !(self.v_max > 0.0 && self.v_max <= 1.0) {
            return bad("v_max must lie in (0, 1]");
        }
        if !(self.c1 >= 0.0 && self.c1.is_finite() && self.c2 >= 0.0 && self.c2.is_finite()) {
            return bad("c1 and c2 must be non-negative");
        }
        if !self.inertia.is_finite() {
            return bad("inertia must be finite");
        }
        if self.enforce_wicket_order && !self.monotone {
            return bad("wicket-order enforcement needs the monotone constraint");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizationResult {
    #[serde(skip)]
    pub optimized_table: ResourceTable,
    pub baseline_fitness: u64,
    pub optimized_fitness: u64,
    /// Summed best fitness after initialization and after each generation.
    pub fitness_trace: Vec<u64>,
    /// Decidable snapshots with 0 to 3 wickets down.
    pub n_snapshots: usize,
    /// Adjacent pairs where a value rises as wickets fall.
    pub wicket_order_violations: usize,
}

/// Running minimum from overs_left 50 downward, so the column never rises
/// as overs run out. `column` is ordered overs_left 50, 49, ...
pub fn repair_monotone(column: &[f64]) -> Vec<f64> {
    let mut out = column.to_vec();
    repair_in_place(&mut out);
    out
}

fn repair_in_place(column: &mut [f64]) {
    for i in 1..column.len() {
        if column[i] > column[i - 1] {
            column[i] = column[i - 1];
        }
    }
}

/// Pairs `(x, w)` with `value(x, w + 1) > value(x, w)`.
pub fn wicket_order_violations(table: &ResourceTable) -> usize {
    (1..=OVERS_LEFT)
        .flat_map(|x| (1..WICKET_COLUMNS).map(move |w| (x, w)))
        .filter(|&(x, w)| table.tenths_at(x, w) > table.tenths_at(x, w - 1))
        .count()
}

pub fn optimize(dataset: &Dataset, base: &ResourceTable, config: &PsoConfig) -> Result<OptimizationResult> {
    config.validate()?;
    let cells = CellIndex::new(dataset);
    if cells.total() == 0 {
        return Err(Error::NoQualifyingSnapshots(
            "wickets 0-3 (decidable snapshots)".into(),
        ));
    }
    if config.monotone {
        for w in 0..EDITED_WICKETS {
            base.validate_column(w)?;
        }
    }

    let baseline_fitness = cells.score_table(base);
    let (mut table, fitness_trace) = match config.mode {
        PsoMode::PerCell => per_cell(&cells, base, config),
        PsoMode::PerColumn => per_column(&cells, base, config),
    };
    if config.enforce_wicket_order {
        for w in (0..EDITED_WICKETS).rev() {
            for x in 1..=OVERS_LEFT {
                let lifted = table.tenths_at(x, w).max(table.tenths_at(x, w + 1));
                table.set_tenths(x, w, lifted);
            }
        }
        if cells.score_table(&table) < baseline_fitness {
            table = base.clone();
        }
    }
    let optimized_fitness = cells.score_table(&table);
    debug_assert!(optimized_fitness >= baseline_fitness);

    Ok(OptimizationResult {
        wicket_order_violations: wicket_order_violations(&table),
        optimized_table: table,
        baseline_fitness,
        optimized_fitness,
        fitness_trace,
        n_snapshots: cells.total(),
    })
}

fn sum_traces(traces: impl Iterator<Item = Vec<u64>>, len: usize) -> Vec<u64> {
    traces.fold(vec![0; len], |mut acc, t| {
        for (a, v) in acc.iter_mut().zip(t) {
            *a += v;
        }
        acc
    })
}

fn per_cell(cells: &CellIndex, base: &ResourceTable, config: &PsoConfig) -> (ResourceTable, Vec<u64>) {
    let jobs: Vec<(u8, u8)> = (0..EDITED_WICKETS)
        .flat_map(|w| (1..=OVERS_LEFT).rev().map(move |x| (x, w)))
        .filter(|&(x, w)| cells.count(x, w) > 0)
        .collect();
    let outcomes: Vec<((u8, u8), swarm::SwarmOutcome)> = jobs
        .into_par_iter()
        .map(|(x, w)| {
            let mut rng = seed::rng(seed::derive(config.seed, "pso-cell", u64::from(w) * 64 + u64::from(x)));
            let start = f64::from(base.tenths_at(x, w)) / 10.0;
            let out = swarm::run(&[start], config, &mut rng, |p| cells.score(x, w, quantize_tenths(p[0])), |_| {});
            ((x, w), out)
        })
        .collect();

    let trace = sum_traces(outcomes.iter().map(|(_, o)| o.trace.clone()), config.generations + 1);
    let mut raw = base.clone();
    for ((x, w), o) in &outcomes {
        raw.set_tenths(*x, *w, quantize_tenths(o.best_position[0]));
    }
    if !config.monotone {
        return (raw, trace);
    }
    let mut table = base.clone();
    for w in 0..EDITED_WICKETS {
        let chosen = reconcile(cells, w, &column_tenths(base, w), &column_tenths(&raw, w));
        for (x, t) in (1..=OVERS_LEFT).rev().zip(chosen) {
            table.set_tenths(x, w, t);
        }
    }
    (table, trace)
}

fn column_tenths(table: &ResourceTable, w: u8) -> Vec<u16> {
    (1..=OVERS_LEFT).rev().map(|x| table.tenths_at(x, w)).collect()
}

/// Picks one value per cell from {repaired raw column, raw, base}, keeping
/// only options scoring at least the base value in that cell, so that the
/// column is non-increasing and its total score is maximal. Ties prefer the
/// repaired value, then the raw one. Columns run overs_left 50 down to 1.
fn reconcile(cells: &CellIndex, w: u8, base: &[u16], raw: &[u16]) -> Vec<u16> {
    let mut repaired = raw.to_vec();
    for i in 1..repaired.len() {
        repaired[i] = repaired[i].min(repaired[i - 1]);
    }
    // (tenths, weighted score)
    let options: Vec<Vec<(u16, u64)>> = (0..base.len())
        .map(|i| {
            let x = OVERS_LEFT - i as u8;
            let floor = cells.score(x, w, base[i]);
            let mut opts: Vec<(u16, u64)> = Vec::with_capacity(3);
            for (t, pref) in [(repaired[i], 2), (raw[i], 1), (base[i], 0)] {
                let s = cells.score(x, w, t);
                if s >= floor && !opts.iter().any(|&(u, _)| u == t) {
                    opts.push((t, s * 1000 + pref));
                }
            }
            opts
        })
        .collect();

    // best[i][k]: top total for rows 0..=i ending with option k at row i
    let mut best: Vec<Vec<Option<(u64, usize)>>> = Vec::with_capacity(options.len());
    best.push(options[0].iter().map(|&(_, s)| Some((s, usize::MAX))).collect());
    for i in 1..options.len() {
        let row = options[i]
            .iter()
            .map(|&(t, s)| {
                best[i - 1]
                    .iter()
                    .enumerate()
                    .filter_map(|(k, b)| b.filter(|_| options[i - 1][k].0 >= t).map(|(v, _)| (v + s, k)))
                    .max_by_key(|&(v, k)| (v, std::cmp::Reverse(k)))
            })
            .collect();
        best.push(row);
    }
    let last = best.len() - 1;
    let (mut k, _) = best[last]
        .iter()
        .enumerate()
        .filter_map(|(k, b)| b.map(|(v, _)| (k, v)))
        .max_by_key(|&(k, v)| (v, std::cmp::Reverse(k)))
        .expect("the base column is always feasible");
    let mut out = vec![0; options.len()];
    for i in (0..options.len()).rev() {
        out[i] = options[i][k].0;
        if i > 0 {
            k = best[i][k].expect("on the chosen chain").1;
        }
    }
    out
}

fn per_column(cells: &CellIndex, base: &ResourceTable, config: &PsoConfig) -> (ResourceTable, Vec<u64>) {
    let outcomes: Vec<(u8, swarm::SwarmOutcome)> = (0..EDITED_WICKETS)
        .into_par_iter()
        .map(|w| {
            let mut rng = seed::rng(seed::derive(config.seed, "pso-column", u64::from(w)));
            let top = f64::from(base.tenths_at(OVERS_LEFT, w)) / 10.0;
            // rows 49 down to 1; row 50 has no decidable snapshots and stays put
            let start: Vec<f64> = (1..OVERS_LEFT).rev().map(|x| f64::from(base.tenths_at(x, w)) / 10.0).collect();
            let eval = |p: &[f64]| {
                p.iter()
                    .zip((1..OVERS_LEFT).rev())
                    .map(|(&v, x)| cells.score(x, w, quantize_tenths(v)))
                    .sum()
            };
            let repair = |p: &mut [f64]| {
                if config.monotone {
                    let mut cap = top;
                    for v in p.iter_mut() {
                        *v = v.min(cap);
                        cap = *v;
                    }
                }
            };
            (w, swarm::run(&start, config, &mut rng, eval, repair))
        })
        .collect();

    let trace = sum_traces(outcomes.iter().map(|(_, o)| o.trace.clone()), config.generations + 1);
    let mut table = base.clone();
    for (w, o) in &outcomes {
        for (&v, x) in o.best_position.iter().zip((1..OVERS_LEFT).rev()) {
            table.set_tenths(x, *w, quantize_tenths(v));
        }
    }
    (table, trace)
}

/// One row of the base-versus-optimized comparison, over snapshots with 0
/// to 3 wickets down.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub selection: OverSelection,
    pub n_samples: usize,
    pub base_accuracy: f64,
    pub optimized_accuracy: f64,
}

pub fn compare_tables(
    dataset: &Dataset,
    base: &ResourceTable,
    optimized: &ResourceTable,
    selections: &[OverSelection],
) -> Result<Vec<ComparisonRow>> {
    let keep = |s: &crate::match_data::OverSnapshot| s.team2_wickets < EDITED_WICKETS;
    selections
        .iter()
        .map(|&sel| {
            let label = format!("{} (wickets 0-3)", sel.label());
            let b = evaluate_where(dataset, base, sel, keep, &label)?;
            let o = evaluate_where(dataset, optimized, sel, keep, &label)?;
            Ok(ComparisonRow {
                selection: sel,
                n_samples: b.n_samples,
                base_accuracy: b.accuracy,
                optimized_accuracy: o.accuracy,
            })
        })
        .collect()
}
