#![allow(dead_code)]

use chrono::NaiveDate;
use dlsml::dls::{par_score, ResourceTable};
use dlsml::match_data::{MatchRecord, OverSnapshot, Side, Team};

pub fn record(id: &str, team1: &str, team2: &str, team1_runs: u32, winner: Side) -> MatchRecord {
    MatchRecord {
        match_id: id.to_string(),
        date: NaiveDate::from_ymd_opt(2010, 1, 1).unwrap(),
        team1: Team::new(team1).unwrap(),
        team2: Team::new(team2).unwrap(),
        toss_winner: Team::new(team1).unwrap(),
        team1_runs,
        team1_wickets: 7,
        actual_winner: winner,
    }
}

pub fn snap(id: &str, overs_bowled: u8, runs: u32, wickets: u8) -> OverSnapshot {
    OverSnapshot {
        match_id: id.to_string(),
        overs_bowled,
        team2_runs: runs,
        team2_wickets: wickets,
    }
}

/// A match with one over-40 snapshot whose par-score call is `predicted`.
pub fn index_match(
    id: &str,
    team1: &str,
    team2: &str,
    actual: Side,
    predicted: Side,
    table: &ResourceTable,
) -> (MatchRecord, OverSnapshot) {
    let par = par_score(250, table, 10, 2).unwrap();
    let runs = match predicted {
        Side::Team1 => par - 1,
        Side::Team2 => par,
    };
    (record(id, team1, team2, 250, actual), snap(id, 40, runs, 2))
}

/// A monotone table that differs from the standard one in wicket columns
/// 0-3: each of those cells keeps 15% more of its remaining resources.
pub fn hidden_table() -> ResourceTable {
    let base = ResourceTable::standard();
    ResourceTable::from_fn(|x, w| {
        let v = base.value(x, w).unwrap();
        if w < 4 {
            100.0 - 0.85 * (100.0 - v)
        } else {
            v
        }
    })
    .unwrap()
}

/// Over-40 states reproducing two published matrices: Sri Lanka chasing
/// with cells (41, 6; 8, 36) and India defending with (56, 12; 7, 39),
/// indexed (actual, predicted). Opponents rotate through three other sides.
pub fn figure_corpus(table: &ResourceTable) -> (Vec<MatchRecord>, Vec<OverSnapshot>) {
    let opponents = ["England", "Australia", "Pakistan"];
    let mut out = (Vec::new(), Vec::new());
    let mut push = |team1: &str, team2: &str, cells: [u32; 4]| {
        let combos = [
            (Side::Team1, Side::Team1),
            (Side::Team1, Side::Team2),
            (Side::Team2, Side::Team1),
            (Side::Team2, Side::Team2),
        ];
        for ((actual, predicted), n) in combos.into_iter().zip(cells) {
            for _ in 0..n {
                let k = out.0.len();
                let opp = opponents[k % 3];
                let (t1, t2) = (if team1.is_empty() { opp } else { team1 }, if team2.is_empty() { opp } else { team2 });
                let (m, s) = index_match(&format!("F{k:04}"), t1, t2, actual, predicted, table);
                out.0.push(m);
                out.1.push(s);
            }
        }
    };
    push("", "Sri Lanka", [41, 6, 8, 36]);
    push("India", "", [56, 12, 7, 39]);
    out
}
