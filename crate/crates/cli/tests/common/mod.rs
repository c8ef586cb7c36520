#![allow(dead_code)]

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use dlsml::dls::{par_score, ResourceTable};

pub fn dlsml(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dlsml")).args(args).output().unwrap()
}

/// Runs the binary and fails the test with its stderr if it exits nonzero.
pub fn ok(args: &[&str]) -> String {
    let out = dlsml(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

pub fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Every file in `dir` by name.
pub fn contents(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().into_string().unwrap(), fs::read(e.path()).unwrap())
        })
        .collect()
}

pub fn csv_rows(path: &Path) -> Vec<BTreeMap<String, String>> {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().clone();
    r.records()
        .map(|rec| header.iter().map(String::from).zip(rec.unwrap().iter().map(String::from)).collect())
        .collect()
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

/// Writes matches.csv and snapshots.csv holding one over-40 state per match,
/// with Sri Lanka chasing in cells (41, 6; 8, 36) and India defending in
/// (56, 12; 7, 39), indexed (actual, predicted). Returns the two paths.
pub fn write_figure_corpus(dir: &Path) -> (PathBuf, PathBuf) {
    let par = par_score(250, &ResourceTable::standard(), 10, 2).unwrap();
    let opponents = ["England", "Australia", "Pakistan"];
    let mut matches = String::from("match_id,date,team1,team2,toss_winner,team1_runs,team1_wickets,actual_winner,result_status\n");
    let mut snaps = String::from("match_id,overs_bowled,team2_runs,team2_wickets\n");
    let mut k = 0;
    for (team1, team2, cells) in [("", "Sri Lanka", [41, 6, 8, 36]), ("India", "", [56, 12, 7, 39])] {
        for (cell, n) in cells.into_iter().enumerate() {
            let (actual_team2, predicted_team2) = (cell >= 2, cell % 2 == 1);
            for _ in 0..n {
                let opp = opponents[k % 3];
                let t1 = if team1.is_empty() { opp } else { team1 };
                let t2 = if team2.is_empty() { opp } else { team2 };
                let winner = if actual_team2 { t2 } else { t1 };
                let runs = if predicted_team2 { par } else { par - 1 };
                writeln!(matches, "F{k:04},2010-01-01,{t1},{t2},{t1},250,7,{winner},completed").unwrap();
                writeln!(snaps, "F{k:04},40,{runs},2").unwrap();
                k += 1;
            }
        }
    }
    let (m, x) = (dir.join("matches.csv"), dir.join("snapshots.csv"));
    fs::write(&m, matches).unwrap();
    fs::write(&x, snaps).unwrap();
    (m, x)
}
