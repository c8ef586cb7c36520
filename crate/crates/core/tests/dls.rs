mod common;

use proptest::prelude::*;

use common::{record, snap};
use dlsml::dls::{
    evaluate, par_score, predict_winner, resource_value, OverSelection, ResourceTable, TableError,
};
use dlsml::match_data::{synth_corpus, Dataset, Side};

const EXCERPT: &str = include_str!("fixtures/resource_excerpt.csv");

#[test]
fn published_excerpt_is_returned_exactly() {
    let table = ResourceTable::standard();
    let mut cells = 0;
    for line in EXCERPT.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        let overs_left: u8 = fields[0].parse().unwrap();
        for (w, text) in fields[1..].iter().enumerate() {
            let expected: f64 = text.parse().unwrap();
            assert_eq!(resource_value(&table, overs_left, w as u8).unwrap(), expected, "({overs_left}, {w})");
            cells += 1;
        }
    }
    assert_eq!(cells, 18 * 7);
}

#[test]
fn worked_par_example() {
    assert_eq!(par_score(250, &ResourceTable::standard(), 40, 4).unwrap(), 101);
}

#[test]
fn out_of_range_cells_are_errors() {
    let t = ResourceTable::standard();
    assert!(matches!(resource_value(&t, 0, 0), Err(TableError::Index { .. })));
    assert!(matches!(resource_value(&t, 51, 0), Err(TableError::Index { .. })));
    assert!(matches!(resource_value(&t, 10, 10), Err(TableError::Index { .. })));
}

/// Largest p with 1000 p <= runs * (1000 - tenths), by search.
fn par_oracle(runs: u32, value: f64) -> u32 {
    let tenths = (value * 10.0).round() as u64;
    let budget = u64::from(runs) * (1000 - tenths);
    (0..=runs).rev().find(|&p| 1000 * u64::from(p) <= budget).unwrap()
}

proptest! {
    #[test]
    fn par_matches_exact_search(runs in 0u32..600, x in 1u8..=50, w in 0u8..10) {
        let t = ResourceTable::standard();
        let v = resource_value(&t, x, w).unwrap();
        let par = par_score(runs, &t, x, w).unwrap();
        prop_assert_eq!(par, par_oracle(runs, v));
        prop_assert!(par <= runs);
    }

    #[test]
    fn par_grows_as_resources_shrink(runs in 0u32..600, x in 2u8..=50, w in 0u8..9) {
        let t = ResourceTable::standard();
        let here = par_score(runs, &t, x, w).unwrap();
        prop_assert!(par_score(runs, &t, x - 1, w).unwrap() >= here);
        prop_assert!(par_score(runs, &t, x, w + 1).unwrap() >= here);
    }

    #[test]
    fn winner_rule_is_strictly_below_par(par in 0u32..500, runs in 0u32..500) {
        let want = if runs < par { Side::Team1 } else { Side::Team2 };
        let p = predict_winner(par, runs);
        prop_assert_eq!(p.predicted, want);
        prop_assert_eq!(p.par_score, par);
    }

    #[test]
    fn monotone_tables_round_trip_through_csv(drops in prop::collection::vec(0u16..25, 500)) {
        // columns built from cumulative drops are monotone in both directions
        let table = ResourceTable::from_fn(|x, w| {
            let down = (x..50).map(|r| drops[usize::from(r) * 10 % 500]).sum::<u16>();
            let across: u16 = (0..w).map(|k| drops[usize::from(k) + 400] % 10).sum();
            f64::from(1000u16.saturating_sub(down).saturating_sub(across)) / 10.0
        })
        .unwrap();
        let mut buf = Vec::new();
        table.write_csv(&mut buf).unwrap();
        prop_assert_eq!(ResourceTable::read_csv(buf.as_slice()).unwrap(), table);
    }
}

#[test]
fn evaluate_matches_a_direct_recount() {
    let table = ResourceTable::standard();
    let ds = synth_corpus(5, 400, &table).unwrap();
    for sel in OverSelection::all_standard() {
        let (mut n, mut hit) = (0, 0);
        for (m, snaps) in ds.iter() {
            for s in snaps {
                if s.overs_bowled >= 50 || s.team2_wickets >= 10 || !sel.contains(s.overs_bowled) {
                    continue;
                }
                let v = table.value(50 - s.overs_bowled, s.team2_wickets).unwrap();
                let call = if s.team2_runs < par_oracle(m.team1_runs, v) { Side::Team1 } else { Side::Team2 };
                n += 1;
                hit += usize::from(call == m.actual_winner);
            }
        }
        let r = evaluate(&ds, &table, sel).unwrap();
        assert_eq!((r.n_samples, r.n_correct), (n, hit), "{sel}");
        assert!((0.0..=1.0).contains(&r.accuracy));
    }
}

#[test]
fn undecidable_snapshots_are_skipped_and_empty_selections_fail() {
    let table = ResourceTable::standard();
    let ds = Dataset::new(
        vec![record("A", "India", "Kenya", 200, Side::Team1)],
        vec![snap("A", 30, 120, 9), snap("A", 31, 121, 10)],
    )
    .unwrap();
    assert_eq!(evaluate(&ds, &table, OverSelection::range(0, 51).unwrap()).unwrap().n_samples, 1);
    assert!(evaluate(&ds, &table, OverSelection::Checkpoint(31)).is_err());
    assert!(evaluate(&ds, &table, OverSelection::Checkpoint(10)).is_err());
}

#[test]
fn bundled_table_file_loads_and_validates() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    ResourceTable::standard().save(&path).unwrap();
    assert_eq!(ResourceTable::load(&path).unwrap(), ResourceTable::standard());
    std::fs::write(&path, "overs_left,w0\n50,100\n").unwrap();
    assert!(ResourceTable::load(&path).is_err());
}
