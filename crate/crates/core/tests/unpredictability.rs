mod common;

use proptest::prelude::*;

use common::{figure_corpus, index_match};
use dlsml::dls::ResourceTable;
use dlsml::match_data::{synth_corpus, Dataset, Side, Team};
use dlsml::unpredictability::{
    failing_percentage, overall_confusion_at_40, rank_teams, team_confusion_at_40, ConfusionMatrix2, Role, Scenario,
};

fn team(s: &str) -> Team {
    Team::new(s).unwrap()
}

fn figures() -> Dataset {
    let (m, s) = figure_corpus(&ResourceTable::standard());
    Dataset::new(m, s).unwrap()
}

#[test]
fn published_matrices_come_back_from_a_corpus() {
    let table = ResourceTable::standard();
    let ds = figures();
    let sl = team_confusion_at_40(&ds, &table, &team("Sri Lanka"), Role::Chasing).unwrap();
    assert_eq!(sl, ConfusionMatrix2::from_counts(41, 6, 8, 36));
    let india = team_confusion_at_40(&ds, &table, &team("India"), Role::Defending).unwrap();
    assert_eq!(india, ConfusionMatrix2::from_counts(56, 12, 7, 39));

    let won = rank_teams(&ds, &table, Scenario::WonChasing, 40).unwrap();
    assert_eq!(won.scores.len(), 1);
    let (rank, top) = won.ranked().next().unwrap();
    assert_eq!((rank, top.team.as_str(), top.percent_string().as_str()), (1, "Sri Lanka", "18.18"));
    let lost = rank_teams(&ds, &table, Scenario::LostChasing, 40).unwrap();
    assert_eq!(lost.scores[0].percent_string(), "12.77");
    let won_d = rank_teams(&ds, &table, Scenario::WonDefending, 40).unwrap();
    assert_eq!((won_d.scores[0].team.as_str(), won_d.scores[0].percent_string().as_str()), ("India", "17.65"));
    let lost_d = rank_teams(&ds, &table, Scenario::LostDefending, 40).unwrap();
    assert_eq!(lost_d.scores[0].percent_string(), "15.22");
}

#[test]
fn team_outside_a_role_has_an_empty_matrix() {
    let table = ResourceTable::standard();
    let ds = figures();
    let cm = team_confusion_at_40(&ds, &table, &team("Sri Lanka"), Role::Defending).unwrap();
    assert_eq!(cm.total(), 0);
    assert!(failing_percentage(&team("Sri Lanka"), &cm, Scenario::WonDefending).is_err());
    assert!(team_confusion_at_40(&ds, &table, &team("Kenya"), Role::Chasing).is_err());
}

#[test]
fn per_team_matrices_add_up_to_the_corpus_matrix() {
    let table = ResourceTable::standard();
    let ds = synth_corpus(13, 800, &table).unwrap();
    let overall = overall_confusion_at_40(&ds, &table).unwrap();
    // recount the corpus-wide matrix straight from the snapshots
    let mut direct = ConfusionMatrix2::default();
    for (m, snaps) in ds.iter() {
        if let Some(s) = snaps.iter().find(|s| s.overs_bowled == 40 && s.team2_wickets < 10) {
            let v = table.value(10, s.team2_wickets).unwrap();
            let par = (f64::from(m.team1_runs) * (1000.0 - (v * 10.0).round()) / 1000.0).floor() as u32;
            direct.add(m.actual_winner, if s.team2_runs < par { Side::Team1 } else { Side::Team2 });
        }
    }
    assert_eq!(overall, direct);
    for role in [Role::Chasing, Role::Defending] {
        let mut sum = ConfusionMatrix2::default();
        for t in ds.teams() {
            sum += team_confusion_at_40(&ds, &table, &t, role).unwrap();
        }
        assert_eq!(sum, overall, "{role:?}");
    }
}

#[test]
fn ties_are_ordered_by_team_name() {
    let table = ResourceTable::standard();
    let mut m = Vec::new();
    let mut s = Vec::new();
    // Zimbabwe and Bangladesh chase with identical 1-in-4 failure rates
    for (k, chaser) in ["Zimbabwe", "Bangladesh"].iter().enumerate() {
        for i in 0..4 {
            let predicted = if i == 0 { Side::Team1 } else { Side::Team2 };
            let (r, x) = index_match(&format!("T{k}{i}"), "Kenya", chaser, Side::Team2, predicted, &table);
            m.push(r);
            s.push(x);
        }
    }
    let ds = Dataset::new(m, s).unwrap();
    let ranking = rank_teams(&ds, &table, Scenario::WonChasing, 1).unwrap();
    let order: Vec<_> = ranking.ranked().map(|(r, s)| (r, s.team.as_str().to_string())).collect();
    assert_eq!(order, [(1, "Bangladesh".to_string()), (2, "Zimbabwe".to_string())]);
    assert!(rank_teams(&ds, &table, Scenario::WonChasing, 5).is_err());
}

#[test]
fn threshold_only_removes_teams() {
    let table = ResourceTable::standard();
    let ds = synth_corpus(17, 600, &table).unwrap();
    for scenario in Scenario::ALL {
        let all = rank_teams(&ds, &table, scenario, 1).unwrap();
        assert!(all.scores.windows(2).all(|w| w[0].percentage >= w[1].percentage));
        let strict = rank_teams(&ds, &table, scenario, 45).unwrap();
        let kept: Vec<&str> = all
            .scores
            .iter()
            .filter(|s| s.n_matches >= 45)
            .map(|s| s.team.as_str())
            .collect();
        let got: Vec<&str> = strict.scores.iter().map(|s| s.team.as_str()).collect();
        assert_eq!(got, kept, "{scenario}");
        assert!(strict.scores.iter().all(|s| s.scenario_total > 0 && (0.0..=1.0).contains(&s.percentage)));
    }
}

proptest! {
    #[test]
    fn won_and_lost_failures_cover_every_miss(a in 1u64..200, b in 0u64..200, c in 0u64..200, d in 1u64..200) {
        let cm = ConfusionMatrix2::from_counts(a, b, c, d);
        let t = team("Oman");
        let chasing = failing_percentage(&t, &cm, Scenario::WonChasing).unwrap().failing_count
            + failing_percentage(&t, &cm, Scenario::LostChasing).unwrap().failing_count;
        let defending = failing_percentage(&t, &cm, Scenario::WonDefending).unwrap().failing_count
            + failing_percentage(&t, &cm, Scenario::LostDefending).unwrap().failing_count;
        prop_assert_eq!(chasing, cm.mispredictions());
        prop_assert_eq!(defending, cm.mispredictions());
        let s = failing_percentage(&t, &cm, Scenario::WonChasing).unwrap();
        prop_assert_eq!(s.scenario_total, c + d);
        prop_assert!((s.percentage - c as f64 / (c + d) as f64).abs() < 1e-15);
    }
}
