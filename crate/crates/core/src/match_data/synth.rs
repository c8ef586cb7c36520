//! Seeded synthetic corpus.
//!
//! The chase is simulated over by over from the resource table itself: a
//! chasing side of strength `s` is expected to score `s * team1_runs` times
//! the resources it uses up, so the par-score rule is the right predictor up
//! to noise and the table that generated a corpus scores it best. Wicket
//! hazard grows with the required run rate; per-over runs are binomial on 36
//! trials with a mean that shrinks as wickets fall.
//!
//! Optionally a fixed fraction of the matches still alive after 40 overs is
//! steered so the final result contradicts the over-40 par prediction.

use chrono::{Days, NaiveDate};
use rand::Rng;
use rand_distr::{Binomial, Distribution, Normal};
use serde::Serialize;

use super::{Dataset, MatchRecord, OverSnapshot, Side, Team, MAX_OVERS, MAX_WICKETS};
use crate::dls::{predict_winner, ResourceTable};
use crate::{seed, Error, Result};

pub const SYNTH_TEAMS: [&str; 10] = [
    "Australia",
    "Bangladesh",
    "England",
    "India",
    "New Zealand",
    "Pakistan",
    "South Africa",
    "Sri Lanka",
    "West Indies",
    "Zimbabwe",
];

const STEER_OVER: u8 = 40;
const MAX_TAIL_ATTEMPTS: u32 = 60;
const MAX_MATCH_ATTEMPTS: u32 = 1000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SynthConfig {
    /// Fraction of matches alive after over 40 whose result is made to
    /// disagree with the over-40 par prediction. `None` leaves every result
    /// to the innings model.
    pub disagreement_at_40: Option<f64>,
    /// Spread of the log chasing strength.
    pub strength_sd: f64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            disagreement_at_40: Some(0.12),
            strength_sd: 0.15,
        }
    }
}

/// [`synth_corpus_with`] under the default configuration.
pub fn synth_corpus(seed: u64, n_matches: usize, table: &ResourceTable) -> Result<Dataset> {
    synth_corpus_with(seed, n_matches, table, &SynthConfig::default())
}

pub fn synth_corpus_with(
    seed: u64,
    n_matches: usize,
    table: &ResourceTable,
    config: &SynthConfig,
) -> Result<Dataset> {
    if n_matches < 1 {
        return Err(Error::Argument("n_matches must be at least 1".into()));
    }
    if let Some(f) = config.disagreement_at_40 {
        if !(0.0..=1.0).contains(&f) {
            return Err(Error::Argument(format!("disagreement fraction {f} is outside [0, 1]")));
        }
    }
    if !(config.strength_sd.is_finite() && config.strength_sd >= 0.0) {
        return Err(Error::Argument("strength_sd must be a non-negative number".into()));
    }

    let first_day = NaiveDate::from_ymd_opt(2001, 6, 7).expect("valid date");
    let mut matches = Vec::with_capacity(n_matches);
    let mut snapshots = Vec::new();
    for i in 0..n_matches {
        let mut rng = seed::rng(seed::derive(seed, "synth-match", i as u64));
        let match_id = format!("S{:06}", i + 1);
        let date = first_day + Days::new(2 * i as u64);
        let (record, overs) = (0..MAX_MATCH_ATTEMPTS)
            .find_map(|_| generate(&mut rng, table, config, &match_id, date))
            .ok_or_else(|| Error::Argument(format!("could not generate match {match_id}")))?;
        matches.push(record);
        snapshots.extend(overs);
    }
    Dataset::new(matches, snapshots)
}

#[derive(Clone)]
struct Chase {
    runs: u32,
    wickets: u8,
    overs: Vec<(u8, u32, u8)>,
    result: Option<Side>,
}

struct Innings<'a> {
    table: &'a ResourceTable,
    target: u32,
}

impl Innings<'_> {
    fn resource(&self, overs_left: u8, wickets: u8) -> f64 {
        if overs_left == 0 || wickets >= MAX_WICKETS {
            0.0
        } else {
            self.table.value(overs_left, wickets).expect("in range")
        }
    }

    /// Plays over `over` (1-based). Returns false once the innings is over.
    fn play(&self, rng: &mut impl Rng, chase: &mut Chase, over: u8, strength: f64, hazard_scale: f64) -> bool {
        let team1_runs = self.target;
        let overs_left = MAX_OVERS - over + 1;
        let needed = (team1_runs + 1).saturating_sub(chase.runs) as f64;
        let rate = needed / f64::from(overs_left);
        let hazard = ((0.10 + 0.03 * (rate - 6.0).max(0.0)) * hazard_scale).clamp(0.01, 0.9);

        let w = chase.wickets;
        let expected_after = (1.0 - hazard) * self.resource(overs_left - 1, w)
            + 0.85 * hazard * self.resource(overs_left - 1, w + 1)
            + 0.15 * hazard * self.resource(overs_left - 1, w + 2);
        let used = (self.resource(overs_left, w) - expected_after).max(0.0);
        let mean = (strength * f64::from(team1_runs) * used / 100.0).clamp(0.05, 30.0);
        let runs = Binomial::new(36, mean / 36.0).expect("valid p").sample(rng) as u32;

        let u: f64 = rng.random();
        let fell = if u < 0.15 * hazard {
            2
        } else if u < hazard {
            1
        } else {
            0
        };

        chase.runs += runs;
        chase.wickets = (w + fell).min(MAX_WICKETS);
        if chase.runs > team1_runs {
            chase.result = Some(Side::Team2);
            return false;
        }
        if chase.wickets >= MAX_WICKETS {
            // an all-out tie is not a valid record
            chase.result = (chase.runs < team1_runs).then_some(Side::Team1);
            return false;
        }
        chase.overs.push((over, chase.runs, chase.wickets));
        if over == MAX_OVERS {
            chase.result = (chase.runs < team1_runs).then_some(Side::Team1);
            return false;
        }
        true
    }
}

fn generate(
    rng: &mut impl Rng,
    table: &ResourceTable,
    config: &SynthConfig,
    match_id: &str,
    date: NaiveDate,
) -> Option<(MatchRecord, Vec<OverSnapshot>)> {
    let i1 = rng.random_range(0..SYNTH_TEAMS.len());
    let i2 = (i1 + rng.random_range(1..SYNTH_TEAMS.len())) % SYNTH_TEAMS.len();
    let team1 = Team::new(SYNTH_TEAMS[i1]).expect("non-empty");
    let team2 = Team::new(SYNTH_TEAMS[i2]).expect("non-empty");
    let toss_winner = if rng.random_bool(0.5) { team1.clone() } else { team2.clone() };

    let team1_runs = Normal::new(250.0_f64, 45.0)
        .expect("valid sd")
        .sample(rng)
        .clamp(100.0, 420.0)
        .round() as u32;
    let team1_wickets = (Normal::new(7.0_f64, 1.8).expect("valid sd").sample(rng)
        + (250.0 - f64::from(team1_runs)) / 50.0)
        .round()
        .clamp(2.0, 10.0) as u8;
    let strength = (Normal::new(0.0_f64, config.strength_sd).expect("valid sd").sample(rng)).exp();

    let innings = Innings {
        table,
        target: team1_runs,
    };
    let mut chase = Chase {
        runs: 0,
        wickets: 0,
        overs: Vec::new(),
        result: None,
    };

    let mut alive = true;
    let mut over = 1;
    while alive && over <= STEER_OVER {
        alive = innings.play(rng, &mut chase, over, strength, 1.0);
        over += 1;
    }

    let steer = config.disagreement_at_40.filter(|_| alive);
    if let Some(fraction) = steer {
        let par = crate::dls::par_score(team1_runs, table, MAX_OVERS - STEER_OVER, chase.wickets)
            .expect("in range");
        let predicted = predict_winner(par, chase.runs).predicted;
        let wanted = if rng.random_bool(fraction) {
            predicted.opposite()
        } else {
            predicted
        };
        chase = (0..MAX_TAIL_ATTEMPTS).find_map(|attempt| {
            let a = f64::from(attempt);
            let (s, h) = match wanted {
                Side::Team2 => (strength * (1.0 + 0.04 * a), 1.0 / (1.0 + 0.05 * a)),
                Side::Team1 => ((strength * (1.0 - 0.015 * a)).max(0.05), 1.0 + 0.08 * a),
            };
            let mut tail = chase.clone();
            let mut over = STEER_OVER + 1;
            while innings.play(rng, &mut tail, over, s, h) {
                over += 1;
            }
            (tail.result == Some(wanted)).then_some(tail)
        })?;
    } else {
        while alive {
            alive = innings.play(rng, &mut chase, over, strength, 1.0);
            over += 1;
        }
    }

    let actual_winner = chase.result?;
    if chase.overs.is_empty() {
        return None;
    }
    let record = MatchRecord {
        match_id: match_id.to_string(),
        date,
        team1,
        team2,
        toss_winner,
        team1_runs,
        team1_wickets,
        actual_winner,
    };
    let overs = chase
        .overs
        .into_iter()
        .map(|(o, r, w)| OverSnapshot {
            match_id: match_id.to_string(),
            overs_bowled: o,
            team2_runs: r,
            team2_wickets: w,
        })
        .collect();
    Some((record, overs))
}
