//! Duckworth-Lewis par scores and what can be learned around them.
//!
//! The crate covers four pieces of analysis over second-innings ODI data:
//!
//! - [`dls`]: the resource table, par score and the "below par loses" winner
//!   rule, plus accuracy of that rule at over checkpoints and ranges.
//! - [`classifiers`]: Naive Bayes, a one-hidden-layer network, bagged Naive
//!   Bayes and a random forest trained on six per-over features, evaluated
//!   against the par-score rule under a 70/30 split.
//! - [`pso`]: particle swarm re-fitting of the resource table for wickets
//!   0 to 3, keeping every column non-increasing as overs run out.
//! - [`unpredictability`]: per-team failure rates of the par-score rule at
//!   the 40th over, ranked per scenario.
//!
//! [`match_data`] holds the data model, CSV ingestion and a seeded synthetic
//! corpus generator.

pub mod classifiers;
pub mod dls;
mod error;
pub mod match_data;
pub mod pso;
pub mod seed;
pub mod unpredictability;

pub use error::{Error, Result};
