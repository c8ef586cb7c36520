use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::{Error, Result};

/// Which second-innings overs to look at.
///
/// `Checkpoint(k)` keeps snapshots taken after exactly `k` overs.
/// `Range { lo, hi }` keeps `lo <= overs_bowled < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OverSelection {
    Checkpoint(u8),
    Range { lo: u8, hi: u8 },
}

impl OverSelection {
    pub fn checkpoint(over: u8) -> Result<OverSelection> {
        if (1..=50).contains(&over) {
            Ok(OverSelection::Checkpoint(over))
        } else {
            Err(Error::Argument(format!("checkpoint over {over} is outside 1..=50")))
        }
    }

    pub fn range(lo: u8, hi: u8) -> Result<OverSelection> {
        if lo < hi && hi <= 51 {
            Ok(OverSelection::Range { lo, hi })
        } else {
            Err(Error::Argument(format!("over range {lo}-{hi} is empty or past over 50")))
        }
    }

    pub fn contains(self, overs_bowled: u8) -> bool {
        match self {
            OverSelection::Checkpoint(k) => overs_bowled == k,
            OverSelection::Range { lo, hi } => (lo..hi).contains(&overs_bowled),
        }
    }

    /// Human-readable form used in reports: `over 40` or `overs 10-20`.
    pub fn label(self) -> String {
        match self {
            OverSelection::Checkpoint(k) => format!("over {k}"),
            OverSelection::Range { lo, hi } => format!("overs {lo}-{hi}"),
        }
    }

    /// Checkpoints 10, 20, 30 and 40.
    pub fn checkpoints() -> [OverSelection; 4] {
        [10, 20, 30, 40].map(OverSelection::Checkpoint)
    }

    /// The seven over ranges of the range comparison.
    pub fn ranges() -> [OverSelection; 7] {
        [(0, 10), (10, 20), (20, 30), (30, 40), (40, 50), (0, 50), (20, 50)]
            .map(|(lo, hi)| OverSelection::Range { lo, hi })
    }

    /// Checkpoints followed by ranges: the eleven rows of the table comparison.
    pub fn all_standard() -> Vec<OverSelection> {
        Self::checkpoints()
            .into_iter()
            .chain(Self::ranges())
            .collect()
    }
}

impl fmt::Display for OverSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OverSelection::Checkpoint(k) => write!(f, "{k}"),
            OverSelection::Range { lo, hi } => write!(f, "{lo}-{hi}"),
        }
    }
}

impl FromStr for OverSelection {
    type Err = Error;

    /// `40` is a checkpoint, `10-20` a range.
    fn from_str(s: &str) -> Result<OverSelection> {
        let num = |p: &str| {
            p.trim()
                .parse::<u8>()
                .map_err(|_| Error::Argument(format!("bad over selection `{s}`")))
        };
        match s.split_once('-') {
            Some((lo, hi)) => OverSelection::range(num(lo)?, num(hi)?),
            None => OverSelection::checkpoint(num(s)?),
        }
    }
}

impl Serialize for OverSelection {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
