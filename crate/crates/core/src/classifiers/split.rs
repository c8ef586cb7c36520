use rand::seq::SliceRandom;

use super::LabeledExample;
use crate::{seed, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrainTestSplit {
    pub train: Vec<LabeledExample>,
    pub test: Vec<LabeledExample>,
    pub seed: u64,
}

/// Seeded, label-stratified 70/30 split with `round(0.7 n)` training rows.
///
/// A class with at least two members always lands in both partitions.
pub fn split_70_30(examples: &[LabeledExample], seed: u64) -> Result<TrainTestSplit> {
    let n = examples.len();
    if n < 10 {
        return Err(Error::Argument(format!(
            "a 70/30 split needs at least 10 examples, got {n}"
        )));
    }
    let mut rng = seed::rng(seed);

    let mut by_class: [Vec<LabeledExample>; 2] = [Vec::new(), Vec::new()];
    for ex in examples {
        by_class[ex.label.index()].push(*ex);
    }
    let sizes = [by_class[0].len(), by_class[1].len()];
    let n_train = (7 * n + 5) / 10;

    // largest remainder apportionment of n_train over the classes
    let mut take = sizes.map(|s| 7 * s / 10);
    let mut order = [0usize, 1];
    order.sort_by_key(|&c| std::cmp::Reverse((7 * sizes[c]) % 10));
    for &c in order.iter().cycle().take(2 * 2) {
        if take.iter().sum::<usize>() == n_train {
            break;
        }
        if take[c] < sizes[c] {
            take[c] += 1;
        }
    }

    for c in 0..2 {
        let other = 1 - c;
        if sizes[c] < 2 {
            continue;
        }
        if take[c] == 0 && take[other] > 1 && sizes[other] - take[other] >= 1 {
            take[c] += 1;
            take[other] -= 1;
        } else if take[c] == sizes[c] && take[other] + 1 < sizes[other] {
            take[c] -= 1;
            take[other] += 1;
        }
    }

    let mut train = Vec::with_capacity(n_train);
    let mut test = Vec::with_capacity(n - n_train);
    for (c, mut group) in by_class.into_iter().enumerate() {
        group.shuffle(&mut rng);
        let rest = group.split_off(take[c]);
        train.extend(group);
        test.extend(rest);
    }
    train.shuffle(&mut rng);
    test.shuffle(&mut rng);
    Ok(TrainTestSplit { train, test, seed })
}
