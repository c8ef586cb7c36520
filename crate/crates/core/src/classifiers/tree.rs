//! CART decision tree with Gini impurity.
//!
//! Splits are searched over the distinct training values of each feature,
//! counted in a per-feature histogram, so a node costs time linear in its
//! size rather than a sort per feature.

use rand::seq::index;
use rand::Rng;
use serde::Serialize;

use super::{majority, LabeledExample, N_FEATURES};
use crate::match_data::Side;
use crate::{seed, Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TreeParams {
    /// Features considered at each split; values of 6 or more use all of
    /// them and never touch the random stream.
    pub max_features: usize,
    pub min_leaf: usize,
    pub max_depth: Option<usize>,
}

impl Default for TreeParams {
    fn default() -> Self {
        TreeParams {
            max_features: N_FEATURES,
            min_leaf: 2,
            max_depth: None,
        }
    }
}

impl TreeParams {
    pub fn validate(&self) -> Result<()> {
        if self.max_features == 0 {
            return Err(Error::Argument("max_features must be at least 1".into()));
        }
        if self.min_leaf == 0 {
            return Err(Error::Argument("min_leaf must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Leaf(Side),
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecisionTree {
    nodes: Vec<Node>,
}

/// Training rows in rank form, shared between the trees of an ensemble.
pub(crate) struct Prepared {
    values: [Vec<f64>; N_FEATURES],
    ranks: [Vec<u32>; N_FEATURES],
    labels: Vec<u8>,
}

impl Prepared {
    pub(crate) fn new(examples: &[LabeledExample]) -> Prepared {
        let rows: Vec<[f64; N_FEATURES]> = examples.iter().map(|e| e.features()).collect();
        let mut values: [Vec<f64>; N_FEATURES] = Default::default();
        let mut ranks: [Vec<u32>; N_FEATURES] = Default::default();
        for j in 0..N_FEATURES {
            let mut v: Vec<f64> = rows.iter().map(|r| r[j]).collect();
            v.sort_by(f64::total_cmp);
            v.dedup();
            ranks[j] = rows
                .iter()
                .map(|r| v.partition_point(|&x| x < r[j]) as u32)
                .collect();
            values[j] = v;
        }
        Prepared {
            values,
            ranks,
            labels: examples.iter().map(|e| e.label.index() as u8).collect(),
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.labels.len()
    }
}

struct Best {
    feature: usize,
    rank: u32,
    threshold: f64,
    score: f64,
}

impl DecisionTree {
    pub fn fit(examples: &[LabeledExample], params: &TreeParams, seed: u64) -> Result<DecisionTree> {
        params.validate()?;
        if examples.is_empty() {
            return Err(Error::Argument("cannot fit a tree on no examples".into()));
        }
        let data = Prepared::new(examples);
        let rows: Vec<usize> = (0..data.len()).collect();
        Ok(DecisionTree::grow(&data, rows, params, &mut seed::rng(seed)))
    }

    /// Grows a tree on `rows` (indices into `data`, repeats allowed).
    pub(crate) fn grow(data: &Prepared, rows: Vec<usize>, params: &TreeParams, rng: &mut impl Rng) -> DecisionTree {
        let mut hist: [Vec<[u32; 2]>; N_FEATURES] =
            std::array::from_fn(|j| vec![[0, 0]; data.values[j].len()]);
        let mut touched = Vec::new();
        let mut nodes = vec![Node::Leaf(Side::Team1)];
        let mut stack = vec![(0usize, rows, 0usize)];

        while let Some((at, rows, depth)) = stack.pop() {
            let mut counts = [0u32; 2];
            for &i in &rows {
                counts[data.labels[i] as usize] += 1;
            }
            let leaf = Node::Leaf(majority(counts[1] as usize, rows.len()));
            let n = rows.len();
            if counts[0] == 0
                || counts[1] == 0
                || n < 2 * params.min_leaf
                || params.max_depth.is_some_and(|d| depth >= d)
            {
                nodes[at] = leaf;
                continue;
            }

            let features: Vec<usize> = if params.max_features >= N_FEATURES {
                (0..N_FEATURES).collect()
            } else {
                let mut f = index::sample(rng, N_FEATURES, params.max_features).into_vec();
                f.sort_unstable();
                f
            };

            let parent = purity(counts[0], counts[1]);
            let mut best: Option<Best> = None;
            for &j in &features {
                let h = &mut hist[j];
                touched.clear();
                for &i in &rows {
                    let r = data.ranks[j][i] as usize;
                    if h[r] == [0, 0] {
                        touched.push(r as u32);
                    }
                    h[r][data.labels[i] as usize] += 1;
                }
                touched.sort_unstable();
                let mut left = [0u32; 2];
                for k in 0..touched.len().saturating_sub(1) {
                    let c = h[touched[k] as usize];
                    left[0] += c[0];
                    left[1] += c[1];
                    let nl = (left[0] + left[1]) as usize;
                    if nl < params.min_leaf || n - nl < params.min_leaf {
                        continue;
                    }
                    let score = purity(left[0], left[1]) + purity(counts[0] - left[0], counts[1] - left[1]);
                    if score > parent + 1e-9 && best.as_ref().is_none_or(|b| score > b.score + 1e-12) {
                        let lo = data.values[j][touched[k] as usize];
                        let hi = data.values[j][touched[k + 1] as usize];
                        best = Some(Best {
                            feature: j,
                            rank: touched[k],
                            threshold: lo + (hi - lo) / 2.0,
                            score,
                        });
                    }
                }
                for &r in &touched {
                    h[r as usize] = [0, 0];
                }
            }

            let Some(b) = best else {
                nodes[at] = leaf;
                continue;
            };
            let (l, r): (Vec<usize>, Vec<usize>) = rows
                .into_iter()
                .partition(|&i| data.ranks[b.feature][i] <= b.rank);
            let left = nodes.len();
            nodes.push(Node::Leaf(Side::Team1));
            nodes.push(Node::Leaf(Side::Team1));
            nodes[at] = Node::Split {
                feature: b.feature,
                threshold: b.threshold,
                left,
                right: left + 1,
            };
            stack.push((left + 1, r, depth + 1));
            stack.push((left, l, depth + 1));
        }
        DecisionTree { nodes }
    }

    pub fn predict(&self, ex: &LabeledExample) -> Side {
        let x = ex.features();
        let mut at = 0;
        loop {
            match self.nodes[at] {
                Node::Leaf(side) => return side,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => at = if x[feature] <= threshold { left } else { right },
            }
        }
    }

    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }
}

/// `n * (1 - gini)` for a node with class counts `a` and `b`; larger is purer.
fn purity(a: u32, b: u32) -> f64 {
    let n = f64::from(a + b);
    if n == 0.0 {
        return 0.0;
    }
    (f64::from(a) * f64::from(a) + f64::from(b) * f64::from(b)) / n
}
