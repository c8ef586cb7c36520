use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::tree::Prepared;
use super::{majority, DecisionTree, LabeledExample, TreeParams};
use crate::match_data::Side;
use crate::{seed, Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ForestParams {
    pub n_trees: usize,
    pub max_features: usize,
    pub min_leaf: usize,
    pub max_depth: Option<usize>,
    pub bootstrap: bool,
}

impl Default for ForestParams {
    fn default() -> Self {
        ForestParams {
            n_trees: 100,
            max_features: 3,
            min_leaf: 2,
            max_depth: None,
            bootstrap: true,
        }
    }
}

impl ForestParams {
    fn tree(&self) -> TreeParams {
        TreeParams {
            max_features: self.max_features,
            min_leaf: self.min_leaf,
            max_depth: self.max_depth,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_trees == 0 {
            return Err(Error::Argument("a forest needs at least one tree".into()));
        }
        self.tree().validate()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RandomForest {
    trees: Vec<DecisionTree>,
}

impl RandomForest {
    pub fn fit(examples: &[LabeledExample], params: &ForestParams, seed: u64) -> Result<RandomForest> {
        params.validate()?;
        if examples.is_empty() {
            return Err(Error::Argument("cannot fit a forest on no examples".into()));
        }
        let data = Prepared::new(examples);
        let tree_params = params.tree();
        let n = data.len();
        let trees = (0..params.n_trees)
            .into_par_iter()
            .map(|t| {
                let mut rng = seed::rng(seed::derive(seed, "forest-tree", t as u64));
                let rows = if params.bootstrap {
                    (0..n).map(|_| rng.random_range(0..n)).collect()
                } else {
                    (0..n).collect()
                };
                DecisionTree::grow(&data, rows, &tree_params, &mut rng)
            })
            .collect();
        Ok(RandomForest { trees })
    }

    pub fn predict(&self, ex: &LabeledExample) -> Side {
        let votes = self.trees.iter().filter(|t| t.predict(ex) == Side::Team2).count();
        majority(votes, self.trees.len())
    }

    pub fn trees(&self) -> &[DecisionTree] {
        &self.trees
    }
}
