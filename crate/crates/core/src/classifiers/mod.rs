//! Winner classifiers over six per-over features and the 70/30 comparison
//! against the par-score rule.

mod bagging;
mod example;
mod forest;
mod model;
mod naive_bayes;
mod neural_net;
mod protocol;
mod split;
mod tree;

pub use bagging::{BaggedNaiveBayes, BaggingParams};
pub use example::{make_examples, LabeledExample, N_FEATURES};
pub use forest::{ForestParams, RandomForest};
pub use model::{accuracy, predict, train, ClassifierModel, Hyperparameters, ModelKind};
pub use naive_bayes::{NaiveBayes, NaiveBayesParams};
pub use neural_net::{NeuralNet, NeuralNetParams};
pub use protocol::{evaluate_protocol, ProtocolReport, ProtocolRow};
pub use split::{split_70_30, TrainTestSplit};
pub use tree::{DecisionTree, TreeParams};

use crate::match_data::Side;

/// Majority vote over `team2_votes` of `total`; an even split goes to `Team1`.
pub(crate) fn majority(team2_votes: usize, total: usize) -> Side {
    if 2 * team2_votes > total {
        Side::Team2
    } else {
        Side::Team1
    }
}
