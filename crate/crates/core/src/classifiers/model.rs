use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::{
    BaggedNaiveBayes, BaggingParams, ForestParams, LabeledExample, NaiveBayes, NaiveBayesParams,
    NeuralNet, NeuralNetParams, RandomForest,
};
use crate::match_data::Side;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelKind {
    NaiveBayes,
    NeuralNet,
    BaggedNaiveBayes,
    RandomForest,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [
        ModelKind::NaiveBayes,
        ModelKind::NeuralNet,
        ModelKind::BaggedNaiveBayes,
        ModelKind::RandomForest,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::NaiveBayes => "naive_bayes",
            ModelKind::NeuralNet => "neural_net",
            ModelKind::BaggedNaiveBayes => "bagged_naive_bayes",
            ModelKind::RandomForest => "random_forest",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<ModelKind> {
        ModelKind::ALL
            .into_iter()
            .find(|k| k.name() == s.trim())
            .ok_or_else(|| Error::Argument(format!("unknown classifier `{s}`")))
    }
}

impl Serialize for ModelKind {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Hyperparameters {
    pub naive_bayes: NaiveBayesParams,
    pub neural_net: NeuralNetParams,
    pub bagging: BaggingParams,
    pub forest: ForestParams,
}

impl Hyperparameters {
    pub fn validate(&self) -> Result<()> {
        self.naive_bayes.validate()?;
        self.neural_net.validate()?;
        self.bagging.validate()?;
        self.forest.validate()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ClassifierModel {
    NaiveBayes(NaiveBayes),
    NeuralNet(NeuralNet),
    BaggedNaiveBayes(BaggedNaiveBayes),
    RandomForest(RandomForest),
}

impl ClassifierModel {
    pub fn kind(&self) -> ModelKind {
        match self {
            ClassifierModel::NaiveBayes(_) => ModelKind::NaiveBayes,
            ClassifierModel::NeuralNet(_) => ModelKind::NeuralNet,
            ClassifierModel::BaggedNaiveBayes(_) => ModelKind::BaggedNaiveBayes,
            ClassifierModel::RandomForest(_) => ModelKind::RandomForest,
        }
    }
}

/// Fits a model of `kind`. `seed` drives every random choice in training.
pub fn train(
    kind: ModelKind,
    examples: &[LabeledExample],
    hyper: &Hyperparameters,
    seed: u64,
) -> Result<ClassifierModel> {
    Ok(match kind {
        ModelKind::NaiveBayes => ClassifierModel::NaiveBayes(NaiveBayes::fit(examples, &hyper.naive_bayes)?),
        ModelKind::NeuralNet => ClassifierModel::NeuralNet(NeuralNet::fit(examples, &hyper.neural_net, seed)?),
        ModelKind::BaggedNaiveBayes => {
            ClassifierModel::BaggedNaiveBayes(BaggedNaiveBayes::fit(examples, &hyper.bagging, seed)?)
        }
        ModelKind::RandomForest => ClassifierModel::RandomForest(RandomForest::fit(examples, &hyper.forest, seed)?),
    })
}

pub fn predict(model: &ClassifierModel, ex: &LabeledExample) -> Side {
    match model {
        ClassifierModel::NaiveBayes(m) => m.predict(ex),
        ClassifierModel::NeuralNet(m) => m.predict(ex),
        ClassifierModel::BaggedNaiveBayes(m) => m.predict(ex),
        ClassifierModel::RandomForest(m) => m.predict(ex),
    }
}

/// Fraction of `examples` whose label the model predicts; 0 for none.
pub fn accuracy(model: &ClassifierModel, examples: &[LabeledExample]) -> f64 {
    if examples.is_empty() {
        return 0.0;
    }
    let hits = examples.iter().filter(|e| predict(model, e) == e.label).count();
    hits as f64 / examples.len() as f64
}
