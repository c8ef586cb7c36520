use rayon::prelude::*;
use serde::Serialize;

use super::{accuracy, make_examples, split_70_30, train, Hyperparameters, ModelKind};
use crate::dls::{OverSelection, ResourceTable};
use crate::match_data::Dataset;
use crate::{seed, Error, Result};

/// One (selection, classifier) cell of the comparison. `n_samples` is the
/// test-partition size and `dl_accuracy` is measured on that same partition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProtocolRow {
    pub selection: OverSelection,
    pub n_samples: usize,
    pub dl_accuracy: f64,
    pub kind: ModelKind,
    pub classifier_accuracy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProtocolReport {
    pub rows: Vec<ProtocolRow>,
}

impl ProtocolReport {
    /// The most accurate classifier per selection, in selection order. Ties go
    /// to the kind listed first.
    pub fn best(&self) -> Vec<&ProtocolRow> {
        let mut out: Vec<&ProtocolRow> = Vec::new();
        for row in &self.rows {
            match out.iter_mut().find(|b| b.selection == row.selection) {
                Some(b) if row.classifier_accuracy > b.classifier_accuracy => *b = row,
                Some(_) => {}
                None => out.push(row),
            }
        }
        out
    }

    pub fn rows_for(&self, selection: OverSelection) -> impl Iterator<Item = &ProtocolRow> {
        self.rows.iter().filter(move |r| r.selection == selection)
    }
}

/// For each selection: build examples, split 70/30, train each kind on the
/// training part and score it and the par-score rule on the test part.
pub fn evaluate_protocol(
    dataset: &Dataset,
    table: &ResourceTable,
    selections: &[OverSelection],
    kinds: &[ModelKind],
    hyper: &Hyperparameters,
    seed: u64,
) -> Result<ProtocolReport> {
    if selections.is_empty() {
        return Err(Error::Argument("no over selections to evaluate".into()));
    }
    if kinds.is_empty() {
        return Err(Error::Argument("no classifiers to evaluate".into()));
    }
    hyper.validate()?;

    let splits = selections
        .iter()
        .enumerate()
        .map(|(s, &sel)| {
            let examples = make_examples(dataset, table, sel)?;
            split_70_30(&examples, seed::derive(seed, "split", s as u64))
        })
        .collect::<Result<Vec<_>>>()?;

    let jobs: Vec<(usize, usize)> = (0..selections.len())
        .flat_map(|s| (0..kinds.len()).map(move |k| (s, k)))
        .collect();
    let rows = jobs
        .into_par_iter()
        .map(|(s, k)| {
            let split = &splits[s];
            let kind = kinds[k];
            let model_seed = seed::derive(seed::derive(seed, kind.name(), s as u64), "train", 0);
            let model = train(kind, &split.train, hyper, model_seed)?;
            let dl_hits = split.test.iter().filter(|e| e.dl_prediction == e.label).count();
            Ok(ProtocolRow {
                selection: selections[s],
                n_samples: split.test.len(),
                dl_accuracy: dl_hits as f64 / split.test.len() as f64,
                kind,
                classifier_accuracy: accuracy(&model, &split.test),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ProtocolReport { rows })
}
