use rand::Rng;
use serde::Serialize;

use super::{majority, LabeledExample, NaiveBayes, NaiveBayesParams};
use crate::match_data::Side;
use crate::{seed, Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BaggingParams {
    pub members: usize,
    pub naive_bayes: NaiveBayesParams,
}

impl Default for BaggingParams {
    fn default() -> Self {
        BaggingParams {
            members: 25,
            naive_bayes: NaiveBayesParams::default(),
        }
    }
}

impl BaggingParams {
    pub fn validate(&self) -> Result<()> {
        if self.members == 0 {
            return Err(Error::Argument("bagging needs at least one member".into()));
        }
        self.naive_bayes.validate()
    }
}

/// Naive Bayes models fitted on bootstrap resamples, combined by majority
/// vote.
#[derive(Debug, Clone, PartialEq)]
pub struct BaggedNaiveBayes {
    members: Vec<NaiveBayes>,
}

impl BaggedNaiveBayes {
    pub fn fit(examples: &[LabeledExample], params: &BaggingParams, seed: u64) -> Result<BaggedNaiveBayes> {
        params.validate()?;
        if examples.is_empty() {
            return Err(Error::Argument("cannot bag on no examples".into()));
        }
        let n = examples.len();
        let members = (0..params.members)
            .map(|b| {
                let mut rng = seed::rng(seed::derive(seed, "bag", b as u64));
                let sample: Vec<LabeledExample> =
                    (0..n).map(|_| examples[rng.random_range(0..n)]).collect();
                NaiveBayes::fit(&sample, &params.naive_bayes)
            })
            .collect::<Result<_>>()?;
        Ok(BaggedNaiveBayes { members })
    }

    pub fn from_members(members: Vec<NaiveBayes>) -> Result<BaggedNaiveBayes> {
        if members.is_empty() {
            return Err(Error::Argument("bagging needs at least one member".into()));
        }
        Ok(BaggedNaiveBayes { members })
    }

    pub fn predict(&self, ex: &LabeledExample) -> Side {
        let votes = self.members.iter().filter(|m| m.predict(ex) == Side::Team2).count();
        majority(votes, self.members.len())
    }

    pub fn members(&self) -> &[NaiveBayes] {
        &self.members
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex(t2: u32, label: Side) -> LabeledExample {
        LabeledExample {
            team1_runs: 250,
            team1_wickets: 8,
            team2_runs: t2,
            team2_wickets: 2,
            overs_played: 20,
            dl_prediction: label,
            label,
        }
    }

    #[test]
    fn split_vote_goes_to_team1() {
        let t1 = NaiveBayes::fit(&[ex(10, Side::Team1)], &NaiveBayesParams::default()).unwrap();
        let t2 = NaiveBayes::fit(&[ex(10, Side::Team2)], &NaiveBayesParams::default()).unwrap();
        let bag = BaggedNaiveBayes::from_members(vec![t1.clone(), t2.clone(), t2, t1]).unwrap();
        assert_eq!(bag.predict(&ex(10, Side::Team2)), Side::Team1);
    }

    #[test]
    fn fit_is_deterministic() {
        let data: Vec<_> = (0..30)
            .map(|i| ex(i * 7, if i % 3 == 0 { Side::Team2 } else { Side::Team1 }))
            .collect();
        let p = BaggingParams::default();
        let a = BaggedNaiveBayes::fit(&data, &p, 5).unwrap();
        assert_eq!(a, BaggedNaiveBayes::fit(&data, &p, 5).unwrap());
        assert_eq!(a.members().len(), 25);
    }
}
