use super::{predict, ClassifierError, ModelParams};
use crate::annotation::round_half_up_mean;

/// Mean of the member class indices, rounded half up.
pub fn vote(member_predictions: &[usize]) -> Result<usize, ClassifierError> {
    if member_predictions.is_empty() {
        return Err(ClassifierError::EmptyVote);
    }
    let sum: usize = member_predictions.iter().sum();
    Ok(round_half_up_mean(sum, member_predictions.len()))
}

/// Models that predict by averaging their class votes.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    members: Vec<ModelParams>,
}

impl Ensemble {
    pub fn new(members: Vec<ModelParams>) -> Result<Self, ClassifierError> {
        if members.len() < 2 {
            return Err(ClassifierError::TooFewMembers(members.len()));
        }
        let (k, f) = (members[0].classes(), members[0].features());
        for m in &members[1..] {
            if m.classes() != k {
                return Err(ClassifierError::ShapeMismatch {
                    expected: k,
                    found: m.classes(),
                });
            }
            if m.features() != f {
                return Err(ClassifierError::ShapeMismatch {
                    expected: f,
                    found: m.features(),
                });
            }
        }
        Ok(Ensemble { members })
    }

    pub fn members(&self) -> &[ModelParams] {
        &self.members
    }

    pub fn predict(&self, x: &[f64]) -> Result<usize, ClassifierError> {
        let votes = self
            .members
            .iter()
            .map(|m| predict(m, x))
            .collect::<Result<Vec<_>, _>>()?;
        vote(&votes)
    }
}
