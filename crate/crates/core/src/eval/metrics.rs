use serde::{Deserialize, Serialize};

use super::EvalError;

fn check_lengths(preds: &[usize], truths: &[usize]) -> Result<(), EvalError> {
    if preds.len() != truths.len() {
        return Err(EvalError::LengthMismatch {
            preds: preds.len(),
            truths: truths.len(),
        });
    }
    if preds.is_empty() {
        return Err(EvalError::Empty);
    }
    Ok(())
}

/// Fraction of exact matches.
pub fn accuracy(preds: &[usize], truths: &[usize]) -> Result<f64, EvalError> {
    check_lengths(preds, truths)?;
    let hits = preds.iter().zip(truths).filter(|(p, t)| p == t).count();
    Ok(hits as f64 / preds.len() as f64)
}

/// `1 − Σ|pred − truth| / (m·D)` where `D` is the largest possible class distance.
pub fn weighted_accuracy(preds: &[usize], truths: &[usize], max_distance: usize) -> Result<f64, EvalError> {
    check_lengths(preds, truths)?;
    if max_distance == 0 {
        return Err(EvalError::InvalidConfig("max class distance must be positive".into()));
    }
    let mut total = 0usize;
    for (index, (p, t)) in preds.iter().zip(truths).enumerate() {
        let distance = p.abs_diff(*t);
        if distance > max_distance {
            return Err(EvalError::DistanceExceeded {
                index,
                distance,
                max_distance,
            });
        }
        total += distance;
    }
    // (m·D − Σ) / (m·D) keeps the D = 1 case bit-identical to accuracy.
    let scale = preds.len() * max_distance;
    Ok((scale - total) as f64 / scale as f64)
}

/// `matrix[truth][pred]` counts.
pub fn confusion(preds: &[usize], truths: &[usize], classes: usize) -> Result<Vec<Vec<usize>>, EvalError> {
    if preds.len() != truths.len() {
        return Err(EvalError::LengthMismatch {
            preds: preds.len(),
            truths: truths.len(),
        });
    }
    let mut matrix = vec![vec![0; classes]; classes];
    for (&p, &t) in preds.iter().zip(truths) {
        for label in [p, t] {
            if label >= classes {
                return Err(EvalError::LabelOutOfRange { label, classes });
            }
        }
        matrix[t][p] += 1;
    }
    Ok(matrix)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub accuracy: f64,
    pub wacc: f64,
    pub confusion: Vec<Vec<usize>>,
    pub examples: usize,
    pub max_distance: usize,
}

/// All metrics for a `classes`-way task, with `D = classes − 1`.
pub fn evaluate(preds: &[usize], truths: &[usize], classes: usize) -> Result<MetricsReport, EvalError> {
    if classes < 2 {
        return Err(EvalError::InvalidConfig(format!("need at least 2 classes, got {classes}")));
    }
    let max_distance = classes - 1;
    Ok(MetricsReport {
        accuracy: accuracy(preds, truths)?,
        wacc: weighted_accuracy(preds, truths, max_distance)?,
        confusion: confusion(preds, truths, classes)?,
        examples: preds.len(),
        max_distance,
    })
}
