//! Label aggregation, annotator dispersion and inter-annotator agreement.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{AnnotationRecord, Label};

/// Records whose annotator sigma is at or below this value form the high-agreement tier.
pub const HIGH_AGREEMENT_SIGMA: f64 = 0.5;

#[derive(Debug, Error, PartialEq)]
pub enum AgreementError {
    #[error("cannot aggregate an empty label list")]
    EmptyLabels,
    #[error("sigma needs at least 2 labels, got {0}")]
    TooFewLabels(usize),
    #[error("ragged annotator counts: expected {expected}, item {item} has {found}")]
    RaggedAnnotators {
        item: usize,
        expected: usize,
        found: usize,
    },
    #[error("rating matrix needs at least 1 item, 2 raters and 2 categories (N={items}, m={raters}, k={categories})")]
    DegenerateShape {
        items: usize,
        raters: usize,
        categories: usize,
    },
    #[error("label {label} outside the {categories} configured categories")]
    CategoryOutOfRange { label: usize, categories: usize },
    #[error("fleiss kappa undefined: all ratings fall in a single category")]
    KappaUndefined,
    #[error("krippendorff alpha undefined: fewer than two distinct values observed")]
    AlphaUndefined,
    #[error("agreement value {0} outside [-1, 1]")]
    ValueOutOfRange(f64),
}

/// Round-half-up of the integer mean `sum / n`, exact for any `n > 0`.
pub(crate) fn round_half_up_mean(sum: usize, n: usize) -> usize {
    (2 * sum + n) / (2 * n)
}

/// Mean of the annotator labels rounded to the nearest class, halves rounding up.
pub fn aggregate_labels(labels: &[Label]) -> Result<Label, AgreementError> {
    if labels.is_empty() {
        return Err(AgreementError::EmptyLabels);
    }
    let sum: usize = labels.iter().map(|l| l.index()).sum();
    let rounded = round_half_up_mean(sum, labels.len());
    Ok(Label::new(rounded as i64).expect("mean of labels stays in range"))
}

/// Population standard deviation of the label values.
pub fn annotator_sigma(labels: &[Label]) -> Result<f64, AgreementError> {
    if labels.len() < 2 {
        return Err(AgreementError::TooFewLabels(labels.len()));
    }
    let n = labels.len() as f64;
    let mean = labels.iter().map(|l| l.index() as f64).sum::<f64>() / n;
    let var = labels
        .iter()
        .map(|l| (l.index() as f64 - mean).powi(2))
        .sum::<f64>()
        / n;
    Ok(var.sqrt())
}

/// Splits records into (high, low) agreement by annotator sigma, preserving input order.
pub fn partition_by_agreement(
    records: &[AnnotationRecord],
    threshold: f64,
) -> Result<(Vec<AnnotationRecord>, Vec<AnnotationRecord>), AgreementError> {
    let mut high = Vec::new();
    let mut low = Vec::new();
    for record in records {
        if annotator_sigma(&record.annotator_labels)? <= threshold {
            high.push(record.clone());
        } else {
            low.push(record.clone());
        }
    }
    Ok((high, low))
}

/// Per-item category counts `v_ij`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatingMatrix {
    counts: Vec<Vec<usize>>,
    raters: usize,
    categories: usize,
}

impl RatingMatrix {
    /// Builds a matrix from raw rows; every row must have `categories` entries summing to the same `m`.
    pub fn from_counts(counts: Vec<Vec<usize>>) -> Result<Self, AgreementError> {
        let categories = counts.first().map_or(0, Vec::len);
        let raters = counts.first().map_or(0, |r| r.iter().sum());
        if counts.is_empty() || raters < 2 || categories < 2 {
            return Err(AgreementError::DegenerateShape {
                items: counts.len(),
                raters,
                categories,
            });
        }
        for (item, row) in counts.iter().enumerate() {
            let found: usize = row.iter().sum();
            if row.len() != categories || found != raters {
                return Err(AgreementError::RaggedAnnotators {
                    item,
                    expected: raters,
                    found,
                });
            }
        }
        Ok(RatingMatrix {
            counts,
            raters,
            categories,
        })
    }

    pub fn counts(&self) -> &[Vec<usize>] {
        &self.counts
    }

    pub fn items(&self) -> usize {
        self.counts.len()
    }

    pub fn raters(&self) -> usize {
        self.raters
    }

    pub fn categories(&self) -> usize {
        self.categories
    }
}

pub fn build_rating_matrix(
    records: &[AnnotationRecord],
    categories: usize,
) -> Result<RatingMatrix, AgreementError> {
    let raters = records.first().map_or(0, |r| r.annotator_labels.len());
    let mut counts = Vec::with_capacity(records.len());
    for (item, record) in records.iter().enumerate() {
        if record.annotator_labels.len() != raters {
            return Err(AgreementError::RaggedAnnotators {
                item,
                expected: raters,
                found: record.annotator_labels.len(),
            });
        }
        let mut row = vec![0; categories];
        for label in &record.annotator_labels {
            let slot = row
                .get_mut(label.index())
                .ok_or(AgreementError::CategoryOutOfRange {
                    label: label.index(),
                    categories,
                })?;
            *slot += 1;
        }
        counts.push(row);
    }
    RatingMatrix::from_counts(counts)
}

/// `(Σ_i Σ_j v_ij² − N·m) / (N·m·(m−1))`, the mean observed per-item agreement.
pub fn observed_agreement(matrix: &RatingMatrix) -> f64 {
    let n = matrix.items() as f64;
    let m = matrix.raters() as f64;
    let squares: usize = matrix
        .counts()
        .iter()
        .flat_map(|row| row.iter().map(|&v| v * v))
        .sum();
    (squares as f64 - n * m) / (n * m * (m - 1.0))
}

/// Chance-corrected Fleiss Kappa `(P̄ − P̄e) / (1 − P̄e)`.
pub fn fleiss_kappa(matrix: &RatingMatrix) -> Result<f64, AgreementError> {
    let observed = observed_agreement(matrix);
    let total = (matrix.items() * matrix.raters()) as f64;
    let expected: f64 = (0..matrix.categories())
        .map(|j| {
            let column: usize = matrix.counts().iter().map(|row| row[j]).sum();
            (column as f64 / total).powi(2)
        })
        .sum();
    // Single-category data gives exactly P̄e = 1; anything below is a valid denominator.
    if expected >= 1.0 - 1e-12 {
        return Err(AgreementError::KappaUndefined);
    }
    Ok((observed - expected) / (1.0 - expected))
}

/// Value-pair coincidences with ordinal distances over their marginals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoincidenceMatrix {
    coincidences: Vec<Vec<f64>>,
    marginals: Vec<f64>,
    total: f64,
    distances: Vec<Vec<f64>>,
}

impl CoincidenceMatrix {
    pub fn coincidences(&self) -> &[Vec<f64>] {
        &self.coincidences
    }

    pub fn marginals(&self) -> &[f64] {
        &self.marginals
    }

    /// Number of pairable values `n`.
    pub fn total(&self) -> f64 {
        self.total
    }

    /// Squared ordinal distances `δ²`.
    pub fn distances(&self) -> &[Vec<f64>] {
        &self.distances
    }
}

/// Ordinal metric: `δ_ij = Σ_{g=i..=j} n_g − (n_i + n_j)/2`, squared.
fn ordinal_distances(marginals: &[f64]) -> Vec<Vec<f64>> {
    let k = marginals.len();
    let mut distances = vec![vec![0.0; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let span: f64 = marginals[i..=j].iter().sum();
            let d = span - (marginals[i] + marginals[j]) / 2.0;
            distances[i][j] = d * d;
            distances[j][i] = d * d;
        }
    }
    distances
}

pub fn build_coincidence_matrix(
    records: &[AnnotationRecord],
    categories: usize,
) -> Result<CoincidenceMatrix, AgreementError> {
    let mut coincidences = vec![vec![0.0; categories]; categories];
    for record in records {
        let labels = &record.annotator_labels;
        if labels.len() < 2 {
            return Err(AgreementError::TooFewLabels(labels.len()));
        }
        if let Some(bad) = labels.iter().find(|l| l.index() >= categories) {
            return Err(AgreementError::CategoryOutOfRange {
                label: bad.index(),
                categories,
            });
        }
        let mut counts = vec![0usize; categories];
        for l in labels {
            counts[l.index()] += 1;
        }
        let scale = 1.0 / (labels.len() - 1) as f64;
        // Ordered pairs of distinct raters: c·k for c≠k, c·(c−1) on the diagonal.
        for c in 0..categories {
            for k in 0..categories {
                let pairs = if c == k {
                    counts[c] * counts[c].saturating_sub(1)
                } else {
                    counts[c] * counts[k]
                };
                coincidences[c][k] += pairs as f64 * scale;
            }
        }
    }
    let marginals: Vec<f64> = coincidences.iter().map(|row| row.iter().sum()).collect();
    let total = marginals.iter().sum();
    let distances = ordinal_distances(&marginals);
    Ok(CoincidenceMatrix {
        coincidences,
        marginals,
        total,
        distances,
    })
}

/// `α = 1 − (n−1)·Σ o_ij δ²_ij / Σ n_i n_j δ²_ij`.
pub fn krippendorff_alpha(cm: &CoincidenceMatrix) -> Result<f64, AgreementError> {
    let k = cm.marginals.len();
    let mut observed = 0.0;
    let mut expected = 0.0;
    for i in 0..k {
        for j in 0..k {
            observed += cm.coincidences[i][j] * cm.distances[i][j];
            expected += cm.marginals[i] * cm.marginals[j] * cm.distances[i][j];
        }
    }
    if expected <= 0.0 {
        return Err(AgreementError::AlphaUndefined);
    }
    Ok(1.0 - (cm.total - 1.0) * observed / expected)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AgreementBand {
    Poor,
    Slight,
    Fair,
    Moderate,
    Substantial,
    AlmostPerfect,
}

impl fmt::Display for AgreementBand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AgreementBand::Poor => "poor",
            AgreementBand::Slight => "slight",
            AgreementBand::Fair => "fair",
            AgreementBand::Moderate => "moderate",
            AgreementBand::Substantial => "substantial",
            AgreementBand::AlmostPerfect => "almost-perfect",
        })
    }
}

/// Bands: `[-1,0)` poor, `[0,0.20]` slight, then fair, moderate, substantial and
/// almost perfect with upper bounds 0.40, 0.60, 0.80 and 1.00 (upper bound inclusive).
pub fn interpret_kappa(value: f64) -> Result<AgreementBand, AgreementError> {
    if !(-1.0..=1.0).contains(&value) {
        return Err(AgreementError::ValueOutOfRange(value));
    }
    Ok(if value < 0.0 {
        AgreementBand::Poor
    } else if value <= 0.20 {
        AgreementBand::Slight
    } else if value <= 0.40 {
        AgreementBand::Fair
    } else if value <= 0.60 {
        AgreementBand::Moderate
    } else if value <= 0.80 {
        AgreementBand::Substantial
    } else {
        AgreementBand::AlmostPerfect
    })
}

/// Everything the agreement report shows for one group of records.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgreementSummary {
    pub items: usize,
    pub raters: usize,
    pub observed_agreement: f64,
    pub fleiss_kappa: Option<f64>,
    pub fleiss_band: Option<AgreementBand>,
    pub krippendorff_alpha: Option<f64>,
    pub alpha_band: Option<AgreementBand>,
    pub high_agreement: usize,
    pub low_agreement: usize,
}

/// Computes every agreement statistic; undefined coefficients come back as `None`.
pub fn summarize_agreement(
    records: &[AnnotationRecord],
    categories: usize,
) -> Result<AgreementSummary, AgreementError> {
    let matrix = build_rating_matrix(records, categories)?;
    let kappa = match fleiss_kappa(&matrix) {
        Ok(v) => Some(v),
        Err(AgreementError::KappaUndefined) => None,
        Err(e) => return Err(e),
    };
    let alpha = match krippendorff_alpha(&build_coincidence_matrix(records, categories)?) {
        Ok(v) => Some(v),
        Err(AgreementError::AlphaUndefined) => None,
        Err(e) => return Err(e),
    };
    let (high, low) = partition_by_agreement(records, HIGH_AGREEMENT_SIGMA)?;
    Ok(AgreementSummary {
        items: matrix.items(),
        raters: matrix.raters(),
        observed_agreement: observed_agreement(&matrix),
        fleiss_kappa: kappa,
        fleiss_band: kappa.and_then(|v| interpret_kappa(v).ok()),
        krippendorff_alpha: alpha,
        alpha_band: alpha.and_then(|v| interpret_kappa(v).ok()),
        high_agreement: high.len(),
        low_agreement: low.len(),
    })
}
