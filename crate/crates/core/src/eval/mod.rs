//! Metrics, split protocol, experiment harness and synthetic data.

mod experiment;
mod metrics;
mod report;
mod split;
mod synthetic;

use thiserror::Error;

pub use experiment::{
    filter_subset, run_experiment, run_experiment_with, Example, ExperimentConfig, ExperimentSummary,
    GroupSummary, LabelSpace, RepeatContext, Stat, Subset, System, SystemSpec, SystemSummary,
    MERGED_GROUP, VOTE_MEMBERS,
};
pub use metrics::{accuracy, confusion, evaluate, weighted_accuracy, MetricsReport};
pub use report::{format_cell, render_report, render_summary};
pub use split::{split_dataset, SplitFractions, SplitIndices, SplitSizes};
pub use synthetic::{generate_synthetic, SyntheticDataset, SyntheticSpec};

use crate::classifiers::ClassifierError;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("length mismatch: {preds} predictions vs {truths} truths")]
    LengthMismatch { preds: usize, truths: usize },
    #[error("empty input")]
    Empty,
    #[error("prediction {index} is {distance} classes from its truth, more than D = {max_distance}")]
    DistanceExceeded {
        index: usize,
        distance: usize,
        max_distance: usize,
    },
    #[error("label {label} out of range for {classes} classes")]
    LabelOutOfRange { label: usize, classes: usize },
    #[error("invalid split fractions {0}")]
    InvalidFractions(String),
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("group '{group}' has {found} examples after filtering, need at least {needed}")]
    InsufficientData {
        group: String,
        found: usize,
        needed: usize,
    },
    #[error("system '{name}': {message}")]
    System { name: String, message: String },
    #[error("incompatible summaries: {0}")]
    IncompatibleSummaries(String),
    #[error(transparent)]
    Classifier(#[from] ClassifierError),
}
