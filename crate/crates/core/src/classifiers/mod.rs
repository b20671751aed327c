//! Relevance classifiers: the similarity-threshold baseline, a softmax
//! classifier trained with standard or ordinal-weighted cross-entropy, and
//! the average-vote ensemble.

mod ensemble;
mod softmax;
mod threshold;

use thiserror::Error;

pub use ensemble::{vote, Ensemble};
pub use softmax::{
    load_model, loss_and_gradient, ordinal_weight, predict, save_model, softmax_forward, train,
    train_with_validation, LabeledVector, LossMode, ModelParams, Prediction, SavedModel,
    TrainConfig, TrainOutcome, WeightMode,
};
pub use threshold::{threshold_classify, THRESHOLDS};

#[derive(Debug, Error)]
pub enum ClassifierError {
    #[error("shape mismatch: expected {expected} features, got {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("non-finite feature at index {0}")]
    NonFiniteFeature(usize),
    #[error("label {label} out of range for {classes} classes")]
    LabelOutOfRange { label: usize, classes: usize },
    #[error("need at least 2 classes, got {0}")]
    TooFewClasses(usize),
    #[error("empty batch")]
    EmptyBatch,
    #[error("empty dataset")]
    EmptyDataset,
    #[error("cannot vote over an empty prediction list")]
    EmptyVote,
    #[error("ensemble needs at least 2 members, got {0}")]
    TooFewMembers(usize),
    #[error("invalid training config: {0}")]
    InvalidConfig(String),
    #[error("training diverged at epoch {epoch} (non-finite loss) with learning rate {learning_rate}")]
    Diverged { epoch: usize, learning_rate: f64 },
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("model file {path}: {message}")]
    ModelFormat { path: String, message: String },
}
