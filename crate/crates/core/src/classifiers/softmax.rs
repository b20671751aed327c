use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::ClassifierError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LossMode {
    /// Plain cross-entropy.
    Standard,
    /// Cross-entropy scaled by [`ordinal_weight`] of the current prediction.
    Ordinal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightMode {
    /// `1 + |ŷ − y| / (k − 1)`, in `[1, 2]`.
    Normalized,
    /// `1 + |ŷ − y|`, in `{1, …, k}`.
    Integer,
}

impl fmt::Display for LossMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LossMode::Standard => "standard",
            LossMode::Ordinal => "ordinal",
        })
    }
}

impl FromStr for LossMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "standard" => Ok(LossMode::Standard),
            "ordinal" => Ok(LossMode::Ordinal),
            other => Err(format!("unknown loss mode '{other}'")),
        }
    }
}

impl fmt::Display for WeightMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeightMode::Normalized => "normalized",
            WeightMode::Integer => "integer",
        })
    }
}

impl FromStr for WeightMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "normalized" => Ok(WeightMode::Normalized),
            "integer" => Ok(WeightMode::Integer),
            other => Err(format!("unknown weight mode '{other}'")),
        }
    }
}

/// Mini-batch gradient descent settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TrainConfig {
    pub epochs: usize,
    pub learning_rate: f64,
    pub batch_size: usize,
    pub seed: u64,
    pub loss_mode: LossMode,
    pub weight_mode: WeightMode,
    pub l2: f64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            epochs: 300,
            learning_rate: 0.1,
            batch_size: 32,
            seed: 0,
            loss_mode: LossMode::Standard,
            weight_mode: WeightMode::Normalized,
            l2: 1e-4,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<(), ClassifierError> {
        let bad = |msg: &str| Err(ClassifierError::InvalidConfig(msg.to_string()));
        if self.epochs == 0 {
            return bad("epochs must be at least 1");
        }
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return bad("learning rate must be positive");
        }
        if self.batch_size == 0 {
            return bad("batch size must be at least 1");
        }
        if !(self.l2 >= 0.0 && self.l2.is_finite()) {
            return bad("l2 must be nonnegative");
        }
        Ok(())
    }
}

/// Weights (`classes × features`, row-major) and bias of a linear softmax model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    classes: usize,
    features: usize,
    weights: Vec<f64>,
    bias: Vec<f64>,
}

impl ModelParams {
    pub fn zeros(classes: usize, features: usize) -> Result<Self, ClassifierError> {
        Self::from_parts(classes, features, vec![0.0; classes * features], vec![0.0; classes])
    }

    pub fn from_parts(
        classes: usize,
        features: usize,
        weights: Vec<f64>,
        bias: Vec<f64>,
    ) -> Result<Self, ClassifierError> {
        if classes < 2 {
            return Err(ClassifierError::TooFewClasses(classes));
        }
        if weights.len() != classes * features {
            return Err(ClassifierError::ShapeMismatch {
                expected: classes * features,
                found: weights.len(),
            });
        }
        if bias.len() != classes {
            return Err(ClassifierError::ShapeMismatch {
                expected: classes,
                found: bias.len(),
            });
        }
        if let Some(i) = weights.iter().chain(&bias).position(|v| !v.is_finite()) {
            return Err(ClassifierError::NonFiniteFeature(i));
        }
        Ok(ModelParams {
            classes,
            features,
            weights,
            bias,
        })
    }

    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn features(&self) -> usize {
        self.features
    }

    /// Row-major `classes × features`.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn bias(&self) -> &[f64] {
        &self.bias
    }

    fn row(&self, class: usize) -> &[f64] {
        &self.weights[class * self.features..(class + 1) * self.features]
    }

    fn check_input(&self, x: &[f64]) -> Result<(), ClassifierError> {
        if x.len() != self.features {
            return Err(ClassifierError::ShapeMismatch {
                expected: self.features,
                found: x.len(),
            });
        }
        if let Some(i) = x.iter().position(|v| !v.is_finite()) {
            return Err(ClassifierError::NonFiniteFeature(i));
        }
        Ok(())
    }

    fn logits(&self, x: &[f64]) -> Vec<f64> {
        (0..self.classes)
            .map(|c| self.bias[c] + self.row(c).iter().zip(x).map(|(w, v)| w * v).sum::<f64>())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub probs: Vec<f64>,
    /// Index of the largest probability; ties go to the lowest index.
    pub predicted: usize,
}

fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate().skip(1) {
        if *v > values[best] {
            best = i;
        }
    }
    best
}

struct Forward {
    probs: Vec<f64>,
    predicted: usize,
    /// `ln Σ exp(z)`.
    log_norm: f64,
    logits: Vec<f64>,
}

fn forward(params: &ModelParams, x: &[f64]) -> Result<Forward, ClassifierError> {
    params.check_input(x)?;
    let logits = params.logits(x);
    let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = logits.iter().map(|z| (z - max).exp()).collect();
    let sum: f64 = exps.iter().sum();
    let probs: Vec<f64> = exps.iter().map(|e| e / sum).collect();
    Ok(Forward {
        predicted: argmax(&probs),
        probs,
        log_norm: max + sum.ln(),
        logits,
    })
}

/// Softmax of `Wx + b`, computed after subtracting the largest logit.
pub fn softmax_forward(params: &ModelParams, x: &[f64]) -> Result<Prediction, ClassifierError> {
    let f = forward(params, x)?;
    Ok(Prediction {
        probs: f.probs,
        predicted: f.predicted,
    })
}

pub fn predict(params: &ModelParams, x: &[f64]) -> Result<usize, ClassifierError> {
    softmax_forward(params, x).map(|p| p.predicted)
}

/// Per-example loss multiplier from the distance between predicted and true class.
pub fn ordinal_weight(
    truth: usize,
    predicted: usize,
    classes: usize,
    mode: WeightMode,
) -> Result<f64, ClassifierError> {
    if classes < 2 {
        return Err(ClassifierError::TooFewClasses(classes));
    }
    for label in [truth, predicted] {
        if label >= classes {
            return Err(ClassifierError::LabelOutOfRange { label, classes });
        }
    }
    let distance = truth.abs_diff(predicted) as f64;
    Ok(match mode {
        WeightMode::Normalized => 1.0 + distance / (classes - 1) as f64,
        WeightMode::Integer => 1.0 + distance,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledVector {
    pub features: Vec<f64>,
    pub label: usize,
}

impl LabeledVector {
    pub fn new(features: Vec<f64>, label: usize) -> Self {
        LabeledVector { features, label }
    }
}

/// Mean weighted cross-entropy plus `l2·‖W‖²`, and its gradient with the
/// ordinal weight held constant.
fn batch_loss_and_gradient<'a, I>(
    params: &ModelParams,
    batch: I,
    config: &TrainConfig,
) -> Result<(f64, ModelParams), ClassifierError>
where
    I: IntoIterator<Item = &'a LabeledVector>,
{
    let k = params.classes;
    let f = params.features;
    let mut grad_w = vec![0.0; k * f];
    let mut grad_b = vec![0.0; k];
    let mut loss = 0.0;
    let mut count = 0usize;
    let mut delta = vec![0.0; k];
    for example in batch {
        let y = example.label;
        if y >= k {
            return Err(ClassifierError::LabelOutOfRange { label: y, classes: k });
        }
        let out = forward(params, &example.features)?;
        let weight = match config.loss_mode {
            LossMode::Standard => 1.0,
            LossMode::Ordinal => ordinal_weight(y, out.predicted, k, config.weight_mode)?,
        };
        loss += weight * (out.log_norm - out.logits[y]);
        for c in 0..k {
            let target = if c == y { 1.0 } else { 0.0 };
            delta[c] = weight * (out.probs[c] - target);
            grad_b[c] += delta[c];
            let row = &mut grad_w[c * f..(c + 1) * f];
            for (g, x) in row.iter_mut().zip(&example.features) {
                *g += delta[c] * x;
            }
        }
        count += 1;
    }
    if count == 0 {
        return Err(ClassifierError::EmptyBatch);
    }
    let scale = 1.0 / count as f64;
    let mut penalty = 0.0;
    for (g, w) in grad_w.iter_mut().zip(&params.weights) {
        *g = *g * scale + 2.0 * config.l2 * w;
        penalty += w * w;
    }
    grad_b.iter_mut().for_each(|g| *g *= scale);
    let grad = ModelParams {
        classes: k,
        features: f,
        weights: grad_w,
        bias: grad_b,
    };
    Ok((loss * scale + config.l2 * penalty, grad))
}

/// Batch loss and its gradient, shaped like `params`. In ordinal mode each
/// example's weight comes from this forward pass's argmax.
pub fn loss_and_gradient(
    params: &ModelParams,
    batch: &[LabeledVector],
    config: &TrainConfig,
) -> Result<(f64, ModelParams), ClassifierError> {
    batch_loss_and_gradient(params, batch, config)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainOutcome {
    pub params: ModelParams,
    /// Mean training loss per epoch.
    pub loss_trace: Vec<f64>,
    /// 1-based epoch whose parameters were returned.
    pub selected_epoch: usize,
}

fn check_dataset(dataset: &[LabeledVector], classes: usize) -> Result<usize, ClassifierError> {
    let first = dataset.first().ok_or(ClassifierError::EmptyDataset)?;
    let features = first.features.len();
    for example in dataset {
        if example.features.len() != features {
            return Err(ClassifierError::ShapeMismatch {
                expected: features,
                found: example.features.len(),
            });
        }
        if example.label >= classes {
            return Err(ClassifierError::LabelOutOfRange {
                label: example.label,
                classes,
            });
        }
    }
    Ok(features)
}

fn accuracy_on(params: &ModelParams, data: &[LabeledVector]) -> Result<f64, ClassifierError> {
    let mut hits = 0usize;
    for example in data {
        if predict(params, &example.features)? == example.label {
            hits += 1;
        }
    }
    Ok(hits as f64 / data.len() as f64)
}

fn run_training(
    dataset: &[LabeledVector],
    validation: &[LabeledVector],
    classes: usize,
    config: &TrainConfig,
) -> Result<TrainOutcome, ClassifierError> {
    config.validate()?;
    let features = check_dataset(dataset, classes)?;
    if !validation.is_empty() && check_dataset(validation, classes)? != features {
        return Err(ClassifierError::ShapeMismatch {
            expected: features,
            found: validation[0].features.len(),
        });
    }
    let mut params = ModelParams::zeros(classes, features)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut order: Vec<usize> = (0..dataset.len()).collect();
    let mut loss_trace = Vec::with_capacity(config.epochs);
    let mut best: Option<(f64, usize, ModelParams)> = None;

    for epoch in 1..=config.epochs {
        order.shuffle(&mut rng);
        let mut epoch_loss = 0.0;
        for chunk in order.chunks(config.batch_size) {
            let (loss, grad) =
                batch_loss_and_gradient(&params, chunk.iter().map(|&i| &dataset[i]), config)?;
            if !loss.is_finite() {
                return Err(ClassifierError::Diverged {
                    epoch,
                    learning_rate: config.learning_rate,
                });
            }
            epoch_loss += loss * chunk.len() as f64;
            for (w, g) in params.weights.iter_mut().zip(&grad.weights) {
                *w -= config.learning_rate * g;
            }
            for (b, g) in params.bias.iter_mut().zip(&grad.bias) {
                *b -= config.learning_rate * g;
            }
        }
        if params.weights.iter().chain(&params.bias).any(|v| !v.is_finite()) {
            return Err(ClassifierError::Diverged {
                epoch,
                learning_rate: config.learning_rate,
            });
        }
        loss_trace.push(epoch_loss / dataset.len() as f64);
        if !validation.is_empty() {
            let score = accuracy_on(&params, validation)?;
            if best.as_ref().is_none_or(|(s, _, _)| score > *s) {
                best = Some((score, epoch, params.clone()));
            }
        }
    }
    let (params, selected_epoch) = match best {
        Some((_, epoch, p)) => (p, epoch),
        None => (params, config.epochs),
    };
    Ok(TrainOutcome {
        params,
        loss_trace,
        selected_epoch,
    })
}

/// Trains from zero-initialised parameters; the final epoch's parameters are returned.
pub fn train(
    dataset: &[LabeledVector],
    classes: usize,
    config: &TrainConfig,
) -> Result<TrainOutcome, ClassifierError> {
    run_training(dataset, &[], classes, config)
}

/// Like [`train`] but returns the epoch with the best validation accuracy
/// (earliest on ties). An empty validation set falls back to the final epoch.
pub fn train_with_validation(
    dataset: &[LabeledVector],
    validation: &[LabeledVector],
    classes: usize,
    config: &TrainConfig,
) -> Result<TrainOutcome, ClassifierError> {
    run_training(dataset, validation, classes, config)
}

/// A model with the settings it was trained under.
#[derive(Debug, Clone, PartialEq)]
pub struct SavedModel {
    pub params: ModelParams,
    pub loss_mode: LossMode,
    pub weight_mode: WeightMode,
    pub seed: u64,
}

const MODEL_MAGIC: &str = "acap-softmax-model";
const MODEL_VERSION: u32 = 1;

fn join(values: &[f64]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

/// Text format: a `key value` header, then `weights` (one row per class) and `bias`.
pub fn save_model(path: &Path, model: &SavedModel) -> Result<(), ClassifierError> {
    let p = &model.params;
    let mut out = format!(
        "{MODEL_MAGIC} {MODEL_VERSION}\nclasses {}\nfeatures {}\nloss_mode {}\nweight_mode {}\nseed {}\nweights\n",
        p.classes, p.features, model.loss_mode, model.weight_mode, model.seed
    );
    for c in 0..p.classes {
        out.push_str(&join(p.row(c)));
        out.push('\n');
    }
    out.push_str("bias\n");
    out.push_str(&join(&p.bias));
    out.push('\n');
    fs::write(path, out).map_err(|source| ClassifierError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_model(path: &Path) -> Result<SavedModel, ClassifierError> {
    let shown = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| ClassifierError::Io {
        path: shown.clone(),
        source,
    })?;
    let fail = |message: String| ClassifierError::ModelFormat {
        path: shown.clone(),
        message,
    };
    let mut lines = text.lines();
    let mut next = |what: &str| lines.next().ok_or_else(|| fail(format!("missing {what}")));

    let magic = next("header")?;
    if magic != format!("{MODEL_MAGIC} {MODEL_VERSION}") {
        return Err(fail(format!("unsupported header '{magic}'")));
    }
    let mut field = |key: &str| -> Result<String, ClassifierError> {
        let line = next(key)?;
        line.strip_prefix(key)
            .and_then(|rest| rest.strip_prefix(' '))
            .map(str::to_string)
            .ok_or_else(|| fail(format!("expected '{key}', found '{line}'")))
    };
    let classes: usize = field("classes")?.parse().map_err(|e| fail(format!("classes: {e}")))?;
    let features: usize = field("features")?.parse().map_err(|e| fail(format!("features: {e}")))?;
    let loss_mode: LossMode = field("loss_mode")?.parse().map_err(fail)?;
    let weight_mode: WeightMode = field("weight_mode")?.parse().map_err(fail)?;
    let seed: u64 = field("seed")?.parse().map_err(|e| fail(format!("seed: {e}")))?;

    let parse_row = |line: &str, expected: usize| -> Result<Vec<f64>, ClassifierError> {
        let row = line
            .split_whitespace()
            .map(|v| v.parse::<f64>().map_err(|e| fail(format!("value '{v}': {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != expected {
            return Err(fail(format!("row has {} values, expected {expected}", row.len())));
        }
        Ok(row)
    };
    if next("weights")? != "weights" {
        return Err(fail("expected 'weights'".into()));
    }
    let mut weights = Vec::with_capacity(classes * features);
    for _ in 0..classes {
        weights.extend(parse_row(next("weight row")?, features)?);
    }
    if next("bias")? != "bias" {
        return Err(fail("expected 'bias'".into()));
    }
    let bias = parse_row(next("bias row")?, classes)?;
    Ok(SavedModel {
        params: ModelParams::from_parts(classes, features, weights, bias)?,
        loss_mode,
        weight_mode,
        seed,
    })
}
