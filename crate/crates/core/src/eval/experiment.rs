//! Repeated randomized-split experiments.
//!
//! Each repeat draws its own ChaCha stream (`seed`, stream = repeat index), so
//! adding repeats never changes earlier ones and repeats can run in parallel.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::metrics::evaluate;
use super::split::{split_dataset, SplitFractions, SplitSizes};
use super::EvalError;
use crate::classifiers::{
    predict, threshold_classify, train, train_with_validation, vote, LabeledVector, LossMode,
    TrainConfig, WeightMode,
};
use crate::corpus::{binarize, AgreementTier, Label};

/// One labeled article-comment pair ready for modelling.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Example {
    pub id: String,
    pub outlet: String,
    pub features: Vec<f64>,
    /// Article-comment cosine, required by the threshold system.
    pub similarity: Option<f64>,
    pub label: Label,
    pub tier: AgreementTier,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Subset {
    All,
    High,
    Low,
}

impl FromStr for Subset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(Subset::All),
            "high" => Ok(Subset::High),
            "low" => Ok(Subset::Low),
            other => Err(format!("unknown subset '{other}'")),
        }
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Subset::All => "all",
            Subset::High => "high",
            Subset::Low => "low",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelSpace {
    Multiclass,
    Binary,
}

impl LabelSpace {
    pub fn classes(self) -> usize {
        match self {
            LabelSpace::Multiclass => 4,
            LabelSpace::Binary => 2,
        }
    }

    pub fn class_of(self, label: Label) -> usize {
        match self {
            LabelSpace::Multiclass => label.index(),
            LabelSpace::Binary => binarize(label).index(),
        }
    }
}

impl FromStr for LabelSpace {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "multiclass" => Ok(LabelSpace::Multiclass),
            "binary" => Ok(LabelSpace::Binary),
            other => Err(format!("unknown label space '{other}'")),
        }
    }
}

impl fmt::Display for LabelSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LabelSpace::Multiclass => "multiclass",
            LabelSpace::Binary => "binary",
        })
    }
}

/// Built-in compared systems.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum SystemSpec {
    /// Cosine-similarity cut points.
    Threshold { name: String },
    /// Softmax classifier; its training seed is replaced by one derived from the experiment seed.
    Softmax {
        name: String,
        train: TrainConfig,
        /// Pick the epoch with the best validation accuracy instead of the last one.
        #[serde(default)]
        select_on_validation: bool,
    },
    /// Rounded average of earlier systems' predictions.
    Vote { name: String, members: Vec<String> },
}

pub const VOTE_MEMBERS: [&str; 3] = ["softmax-standard", "softmax-ordinal", "softmax-ordinal-integer"];

impl SystemSpec {
    pub fn name(&self) -> &str {
        match self {
            SystemSpec::Threshold { name } | SystemSpec::Softmax { name, .. } | SystemSpec::Vote { name, .. } => name,
        }
    }

    /// Resolves a standard system name: `threshold`, `softmax-standard`,
    /// `softmax-ordinal`, `softmax-ordinal-integer` or `vote`.
    pub fn named(name: &str, base: &TrainConfig) -> Result<Self, EvalError> {
        let softmax = |loss_mode, weight_mode| SystemSpec::Softmax {
            name: name.to_string(),
            train: TrainConfig {
                loss_mode,
                weight_mode,
                ..base.clone()
            },
            select_on_validation: false,
        };
        Ok(match name {
            "threshold" => SystemSpec::Threshold { name: name.into() },
            "softmax-standard" => softmax(LossMode::Standard, base.weight_mode),
            "softmax-ordinal" => softmax(LossMode::Ordinal, WeightMode::Normalized),
            "softmax-ordinal-integer" => softmax(LossMode::Ordinal, WeightMode::Integer),
            "vote" => SystemSpec::Vote {
                name: name.into(),
                members: VOTE_MEMBERS.iter().map(|s| s.to_string()).collect(),
            },
            other => return Err(EvalError::InvalidConfig(format!("unknown system '{other}'"))),
        })
    }

    /// Resolves a list of names, inserting vote members that were not listed
    /// ahead of the vote.
    pub fn resolve_list<S: AsRef<str>>(names: &[S], base: &TrainConfig) -> Result<Vec<Self>, EvalError> {
        let mut out: Vec<SystemSpec> = Vec::new();
        for name in names {
            let spec = Self::named(name.as_ref(), base)?;
            if let SystemSpec::Vote { members, .. } = &spec {
                for member in members {
                    if !out.iter().any(|s| s.name() == member) {
                        out.push(Self::named(member, base)?);
                    }
                }
            }
            if out.iter().any(|s| s.name() == spec.name()) {
                continue;
            }
            out.push(spec);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub repeats: usize,
    pub split: SplitFractions,
    pub subset: Subset,
    pub label_space: LabelSpace,
    pub merge_outlets: bool,
    pub seed: u64,
    pub systems: Vec<SystemSpec>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            repeats: 5,
            split: SplitFractions::default(),
            subset: Subset::All,
            label_space: LabelSpace::Multiclass,
            merge_outlets: false,
            seed: 0,
            systems: Vec::new(),
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), EvalError> {
        if self.repeats == 0 {
            return Err(EvalError::InvalidConfig("repeats must be at least 1".into()));
        }
        self.split.validate()?;
        let mut seen: Vec<&str> = Vec::new();
        for spec in &self.systems {
            if seen.contains(&spec.name()) {
                return Err(EvalError::InvalidConfig(format!("duplicate system '{}'", spec.name())));
            }
            match spec {
                SystemSpec::Vote { name, members } => {
                    if members.is_empty() {
                        return Err(EvalError::InvalidConfig(format!("vote '{name}' has no members")));
                    }
                    if let Some(missing) = members.iter().find(|m| !seen.contains(&m.as_str())) {
                        return Err(EvalError::InvalidConfig(format!(
                            "vote '{name}' member '{missing}' must be listed before it"
                        )));
                    }
                }
                SystemSpec::Softmax { train, .. } => train.validate()?,
                SystemSpec::Threshold { .. } => {}
            }
            seen.push(spec.name());
        }
        Ok(())
    }
}

/// Data visible to a system within one repeat.
pub struct RepeatContext<'a> {
    pub train: Vec<&'a Example>,
    pub validation: Vec<&'a Example>,
    pub test: Vec<&'a Example>,
    pub label_space: LabelSpace,
    /// Seed reserved for this system in this repeat.
    pub seed: u64,
}

impl RepeatContext<'_> {
    pub fn classes(&self) -> usize {
        self.label_space.classes()
    }

    pub fn truth(&self, example: &Example) -> usize {
        self.label_space.class_of(example.label)
    }
}

/// Anything that can be trained on a repeat's train split and predict its test split.
pub trait System: Send + Sync {
    fn name(&self) -> &str;

    /// Test-split predictions. `earlier` holds the test predictions of systems
    /// listed before this one in the same repeat.
    fn predict_test(
        &self,
        ctx: &RepeatContext<'_>,
        earlier: &BTreeMap<String, Vec<usize>>,
    ) -> Result<Vec<usize>, EvalError>;
}

struct ThresholdSystem {
    name: String,
}

impl System for ThresholdSystem {
    fn name(&self) -> &str {
        &self.name
    }

    fn predict_test(&self, ctx: &RepeatContext<'_>, _: &BTreeMap<String, Vec<usize>>) -> Result<Vec<usize>, EvalError> {
        ctx.test
            .iter()
            .map(|e| {
                let sim = e.similarity.ok_or_else(|| EvalError::System {
                    name: self.name.clone(),
                    message: format!("example '{}' has no similarity score", e.id),
                })?;
                Ok(ctx.label_space.class_of(threshold_classify(sim)))
            })
            .collect()
    }
}

/// Per-feature standardization fitted on the training split.
struct Standardizer {
    mean: Vec<f64>,
    scale: Vec<f64>,
}

impl Standardizer {
    fn fit(rows: &[&Example]) -> Self {
        let f = rows[0].features.len();
        let n = rows.len() as f64;
        let mut mean = vec![0.0; f];
        for r in rows {
            for (m, v) in mean.iter_mut().zip(&r.features) {
                *m += v / n;
            }
        }
        let mut var = vec![0.0; f];
        for r in rows {
            for ((s, v), m) in var.iter_mut().zip(&r.features).zip(&mean) {
                *s += (v - m).powi(2) / n;
            }
        }
        let scale = var.iter().map(|v| if *v > 1e-12 { v.sqrt() } else { 1.0 }).collect();
        Standardizer { mean, scale }
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .zip(&self.mean)
            .zip(&self.scale)
            .map(|((v, m), s)| (v - m) / s)
            .collect()
    }
}

struct SoftmaxSystem {
    name: String,
    config: TrainConfig,
    select_on_validation: bool,
}

impl System for SoftmaxSystem {
    fn name(&self) -> &str {
        &self.name
    }

    fn predict_test(&self, ctx: &RepeatContext<'_>, _: &BTreeMap<String, Vec<usize>>) -> Result<Vec<usize>, EvalError> {
        if ctx.train.is_empty() {
            return Err(EvalError::Empty);
        }
        let scaler = Standardizer::fit(&ctx.train);
        let prepare = |rows: &[&Example]| -> Vec<LabeledVector> {
            rows.iter()
                .map(|e| LabeledVector::new(scaler.apply(&e.features), ctx.truth(e)))
                .collect()
        };
        let train_set = prepare(&ctx.train);
        let config = TrainConfig {
            seed: ctx.seed,
            ..self.config.clone()
        };
        let outcome = if self.select_on_validation {
            train_with_validation(&train_set, &prepare(&ctx.validation), ctx.classes(), &config)?
        } else {
            train(&train_set, ctx.classes(), &config)?
        };
        ctx.test
            .iter()
            .map(|e| Ok(predict(&outcome.params, &scaler.apply(&e.features))?))
            .collect()
    }
}

struct VoteSystem {
    name: String,
    members: Vec<String>,
}

impl System for VoteSystem {
    fn name(&self) -> &str {
        &self.name
    }

    fn predict_test(&self, ctx: &RepeatContext<'_>, earlier: &BTreeMap<String, Vec<usize>>) -> Result<Vec<usize>, EvalError> {
        let columns = self
            .members
            .iter()
            .map(|m| {
                earlier.get(m).ok_or_else(|| EvalError::System {
                    name: self.name.clone(),
                    message: format!("member '{m}' has not produced predictions"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        (0..ctx.test.len())
            .map(|i| {
                let votes: Vec<usize> = columns.iter().map(|c| c[i]).collect();
                Ok(vote(&votes)?)
            })
            .collect()
    }
}

impl SystemSpec {
    pub fn build(&self) -> Box<dyn System> {
        match self.clone() {
            SystemSpec::Threshold { name } => Box::new(ThresholdSystem { name }),
            SystemSpec::Softmax {
                name,
                train,
                select_on_validation,
            } => Box::new(SoftmaxSystem {
                name,
                config: train,
                select_on_validation,
            }),
            SystemSpec::Vote { name, members } => Box::new(VoteSystem { name, members }),
        }
    }
}

/// Mean, population standard deviation and the raw per-repeat values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stat {
    pub mean: f64,
    pub std: f64,
    pub values: Vec<f64>,
}

impl Stat {
    pub fn from_values(values: Vec<f64>) -> Self {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let std = (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt();
        Stat { mean, std, values }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemSummary {
    pub name: String,
    pub accuracy: Stat,
    pub wacc: Stat,
    /// Test-split confusion counts summed over repeats, `[truth][pred]`.
    pub confusion: Vec<Vec<usize>>,
}

/// Results for one outlet, or for the pooled data when outlets are merged.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub name: String,
    pub examples: usize,
    pub splits: Vec<SplitSizes>,
    pub systems: Vec<SystemSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSummary {
    pub config: ExperimentConfig,
    pub classes: usize,
    pub max_distance: usize,
    pub groups: Vec<GroupSummary>,
}

pub const MERGED_GROUP: &str = "merged";

/// Examples of the requested agreement tier.
pub fn filter_subset(examples: &[Example], subset: Subset) -> Vec<&Example> {
    examples
        .iter()
        .filter(|e| match subset {
            Subset::All => true,
            Subset::High => e.tier == AgreementTier::High,
            Subset::Low => e.tier == AgreementTier::Low,
        })
        .collect()
}

struct RepeatOutcome {
    sizes: SplitSizes,
    /// Per system: (accuracy, wacc, confusion).
    metrics: Vec<(f64, f64, Vec<Vec<usize>>)>,
}

fn run_repeat(
    pool: &[&Example],
    config: &ExperimentConfig,
    systems: &[Box<dyn System>],
    repeat: usize,
) -> Result<RepeatOutcome, EvalError> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(repeat as u64);
    let split = split_dataset(pool.len(), &config.split, &mut rng)?;
    let system_seeds: Vec<u64> = systems.iter().map(|_| rng.next_u64()).collect();
    let pick = |idx: &[usize]| idx.iter().map(|&i| pool[i]).collect::<Vec<_>>();
    let mut ctx = RepeatContext {
        train: pick(&split.train),
        validation: pick(&split.validation),
        test: pick(&split.test),
        label_space: config.label_space,
        seed: 0,
    };
    let truths: Vec<usize> = ctx.test.iter().map(|e| ctx.truth(e)).collect();
    let mut earlier = BTreeMap::new();
    let mut metrics = Vec::with_capacity(systems.len());
    for (system, seed) in systems.iter().zip(system_seeds) {
        ctx.seed = seed;
        let preds = system.predict_test(&ctx, &earlier)?;
        let report = evaluate(&preds, &truths, ctx.classes())?;
        metrics.push((report.accuracy, report.wacc, report.confusion));
        earlier.insert(system.name().to_string(), preds);
    }
    Ok(RepeatOutcome {
        sizes: split.sizes(),
        metrics,
    })
}

/// Runs the configured built-in systems.
pub fn run_experiment(examples: &[Example], config: &ExperimentConfig) -> Result<ExperimentSummary, EvalError> {
    let systems: Vec<Box<dyn System>> = config.systems.iter().map(SystemSpec::build).collect();
    run_experiment_with(examples, config, &systems)
}

/// Runs arbitrary systems; `config.systems` is echoed but not used to build them.
pub fn run_experiment_with(
    examples: &[Example],
    config: &ExperimentConfig,
    systems: &[Box<dyn System>],
) -> Result<ExperimentSummary, EvalError> {
    config.validate()?;
    if systems.is_empty() {
        return Err(EvalError::InvalidConfig("no systems to compare".into()));
    }
    let classes = config.label_space.classes();
    let selected = filter_subset(examples, config.subset);
    let mut groups: BTreeMap<String, Vec<&Example>> = BTreeMap::new();
    for e in selected {
        let key = if config.merge_outlets { MERGED_GROUP } else { e.outlet.as_str() };
        groups.entry(key.to_string()).or_default().push(e);
    }
    if groups.is_empty() {
        return Err(EvalError::InsufficientData {
            group: MERGED_GROUP.into(),
            found: 0,
            needed: 10 * classes,
        });
    }
    for (name, pool) in &groups {
        if pool.len() < 10 * classes {
            return Err(EvalError::InsufficientData {
                group: name.clone(),
                found: pool.len(),
                needed: 10 * classes,
            });
        }
    }

    let mut summaries = Vec::with_capacity(groups.len());
    for (name, pool) in groups {
        let outcomes = (0..config.repeats)
            .into_par_iter()
            .map(|r| run_repeat(&pool, config, systems, r))
            .collect::<Result<Vec<_>, _>>()?;
        let system_summaries = systems
            .iter()
            .enumerate()
            .map(|(s, system)| {
                let mut confusion = vec![vec![0; classes]; classes];
                for o in &outcomes {
                    for (row, add) in confusion.iter_mut().zip(&o.metrics[s].2) {
                        for (c, a) in row.iter_mut().zip(add) {
                            *c += a;
                        }
                    }
                }
                SystemSummary {
                    name: system.name().to_string(),
                    accuracy: Stat::from_values(outcomes.iter().map(|o| o.metrics[s].0).collect()),
                    wacc: Stat::from_values(outcomes.iter().map(|o| o.metrics[s].1).collect()),
                    confusion,
                }
            })
            .collect();
        summaries.push(GroupSummary {
            name,
            examples: pool.len(),
            splits: outcomes.iter().map(|o| o.sizes).collect(),
            systems: system_summaries,
        });
    }
    Ok(ExperimentSummary {
        config: config.clone(),
        classes,
        max_distance: classes - 1,
        groups: summaries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::synthetic::{generate_synthetic, SyntheticSpec};

    struct TruthSystem;

    impl System for TruthSystem {
        fn name(&self) -> &str {
            "truth"
        }

        fn predict_test(&self, ctx: &RepeatContext<'_>, _: &BTreeMap<String, Vec<usize>>) -> Result<Vec<usize>, EvalError> {
            Ok(ctx.test.iter().map(|e| ctx.truth(e)).collect())
        }
    }

    fn examples(n_per_class: usize, seed: u64) -> Vec<Example> {
        let data = generate_synthetic(
            &SyntheticSpec {
                per_class: n_per_class,
                ..Default::default()
            },
            seed,
        )
        .unwrap();
        data.examples
            .into_iter()
            .enumerate()
            .map(|(i, ex)| Example {
                id: format!("e{i}"),
                outlet: if i % 2 == 0 { "A".into() } else { "B".into() },
                similarity: Some(ex.features[0].tanh()),
                tier: if i % 3 == 0 { AgreementTier::Low } else { AgreementTier::High },
                label: Label::new(ex.label as i64).unwrap(),
                features: ex.features,
            })
            .collect()
    }

    fn quick_softmax(name: &str, loss_mode: LossMode) -> SystemSpec {
        SystemSpec::Softmax {
            name: name.into(),
            train: TrainConfig {
                epochs: 20,
                loss_mode,
                ..Default::default()
            },
            select_on_validation: false,
        }
    }

    #[test]
    fn truth_system_is_perfect() {
        let data = examples(25, 1);
        let config = ExperimentConfig {
            merge_outlets: true,
            ..Default::default()
        };
        let systems: Vec<Box<dyn System>> = vec![Box::new(TruthSystem)];
        let summary = run_experiment_with(&data, &config, &systems).unwrap();
        let s = &summary.groups[0].systems[0];
        assert_eq!(s.accuracy.values.len(), 5);
        assert_eq!(s.accuracy.mean, 1.0);
        assert_eq!(s.accuracy.std, 0.0);
        assert_eq!(s.wacc.mean, 1.0);
    }

    #[test]
    fn per_outlet_groups_and_binary_space() {
        let data = examples(25, 2);
        let config = ExperimentConfig {
            repeats: 2,
            label_space: LabelSpace::Binary,
            systems: vec![SystemSpec::Threshold { name: "threshold".into() }, quick_softmax("sm", LossMode::Standard)],
            ..Default::default()
        };
        let summary = run_experiment(&data, &config).unwrap();
        assert_eq!(summary.max_distance, 1);
        let names: Vec<_> = summary.groups.iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, ["A", "B"]);
        for g in &summary.groups {
            assert_eq!(g.examples, 50);
            for s in &g.systems {
                for (a, w) in s.accuracy.values.iter().zip(&s.wacc.values) {
                    assert_eq!(a, w);
                }
            }
        }
    }

    #[test]
    fn vote_uses_member_predictions() {
        let data = examples(30, 3);
        let base = TrainConfig {
            epochs: 15,
            ..Default::default()
        };
        let config = ExperimentConfig {
            repeats: 2,
            merge_outlets: true,
            systems: SystemSpec::resolve_list(&["vote"], &base).unwrap(),
            ..Default::default()
        };
        let names: Vec<_> = config.systems.iter().map(|s| s.name().to_string()).collect();
        assert_eq!(names, ["softmax-standard", "softmax-ordinal", "softmax-ordinal-integer", "vote"]);
        let summary = run_experiment(&data, &config).unwrap();
        assert_eq!(summary.groups[0].systems.len(), 4);
    }

    #[test]
    fn subsets_partition_the_pool() {
        let data = examples(10, 4);
        let all = filter_subset(&data, Subset::All);
        let high = filter_subset(&data, Subset::High);
        let low = filter_subset(&data, Subset::Low);
        assert_eq!(high.len() + low.len(), all.len());
        for e in all {
            assert!(high.contains(&e) != low.contains(&e));
        }
    }

    #[test]
    fn refuses_tiny_pools() {
        let data = examples(10, 5);
        let config = ExperimentConfig {
            subset: Subset::Low,
            merge_outlets: true,
            systems: vec![SystemSpec::Threshold { name: "t".into() }],
            ..Default::default()
        };
        assert!(matches!(
            run_experiment(&data, &config),
            Err(EvalError::InsufficientData { needed: 40, .. })
        ));
    }

    #[test]
    fn config_validation() {
        let vote_first = ExperimentConfig {
            systems: vec![
                SystemSpec::Vote { name: "v".into(), members: vec!["a".into()] },
                quick_softmax("a", LossMode::Standard),
            ],
            ..Default::default()
        };
        assert!(vote_first.validate().is_err());
        let dup = ExperimentConfig {
            systems: vec![quick_softmax("a", LossMode::Standard), quick_softmax("a", LossMode::Ordinal)],
            ..Default::default()
        };
        assert!(dup.validate().is_err());
        assert!(SystemSpec::named("svm", &TrainConfig::default()).is_err());
        assert!(ExperimentConfig { repeats: 0, ..Default::default() }.validate().is_err());
    }

    #[test]
    fn threshold_needs_similarity() {
        let mut data = examples(12, 6);
        data.iter_mut().for_each(|e| e.similarity = None);
        let config = ExperimentConfig {
            merge_outlets: true,
            systems: vec![SystemSpec::Threshold { name: "threshold".into() }],
            ..Default::default()
        };
        assert!(matches!(run_experiment(&data, &config), Err(EvalError::System { .. })));
    }

    #[test]
    fn stats_recompute() {
        let s = Stat::from_values(vec![0.5, 0.7, 0.9]);
        assert!((s.mean - 0.7).abs() < 1e-15);
        assert!((s.std - (0.08f64 / 3.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn extra_repeats_do_not_change_earlier_ones() {
        let data = examples(15, 7);
        let mut config = ExperimentConfig {
            repeats: 2,
            merge_outlets: true,
            systems: vec![quick_softmax("sm", LossMode::Ordinal)],
            ..Default::default()
        };
        let two = run_experiment(&data, &config).unwrap();
        config.repeats = 4;
        let four = run_experiment(&data, &config).unwrap();
        let a = &two.groups[0].systems[0].accuracy.values;
        let b = &four.groups[0].systems[0].accuracy.values;
        assert_eq!(a[..], b[..2]);
        assert_eq!(two.groups[0].splits[..], four.groups[0].splits[..2]);
    }
}
