use rand::{Rng, SeedableRng};
use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::EvalError;
use crate::classifiers::LabeledVector;

/// Parameters of the ordinal synthetic task.
///
/// Class `c` places its first feature uniformly in a unit-width interval centred
/// at `(c − (k−1)/2)·(1 + margin)`, so neighbouring classes are separated by a gap
/// of `margin` along that axis. Remaining features are uniform noise in `[−1, 1]`.
/// With probability `noise`, a label is moved one class up or down; labels at the
/// ends of the scale move inward.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticSpec {
    pub per_class: usize,
    pub classes: usize,
    pub features: usize,
    pub margin: f64,
    pub noise: f64,
}

impl Default for SyntheticSpec {
    fn default() -> Self {
        SyntheticSpec {
            per_class: 100,
            classes: 4,
            features: 7,
            margin: 1.0,
            noise: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticDataset {
    /// Examples with possibly displaced labels.
    pub examples: Vec<LabeledVector>,
    /// Labels before displacement, aligned with `examples`.
    pub clean_labels: Vec<usize>,
}

pub fn generate_synthetic(spec: &SyntheticSpec, seed: u64) -> Result<SyntheticDataset, EvalError> {
    if spec.per_class == 0 || spec.features == 0 {
        return Err(EvalError::InvalidConfig("per-class count and feature length must be positive".into()));
    }
    if spec.classes < 2 {
        return Err(EvalError::InvalidConfig(format!("need at least 2 classes, got {}", spec.classes)));
    }
    if !(0.0..=1.0).contains(&spec.noise) || spec.margin.is_nan() || spec.margin < 0.0 {
        return Err(EvalError::InvalidConfig("noise must lie in [0, 1] and margin must be nonnegative".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let centre = (spec.classes - 1) as f64 / 2.0;
    let mut rows = Vec::with_capacity(spec.per_class * spec.classes);
    for class in 0..spec.classes {
        for _ in 0..spec.per_class {
            let mut features = Vec::with_capacity(spec.features);
            features.push((class as f64 - centre) * (1.0 + spec.margin) + rng.random_range(-0.5..0.5));
            features.extend((1..spec.features).map(|_| rng.random_range(-1.0..1.0)));
            rows.push((features, class));
        }
    }
    rows.shuffle(&mut rng);

    let top = spec.classes - 1;
    let mut examples = Vec::with_capacity(rows.len());
    let mut clean_labels = Vec::with_capacity(rows.len());
    for (features, clean) in rows {
        let label = if rng.random_bool(spec.noise) {
            match clean {
                0 => 1,
                c if c == top => top - 1,
                c if rng.random_bool(0.5) => c + 1,
                c => c - 1,
            }
        } else {
            clean
        };
        examples.push(LabeledVector::new(features, label));
        clean_labels.push(clean);
    }
    Ok(SyntheticDataset {
        examples,
        clean_labels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let spec = SyntheticSpec::default();
        assert_eq!(generate_synthetic(&spec, 42).unwrap(), generate_synthetic(&spec, 42).unwrap());
        assert_ne!(generate_synthetic(&spec, 42).unwrap(), generate_synthetic(&spec, 43).unwrap());
    }

    #[test]
    fn clean_classes_separated_on_first_axis() {
        let spec = SyntheticSpec::default();
        let data = generate_synthetic(&spec, 1).unwrap();
        assert_eq!(data.examples.len(), 400);
        let mut lo = [f64::MAX; 4];
        let mut hi = [f64::MIN; 4];
        for ex in &data.examples {
            let x = ex.features[0];
            lo[ex.label] = lo[ex.label].min(x);
            hi[ex.label] = hi[ex.label].max(x);
            assert_eq!(ex.features.len(), 7);
        }
        for c in 0..3 {
            assert!(hi[c] + spec.margin <= lo[c + 1] + 1e-12);
        }
    }

    #[test]
    fn displaced_labels_are_adjacent() {
        let spec = SyntheticSpec {
            noise: 0.3,
            ..Default::default()
        };
        let data = generate_synthetic(&spec, 42).unwrap();
        let moved = data
            .examples
            .iter()
            .zip(&data.clean_labels)
            .filter(|(ex, &clean)| ex.label != clean)
            .inspect(|(ex, &clean)| assert_eq!(ex.label.abs_diff(clean), 1))
            .count();
        let share = moved as f64 / data.examples.len() as f64;
        // binomial(400, 0.3) has sd ≈ 0.023
        assert!((share - 0.3).abs() < 0.08, "{share}");
    }

    #[test]
    fn rejects_bad_specs() {
        for spec in [
            SyntheticSpec { per_class: 0, ..Default::default() },
            SyntheticSpec { features: 0, ..Default::default() },
            SyntheticSpec { classes: 1, ..Default::default() },
            SyntheticSpec { noise: 1.5, ..Default::default() },
        ] {
            assert!(generate_synthetic(&spec, 0).is_err());
        }
    }
}
