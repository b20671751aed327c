use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::EvalError;

/// Train/test/validation shares.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitFractions {
    pub train: f64,
    pub test: f64,
    pub validation: f64,
}

impl Default for SplitFractions {
    fn default() -> Self {
        SplitFractions {
            train: 0.7,
            test: 0.2,
            validation: 0.1,
        }
    }
}

impl SplitFractions {
    pub fn validate(&self) -> Result<(), EvalError> {
        let parts = [self.train, self.test, self.validation];
        if parts.iter().any(|f| !(f.is_finite() && *f > 0.0)) {
            return Err(EvalError::InvalidFractions(format!("{parts:?}: every share must be positive")));
        }
        let sum: f64 = parts.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(EvalError::InvalidFractions(format!("{parts:?} sums to {sum}")));
        }
        Ok(())
    }

    /// Largest-remainder apportionment of `n` items; remainder ties favour train, then test.
    pub fn sizes(&self, n: usize) -> [usize; 3] {
        let quotas = [self.train, self.test, self.validation].map(|f| f * n as f64);
        // Tolerate representation error such as 0.7 * 10 = 7.000000000000001.
        let mut sizes = quotas.map(|q| (q + 1e-9).floor() as usize);
        let assigned: usize = sizes.iter().sum();
        let mut order = [0usize, 1, 2];
        let rem = |i: usize| quotas[i] - sizes[i] as f64;
        order.sort_by(|&a, &b| rem(b).partial_cmp(&rem(a)).unwrap().then(a.cmp(&b)));
        for &i in order.iter().take(n.saturating_sub(assigned)) {
            sizes[i] += 1;
        }
        sizes
    }
}

/// Index sets of one randomized split.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitIndices {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
    pub validation: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitSizes {
    pub train: usize,
    pub test: usize,
    pub validation: usize,
}

impl SplitIndices {
    pub fn sizes(&self) -> SplitSizes {
        SplitSizes {
            train: self.train.len(),
            test: self.test.len(),
            validation: self.validation.len(),
        }
    }
}

/// Shuffles `0..n` with `rng` and cuts it into train, test and validation.
pub fn split_dataset<R: Rng + ?Sized>(
    n: usize,
    fractions: &SplitFractions,
    rng: &mut R,
) -> Result<SplitIndices, EvalError> {
    if n == 0 {
        return Err(EvalError::Empty);
    }
    fractions.validate()?;
    let [train, test, _] = fractions.sizes(n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let validation = order.split_off(train + test);
    let test_part = order.split_off(train);
    Ok(SplitIndices {
        train: order,
        test: test_part,
        validation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn seventy_twenty_ten_sizes() {
        let f = SplitFractions::default();
        assert_eq!(f.sizes(1000), [700, 200, 100]);
        assert_eq!(f.sizes(10), [7, 2, 1]);
        assert_eq!(f.sizes(60), [42, 12, 6]);
        // 0.7·11 = 7.7, 0.2·11 = 2.2, 0.1·11 = 1.1 → floors 7/2/1, one left for train
        assert_eq!(f.sizes(11), [8, 2, 1]);
        for n in 0..300 {
            assert_eq!(f.sizes(n).iter().sum::<usize>(), n);
        }
    }

    #[test]
    fn split_is_a_seeded_partition() {
        let f = SplitFractions::default();
        let a = split_dataset(1000, &f, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        let b = split_dataset(1000, &f, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            a.sizes(),
            SplitSizes {
                train: 700,
                test: 200,
                validation: 100
            }
        );
        let mut all: Vec<usize> = a.train.iter().chain(&a.test).chain(&a.validation).copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..1000).collect::<Vec<_>>());
        let c = split_dataset(1000, &f, &mut ChaCha8Rng::seed_from_u64(2)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn split_errors() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(
            split_dataset(0, &SplitFractions::default(), &mut rng),
            Err(EvalError::Empty)
        ));
        let bad = SplitFractions {
            train: 0.7,
            test: 0.2,
            validation: 0.2,
        };
        assert!(matches!(split_dataset(10, &bad, &mut rng), Err(EvalError::InvalidFractions(_))));
    }
}
