use crate::corpus::Label;

/// Upper bounds (inclusive) of classes 0, 1 and 2; anything above the last is class 3.
pub const THRESHOLDS: [f64; 3] = [0.4, 0.6, 0.8];

/// Maps an article-comment cosine similarity to a relevance class.
pub fn threshold_classify(sim: f64) -> Label {
    let class = THRESHOLDS
        .iter()
        .position(|&bound| sim <= bound)
        .unwrap_or(THRESHOLDS.len());
    Label::new(class as i64).expect("threshold classes are valid labels")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_examples() {
        assert_eq!(threshold_classify(0.35).value(), 0);
        assert_eq!(threshold_classify(0.40).value(), 0);
        assert_eq!(threshold_classify(0.41).value(), 1);
        assert_eq!(threshold_classify(0.60).value(), 1);
        assert_eq!(threshold_classify(0.80).value(), 2);
        assert_eq!(threshold_classify(0.95).value(), 3);
        assert_eq!(threshold_classify(-1.0).value(), 0);
    }
}
