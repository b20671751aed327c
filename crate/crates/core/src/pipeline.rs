//! Corpus to modelling examples: aggregate labels, embed both sides of each
//! pair and assemble pair features.

use thiserror::Error;

use crate::annotation::AgreementError;
use crate::corpus::{AnnotationRecord, DocumentSet, LabeledPair};
use crate::eval::Example;
use crate::features::{pair_features, token_count, FeatureError, VectorizerConfig, VectorizerSet};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("pair ({article_id}, {comment_id}): {source}")]
    Pair {
        article_id: String,
        comment_id: String,
        #[source]
        source: FeatureError,
    },
    #[error("unknown document '{0}'")]
    UnknownDocument(String),
    #[error(transparent)]
    Feature(#[from] FeatureError),
    #[error(transparent)]
    Agreement(#[from] AgreementError),
}

/// Fits vectorizers (per outlet unless `pooled`) and builds one example per record.
/// An example's outlet is its article's outlet.
pub fn build_examples(
    documents: &DocumentSet,
    records: &[AnnotationRecord],
    config: &VectorizerConfig,
    pooled: bool,
) -> Result<Vec<Example>, PipelineError> {
    let vectorizers = VectorizerSet::fit(documents, config, !pooled)?;
    records
        .iter()
        .map(|record| {
            let pair = LabeledPair::from_record(record)?;
            let article = documents
                .get(&record.article_id)
                .ok_or_else(|| PipelineError::UnknownDocument(record.article_id.clone()))?;
            let comment = documents
                .get(&record.comment_id)
                .ok_or_else(|| PipelineError::UnknownDocument(record.comment_id.clone()))?;
            let pair_err = |source| PipelineError::Pair {
                article_id: record.article_id.clone(),
                comment_id: record.comment_id.clone(),
                source,
            };
            let a = vectorizers.embed(article).map_err(pair_err)?;
            let c = vectorizers.embed(comment).map_err(pair_err)?;
            let features = pair_features(
                &a,
                &c,
                token_count(article, &config.token_budget),
                token_count(comment, &config.token_budget),
            )
            .map_err(pair_err)?;
            Ok(Example {
                id: format!("{}::{}", record.article_id, record.comment_id),
                outlet: article.outlet.clone(),
                similarity: Some(features.cosine()),
                features: features.values().to_vec(),
                label: pair.label,
                tier: pair.tier,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{DocKind, Document, Label};

    #[test]
    fn builds_examples_with_cosine_slot() {
        let docs: DocumentSet = [
            ("a1", DocKind::Article, "The central bank raised interest rates again"),
            ("c1", DocKind::Comment, "Interest rates are too high"),
            ("c2", DocKind::Comment, "Nice weather for cricket"),
        ]
        .into_iter()
        .map(|(id, kind, text)| Document {
            id: id.into(),
            outlet: "WSJ".into(),
            kind,
            text: text.into(),
        })
        .collect();
        let rec = |c: &str, l: [i64; 3]| AnnotationRecord {
            article_id: "a1".into(),
            comment_id: c.into(),
            annotator_labels: l.iter().map(|&v| Label::new(v).unwrap()).collect(),
        };
        let config = VectorizerConfig {
            dimension: 64,
            ..Default::default()
        };
        let out = build_examples(&docs, &[rec("c1", [3, 3, 2]), rec("c2", [0, 0, 1])], &config, false).unwrap();
        assert_eq!(out.len(), 2);
        assert_eq!(out[0].features.len(), 2 * 64 + 3);
        assert_eq!(out[0].label, Label::RELEVANT);
        assert_eq!(out[0].similarity, Some(out[0].features[128]));
        assert!(out[0].similarity.unwrap() > out[1].similarity.unwrap());
        assert_eq!(out[1].id, "a1::c2");
    }
}
