use std::path::PathBuf;

use acap_core::classifiers::{load_model, predict, save_model, train, LabeledVector, SavedModel, TrainConfig};
use acap_core::corpus::{load_annotations, load_documents, validate_corpus, DocKind, Document, DocumentSet};
use acap_core::eval::{render_summary, run_experiment, ExperimentConfig, SystemSpec};
use acap_core::features::{
    cosine_similarity, fit_vectorizer, load_external_embeddings, pair_features, write_embeddings, TokenBudget,
    VectorizerConfig, VectorizerMode, VectorizerSet,
};
use acap_core::pipeline::build_examples;

fn sample_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/sample")
}

fn doc(id: &str, outlet: &str, kind: DocKind, text: &str) -> Document {
    Document {
        id: id.into(),
        outlet: outlet.into(),
        kind,
        text: text.into(),
    }
}

#[test]
fn sample_corpus_is_clean() {
    let docs = load_documents(&sample_dir().join("documents.jsonl")).unwrap();
    let records = load_annotations(&sample_dir().join("annotations.jsonl"), &docs).unwrap();
    let report = validate_corpus(&docs, &records);
    assert!(report.is_clean(), "{:?}", report.violations);
    assert_eq!(report.documents, 66);
    assert_eq!(report.records, 60);
    assert!(report.orphan_documents.is_empty());
    assert!((report.class_proportions.iter().sum::<f64>() - 1.0).abs() < 1e-9);
}

/// tf-idf recomputed by hand: smooth idf, sublinear tf, unit length.
#[test]
fn tfidf_matches_hand_computation() {
    let docs: DocumentSet = [
        doc("a", "X", DocKind::Article, "rates rates fed"),
        doc("b", "X", DocKind::Comment, "fed bank"),
        doc("c", "X", DocKind::Comment, "bank bank bank"),
    ]
    .into_iter()
    .collect();
    let config = VectorizerConfig {
        dimension: 5,
        token_budget: TokenBudget::unlimited(),
        ..Default::default()
    };
    let v = fit_vectorizer(&docs, &config).unwrap();
    assert_eq!(v.vocabulary_size(), Some(3));
    // lexical slots: bank, fed, rates; two padding slots
    let idf = |df: f64| (4.0 / (1.0 + df)).ln() + 1.0;
    let raw = [0.0, idf(2.0), (1.0 + 2f64.ln()) * idf(1.0), 0.0, 0.0];
    let norm = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
    let got = v.embed(docs.get("a").unwrap());
    for (g, r) in got.values().iter().zip(raw) {
        assert!((g - r / norm).abs() < 1e-12, "{:?}", got.values());
    }
}

#[test]
fn vocabulary_keeps_most_frequent_tokens() {
    let docs: DocumentSet = [
        doc("a", "X", DocKind::Article, "common alpha"),
        doc("b", "X", DocKind::Comment, "common beta"),
        doc("c", "X", DocKind::Comment, "common gamma"),
    ]
    .into_iter()
    .collect();
    let config = VectorizerConfig {
        dimension: 2,
        ..Default::default()
    };
    let v = fit_vectorizer(&docs, &config).unwrap();
    assert!(v.contains_token("common"));
    // df ties among alpha/beta/gamma resolve lexically
    assert!(v.contains_token("alpha"));
    assert!(!v.contains_token("beta") && !v.contains_token("gamma"));
}

#[test]
fn per_outlet_vectorizers_are_independent() {
    let docs = load_documents(&sample_dir().join("documents.jsonl")).unwrap();
    let config = VectorizerConfig::default();
    let per_outlet = VectorizerSet::fit(&docs, &config, true).unwrap();
    let pooled = VectorizerSet::fit(&docs, &config, false).unwrap();
    let wsj = per_outlet.for_outlet("WSJ").unwrap();
    let tg = per_outlet.for_outlet("TG").unwrap();
    assert_ne!(wsj, tg);
    assert!(per_outlet.for_outlet("NYT").is_err());
    assert!(pooled.for_outlet("NYT").is_ok());
}

#[test]
fn pair_features_layout() {
    let docs = load_documents(&sample_dir().join("documents.jsonl")).unwrap();
    let records = load_annotations(&sample_dir().join("annotations.jsonl"), &docs).unwrap();
    let config = VectorizerConfig {
        mode: VectorizerMode::Hashed,
        dimension: 64,
        ..Default::default()
    };
    let examples = build_examples(&docs, &records, &config, false).unwrap();
    assert_eq!(examples.len(), 60);
    let set = VectorizerSet::fit(&docs, &config, true).unwrap();
    for (ex, rec) in examples.iter().zip(&records) {
        assert_eq!(ex.id, format!("{}::{}", rec.article_id, rec.comment_id));
        assert_eq!(ex.features.len(), 2 * 64 + 3);
        let a = set.embed(docs.get(&rec.article_id).unwrap()).unwrap();
        let c = set.embed(docs.get(&rec.comment_id).unwrap()).unwrap();
        let cos = cosine_similarity(&a, &c).unwrap();
        assert_eq!(ex.similarity, Some(cos));
        assert_eq!(&ex.features[..64], a.values());
        assert_eq!(&ex.features[64..128], c.values());
        assert_eq!(ex.features[128], cos);
        let manual = pair_features(&a, &c, 1, 1).unwrap();
        assert_eq!(manual.values()[128], cos);
        assert_eq!(manual.values()[129], 2f64.ln());
    }
}

#[test]
fn embeddings_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("emb.tsv");
    let rows = [("x", vec![0.5, -0.25, 1e-17]), ("y", vec![1.0, 0.0, 3.0])];
    write_embeddings(&path, rows.iter().map(|(id, v)| (*id, v.as_slice()))).unwrap();
    let back = load_external_embeddings(&path).unwrap();
    assert_eq!(back["x"].values(), rows[0].1.as_slice());
    assert_eq!(back["y"].values(), rows[1].1.as_slice());
}

#[test]
fn trained_model_survives_save_and_load() {
    let data: Vec<LabeledVector> = (0..40)
        .map(|i| {
            let x = i as f64 / 10.0 - 2.0;
            LabeledVector::new(vec![x, 1.0 - x], usize::from(x > 0.0))
        })
        .collect();
    let config = TrainConfig {
        epochs: 50,
        ..Default::default()
    };
    let outcome = train(&data, 2, &config).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("model.txt");
    let saved = SavedModel {
        params: outcome.params.clone(),
        loss_mode: config.loss_mode,
        weight_mode: config.weight_mode,
        seed: config.seed,
    };
    save_model(&path, &saved).unwrap();
    let loaded = load_model(&path).unwrap();
    assert_eq!(loaded, saved);
    for ex in &data {
        assert_eq!(
            predict(&loaded.params, &ex.features).unwrap(),
            predict(&outcome.params, &ex.features).unwrap()
        );
    }
}

#[test]
fn merged_experiment_on_sample() {
    let docs = load_documents(&sample_dir().join("documents.jsonl")).unwrap();
    let records = load_annotations(&sample_dir().join("annotations.jsonl"), &docs).unwrap();
    let config = VectorizerConfig {
        mode: VectorizerMode::Hashed,
        dimension: 64,
        ..Default::default()
    };
    let examples = build_examples(&docs, &records, &config, true).unwrap();
    let train = TrainConfig {
        epochs: 30,
        ..Default::default()
    };
    let exp = ExperimentConfig {
        repeats: 3,
        merge_outlets: true,
        seed: 8,
        systems: SystemSpec::resolve_list(&["threshold", "vote"], &train).unwrap(),
        ..Default::default()
    };
    let summary = run_experiment(&examples, &exp).unwrap();
    assert_eq!(summary.groups.len(), 1);
    let group = &summary.groups[0];
    assert_eq!(group.examples, 60);
    for s in &group.systems {
        assert_eq!(s.accuracy.values.len(), 3);
        let mean = s.accuracy.values.iter().sum::<f64>() / 3.0;
        assert!((s.accuracy.mean - mean).abs() < 1e-12);
        // WACC never falls below accuracy
        for (w, a) in s.wacc.values.iter().zip(&s.accuracy.values) {
            assert!(w + 1e-12 >= *a);
        }
        let total: usize = s.confusion.iter().flatten().sum();
        assert_eq!(total, group.splits.iter().map(|sp| sp.test).sum::<usize>());
    }
    assert!(render_summary(&summary).contains("merged"));
    assert_eq!(run_experiment(&examples, &exp).unwrap(), summary);
}
