//! Document vectors and article-comment pair features.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{DocKind, Document, DocumentSet};

#[derive(Debug, Error)]
pub enum FeatureError {
    #[error("cannot fit a vectorizer on an empty corpus")]
    EmptyCorpus,
    #[error("vector dimension must be positive")]
    ZeroDimension,
    #[error("cosine similarity undefined for a zero vector")]
    ZeroVector,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("no vectorizer fitted for outlet '{0}'")]
    UnknownOutlet(String),
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Malformed {
        path: String,
        line: usize,
        message: String,
    },
    #[error("{path}:{line}: ragged embedding dimension {found}, expected {expected}")]
    RaggedDimension {
        path: String,
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("{path}:{line}: duplicate embedding id '{id}'")]
    DuplicateId { path: String, line: usize, id: String },
}

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

/// Lowercased word tokens. Letters, digits and inner apostrophes are kept;
/// everything else separates tokens.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !(c.is_alphanumeric() || is_apostrophe(c)))
        .map(|raw| raw.trim_matches(is_apostrophe))
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.chars()
                .flat_map(char::to_lowercase)
                .map(|c| if is_apostrophe(c) { '\'' } else { c })
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VectorizerMode {
    Tfidf,
    Hashed,
}

impl std::str::FromStr for VectorizerMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tfidf" => Ok(VectorizerMode::Tfidf),
            "hashed" => Ok(VectorizerMode::Hashed),
            other => Err(format!("unknown vectorizer mode '{other}'")),
        }
    }
}

/// Maximum tokens kept per document kind; `None` keeps everything.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenBudget {
    pub article: Option<usize>,
    pub comment: Option<usize>,
}

impl Default for TokenBudget {
    fn default() -> Self {
        TokenBudget {
            article: Some(512),
            comment: None,
        }
    }
}

impl TokenBudget {
    pub fn unlimited() -> Self {
        TokenBudget {
            article: None,
            comment: None,
        }
    }

    fn for_kind(&self, kind: DocKind) -> Option<usize> {
        match kind {
            DocKind::Article => self.article,
            DocKind::Comment => self.comment,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct VectorizerConfig {
    pub mode: VectorizerMode,
    pub dimension: usize,
    pub hash_seed: u64,
    pub token_budget: TokenBudget,
}

impl Default for VectorizerConfig {
    fn default() -> Self {
        VectorizerConfig {
            mode: VectorizerMode::Tfidf,
            dimension: 1024,
            hash_seed: 0,
            token_budget: TokenBudget::default(),
        }
    }
}

/// A document embedding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocVector(Vec<f64>);

impl DocVector {
    pub fn new(values: Vec<f64>) -> Self {
        DocVector(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0.0)
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
enum SlotIndex {
    Vocabulary(HashMap<String, usize>),
    Hashed { seed: u64 },
}

/// Fitted bag-of-words vectorizer. Immutable after fitting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Vectorizer {
    dimension: usize,
    budget: TokenBudget,
    index: SlotIndex,
    /// Per-slot idf; slots beyond a short vocabulary stay 0.
    idf: Vec<f64>,
}

fn smooth_idf(docs: usize, df: usize) -> f64 {
    ((1.0 + docs as f64) / (1.0 + df as f64)).ln() + 1.0
}

/// FNV-1a over the token bytes, seeded; stable across platforms and runs.
fn hash_token(token: &str, seed: u64) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64 ^ seed.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    for b in token.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

fn budgeted_tokens(doc: &Document, budget: &TokenBudget) -> Vec<String> {
    let mut tokens = tokenize(&doc.text);
    if let Some(limit) = budget.for_kind(doc.kind) {
        tokens.truncate(limit);
    }
    tokens
}

impl Vectorizer {
    pub fn fit(documents: &DocumentSet, config: &VectorizerConfig) -> Result<Self, FeatureError> {
        if documents.is_empty() {
            return Err(FeatureError::EmptyCorpus);
        }
        if config.dimension == 0 {
            return Err(FeatureError::ZeroDimension);
        }
        let budget = config.token_budget;
        let tokenized: Vec<HashSet<String>> = documents
            .iter()
            .map(|d| budgeted_tokens(d, &budget).into_iter().collect())
            .collect();
        let n_docs = tokenized.len();
        let mut idf = vec![0.0; config.dimension];
        let index = match config.mode {
            VectorizerMode::Tfidf => {
                let mut df: BTreeMap<&str, usize> = BTreeMap::new();
                for set in &tokenized {
                    for t in set {
                        *df.entry(t.as_str()).or_default() += 1;
                    }
                }
                // Keep the `dimension` most frequent tokens; ties resolve lexically.
                let mut ranked: Vec<(&str, usize)> = df.into_iter().collect();
                ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(b.0)));
                ranked.truncate(config.dimension);
                ranked.sort_by(|a, b| a.0.cmp(b.0));
                let mut vocabulary = HashMap::with_capacity(ranked.len());
                for (slot, (tok, freq)) in ranked.into_iter().enumerate() {
                    idf[slot] = smooth_idf(n_docs, freq);
                    vocabulary.insert(tok.to_string(), slot);
                }
                SlotIndex::Vocabulary(vocabulary)
            }
            VectorizerMode::Hashed => {
                let mut df = vec![0usize; config.dimension];
                for set in &tokenized {
                    let slots: HashSet<usize> = set
                        .iter()
                        .map(|t| (hash_token(t, config.hash_seed) % config.dimension as u64) as usize)
                        .collect();
                    for s in slots {
                        df[s] += 1;
                    }
                }
                for (slot, &f) in df.iter().enumerate() {
                    idf[slot] = smooth_idf(n_docs, f);
                }
                SlotIndex::Hashed {
                    seed: config.hash_seed,
                }
            }
        };
        Ok(Vectorizer {
            dimension: config.dimension,
            budget,
            index,
            idf,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn contains_token(&self, token: &str) -> bool {
        match &self.index {
            SlotIndex::Vocabulary(vocabulary) => vocabulary.contains_key(token),
            SlotIndex::Hashed { .. } => true,
        }
    }

    pub fn vocabulary_size(&self) -> Option<usize> {
        match &self.index {
            SlotIndex::Vocabulary(vocabulary) => Some(vocabulary.len()),
            SlotIndex::Hashed { .. } => None,
        }
    }

    /// Sublinear-tf × idf vector, L2-normalized. Unknown tokens contribute nothing;
    /// a document with no known tokens yields the zero vector and a warning.
    pub fn embed(&self, doc: &Document) -> DocVector {
        let tokens = budgeted_tokens(doc, &self.budget);
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for t in &tokens {
            let slot = match &self.index {
                SlotIndex::Vocabulary(vocabulary) => vocabulary.get(t.as_str()).copied(),
                SlotIndex::Hashed { seed } => Some((hash_token(t, *seed) % self.dimension as u64) as usize),
            };
            if let Some(s) = slot {
                *counts.entry(s).or_default() += 1;
            }
        }
        let mut values = vec![0.0; self.dimension];
        for (slot, count) in counts {
            values[slot] = (1.0 + (count as f64).ln()) * self.idf[slot];
        }
        let norm = values.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 0.0 {
            values.iter_mut().for_each(|v| *v /= norm);
        } else {
            log::warn!("document '{}' has no in-vocabulary tokens; embedding is zero", doc.id);
        }
        DocVector(values)
    }
}

/// One vectorizer per outlet, or a single pooled one.
#[derive(Debug, Clone, PartialEq)]
pub enum VectorizerSet {
    Pooled(Vectorizer),
    PerOutlet(BTreeMap<String, Vectorizer>),
}

impl VectorizerSet {
    pub fn fit(
        documents: &DocumentSet,
        config: &VectorizerConfig,
        per_outlet: bool,
    ) -> Result<Self, FeatureError> {
        if !per_outlet {
            return Vectorizer::fit(documents, config).map(VectorizerSet::Pooled);
        }
        if documents.is_empty() {
            return Err(FeatureError::EmptyCorpus);
        }
        documents
            .outlets()
            .into_iter()
            .map(|outlet| {
                Vectorizer::fit(&documents.restrict_to_outlet(outlet), config)
                    .map(|v| (outlet.to_string(), v))
            })
            .collect::<Result<_, _>>()
            .map(VectorizerSet::PerOutlet)
    }

    pub fn for_outlet(&self, outlet: &str) -> Result<&Vectorizer, FeatureError> {
        match self {
            VectorizerSet::Pooled(v) => Ok(v),
            VectorizerSet::PerOutlet(map) => map
                .get(outlet)
                .ok_or_else(|| FeatureError::UnknownOutlet(outlet.to_string())),
        }
    }

    pub fn embed(&self, doc: &Document) -> Result<DocVector, FeatureError> {
        Ok(self.for_outlet(&doc.outlet)?.embed(doc))
    }
}

pub fn fit_vectorizer(documents: &DocumentSet, config: &VectorizerConfig) -> Result<Vectorizer, FeatureError> {
    Vectorizer::fit(documents, config)
}

pub fn embed(vectorizer: &Vectorizer, doc: &Document) -> DocVector {
    vectorizer.embed(doc)
}

pub fn cosine_similarity(a: &DocVector, b: &DocVector) -> Result<f64, FeatureError> {
    if a.dim() != b.dim() {
        return Err(FeatureError::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let dot: f64 = a.0.iter().zip(&b.0).map(|(x, y)| x * y).sum();
    let na = a.0.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = b.0.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        return Err(FeatureError::ZeroVector);
    }
    Ok((dot / (na * nb)).clamp(-1.0, 1.0))
}

/// Parses `id<TAB>v1 v2 ... vd` rows.
pub fn load_external_embeddings(path: &Path) -> Result<BTreeMap<String, DocVector>, FeatureError> {
    let shown = path.display().to_string();
    let file = File::open(path).map_err(|source| FeatureError::Io {
        path: shown.clone(),
        source,
    })?;
    let mut out = BTreeMap::new();
    let mut dimension = None;
    for (idx, line) in BufReader::new(file).lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|source| FeatureError::Io {
            path: shown.clone(),
            source,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let malformed = |message: String| FeatureError::Malformed {
            path: shown.clone(),
            line: line_no,
            message,
        };
        let (id, rest) = line
            .split_once('\t')
            .ok_or_else(|| malformed("expected id<TAB>values".into()))?;
        let values = rest
            .split_whitespace()
            .map(|v| {
                v.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| malformed(format!("bad value '{v}'")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let expected = *dimension.get_or_insert(values.len());
        if values.is_empty() || values.len() != expected {
            return Err(FeatureError::RaggedDimension {
                path: shown,
                line: line_no,
                expected,
                found: values.len(),
            });
        }
        if out.insert(id.to_string(), DocVector(values)).is_some() {
            return Err(FeatureError::DuplicateId {
                path: shown,
                line: line_no,
                id: id.to_string(),
            });
        }
    }
    Ok(out)
}

pub fn write_embeddings<'a, I>(path: &Path, rows: I) -> Result<(), FeatureError>
where
    I: IntoIterator<Item = (&'a str, &'a [f64])>,
{
    let io_err = |source| FeatureError::Io {
        path: path.display().to_string(),
        source,
    };
    let mut out = BufWriter::new(File::create(path).map_err(io_err)?);
    for (id, values) in rows {
        let joined: Vec<String> = values.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{id}\t{}", joined.join(" ")).map_err(io_err)?;
    }
    out.flush().map_err(io_err)
}

/// `[article ‖ comment ‖ cosine ‖ ln(1+comment tokens) ‖ ln(1+article tokens)]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairFeatures(Vec<f64>);

impl PairFeatures {
    pub fn new(values: Vec<f64>) -> Self {
        PairFeatures(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Cosine slot, valid for vectors built by [`pair_features`].
    pub fn cosine(&self) -> f64 {
        let d = (self.0.len() - 3) / 2;
        self.0[2 * d]
    }
}

pub fn pair_features(
    article: &DocVector,
    comment: &DocVector,
    article_tokens: usize,
    comment_tokens: usize,
) -> Result<PairFeatures, FeatureError> {
    let cosine = cosine_similarity(article, comment)?;
    let mut values = Vec::with_capacity(2 * article.dim() + 3);
    values.extend_from_slice(article.values());
    values.extend_from_slice(comment.values());
    values.push(cosine);
    values.push((1.0 + comment_tokens as f64).ln());
    values.push((1.0 + article_tokens as f64).ln());
    Ok(PairFeatures(values))
}

/// Token count after the vectorizer's budget, for the length slots of [`pair_features`].
pub fn token_count(doc: &Document, budget: &TokenBudget) -> usize {
    budgeted_tokens(doc, budget).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn doc(id: &str, outlet: &str, kind: DocKind, text: &str) -> Document {
        Document {
            id: id.into(),
            outlet: outlet.into(),
            kind,
            text: text.into(),
        }
    }

    fn corpus() -> DocumentSet {
        [
            doc("w1", "WSJ", DocKind::Article, "Stocks rally as the Fed holds rates"),
            doc("w2", "WSJ", DocKind::Comment, "The Fed should raise rates"),
            doc("g1", "TG", DocKind::Article, "Football season opens with derby"),
            doc("g2", "TG", DocKind::Comment, "What a derby that was"),
        ]
        .into_iter()
        .collect()
    }

    #[test]
    fn tokenize_examples() {
        assert_eq!(tokenize("It's Eurabia."), vec!["it's", "eurabia"]);
        assert!(tokenize("").is_empty());
        assert_eq!(tokenize("AAA aaa"), vec!["aaa", "aaa"]);
        assert_eq!(tokenize("'quoted' words, 3rd—place"), vec!["quoted", "words", "3rd", "place"]);
        assert_eq!(tokenize("Don\u{2019}t ÉTÉ"), vec!["don't", "été"]);
    }

    #[test]
    fn per_outlet_vocabulary() {
        let wsj = corpus().restrict_to_outlet("WSJ");
        let v = fit_vectorizer(&wsj, &VectorizerConfig::default()).unwrap();
        assert!(v.contains_token("fed"));
        assert!(!v.contains_token("derby"));

        let set = VectorizerSet::fit(&corpus(), &VectorizerConfig::default(), true).unwrap();
        assert!(set.for_outlet("TG").unwrap().contains_token("derby"));
        assert!(!set.for_outlet("TG").unwrap().contains_token("fed"));
        assert!(set.for_outlet("DM").is_err());
    }

    #[test]
    fn hashed_dimension() {
        let config = VectorizerConfig {
            mode: VectorizerMode::Hashed,
            dimension: 256,
            ..Default::default()
        };
        let v = fit_vectorizer(&corpus(), &config).unwrap();
        for d in corpus().iter() {
            assert_eq!(embed(&v, d).dim(), 256);
        }
    }

    #[test]
    fn tfidf_dimension_is_padded() {
        let v = fit_vectorizer(&corpus(), &VectorizerConfig::default()).unwrap();
        assert_eq!(v.dimension(), 1024);
        assert_eq!(embed(&v, corpus().get("w1").unwrap()).dim(), 1024);
    }

    #[test]
    fn empty_corpus_rejected() {
        assert!(matches!(
            fit_vectorizer(&DocumentSet::new(), &VectorizerConfig::default()),
            Err(FeatureError::EmptyCorpus)
        ));
    }

    #[test]
    fn embedding_is_deterministic() {
        let v = fit_vectorizer(&corpus(), &VectorizerConfig::default()).unwrap();
        let d = corpus().get("w1").unwrap().clone();
        assert_eq!(embed(&v, &d), embed(&v, &d));
    }

    #[test]
    fn unseen_tokens_give_zero_vector() {
        let v = fit_vectorizer(&corpus(), &VectorizerConfig::default()).unwrap();
        let oov = doc("x", "WSJ", DocKind::Comment, "zebra quokka");
        assert!(embed(&v, &oov).is_zero());
    }

    #[test]
    fn token_budget_truncates() {
        let words: Vec<String> = (0..100).map(|i| format!("w{i}")).collect();
        let long = doc("a", "X", DocKind::Article, &words.join(" "));
        let short = doc("a", "X", DocKind::Article, &words[..5].join(" "));
        let config = VectorizerConfig {
            token_budget: TokenBudget {
                article: Some(5),
                comment: None,
            },
            ..Default::default()
        };
        let set: DocumentSet = [long.clone()].into_iter().collect();
        let v = fit_vectorizer(&set, &config).unwrap();
        assert_eq!(embed(&v, &long), embed(&v, &short));
        assert_eq!(v.vocabulary_size(), Some(5));
    }

    #[test]
    fn tfidf_vocabulary_cap() {
        let config = VectorizerConfig {
            dimension: 2,
            ..Default::default()
        };
        let set: DocumentSet = [
            doc("1", "X", DocKind::Comment, "alpha beta gamma"),
            doc("2", "X", DocKind::Comment, "alpha beta"),
            doc("3", "X", DocKind::Comment, "alpha delta"),
        ]
        .into_iter()
        .collect();
        let v = fit_vectorizer(&set, &config).unwrap();
        assert!(v.contains_token("alpha"));
        assert!(v.contains_token("beta"));
        assert!(!v.contains_token("gamma"));
    }

    #[test]
    fn cosine_examples() {
        let a = DocVector::new(vec![1.0, 2.0, 3.0]);
        assert!((cosine_similarity(&a, &a).unwrap() - 1.0).abs() < 1e-12);
        let x = DocVector::new(vec![1.0, 0.0]);
        let y = DocVector::new(vec![0.0, 5.0]);
        assert_eq!(cosine_similarity(&x, &y).unwrap(), 0.0);
        let a3 = DocVector::new(vec![3.0, 6.0, 9.0]);
        assert!((cosine_similarity(&a, &a3).unwrap() - 1.0).abs() < 1e-12);
        let zero = DocVector::new(vec![0.0; 3]);
        assert!(matches!(cosine_similarity(&a, &zero), Err(FeatureError::ZeroVector)));
    }

    #[test]
    fn pair_feature_layout() {
        let a = DocVector::new(vec![1.0, 0.0]);
        let c = DocVector::new(vec![1.0, 0.0]);
        let f = pair_features(&a, &c, 10, 3).unwrap();
        assert_eq!(f.len(), 7);
        assert_eq!(f.cosine(), 1.0);
        assert_eq!(f.values()[5], 4f64.ln());
        assert_eq!(f.values()[6], 11f64.ln());
        let bad = DocVector::new(vec![1.0, 0.0, 1.0]);
        assert!(matches!(
            pair_features(&a, &bad, 1, 1),
            Err(FeatureError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn external_embeddings() {
        let dir = tempfile::tempdir().unwrap();
        let row = |id: &str, d: usize| format!("{id}\t{}\n", vec!["0.5"; d].join(" "));

        let ok = dir.path().join("ok.tsv");
        std::fs::write(&ok, format!("{}{}{}", row("a", 768), row("b", 768), row("c", 768))).unwrap();
        let map = load_external_embeddings(&ok).unwrap();
        assert_eq!(map.len(), 3);
        assert_eq!(map["b"].dim(), 768);

        let ragged = dir.path().join("ragged.tsv");
        std::fs::write(&ragged, format!("{}{}", row("a", 768), row("b", 300))).unwrap();
        assert!(matches!(
            load_external_embeddings(&ragged),
            Err(FeatureError::RaggedDimension { line: 2, .. })
        ));

        let dup = dir.path().join("dup.tsv");
        std::fs::write(&dup, format!("{}{}", row("a", 4), row("a", 4))).unwrap();
        assert!(matches!(
            load_external_embeddings(&dup),
            Err(FeatureError::DuplicateId { .. })
        ));
    }

    #[test]
    fn written_embeddings_reload_exactly() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("e.tsv");
        let v = vec![0.1, -2.5e-7, 1.0 / 3.0];
        write_embeddings(&path, [("x", v.as_slice())]).unwrap();
        assert_eq!(load_external_embeddings(&path).unwrap()["x"].values(), v.as_slice());
    }

    fn arb_vec() -> impl Strategy<Value = Vec<f64>> {
        proptest::collection::vec(-10.0f64..10.0, 5)
            .prop_filter("nonzero", |v| v.iter().any(|x| x.abs() > 1e-3))
    }

    proptest! {
        #[test]
        fn cosine_symmetric_and_scale_invariant(a in arb_vec(), b in arb_vec(), s in 0.01f64..100.0) {
            let va = DocVector::new(a.clone());
            let vb = DocVector::new(b);
            let ab = cosine_similarity(&va, &vb).unwrap();
            prop_assert_eq!(ab, cosine_similarity(&vb, &va).unwrap());
            let scaled = DocVector::new(a.iter().map(|x| x * s).collect());
            prop_assert!((cosine_similarity(&scaled, &vb).unwrap() - ab).abs() < 1e-12);
            prop_assert!((-1.0..=1.0).contains(&ab));
        }

        #[test]
        fn unseen_token_contributes_nothing(text in "[a-z]{1,8}( [a-z]{1,8}){0,6}") {
            let v = fit_vectorizer(&corpus(), &VectorizerConfig::default()).unwrap();
            let base = doc("q", "WSJ", DocKind::Comment, &text);
            let padded = doc("q", "WSJ", DocKind::Comment, &format!("{text} zzqqxunseen"));
            prop_assert_eq!(embed(&v, &base), embed(&v, &padded));
        }
    }
}
