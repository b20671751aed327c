//! Documents, annotation records and the label space.
//!
//! Both input files are line-delimited JSON. Documents carry
//! `{id, outlet, kind, text}`; annotation records carry
//! `{article_id, comment_id, labels}`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::annotation;

/// Number of ordinal relevance classes.
pub const NUM_CLASSES: usize = 4;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: malformed record: {message}")]
    Malformed {
        path: String,
        line: usize,
        message: String,
    },
    #[error("{path}:{line}: duplicate document id '{id}'")]
    DuplicateId { path: String, line: usize, id: String },
    #[error("{path}:{line}: unknown document kind '{kind}'")]
    UnknownKind {
        path: String,
        line: usize,
        kind: String,
    },
    #[error("{path}:{line}: document '{id}' has empty text")]
    EmptyText { path: String, line: usize, id: String },
    #[error("{path}:{line}: label out of range: {value}")]
    LabelOutOfRange {
        path: String,
        line: usize,
        value: i64,
    },
    #[error("{path}:{line}: dangling {field} '{id}'")]
    DanglingId {
        path: String,
        line: usize,
        field: &'static str,
        id: String,
    },
    #[error("{path}:{line}: {field} '{id}' refers to a document of kind {found}")]
    WrongKind {
        path: String,
        line: usize,
        field: &'static str,
        id: String,
        found: DocKind,
    },
    #[error("{path}:{line}: expected {expected} annotator labels, found {found}")]
    InconsistentAnnotators {
        path: String,
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("{path}:{line}: duplicate article-comment pair ({article_id}, {comment_id})")]
    DuplicatePair {
        path: String,
        line: usize,
        article_id: String,
        comment_id: String,
    },
    #[error("label out of range: {0}")]
    InvalidLabel(i64),
}

/// Ordinal relevance class: Irrelevant (0), Same Category (1), Same Entities (2), Relevant (3).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct Label(u8);

impl Label {
    pub const IRRELEVANT: Label = Label(0);
    pub const SAME_CATEGORY: Label = Label(1);
    pub const SAME_ENTITIES: Label = Label(2);
    pub const RELEVANT: Label = Label(3);

    pub fn new(value: i64) -> Result<Self, CorpusError> {
        if (0..NUM_CLASSES as i64).contains(&value) {
            Ok(Label(value as u8))
        } else {
            Err(CorpusError::InvalidLabel(value))
        }
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn name(self) -> &'static str {
        match self.0 {
            0 => "irrelevant",
            1 => "same-category",
            2 => "same-entities",
            _ => "relevant",
        }
    }

    pub fn all() -> impl Iterator<Item = Label> {
        (0..NUM_CLASSES as u8).map(Label)
    }
}

impl TryFrom<i64> for Label {
    type Error = CorpusError;

    fn try_from(value: i64) -> Result<Self, Self::Error> {
        Label::new(value)
    }
}

impl From<Label> for i64 {
    fn from(label: Label) -> i64 {
        label.0 as i64
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Relevant-or-not collapse of [`Label`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BinaryLabel(u8);

impl BinaryLabel {
    pub fn value(self) -> u8 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Maps Irrelevant to 0 and every other class to 1.
pub fn binarize(label: Label) -> BinaryLabel {
    BinaryLabel(u8::from(label.0 > 0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DocKind {
    Article,
    Comment,
}

impl fmt::Display for DocKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DocKind::Article => f.write_str("article"),
            DocKind::Comment => f.write_str("comment"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub outlet: String,
    pub kind: DocKind,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotationRecord {
    pub article_id: String,
    pub comment_id: String,
    #[serde(rename = "labels")]
    pub annotator_labels: Vec<Label>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AgreementTier {
    High,
    Low,
}

/// An annotation record reduced to its final label and annotator dispersion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledPair {
    pub article_id: String,
    pub comment_id: String,
    pub label: Label,
    pub sigma: f64,
    pub tier: AgreementTier,
}

impl LabeledPair {
    pub fn from_record(record: &AnnotationRecord) -> Result<Self, annotation::AgreementError> {
        let label = annotation::aggregate_labels(&record.annotator_labels)?;
        let sigma = annotation::annotator_sigma(&record.annotator_labels)?;
        let tier = if sigma <= annotation::HIGH_AGREEMENT_SIGMA {
            AgreementTier::High
        } else {
            AgreementTier::Low
        };
        Ok(LabeledPair {
            article_id: record.article_id.clone(),
            comment_id: record.comment_id.clone(),
            label,
            sigma,
            tier,
        })
    }
}

/// Documents keyed by id, in id order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DocumentSet {
    docs: BTreeMap<String, Document>,
}

impl DocumentSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts a document, refusing duplicate ids and blank texts.
    pub fn insert(&mut self, doc: Document) -> Result<(), CorpusError> {
        if doc.text.trim().is_empty() {
            return Err(CorpusError::EmptyText {
                path: String::new(),
                line: 0,
                id: doc.id,
            });
        }
        if self.docs.contains_key(&doc.id) {
            return Err(CorpusError::DuplicateId {
                path: String::new(),
                line: 0,
                id: doc.id,
            });
        }
        self.docs.insert(doc.id.clone(), doc);
        Ok(())
    }

    pub fn get(&self, id: &str) -> Option<&Document> {
        self.docs.get(id)
    }

    pub fn len(&self) -> usize {
        self.docs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.docs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Document> {
        self.docs.values()
    }

    pub fn outlets(&self) -> BTreeSet<&str> {
        self.docs.values().map(|d| d.outlet.as_str()).collect()
    }

    /// Documents of one outlet.
    pub fn restrict_to_outlet(&self, outlet: &str) -> DocumentSet {
        DocumentSet {
            docs: self
                .docs
                .iter()
                .filter(|(_, d)| d.outlet == outlet)
                .map(|(k, d)| (k.clone(), d.clone()))
                .collect(),
        }
    }
}

impl FromIterator<Document> for DocumentSet {
    /// Later duplicates overwrite earlier ones; use [`DocumentSet::insert`] to reject them.
    fn from_iter<I: IntoIterator<Item = Document>>(iter: I) -> Self {
        DocumentSet {
            docs: iter.into_iter().map(|d| (d.id.clone(), d)).collect(),
        }
    }
}

fn open_lines(path: &Path) -> Result<impl Iterator<Item = (usize, std::io::Result<String>)>, CorpusError> {
    let file = File::open(path).map_err(|source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(BufReader::new(file)
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l)))
}

#[derive(Deserialize)]
struct RawDocument {
    id: String,
    outlet: String,
    kind: String,
    text: String,
}

#[derive(Deserialize)]
struct RawAnnotation {
    article_id: String,
    comment_id: String,
    labels: Vec<i64>,
}

pub fn load_documents(path: &Path) -> Result<DocumentSet, CorpusError> {
    let shown = path.display().to_string();
    let mut set = DocumentSet::new();
    for (line_no, line) in open_lines(path)? {
        let line = line.map_err(|source| CorpusError::Io {
            path: shown.clone(),
            source,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let raw: RawDocument = serde_json::from_str(&line).map_err(|e| CorpusError::Malformed {
            path: shown.clone(),
            line: line_no,
            message: e.to_string(),
        })?;
        let kind = match raw.kind.as_str() {
            "article" => DocKind::Article,
            "comment" => DocKind::Comment,
            _ => {
                return Err(CorpusError::UnknownKind {
                    path: shown,
                    line: line_no,
                    kind: raw.kind,
                })
            }
        };
        let doc = Document {
            id: raw.id,
            outlet: raw.outlet,
            kind,
            text: raw.text,
        };
        set.insert(doc).map_err(|e| match e {
            CorpusError::DuplicateId { id, .. } => CorpusError::DuplicateId {
                path: shown.clone(),
                line: line_no,
                id,
            },
            CorpusError::EmptyText { id, .. } => CorpusError::EmptyText {
                path: shown.clone(),
                line: line_no,
                id,
            },
            other => other,
        })?;
    }
    if set.is_empty() {
        log::warn!("{shown}: no documents found");
    }
    Ok(set)
}

/// Loads annotation records, checking that every id resolves to a document of the right kind.
pub fn load_annotations(
    path: &Path,
    documents: &DocumentSet,
) -> Result<Vec<AnnotationRecord>, CorpusError> {
    read_annotations(path, Some(documents))
}

/// Loads annotation records without referential checks; label range, annotator
/// count and duplicate pairs are still enforced.
pub fn load_annotations_unchecked(path: &Path) -> Result<Vec<AnnotationRecord>, CorpusError> {
    read_annotations(path, None)
}

fn read_annotations(
    path: &Path,
    documents: Option<&DocumentSet>,
) -> Result<Vec<AnnotationRecord>, CorpusError> {
    let shown = path.display().to_string();
    let mut records = Vec::new();
    let mut seen_pairs = HashSet::new();
    let mut annotators: Option<usize> = None;
    for (line_no, line) in open_lines(path)? {
        let line = line.map_err(|source| CorpusError::Io {
            path: shown.clone(),
            source,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let raw: RawAnnotation = serde_json::from_str(&line).map_err(|e| CorpusError::Malformed {
            path: shown.clone(),
            line: line_no,
            message: e.to_string(),
        })?;
        for (field, id, want) in [
            ("article_id", &raw.article_id, DocKind::Article),
            ("comment_id", &raw.comment_id, DocKind::Comment),
        ] {
            let Some(documents) = documents else { break };
            match documents.get(id) {
                None => {
                    return Err(CorpusError::DanglingId {
                        path: shown,
                        line: line_no,
                        field,
                        id: id.clone(),
                    })
                }
                Some(doc) if doc.kind != want => {
                    return Err(CorpusError::WrongKind {
                        path: shown,
                        line: line_no,
                        field,
                        id: id.clone(),
                        found: doc.kind,
                    })
                }
                Some(_) => {}
            }
        }
        let labels = raw
            .labels
            .iter()
            .map(|&v| {
                Label::new(v).map_err(|_| CorpusError::LabelOutOfRange {
                    path: shown.clone(),
                    line: line_no,
                    value: v,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let expected = *annotators.get_or_insert(labels.len());
        if labels.len() < 2 || labels.len() != expected {
            return Err(CorpusError::InconsistentAnnotators {
                path: shown,
                line: line_no,
                expected: expected.max(2),
                found: labels.len(),
            });
        }
        if !seen_pairs.insert((raw.article_id.clone(), raw.comment_id.clone())) {
            return Err(CorpusError::DuplicatePair {
                path: shown,
                line: line_no,
                article_id: raw.article_id,
                comment_id: raw.comment_id,
            });
        }
        records.push(AnnotationRecord {
            article_id: raw.article_id,
            comment_id: raw.comment_id,
            annotator_labels: labels,
        });
    }
    Ok(records)
}

/// Writes any serializable records as one JSON object per line.
pub fn write_jsonl<'a, T, I>(path: &Path, records: I) -> Result<(), CorpusError>
where
    T: Serialize + 'a,
    I: IntoIterator<Item = &'a T>,
{
    let io_err = |source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    };
    let file = File::create(path).map_err(io_err)?;
    let mut out = BufWriter::new(file);
    for record in records {
        let line = serde_json::to_string(record).expect("record serializes");
        writeln!(out, "{line}").map_err(io_err)?;
    }
    out.flush().map_err(io_err)
}

pub fn save_documents(path: &Path, documents: &DocumentSet) -> Result<(), CorpusError> {
    write_jsonl(path, documents.iter())
}

pub fn save_annotations(path: &Path, records: &[AnnotationRecord]) -> Result<(), CorpusError> {
    write_jsonl(path, records.iter())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    UnresolvedReference { record: usize, field: String, id: String },
    WrongKind { record: usize, field: String, id: String },
    DuplicatePair { record: usize, article_id: String, comment_id: String },
    InconsistentAnnotators { record: usize, expected: usize, found: usize },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutletCounts {
    pub articles: usize,
    pub comments: usize,
    pub labeled_pairs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub documents: usize,
    pub records: usize,
    pub violations: Vec<Violation>,
    /// Documents never referenced by any annotation record.
    pub orphan_documents: Vec<String>,
    pub per_outlet: BTreeMap<String, OutletCounts>,
    /// Share of aggregated labels per class, indexed by label value.
    pub class_proportions: Vec<f64>,
    pub per_outlet_class_proportions: BTreeMap<String, Vec<f64>>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

fn proportions(counts: &[usize; NUM_CLASSES]) -> Vec<f64> {
    let total: usize = counts.iter().sum();
    if total == 0 {
        return vec![0.0; NUM_CLASSES];
    }
    counts.iter().map(|&c| c as f64 / total as f64).collect()
}

/// Audits a corpus without failing; every finding lands in the report.
pub fn validate_corpus(documents: &DocumentSet, annotations: &[AnnotationRecord]) -> ValidationReport {
    let mut violations = Vec::new();
    let mut referenced = HashSet::new();
    let mut seen_pairs = HashSet::new();
    let mut per_outlet: BTreeMap<String, OutletCounts> = BTreeMap::new();
    let mut class_counts = [0usize; NUM_CLASSES];
    let mut outlet_class_counts: HashMap<String, [usize; NUM_CLASSES]> = HashMap::new();
    let expected_annotators = annotations.first().map(|r| r.annotator_labels.len());

    for doc in documents.iter() {
        let entry = per_outlet.entry(doc.outlet.clone()).or_default();
        match doc.kind {
            DocKind::Article => entry.articles += 1,
            DocKind::Comment => entry.comments += 1,
        }
    }

    for (idx, record) in annotations.iter().enumerate() {
        let mut resolved = true;
        for (field, id, want) in [
            ("article_id", &record.article_id, DocKind::Article),
            ("comment_id", &record.comment_id, DocKind::Comment),
        ] {
            referenced.insert(id.as_str());
            match documents.get(id) {
                None => {
                    resolved = false;
                    violations.push(Violation::UnresolvedReference {
                        record: idx,
                        field: field.to_string(),
                        id: id.clone(),
                    });
                }
                Some(doc) if doc.kind != want => {
                    resolved = false;
                    violations.push(Violation::WrongKind {
                        record: idx,
                        field: field.to_string(),
                        id: id.clone(),
                    });
                }
                Some(_) => {}
            }
        }
        if !seen_pairs.insert((&record.article_id, &record.comment_id)) {
            violations.push(Violation::DuplicatePair {
                record: idx,
                article_id: record.article_id.clone(),
                comment_id: record.comment_id.clone(),
            });
        }
        let found = record.annotator_labels.len();
        if Some(found) != expected_annotators || found < 2 {
            violations.push(Violation::InconsistentAnnotators {
                record: idx,
                expected: expected_annotators.unwrap_or(0).max(2),
                found,
            });
            continue;
        }
        let Ok(label) = annotation::aggregate_labels(&record.annotator_labels) else {
            continue;
        };
        class_counts[label.index()] += 1;
        if resolved {
            let outlet = documents
                .get(&record.article_id)
                .map(|d| d.outlet.clone())
                .unwrap_or_default();
            per_outlet.entry(outlet.clone()).or_default().labeled_pairs += 1;
            outlet_class_counts.entry(outlet).or_insert([0; NUM_CLASSES])[label.index()] += 1;
        }
    }

    let orphan_documents = documents
        .iter()
        .filter(|d| !referenced.contains(d.id.as_str()))
        .map(|d| d.id.clone())
        .collect();

    ValidationReport {
        documents: documents.len(),
        records: annotations.len(),
        violations,
        orphan_documents,
        per_outlet,
        class_proportions: proportions(&class_counts),
        per_outlet_class_proportions: outlet_class_counts
            .iter()
            .map(|(k, v)| (k.clone(), proportions(v)))
            .collect(),
    }
}
