use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use acap_core::annotation::{summarize_agreement, AgreementSummary};
use acap_core::classifiers::{
    load_model, predict, save_model, train, LabeledVector, LossMode, SavedModel, TrainConfig,
    WeightMode,
};
use acap_core::corpus::{
    load_annotations, load_annotations_unchecked, load_documents, save_annotations, save_documents,
    validate_corpus, write_jsonl, AnnotationRecord, DocumentSet, LabeledPair, NUM_CLASSES,
};
use acap_core::eval::{
    render_report, render_summary, ExperimentConfig, ExperimentSummary, LabelSpace, Subset,
    SystemSpec,
};
use acap_core::features::{
    load_external_embeddings, write_embeddings, VectorizerConfig, VectorizerMode, VectorizerSet,
};
use acap_core::pipeline::build_examples;
use anyhow::{Context, Result};
use serde::Serialize;

use crate::config::PipelineConfig;
use crate::{
    AgreementArgs, Command, EmbedArgs, ExperimentArgs, IngestArgs, PredictArgs, ReportArgs,
    TrainArgs,
};

pub const DOCUMENTS_FILE: &str = "documents.jsonl";
pub const ANNOTATIONS_FILE: &str = "annotations.jsonl";

pub enum Failure {
    /// Bad flags or settings: exit 2.
    Usage(String),
    /// Anything that went wrong while doing the work: exit 1.
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(err: anyhow::Error) -> Self {
        Failure::Runtime(err)
    }
}

macro_rules! runtime_from {
    ($($ty:ty),*) => {$(
        impl From<$ty> for Failure {
            fn from(err: $ty) -> Self {
                Failure::Runtime(err.into())
            }
        }
    )*};
}

runtime_from!(
    acap_core::annotation::AgreementError,
    acap_core::classifiers::ClassifierError,
    acap_core::corpus::CorpusError,
    acap_core::eval::EvalError,
    acap_core::features::FeatureError,
    acap_core::pipeline::PipelineError
);

type Outcome = std::result::Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// The error chain on a single line.
pub fn one_line(err: &anyhow::Error) -> String {
    let mut out = String::new();
    for part in err.chain().map(|e| e.to_string()) {
        // Some errors already embed their source in their own message.
        if out.ends_with(&part) {
            continue;
        }
        if !out.is_empty() {
            out.push_str(": ");
        }
        out.push_str(&part);
    }
    out.replace('\n', " ")
}

pub fn run(command: Command, config: &PipelineConfig) -> Outcome {
    match command {
        Command::Ingest(args) => ingest(args),
        Command::Agreement(args) => agreement(args),
        Command::Embed(args) => embed(args, config),
        Command::Train(args) => train_cmd(args, config),
        Command::Predict(args) => predict_cmd(args),
        Command::Experiment(args) => experiment(args, config),
        Command::Report(args) => report(args),
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn ensure_parent(path: &Path) -> Result<()> {
    match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))
        }
        _ => Ok(()),
    }
}

fn load_corpus_dir(dir: &Path) -> Result<(DocumentSet, Vec<AnnotationRecord>)> {
    if !dir.is_dir() {
        anyhow::bail!("corpus directory {} not found", dir.display());
    }
    let docs = load_documents(&dir.join(DOCUMENTS_FILE))?;
    let records = load_annotations(&dir.join(ANNOTATIONS_FILE), &docs)?;
    Ok((docs, records))
}

fn parse_flag<T: std::str::FromStr<Err = String>>(
    value: Option<&str>,
) -> std::result::Result<Option<T>, Failure> {
    value
        .map(|v| v.parse::<T>().map_err(Failure::Usage))
        .transpose()
}

fn ingest(args: IngestArgs) -> Outcome {
    let docs = load_documents(&args.documents)?;
    let records = load_annotations(&args.annotations, &docs)?;
    let report = validate_corpus(&docs, &records);
    let pairs = records
        .iter()
        .map(LabeledPair::from_record)
        .collect::<std::result::Result<Vec<_>, _>>()?;

    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    save_documents(&args.out.join(DOCUMENTS_FILE), &docs)?;
    save_annotations(&args.out.join(ANNOTATIONS_FILE), &records)?;
    write_jsonl(&args.out.join("pairs.jsonl"), pairs.iter())?;
    write_json(&args.out.join("validation.json"), &report)?;

    println!(
        "ingested {} documents, {} labeled pairs, {} orphan documents into {}",
        report.documents,
        report.records,
        report.orphan_documents.len(),
        args.out.display()
    );
    for (outlet, counts) in &report.per_outlet {
        println!(
            "  {outlet}: {} articles, {} comments, {} pairs",
            counts.articles, counts.comments, counts.labeled_pairs
        );
    }
    Ok(())
}

#[derive(Serialize)]
struct AgreementReport {
    sigma_rule: String,
    overall: AgreementSummary,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    per_outlet: BTreeMap<String, AgreementSummary>,
}

fn fmt_opt(value: Option<f64>) -> String {
    value.map_or_else(|| "undefined".to_string(), |v| format!("{v:.4}"))
}

fn agreement_row(name: &str, s: &AgreementSummary) -> String {
    let band = |b: &Option<acap_core::annotation::AgreementBand>| {
        b.as_ref()
            .map_or_else(|| "-".to_string(), ToString::to_string)
    };
    format!(
        "{name:<10} {:>6} {:>8.4} {:>10} {:<15} {:>10} {:<15} {:>5} {:>5}",
        s.items,
        s.observed_agreement,
        fmt_opt(s.fleiss_kappa),
        band(&s.fleiss_band),
        fmt_opt(s.krippendorff_alpha),
        band(&s.alpha_band),
        s.high_agreement,
        s.low_agreement
    )
}

fn agreement(args: AgreementArgs) -> Outcome {
    let (annotations, documents) = if args.annotations.is_dir() {
        let docs = args
            .documents
            .clone()
            .unwrap_or_else(|| args.annotations.join(DOCUMENTS_FILE));
        (args.annotations.join(ANNOTATIONS_FILE), Some(docs))
    } else {
        (args.annotations.clone(), args.documents.clone())
    };
    if args.per_outlet && documents.is_none() {
        return Err(usage(
            "--per-outlet needs --documents or a corpus directory",
        ));
    }

    let docs = documents.as_deref().map(load_documents).transpose()?;
    let records = match &docs {
        Some(docs) => load_annotations(&annotations, docs)?,
        None => load_annotations_unchecked(&annotations)?,
    };
    let overall = summarize_agreement(&records, NUM_CLASSES)?;
    let mut per_outlet = BTreeMap::new();
    if args.per_outlet {
        let docs = docs.as_ref().expect("checked above");
        let mut grouped: BTreeMap<String, Vec<AnnotationRecord>> = BTreeMap::new();
        for record in &records {
            let outlet = docs
                .get(&record.article_id)
                .map(|d| d.outlet.clone())
                .context("annotation refers to an unknown article")?;
            grouped.entry(outlet).or_default().push(record.clone());
        }
        for (outlet, group) in grouped {
            let summary = summarize_agreement(&group, NUM_CLASSES)
                .with_context(|| format!("outlet {outlet}"))?;
            per_outlet.insert(outlet, summary);
        }
    }

    let report = AgreementReport {
        sigma_rule:
            "population standard deviation of annotator labels; high agreement iff sigma <= 0.5"
                .into(),
        overall,
        per_outlet,
    };
    ensure_parent(&args.out)?;
    write_json(&args.out, &report)?;

    println!(
        "{:<10} {:>6} {:>8} {:>10} {:<15} {:>10} {:<15} {:>5} {:>5}",
        "group", "items", "observed", "kappa", "kappa band", "alpha", "alpha band", "high", "low"
    );
    println!("{}", agreement_row("all", &report.overall));
    for (outlet, summary) in &report.per_outlet {
        println!("{}", agreement_row(outlet, summary));
    }
    Ok(())
}

fn vectorizer_config(
    base: &VectorizerConfig,
    mode: Option<&str>,
    dim: Option<usize>,
) -> std::result::Result<VectorizerConfig, Failure> {
    let mut config = base.clone();
    if let Some(mode) = parse_flag::<VectorizerMode>(mode)? {
        config.mode = mode;
    }
    if let Some(dim) = dim {
        config.dimension = dim;
    }
    if config.dimension == 0 {
        return Err(usage("--dim must be positive"));
    }
    Ok(config)
}

fn corpus_path(
    flag: Option<PathBuf>,
    config: &PipelineConfig,
) -> std::result::Result<PathBuf, Failure> {
    flag.or_else(|| config.paths.corpus.clone())
        .ok_or_else(|| usage("no corpus given: pass --corpus or set paths.corpus in the config"))
}

fn embed(args: EmbedArgs, config: &PipelineConfig) -> Outcome {
    let vconfig = vectorizer_config(&config.vectorizer, args.mode.as_deref(), args.dim)?;
    let corpus = corpus_path(args.corpus, config)?;
    let (docs, records) = load_corpus_dir(&corpus)?;

    let vectorizers = VectorizerSet::fit(&docs, &vconfig, args.per_outlet)?;
    let mut rows = Vec::with_capacity(docs.len());
    for doc in docs.iter() {
        rows.push((doc.id.as_str(), vectorizers.embed(doc)?));
    }
    let examples = if args.pairs_out.is_some() || args.labels_out.is_some() {
        build_examples(&docs, &records, &vconfig, !args.per_outlet)?
    } else {
        Vec::new()
    };

    ensure_parent(&args.out)?;
    write_embeddings(&args.out, rows.iter().map(|(id, v)| (*id, v.values())))?;
    if let Some(path) = &args.pairs_out {
        ensure_parent(path)?;
        write_embeddings(
            path,
            examples
                .iter()
                .map(|e| (e.id.as_str(), e.features.as_slice())),
        )?;
    }
    if let Some(path) = &args.labels_out {
        ensure_parent(path)?;
        let mut text = String::new();
        for e in &examples {
            let _ = writeln!(text, "{}\t{}", e.id, e.label.value());
        }
        write_text(path, &text)?;
    }
    println!(
        "embedded {} documents into {} dimensions ({})",
        docs.len(),
        vconfig.dimension,
        if args.per_outlet {
            "per outlet"
        } else {
            "pooled"
        }
    );
    Ok(())
}

fn load_label_file(path: &Path, classes: usize) -> Result<BTreeMap<String, usize>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut out = BTreeMap::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let at = || format!("{}:{}", path.display(), idx + 1);
        let (id, label) = line
            .split_once('\t')
            .with_context(|| format!("{}: expected id<TAB>class", at()))?;
        let label: usize = label
            .trim()
            .parse()
            .ok()
            .filter(|&l| l < classes)
            .with_context(|| format!("{}: class must be an integer in 0..{classes}", at()))?;
        if out.insert(id.to_string(), label).is_some() {
            anyhow::bail!("{}: duplicate id '{id}'", at());
        }
    }
    Ok(out)
}

fn train_cmd(args: TrainArgs, config: &PipelineConfig) -> Outcome {
    let mut tconfig: TrainConfig = config.train.clone();
    if let Some(loss) = parse_flag::<LossMode>(args.loss.as_deref())? {
        tconfig.loss_mode = loss;
    }
    if let Some(mode) = parse_flag::<WeightMode>(args.weight_mode.as_deref())? {
        tconfig.weight_mode = mode;
    }
    tconfig.epochs = args.epochs.unwrap_or(tconfig.epochs);
    tconfig.learning_rate = args.learning_rate.unwrap_or(tconfig.learning_rate);
    tconfig.batch_size = args.batch_size.unwrap_or(tconfig.batch_size);
    tconfig.l2 = args.l2.unwrap_or(tconfig.l2);
    tconfig.seed = args.seed.unwrap_or(config.seed);
    tconfig.validate().map_err(|e| usage(e.to_string()))?;
    if args.classes < 2 {
        return Err(usage("--classes must be at least 2"));
    }

    let features = load_external_embeddings(&args.features)?;
    let labels = load_label_file(&args.labels, args.classes)?;
    if let Some(id) = labels.keys().find(|id| !features.contains_key(*id)) {
        return Err(anyhow::anyhow!("label id '{id}' has no feature row").into());
    }
    let dataset = features
        .iter()
        .map(|(id, v)| {
            labels
                .get(id)
                .map(|&l| LabeledVector::new(v.values().to_vec(), l))
                .with_context(|| format!("feature id '{id}' has no label"))
        })
        .collect::<Result<Vec<_>>>()?;

    let outcome = train(&dataset, args.classes, &tconfig)?;
    let model = SavedModel {
        params: outcome.params,
        loss_mode: tconfig.loss_mode,
        weight_mode: tconfig.weight_mode,
        seed: tconfig.seed,
    };
    ensure_parent(&args.out)?;
    save_model(&args.out, &model)?;
    println!(
        "trained on {} examples for {} epochs; final loss {:.6}",
        dataset.len(),
        tconfig.epochs,
        outcome.loss_trace.last().copied().unwrap_or(f64::NAN)
    );
    Ok(())
}

fn predict_cmd(args: PredictArgs) -> Outcome {
    let model = load_model(&args.model)?;
    let features = load_external_embeddings(&args.features)?;
    let mut text = String::new();
    for (id, v) in &features {
        let class = predict(&model.params, v.values()).with_context(|| format!("row '{id}'"))?;
        let _ = writeln!(text, "{id}\t{class}");
    }
    ensure_parent(&args.out)?;
    write_text(&args.out, &text)?;
    println!(
        "wrote {} predictions to {}",
        features.len(),
        args.out.display()
    );
    Ok(())
}

fn experiment(args: ExperimentArgs, config: &PipelineConfig) -> Outcome {
    let settings = &config.experiment;
    let vconfig = vectorizer_config(&config.vectorizer, args.mode.as_deref(), args.dim)?;
    let mut base_train = config.train.clone();
    base_train.epochs = args.epochs.unwrap_or(base_train.epochs);
    base_train.validate().map_err(|e| usage(e.to_string()))?;

    let names = args
        .systems
        .clone()
        .unwrap_or_else(|| settings.systems.clone());
    let select = args.select_on_validation || settings.select_on_validation;
    let mut systems =
        SystemSpec::resolve_list(&names, &base_train).map_err(|e| usage(e.to_string()))?;
    for spec in &mut systems {
        if let SystemSpec::Softmax {
            select_on_validation,
            ..
        } = spec
        {
            *select_on_validation = select;
        }
    }
    let exp = ExperimentConfig {
        repeats: args.repeats.unwrap_or(settings.repeats),
        split: settings.split,
        subset: parse_flag::<Subset>(args.subset.as_deref())?.unwrap_or(settings.subset),
        label_space: parse_flag::<LabelSpace>(args.labels.as_deref())?.unwrap_or(settings.labels),
        merge_outlets: args.merge_outlets || settings.merge_outlets,
        seed: args.seed.unwrap_or(config.seed),
        systems,
    };
    exp.validate().map_err(|e| usage(e.to_string()))?;
    let out = args
        .out
        .or_else(|| config.paths.output.clone())
        .ok_or_else(|| {
            usage("no output directory: pass --out, set ACAP_OUT_DIR or paths.output")
        })?;
    let corpus = corpus_path(args.corpus, config)?;

    let (docs, records) = load_corpus_dir(&corpus)?;
    let examples = build_examples(&docs, &records, &vconfig, exp.merge_outlets)?;
    let summary = acap_core::eval::run_experiment(&examples, &exp)?;
    let table = render_summary(&summary);

    fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
    write_json(&out.join("summary.json"), &summary)?;
    write_text(&out.join("summary.txt"), &table)?;
    print!("{table}");
    Ok(())
}

fn report(args: ReportArgs) -> Outcome {
    let summaries = args
        .summaries
        .iter()
        .map(|path| {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str::<ExperimentSummary>(&text)
                .with_context(|| format!("parsing {}", path.display()))
        })
        .collect::<Result<Vec<_>>>()?;
    let text = render_report(&summaries)?;
    match &args.out {
        Some(path) => {
            ensure_parent(path)?;
            write_text(path, &text)?;
        }
        None => print!("{text}"),
    }
    Ok(())
}
