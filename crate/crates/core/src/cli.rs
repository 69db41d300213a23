//! Batch command-line front end.
//!
//! Exit statuses: 0 success, 1 invalid corpus input, 2 usage error,
//! 3 file I/O failure, 4 accuracy floor not met, 5 data error (missing gold
//! links, inconsistent generation specs).

use std::ffi::OsString;
use std::fs;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::corpus::{check_corpus, corpus_to_string, ValidationReport};
use crate::evaluator::{compare_methods, evaluate, render_grid, render_report, EvalReport};
use crate::golden;
use crate::model::Corpus;
use crate::particle::AnaphorParticle;
use crate::profiler::{distant_particle_stat, profile, render_profile};
use crate::resolver::{MethodId, Resolver, ResolverConfig, RuleId, RuleOrder};
use crate::structure::{ClosingSet, LocationCategory};
use crate::synthgen::{generate_corpus, parse_spec_file, random_specs};

pub mod status {
    pub const OK: i32 = 0;
    pub const INVALID_INPUT: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const IO: i32 = 3;
    pub const BELOW_FLOOR: i32 = 4;
    pub const DATA: i32 = 5;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("{path}: {message}")]
    InvalidInput { path: String, message: String },
    #[error("{0}")]
    Data(String),
}

impl CliError {
    pub fn status(&self) -> i32 {
        match self {
            CliError::Usage(_) => status::USAGE,
            CliError::Io { .. } => status::IO,
            CliError::InvalidInput { .. } => status::INVALID_INPUT,
            CliError::Data(_) => status::DATA,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "dousha", version, about = "Resolve, evaluate and profile the Japanese anaphor dousha")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a corpus file and list every problem found.
    Validate(InputArgs),
    /// Predict a referent for every anaphor.
    Resolve(ResolveArgs),
    /// Score methods against gold links.
    Evaluate(EvaluateArgs),
    /// Count gold referents by location and context.
    Profile(InputArgs),
    /// Write a synthetic or built-in corpus.
    Generate(GenerateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ParticleSel {
    Ga,
    Ha,
    Both,
}

impl ParticleSel {
    fn particles(self) -> Vec<AnaphorParticle> {
        match self {
            ParticleSel::Ga => vec![AnaphorParticle::Ga],
            ParticleSel::Ha => vec![AnaphorParticle::Ha],
            ParticleSel::Both => AnaphorParticle::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodSel {
    Scm,
    M2,
    M3,
    All,
}

impl MethodSel {
    /// Methods to run on an anaphor with `particle`.
    fn methods_for(self, particle: AnaphorParticle) -> Vec<MethodId> {
        let all = [MethodId::Scm, MethodId::cascade_for(particle)];
        let picked: Vec<MethodId> = match self {
            MethodSel::Scm => vec![MethodId::Scm],
            MethodSel::M2 => vec![MethodId::Method2Ga],
            MethodSel::M3 => vec![MethodId::Method3Ha],
            MethodSel::All => all.to_vec(),
        };
        picked.into_iter().filter(|m| m.accepts(particle)).collect()
    }
}

#[derive(Args, Debug)]
struct Common {
    /// Input corpus (line-delimited JSON); `-` reads standard input.
    #[arg(long = "in", value_name = "PATH")]
    input: PathBuf,
    /// Output file; standard output when omitted.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, value_enum, default_value_t = ParticleSel::Both)]
    particle: ParticleSel,
}

#[derive(Args, Debug)]
struct InputArgs {
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct CascadeArgs {
    /// Comma-separated cascade order, e.g.
    /// same_sentence_closest,subject_particle_closest,emphasis_prev_sentence,title_pattern_prev_sentence,closest_fallback
    #[arg(long, value_name = "RULES")]
    rule_order: Option<String>,
}

impl CascadeArgs {
    fn resolver(&self) -> Result<Resolver, CliError> {
        let rule_order = match &self.rule_order {
            Some(s) => s
                .parse::<RuleOrder>()
                .map_err(|e| CliError::Usage(e.to_string()))?,
            None => RuleOrder::default(),
        };
        Ok(Resolver::new(ResolverConfig {
            rule_order,
            ..Default::default()
        }))
    }
}

#[derive(Args, Debug)]
struct ResolveArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value_t = MethodSel::All)]
    method: MethodSel,
    #[command(flatten)]
    cascade: CascadeArgs,
}

#[derive(Args, Debug)]
struct EvaluateArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value_t = MethodSel::All)]
    method: MethodSel,
    /// Baseline against cascade for both particles.
    #[arg(long)]
    grid: bool,
    /// Exit with status 4 if any reported accuracy is below this value.
    #[arg(long, value_name = "FLOAT")]
    min_accuracy: Option<f64>,
    #[arg(long)]
    by_location: bool,
    #[arg(long)]
    by_rule: bool,
    #[command(flatten)]
    cascade: CascadeArgs,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("source").required(true).args(["spec", "count", "golden", "mirrored", "kfc"])))]
struct GenerateArgs {
    /// Line-delimited GenSpec records.
    #[arg(long, value_name = "PATH")]
    spec: Option<PathBuf>,
    /// Number of random specs to draw.
    #[arg(long, value_name = "N")]
    count: Option<usize>,
    /// The hand-built golden corpus, one document per table row.
    #[arg(long)]
    golden: bool,
    /// The golden corpus with each row repeated as often as it was observed.
    #[arg(long)]
    mirrored: bool,
    /// The single worked-example article.
    #[arg(long)]
    kfc: bool,
    /// Seed for --count, and base seed for spec records without one.
    #[arg(long, value_name = "INT", default_value_t = 0)]
    seed: u64,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    status::OK
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    status::USAGE
                }
            };
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.status()
        }
    }
}

fn dispatch(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Validate(a) => cmd_validate(&a.common, stdout),
        Command::Resolve(a) => cmd_resolve(&a, stdout),
        Command::Evaluate(a) => cmd_evaluate(&a, stdout, stderr),
        Command::Profile(a) => cmd_profile(&a.common, stdout),
        Command::Generate(a) => cmd_generate(&a, stdout),
    }
}

fn display(path: &Path) -> String {
    path.display().to_string()
}

fn open_input(path: &Path) -> Result<Box<dyn BufRead>, CliError> {
    if path == Path::new("-") {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf).map_err(|source| CliError::Io {
            path: "-".into(),
            source,
        })?;
        return Ok(Box::new(io::Cursor::new(buf)));
    }
    let file = fs::File::open(path).map_err(|source| CliError::Io {
        path: display(path),
        source,
    })?;
    Ok(Box::new(BufReader::new(file)))
}

fn read_corpus(path: &Path) -> Result<Corpus, CliError> {
    let (mut corpus, report) = check_corpus(open_input(path)?);
    if let Some(first) = report.issues.first() {
        return Err(CliError::InvalidInput {
            path: display(path),
            message: first.to_string(),
        });
    }
    // Canonical output order.
    corpus.documents.sort_by(|a, b| a.doc_id.cmp(&b.doc_id));
    Ok(corpus)
}

fn emit(out: Option<&Path>, stdout: &mut dyn Write, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: display(path),
            source,
        }),
        None => stdout.write_all(text.as_bytes()).map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        }),
    }
}

fn json_line<T: Serialize>(out: &mut String, value: &T) {
    out.push_str(&serde_json::to_string(value).expect("records serialize"));
    out.push('\n');
}

#[derive(Serialize)]
struct ValidationSummary {
    documents: usize,
    errors: usize,
}

fn render_validation(report: &ValidationReport, format: Format) -> String {
    let mut out = String::new();
    let summary = ValidationSummary {
        documents: report.documents,
        errors: report.issues.len(),
    };
    match format {
        Format::Text => {
            out.push_str(&format!(
                "{} documents, {} errors\n",
                summary.documents, summary.errors
            ));
            for issue in &report.issues {
                out.push_str(&format!(
                    "{}\t{}\t{}\n",
                    issue.doc_id.as_deref().unwrap_or("-"),
                    issue.line,
                    issue.error
                ));
            }
        }
        Format::Records => {
            json_line(&mut out, &summary);
            for issue in &report.issues {
                json_line(&mut out, &issue.record());
            }
        }
    }
    out
}

fn cmd_validate(args: &Common, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let (_, report) = check_corpus(open_input(&args.input)?);
    emit(args.out.as_deref(), stdout, &render_validation(&report, args.format))?;
    Ok(if report.is_clean() {
        status::OK
    } else {
        status::INVALID_INPUT
    })
}

#[derive(Debug, Serialize)]
struct ResolutionRecord<'a> {
    doc_id: &'a str,
    anaphor_id: String,
    method: MethodId,
    predicted: Option<String>,
    rule: Option<RuleId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    correct: Option<bool>,
}

fn check_method_particle(method: MethodSel, particle: ParticleSel) -> Result<(), CliError> {
    let usable = particle
        .particles()
        .into_iter()
        .any(|p| !method.methods_for(p).is_empty());
    if usable {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "method {method:?} does not apply to {particle:?} anaphors"
        )))
    }
}

fn cmd_resolve(args: &ResolveArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    check_method_particle(args.method, args.common.particle)?;
    let resolver = args.cascade.resolver()?;
    let corpus = read_corpus(&args.common.input)?;
    let particles = args.common.particle.particles();

    let mut records = Vec::new();
    for doc in &corpus.documents {
        for anaphor in doc.anaphors() {
            let Some(particle) = anaphor.mention.anaphor_particle() else {
                continue;
            };
            if !particles.contains(&particle) {
                continue;
            }
            for method in args.method.methods_for(particle) {
                let r = resolver
                    .resolve(doc, &anaphor, method)
                    .map_err(|e| CliError::Data(format!("document {}: {e}", doc.doc_id)))?;
                let correct = anaphor
                    .mention
                    .gold_ref
                    .as_deref()
                    .map(|g| r.predicted.as_deref() == Some(g));
                records.push(ResolutionRecord {
                    doc_id: &doc.doc_id,
                    anaphor_id: r.anaphor_id,
                    method,
                    predicted: r.predicted,
                    rule: r.rule,
                    correct,
                });
            }
        }
    }

    let mut out = String::new();
    match args.common.format {
        Format::Text => {
            out.push_str("doc_id\tanaphor_id\tmethod\tpredicted\trule\tcorrect\n");
            for r in &records {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\n",
                    r.doc_id,
                    r.anaphor_id,
                    r.method,
                    r.predicted.as_deref().unwrap_or("-"),
                    r.rule.map_or("-", RuleId::key),
                    r.correct.map_or("-", |c| if c { "yes" } else { "no" }),
                ));
            }
        }
        Format::Records => {
            for r in &records {
                json_line(&mut out, r);
            }
        }
    }
    emit(args.common.out.as_deref(), stdout, &out)?;
    Ok(status::OK)
}

#[derive(Serialize)]
struct TallyRecord<K> {
    #[serde(flatten)]
    key: K,
    correct: u64,
    total: u64,
}

#[derive(Serialize)]
struct LocationKey {
    location: LocationCategory,
}

#[derive(Serialize)]
struct RuleKey {
    rule: Option<RuleId>,
}

#[derive(Serialize)]
struct ReportRecord {
    method: MethodId,
    particle: AnaphorParticle,
    correct: u64,
    total: u64,
    accuracy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    by_location: Option<Vec<TallyRecord<LocationKey>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    by_rule: Option<Vec<TallyRecord<RuleKey>>>,
}

fn report_record(r: &EvalReport, by_location: bool, by_rule: bool) -> ReportRecord {
    ReportRecord {
        method: r.method,
        particle: r.particle,
        correct: r.correct(),
        total: r.total(),
        accuracy: r.accuracy(),
        by_location: by_location.then(|| {
            r.by_location
                .iter()
                .map(|(&location, t)| TallyRecord {
                    key: LocationKey { location },
                    correct: t.correct,
                    total: t.total,
                })
                .collect()
        }),
        by_rule: by_rule.then(|| {
            r.by_rule
                .iter()
                .map(|(&rule, t)| TallyRecord {
                    key: RuleKey { rule },
                    correct: t.correct,
                    total: t.total,
                })
                .collect()
        }),
    }
}

fn cmd_evaluate(args: &EvaluateArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    if let Some(floor) = args.min_accuracy {
        if !(0.0..=1.0).contains(&floor) {
            return Err(CliError::Usage(format!(
                "--min-accuracy must lie in [0, 1], got {floor}"
            )));
        }
    }
    if !args.grid {
        check_method_particle(args.method, args.common.particle)?;
    }
    let resolver = args.cascade.resolver()?;
    let corpus = read_corpus(&args.common.input)?;
    let data = |e: crate::evaluator::EvalError| CliError::Data(e.to_string());

    let mut out = String::new();
    let reports: Vec<EvalReport> = if args.grid {
        let cmp = compare_methods(&corpus, &resolver).map_err(data)?;
        if args.common.format == Format::Text {
            out.push_str(&render_grid(&cmp));
        }
        cmp.reports().into_iter().cloned().collect()
    } else {
        let mut reports = Vec::new();
        for particle in args.common.particle.particles() {
            for method in args.method.methods_for(particle) {
                reports.push(evaluate(&corpus, &resolver, method, particle).map_err(data)?);
            }
        }
        reports
    };

    match args.common.format {
        Format::Text => {
            let breakdown = args.by_location || args.by_rule;
            if !args.grid || breakdown {
                if args.grid {
                    out.push('\n');
                }
                for r in &reports {
                    out.push_str(&render_report(r, args.by_location, args.by_rule));
                }
            }
        }
        Format::Records => {
            for r in &reports {
                json_line(&mut out, &report_record(r, args.by_location, args.by_rule));
            }
        }
    }
    emit(args.common.out.as_deref(), stdout, &out)?;

    if let Some(floor) = args.min_accuracy {
        let failing: Vec<_> = reports
            .iter()
            .filter(|r| r.accuracy().is_some_and(|a| a < floor))
            .collect();
        if !failing.is_empty() {
            for r in failing {
                let _ = writeln!(
                    stderr,
                    "accuracy floor {floor} not met: {} {} {:.4}",
                    r.method,
                    r.particle,
                    r.accuracy().unwrap_or_default()
                );
            }
            return Ok(status::BELOW_FLOOR);
        }
    }
    Ok(status::OK)
}

#[derive(Serialize)]
struct ProfileSummary {
    particle: AnaphorParticle,
    total: u64,
}

fn cmd_profile(args: &Common, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let corpus = read_corpus(&args.input)?;
    let closing = ClosingSet::default();
    let data = |e: crate::profiler::ProfileError| CliError::Data(e.to_string());

    let mut out = String::new();
    for particle in args.particle.particles() {
        let p = profile(&corpus, particle, &closing).map_err(data)?;
        match args.format {
            Format::Text => {
                out.push_str(&render_profile(&p));
                out.push('\n');
            }
            Format::Records => {
                json_line(&mut out, &ProfileSummary { particle, total: p.total });
                for cell in p.cells() {
                    json_line(&mut out, &cell);
                }
            }
        }
    }
    let stat = distant_particle_stat(&corpus, &closing).map_err(data)?;
    match args.format {
        Format::Text => out.push_str(&format!(
            "referents two or more sentences back: {}, of which company name + ha: {}\n",
            stat.distant_total, stat.ha_marked
        )),
        Format::Records => json_line(&mut out, &stat),
    }
    emit(args.out.as_deref(), stdout, &out)?;
    Ok(status::OK)
}

fn cmd_generate(args: &GenerateArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let corpus = if args.golden {
        golden::golden_corpus()
    } else if args.mirrored {
        golden::mirrored_corpus()
    } else if args.kfc {
        golden::kfc_corpus()
    } else {
        let specs = match (&args.spec, args.count) {
            (Some(path), _) => {
                let text = fs::read_to_string(path).map_err(|source| CliError::Io {
                    path: display(path),
                    source,
                })?;
                parse_spec_file(&text, args.seed).map_err(|e| CliError::Data(format!("{}: {e}", display(path))))?
            }
            (None, Some(n)) => random_specs(args.seed, n),
            (None, None) => unreachable!("clap requires a source"),
        };
        generate_corpus(&specs).map_err(|e| CliError::Data(e.to_string()))?
    };
    emit(args.out.as_deref(), stdout, &corpus_to_string(&corpus))?;
    Ok(status::OK)
}
