//! Line-delimited corpus format: one JSON document record per line.
//!
//! ```text
//! {"doc_id":"kfc","paragraphs":[{"sentences":[{"text":"…","mentions":[
//!   {"mention_id":"KFCJapan","kind":"company","start":0,"end":18,"particle":"は"}, …]}]}]}
//! ```
//!
//! Loading normalizes particles to canonical keys, sorts each sentence's
//! mentions by start offset and checks every structural invariant. Blank
//! lines are ignored.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::io::{self, BufRead, Write};

use serde::Serialize;
use thiserror::Error;

use crate::model::{Corpus, Document, MentionKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("read failed: {0}")]
    Io(String),
    #[error("malformed record: {0}")]
    Malformed(String),
    #[error("duplicate document id {0:?}")]
    DuplicateDocId(String),
    #[error("document has no paragraphs")]
    NoParagraphs,
    #[error("paragraph {0} has no sentences")]
    EmptyParagraph(usize),
    #[error("mention {id:?}: empty span [{start}, {end})")]
    EmptySpan { id: String, start: usize, end: usize },
    #[error("mention {id:?}: span end {end} exceeds sentence length {len}")]
    SpanOutOfBounds { id: String, end: usize, len: usize },
    #[error("mentions {first:?} and {second:?} overlap")]
    OverlappingMentions { first: String, second: String },
    #[error("duplicate mention id {0:?}")]
    DuplicateMentionId(String),
    #[error("anaphor {id:?}: unsupported anaphor particle {particle}")]
    UnsupportedAnaphorParticle { id: String, particle: String },
    #[error("mention {0:?}: gold_ref is only allowed on anaphors")]
    GoldRefOnNonAnaphor(String),
    #[error("anaphor {id:?}: gold_ref {target:?} names no mention in the document")]
    GoldRefMissing { id: String, target: String },
    #[error("anaphor {id:?}: gold_ref {target:?} is not a company")]
    GoldRefNotCompany { id: String, target: String },
    #[error("anaphor {id:?}: gold_ref {target:?} does not strictly precede it")]
    GoldRefNotPreceding { id: String, target: String },
    #[error("mention {0:?}: context_label is only allowed on companies")]
    ContextLabelOnNonCompany(String),
}

/// A corpus error tied to its input line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct LoadError {
    pub line: usize,
    pub doc_id: Option<String>,
    pub error: CorpusError,
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.doc_id {
            Some(id) => write!(f, "line {} (doc {id}): {}", self.line, self.error),
            None => write!(f, "line {}: {}", self.line, self.error),
        }
    }
}

/// Outcome of checking a whole input stream.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    /// Records read, valid or not.
    pub documents: usize,
    pub issues: Vec<LoadError>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.issues.is_empty()
    }
}

/// One row of a rendered validation report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IssueRecord<'a> {
    pub doc_id: Option<&'a str>,
    pub line: usize,
    pub error: String,
}

impl LoadError {
    pub fn record(&self) -> IssueRecord<'_> {
        IssueRecord {
            doc_id: self.doc_id.as_deref(),
            line: self.line,
            error: self.error.to_string(),
        }
    }
}

/// Sorts mentions by start offset within every sentence.
pub fn normalize_document(doc: &mut Document) {
    for par in &mut doc.paragraphs {
        for s in &mut par.sentences {
            s.mentions.sort_by_key(|m| (m.start, m.end));
        }
    }
}

/// Checks every document-level invariant. Assumes mentions are sorted.
pub fn validate_document(doc: &Document) -> Vec<CorpusError> {
    let mut errors = Vec::new();
    if doc.paragraphs.is_empty() {
        errors.push(CorpusError::NoParagraphs);
    }
    for (i, par) in doc.paragraphs.iter().enumerate() {
        if par.sentences.is_empty() {
            errors.push(CorpusError::EmptyParagraph(i));
        }
    }

    let mut seen = HashSet::new();
    for s in doc.sentences() {
        let len = s.sentence.char_len();
        let mut prev: Option<&crate::model::Mention> = None;
        for m in &s.sentence.mentions {
            if !seen.insert(m.mention_id.as_str()) {
                errors.push(CorpusError::DuplicateMentionId(m.mention_id.clone()));
            }
            if m.start >= m.end {
                errors.push(CorpusError::EmptySpan {
                    id: m.mention_id.clone(),
                    start: m.start,
                    end: m.end,
                });
            }
            if m.end > len {
                errors.push(CorpusError::SpanOutOfBounds {
                    id: m.mention_id.clone(),
                    end: m.end,
                    len,
                });
            }
            if let Some(p) = prev {
                if m.start < p.end {
                    errors.push(CorpusError::OverlappingMentions {
                        first: p.mention_id.clone(),
                        second: m.mention_id.clone(),
                    });
                }
            }
            prev = Some(m);

            if m.kind == MentionKind::Anaphor && m.anaphor_particle().is_none() {
                errors.push(CorpusError::UnsupportedAnaphorParticle {
                    id: m.mention_id.clone(),
                    particle: m.particle.map_or_else(|| "(none)".to_owned(), |p| p.to_string()),
                });
            }
            if m.gold_ref.is_some() && m.kind != MentionKind::Anaphor {
                errors.push(CorpusError::GoldRefOnNonAnaphor(m.mention_id.clone()));
            }
            if m.context_label.is_some() && m.kind != MentionKind::Company {
                errors.push(CorpusError::ContextLabelOnNonCompany(m.mention_id.clone()));
            }
        }
    }

    let located: HashMap<&str, _> = doc.mentions().map(|m| (m.id(), m)).collect();
    for anaphor in doc.anaphors() {
        let Some(target) = anaphor.mention.gold_ref.as_deref() else {
            continue;
        };
        let id = anaphor.id().to_owned();
        match located.get(target) {
            None => errors.push(CorpusError::GoldRefMissing {
                id,
                target: target.to_owned(),
            }),
            Some(r) if !r.mention.is_company() => errors.push(CorpusError::GoldRefNotCompany {
                id,
                target: target.to_owned(),
            }),
            Some(r) if !r.precedes(&anaphor) => errors.push(CorpusError::GoldRefNotPreceding {
                id,
                target: target.to_owned(),
            }),
            Some(_) => {}
        }
    }
    errors
}

/// Reads every record, keeping the valid documents and collecting all issues.
pub fn check_corpus<R: BufRead>(source: R) -> (Corpus, ValidationReport) {
    let mut corpus = Corpus::default();
    let mut report = ValidationReport::default();
    let mut ids = HashSet::new();

    for (idx, line) in source.lines().enumerate() {
        let line_no = idx + 1;
        let line = match line {
            Ok(l) => l,
            Err(e) => {
                report.issues.push(LoadError {
                    line: line_no,
                    doc_id: None,
                    error: CorpusError::Io(e.to_string()),
                });
                break;
            }
        };
        if line.trim().is_empty() {
            continue;
        }
        report.documents += 1;

        let mut doc: Document = match serde_json::from_str(&line) {
            Ok(d) => d,
            Err(e) => {
                report.issues.push(LoadError {
                    line: line_no,
                    doc_id: None,
                    error: CorpusError::Malformed(e.to_string()),
                });
                continue;
            }
        };
        normalize_document(&mut doc);

        let mut errors = validate_document(&doc);
        if !ids.insert(doc.doc_id.clone()) {
            errors.insert(0, CorpusError::DuplicateDocId(doc.doc_id.clone()));
        }
        if errors.is_empty() {
            corpus.documents.push(doc);
        } else {
            report
                .issues
                .extend(errors.into_iter().map(|error| LoadError {
                    line: line_no,
                    doc_id: Some(doc.doc_id.clone()),
                    error,
                }));
        }
    }
    (corpus, report)
}

/// Loads and validates a corpus, failing on the first problem found.
pub fn load_corpus<R: BufRead>(source: R) -> Result<Corpus, LoadError> {
    let (corpus, report) = check_corpus(source);
    match report.issues.into_iter().next() {
        Some(first) => Err(first),
        None => Ok(corpus),
    }
}

pub fn load_corpus_str(source: &str) -> Result<Corpus, LoadError> {
    load_corpus(source.as_bytes())
}

pub fn validate_corpus<R: BufRead>(source: R) -> ValidationReport {
    check_corpus(source).1
}

pub fn document_to_line(doc: &Document) -> String {
    serde_json::to_string(doc).expect("documents always serialize")
}

pub fn write_corpus<W: Write>(corpus: &Corpus, mut out: W) -> io::Result<()> {
    for doc in &corpus.documents {
        writeln!(out, "{}", document_to_line(doc))?;
    }
    Ok(())
}

pub fn corpus_to_string(corpus: &Corpus) -> String {
    let mut buf = Vec::new();
    write_corpus(corpus, &mut buf).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}
