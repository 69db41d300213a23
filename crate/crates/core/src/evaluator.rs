//! Accuracy of resolution methods against gold links.
//!
//! A prediction is correct iff it names the gold referent. An anaphor with no
//! prediction counts as incorrect, so the denominator always equals the
//! number of gold-linked anaphors.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::model::Corpus;
use crate::particle::AnaphorParticle;
use crate::profiler::ProfileError;
use crate::resolver::{MethodId, ResolveError, Resolver, RuleId};
use crate::structure::{classify_location, LocationCategory};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("method {method} cannot be evaluated on {particle}-marked anaphors")]
    IllegalPairing {
        method: MethodId,
        particle: AnaphorParticle,
    },
    #[error(transparent)]
    Gold(#[from] ProfileError),
    #[error("document {doc_id}: {source}")]
    Resolve {
        doc_id: String,
        #[source]
        source: ResolveError,
    },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub correct: u64,
    pub total: u64,
}

impl Tally {
    pub fn record(&mut self, correct: bool) {
        self.total += 1;
        if correct {
            self.correct += 1;
        }
    }

    pub fn merge(&mut self, other: Tally) {
        self.correct += other.correct;
        self.total += other.total;
    }

    /// `None` when there were no cases.
    pub fn accuracy(&self) -> Option<f64> {
        (self.total > 0).then(|| self.correct as f64 / self.total as f64)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub method: MethodId,
    pub particle: AnaphorParticle,
    pub overall: Tally,
    /// Keyed by the gold referent's location.
    pub by_location: BTreeMap<LocationCategory, Tally>,
    /// Keyed by the rule that fired; `None` collects anaphors left unresolved.
    pub by_rule: BTreeMap<Option<RuleId>, Tally>,
}

impl EvalReport {
    pub fn new(method: MethodId, particle: AnaphorParticle) -> Self {
        EvalReport {
            method,
            particle,
            overall: Tally::default(),
            by_location: BTreeMap::new(),
            by_rule: BTreeMap::new(),
        }
    }

    pub fn correct(&self) -> u64 {
        self.overall.correct
    }

    pub fn total(&self) -> u64 {
        self.overall.total
    }

    pub fn accuracy(&self) -> Option<f64> {
        self.overall.accuracy()
    }

    pub fn merge(&mut self, other: &EvalReport) {
        self.overall.merge(other.overall);
        for (k, v) in &other.by_location {
            self.by_location.entry(*k).or_default().merge(*v);
        }
        for (k, v) in &other.by_rule {
            self.by_rule.entry(*k).or_default().merge(*v);
        }
    }
}

pub fn evaluate(
    corpus: &Corpus,
    resolver: &Resolver,
    method: MethodId,
    particle: AnaphorParticle,
) -> Result<EvalReport, EvalError> {
    if !method.accepts(particle) {
        return Err(EvalError::IllegalPairing { method, particle });
    }
    let mut report = EvalReport::new(method, particle);
    for doc in &corpus.documents {
        for anaphor in doc.anaphors() {
            if anaphor.mention.anaphor_particle() != Some(particle) {
                continue;
            }
            let gold = anaphor.mention.gold_ref.as_deref().ok_or_else(|| {
                ProfileError::MissingGold {
                    doc_id: doc.doc_id.clone(),
                    anaphor_id: anaphor.id().to_owned(),
                }
            })?;
            let referent = doc.find(gold).ok_or_else(|| ProfileError::DanglingGold {
                doc_id: doc.doc_id.clone(),
                anaphor_id: anaphor.id().to_owned(),
                target: gold.to_owned(),
            })?;
            let location = classify_location(&anaphor, &referent).map_err(|source| {
                ProfileError::Structure {
                    doc_id: doc.doc_id.clone(),
                    source,
                }
            })?;
            let resolution =
                resolver
                    .resolve(doc, &anaphor, method)
                    .map_err(|source| EvalError::Resolve {
                        doc_id: doc.doc_id.clone(),
                        source,
                    })?;
            let correct = resolution.predicted.as_deref() == Some(gold);
            report.overall.record(correct);
            report.by_location.entry(location).or_default().record(correct);
            report.by_rule.entry(resolution.rule).or_default().record(correct);
        }
    }
    Ok(report)
}

/// Baseline against the particle-specific cascade for both particles.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodComparison {
    pub ga_scm: EvalReport,
    pub ga_cascade: EvalReport,
    pub ha_scm: EvalReport,
    pub ha_cascade: EvalReport,
}

impl MethodComparison {
    pub fn reports(&self) -> [&EvalReport; 4] {
        [&self.ga_scm, &self.ga_cascade, &self.ha_scm, &self.ha_cascade]
    }
}

pub fn compare_methods(corpus: &Corpus, resolver: &Resolver) -> Result<MethodComparison, EvalError> {
    use AnaphorParticle::{Ga, Ha};
    Ok(MethodComparison {
        ga_scm: evaluate(corpus, resolver, MethodId::Scm, Ga)?,
        ga_cascade: evaluate(corpus, resolver, MethodId::Method2Ga, Ga)?,
        ha_scm: evaluate(corpus, resolver, MethodId::Scm, Ha)?,
        ha_cascade: evaluate(corpus, resolver, MethodId::Method3Ha, Ha)?,
    })
}

pub fn format_accuracy(t: Tally) -> String {
    match t.accuracy() {
        Some(a) => format!("{:.1}% ({}/{})", a * 100.0, t.correct, t.total),
        None => format!("n/a ({}/{})", t.correct, t.total),
    }
}

/// Two-by-two grid: baseline and cascade, for each particle.
pub fn render_grid(cmp: &MethodComparison) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<14}accuracy", "");
    for (particle, scm, cascade) in [
        ("ga", &cmp.ga_scm, &cmp.ga_cascade),
        ("ha", &cmp.ha_scm, &cmp.ha_cascade),
    ] {
        let _ = writeln!(out, "dousha with {particle}");
        for r in [scm, cascade] {
            let _ = writeln!(out, "{:<14}{}", r.method.label(), format_accuracy(r.overall));
        }
    }
    out
}

/// One summary line per report, optionally followed by breakdowns.
pub fn render_report(report: &EvalReport, by_location: bool, by_rule: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<4}{:<4}{}",
        report.method.key(),
        report.particle.key(),
        format_accuracy(report.overall)
    );
    if by_location {
        for (loc, t) in &report.by_location {
            let _ = writeln!(out, "    location {:<24}{}", loc.key(), format_accuracy(*t));
        }
    }
    if by_rule {
        for (rule, t) in &report.by_rule {
            let key = rule.map_or("none", RuleId::key);
            let _ = writeln!(out, "    rule     {:<28}{}", key, format_accuracy(*t));
        }
    }
    out
}
