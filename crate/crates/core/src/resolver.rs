//! Antecedent search for *dousha* ("the same company").
//!
//! Three methods are provided:
//!
//! * [`MethodId::Scm`] takes the nearest preceding company.
//! * [`MethodId::Method2Ga`] is for ga-marked anaphors. It runs the full
//!   cascade: same-sentence company, then the nearest subject-marked company,
//!   then an emphasised company ending the previous sentence, then a
//!   `company no person title` pattern in the previous sentence, then the
//!   nearest company.
//! * [`MethodId::Method3Ha`] is for ha-marked anaphors. It runs the same
//!   cascade without the same-sentence rule.
//!
//! The first rule that yields a company wins. Each [`Resolution`] records
//! which rule fired.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Document, Located, MentionKind};
use crate::particle::{AnaphorParticle, Particle};
use crate::structure::{is_sentence_final, sentence_distance, ClosingSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleId {
    SameSentenceClosest,
    SubjectParticleClosest,
    EmphasisPrevSentence,
    TitlePatternPrevSentence,
    ClosestFallback,
}

impl RuleId {
    pub const ALL: [RuleId; 5] = [
        RuleId::SameSentenceClosest,
        RuleId::SubjectParticleClosest,
        RuleId::EmphasisPrevSentence,
        RuleId::TitlePatternPrevSentence,
        RuleId::ClosestFallback,
    ];

    pub fn key(self) -> &'static str {
        match self {
            RuleId::SameSentenceClosest => "same_sentence_closest",
            RuleId::SubjectParticleClosest => "subject_particle_closest",
            RuleId::EmphasisPrevSentence => "emphasis_prev_sentence",
            RuleId::TitlePatternPrevSentence => "title_pattern_prev_sentence",
            RuleId::ClosestFallback => "closest_fallback",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for RuleId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|r| r.key() == s)
            .ok_or_else(|| format!("unknown rule {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum MethodId {
    #[serde(rename = "scm")]
    Scm,
    #[serde(rename = "m2")]
    Method2Ga,
    #[serde(rename = "m3")]
    Method3Ha,
}

impl MethodId {
    pub const ALL: [MethodId; 3] = [MethodId::Scm, MethodId::Method2Ga, MethodId::Method3Ha];

    pub fn key(self) -> &'static str {
        match self {
            MethodId::Scm => "scm",
            MethodId::Method2Ga => "m2",
            MethodId::Method3Ha => "m3",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            MethodId::Scm => "SCM",
            MethodId::Method2Ga => "2nd method",
            MethodId::Method3Ha => "3rd method",
        }
    }

    /// The heuristic cascade designed for anaphors with `particle`.
    pub fn cascade_for(particle: AnaphorParticle) -> MethodId {
        match particle {
            AnaphorParticle::Ga => MethodId::Method2Ga,
            AnaphorParticle::Ha => MethodId::Method3Ha,
        }
    }

    pub fn accepts(self, particle: AnaphorParticle) -> bool {
        match self {
            MethodId::Scm => true,
            MethodId::Method2Ga => particle == AnaphorParticle::Ga,
            MethodId::Method3Ha => particle == AnaphorParticle::Ha,
        }
    }
}

impl fmt::Display for MethodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for MethodId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|m| m.key() == s)
            .ok_or_else(|| format!("unknown method {s:?} (expected scm, m2 or m3)"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Resolution {
    pub anaphor_id: String,
    pub predicted: Option<String>,
    pub rule: Option<RuleId>,
    pub candidates_considered: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolveError {
    #[error("mention {0:?} is not an anaphor")]
    NotAnAnaphor(String),
    #[error("anaphor {0:?} carries no ga/ha particle")]
    UnsupportedParticle(String),
    #[error("method {method} cannot resolve {particle}-marked anaphor {anaphor:?}")]
    ParticleMismatch {
        method: MethodId,
        particle: AnaphorParticle,
        anaphor: String,
    },
    #[error("invalid rule order: {0}")]
    InvalidRuleOrder(String),
}

/// Cascade order, checked for duplicates on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleOrder(Vec<RuleId>);

impl RuleOrder {
    pub fn new(rules: Vec<RuleId>) -> Result<Self, ResolveError> {
        if rules.is_empty() {
            return Err(ResolveError::InvalidRuleOrder("no rules given".into()));
        }
        for (i, r) in rules.iter().enumerate() {
            if rules[..i].contains(r) {
                return Err(ResolveError::InvalidRuleOrder(format!("{r} listed twice")));
            }
        }
        Ok(RuleOrder(rules))
    }

    pub fn rules(&self) -> &[RuleId] {
        &self.0
    }

    /// The order without the same-sentence rule, as used for ha-anaphors.
    pub fn without_same_sentence(&self) -> Vec<RuleId> {
        self.0
            .iter()
            .copied()
            .filter(|r| *r != RuleId::SameSentenceClosest)
            .collect()
    }
}

impl Default for RuleOrder {
    fn default() -> Self {
        RuleOrder(RuleId::ALL.to_vec())
    }
}

impl FromStr for RuleOrder {
    type Err = ResolveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let rules = s
            .split(',')
            .map(|r| r.trim().parse::<RuleId>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(ResolveError::InvalidRuleOrder)?;
        RuleOrder::new(rules)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ResolverConfig {
    pub rule_order: RuleOrder,
    /// Limits the subject-particle rule to candidates at most this many
    /// sentences back. `None` searches the whole preceding document.
    pub subject_window: Option<usize>,
    pub closing: ClosingSet,
}

#[derive(Debug, Clone, Default)]
pub struct Resolver {
    config: ResolverConfig,
}

/// Company mentions strictly before `anaphor`, nearest first.
pub fn candidates_before<'d>(doc: &'d Document, anaphor: &Located<'_>) -> Vec<Located<'d>> {
    let mut found: Vec<_> = doc
        .companies()
        .filter(|c| c.precedes(anaphor))
        .collect();
    found.reverse();
    found
}

impl Resolver {
    pub fn new(config: ResolverConfig) -> Self {
        Resolver { config }
    }

    pub fn config(&self) -> &ResolverConfig {
        &self.config
    }

    pub fn resolve_scm(&self, doc: &Document, anaphor: &Located<'_>) -> Result<Resolution, ResolveError> {
        check_anaphor(anaphor)?;
        Ok(self.cascade(doc, anaphor, &[RuleId::ClosestFallback]))
    }

    pub fn resolve_method2(&self, doc: &Document, anaphor: &Located<'_>) -> Result<Resolution, ResolveError> {
        self.resolve(doc, anaphor, MethodId::Method2Ga)
    }

    pub fn resolve_method3(&self, doc: &Document, anaphor: &Located<'_>) -> Result<Resolution, ResolveError> {
        self.resolve(doc, anaphor, MethodId::Method3Ha)
    }

    pub fn resolve(
        &self,
        doc: &Document,
        anaphor: &Located<'_>,
        method: MethodId,
    ) -> Result<Resolution, ResolveError> {
        let particle = check_anaphor(anaphor)?;
        if !method.accepts(particle) {
            return Err(ResolveError::ParticleMismatch {
                method,
                particle,
                anaphor: anaphor.id().to_owned(),
            });
        }
        Ok(match method {
            MethodId::Scm => self.cascade(doc, anaphor, &[RuleId::ClosestFallback]),
            MethodId::Method2Ga => self.cascade(doc, anaphor, self.config.rule_order.rules()),
            MethodId::Method3Ha => {
                self.cascade(doc, anaphor, &self.config.rule_order.without_same_sentence())
            }
        })
    }

    /// Runs `rules` in order on any anaphor, without the particle check
    /// that [`Resolver::resolve`] applies.
    pub fn cascade(&self, doc: &Document, anaphor: &Located<'_>, rules: &[RuleId]) -> Resolution {
        let candidates = candidates_before(doc, anaphor);
        let hit = rules
            .iter()
            .find_map(|&rule| self.apply(rule, doc, anaphor, &candidates).map(|m| (rule, m)));
        Resolution {
            anaphor_id: anaphor.id().to_owned(),
            predicted: hit.map(|(_, m)| m.id().to_owned()),
            rule: hit.map(|(r, _)| r),
            candidates_considered: candidates.len(),
        }
    }

    fn apply<'d>(
        &self,
        rule: RuleId,
        doc: &'d Document,
        anaphor: &Located<'_>,
        candidates: &[Located<'d>],
    ) -> Option<Located<'d>> {
        match rule {
            RuleId::SameSentenceClosest => {
                candidates.iter().find(|c| c.same_sentence(anaphor)).copied()
            }
            RuleId::SubjectParticleClosest => candidates
                .iter()
                .filter(|c| match self.config.subject_window {
                    Some(w) => sentence_distance(anaphor, c).is_ok_and(|d| d <= w),
                    None => true,
                })
                .find(|c| c.mention.has_subject_marker())
                .copied(),
            RuleId::EmphasisPrevSentence => previous_sentence(doc, anaphor)?
                .filter(|c| c.mention.is_company())
                .filter(|c| {
                    doc.sentence(c.pos.sentence)
                        .is_some_and(|s| is_sentence_final(c.mention, s, &self.config.closing))
                })
                .last(),
            RuleId::TitlePatternPrevSentence => {
                let mentions: Vec<_> = previous_sentence(doc, anaphor)?.collect();
                // Nearest match wins when the pattern occurs more than once.
                mentions
                    .windows(3)
                    .rev()
                    .find(|w| {
                        w[0].mention.is_company()
                            && w[0].mention.particle == Some(Particle::No)
                            && w[1].mention.kind == MentionKind::Person
                            && w[2].mention.kind == MentionKind::Title
                    })
                    .map(|w| w[0])
            }
            RuleId::ClosestFallback => candidates.first().copied(),
        }
    }
}

/// Mentions of the sentence immediately before the anaphor's, crossing a
/// paragraph boundary if needed.
fn previous_sentence<'d>(
    doc: &'d Document,
    anaphor: &Located<'_>,
) -> Option<impl Iterator<Item = Located<'d>> + 'd> {
    let prev = anaphor.pos.sentence.checked_sub(1)?;
    Some(doc.mentions().filter(move |m| m.pos.sentence == prev))
}

fn check_anaphor(anaphor: &Located<'_>) -> Result<AnaphorParticle, ResolveError> {
    if !anaphor.mention.is_anaphor() {
        return Err(ResolveError::NotAnAnaphor(anaphor.id().to_owned()));
    }
    anaphor
        .mention
        .anaphor_particle()
        .ok_or_else(|| ResolveError::UnsupportedParticle(anaphor.id().to_owned()))
}
