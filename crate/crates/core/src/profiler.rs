//! Location × context profiles of gold referents.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::model::{Corpus, Document};
use crate::particle::AnaphorParticle;
use crate::structure::{
    classify_context, classify_location, ClosingSet, ContextCategory, LocationCategory,
    StructureError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("document {doc_id}: anaphor {anaphor_id} has no gold_ref")]
    MissingGold { doc_id: String, anaphor_id: String },
    #[error("document {doc_id}: anaphor {anaphor_id}: gold_ref {target} not found")]
    DanglingGold {
        doc_id: String,
        anaphor_id: String,
        target: String,
    },
    #[error("document {doc_id}: {source}")]
    Structure {
        doc_id: String,
        #[source]
        source: StructureError,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocationContextProfile {
    pub particle: AnaphorParticle,
    pub counts: BTreeMap<(LocationCategory, ContextCategory), u64>,
    pub total: u64,
}

/// Exported form of one profile cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProfileCell {
    pub particle: AnaphorParticle,
    pub location: LocationCategory,
    pub context: ContextCategory,
    pub count: u64,
}

impl LocationContextProfile {
    pub fn empty(particle: AnaphorParticle) -> Self {
        LocationContextProfile {
            particle,
            counts: BTreeMap::new(),
            total: 0,
        }
    }

    pub fn add(&mut self, location: LocationCategory, context: ContextCategory) {
        *self.counts.entry((location, context)).or_default() += 1;
        self.total += 1;
    }

    /// Cell-wise sum; both sides must describe the same particle.
    pub fn merge(&mut self, other: &LocationContextProfile) {
        debug_assert_eq!(self.particle, other.particle);
        for (&cell, &n) in &other.counts {
            *self.counts.entry(cell).or_default() += n;
        }
        self.total += other.total;
    }

    pub fn get(&self, location: LocationCategory, context: ContextCategory) -> u64 {
        self.counts.get(&(location, context)).copied().unwrap_or(0)
    }

    pub fn cells(&self) -> impl Iterator<Item = ProfileCell> + '_ {
        self.counts
            .iter()
            .filter(|(_, &n)| n > 0)
            .map(|(&(location, context), &count)| ProfileCell {
                particle: self.particle,
                location,
                context,
                count,
            })
    }

    pub fn location_subtotals(&self) -> BTreeMap<LocationCategory, u64> {
        let mut out = BTreeMap::new();
        for (&(loc, _), &n) in &self.counts {
            *out.entry(loc).or_default() += n;
        }
        out
    }
}

/// Counts of gold referents two or more sentences back, and how many of
/// those carry ha.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct DistantReferentStat {
    pub distant_total: u64,
    pub ha_marked: u64,
}

/// Every (anaphor, gold referent) pair in `doc` for `particle`, classified.
pub(crate) fn gold_pairs(
    doc: &Document,
    particle: AnaphorParticle,
    closing: &ClosingSet,
) -> Result<Vec<(String, LocationCategory, ContextCategory)>, ProfileError> {
    let mut out = Vec::new();
    for anaphor in doc.anaphors() {
        if anaphor.mention.anaphor_particle() != Some(particle) {
            continue;
        }
        let target = anaphor
            .mention
            .gold_ref
            .as_deref()
            .ok_or_else(|| ProfileError::MissingGold {
                doc_id: doc.doc_id.clone(),
                anaphor_id: anaphor.id().to_owned(),
            })?;
        let referent = doc.find(target).ok_or_else(|| ProfileError::DanglingGold {
            doc_id: doc.doc_id.clone(),
            anaphor_id: anaphor.id().to_owned(),
            target: target.to_owned(),
        })?;
        let wrap = |source| ProfileError::Structure {
            doc_id: doc.doc_id.clone(),
            source,
        };
        let location = classify_location(&anaphor, &referent).map_err(wrap)?;
        let context = classify_context(doc, &referent, closing).map_err(wrap)?;
        out.push((anaphor.id().to_owned(), location, context));
    }
    Ok(out)
}

pub fn profile_document(
    doc: &Document,
    particle: AnaphorParticle,
    closing: &ClosingSet,
) -> Result<LocationContextProfile, ProfileError> {
    let mut p = LocationContextProfile::empty(particle);
    for (_, loc, ctx) in gold_pairs(doc, particle, closing)? {
        p.add(loc, ctx);
    }
    Ok(p)
}

/// Profiles all gold links for `particle`. Fails on the first anaphor
/// without a gold link rather than skipping it.
pub fn profile(
    corpus: &Corpus,
    particle: AnaphorParticle,
    closing: &ClosingSet,
) -> Result<LocationContextProfile, ProfileError> {
    let mut total = LocationContextProfile::empty(particle);
    for doc in &corpus.documents {
        total.merge(&profile_document(doc, particle, closing)?);
    }
    Ok(total)
}

/// Pools both particles.
pub fn distant_particle_stat(
    corpus: &Corpus,
    closing: &ClosingSet,
) -> Result<DistantReferentStat, ProfileError> {
    let mut stat = DistantReferentStat::default();
    for particle in AnaphorParticle::ALL {
        let p = profile(corpus, particle, closing)?;
        for cell in p.cells().filter(|c| c.location.is_distant()) {
            stat.distant_total += cell.count;
            if cell.context == ContextCategory::CompanyHa {
                stat.ha_marked += cell.count;
            }
        }
    }
    Ok(stat)
}

const ROLE_WIDTH: usize = 26;
const CONTEXT_WIDTH: usize = 28;

fn role_for(location: LocationCategory, context: ContextCategory) -> &'static str {
    if location.is_cross_paragraph() {
        ContextCategory::TopicOfParagraph.role()
    } else {
        context.role()
    }
}

/// Plain-text table grouped by location with per-location subtotals.
/// Zero cells are omitted; an empty profile renders as its header only.
pub fn render_profile(profile: &LocationContextProfile) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "dousha with {}: {} cases",
        profile.particle, profile.total
    );
    let _ = writeln!(
        out,
        "{:<role$}{:<ctx$}{:>6}",
        "location",
        "context",
        "cases",
        role = ROLE_WIDTH,
        ctx = CONTEXT_WIDTH
    );
    let subtotals = profile.location_subtotals();
    for loc in LocationCategory::ALL {
        let Some(&subtotal) = subtotals.get(&loc).filter(|&&n| n > 0) else {
            continue;
        };
        let _ = writeln!(
            out,
            "{:<width$}{:>6}",
            loc.label(),
            subtotal,
            width = ROLE_WIDTH + CONTEXT_WIDTH
        );
        let mut last_role = "";
        for cell in profile.cells().filter(|c| c.location == loc) {
            let role = role_for(loc, cell.context);
            let shown = if role == last_role { "" } else { role };
            last_role = role;
            let _ = writeln!(
                out,
                "  {:<role$}{:<ctx$}{:>6}",
                shown,
                cell.context.label(),
                cell.count,
                role = ROLE_WIDTH - 2,
                ctx = CONTEXT_WIDTH
            );
        }
    }
    out
}
