//! Annotated document model: corpus, document, paragraph, sentence, mention.
//!
//! Mentions are standoff spans over the sentence text, measured in Unicode
//! scalar values (code points), end-exclusive.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::particle::{AnaphorParticle, Particle};
use crate::structure::ContextCategory;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corpus {
    pub documents: Vec<Document>,
}

impl Corpus {
    pub fn new(documents: Vec<Document>) -> Self {
        Corpus { documents }
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    /// Total number of anaphors carrying `particle` across the corpus.
    pub fn anaphor_count(&self, particle: AnaphorParticle) -> usize {
        self.documents
            .iter()
            .flat_map(|d| d.anaphors())
            .filter(|a| a.mention.anaphor_particle() == Some(particle))
            .count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub doc_id: String,
    pub paragraphs: Vec<Paragraph>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Paragraph {
    pub sentences: Vec<Sentence>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sentence {
    pub text: String,
    #[serde(default)]
    pub mentions: Vec<Mention>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MentionKind {
    Company,
    Person,
    Title,
    Anaphor,
}

impl fmt::Display for MentionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MentionKind::Company => "company",
            MentionKind::Person => "person",
            MentionKind::Title => "title",
            MentionKind::Anaphor => "anaphor",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Mention {
    pub mention_id: String,
    pub kind: MentionKind,
    pub start: usize,
    pub end: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub particle: Option<Particle>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub context_label: Option<ContextCategory>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gold_ref: Option<String>,
}

impl Mention {
    pub fn new(id: impl Into<String>, kind: MentionKind, start: usize, end: usize) -> Self {
        Mention {
            mention_id: id.into(),
            kind,
            start,
            end,
            particle: None,
            context_label: None,
            gold_ref: None,
        }
    }

    pub fn with_particle(mut self, particle: Particle) -> Self {
        self.particle = Some(particle);
        self
    }

    pub fn is_company(&self) -> bool {
        self.kind == MentionKind::Company
    }

    pub fn is_anaphor(&self) -> bool {
        self.kind == MentionKind::Anaphor
    }

    /// The anaphor's particle if this is a ga- or ha-marked anaphor.
    pub fn anaphor_particle(&self) -> Option<AnaphorParticle> {
        if !self.is_anaphor() {
            return None;
        }
        self.particle.and_then(|p| AnaphorParticle::try_from(p).ok())
    }

    pub fn has_subject_marker(&self) -> bool {
        self.particle.is_some_and(Particle::is_subject_marker)
    }
}

impl Sentence {
    /// Length of the text in code points.
    pub fn char_len(&self) -> usize {
        self.text.chars().count()
    }

    /// Text covered by `mention`, or `None` if the span is out of bounds.
    pub fn span_text(&self, mention: &Mention) -> Option<String> {
        if mention.start > mention.end || mention.end > self.char_len() {
            return None;
        }
        Some(
            self.text
                .chars()
                .skip(mention.start)
                .take(mention.end - mention.start)
                .collect(),
        )
    }
}

/// Where a mention sits inside its document.
///
/// Field order makes the derived ordering follow document order: sentence
/// first, then the mention's slot within the sentence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position {
    /// Sentence index counted across the whole document.
    pub sentence: usize,
    /// Index of the mention within its sentence.
    pub slot: usize,
    pub paragraph: usize,
}

/// A mention together with its position in a document.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Located<'a> {
    pub mention: &'a Mention,
    pub pos: Position,
}

impl<'a> Located<'a> {
    pub fn id(&self) -> &'a str {
        &self.mention.mention_id
    }

    /// Strictly-before in document order: an earlier sentence, or the same
    /// sentence and ending no later than `other` starts.
    pub fn precedes(&self, other: &Located<'_>) -> bool {
        self.pos.sentence < other.pos.sentence
            || (self.pos.sentence == other.pos.sentence && self.mention.end <= other.mention.start)
    }

    pub fn same_sentence(&self, other: &Located<'_>) -> bool {
        self.pos.sentence == other.pos.sentence
    }
}

/// A sentence with its document-wide and paragraph indices.
#[derive(Debug, Clone, Copy)]
pub struct SentenceRef<'a> {
    pub index: usize,
    pub paragraph: usize,
    pub sentence: &'a Sentence,
}

impl Document {
    pub fn new(doc_id: impl Into<String>, paragraphs: Vec<Paragraph>) -> Self {
        Document {
            doc_id: doc_id.into(),
            paragraphs,
        }
    }

    /// All sentences in document order.
    pub fn sentences(&self) -> impl Iterator<Item = SentenceRef<'_>> + '_ {
        self.paragraphs
            .iter()
            .enumerate()
            .flat_map(|(p, par)| par.sentences.iter().map(move |s| (p, s)))
            .enumerate()
            .map(|(index, (paragraph, sentence))| SentenceRef {
                index,
                paragraph,
                sentence,
            })
    }

    pub fn sentence_count(&self) -> usize {
        self.paragraphs.iter().map(|p| p.sentences.len()).sum()
    }

    /// Sentence by document-wide index.
    pub fn sentence(&self, index: usize) -> Option<&Sentence> {
        self.sentences().nth(index).map(|s| s.sentence)
    }

    /// All mentions in document order.
    pub fn mentions(&self) -> impl Iterator<Item = Located<'_>> + '_ {
        self.sentences().flat_map(|s| {
            s.sentence
                .mentions
                .iter()
                .enumerate()
                .map(move |(slot, mention)| Located {
                    mention,
                    pos: Position {
                        sentence: s.index,
                        slot,
                        paragraph: s.paragraph,
                    },
                })
        })
    }

    pub fn find(&self, mention_id: &str) -> Option<Located<'_>> {
        self.mentions().find(|m| m.mention.mention_id == mention_id)
    }

    pub fn anaphors(&self) -> impl Iterator<Item = Located<'_>> + '_ {
        self.mentions().filter(|m| m.mention.is_anaphor())
    }

    pub fn companies(&self) -> impl Iterator<Item = Located<'_>> + '_ {
        self.mentions().filter(|m| m.mention.is_company())
    }
}
