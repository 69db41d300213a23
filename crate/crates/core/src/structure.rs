//! Structural distance between mentions and the location/context taxonomy
//! used to profile where referents sit relative to their anaphors.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Document, Located, Mention, Sentence};
use crate::particle::Particle;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("mention {candidate} does not precede {anaphor}")]
    NotPreceding { anaphor: String, candidate: String },
    #[error("mention {0} is not a company")]
    NotCompany(String),
    #[error("sentence {0} is out of range")]
    MissingSentence(usize),
}

/// Bucketed distance from an anaphor back to its referent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocationCategory {
    WithinSameSentence,
    PreviousSentence,
    TwoSentencesBefore,
    ThreeSentencesBefore,
    PreviousParagraph,
    TwoParagraphsBefore,
    ThreeParagraphsBefore,
    FurtherBack,
}

impl LocationCategory {
    pub const ALL: [LocationCategory; 8] = [
        LocationCategory::WithinSameSentence,
        LocationCategory::PreviousSentence,
        LocationCategory::TwoSentencesBefore,
        LocationCategory::ThreeSentencesBefore,
        LocationCategory::PreviousParagraph,
        LocationCategory::TwoParagraphsBefore,
        LocationCategory::ThreeParagraphsBefore,
        LocationCategory::FurtherBack,
    ];

    pub fn key(self) -> &'static str {
        match self {
            LocationCategory::WithinSameSentence => "within_same_sentence",
            LocationCategory::PreviousSentence => "previous_sentence",
            LocationCategory::TwoSentencesBefore => "two_sentences_before",
            LocationCategory::ThreeSentencesBefore => "three_sentences_before",
            LocationCategory::PreviousParagraph => "previous_paragraph",
            LocationCategory::TwoParagraphsBefore => "two_paragraphs_before",
            LocationCategory::ThreeParagraphsBefore => "three_paragraphs_before",
            LocationCategory::FurtherBack => "further_back",
        }
    }

    /// Row heading used in rendered profiles.
    pub fn label(self) -> &'static str {
        match self {
            LocationCategory::WithinSameSentence => "Within the same sentence",
            LocationCategory::PreviousSentence => "In the previous sentence",
            LocationCategory::TwoSentencesBefore => "In two sentences before",
            LocationCategory::ThreeSentencesBefore => {
                "In three sentences before (in the same paragraph)"
            }
            LocationCategory::PreviousParagraph => "In previous paragraph",
            LocationCategory::TwoParagraphsBefore => "In two paragraphs before",
            LocationCategory::ThreeParagraphsBefore => "In three paragraphs before",
            LocationCategory::FurtherBack => "Further back",
        }
    }

    pub fn is_cross_paragraph(self) -> bool {
        matches!(
            self,
            LocationCategory::PreviousParagraph
                | LocationCategory::TwoParagraphsBefore
                | LocationCategory::ThreeParagraphsBefore
        )
    }

    /// Two or more sentences back, counting every cross-paragraph bucket.
    pub fn is_distant(self) -> bool {
        !matches!(
            self,
            LocationCategory::WithinSameSentence | LocationCategory::PreviousSentence
        )
    }
}

impl fmt::Display for LocationCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for LocationCategory {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|c| c.key() == s)
            .ok_or_else(|| format!("unknown location category {s:?}"))
    }
}

/// Syntactic environment of a referent company.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContextCategory {
    CompanyHa,
    CompanyGa,
    CompanyDeha,
    CompanyNiyoruto,
    CompanyTo,
    EmphasisStructure,
    PartOfSubject,
    TopicOfParagraph,
    OtherParticle,
}

impl ContextCategory {
    pub const ALL: [ContextCategory; 9] = [
        ContextCategory::CompanyHa,
        ContextCategory::CompanyGa,
        ContextCategory::CompanyDeha,
        ContextCategory::CompanyNiyoruto,
        ContextCategory::CompanyTo,
        ContextCategory::EmphasisStructure,
        ContextCategory::PartOfSubject,
        ContextCategory::TopicOfParagraph,
        ContextCategory::OtherParticle,
    ];

    pub fn key(self) -> &'static str {
        match self {
            ContextCategory::CompanyHa => "company_ha",
            ContextCategory::CompanyGa => "company_ga",
            ContextCategory::CompanyDeha => "company_deha",
            ContextCategory::CompanyNiyoruto => "company_niyoruto",
            ContextCategory::CompanyTo => "company_to",
            ContextCategory::EmphasisStructure => "emphasis_structure",
            ContextCategory::PartOfSubject => "part_of_subject",
            ContextCategory::TopicOfParagraph => "topic_of_paragraph",
            ContextCategory::OtherParticle => "other_particle",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ContextCategory::CompanyHa => "company name + ha",
            ContextCategory::CompanyGa => "company name + ga",
            ContextCategory::CompanyDeha => "company name + deha",
            ContextCategory::CompanyNiyoruto => "company name + niyoruto",
            ContextCategory::CompanyTo => "company name + to",
            ContextCategory::EmphasisStructure => "emphasis structure",
            ContextCategory::PartOfSubject => "part of the subject",
            ContextCategory::TopicOfParagraph => "topic of the paragraph",
            ContextCategory::OtherParticle => "others",
        }
    }

    /// Grammatical role column shown next to the context in rendered tables.
    pub fn role(self) -> &'static str {
        match self {
            ContextCategory::CompanyHa
            | ContextCategory::CompanyGa
            | ContextCategory::CompanyDeha
            | ContextCategory::EmphasisStructure
            | ContextCategory::PartOfSubject => "Subject",
            ContextCategory::CompanyNiyoruto
            | ContextCategory::CompanyTo
            | ContextCategory::OtherParticle => "Non-subject",
            ContextCategory::TopicOfParagraph => "Topic of the paragraph",
        }
    }
}

impl fmt::Display for ContextCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for ContextCategory {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|c| c.key() == s)
            .ok_or_else(|| format!("unknown context category {s:?}"))
    }
}

/// Characters that may trail a mention without stopping it from being
/// sentence-final.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosingSet {
    chars: BTreeSet<char>,
    whitespace: bool,
}

impl ClosingSet {
    pub fn new(chars: impl IntoIterator<Item = char>, whitespace: bool) -> Self {
        ClosingSet {
            chars: chars.into_iter().collect(),
            whitespace,
        }
    }

    pub fn contains(&self, c: char) -> bool {
        self.chars.contains(&c) || (self.whitespace && c.is_whitespace())
    }
}

impl Default for ClosingSet {
    fn default() -> Self {
        ClosingSet::new(['。', '、', '」', '』', '）', '.', ')'], true)
    }
}

/// True iff nothing but closing punctuation follows `mention` in `sentence`.
pub fn is_sentence_final(mention: &Mention, sentence: &Sentence, closing: &ClosingSet) -> bool {
    sentence.text.chars().skip(mention.end).all(|c| closing.contains(c))
}

/// Sentence boundaries crossed going back from `anaphor` to `candidate`,
/// paragraph breaks included. Zero means the same sentence.
pub fn sentence_distance(
    anaphor: &Located<'_>,
    candidate: &Located<'_>,
) -> Result<usize, StructureError> {
    if !candidate.precedes(anaphor) {
        return Err(StructureError::NotPreceding {
            anaphor: anaphor.id().to_owned(),
            candidate: candidate.id().to_owned(),
        });
    }
    Ok(anaphor.pos.sentence - candidate.pos.sentence)
}

/// Buckets a (anaphor, referent) pair. Crossing a paragraph boundary always
/// yields a paragraph category, however few sentences separate the two.
pub fn classify_location(
    anaphor: &Located<'_>,
    referent: &Located<'_>,
) -> Result<LocationCategory, StructureError> {
    let sentences = sentence_distance(anaphor, referent)?;
    let paragraphs = anaphor.pos.paragraph - referent.pos.paragraph;
    Ok(match (paragraphs, sentences) {
        (0, 0) => LocationCategory::WithinSameSentence,
        (0, 1) => LocationCategory::PreviousSentence,
        (0, 2) => LocationCategory::TwoSentencesBefore,
        (0, 3) => LocationCategory::ThreeSentencesBefore,
        (0, _) => LocationCategory::FurtherBack,
        (1, _) => LocationCategory::PreviousParagraph,
        (2, _) => LocationCategory::TwoParagraphsBefore,
        (3, _) => LocationCategory::ThreeParagraphsBefore,
        _ => LocationCategory::FurtherBack,
    })
}

/// Context of a referent company. A gold `context_label` always wins;
/// otherwise sentence-final position, then the particle, decide.
pub fn classify_context(
    doc: &Document,
    referent: &Located<'_>,
    closing: &ClosingSet,
) -> Result<ContextCategory, StructureError> {
    let mention = referent.mention;
    if !mention.is_company() {
        return Err(StructureError::NotCompany(mention.mention_id.clone()));
    }
    if let Some(label) = mention.context_label {
        return Ok(label);
    }
    let sentence = doc
        .sentence(referent.pos.sentence)
        .ok_or(StructureError::MissingSentence(referent.pos.sentence))?;
    if is_sentence_final(mention, sentence, closing) {
        return Ok(ContextCategory::EmphasisStructure);
    }
    Ok(match mention.particle {
        Some(Particle::Ha) => ContextCategory::CompanyHa,
        Some(Particle::Ga) => ContextCategory::CompanyGa,
        Some(Particle::Deha) => ContextCategory::CompanyDeha,
        Some(Particle::Niyoruto) => ContextCategory::CompanyNiyoruto,
        Some(Particle::To) => ContextCategory::CompanyTo,
        _ => ContextCategory::OtherParticle,
    })
}
