//! Builders that assemble annotated sentences and documents, computing
//! code-point offsets as text is appended.
//!
//! A mention's particle is rendered in script directly after the span but is
//! not part of it.

use crate::model::{Document, Mention, MentionKind, Paragraph, Sentence};
use crate::particle::{AnaphorParticle, Particle};
use crate::structure::ContextCategory;

/// Surface form of the anaphor.
pub const DOUSHA: &str = "同社";

#[derive(Debug, Clone, Default)]
pub struct SentenceBuilder {
    text: String,
    len: usize,
    mentions: Vec<Mention>,
}

impl SentenceBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn text(mut self, s: &str) -> Self {
        self.text.push_str(s);
        self.len += s.chars().count();
        self
    }

    /// Appends `surface` as a mention, followed by its particle if any.
    pub fn mention(mut self, mut mention: Mention, surface: &str) -> Self {
        mention.start = self.len;
        self = self.text(surface);
        mention.end = self.len;
        let particle = mention.particle;
        self.mentions.push(mention);
        match particle {
            Some(p) => self.text(p.surface()),
            None => self,
        }
    }

    pub fn company(self, id: &str, name: &str, particle: Option<Particle>) -> Self {
        let mut m = Mention::new(id, MentionKind::Company, 0, 0);
        m.particle = particle;
        self.mention(m, name)
    }

    pub fn company_labeled(
        self,
        id: &str,
        name: &str,
        particle: Option<Particle>,
        label: ContextCategory,
    ) -> Self {
        let mut m = Mention::new(id, MentionKind::Company, 0, 0);
        m.particle = particle;
        m.context_label = Some(label);
        self.mention(m, name)
    }

    pub fn person(self, id: &str, name: &str) -> Self {
        self.mention(Mention::new(id, MentionKind::Person, 0, 0), name)
    }

    pub fn title(self, id: &str, name: &str, particle: Option<Particle>) -> Self {
        let mut m = Mention::new(id, MentionKind::Title, 0, 0);
        m.particle = particle;
        self.mention(m, name)
    }

    pub fn anaphor(self, id: &str, particle: AnaphorParticle, gold: Option<&str>) -> Self {
        let mut m = Mention::new(id, MentionKind::Anaphor, 0, 0).with_particle(particle.into());
        m.gold_ref = gold.map(str::to_owned);
        self.mention(m, DOUSHA)
    }

    pub fn build(self) -> Sentence {
        Sentence {
            text: self.text,
            mentions: self.mentions,
        }
    }
}

#[derive(Debug, Clone)]
pub struct DocBuilder {
    doc_id: String,
    paragraphs: Vec<Paragraph>,
}

impl DocBuilder {
    /// Starts a document with one open, empty paragraph.
    pub fn new(doc_id: &str) -> Self {
        DocBuilder {
            doc_id: doc_id.to_owned(),
            paragraphs: vec![Paragraph { sentences: vec![] }],
        }
    }

    /// Appends a sentence to the current paragraph.
    pub fn sentence(mut self, s: SentenceBuilder) -> Self {
        self.paragraphs
            .last_mut()
            .expect("always one open paragraph")
            .sentences
            .push(s.build());
        self
    }

    /// Closes the current paragraph and opens a new one.
    pub fn paragraph(mut self) -> Self {
        self.paragraphs.push(Paragraph { sentences: vec![] });
        self
    }

    pub fn build(self) -> Document {
        Document::new(self.doc_id, self.paragraphs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn offsets_are_code_points() {
        let s = SentenceBuilder::new()
            .text("さらに")
            .company("c", "ＡＢ社", Some(Particle::Ha))
            .anaphor("a", AnaphorParticle::Ga, Some("c"))
            .text("。")
            .build();
        assert_eq!(s.text, "さらにＡＢ社は同社が。");
        assert_eq!((s.mentions[0].start, s.mentions[0].end), (3, 6));
        assert_eq!((s.mentions[1].start, s.mentions[1].end), (7, 9));
        assert_eq!(s.span_text(&s.mentions[1]).as_deref(), Some(DOUSHA));
        assert_eq!(s.mentions[1].gold_ref.as_deref(), Some("c"));
    }

    #[test]
    fn paragraphs_split() {
        let d = DocBuilder::new("d")
            .sentence(SentenceBuilder::new().text("一。"))
            .paragraph()
            .sentence(SentenceBuilder::new().text("二。"))
            .sentence(SentenceBuilder::new().text("三。"))
            .build();
        assert_eq!(d.paragraphs.len(), 2);
        assert_eq!(d.paragraphs[1].sentences.len(), 2);
    }
}
