#![allow(dead_code)]

use dousha::build::{DocBuilder, SentenceBuilder};
use dousha::{AnaphorParticle, Document, Mention, MentionKind, Particle, RuleId};
use proptest::prelude::*;

/// A mention with its coordinates, computed by a plain walk over paragraphs.
#[derive(Debug, Clone, Copy)]
pub struct Flat<'a> {
    pub m: &'a Mention,
    pub sentence: usize,
    pub paragraph: usize,
    pub text: &'a str,
}

pub fn flatten(doc: &Document) -> Vec<Flat<'_>> {
    let mut out = Vec::new();
    let mut sentence = 0;
    for (p, para) in doc.paragraphs.iter().enumerate() {
        for s in &para.sentences {
            let mut ms: Vec<&Mention> = s.mentions.iter().collect();
            ms.sort_by_key(|m| (m.start, m.end));
            for m in ms {
                out.push(Flat {
                    m,
                    sentence,
                    paragraph: p,
                    text: &s.text,
                });
            }
            sentence += 1;
        }
    }
    out
}

const CLOSERS: &str = "。、」』）.)";

fn ends_sentence(f: &Flat<'_>) -> bool {
    f.text
        .chars()
        .skip(f.m.end)
        .all(|c| c.is_whitespace() || CLOSERS.contains(c))
}

fn subject_marked(m: &Mention) -> bool {
    matches!(
        m.particle,
        Some(Particle::Ha | Particle::Ga | Particle::Deha | Particle::Niyoruto)
    )
}

/// Preceding companies, nearest first.
pub fn preceding<'a>(flat: &[Flat<'a>], anaphor: &Flat<'_>) -> Vec<Flat<'a>> {
    let mut out: Vec<Flat<'a>> = flat
        .iter()
        .filter(|f| f.m.kind == MentionKind::Company)
        .filter(|f| {
            f.sentence < anaphor.sentence
                || (f.sentence == anaphor.sentence && f.m.end <= anaphor.m.start)
        })
        .copied()
        .collect();
    out.sort_by_key(|f| std::cmp::Reverse((f.sentence, f.m.start)));
    out
}

fn apply_rule<'a>(rule: RuleId, flat: &[Flat<'a>], anaphor: &Flat<'_>) -> Option<Flat<'a>> {
    let cands = preceding(flat, anaphor);
    let prev: Vec<Flat<'a>> = match anaphor.sentence.checked_sub(1) {
        Some(p) => flat.iter().filter(|f| f.sentence == p).copied().collect(),
        None => Vec::new(),
    };
    match rule {
        RuleId::SameSentenceClosest => cands.into_iter().find(|c| c.sentence == anaphor.sentence),
        RuleId::SubjectParticleClosest => cands.into_iter().find(|c| subject_marked(c.m)),
        RuleId::EmphasisPrevSentence => prev
            .into_iter()
            .rev()
            .find(|f| f.m.kind == MentionKind::Company && ends_sentence(f)),
        RuleId::TitlePatternPrevSentence => {
            let mut hit = None;
            for i in 0..prev.len().saturating_sub(2) {
                let (a, b, c) = (prev[i], prev[i + 1], prev[i + 2]);
                if a.m.kind == MentionKind::Company
                    && a.m.particle == Some(Particle::No)
                    && b.m.kind == MentionKind::Person
                    && c.m.kind == MentionKind::Title
                {
                    hit = Some(a);
                }
            }
            hit
        }
        RuleId::ClosestFallback => cands.into_iter().next(),
    }
}

/// Reference cascade: first rule with a match wins.
pub fn oracle(doc: &Document, anaphor_id: &str, rules: &[RuleId]) -> (Option<String>, Option<RuleId>) {
    let flat = flatten(doc);
    let anaphor = *flat
        .iter()
        .find(|f| f.m.mention_id == anaphor_id)
        .expect("anaphor present");
    for &rule in rules {
        if let Some(hit) = apply_rule(rule, &flat, &anaphor) {
            return (Some(hit.m.mention_id.clone()), Some(rule));
        }
    }
    (None, None)
}

#[derive(Debug, Clone)]
pub enum Tok {
    Filler(usize),
    Company(Option<Particle>),
    Person,
    Title(Option<Particle>),
    Anaphor(AnaphorParticle),
}

const FILLERS: [&str; 4] = ["新製品を", "提携し", "昨年", "株式を取得し"];
const NAMES: [&str; 6] = ["アルファ", "ベータ工業", "ガンマ電機", "デルタ", "イプシロン", "ゼータ商事"];

fn tok() -> impl Strategy<Value = Tok> {
    let particle = prop::option::of(prop::sample::select(Particle::ALL.to_vec()));
    prop_oneof![
        2 => (0..FILLERS.len()).prop_map(Tok::Filler),
        4 => particle.clone().prop_map(Tok::Company),
        1 => Just(Tok::Person),
        1 => particle.prop_map(Tok::Title),
        2 => prop::sample::select(AnaphorParticle::ALL.to_vec()).prop_map(Tok::Anaphor),
    ]
}

/// (tokens, closes with a full stop)
pub type SentenceSpec = (Vec<Tok>, bool);

pub fn doc_shape() -> impl Strategy<Value = Vec<Vec<SentenceSpec>>> {
    let sentence = (prop::collection::vec(tok(), 0..6), any::<bool>());
    prop::collection::vec(prop::collection::vec(sentence, 1..4), 1..4)
}

/// Builds a document; anaphors carry no gold link.
pub fn build_doc(id: &str, shape: &[Vec<SentenceSpec>]) -> Document {
    let mut b = DocBuilder::new(id);
    let mut n = 0usize;
    for (pi, para) in shape.iter().enumerate() {
        if pi > 0 {
            b = b.paragraph();
        }
        for (toks, stop) in para {
            let mut s = SentenceBuilder::new();
            for t in toks {
                n += 1;
                let mid = format!("m{n}");
                s = match t {
                    Tok::Filler(i) => s.text(FILLERS[*i]),
                    Tok::Company(p) => s.company(&mid, NAMES[n % NAMES.len()], *p),
                    Tok::Person => s.person(&mid, "山田太郎"),
                    Tok::Title(p) => s.title(&mid, "社長", *p),
                    Tok::Anaphor(p) => s.anaphor(&mid, *p, None),
                };
            }
            if *stop {
                s = s.text("。");
            }
            b = b.sentence(s);
        }
    }
    b.build()
}

pub fn arb_doc() -> impl Strategy<Value = Document> {
    doc_shape().prop_map(|shape| build_doc("prop", &shape))
}
