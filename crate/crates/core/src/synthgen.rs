//! Seeded generator of synthetic annotated documents with planted gold
//! referents.
//!
//! A [`GenSpec`] names the cascade rule that must fire, the anaphor's
//! particle, where the referent sits relative to the anaphor and how many
//! decoy companies to add. Decoys never carry a subject particle (ha, ga,
//! deha, niyoruto). They usually sit between referent and anaphor, so the
//! nearest-company baseline picks a decoy. The exceptions are the
//! same-sentence and emphasis rules: there a decoy between the two would
//! change which rule fires, so decoys go earlier in the document.
//!
//! Randomness comes from ChaCha8 (`rand_chacha`) seeded with the spec's
//! seed, so output is identical across platforms.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::build::{DocBuilder, SentenceBuilder};
use crate::model::{Corpus, Document};
use crate::particle::{AnaphorParticle, Particle};
use crate::resolver::RuleId;
use crate::structure::LocationCategory;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenSpec {
    pub seed: u64,
    pub target_rule: RuleId,
    pub particle: AnaphorParticle,
    pub location: LocationCategory,
    pub decoy_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("inconsistent spec: {0}")]
    Inconsistent(String),
    #[error("no specs given")]
    NoSpecs,
    #[error("spec line {line}: {message}")]
    SpecFile { line: usize, message: String },
}

const MAX_DECOYS: usize = 16;

impl GenSpec {
    /// Rejects combinations no document can realise.
    pub fn check(&self) -> Result<(), GenError> {
        use LocationCategory as L;
        use RuleId as R;
        let bad = |msg: &str| Err(GenError::Inconsistent(format!("{msg} ({self:?})")));

        if self.target_rule == R::SameSentenceClosest {
            if self.particle != AnaphorParticle::Ga {
                return bad("the same-sentence rule only exists for ga-anaphors");
            }
            if self.location != L::WithinSameSentence {
                return bad("the same-sentence rule needs the referent in the anaphor's sentence");
            }
        }
        if self.particle == AnaphorParticle::Ga
            && self.location == L::WithinSameSentence
            && self.target_rule != R::SameSentenceClosest
        {
            return bad("a same-sentence referent of a ga-anaphor always triggers the same-sentence rule");
        }
        if matches!(self.target_rule, R::EmphasisPrevSentence | R::TitlePatternPrevSentence)
            && !matches!(self.location, L::PreviousSentence | L::PreviousParagraph)
        {
            return bad("previous-sentence rules need the referent in the sentence before the anaphor");
        }
        if self.target_rule == R::ClosestFallback && self.decoy_count > 0 {
            return bad("a decoy would be closer than the referent under the fallback rule");
        }
        if self.target_rule != R::ClosestFallback
            && self.location != L::WithinSameSentence
            && self.decoy_count == 0
        {
            return bad("at least one decoy is required");
        }
        if self.decoy_count > MAX_DECOYS {
            return bad("too many decoys");
        }
        Ok(())
    }
}

const COMPANIES: &[&str] = &[
    "アルファ電機", "ベータ商事", "ガンマ工業", "デルタ化学", "イプシロン通信", "ゼータ精機",
    "エータ電子", "シータ産業", "イオタ物産", "カッパ自動車", "ラムダ部品", "ミュー製作所",
    "ニュー薬品", "クシー建設", "オミクロン鉄鋼", "パイ食品",
];
const PEOPLE: &[&str] = &["田中", "鈴木", "佐藤", "高橋", "伊藤", "渡辺"];
const TITLES: &[&str] = &["社長", "会長", "専務", "副社長"];
const FILLERS: &[&str] = &[
    "新製品を発表し", "合弁会社を設立し", "業務提携を結び", "生産能力を拡大し",
    "海外展開を進め", "技術開発を強化し", "販売網を整備し",
];
const OPENERS: &[&str] = &["", "", "さらに、", "なお、", "一方、"];
const EMPTY_SENTENCES: &[&str] = &["市場は拡大している。", "詳細は明らかにしていない。", "投資額は約十億円。"];

/// Particles a decoy or any company that must not preempt the subject rule
/// may carry.
const NON_SUBJECT: &[Option<Particle>] = &[
    Some(Particle::To),
    Some(Particle::Kara),
    Some(Particle::WoTsuuji),
    Some(Particle::TonoAidade),
    Some(Particle::Other),
    Some(Particle::No),
    None,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Item {
    Company { id: Slot, particle: Option<Particle> },
    Emphasised,
    TitlePattern,
    Anaphor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Gold,
    Decoy(usize),
    Background(usize),
    Trailing(usize),
}

impl Slot {
    fn id(self) -> String {
        match self {
            Slot::Gold => "g".into(),
            Slot::Decoy(i) => format!("d{i}"),
            Slot::Background(i) => format!("b{i}"),
            Slot::Trailing(i) => format!("x{i}"),
        }
    }
}

// Ordering of items that share a sentence.
const BEFORE_GOLD: u8 = 0;
const GOLD: u8 = 2;
const AFTER_GOLD: u8 = 3;
const BEFORE_ANAPHOR: u8 = 4;
const ANAPHOR: u8 = 5;
const TRAILING: u8 = 6;

struct Placed {
    sentence: usize,
    order: u8,
    item: Item,
}

struct Layout {
    par_lens: Vec<usize>,
    gold: usize,
    anaphor: usize,
}

fn layout(spec: &GenSpec, rng: &mut ChaCha8Rng) -> Layout {
    use LocationCategory as L;
    let prev_rule = matches!(
        spec.target_rule,
        RuleId::EmphasisPrevSentence | RuleId::TitlePatternPrevSentence
    );
    let mut par_lens: Vec<usize> = (0..rng.gen_range(0..=1)).map(|_| rng.gen_range(1..=2)).collect();
    let base = |lens: &[usize]| lens.iter().sum::<usize>();

    let same_paragraph = |back: usize, rng: &mut ChaCha8Rng, par_lens: &mut Vec<usize>| {
        let k = back + rng.gen_range(0..=1);
        let start = base(par_lens);
        par_lens.push(k + 1 + rng.gen_range(0..=1));
        (start + k - back, start + k)
    };
    let across = |back: usize, rng: &mut ChaCha8Rng, par_lens: &mut Vec<usize>| {
        let gold_len = rng.gen_range(1..=3);
        let gold_idx = if prev_rule { gold_len - 1 } else { rng.gen_range(0..gold_len) };
        let gold = base(par_lens) + gold_idx;
        par_lens.push(gold_len);
        for _ in 1..back {
            par_lens.push(rng.gen_range(1..=2));
        }
        let k = if prev_rule { 0 } else { rng.gen_range(0..=1) };
        let anaphor = base(par_lens) + k;
        par_lens.push(k + 1 + rng.gen_range(0..=1));
        (gold, anaphor)
    };

    let (gold, anaphor) = match spec.location {
        L::WithinSameSentence => same_paragraph(0, rng, &mut par_lens),
        L::PreviousSentence => same_paragraph(1, rng, &mut par_lens),
        L::TwoSentencesBefore => same_paragraph(2, rng, &mut par_lens),
        L::ThreeSentencesBefore => same_paragraph(3, rng, &mut par_lens),
        L::PreviousParagraph => across(1, rng, &mut par_lens),
        L::TwoParagraphsBefore => across(2, rng, &mut par_lens),
        L::ThreeParagraphsBefore => across(3, rng, &mut par_lens),
        L::FurtherBack => {
            if rng.gen_bool(0.5) {
                let back = rng.gen_range(4..=5);
                same_paragraph(back, rng, &mut par_lens)
            } else {
                across(4, rng, &mut par_lens)
            }
        }
    };
    Layout {
        par_lens,
        gold,
        anaphor,
    }
}

fn pick<T: Copy>(rng: &mut ChaCha8Rng, xs: &[T]) -> T {
    *xs.choose(rng).expect("non-empty choice list")
}

fn any_particle(rng: &mut ChaCha8Rng) -> Option<Particle> {
    if rng.gen_bool(0.15) {
        None
    } else {
        Some(pick(rng, &Particle::ALL))
    }
}

/// Builds the document described by `spec`; the id is derived from the seed.
pub fn generate_document(spec: &GenSpec) -> Result<Document, GenError> {
    generate_with_id(spec, &format!("syn-{:016x}", spec.seed))
}

fn generate_with_id(spec: &GenSpec, doc_id: &str) -> Result<Document, GenError> {
    spec.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let Layout {
        par_lens,
        gold,
        anaphor,
    } = layout(spec, &mut rng);
    let ga = spec.particle == AnaphorParticle::Ga;
    let mut items = Vec::new();

    // Referent.
    let gold_item = match spec.target_rule {
        RuleId::SameSentenceClosest => Item::Company {
            id: Slot::Gold,
            particle: any_particle(&mut rng),
        },
        RuleId::SubjectParticleClosest => Item::Company {
            id: Slot::Gold,
            particle: Some(pick(&mut rng, &Particle::SUBJECT_MARKERS)),
        },
        RuleId::EmphasisPrevSentence => Item::Emphasised,
        RuleId::TitlePatternPrevSentence => Item::TitlePattern,
        RuleId::ClosestFallback => Item::Company {
            id: Slot::Gold,
            particle: pick(&mut rng, NON_SUBJECT),
        },
    };
    items.push(Placed {
        sentence: gold,
        order: GOLD,
        item: gold_item,
    });
    items.push(Placed {
        sentence: anaphor,
        order: ANAPHOR,
        item: Item::Anaphor,
    });

    // Decoys.
    let decoys_before_gold = matches!(
        spec.target_rule,
        RuleId::SameSentenceClosest | RuleId::EmphasisPrevSentence
    );
    let mut slots: Vec<(usize, u8)> = Vec::new();
    if decoys_before_gold {
        slots.extend((0..=gold).map(|s| (s, BEFORE_GOLD)));
    } else {
        if gold != anaphor {
            slots.push((gold, AFTER_GOLD));
        }
        if spec.target_rule != RuleId::TitlePatternPrevSentence {
            slots.extend((gold + 1..anaphor).map(|s| (s, BEFORE_GOLD)));
        }
        if !ga {
            slots.push((anaphor, BEFORE_ANAPHOR));
        }
    }
    for i in 0..spec.decoy_count {
        let (sentence, order) = pick(&mut rng, &slots);
        items.push(Placed {
            sentence,
            order,
            item: Item::Company {
                id: Slot::Decoy(i + 1),
                particle: pick(&mut rng, NON_SUBJECT),
            },
        });
    }

    // Background companies before the referent.
    let free_background = matches!(
        spec.target_rule,
        RuleId::SameSentenceClosest | RuleId::SubjectParticleClosest
    );
    for i in 0..rng.gen_range(0..=2) {
        let particle = if free_background {
            any_particle(&mut rng)
        } else {
            pick(&mut rng, NON_SUBJECT)
        };
        items.push(Placed {
            sentence: rng.gen_range(0..=gold),
            order: BEFORE_GOLD,
            item: Item::Company {
                id: Slot::Background(i + 1),
                particle,
            },
        });
    }

    // Companies after the anaphor, which no rule may look at.
    let total_sentences: usize = par_lens.iter().sum();
    for i in 0..rng.gen_range(0..=1) {
        items.push(Placed {
            sentence: rng.gen_range(anaphor..total_sentences),
            order: TRAILING,
            item: Item::Company {
                id: Slot::Trailing(i + 1),
                particle: any_particle(&mut rng),
            },
        });
    }

    Ok(render(doc_id, spec.particle, &par_lens, items, &mut rng))
}

fn render(
    doc_id: &str,
    particle: AnaphorParticle,
    par_lens: &[usize],
    mut items: Vec<Placed>,
    rng: &mut ChaCha8Rng,
) -> Document {
    // Stable sort keeps insertion order among equal keys.
    items.sort_by_key(|p| (p.sentence, p.order));
    let mut names = COMPANIES.to_vec();
    names.shuffle(rng);
    let mut next_name = 0usize;
    let mut company_name = || {
        let n = next_name;
        next_name += 1;
        match n / names.len() {
            0 => names[n].to_owned(),
            k => format!("{}{}", names[n % names.len()], k + 1),
        }
    };

    let mut builder = DocBuilder::new(doc_id);
    let mut sentence_idx = 0;
    let mut cursor = items.iter().peekable();
    for (p, &len) in par_lens.iter().enumerate() {
        if p > 0 {
            builder = builder.paragraph();
        }
        for _ in 0..len {
            let mut sb = SentenceBuilder::new();
            let mut here = Vec::new();
            while let Some(item) = cursor.next_if(|i| i.sentence == sentence_idx) {
                here.push(item.item);
            }
            if here.is_empty() {
                sb = sb.text(pick(rng, EMPTY_SENTENCES));
            } else {
                sb = sb.text(pick(rng, OPENERS));
                let mut closed = false;
                for item in here {
                    match item {
                        Item::Company { id, particle } => {
                            sb = sb.company(&id.id(), &company_name(), particle);
                            sb = sb.text(pick(rng, FILLERS)).text("、");
                        }
                        Item::Emphasised => {
                            sb = sb.text("提携相手に選ばれたのは");
                            sb = sb.company(&Slot::Gold.id(), &company_name(), None);
                            sb = sb.text("。");
                            closed = true;
                        }
                        Item::TitlePattern => {
                            sb = sb.company(&Slot::Gold.id(), &company_name(), Some(Particle::No));
                            sb = sb.person("p1", pick(rng, PEOPLE));
                            sb = sb.title("t1", pick(rng, TITLES), Some(Particle::Ha));
                            sb = sb.text(pick(rng, FILLERS)).text("、");
                        }
                        Item::Anaphor => {
                            sb = sb.anaphor("a", particle, Some("g"));
                            sb = sb.text(pick(rng, FILLERS)).text("、");
                        }
                    }
                }
                if !closed {
                    sb = sb.text("と発表した。");
                }
            }
            builder = builder.sentence(sb);
            sentence_idx += 1;
        }
    }
    builder.build()
}

/// One document per spec, with ids derived from the spec's seed and index.
pub fn generate_corpus(specs: &[GenSpec]) -> Result<Corpus, GenError> {
    if specs.is_empty() {
        return Err(GenError::NoSpecs);
    }
    specs
        .iter()
        .enumerate()
        .map(|(i, spec)| generate_with_id(spec, &format!("syn-{i:05}-{:016x}", spec.seed)))
        .collect::<Result<Vec<_>, _>>()
        .map(Corpus::new)
}

/// Draws a consistent spec.
pub fn random_spec<R: Rng>(rng: &mut R) -> GenSpec {
    loop {
        let target_rule = RuleId::ALL[rng.gen_range(0..RuleId::ALL.len())];
        let particle = AnaphorParticle::ALL[rng.gen_range(0..2)];
        let location = LocationCategory::ALL[rng.gen_range(0..LocationCategory::ALL.len())];
        let decoy_count = if target_rule == RuleId::ClosestFallback {
            0
        } else {
            rng.gen_range(0..=3)
        };
        let spec = GenSpec {
            seed: rng.next_u64(),
            target_rule,
            particle,
            location,
            decoy_count,
        };
        if spec.check().is_ok() {
            return spec;
        }
    }
}

/// `count` consistent specs drawn from a ChaCha8 stream seeded with `seed`.
pub fn random_specs(seed: u64, count: usize) -> Vec<GenSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_spec(&mut rng)).collect()
}

/// A spec-file record; `seed` may be left out and derived from a base seed.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecRecord {
    seed: Option<u64>,
    target_rule: RuleId,
    particle: AnaphorParticle,
    location: LocationCategory,
    #[serde(default)]
    decoy_count: usize,
}

/// Parses a line-delimited spec file. Records without a seed get
/// `base_seed + index`.
pub fn parse_spec_file(text: &str, base_seed: u64) -> Result<Vec<GenSpec>, GenError> {
    let mut specs = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let rec: SpecRecord = serde_json::from_str(line).map_err(|e| GenError::SpecFile {
            line: idx + 1,
            message: e.to_string(),
        })?;
        let spec = GenSpec {
            seed: rec.seed.unwrap_or(base_seed.wrapping_add(specs.len() as u64)),
            target_rule: rec.target_rule,
            particle: rec.particle,
            location: rec.location,
            decoy_count: rec.decoy_count,
        };
        spec.check().map_err(|e| GenError::SpecFile {
            line: idx + 1,
            message: e.to_string(),
        })?;
        specs.push(spec);
    }
    Ok(specs)
}
