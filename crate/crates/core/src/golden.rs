//! Hand-built reference documents.
//!
//! [`kfc_document`] is the Kentucky Fried Chicken Japan / Pizza Hut article.
//! [`golden_cases`] has one document for each nonzero row of the ga and ha
//! referent tables, i.e. each (particle, location, context) combination
//! observed in the annotated newspaper sample. Each case records the number of
//! cases reported for that row, the rule the cascade is expected to fire,
//! and whether a decoy company sits between referent and anaphor.

use crate::build::{DocBuilder, SentenceBuilder};
use crate::model::{Corpus, Document};
use crate::particle::{AnaphorParticle, Particle};
use crate::resolver::RuleId;
use crate::structure::{ContextCategory, LocationCategory};

use AnaphorParticle::{Ga as AGa, Ha as AHa};
use ContextCategory as Ctx;
use LocationCategory as Loc;
use Particle as P;

pub fn kfc_document() -> Document {
    DocBuilder::new("kfc")
        .sentence(
            SentenceBuilder::new()
                .company("KFCJapan", "日本ケンタッキー・フライド・チキン", Some(P::Ha))
                .text("、世界最大のピザチェーン、")
                .company("PizzaHut", "ピザハット", Some(P::To))
                .text("提携を結び、今年五月から全国で宅配ピザチェーンの展開を始めると発表した。"),
        )
        .sentence(
            SentenceBuilder::new()
                .text("さらに")
                .anaphor("dousha", AHa, Some("KFCJapan"))
                .text("フライドチキンの宅配サービスにも乗り出す。"),
        )
        .build()
}

pub fn kfc_corpus() -> Corpus {
    Corpus::new(vec![kfc_document()])
}

#[derive(Debug, Clone)]
pub struct GoldenCase {
    pub particle: AnaphorParticle,
    pub location: LocationCategory,
    pub context: ContextCategory,
    /// Cases reported for this row in the original tables.
    pub table_count: usize,
    pub expected_rule: RuleId,
    /// A decoy company lies between the referent and the anaphor, so the
    /// nearest-company baseline is wrong.
    pub adversarial: bool,
    pub document: Document,
}

impl GoldenCase {
    pub fn doc_id(&self) -> &str {
        &self.document.doc_id
    }
}

fn s() -> SentenceBuilder {
    SentenceBuilder::new()
}

fn case(
    particle: AnaphorParticle,
    location: LocationCategory,
    context: ContextCategory,
    table_count: usize,
    expected_rule: RuleId,
    adversarial: bool,
    document: DocBuilder,
) -> GoldenCase {
    GoldenCase {
        particle,
        location,
        context,
        table_count,
        expected_rule,
        adversarial,
        document: document.build(),
    }
}

/// Every golden document has one anaphor `a`, its referent `g`, and
/// optionally decoys `d*` and background companies `b*`.
pub fn golden_cases() -> Vec<GoldenCase> {
    use RuleId::*;
    vec![
        // dousha with ga
        case(AGa, Loc::WithinSameSentence, Ctx::CompanyHa, 7, SameSentenceClosest, false,
            DocBuilder::new("ga-same-ha")
                .sentence(s().company("b1", "ベータ社", Some(P::Kara)).text("部品を調達している。"))
                .sentence(s().company("g", "アルファ電機", Some(P::Ha)).text("新工場を建設し、")
                    .anaphor("a", AGa, Some("g")).text("来春から量産する。"))),
        case(AGa, Loc::WithinSameSentence, Ctx::PartOfSubject, 1, SameSentenceClosest, false,
            DocBuilder::new("ga-same-part")
                .sentence(s().company_labeled("g", "ガンマ工業", Some(P::No), Ctx::PartOfSubject)
                    .text("子会社が設立され、").anaphor("a", AGa, Some("g")).text("全額を出資した。"))),
        case(AGa, Loc::WithinSameSentence, Ctx::CompanyNiyoruto, 3, SameSentenceClosest, false,
            DocBuilder::new("ga-same-niyoruto")
                .sentence(s().company("g", "デルタ商事", Some(P::Niyoruto)).text("、")
                    .anaphor("a", AGa, Some("g")).text("米国企業と提携する。"))),
        case(AGa, Loc::WithinSameSentence, Ctx::OtherParticle, 8, SameSentenceClosest, false,
            DocBuilder::new("ga-same-others")
                .sentence(s().text("今回の契約は").company("g", "イプシロン化学", Some(P::Kara))
                    .text("の提案で、").anaphor("a", AGa, Some("g")).text("技術を供与する。"))),
        case(AGa, Loc::PreviousSentence, Ctx::CompanyHa, 8, SubjectParticleClosest, true,
            DocBuilder::new("ga-prev-ha")
                .sentence(s().company("g", "アルファ電機", Some(P::Ha)).text("新会社設立で")
                    .company("d1", "ベータ社", Some(P::To)).text("合意したと発表した。"))
                .sentence(s().anaphor("a", AGa, Some("g")).text("過半数を出資する。"))),
        case(AGa, Loc::PreviousSentence, Ctx::CompanyGa, 1, SubjectParticleClosest, true,
            DocBuilder::new("ga-prev-ga")
                .sentence(s().company("g", "ゼータ通信", Some(P::Ga)).text("開発した技術を")
                    .company("d1", "エータ電子", Some(P::WoTsuuji)).text("販売すると発表した。"))
                .sentence(s().anaphor("a", AGa, Some("g")).text("保守も担当する。"))),
        case(AGa, Loc::PreviousSentence, Ctx::EmphasisStructure, 1, EmphasisPrevSentence, false,
            DocBuilder::new("ga-prev-emphasis")
                .sentence(s().company("b1", "シータ産業", Some(P::To)).text("の交渉は決裂した。"))
                .sentence(s().text("合弁相手に選ばれたのは").company("g", "イオタ電機", None).text("。"))
                .sentence(s().anaphor("a", AGa, Some("g")).text("来月にも契約を結ぶ。"))),
        case(AGa, Loc::PreviousSentence, Ctx::PartOfSubject, 1, TitlePatternPrevSentence, true,
            DocBuilder::new("ga-prev-part")
                .sentence(s().company_labeled("g", "カッパ自動車", Some(P::No), Ctx::PartOfSubject)
                    .person("p1", "山田").title("t1", "社長", Some(P::Ha)).text("記者会見で、")
                    .company("d1", "ラムダ部品", Some(P::Kara)).text("の調達拡大を表明した。"))
                .sentence(s().anaphor("a", AGa, Some("g")).text("年内に新型車を投入する。"))),
        case(AGa, Loc::PreviousSentence, Ctx::CompanyTo, 2, ClosestFallback, false,
            DocBuilder::new("ga-prev-to")
                .sentence(s().company("g", "ミュー電子", Some(P::To)).text("の提携が報じられた。"))
                .sentence(s().anaphor("a", AGa, Some("g")).text("近く正式に発表する。"))),
        case(AGa, Loc::TwoSentencesBefore, Ctx::CompanyHa, 5, SubjectParticleClosest, true,
            DocBuilder::new("ga-two-ha")
                .sentence(s().company("g", "ニュー精機", Some(P::Ha)).text("半導体事業への参入を決めた。"))
                .sentence(s().company("d1", "クシー電機", Some(P::Kara)).text("技術供与を受ける。"))
                .sentence(s().anaphor("a", AGa, Some("g")).text("新工場を建設する。"))),
        case(AGa, Loc::TwoSentencesBefore, Ctx::CompanyGa, 1, SubjectParticleClosest, true,
            DocBuilder::new("ga-two-ga")
                .sentence(s().text("発表によると、").company("g", "オミクロン工業", Some(P::Ga))
                    .text("新素材を開発した。"))
                .sentence(s().text("量産は").company("d1", "パイ化学", Some(P::TonoAidade)).text("協議中だ。"))
                .sentence(s().anaphor("a", AGa, Some("g")).text("来年度に販売を始める。"))),
        case(AGa, Loc::PreviousParagraph, Ctx::CompanyHa, 1, SubjectParticleClosest, true,
            DocBuilder::new("ga-prevpar-ha")
                .sentence(s().company("g", "ロー電機", Some(P::Ha)).text("欧州に販売会社を設立した。"))
                .sentence(s().text("投資額は約十億円。"))
                .paragraph()
                .sentence(s().company("d1", "シグマ物産", Some(P::To)).text("の合弁も検討する。"))
                .sentence(s().anaphor("a", AGa, Some("g")).text("出資比率の過半を握る。"))),
        case(AGa, Loc::TwoParagraphsBefore, Ctx::CompanyHa, 3, SubjectParticleClosest, true,
            DocBuilder::new("ga-twopar-ha")
                .sentence(s().company("g", "タウ製作所", Some(P::Ha)).text("米社と技術提携した。"))
                .paragraph()
                .sentence(s().company("d1", "ウプシロン電子", Some(P::Kara)).text("部品を調達する。"))
                .paragraph()
                .sentence(s().anaphor("a", AGa, Some("g")).text("生産を拡大する。"))),
        // dousha with ha
        case(AHa, Loc::WithinSameSentence, Ctx::CompanyGa, 1, SubjectParticleClosest, true,
            DocBuilder::new("ha-same-ga")
                .sentence(s().company("g", "ファイ通信", Some(P::Ga)).text("開発した端末を")
                    .company("d1", "カイ電機", Some(P::WoTsuuji)).text("販売し、")
                    .anaphor("a", AHa, Some("g")).text("保守も担当する。"))),
        case(AHa, Loc::WithinSameSentence, Ctx::CompanyDeha, 1, SubjectParticleClosest, true,
            DocBuilder::new("ha-same-deha")
                .sentence(s().company("g", "プサイ工業", Some(P::Deha)).text("、")
                    .company("d1", "オメガ化学", Some(P::To)).text("共同開発を進めており、")
                    .anaphor("a", AHa, Some("g")).text("成果を期待している。"))),
        case(AHa, Loc::PreviousSentence, Ctx::CompanyHa, 21, SubjectParticleClosest, true,
            DocBuilder::new("ha-prev-ha")
                .sentence(s().company("g", "アルファ電機", Some(P::Ha)).text("新製品を発表した。"))
                .sentence(s().text("さらに").company("d1", "ベータ社", Some(P::To)).text("共同で、")
                    .anaphor("a", AHa, Some("g")).text("販売網を広げる。"))),
        case(AHa, Loc::PreviousSentence, Ctx::EmphasisStructure, 5, EmphasisPrevSentence, true,
            DocBuilder::new("ha-prev-emphasis")
                .sentence(s().text("提携先に選ばれたのは").company("g", "ガンマ工業", None).text("。"))
                .sentence(s().company("d1", "デルタ商事", Some(P::To)).text("の協議を経て、")
                    .anaphor("a", AHa, Some("g")).text("出資を決めた。"))),
        case(AHa, Loc::PreviousSentence, Ctx::PartOfSubject, 4, TitlePatternPrevSentence, true,
            DocBuilder::new("ha-prev-part")
                .sentence(s().company_labeled("g", "イプシロン化学", Some(P::No), Ctx::PartOfSubject)
                    .person("p1", "佐藤").title("t1", "会長", Some(P::Ha)).text("会見で新戦略を示した。"))
                .sentence(s().company("d1", "ゼータ通信", Some(P::Kara)).text("の受注を受け、")
                    .anaphor("a", AHa, Some("g")).text("増産に踏み切る。"))),
        case(AHa, Loc::PreviousSentence, Ctx::OtherParticle, 2, ClosestFallback, false,
            DocBuilder::new("ha-prev-others")
                .sentence(s().text("部品は").company("g", "エータ電子", Some(P::Kara)).text("調達した。"))
                .sentence(s().anaphor("a", AHa, Some("g")).text("品質に満足している。"))),
        case(AHa, Loc::TwoSentencesBefore, Ctx::CompanyHa, 16, SubjectParticleClosest, true,
            DocBuilder::new("ha-two-ha")
                .sentence(s().company("g", "シータ産業", Some(P::Ha)).text("台湾に工場を新設する。"))
                .sentence(s().text("生産品は").company("d1", "イオタ電機", Some(P::WoTsuuji)).text("販売される。"))
                .sentence(s().anaphor("a", AHa, Some("g")).text("年内の稼働を目指す。"))),
        case(AHa, Loc::TwoSentencesBefore, Ctx::PartOfSubject, 1, ClosestFallback, false,
            DocBuilder::new("ha-two-part")
                .sentence(s().company_labeled("g", "カッパ自動車", Some(P::No), Ctx::PartOfSubject)
                    .text("米国法人が新工場を開設した。"))
                .sentence(s().text("投資額は百億円に上る。"))
                .sentence(s().anaphor("a", AHa, Some("g")).text("さらに増産を計画している。"))),
        case(AHa, Loc::ThreeSentencesBefore, Ctx::CompanyHa, 2, SubjectParticleClosest, true,
            DocBuilder::new("ha-three-ha")
                .sentence(s().company("g", "ラムダ部品", Some(P::Ha)).text("増資を発表した。"))
                .sentence(s().text("調達資金は設備投資に充てる。"))
                .sentence(s().company("d1", "ミュー電子", Some(P::To)).text("の共同開発も進める。"))
                .sentence(s().anaphor("a", AHa, Some("g")).text("来期の黒字化を見込む。"))),
        case(AHa, Loc::PreviousParagraph, Ctx::CompanyHa, 6, SubjectParticleClosest, true,
            DocBuilder::new("ha-prevpar-ha")
                .sentence(s().company("g", "ニュー精機", Some(P::Ha)).text("中国に合弁会社を設立した。"))
                .paragraph()
                .sentence(s().company("d1", "クシー電機", Some(P::Kara)).text("技術を導入し、")
                    .anaphor("a", AHa, Some("g")).text("生産を始める。"))),
        case(AHa, Loc::PreviousParagraph, Ctx::CompanyGa, 1, SubjectParticleClosest, true,
            DocBuilder::new("ha-prevpar-ga")
                .sentence(s().text("関係者によると、").company("g", "オミクロン工業", Some(P::Ga))
                    .text("新会社を設立する。"))
                .sentence(s().text("資本金は五億円。"))
                .paragraph()
                .sentence(s().text("出資者には").company("d1", "パイ化学", None).text("も加わる。"))
                .sentence(s().anaphor("a", AHa, Some("g")).text("経営権を握る。"))),
        case(AHa, Loc::TwoParagraphsBefore, Ctx::CompanyHa, 2, SubjectParticleClosest, true,
            DocBuilder::new("ha-twopar-ha")
                .sentence(s().company("g", "ロー電機", Some(P::Ha)).text("欧州市場に参入した。"))
                .paragraph()
                .sentence(s().company("d1", "シグマ物産", Some(P::WoTsuuji)).text("販売を行う。"))
                .paragraph()
                .sentence(s().anaphor("a", AHa, Some("g")).text("現地生産も検討する。"))),
        case(AHa, Loc::ThreeParagraphsBefore, Ctx::CompanyHa, 2, SubjectParticleClosest, true,
            DocBuilder::new("ha-threepar-ha")
                .sentence(s().company("g", "タウ製作所", Some(P::Ha)).text("医療機器事業を強化する。"))
                .paragraph()
                .sentence(s().text("市場規模は拡大している。"))
                .paragraph()
                .sentence(s().company("d1", "ウプシロン電子", Some(P::To)).text("の競争も激しい。"))
                .paragraph()
                .sentence(s().anaphor("a", AHa, Some("g")).text("新製品を投入する。"))),
    ]
}

/// One document per golden case.
pub fn golden_corpus() -> Corpus {
    Corpus::new(golden_cases().into_iter().map(|c| c.document).collect())
}

/// Each golden case repeated as often as its row was observed, so that
/// location subtotals follow the original tables.
pub fn mirrored_corpus() -> Corpus {
    let mut docs = Vec::new();
    for case in golden_cases() {
        for i in 0..case.table_count {
            let mut doc = case.document.clone();
            doc.doc_id = format!("{}-{:02}", case.document.doc_id, i + 1);
            docs.push(doc);
        }
    }
    Corpus::new(docs)
}
