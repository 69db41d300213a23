mod common;

use common::arb_doc;
use dousha::corpus::{corpus_to_string, load_corpus_str, validate_document};
use dousha::structure::classify_location;
use dousha::synthgen::{random_specs, GenError};
use dousha::{
    compare_methods, distant_particle_stat, evaluate, generate_corpus, generate_document, golden, profile,
    AnaphorParticle, ClosingSet, Corpus, GenSpec, LocationCategory, MethodId, Resolver, RuleId,
};
use proptest::prelude::*;

fn arb_spec() -> impl Strategy<Value = GenSpec> {
    any::<u64>().prop_map(|seed| random_specs(seed, 1).remove(0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn round_trip(docs in prop::collection::vec(arb_doc(), 1..4)) {
        let docs = docs
            .into_iter()
            .enumerate()
            .map(|(i, mut d)| { d.doc_id = format!("d{i}"); d })
            .collect();
        let corpus = Corpus::new(docs);
        let text = corpus_to_string(&corpus);
        let back = load_corpus_str(&text).unwrap();
        prop_assert_eq!(&back, &corpus);
        prop_assert_eq!(corpus_to_string(&back), text);
    }

    #[test]
    fn generated_document_meets_its_spec(spec in arb_spec()) {
        let doc = generate_document(&spec).unwrap();
        prop_assert_eq!(validate_document(&doc), vec![]);
        prop_assert_eq!(generate_document(&spec).unwrap(), doc.clone());

        let anaphors: Vec<_> = doc.anaphors().collect();
        prop_assert_eq!(anaphors.len(), 1);
        let a = anaphors[0];
        prop_assert_eq!(a.mention.anaphor_particle(), Some(spec.particle));
        let gold = a.mention.gold_ref.as_deref().unwrap();
        let g = doc.find(gold).unwrap();
        prop_assert_eq!(classify_location(&a, &g).unwrap(), spec.location);

        let r = Resolver::default()
            .resolve(&doc, &a, MethodId::cascade_for(spec.particle))
            .unwrap();
        prop_assert_eq!(r.rule, Some(spec.target_rule));
        prop_assert_eq!(r.predicted.as_deref(), Some(gold));
        // Decoys sit between referent and anaphor except for the two rules
        // that pin the referent's position directly.
        let intervening = !matches!(
            spec.target_rule,
            RuleId::SameSentenceClosest | RuleId::EmphasisPrevSentence
        );
        if spec.decoy_count > 0 && intervening {
            let scm = Resolver::default().resolve(&doc, &a, MethodId::Scm).unwrap();
            prop_assert_ne!(scm.predicted.as_deref(), Some(gold));
        }
    }

    #[test]
    fn synthetic_round_trip(seed in any::<u64>(), n in 1usize..20) {
        let corpus = generate_corpus(&random_specs(seed, n)).unwrap();
        prop_assert_eq!(load_corpus_str(&corpus_to_string(&corpus)).unwrap(), corpus);
    }

    #[test]
    fn evaluation_conserves_counts(seed in any::<u64>(), n in 1usize..30) {
        let corpus = generate_corpus(&random_specs(seed, n)).unwrap();
        let closing = ClosingSet::default();
        let resolver = Resolver::default();
        for p in AnaphorParticle::ALL {
            let prof = profile(&corpus, p, &closing).unwrap();
            prop_assert_eq!(prof.total as usize, corpus.anaphor_count(p));
            for method in [MethodId::Scm, MethodId::cascade_for(p)] {
                let rep = evaluate(&corpus, &resolver, method, p).unwrap();
                prop_assert_eq!(rep.total(), prof.total);
                let by_loc: Vec<(LocationCategory, u64)> =
                    rep.by_location.iter().map(|(&l, t)| (l, t.total)).collect();
                let subtotals: Vec<(LocationCategory, u64)> =
                    prof.location_subtotals().into_iter().collect();
                prop_assert_eq!(by_loc, subtotals);
                prop_assert_eq!(rep.by_rule.values().map(|t| t.total).sum::<u64>(), rep.total());
                prop_assert_eq!(rep.by_location.values().map(|t| t.correct).sum::<u64>(), rep.correct());
            }
        }
    }

    #[test]
    fn cascade_never_loses_to_baseline_on_synthetic(seed in any::<u64>(), n in 1usize..30) {
        let corpus = generate_corpus(&random_specs(seed, n)).unwrap();
        let cmp = compare_methods(&corpus, &Resolver::default()).unwrap();
        prop_assert!(cmp.ga_scm.correct() <= cmp.ga_cascade.correct());
        prop_assert!(cmp.ha_scm.correct() <= cmp.ha_cascade.correct());
        prop_assert_eq!(cmp.ga_cascade.correct(), cmp.ga_cascade.total());
        prop_assert_eq!(cmp.ha_cascade.correct(), cmp.ha_cascade.total());
    }

    #[test]
    fn results_ignore_document_order(seed in any::<u64>(), n in 2usize..20, rot in 1usize..19) {
        let corpus = generate_corpus(&random_specs(seed, n)).unwrap();
        let mut shuffled = corpus.clone();
        shuffled.documents.rotate_left(rot % n);
        shuffled.documents.reverse();
        let r = Resolver::default();
        prop_assert_eq!(compare_methods(&corpus, &r).unwrap(), compare_methods(&shuffled, &r).unwrap());
        let c = ClosingSet::default();
        for p in AnaphorParticle::ALL {
            prop_assert_eq!(profile(&corpus, p, &c).unwrap(), profile(&shuffled, p, &c).unwrap());
        }
        prop_assert_eq!(distant_particle_stat(&corpus, &c).unwrap(), distant_particle_stat(&shuffled, &c).unwrap());
    }
}

#[test]
fn impossible_spec_is_rejected() {
    let spec = GenSpec {
        seed: 1,
        target_rule: RuleId::ClosestFallback,
        particle: AnaphorParticle::Ga,
        location: LocationCategory::WithinSameSentence,
        decoy_count: 0,
    };
    assert!(matches!(generate_document(&spec), Err(GenError::Inconsistent(_))));
    assert!(matches!(generate_corpus(&[]), Err(GenError::NoSpecs)));
}

#[test]
fn fixtures_match_builders() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    let kfc = std::fs::read_to_string(format!("{dir}/kfc.jsonl")).unwrap();
    assert_eq!(kfc, corpus_to_string(&golden::kfc_corpus()));
    let gold = std::fs::read_to_string(format!("{dir}/golden.jsonl")).unwrap();
    assert_eq!(gold, corpus_to_string(&golden::golden_corpus()));
}
