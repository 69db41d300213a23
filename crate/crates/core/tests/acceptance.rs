//! Prints one PASS/FAIL line per acceptance criterion; exits non-zero on any FAIL.

mod common;

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use dousha::corpus::{corpus_to_string, load_corpus_str};
use dousha::synthgen::random_specs;
use dousha::{
    distant_particle_stat, evaluate, generate_document, golden, profile, AnaphorParticle, ClosingSet, Corpus,
    Document, MethodId, Resolver, RuleId,
};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

const KFC_BUDGET: Duration = Duration::from_secs(1);
const ORACLE_BUDGET: Duration = Duration::from_secs(10);
const ORACLE_DOCS: usize = 1000;
const ORACLE_SEED: u64 = 20_240_601;
const CASCADE_ACCURACY: f64 = 1.0;
/// Hand count over the golden corpus: (distant referents, of which ha-marked).
const DISTANT_HAND_COUNT: (u64, u64) = (11, 8);
const CLI_RUNS: usize = 3;

struct Outcome {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn check(name: &'static str, f: impl FnOnce() -> Result<String, String>) -> Outcome {
    match f() {
        Ok(detail) => Outcome { name, pass: true, detail },
        Err(detail) => Outcome { name, pass: false, detail },
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn worked_example() -> Result<String, String> {
    let t = Instant::now();
    let doc = golden::kfc_document();
    let a = doc.anaphors().next().ok_or("no anaphor")?;
    let r = Resolver::default();
    let m3 = r.resolve(&doc, &a, MethodId::Method3Ha).map_err(|e| e.to_string())?;
    let scm = r.resolve(&doc, &a, MethodId::Scm).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    ensure(m3.predicted.as_deref() == Some("KFCJapan"), || format!("m3 predicted {:?}", m3.predicted))?;
    ensure(scm.predicted.as_deref() == Some("PizzaHut"), || format!("scm predicted {:?}", scm.predicted))?;
    ensure(elapsed < KFC_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("m3=KFCJapan scm=PizzaHut in {elapsed:?}"))
}

fn golden_corpus() -> Result<String, String> {
    let cases = golden::golden_cases();
    let corpus = golden::golden_corpus();
    let r = Resolver::default();
    let closing = ClosingSet::default();

    let rows: std::collections::BTreeSet<_> = cases.iter().map(|c| (c.particle, c.location, c.context)).collect();
    ensure(rows.len() == cases.len(), || "duplicate rows".into())?;

    let mut detail = vec![format!("{} rows", rows.len())];
    for p in AnaphorParticle::ALL {
        let rep = evaluate(&corpus, &r, MethodId::cascade_for(p), p).map_err(|e| e.to_string())?;
        ensure(rep.accuracy() == Some(CASCADE_ACCURACY), || {
            format!("{} on {p}: {:?}", MethodId::cascade_for(p), rep.accuracy())
        })?;

        let adversarial = Corpus::new(
            cases
                .iter()
                .filter(|c| c.adversarial && c.particle == p)
                .map(|c| c.document.clone())
                .collect(),
        );
        let scm = evaluate(&adversarial, &r, MethodId::Scm, p).map_err(|e| e.to_string())?;
        let cas = evaluate(&adversarial, &r, MethodId::cascade_for(p), p).map_err(|e| e.to_string())?;
        ensure(scm.correct() < cas.correct(), || {
            format!("adversarial {p}: scm {} vs cascade {}", scm.correct(), cas.correct())
        })?;
        detail.push(format!(
            "{p}: cascade 100%, adversarial scm {}/{} < {}/{}",
            scm.correct(),
            scm.total(),
            cas.correct(),
            cas.total()
        ));

        let prof = profile(&corpus, p, &closing).map_err(|e| e.to_string())?;
        let want: BTreeMap<_, u64> = cases
            .iter()
            .filter(|c| c.particle == p)
            .map(|c| ((c.location, c.context), 1))
            .collect();
        ensure(prof.counts == want, || format!("{p} profile differs from hand matrix"))?;
    }
    Ok(detail.join("; "))
}

fn oracle_docs() -> Vec<Document> {
    let mut docs: Vec<Document> = random_specs(ORACLE_SEED, ORACLE_DOCS)
        .iter()
        .map(|s| generate_document(s).expect("random specs are consistent"))
        .collect();
    let mut runner = TestRunner::new_with_rng(
        Default::default(),
        proptest::test_runner::TestRng::from_seed(
            proptest::test_runner::RngAlgorithm::ChaCha,
            &[7; 32],
        ),
    );
    let strat = common::arb_doc();
    for _ in 0..ORACLE_DOCS {
        docs.push(strat.new_tree(&mut runner).expect("strategy").current());
    }
    docs
}

fn oracle_equivalence(docs: &[Document]) -> Result<String, String> {
    let t = Instant::now();
    let r = Resolver::default();
    let mut checked = 0usize;
    for doc in docs {
        for a in doc.anaphors() {
            let p = a.mention.anaphor_particle().ok_or("anaphor without particle")?;
            let rules: &[RuleId] = match p {
                AnaphorParticle::Ga => &RuleId::ALL,
                AnaphorParticle::Ha => &RuleId::ALL[1..],
            };
            let got = r.resolve(doc, &a, MethodId::cascade_for(p)).map_err(|e| e.to_string())?;
            let want = common::oracle(doc, a.id(), rules);
            ensure((got.predicted.clone(), got.rule) == want, || {
                format!("{} / {}: {:?} vs oracle {:?}", doc.doc_id, a.id(), (got.predicted, got.rule), want)
            })?;
            checked += 1;
        }
    }
    let elapsed = t.elapsed();
    ensure(elapsed < ORACLE_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("{} documents, {checked} anaphors agree in {elapsed:?}", docs.len()))
}

fn precedence_containment(docs: &[Document]) -> Result<String, String> {
    let r = Resolver::default();
    let mut compared = 0usize;
    for doc in docs {
        for a in doc.anaphors() {
            if a.mention.anaphor_particle() != Some(AnaphorParticle::Ha) {
                continue;
            }
            if r.cascade(doc, &a, &[RuleId::SameSentenceClosest]).predicted.is_some() {
                continue;
            }
            let m2 = r.cascade(doc, &a, &RuleId::ALL);
            let m3 = r.resolve(doc, &a, MethodId::Method3Ha).map_err(|e| e.to_string())?;
            ensure(m2 == m3, || format!("{} / {}: {m2:?} vs {m3:?}", doc.doc_id, a.id()))?;
            compared += 1;
        }
    }
    ensure(compared > 0, || "nothing compared".into())?;
    Ok(format!("{compared} ha anaphors identical"))
}

fn conservation() -> Result<String, String> {
    let r = Resolver::default();
    let closing = ClosingSet::default();
    let corpora = [
        golden::golden_corpus(),
        golden::mirrored_corpus(),
        dousha::generate_corpus(&random_specs(ORACLE_SEED, 500)).map_err(|e| e.to_string())?,
    ];
    for corpus in &corpora {
        for p in AnaphorParticle::ALL {
            let prof = profile(corpus, p, &closing).map_err(|e| e.to_string())?;
            let cell_sum: u64 = prof.cells().map(|c| c.count).sum();
            ensure(cell_sum == prof.total && prof.total as usize == corpus.anaphor_count(p), || {
                format!("{p}: cells {cell_sum}, total {}, gold links {}", prof.total, corpus.anaphor_count(p))
            })?;
            for method in [MethodId::Scm, MethodId::cascade_for(p)] {
                let rep = evaluate(corpus, &r, method, p).map_err(|e| e.to_string())?;
                let by_loc: BTreeMap<_, u64> = rep.by_location.iter().map(|(&l, t)| (l, t.total)).collect();
                ensure(by_loc == prof.location_subtotals(), || format!("{method} {p}: location totals differ"))?;
            }
        }
        let text = corpus_to_string(corpus);
        let back = load_corpus_str(&text).map_err(|e| e.to_string())?;
        ensure(&back == corpus && corpus_to_string(&back) == text, || "round trip differs".into())?;
    }
    let mirrored = golden::mirrored_corpus();
    Ok(format!(
        "3 corpora; mirrored gold links ga={} ha={}",
        mirrored.anaphor_count(AnaphorParticle::Ga),
        mirrored.anaphor_count(AnaphorParticle::Ha)
    ))
}

fn distant_stat() -> Result<String, String> {
    let s = distant_particle_stat(&golden::golden_corpus(), &ClosingSet::default()).map_err(|e| e.to_string())?;
    let got = (s.distant_total, s.ha_marked);
    ensure(got == DISTANT_HAND_COUNT, || format!("got {got:?}, hand count {DISTANT_HAND_COUNT:?}"))?;
    Ok(format!("{} of {} distant referents carry ha", s.ha_marked, s.distant_total))
}

fn cli_determinism() -> Result<String, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let corpus = dir.path().join("syn.jsonl");
    let corpus = corpus.to_str().ok_or("path")?;
    let runs: [&[&str]; 5] = [
        &["generate", "--count", "200", "--seed", "11", "--out", corpus],
        &["resolve", "--in", corpus, "--format", "records"],
        &["evaluate", "--in", corpus, "--grid", "--by-location", "--by-rule"],
        &["profile", "--in", corpus],
        &["validate", "--in", corpus, "--format", "records"],
    ];
    let mut outputs = Vec::new();
    for args in runs {
        let mut first: Option<Vec<u8>> = None;
        for _ in 0..CLI_RUNS {
            let o = Command::new(env!("CARGO_BIN_EXE_dousha"))
                .args(args)
                .output()
                .map_err(|e| e.to_string())?;
            ensure(o.status.success(), || format!("{args:?} exited {:?}", o.status.code()))?;
            let bytes = if args[0] == "generate" {
                std::fs::read(corpus).map_err(|e| e.to_string())?
            } else {
                o.stdout
            };
            match &first {
                None => first = Some(bytes),
                Some(f) => ensure(f == &bytes, || format!("{args:?} output changed between runs"))?,
            }
        }
        outputs.push(first.unwrap_or_default().len());
    }
    Ok(format!("{} commands x {CLI_RUNS} runs byte-identical", outputs.len()))
}

fn main() {
    let docs = oracle_docs();
    let outcomes = [
        check("worked example", worked_example),
        check("golden mini-corpus", golden_corpus),
        check("oracle equivalence", || oracle_equivalence(&docs)),
        check("precedence containment", || precedence_containment(&docs)),
        check("conservation", conservation),
        check("distant-referent statistic", distant_stat),
        check("determinism", cli_determinism),
    ];
    let mut failed = 0;
    for o in &outcomes {
        println!("{} {}: {}", if o.pass { "PASS" } else { "FAIL" }, o.name, o.detail);
        failed += usize::from(!o.pass);
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
