//! The acceptance gate: ten independently checkable criteria over the
//! default corpus, the shipped fixtures, and the seeded fuzzer.  The
//! target runs without the libtest harness so that exactly one
//! `criterion NN <name>: pass|FAIL` line prints per criterion; the
//! process exits nonzero when any criterion fails.

use std::any::Any;
use std::fs;
use std::panic;
use std::process::{self, Command};
use std::time::{Duration, Instant};

use bowtie_cli::corpus::{build_corpus, shipped_specdata_fixtures, CorpusSpec};
use bowtie_core::json::{load_str, Loaded};
use bowtie_core::{
    build_amalgam_poset, check_pm_equivalence, classify_spectrum, extract_spectrum_data, is_pm,
    lift_type1, lift_type2, max_classify, max_cover_count, max_cover_count_abstract, poset_is_pm,
    verify_cp_transfer, verify_cp_type1_family, verify_cp_type2_family, verify_cross_layer,
    verify_intersection_inclusions, verify_nil_transfer, verify_pairwise_inclusions,
    verify_pm_duplication, verify_pm_jacobson, verify_pm_trivial_extension, verify_pz_duplication,
    verify_pz_transfer, verify_union_inclusions, AmalgamSpectrumData, Bitset, ClassifiedAmalgam,
    FamilyPolicy, FiniteModule, LemmaReport, Limits, SpectrumDataFuzzer,
};
use once_cell::sync::Lazy;

struct Prepared {
    classified: Vec<ClassifiedAmalgam>,
    /// Wall time to generate the corpus and classify every spectrum.
    build_time: Duration,
}

static PREPARED: Lazy<Prepared> = Lazy::new(|| {
    let started = Instant::now();
    let corpus = build_corpus(&CorpusSpec::default(), &Limits::default())
        .expect("default corpus builds");
    let classified: Vec<ClassifiedAmalgam> = corpus
        .amalgams
        .into_iter()
        .map(|a| classify_spectrum(a, &Limits::default()).expect("classification succeeds"))
        .collect();
    Prepared {
        classified,
        build_time: started.elapsed(),
    }
});

fn main() {
    let criteria: &[(&str, fn())] = &[
        ("spectrum-description", criterion_01_spectrum_description),
        ("inclusion-lemma-suites", criterion_02_inclusion_lemma_suites),
        ("pm-counting-concrete", criterion_03_pm_counting_concrete),
        (
            "pm-counting-abstract-fuzz",
            criterion_04_pm_counting_abstract_fuzz,
        ),
        ("non-pm-fixture", criterion_05_non_pm_fixture),
        ("maximal-region-fixture", criterion_06_maximal_region_fixture),
        ("specializations", criterion_07_specializations),
        ("packing-transfer", criterion_08_packing_transfer),
        ("cross-layer-isomorphism", criterion_09_cross_layer_isomorphism),
        ("deterministic-reports", criterion_10_deterministic_reports),
    ];
    // The default hook would splatter backtraces between the criterion
    // lines; failures are reported through the lines themselves.
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0usize;
    for (i, &(name, run)) in criteria.iter().enumerate() {
        match panic::catch_unwind(run) {
            Ok(()) => println!("criterion {:02} {name}: pass", i + 1),
            Err(payload) => {
                failed += 1;
                println!(
                    "criterion {:02} {name}: FAIL — {}",
                    i + 1,
                    panic_message(payload.as_ref())
                );
            }
        }
    }
    let _ = panic::take_hook();
    if failed > 0 {
        eprintln!("{failed} of {} criteria failed", criteria.len());
        process::exit(1);
    }
}

fn panic_message(payload: &(dyn Any + Send)) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        (*s).to_string()
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else {
        "non-string panic payload".to_string()
    }
}

/// Panics with `detail` when a criterion's aggregate check fails; `main`
/// turns the panic into that criterion's FAIL line.
fn gate(ok: bool, detail: &str) {
    assert!(ok, "{detail}");
}

fn report_ok(rep: &LemmaReport) -> bool {
    rep.passed() && rep.counterexample.is_none()
}

/// Brute-forced carrier primes equal the lift/trace description, and the
/// maximal ideals match their description, on every corpus instance.
fn criterion_01_spectrum_description() {
    let prepared = &*PREPARED;
    let started = Instant::now();

    let mut ok = prepared.classified.len() >= 50;
    let mut detail = format!("{} corpus amalgamations (need ≥ 50)", prepared.classified.len());
    'outer: for c in &prepared.classified {
        let a = c.amalgam();
        let mut expected: Vec<Bitset> = Vec::new();
        for p in c.spec_r().primes() {
            expected.push(lift_type1(a, p).expect("lift is prime").members().clone());
        }
        for &qi in c.type2_sources() {
            expected.push(
                lift_type2(a, c.spec_s().prime(qi))
                    .expect("trace is prime")
                    .members()
                    .clone(),
            );
        }
        expected.sort();
        let mut brute: Vec<Bitset> = c
            .carrier_spec()
            .primes()
            .iter()
            .map(|p| p.members().clone())
            .collect();
        brute.sort();
        if expected != brute {
            ok = false;
            detail = format!("{}: prime lists differ", a.carrier().name());
            break 'outer;
        }

        // The maximal description; `max_classify` errors on any mismatch.
        match max_classify(c) {
            Ok(tagged) => {
                if tagged.len() != c.carrier_spec().maximal_indices().len() {
                    ok = false;
                    detail = format!("{}: maximal counts differ", a.carrier().name());
                    break 'outer;
                }
            }
            Err(e) => {
                ok = false;
                detail = format!("{}: {e}", a.carrier().name());
                break 'outer;
            }
        }
    }

    let total = prepared.build_time + started.elapsed();
    if ok && total >= Duration::from_secs(30) {
        ok = false;
        detail = format!("took {total:?} (budget 30s)");
    }
    gate(ok, &detail);
}

/// The union / intersection / pairwise-inclusion suites pass exhaustively
/// (full power set; every pool here is ≤ 12 primes) with zero
/// counterexamples.
fn criterion_02_inclusion_lemma_suites() {
    let prepared = &*PREPARED;
    let limits = Limits::default();
    let policy = FamilyPolicy::default();

    let mut ok = true;
    let mut detail = String::new();
    for c in &prepared.classified {
        let pools_small = c.carrier_spec().len() <= policy.exhaustive_threshold
            && c.spec_r().len() <= policy.exhaustive_threshold
            && c.spec_s().len() <= policy.exhaustive_threshold;
        if !pools_small {
            ok = false;
            detail = format!("{}: a pool exceeds the exhaustive threshold", c.amalgam().carrier().name());
            break;
        }
        let reports = [
            verify_union_inclusions(c, &limits, &policy).unwrap(),
            verify_intersection_inclusions(c, &limits, &policy).unwrap(),
            verify_pairwise_inclusions(c).unwrap(),
        ];
        if let Some(bad) = reports.iter().find(|r| !report_ok(r)) {
            ok = false;
            detail = format!(
                "{} on {}: {:?}",
                bad.check,
                bad.instance,
                bad.counterexample
            );
            break;
        }
        // The family-quantified suites always range over the base families
        // at least; the pairwise suite quantifies over element pairs.
        if reports[..2].iter().any(|r| r.families_examined == 0)
            || reports.iter().any(|r| r.parts.is_empty())
        {
            ok = false;
            detail = format!("{}: a suite examined nothing", c.amalgam().carrier().name());
            break;
        }
    }
    gate(ok, &detail);
}

/// Concrete pm criterion: pm(carrier) ⟺ pm(base) ∧ every admissible trace
/// has cover count one — and at this scale the count is identically one.
fn criterion_03_pm_counting_concrete() {
    let prepared = &*PREPARED;
    let mut ok = true;
    let mut detail = String::new();
    for c in &prepared.classified {
        let lhs = is_pm(c.carrier_spec()).holds;
        let mut counts_one = true;
        for &qi in c.type2_sources() {
            let count = max_cover_count(c, qi).unwrap();
            if count.total() != 1 {
                counts_one = false;
                ok = false;
                detail = format!(
                    "{}: cover count {} + {} ≠ 1",
                    c.amalgam().carrier().name(),
                    count.term_max_s,
                    count.term_max_r
                );
                break;
            }
        }
        let rhs = is_pm(c.spec_r()).holds && counts_one;
        if lhs != rhs {
            ok = false;
            detail = format!(
                "{}: carrier pm = {lhs}, criterion = {rhs}",
                c.amalgam().carrier().name()
            );
        }
        if !ok {
            break;
        }
    }
    gate(ok, &detail);
}

/// The abstract pm equivalence holds on ten thousand seeded fuzz instances
/// with posets of at most six elements, under twenty seconds.
fn criterion_04_pm_counting_abstract_fuzz() {
    let started = Instant::now();
    let mut fuzzer = SpectrumDataFuzzer::new(0, 6);
    let mut ok = true;
    let mut detail = String::new();
    for i in 0..10_000 {
        let d = fuzzer.next_data();
        if d.pr().len() > 6 || d.ps().len() > 6 {
            ok = false;
            detail = format!("instance {i} exceeds the size bound");
            break;
        }
        let rep = check_pm_equivalence(&d).unwrap();
        if !report_ok(&rep) {
            ok = false;
            detail = format!("instance {i}: {:?}", rep.counterexample);
            break;
        }
    }
    let elapsed = started.elapsed();
    if ok && elapsed >= Duration::from_secs(20) {
        ok = false;
        detail = format!("took {elapsed:?} (budget 20s)");
    }
    gate(ok, &detail);
}

fn shipped(name: &str) -> AmalgamSpectrumData {
    let text = shipped_specdata_fixtures()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| t)
        .expect("fixture is shipped");
    match load_str(text).unwrap() {
        Loaded::SpecData(d) => d,
        other => panic!("fixture {name} loaded as {}", other.kind_name()),
    }
}

/// The three-prime fixture: maximal set {T1:0R, T2:n}, not pm with witness
/// T2:q0, and the witness's cover count splits as 1 + 1.
fn criterion_05_non_pm_fixture() {
    let d = shipped("specdata_non_pm");
    let built = build_amalgam_poset(&d).unwrap();
    let poset = built.poset();

    let mut ok = poset.len() == 3;
    let mut detail = format!("{} nodes (expected 3)", poset.len());

    if ok {
        let mut max_labels: Vec<&str> = poset
            .maximal_indices()
            .into_iter()
            .map(|i| poset.label(i))
            .collect();
        max_labels.sort_unstable();
        ok = max_labels == ["T1:0R", "T2:n"];
        detail = format!("maximal labels {max_labels:?}");
    }
    if ok {
        let verdict = poset_is_pm(poset);
        ok = !verdict.holds
            && verdict
                .witness
                .is_some_and(|(q, _, _)| poset.label(q) == "T2:q0");
        detail = format!("pm verdict {:?}", poset_is_pm(poset));
    }
    if ok {
        let count = max_cover_count_abstract(&d, 0).unwrap();
        ok = count.term_max_s == 1 && count.term_max_r == 1;
        detail = format!("cover count {} + {}", count.term_max_s, count.term_max_r);
    }
    gate(ok, &detail);
}

/// The maximal-region fixture: every admissible source counts 1 + 0, the
/// carrier is pm, and extracting from the concrete Z6 duplication along (2)
/// reproduces the identical abstract data.
fn criterion_06_maximal_region_fixture() {
    let d = shipped("specdata_dup_maximal_pm");
    let built = build_amalgam_poset(&d).unwrap();

    let mut ok = true;
    let mut detail = String::new();
    for q in d.type2_sources() {
        let count = max_cover_count_abstract(&d, q).unwrap();
        if count.term_max_s != 1 || count.term_max_r != 0 {
            ok = false;
            detail = format!(
                "source {}: count {} + {}",
                d.ps().label(q),
                count.term_max_s,
                count.term_max_r
            );
        }
    }
    if ok {
        ok = poset_is_pm(built.poset()).holds;
        detail = "carrier poset is not pm".into();
    }

    if ok {
        let concrete = bowtie_cli::corpus::z6_duplication_example().unwrap();
        let c = classify_spectrum(concrete, &Limits::default()).unwrap();
        let e = extract_spectrum_data(&c).unwrap();
        let same_shape = e.pr().len() == d.pr().len()
            && e.ps().len() == d.ps().len()
            && e.vj() == d.vj()
            && e.kappa() == d.kappa();
        let same_pr_order = (0..d.pr().len())
            .all(|i| (0..d.pr().len()).all(|j| d.pr().le(i, j) == e.pr().le(i, j)));
        let same_ps_order = (0..d.ps().len())
            .all(|i| (0..d.ps().len()).all(|j| d.ps().le(i, j) == e.ps().le(i, j)));
        let same_c = (0..d.ps().len()).all(|q| {
            (0..d.pr().len()).all(|p| d.contracts(q, p) == e.contracts(q, p))
        });
        ok = same_shape && same_pr_order && same_ps_order && same_c;
        detail = "extracted data differs from the fixture".into();
    }
    gate(ok, &detail);
}

/// Duplication, radical-region, and trivial-extension specializations hold
/// on every applicable instance, with their hypotheses computed rather than
/// assumed.
fn criterion_07_specializations() {
    let prepared = &*PREPARED;
    let limits = Limits::default();

    let mut ok = true;
    let mut detail = String::new();

    let mut duplications = 0usize;
    let mut radical_holds = 0usize;
    let mut radical_fails = 0usize;
    for c in &prepared.classified {
        if c.amalgam().is_duplication() {
            duplications += 1;
            let rep = verify_pm_duplication(c).unwrap();
            if !report_ok(&rep) {
                ok = false;
                detail = format!("duplication {}: {:?}", rep.instance, rep.counterexample);
                break;
            }
        }
        let rep = verify_pm_jacobson(c, &limits).unwrap();
        let noted = rep
            .hypotheses
            .iter()
            .find(|h| h.name == "j-inside-jacobson");
        match noted {
            Some(h) if h.holds => radical_holds += 1,
            Some(_) => radical_fails += 1,
            None => {
                ok = false;
                detail = format!("{}: radical hypothesis not recorded", rep.instance);
                break;
            }
        }
        if !report_ok(&rep) {
            ok = false;
            detail = format!("radical check {}: {:?}", rep.instance, rep.counterexample);
            break;
        }
    }

    if ok && duplications == 0 {
        ok = false;
        detail = "no duplications in the corpus".into();
    }
    // The radical hypothesis must actually split the corpus: the check is
    // conditional, not vacuous, and not universal.
    if ok && (radical_holds == 0 || radical_fails == 0) {
        ok = false;
        detail = format!("radical hypothesis never splits ({radical_holds} hold / {radical_fails} fail)");
    }

    if ok {
        for n in 2..=6 {
            let zn = bowtie_core::make_zn(n).unwrap();
            let m = FiniteModule::regular(&zn);
            let rep = verify_pm_trivial_extension(&zn, &m, &limits).unwrap();
            let squared = rep
                .hypotheses
                .iter()
                .any(|h| h.name == "j-squares-to-zero" && h.holds);
            if !report_ok(&rep) || !squared {
                ok = false;
                detail = format!("trivial extension over Z{n}: {:?}", rep.counterexample);
                break;
            }
        }
    }
    gate(ok, &detail);
}

/// Compactly-packed and properly-zipped transfer, the family reductions,
/// and the radical transfer all pass; every report carries the
/// finite-scale-triviality flag and none claims a counterexample.
fn criterion_08_packing_transfer() {
    let prepared = &*PREPARED;
    let limits = Limits::default();
    let policy = FamilyPolicy::default();

    let mut ok = true;
    let mut detail = String::new();
    'outer: for c in &prepared.classified {
        let mut reports = vec![
            verify_cp_transfer(c, &limits, &policy).unwrap(),
            verify_cp_type1_family(c, &limits, &policy).unwrap(),
            verify_cp_type2_family(c, &limits, &policy).unwrap(),
            verify_pz_transfer(c, &policy).unwrap(),
            verify_nil_transfer(c, &limits, &policy).unwrap(),
        ];
        if c.amalgam().is_duplication() {
            reports.push(verify_pz_duplication(c, &policy).unwrap());
        }
        for rep in &reports {
            if !report_ok(rep) {
                ok = false;
                detail = format!("{} on {}: {:?}", rep.check, rep.instance, rep.counterexample);
                break 'outer;
            }
            if !rep.trivial_at_finite_scale {
                ok = false;
                detail = format!(
                    "{} on {}: finite-scale flag missing",
                    rep.check, rep.instance
                );
                break 'outer;
            }
        }
    }
    gate(ok, &detail);
}

/// For every corpus amalgamation, the abstract poset built from extracted
/// data is order-isomorphic (through the type tags) to the brute-forced
/// inclusion poset of the carrier.
fn criterion_09_cross_layer_isomorphism() {
    let prepared = &*PREPARED;
    let mut ok = prepared.classified.len() >= 50;
    let mut detail = format!("{} instances", prepared.classified.len());
    for c in &prepared.classified {
        let rep = verify_cross_layer(c).unwrap();
        if !report_ok(&rep) {
            ok = false;
            detail = format!("{}: {:?}", rep.instance, rep.counterexample);
            break;
        }
    }
    gate(ok, &detail);
}

/// Two `bowtie verify` runs with the same corpus spec and seed emit
/// byte-identical JSON reports.
fn criterion_10_deterministic_reports() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("corpus.json");
    fs::write(
        &spec,
        r#"{
            "zn": [2, 3, 4, 5, 6, 7, 8, 9, 10],
            "product_pairs": [[2, 2], [2, 3]],
            "quotient_bases": [12],
            "trivial_extension_max": 4,
            "amalgam_zn_max": 10,
            "amalgam_products": true,
            "carrier_cap": 100,
            "fuzz": { "seed": 0, "count": 1000, "max_elements": 6 }
        }"#,
    )
    .unwrap();

    let mut outputs = Vec::new();
    for run in 0..2 {
        let json = dir.path().join(format!("report{run}.json"));
        // Capture the child's chatter so the gate prints only its own lines.
        let out = Command::new(env!("CARGO_BIN_EXE_bowtie"))
            .env_remove("BOWTIE_CAP")
            .args(["verify", "--corpus"])
            .arg(&spec)
            .args(["--seed", "0", "--json"])
            .arg(&json)
            .output()
            .unwrap();
        assert!(out.status.success(), "verify run {run} failed");
        outputs.push(fs::read(&json).unwrap());
    }
    let ok = outputs[0] == outputs[1] && !outputs[0].is_empty();
    gate(ok, "reports differ between identical runs");
}
