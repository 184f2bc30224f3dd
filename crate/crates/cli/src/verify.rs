//! Orchestration of every verifier over a corpus, with a deterministic
//! serializable report.
//!
//! The JSON report deliberately carries no wall-clock data: two runs over
//! the same corpus spec must produce byte-identical reports.  Timing is
//! printed to stderr for humans instead.

use bowtie_core::{
    check_pm_equivalence, check_pm_jacobson_abstract, classify_spectrum,
    json::{load_str, load_value, Loaded},
    verify_cp_transfer, verify_cp_type1_family, verify_cp_type2_family, verify_cross_layer,
    verify_intersection_inclusions, verify_nil_transfer, verify_pairwise_inclusions,
    verify_pm_duplication, verify_pm_equivalence, verify_pm_jacobson, verify_pz_duplication,
    verify_pz_transfer, verify_union_inclusions, AmalgamSpectrumData, AmalgamationRing, Error,
    FamilyPolicy, LemmaReport, Limits, Result, SpectrumDataFuzzer, Verdict,
};
use serde::Serialize;

use crate::corpus::{build_corpus, shipped_specdata_fixtures, CorpusSpec};

/// Every verifier's output for one amalgamation.
#[derive(Serialize)]
pub struct InstanceReport {
    pub instance: String,
    pub reports: Vec<LemmaReport>,
    pub pass: bool,
}

/// Outcome of the seeded fuzz pass over abstract spectrum data.
#[derive(Serialize)]
pub struct FuzzReport {
    pub seed: u64,
    pub count: usize,
    pub max_elements: usize,
    /// Instances whose optional contraction-point map enabled the radical
    /// transfer check.
    pub radical_checks: usize,
    pub failures: usize,
    pub pass: bool,
}

/// Outcome for one inline document from the corpus spec.  Load or
/// validation failures land in `error` without touching other instances.
#[derive(Serialize)]
pub struct DocumentReport {
    pub name: String,
    pub kind: Option<String>,
    pub error: Option<String>,
    /// Full battery for amalgamation documents, abstract checks for
    /// spectrum-data documents, empty for plain constructions.
    pub reports: Vec<LemmaReport>,
    pub pass: bool,
}

/// The whole run.  `verdict` is the conjunction of every member verdict.
#[derive(Serialize)]
pub struct VerificationReport {
    pub corpus_rings: usize,
    pub corpus_amalgams: usize,
    pub instances: Vec<InstanceReport>,
    pub fixtures: Vec<InstanceReport>,
    pub documents: Vec<DocumentReport>,
    pub fuzz: FuzzReport,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Runs the full battery on one amalgamation.
pub fn verify_instance(
    a: AmalgamationRing,
    limits: &Limits,
    policy: &FamilyPolicy,
) -> Result<InstanceReport> {
    let c = classify_spectrum(a, limits)?;
    let mut reports = vec![
        verify_pm_equivalence(&c)?,
        verify_pm_jacobson(&c, limits)?,
        verify_union_inclusions(&c, limits, policy)?,
        verify_intersection_inclusions(&c, limits, policy)?,
        verify_pairwise_inclusions(&c)?,
        verify_cp_transfer(&c, limits, policy)?,
        verify_cp_type1_family(&c, limits, policy)?,
        verify_cp_type2_family(&c, limits, policy)?,
        verify_pz_transfer(&c, policy)?,
        verify_nil_transfer(&c, limits, policy)?,
        verify_cross_layer(&c)?,
    ];
    if c.amalgam().is_duplication() {
        reports.push(verify_pm_duplication(&c)?);
        reports.push(verify_pz_duplication(&c, policy)?);
    }
    let pass = reports.iter().all(LemmaReport::passed);
    Ok(InstanceReport {
        instance: c.amalgam().carrier().name().to_string(),
        reports,
        pass,
    })
}

/// The abstract battery: the pm equivalence always, the radical check when
/// the data carries a contraction-point map.
fn specdata_reports(d: &AmalgamSpectrumData) -> Result<Vec<LemmaReport>> {
    let mut reports = vec![check_pm_equivalence(d)?];
    if let Some(rep) = check_pm_jacobson_abstract(d)? {
        reports.push(rep);
    }
    Ok(reports)
}

fn verify_fixture(name: &str, text: &str) -> Result<InstanceReport> {
    let Loaded::SpecData(d) = load_str(text)? else {
        return Err(Error::invalid(
            "fixture",
            format!("{name} is not a spectrum-data document"),
        ));
    };
    let reports = specdata_reports(&d)?;
    let pass = reports.iter().all(LemmaReport::passed);
    Ok(InstanceReport {
        instance: name.to_string(),
        reports,
        pass,
    })
}

/// Loads and checks each inline document.  Failures are isolated: a
/// document that does not load, validate, or pass its battery yields a
/// failed entry and the remaining documents still run.
fn verify_documents(
    docs: &[serde_json::Value],
    limits: &Limits,
    policy: &FamilyPolicy,
) -> Vec<DocumentReport> {
    let failed = |name: String, kind: Option<String>, e: Error| DocumentReport {
        name,
        kind,
        error: Some(e.to_string()),
        reports: Vec::new(),
        pass: false,
    };
    docs.iter()
        .enumerate()
        .map(|(i, doc)| {
            let name = format!("document-{i}");
            match load_value(doc) {
                Err(e) => failed(name, None, e),
                Ok(Loaded::Amalgam(a)) => match verify_instance(a, limits, policy) {
                    Ok(inst) => DocumentReport {
                        name,
                        kind: Some("amalgam".into()),
                        error: None,
                        pass: inst.pass,
                        reports: inst.reports,
                    },
                    Err(e) => failed(name, Some("amalgam".into()), e),
                },
                Ok(Loaded::SpecData(d)) => match specdata_reports(&d) {
                    Ok(reports) => DocumentReport {
                        name,
                        kind: Some("specdata".into()),
                        error: None,
                        pass: reports.iter().all(LemmaReport::passed),
                        reports,
                    },
                    Err(e) => failed(name, Some("specdata".into()), e),
                },
                // Anything else loading at all means it validated.
                Ok(other) => DocumentReport {
                    name,
                    kind: Some(other.kind_name().to_string()),
                    error: None,
                    reports: Vec::new(),
                    pass: true,
                },
            }
        })
        .collect()
}

fn run_fuzz(spec: &CorpusSpec) -> Result<FuzzReport> {
    let mut fuzzer = SpectrumDataFuzzer::new(spec.fuzz.seed, spec.fuzz.max_elements);
    let mut radical_checks = 0;
    let mut failures = 0;
    for _ in 0..spec.fuzz.count {
        let d = fuzzer.next_data();
        if !check_pm_equivalence(&d)?.passed() {
            failures += 1;
        }
        if let Some(rep) = check_pm_jacobson_abstract(&d)? {
            radical_checks += 1;
            if !rep.passed() {
                failures += 1;
            }
        }
    }
    Ok(FuzzReport {
        seed: spec.fuzz.seed,
        count: spec.fuzz.count,
        max_elements: spec.fuzz.max_elements,
        radical_checks,
        failures,
        pass: failures == 0,
    })
}

/// Splits the amalgamations over worker threads and merges the reports in
/// corpus order, so the report is independent of scheduling.
fn verify_amalgams(
    amalgams: Vec<AmalgamationRing>,
    limits: &Limits,
    policy: &FamilyPolicy,
) -> Result<Vec<InstanceReport>> {
    let workers = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(8)
        .min(amalgams.len().max(1));
    let jobs: Vec<(usize, AmalgamationRing)> = amalgams.into_iter().enumerate().collect();
    let chunk = jobs.len().div_ceil(workers);
    let mut slots: Vec<Option<Result<InstanceReport>>> = Vec::new();
    slots.resize_with(jobs.len(), || None);

    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for batch in jobs.chunks(chunk.max(1)) {
            handles.push(scope.spawn(move || {
                batch
                    .iter()
                    .map(|(idx, a)| (*idx, verify_instance(a.clone(), limits, policy)))
                    .collect::<Vec<_>>()
            }));
        }
        for handle in handles {
            for (idx, outcome) in handle.join().expect("verifier worker panicked") {
                slots[idx] = Some(outcome);
            }
        }
    });

    slots
        .into_iter()
        .map(|slot| slot.expect("every instance was scheduled"))
        .collect()
}

/// Builds the corpus described by `spec` and runs everything.
pub fn run_verification(
    spec: &CorpusSpec,
    limits: &Limits,
    policy: &FamilyPolicy,
) -> Result<VerificationReport> {
    let corpus = build_corpus(spec, limits)?;
    let corpus_rings = corpus.rings.len();
    let corpus_amalgams = corpus.amalgams.len();

    let instances = verify_amalgams(corpus.amalgams, limits, policy)?;

    let mut fixtures = Vec::new();
    for (name, text) in shipped_specdata_fixtures() {
        fixtures.push(verify_fixture(name, text)?);
    }

    let documents = verify_documents(&spec.documents, limits, policy);

    let fuzz = run_fuzz(spec)?;

    let all_pass = instances.iter().all(|i| i.pass)
        && fixtures.iter().all(|f| f.pass)
        && documents.iter().all(|d| d.pass)
        && fuzz.pass;
    Ok(VerificationReport {
        corpus_rings,
        corpus_amalgams,
        instances,
        fixtures,
        documents,
        fuzz,
        verdict: if all_pass { Verdict::Pass } else { Verdict::Fail },
    })
}
