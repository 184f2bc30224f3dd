//! `bowtie` — build amalgamated algebras over finite commutative rings,
//! enumerate their prime spectra, decide spectral properties, and run the
//! verification corpus.
//!
//! Exit codes: 0 success, 1 verified statement failed, 2 bad input,
//! 3 resource cap exceeded.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::{self, ExitCode};
use std::time::Instant;

use bowtie_cli::corpus::CorpusSpec;
use bowtie_cli::verify::run_verification;
use bowtie_core::json::{
    amalgam_to_value, classified_to_value, load_str, module_to_value, poset_to_value,
    ring_to_value, specdata_to_value, Loaded,
};
use bowtie_core::{
    build_amalgam_poset, check_pm_equivalence, classify_spectrum, compactly_packed_decide,
    dot, is_pm, poset_is_pm, properly_zipped_decide, spec_of, CpProbes, Error, FamilyPolicy,
    Limits, Result,
};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "bowtie",
    version,
    about = "Exact spectra of amalgamated algebras over finite commutative rings"
)]
struct Cli {
    /// Element cap for exhaustive enumerations (overrides $BOWTIE_CAP).
    #[arg(long, global = true)]
    cap: Option<usize>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct InputArgs {
    /// Input document (JSON).
    #[arg(long)]
    input: PathBuf,

    /// Write the JSON result here instead of stdout.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse, validate, and canonically re-serialize a document.
    Build {
        #[command(flatten)]
        io: InputArgs,
    },
    /// List the prime spectrum (tagged, for amalgamations).
    Spec {
        #[command(flatten)]
        io: InputArgs,
        /// Also write a Hasse diagram in DOT format here.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Decide whether every prime lies under a unique maximal ideal.
    Pm {
        #[command(flatten)]
        io: InputArgs,
    },
    /// Decide whether the spectrum is compactly packed.
    Cp {
        #[command(flatten)]
        io: InputArgs,
        /// Cap on sampled family size over large pools.
        #[arg(long)]
        family_size: Option<usize>,
    },
    /// Decide whether the spectrum is properly zipped.
    Pz {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long)]
        family_size: Option<usize>,
    },
    /// Generate the corpus and run every verifier over it.
    Verify {
        /// Corpus spec file (JSON); defaults to the built-in corpus.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Override the fuzz seed from the corpus spec.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        family_size: Option<usize>,
        /// Write the full JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Export a Hasse diagram of the input's spectrum in DOT format.
    Export {
        /// Input document (JSON).
        #[arg(long)]
        input: PathBuf,
        /// Output path for the DOT text.
        #[arg(long)]
        dot: PathBuf,
    },
}

fn read_input(path: &Path) -> Result<Loaded> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::invalid("io", format!("cannot read {}: {e}", path.display())))?;
    load_str(&text)
}

/// Prints one line to stdout.  A closed pipe (e.g. `bowtie … | head`) ends
/// the process quietly with the conventional SIGPIPE status instead of
/// panicking mid-write.
fn print_line(text: &str) {
    if let Err(e) = writeln!(io::stdout(), "{text}") {
        if e.kind() == io::ErrorKind::BrokenPipe {
            process::exit(141);
        }
        panic!("failed printing to stdout: {e}");
    }
}

fn emit(value: &Value, target: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::invalid("io", format!("serialization failed: {e}")))?;
    match target {
        Some(path) => fs::write(path, text + "\n")
            .map_err(|e| Error::invalid("io", format!("cannot write {}: {e}", path.display()))),
        None => {
            print_line(&text);
            Ok(())
        }
    }
}

fn policy_with(family_size: Option<usize>) -> FamilyPolicy {
    let mut policy = FamilyPolicy::default();
    if let Some(k) = family_size {
        policy.max_family_size = k;
    }
    policy
}

fn canonical_value(loaded: &Loaded) -> Result<Value> {
    Ok(match loaded {
        Loaded::Ring(r) => ring_to_value(r),
        Loaded::Ideal(i) => bowtie_core::json::ideal_to_value(i),
        Loaded::Hom(f) => bowtie_core::json::hom_to_value(f),
        Loaded::Module(m) => module_to_value(m),
        Loaded::Amalgam(a) => amalgam_to_value(a),
        Loaded::Poset(p) => poset_to_value(p),
        Loaded::SpecData(d) => specdata_to_value(d),
    })
}

fn cmd_build(io: &InputArgs) -> Result<i32> {
    let loaded = read_input(&io.input)?;
    emit(&canonical_value(&loaded)?, io.json.as_deref())?;
    Ok(0)
}

/// The spectrum of the input, plus the DOT rendering when requested.
fn cmd_spec(io: &InputArgs, dot_path: Option<&Path>, limits: &Limits) -> Result<i32> {
    let loaded = read_input(&io.input)?;
    let (value, dot_text) = match &loaded {
        Loaded::Ring(r) => {
            let spec = spec_of(r, limits)?;
            let primes: Vec<Value> = spec
                .primes()
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    json!({
                        "members": p.elements(),
                        "maximal": spec.is_max(i),
                    })
                })
                .collect();
            let v = json!({
                "kind": "spectrum",
                "ring": r.name(),
                "primes": primes,
            });
            (v, dot::poset_dot(&spectrum_poset(&spec)?))
        }
        Loaded::Amalgam(a) => {
            let c = classify_spectrum(a.clone(), limits)?;
            (classified_to_value(&c), dot::classified_dot(&c))
        }
        Loaded::SpecData(d) => {
            let built = build_amalgam_poset(d)?;
            let p = built.poset();
            let nodes: Vec<Value> = (0..p.len())
                .map(|i| {
                    json!({
                        "label": p.label(i),
                        "maximal": p.is_maximal(i),
                    })
                })
                .collect();
            let v = json!({ "kind": "spectrum", "nodes": nodes });
            (v, dot::amalgam_poset_dot(&built))
        }
        Loaded::Poset(p) => {
            let nodes: Vec<Value> = (0..p.len())
                .map(|i| json!({ "label": p.label(i), "maximal": p.is_maximal(i) }))
                .collect();
            (json!({ "kind": "spectrum", "nodes": nodes }), dot::poset_dot(p))
        }
        other => {
            return Err(Error::invalid(
                "input",
                format!("`spec` expects a ring, amalgam, poset, or specdata document, got {}", other.kind_name()),
            ))
        }
    };
    emit(&value, io.json.as_deref())?;
    if let Some(path) = dot_path {
        fs::write(path, dot_text)
            .map_err(|e| Error::invalid("io", format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(0)
}

fn cmd_pm(io: &InputArgs, limits: &Limits) -> Result<i32> {
    let loaded = read_input(&io.input)?;
    let value = match &loaded {
        Loaded::Ring(r) => {
            let out = is_pm(&spec_of(r, limits)?);
            json!({ "kind": "pm", "instance": r.name(), "pm": out.holds, "witness": out.witness })
        }
        Loaded::Amalgam(a) => {
            let c = classify_spectrum(a.clone(), limits)?;
            let rep = bowtie_core::verify_pm_equivalence(&c)?;
            let out = is_pm(c.carrier_spec());
            json!({
                "kind": "pm",
                "instance": c.amalgam().carrier().name(),
                "pm": out.holds,
                "witness": out.witness,
                "equivalence": rep,
            })
        }
        Loaded::SpecData(d) => {
            let built = build_amalgam_poset(d)?;
            let out = poset_is_pm(built.poset());
            let witness = out.witness.map(|(q, m1, m2)| {
                json!({
                    "prime": built.poset().label(q),
                    "maximals": [built.poset().label(m1), built.poset().label(m2)],
                })
            });
            let rep = check_pm_equivalence(d)?;
            json!({
                "kind": "pm",
                "instance": "specdata",
                "pm": out.holds,
                "witness": witness,
                "equivalence": rep,
            })
        }
        other => {
            return Err(Error::invalid(
                "input",
                format!("`pm` expects a ring, amalgam, or specdata document, got {}", other.kind_name()),
            ))
        }
    };
    emit(&value, io.json.as_deref())?;
    Ok(0)
}

enum Packing {
    Cp,
    Pz,
}

fn cmd_packing(
    which: Packing,
    io: &InputArgs,
    family_size: Option<usize>,
    limits: &Limits,
) -> Result<i32> {
    let loaded = read_input(&io.input)?;
    let policy = policy_with(family_size);
    let (name, spec) = match &loaded {
        Loaded::Ring(r) => (r.name().to_string(), spec_of(r, limits)?),
        Loaded::Amalgam(a) => {
            let c = classify_spectrum(a.clone(), limits)?;
            (
                c.amalgam().carrier().name().to_string(),
                c.carrier_spec().clone(),
            )
        }
        other => {
            return Err(Error::invalid(
                "input",
                format!(
                    "`{}` expects a ring or amalgam document, got {}",
                    match which {
                        Packing::Cp => "cp",
                        Packing::Pz => "pz",
                    },
                    other.kind_name()
                ),
            ))
        }
    };
    let value = match which {
        Packing::Cp => {
            let region: Vec<usize> = (0..spec.len()).collect();
            let out = compactly_packed_decide(&spec, &region, CpProbes::AllIdeals, limits, &policy)?;
            json!({
                "kind": "cp",
                "instance": name,
                "compactly_packed": out.holds,
                "families_examined": out.families_examined,
                "witness": out.witness,
                "trivial_at_finite_scale": true,
            })
        }
        Packing::Pz => {
            let out = properly_zipped_decide(&spec, &policy);
            json!({
                "kind": "pz",
                "instance": name,
                "properly_zipped": out.holds,
                "families_examined": out.families_examined,
                "witness": out.witness,
                "trivial_at_finite_scale": true,
            })
        }
    };
    emit(&value, io.json.as_deref())?;
    Ok(0)
}

fn cmd_verify(
    corpus: Option<&Path>,
    seed: Option<u64>,
    family_size: Option<usize>,
    json_path: Option<&Path>,
    limits: &Limits,
) -> Result<i32> {
    let mut spec = match corpus {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| {
                Error::invalid("io", format!("cannot read {}: {e}", path.display()))
            })?;
            CorpusSpec::from_json(&text)?
        }
        None => CorpusSpec::default(),
    };
    if let Some(seed) = seed {
        spec.fuzz.seed = seed;
    }
    let policy = policy_with(family_size);

    let started = Instant::now();
    let report = run_verification(&spec, limits, &policy)?;
    let elapsed = started.elapsed();

    print_line(&format!(
        "corpus: {} rings, {} amalgamations",
        report.corpus_rings, report.corpus_amalgams
    ));
    for inst in &report.instances {
        if !inst.pass {
            for rep in inst.reports.iter().filter(|r| !r.passed()) {
                print_line(&format!(
                    "FAIL {} on {}: {:?}",
                    rep.check, inst.instance, rep.counterexample
                ));
            }
        }
    }
    let checks: usize = report.instances.iter().map(|i| i.reports.len()).sum();
    print_line(&format!(
        "amalgamations: {}/{} instances pass ({checks} reports)",
        report.instances.iter().filter(|i| i.pass).count(),
        report.instances.len(),
    ));
    for fixture in &report.fixtures {
        print_line(&format!(
            "fixture {}: {}",
            fixture.instance,
            if fixture.pass { "pass" } else { "FAIL" }
        ));
    }
    for doc in &report.documents {
        let kind = doc.kind.as_deref();
        print_line(&match (&doc.error, doc.pass) {
            (Some(e), _) => {
                format!("{} ({}): FAIL — {e}", doc.name, kind.unwrap_or("unreadable"))
            }
            (None, true) => format!("{} ({}): pass", doc.name, kind.unwrap_or("?")),
            (None, false) => format!("{} ({}): FAIL", doc.name, kind.unwrap_or("?")),
        });
    }
    print_line(&format!(
        "fuzz: {} instances (seed {}, up to {} elements), {} radical checks, {} failures",
        report.fuzz.count,
        report.fuzz.seed,
        report.fuzz.max_elements,
        report.fuzz.radical_checks,
        report.fuzz.failures
    ));
    print_line(&format!(
        "verdict: {}",
        if report.passed() { "pass" } else { "FAIL" }
    ));
    // Timing stays out of the JSON report so reruns are byte-identical.
    eprintln!("elapsed: {:.1}s", elapsed.as_secs_f64());

    if let Some(path) = json_path {
        let text = serde_json::to_string_pretty(&report)
            .map_err(|e| Error::invalid("io", format!("serialization failed: {e}")))?;
        fs::write(path, text + "\n")
            .map_err(|e| Error::invalid("io", format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(if report.passed() { 0 } else { 1 })
}

/// Inclusion order of a ring spectrum as an abstract poset (for rendering).
fn spectrum_poset(spec: &bowtie_core::SpectrumList) -> Result<bowtie_core::SpectralPoset> {
    let labels: Vec<String> = spec.primes().iter().map(|p| p.to_string()).collect();
    let mut le = Vec::with_capacity(spec.len() * spec.len());
    for i in 0..spec.len() {
        for j in 0..spec.len() {
            le.push(spec.prime(i).members().is_subset(spec.prime(j).members()));
        }
    }
    bowtie_core::SpectralPoset::new(labels, le)
}

fn cmd_export(input: &Path, dot_path: &Path, limits: &Limits) -> Result<i32> {
    let loaded = read_input(input)?;
    let text = match &loaded {
        Loaded::Amalgam(a) => dot::classified_dot(&classify_spectrum(a.clone(), limits)?),
        Loaded::SpecData(d) => dot::amalgam_poset_dot(&build_amalgam_poset(d)?),
        Loaded::Poset(p) => dot::poset_dot(p),
        Loaded::Ring(r) => dot::poset_dot(&spectrum_poset(&spec_of(r, limits)?)?),
        other => {
            return Err(Error::invalid(
                "input",
                format!("`export` expects a ring, amalgam, poset, or specdata document, got {}", other.kind_name()),
            ))
        }
    };
    fs::write(dot_path, text)
        .map_err(|e| Error::invalid("io", format!("cannot write {}: {e}", dot_path.display())))?;
    Ok(0)
}

fn effective_limits(cap_flag: Option<usize>) -> Result<Limits> {
    if let Some(cap) = cap_flag {
        return Ok(Limits::with_cap(cap));
    }
    match std::env::var("BOWTIE_CAP") {
        Ok(text) => {
            let cap: usize = text.parse().map_err(|_| {
                Error::invalid("input", format!("BOWTIE_CAP must be an integer, got {text:?}"))
            })?;
            Ok(Limits::with_cap(cap))
        }
        Err(_) => Ok(Limits::default()),
    }
}

fn run(cli: Cli) -> Result<i32> {
    let limits = effective_limits(cli.cap)?;
    match &cli.cmd {
        Cmd::Build { io } => cmd_build(io),
        Cmd::Spec { io, dot } => cmd_spec(io, dot.as_deref(), &limits),
        Cmd::Pm { io } => cmd_pm(io, &limits),
        Cmd::Cp { io, family_size } => cmd_packing(Packing::Cp, io, *family_size, &limits),
        Cmd::Pz { io, family_size } => cmd_packing(Packing::Pz, io, *family_size, &limits),
        Cmd::Verify {
            corpus,
            seed,
            family_size,
            json,
        } => cmd_verify(
            corpus.as_deref(),
            *seed,
            *family_size,
            json.as_deref(),
            &limits,
        ),
        Cmd::Export { input, dot } => cmd_export(input, dot, &limits),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::TheoremViolation(_) => 1,
                Error::CapExceeded { .. } => 3,
                Error::Invalid { .. } | Error::AmbientMismatch(_) => 2,
            };
            ExitCode::from(code)
        }
    }
}
