//! Mechanical verifiers for spectral transfer along an amalgamation.
//!
//! Each `verify_*` function checks one fact about how an order/topology
//! property of prime spectra moves between `R`, `S`, and the carrier
//! `R ⋈^f J`, by exhaustive (or policy-sampled) enumeration over a
//! [`ClassifiedAmalgam`].  Results come back as a [`LemmaReport`]: a named
//! list of sub-claims with pass/fail verdicts, a first counterexample when
//! something fails, and computed notes about side conditions.
//!
//! The facts covered:
//!
//! * unions — when a prime of the carrier lies in a union of primes
//!   (`verify_union_inclusions`), intersections — when it contains an
//!   intersection (`verify_intersection_inclusions`), and the pairwise
//!   special cases (`verify_pairwise_inclusions`);
//! * the pm property (every prime below a unique maximal ideal): the
//!   carrier is pm exactly when `R` is pm and every prime `q` of `S` off
//!   `V(J)` has combined cover count one (`verify_pm_equivalence`,
//!   [`max_cover_count`]), with the duplication, Jacobson-radical, and
//!   trivial-extension special cases;
//! * compact packing (an ideal inside a union of primes from a region lies
//!   inside one of them) and proper zipping (a prime over an intersection
//!   of primes is over one of them): `verify_cp_transfer`,
//!   `verify_pz_transfer`, the lift-family packings, and the nilpotent-`J`
//!   case `verify_nil_transfer`.
//!
//! A note on scale: over finite rings every family of primes is finite, so
//! prime avoidance makes compact packing and proper zipping hold outright,
//! and zero-dimensionality makes every ring pm.  The side conditions some
//! of these facts carry in general ("`f` surjective", "the off-`V(J)`
//! region compactly packed") are therefore *computed and recorded* as
//! [`HypothesisNote`]s rather than assumed, biconditionals are tested in
//! both directions unconditionally, and each report carries a
//! `trivial_at_finite_scale` flag (computed from zero-dimensionality, never
//! assumed) so downstream consumers know when a pass is structural.  The
//! abstract poset layer (`crate::poset`) exercises the non-degenerate
//! directions of the pm equivalence on synthetic spectra where they can
//! actually fail.

use serde::Serialize;

use crate::amalgam::{classify_spectrum, trivial_extension_as_amalgam, ClassifiedAmalgam};
use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::hom::preimage_ideal;
use crate::ideal::{
    enumerate_ideals, ideal_intersect, ideal_sum, jacobson, nilradical, IdealSet, SpectrumList,
};
use crate::limits::{FamilyPolicy, Limits};
use crate::module::FiniteModule;
use crate::ring::FiniteRing;
use std::sync::Arc;

/// Outcome of a single checked claim.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// One named sub-claim of a report.
#[derive(Clone, Debug, Serialize)]
pub struct PartVerdict {
    pub name: String,
    pub verdict: Verdict,
}

/// A side condition that was computed (never assumed) on the instance.
#[derive(Clone, Debug, Serialize)]
pub struct HypothesisNote {
    pub name: String,
    pub holds: bool,
}

/// First falsifying witness encountered by a failing part.
#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub part: String,
    pub detail: String,
}

/// The result of one verifier run on one instance.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    /// Which verifier produced this.
    pub check: &'static str,
    /// Human-readable instance name (usually the carrier ring).
    pub instance: String,
    pub parts: Vec<PartVerdict>,
    /// How many prime families the policy generated for this run.
    pub families_examined: usize,
    pub verdict: Verdict,
    pub counterexample: Option<Counterexample>,
    /// True when zero-dimensionality alone already forces the conclusion.
    pub trivial_at_finite_scale: bool,
    pub hypotheses: Vec<HypothesisNote>,
}

impl LemmaReport {
    pub(crate) fn new(check: &'static str, instance: impl Into<String>) -> Self {
        LemmaReport {
            check,
            instance: instance.into(),
            parts: Vec::new(),
            families_examined: 0,
            verdict: Verdict::Pass,
            counterexample: None,
            trivial_at_finite_scale: false,
            hypotheses: Vec::new(),
        }
    }

    pub(crate) fn note(&mut self, name: impl Into<String>, holds: bool) {
        self.hypotheses.push(HypothesisNote {
            name: name.into(),
            holds,
        });
    }

    /// Records a single already-decided claim.
    pub(crate) fn record_part(
        &mut self,
        name: &'static str,
        ok: bool,
        detail: impl FnOnce() -> String,
    ) {
        let mut acc = PartAcc::new(name);
        acc.check(ok, detail);
        acc.commit(self);
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Accumulates one lemma part over many probes, keeping the first failure.
struct PartAcc {
    name: &'static str,
    ok: bool,
    detail: Option<String>,
}

impl PartAcc {
    fn new(name: &'static str) -> Self {
        PartAcc {
            name,
            ok: true,
            detail: None,
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        if !ok && self.ok {
            self.ok = false;
            self.detail = Some(detail());
        }
    }

    fn commit(self, rep: &mut LemmaReport) {
        rep.parts.push(PartVerdict {
            name: self.name.to_string(),
            verdict: if self.ok { Verdict::Pass } else { Verdict::Fail },
        });
        if !self.ok {
            rep.verdict = Verdict::Fail;
            if rep.counterexample.is_none() {
                rep.counterexample = Some(Counterexample {
                    part: self.name.to_string(),
                    detail: self.detail.unwrap_or_default(),
                });
            }
        }
    }
}

/// Whether every prime of the spectrum is maximal.
fn zero_dimensional(spec: &SpectrumList) -> bool {
    (0..spec.len()).all(|i| spec.is_max(i))
}

fn union_at(spec: &SpectrumList, positions: &[usize]) -> Bitset {
    let mut acc = spec.prime(positions[0]).members().clone();
    for &i in &positions[1..] {
        acc.union_with(spec.prime(i).members());
    }
    acc
}

fn intersection_at(spec: &SpectrumList, positions: &[usize]) -> Bitset {
    let mut acc = spec.prime(positions[0]).members().clone();
    for &i in &positions[1..] {
        acc.intersect_with(spec.prime(i).members());
    }
    acc
}

/// Carrier-spectrum positions of the type-1 lifts, indexed by `spec_r`.
fn type1_positions(c: &ClassifiedAmalgam) -> Vec<usize> {
    (0..c.spec_r().len()).map(|i| c.type1_position(i)).collect()
}

/// Carrier-spectrum positions of the type-2 traces, aligned with
/// `type2_sources`.
fn type2_positions(c: &ClassifiedAmalgam) -> Vec<usize> {
    c.type2_sources()
        .iter()
        .map(|&q| c.type2_position(q))
        .collect()
}

/// `f⁻¹(qᵢ + J)` for each type-2 source, aligned with `type2_sources`.
fn pulled_sources(c: &ClassifiedAmalgam) -> Result<Vec<IdealSet>> {
    let f = c.amalgam().hom();
    let j = c.amalgam().ideal_j();
    c.type2_sources()
        .iter()
        .map(|&qi| preimage_ideal(f, &ideal_sum(c.spec_s().prime(qi), j)?))
        .collect()
}

// ---------------------------------------------------------------------------
// pm: every prime under a unique maximal ideal
// ---------------------------------------------------------------------------

/// Whether a spectrum has the pm property, with a violating triple
/// `(prime, maximal, maximal)` when it does not.
#[derive(Clone, Debug, Serialize)]
pub struct PmOutcome {
    pub holds: bool,
    pub witness: Option<(usize, usize, usize)>,
}

pub fn is_pm(spectrum: &SpectrumList) -> PmOutcome {
    let maxima = spectrum.maximal_indices();
    for i in 0..spectrum.len() {
        let over: Vec<usize> = maxima
            .iter()
            .copied()
            .filter(|&m| {
                spectrum
                    .prime(i)
                    .members()
                    .is_subset(spectrum.prime(m).members())
            })
            .collect();
        debug_assert!(!over.is_empty(), "a prime with no maximal ideal above it");
        if over.len() > 1 {
            return PmOutcome {
                holds: false,
                witness: Some((i, over[0], over[1])),
            };
        }
    }
    PmOutcome {
        holds: true,
        witness: None,
    }
}

/// The two-term census of maximal ideals over the trace of `q`: maximal
/// ideals of `S` containing `q` but not `J`, and maximal ideals of `R`
/// containing `f⁻¹(q + J)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MaxCoverCount {
    pub term_max_s: usize,
    pub term_max_r: usize,
}

impl MaxCoverCount {
    pub fn total(self) -> usize {
        self.term_max_s + self.term_max_r
    }
}

/// Computes the cover count for `spec_s[q_idx]`, which must not contain
/// `J`.
pub fn max_cover_count(c: &ClassifiedAmalgam, q_idx: usize) -> Result<MaxCoverCount> {
    if c.vj().contains(&q_idx) {
        return Err(Error::invalid(
            "cover-count",
            format!(
                "prime {} contains J; only off-V(J) primes have a cover count",
                c.spec_s().prime(q_idx)
            ),
        ));
    }
    let spec_s = c.spec_s();
    let q = spec_s.prime(q_idx).members();
    let term_max_s = spec_s
        .maximal_indices()
        .into_iter()
        .filter(|&n| q.is_subset(spec_s.prime(n).members()) && !c.vj().contains(&n))
        .count();
    let pulled = preimage_ideal(
        c.amalgam().hom(),
        &ideal_sum(spec_s.prime(q_idx), c.amalgam().ideal_j())?,
    )?;
    let spec_r = c.spec_r();
    let term_max_r = spec_r
        .maximal_indices()
        .into_iter()
        .filter(|&m| pulled.members().is_subset(spec_r.prime(m).members()))
        .count();
    Ok(MaxCoverCount {
        term_max_s,
        term_max_r,
    })
}

/// The carrier is pm iff `R` is pm and every off-`V(J)` prime of `S` has
/// cover count exactly one.  Also cross-checks the count against the
/// carrier: the maximal ideals over a trace are counted by the two terms,
/// and the maximal ideals over a type-1 lift biject with those over its
/// source.
pub fn verify_pm_equivalence(c: &ClassifiedAmalgam) -> Result<LemmaReport> {
    let mut rep = LemmaReport::new("pm-equivalence", c.amalgam().carrier().name());
    let spec_c = c.carrier_spec();
    let spec_r = c.spec_r();
    let t1 = type1_positions(c);
    let t2 = type2_positions(c);

    let pm_carrier = is_pm(spec_c);
    let pm_r = is_pm(spec_r);
    let counts: Vec<MaxCoverCount> = c
        .type2_sources()
        .iter()
        .map(|&qi| max_cover_count(c, qi))
        .collect::<Result<_>>()?;
    let criterion = pm_r.holds && counts.iter().all(|cc| cc.total() == 1);

    let mut equiv = PartAcc::new("carrier-pm-iff-base-pm-and-unit-cover-counts");
    equiv.check(pm_carrier.holds == criterion, || {
        format!(
            "carrier pm = {}, base pm = {}, cover counts = {:?}",
            pm_carrier.holds,
            pm_r.holds,
            counts.iter().map(|cc| cc.total()).collect::<Vec<_>>()
        )
    });
    equiv.commit(&mut rep);

    let maxima_c = spec_c.maximal_indices();
    let mut additive = PartAcc::new("trace-cover-equals-two-term-count");
    for (rank, &pos) in t2.iter().enumerate() {
        let mask = spec_c.prime(pos).members();
        let cover = maxima_c
            .iter()
            .filter(|&&m| mask.is_subset(spec_c.prime(m).members()))
            .count();
        additive.check(cover == counts[rank].total(), || {
            format!(
                "trace of {} sits under {} maximal ideals but the count gives {}",
                c.spec_s().prime(c.type2_sources()[rank]),
                cover,
                counts[rank].total()
            )
        });
    }
    additive.commit(&mut rep);

    let maxima_r = spec_r.maximal_indices();
    let mut preserved = PartAcc::new("lift-cover-equals-source-cover");
    for (i, &pos) in t1.iter().enumerate() {
        let mask = spec_c.prime(pos).members();
        let cover_up = maxima_c
            .iter()
            .filter(|&&m| mask.is_subset(spec_c.prime(m).members()))
            .count();
        let cover_down = maxima_r
            .iter()
            .filter(|&&m| spec_r.prime(i).members().is_subset(spec_r.prime(m).members()))
            .count();
        preserved.check(cover_up == cover_down, || {
            format!(
                "lift of {} sits under {} maximal ideals, its source under {}",
                spec_r.prime(i),
                cover_up,
                cover_down
            )
        });
    }
    preserved.commit(&mut rep);

    rep.trivial_at_finite_scale = zero_dimensional(spec_c) && zero_dimensional(spec_r);
    Ok(rep)
}

/// For a duplication (`S = R`, `f = id`) the carrier is pm iff `R` is,
/// because the two count terms together census *all* maximal ideals over
/// `q`.
pub fn verify_pm_duplication(c: &ClassifiedAmalgam) -> Result<LemmaReport> {
    if !c.amalgam().is_duplication() {
        return Err(Error::invalid(
            "verifier",
            "pm duplication check requires S = R and f = id",
        ));
    }
    let mut rep = LemmaReport::new("pm-duplication", c.amalgam().carrier().name());
    let pm_carrier = is_pm(c.carrier_spec());
    let pm_r = is_pm(c.spec_r());

    let mut equiv = PartAcc::new("duplication-pm-iff-base-pm");
    equiv.check(pm_carrier.holds == pm_r.holds, || {
        format!(
            "carrier pm = {}, base pm = {}",
            pm_carrier.holds, pm_r.holds
        )
    });
    equiv.commit(&mut rep);

    let spec_r = c.spec_r();
    let maxima = spec_r.maximal_indices();
    let mut census = PartAcc::new("two-term-count-censuses-maximals-over-source");
    for &qi in c.type2_sources() {
        let total = max_cover_count(c, qi)?.total();
        let over = maxima
            .iter()
            .filter(|&&m| {
                spec_r
                    .prime(qi)
                    .members()
                    .is_subset(spec_r.prime(m).members())
            })
            .count();
        census.check(total == over, || {
            format!(
                "count for {} gives {total}, but {over} maximal ideals contain it",
                spec_r.prime(qi)
            )
        });
    }
    census.commit(&mut rep);

    rep.trivial_at_finite_scale = zero_dimensional(c.carrier_spec());
    Ok(rep)
}

/// When `J` sits inside the Jacobson radical of `S`, the carrier is pm iff
/// `R` is: the first count term vanishes and, for pm `R`, the second is
/// forced to one.  Unconditionally: the carrier has no type-2 *maximal*
/// ideal exactly when `J ⊆ Jac(S)`.
pub fn verify_pm_jacobson(c: &ClassifiedAmalgam, limits: &Limits) -> Result<LemmaReport> {
    let mut rep = LemmaReport::new("pm-jacobson", c.amalgam().carrier().name());
    let spec_s = c.spec_s();
    let jac = jacobson(c.amalgam().ring_s(), limits)?;
    let j_in_jac = c.amalgam().ideal_j().members().is_subset(jac.members());
    let no_type2_max = c.type2_sources().iter().all(|&qi| !spec_s.is_max(qi));

    let mut remark = PartAcc::new("no-type2-maximal-iff-j-inside-jacobson");
    remark.check(no_type2_max == j_in_jac, || {
        format!(
            "type-2 maximal ideals absent = {no_type2_max}, J inside Jacobson radical = {j_in_jac}"
        )
    });
    remark.commit(&mut rep);

    rep.note("j-inside-jacobson", j_in_jac);
    if j_in_jac {
        let pm_carrier = is_pm(c.carrier_spec());
        let pm_r = is_pm(c.spec_r());
        let mut equiv = PartAcc::new("carrier-pm-iff-base-pm");
        equiv.check(pm_carrier.holds == pm_r.holds, || {
            format!(
                "carrier pm = {}, base pm = {}",
                pm_carrier.holds, pm_r.holds
            )
        });
        equiv.commit(&mut rep);

        let mut first = PartAcc::new("first-term-vanishes");
        let mut second = PartAcc::new("second-term-is-one-for-pm-base");
        for &qi in c.type2_sources() {
            let cc = max_cover_count(c, qi)?;
            first.check(cc.term_max_s == 0, || {
                format!(
                    "{} has {} maximal ideals of S over it avoiding J",
                    spec_s.prime(qi),
                    cc.term_max_s
                )
            });
            if pm_r.holds {
                second.check(cc.term_max_r == 1, || {
                    format!(
                        "pulled-back ideal of {} lies under {} maximal ideals of R",
                        spec_s.prime(qi),
                        cc.term_max_r
                    )
                });
            }
        }
        first.commit(&mut rep);
        second.commit(&mut rep);
    }

    rep.trivial_at_finite_scale =
        zero_dimensional(c.carrier_spec()) && zero_dimensional(c.spec_r());
    Ok(rep)
}

/// The trivial extension `R ⋉ M` is pm iff `R` is.  Realized as an
/// amalgamation whose `J` squares to zero, so it has no type-2 primes at
/// all.
pub fn verify_pm_trivial_extension(
    r: &Arc<FiniteRing>,
    m: &FiniteModule,
    limits: &Limits,
) -> Result<LemmaReport> {
    let (a, _iso) = trivial_extension_as_amalgam(r, m)?;
    let j = a.ideal_j().clone();
    let s = a.ring_s().clone();
    let c = classify_spectrum(a, limits)?;
    let mut rep = LemmaReport::new("pm-trivial-extension", c.amalgam().carrier().name());

    let j_elems = j.elements();
    let squares_to_zero = j_elems
        .iter()
        .all(|&x| j_elems.iter().all(|&y| s.mul(x, y) == s.zero()));
    rep.note("j-squares-to-zero", squares_to_zero);

    let mut no_t2 = PartAcc::new("no-type2-primes");
    no_t2.check(c.type2_sources().is_empty(), || {
        format!("{} unexpected type-2 sources", c.type2_sources().len())
    });
    no_t2.commit(&mut rep);

    let pm_ext = is_pm(c.carrier_spec());
    let pm_r = is_pm(c.spec_r());
    let mut equiv = PartAcc::new("extension-pm-iff-base-pm");
    equiv.check(pm_ext.holds == pm_r.holds, || {
        format!("extension pm = {}, base pm = {}", pm_ext.holds, pm_r.holds)
    });
    equiv.commit(&mut rep);

    rep.trivial_at_finite_scale =
        zero_dimensional(c.carrier_spec()) && zero_dimensional(c.spec_r());
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Union and intersection inclusion transfer
// ---------------------------------------------------------------------------

/// How a prime of the carrier relates to unions of lifted primes.
///
/// Parts, quantified over policy families `A ⊆ Spec(R)` and
/// `B ⊆ Spec(S)∖V(J)`:
/// 1. `p' ⊆ ∪ a'` iff `p ⊆ ∪ a`;
/// 2. `q̄ ⊆ ∪ b̄` iff `q ⊆ ∪ b` (the backward direction needs either a
///    surjective hom or a compactly packed source region in general — both
///    recorded as computed notes);
/// 3. the reverse inclusions (`∪ a' ⊆ p'` iff `∪ a ⊆ p`, and likewise for
///    traces);
/// 4. `q̄ ⊆ ∪ a'` iff `f⁻¹(q + J) ⊆ ∪ a`;
/// 5. no lift `p'` ever lies in a union of traces.
pub fn verify_union_inclusions(
    c: &ClassifiedAmalgam,
    limits: &Limits,
    policy: &FamilyPolicy,
) -> Result<LemmaReport> {
    let mut rep = LemmaReport::new("union-inclusions", c.amalgam().carrier().name());
    let spec_r = c.spec_r();
    let spec_s = c.spec_s();
    let spec_c = c.carrier_spec();
    let t1 = type1_positions(c);
    let t2 = type2_positions(c);
    let pulled = pulled_sources(c)?;

    rep.note("hom-surjective", c.amalgam().hom().is_surjective());
    let region_cp = compactly_packed_decide(
        spec_s,
        c.type2_sources(),
        CpProbes::Primes,
        limits,
        policy,
    )?;
    rep.note("type2-source-region-compactly-packed", region_cp.holds);

    let fam_r = policy.families(spec_r.len());
    let fam_q = policy.families(t2.len());
    rep.families_examined = fam_r.len() + fam_q.len();

    let mut lift_union = PartAcc::new("lift-in-union-of-lifts-iff-sources");
    let mut lift_reverse = PartAcc::new("union-of-lifts-in-lift-iff-sources");
    let mut trace_in_lifts = PartAcc::new("trace-in-union-of-lifts-iff-pullback-in-sources");
    let mut no_lift_in_traces = PartAcc::new("lift-never-in-union-of-traces");

    for fam in &fam_r {
        let src_union = union_at(spec_r, fam);
        let lift_pos: Vec<usize> = fam.iter().map(|&k| t1[k]).collect();
        let up_union = union_at(spec_c, &lift_pos);
        for (p, &lift) in t1.iter().enumerate() {
            let up = spec_c.prime(lift).members().is_subset(&up_union);
            let down = spec_r.prime(p).members().is_subset(&src_union);
            lift_union.check(up == down, || {
                format!(
                    "p = {}, family {:?}: lift inclusion = {up}, source inclusion = {down}",
                    spec_r.prime(p),
                    fam
                )
            });
            let up_rev = up_union.is_subset(spec_c.prime(lift).members());
            let down_rev = src_union.is_subset(spec_r.prime(p).members());
            lift_reverse.check(up_rev == down_rev, || {
                format!(
                    "p = {}, family {:?}: lift reverse = {up_rev}, source reverse = {down_rev}",
                    spec_r.prime(p),
                    fam
                )
            });
        }
        for (rank, &pos) in t2.iter().enumerate() {
            let up = spec_c.prime(pos).members().is_subset(&up_union);
            let down = pulled[rank].members().is_subset(&src_union);
            trace_in_lifts.check(up == down, || {
                format!(
                    "q = {}, family {:?}: trace-in-lifts = {up}, pullback-in-sources = {down}",
                    spec_s.prime(c.type2_sources()[rank]),
                    fam
                )
            });
        }
    }

    let mut trace_union = PartAcc::new("trace-in-union-of-traces-iff-sources");
    let mut trace_reverse = PartAcc::new("union-of-traces-in-trace-iff-sources");
    for fam in &fam_q {
        let src_pos: Vec<usize> = fam.iter().map(|&k| c.type2_sources()[k]).collect();
        let src_union = union_at(spec_s, &src_pos);
        let trace_pos: Vec<usize> = fam.iter().map(|&k| t2[k]).collect();
        let up_union = union_at(spec_c, &trace_pos);
        for (rank, &pos) in t2.iter().enumerate() {
            let up = spec_c.prime(pos).members().is_subset(&up_union);
            let down = spec_s
                .prime(c.type2_sources()[rank])
                .members()
                .is_subset(&src_union);
            trace_union.check(up == down, || {
                format!(
                    "q = {}, family {:?}: trace inclusion = {up}, source inclusion = {down}",
                    spec_s.prime(c.type2_sources()[rank]),
                    fam
                )
            });
            let up_rev = up_union.is_subset(spec_c.prime(pos).members());
            let down_rev = src_union.is_subset(spec_s.prime(c.type2_sources()[rank]).members());
            trace_reverse.check(up_rev == down_rev, || {
                format!(
                    "q = {}, family {:?}: trace reverse = {up_rev}, source reverse = {down_rev}",
                    spec_s.prime(c.type2_sources()[rank]),
                    fam
                )
            });
        }
        for (i, &pos) in t1.iter().enumerate() {
            no_lift_in_traces.check(!spec_c.prime(pos).members().is_subset(&up_union), || {
                format!(
                    "lift of {} lies in the union of traces of family {:?}",
                    spec_r.prime(i),
                    fam
                )
            });
        }
    }

    lift_union.commit(&mut rep);
    trace_union.commit(&mut rep);
    lift_reverse.commit(&mut rep);
    trace_reverse.commit(&mut rep);
    trace_in_lifts.commit(&mut rep);
    no_lift_in_traces.commit(&mut rep);
    rep.trivial_at_finite_scale = zero_dimensional(spec_c);
    Ok(rep)
}

/// How a prime of the carrier relates to intersections of lifted primes.
///
/// Parts, quantified over policy families:
/// 1. `∩ a' ⊆ p'` iff `∩ a ⊆ p`, and 2. `p' ⊆ ∩ a'` iff `p ⊆ ∩ a`;
/// 3. `∩ b̄ ⊆ q̄` iff `∩ b ⊆ q`, and 4. `q̄ ⊆ ∩ b̄` iff `q ⊆ ∩ b`
///    (backward direction of 4 carries the same side conditions as unions,
///    recorded as notes);
/// 5. `∩ b̄ ⊆ p'` iff `f⁻¹(∩ b + J) ⊆ p`;
/// 6. no intersection of lifts ever lands inside a trace.
pub fn verify_intersection_inclusions(
    c: &ClassifiedAmalgam,
    limits: &Limits,
    policy: &FamilyPolicy,
) -> Result<LemmaReport> {
    let mut rep = LemmaReport::new("intersection-inclusions", c.amalgam().carrier().name());
    let spec_r = c.spec_r();
    let spec_s = c.spec_s();
    let spec_c = c.carrier_spec();
    let t1 = type1_positions(c);
    let t2 = type2_positions(c);
    let f = c.amalgam().hom();
    let j = c.amalgam().ideal_j();

    rep.note("hom-surjective", f.is_surjective());
    let region_cp = compactly_packed_decide(
        spec_s,
        c.type2_sources(),
        CpProbes::Primes,
        limits,
        policy,
    )?;
    rep.note("type2-source-region-compactly-packed", region_cp.holds);

    let fam_r = policy.families(spec_r.len());
    let fam_q = policy.families(t2.len());
    rep.families_examined = fam_r.len() + fam_q.len();

    let mut meet_under_lift = PartAcc::new("meet-of-lifts-under-lift-iff-sources");
    let mut lift_under_meet = PartAcc::new("lift-under-meet-of-lifts-iff-sources");
    let mut meet_never_in_trace = PartAcc::new("meet-of-lifts-never-inside-trace");
    for fam in &fam_r {
        let src_meet = intersection_at(spec_r, fam);
        let lift_pos: Vec<usize> = fam.iter().map(|&k| t1[k]).collect();
        let up_meet = intersection_at(spec_c, &lift_pos);
        for (p, &lift) in t1.iter().enumerate() {
            let up = up_meet.is_subset(spec_c.prime(lift).members());
            let down = src_meet.is_subset(spec_r.prime(p).members());
            meet_under_lift.check(up == down, || {
                format!(
                    "p = {}, family {:?}: meet-under-lift = {up}, sources = {down}",
                    spec_r.prime(p),
                    fam
                )
            });
            let up_rev = spec_c.prime(lift).members().is_subset(&up_meet);
            let down_rev = spec_r.prime(p).members().is_subset(&src_meet);
            lift_under_meet.check(up_rev == down_rev, || {
                format!(
                    "p = {}, family {:?}: lift-under-meet = {up_rev}, sources = {down_rev}",
                    spec_r.prime(p),
                    fam
                )
            });
        }
        for (rank, &pos) in t2.iter().enumerate() {
            meet_never_in_trace.check(!up_meet.is_subset(spec_c.prime(pos).members()), || {
                format!(
                    "meet of lifts of family {:?} lies inside the trace of {}",
                    fam,
                    spec_s.prime(c.type2_sources()[rank])
                )
            });
        }
    }

    let mut meet_under_trace = PartAcc::new("meet-of-traces-under-trace-iff-sources");
    let mut trace_under_meet = PartAcc::new("trace-under-meet-of-traces-iff-sources");
    let mut meet_under_lift2 = PartAcc::new("meet-of-traces-under-lift-iff-pullback");
    for fam in &fam_q {
        let src_pos: Vec<usize> = fam.iter().map(|&k| c.type2_sources()[k]).collect();
        let src_meet = intersection_at(spec_s, &src_pos);
        let trace_pos: Vec<usize> = fam.iter().map(|&k| t2[k]).collect();
        let up_meet = intersection_at(spec_c, &trace_pos);
        // f⁻¹(∩ b + J), with the intersection taken as an ideal of S.
        let mut meet_ideal = spec_s.prime(src_pos[0]).clone();
        for &qi in &src_pos[1..] {
            meet_ideal = ideal_intersect(&meet_ideal, spec_s.prime(qi))?;
        }
        let pulled_meet = preimage_ideal(f, &ideal_sum(&meet_ideal, j)?)?;
        for (rank, &pos) in t2.iter().enumerate() {
            let up = up_meet.is_subset(spec_c.prime(pos).members());
            let down = src_meet.is_subset(spec_s.prime(c.type2_sources()[rank]).members());
            meet_under_trace.check(up == down, || {
                format!(
                    "q = {}, family {:?}: meet-under-trace = {up}, sources = {down}",
                    spec_s.prime(c.type2_sources()[rank]),
                    fam
                )
            });
            let up_rev = spec_c.prime(pos).members().is_subset(&up_meet);
            let down_rev = spec_s
                .prime(c.type2_sources()[rank])
                .members()
                .is_subset(&src_meet);
            trace_under_meet.check(up_rev == down_rev, || {
                format!(
                    "q = {}, family {:?}: trace-under-meet = {up_rev}, sources = {down_rev}",
                    spec_s.prime(c.type2_sources()[rank]),
                    fam
                )
            });
        }
        for (p, &lift) in t1.iter().enumerate() {
            let up = up_meet.is_subset(spec_c.prime(lift).members());
            let down = pulled_meet.members().is_subset(spec_r.prime(p).members());
            meet_under_lift2.check(up == down, || {
                format!(
                    "p = {}, family {:?}: meet-of-traces-under-lift = {up}, pullback = {down}",
                    spec_r.prime(p),
                    fam
                )
            });
        }
    }

    meet_under_lift.commit(&mut rep);
    lift_under_meet.commit(&mut rep);
    meet_under_trace.commit(&mut rep);
    trace_under_meet.commit(&mut rep);
    meet_under_lift2.commit(&mut rep);
    meet_never_in_trace.commit(&mut rep);
    rep.trivial_at_finite_scale = zero_dimensional(spec_c);
    Ok(rep)
}

/// The singleton cases of the inclusion transfer:
/// 1. `p₁ ⊆ p₂` iff `p₁' ⊆ p₂'`;
/// 2. `q₁ ⊆ q₂` iff `q̄₁ ⊆ q̄₂`;
/// 3. `q̄ ⊆ p'` iff `f⁻¹(q + J) ⊆ p`;
/// 4. `p'` never lies inside `q̄`.
pub fn verify_pairwise_inclusions(c: &ClassifiedAmalgam) -> Result<LemmaReport> {
    let mut rep = LemmaReport::new("pairwise-inclusions", c.amalgam().carrier().name());
    let spec_r = c.spec_r();
    let spec_s = c.spec_s();
    let spec_c = c.carrier_spec();
    let t1 = type1_positions(c);
    let t2 = type2_positions(c);
    let pulled = pulled_sources(c)?;

    let mut lifts = PartAcc::new("lift-order-matches-source-order");
    for a in 0..spec_r.len() {
        for b in 0..spec_r.len() {
            let down = spec_r.prime(a).members().is_subset(spec_r.prime(b).members());
            let up = spec_c
                .prime(t1[a])
                .members()
                .is_subset(spec_c.prime(t1[b]).members());
            lifts.check(down == up, || {
                format!(
                    "{} ⊆ {} is {down} downstairs but {up} upstairs",
                    spec_r.prime(a),
                    spec_r.prime(b)
                )
            });
        }
    }
    lifts.commit(&mut rep);

    let mut traces = PartAcc::new("trace-order-matches-source-order");
    for (ra, &pa) in t2.iter().enumerate() {
        for (rb, &pb) in t2.iter().enumerate() {
            let qa = c.type2_sources()[ra];
            let qb = c.type2_sources()[rb];
            let down = spec_s.prime(qa).members().is_subset(spec_s.prime(qb).members());
            let up = spec_c.prime(pa).members().is_subset(spec_c.prime(pb).members());
            traces.check(down == up, || {
                format!(
                    "{} ⊆ {} is {down} downstairs but {up} upstairs",
                    spec_s.prime(qa),
                    spec_s.prime(qb)
                )
            });
        }
    }
    traces.commit(&mut rep);

    let mut cross = PartAcc::new("trace-under-lift-iff-pullback-under-source");
    let mut never = PartAcc::new("lift-never-under-trace");
    for (rank, &pos) in t2.iter().enumerate() {
        for (p, &lift) in t1.iter().enumerate() {
            let up = spec_c.prime(pos).members().is_subset(spec_c.prime(lift).members());
            let down = pulled[rank].members().is_subset(spec_r.prime(p).members());
            cross.check(up == down, || {
                format!(
                    "trace of {} under lift of {}: {up} upstairs, pullback gives {down}",
                    spec_s.prime(c.type2_sources()[rank]),
                    spec_r.prime(p)
                )
            });
            never.check(
                !spec_c
                    .prime(lift)
                    .members()
                    .is_subset(spec_c.prime(pos).members()),
                || {
                    format!(
                        "lift of {} lies inside the trace of {}",
                        spec_r.prime(p),
                        spec_s.prime(c.type2_sources()[rank])
                    )
                },
            );
        }
    }
    cross.commit(&mut rep);
    never.commit(&mut rep);
    rep.trivial_at_finite_scale = zero_dimensional(spec_c);
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Compactly packed and properly zipped
// ---------------------------------------------------------------------------

/// Which ideals to probe against unions when deciding compact packing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CpProbes {
    /// Prime probes only; sufficient by prime avoidance.
    Primes,
    /// Every ideal of the ring; cross-checks the reduction to primes.
    AllIdeals,
}

/// Outcome of a compact-packing or proper-zipping decision.
#[derive(Clone, Debug, Serialize)]
pub struct CpOutcome {
    pub holds: bool,
    pub families_examined: usize,
    pub witness: Option<String>,
}

/// Decides whether the region (a set of positions into the spectrum) is
/// compactly packed: every probe ideal inside a union of region primes lies
/// inside a single one.  Families are drawn by the policy.
pub fn compactly_packed_decide(
    spectrum: &SpectrumList,
    region: &[usize],
    probes: CpProbes,
    limits: &Limits,
    policy: &FamilyPolicy,
) -> Result<CpOutcome> {
    let probe_pool: Vec<Bitset> = match probes {
        CpProbes::Primes => spectrum
            .primes()
            .iter()
            .map(|p| p.members().clone())
            .collect(),
        CpProbes::AllIdeals => enumerate_ideals(spectrum.ring(), limits)?
            .iter()
            .map(|i| i.members().clone())
            .collect(),
    };
    let fams = policy.families(region.len());
    let families_examined = fams.len();
    for fam in &fams {
        let positions: Vec<usize> = fam.iter().map(|&k| region[k]).collect();
        let union = union_at(spectrum, &positions);
        for probe in &probe_pool {
            if probe.is_subset(&union)
                && !positions
                    .iter()
                    .any(|&i| probe.is_subset(spectrum.prime(i).members()))
            {
                return Ok(CpOutcome {
                    holds: false,
                    families_examined,
                    witness: Some(format!(
                        "ideal {probe} lies in the union over positions {positions:?} \
                         but inside no single member"
                    )),
                });
            }
        }
    }
    Ok(CpOutcome {
        holds: true,
        families_examined,
        witness: None,
    })
}

/// Decides whether the spectrum is properly zipped: every prime containing
/// an intersection of primes contains one of them.  Families are drawn by
/// the policy.
pub fn properly_zipped_decide(spectrum: &SpectrumList, policy: &FamilyPolicy) -> CpOutcome {
    let fams = policy.families(spectrum.len());
    let families_examined = fams.len();
    for fam in &fams {
        let meet = intersection_at(spectrum, fam);
        for i in 0..spectrum.len() {
            let p = spectrum.prime(i).members();
            if meet.is_subset(p)
                && !fam
                    .iter()
                    .any(|&k| spectrum.prime(k).members().is_subset(p))
            {
                return CpOutcome {
                    holds: false,
                    families_examined,
                    witness: Some(format!(
                        "prime {} contains the meet of positions {fam:?} \
                         but no single member",
                        spectrum.prime(i)
                    )),
                };
            }
        }
    }
    CpOutcome {
        holds: true,
        families_examined,
        witness: None,
    }
}

/// If the carrier is compactly packed, so are `R` and the off-`V(J)` region
/// of `Spec(S)`.  Also cross-checks that prime probes and all-ideal probes
/// agree (the classical reduction).
pub fn verify_cp_transfer(
    c: &ClassifiedAmalgam,
    limits: &Limits,
    policy: &FamilyPolicy,
) -> Result<LemmaReport> {
    let mut rep = LemmaReport::new("cp-transfer", c.amalgam().carrier().name());
    let all_c: Vec<usize> = (0..c.carrier_spec().len()).collect();
    let all_r: Vec<usize> = (0..c.spec_r().len()).collect();

    let cp_c = compactly_packed_decide(c.carrier_spec(), &all_c, CpProbes::Primes, limits, policy)?;
    let cp_r = compactly_packed_decide(c.spec_r(), &all_r, CpProbes::Primes, limits, policy)?;
    let cp_region = compactly_packed_decide(
        c.spec_s(),
        c.type2_sources(),
        CpProbes::Primes,
        limits,
        policy,
    )?;
    rep.families_examined =
        cp_c.families_examined + cp_r.families_examined + cp_region.families_examined;

    let mut to_base = PartAcc::new("carrier-cp-implies-base-cp");
    to_base.check(!cp_c.holds || cp_r.holds, || {
        format!("carrier packed but base is not: {:?}", cp_r.witness)
    });
    to_base.commit(&mut rep);

    let mut to_region = PartAcc::new("carrier-cp-implies-type2-source-region-cp");
    to_region.check(!cp_c.holds || cp_region.holds, || {
        format!("carrier packed but source region is not: {:?}", cp_region.witness)
    });
    to_region.commit(&mut rep);

    let cp_c_all =
        compactly_packed_decide(c.carrier_spec(), &all_c, CpProbes::AllIdeals, limits, policy)?;
    let cp_r_all =
        compactly_packed_decide(c.spec_r(), &all_r, CpProbes::AllIdeals, limits, policy)?;
    let mut probes_agree = PartAcc::new("prime-probes-agree-with-all-ideal-probes");
    probes_agree.check(cp_c.holds == cp_c_all.holds, || {
        format!(
            "carrier: prime probes say {}, all-ideal probes say {}",
            cp_c.holds, cp_c_all.holds
        )
    });
    probes_agree.check(cp_r.holds == cp_r_all.holds, || {
        format!(
            "base: prime probes say {}, all-ideal probes say {}",
            cp_r.holds, cp_r_all.holds
        )
    });
    probes_agree.commit(&mut rep);

    rep.trivial_at_finite_scale = zero_dimensional(c.carrier_spec());
    Ok(rep)
}

/// When `R` is compactly packed, the family of all type-1 lifts is a
/// compactly packed region of the carrier spectrum (hence so is any
/// subfamily).
pub fn verify_cp_type1_family(
    c: &ClassifiedAmalgam,
    limits: &Limits,
    policy: &FamilyPolicy,
) -> Result<LemmaReport> {
    let mut rep = LemmaReport::new("cp-type1-family", c.amalgam().carrier().name());
    let all_r: Vec<usize> = (0..c.spec_r().len()).collect();
    let base = compactly_packed_decide(c.spec_r(), &all_r, CpProbes::Primes, limits, policy)?;
    rep.note("base-compactly-packed", base.holds);

    let t1 = type1_positions(c);
    let lifted = compactly_packed_decide(c.carrier_spec(), &t1, CpProbes::Primes, limits, policy)?;
    rep.families_examined = base.families_examined + lifted.families_examined;

    let mut part = PartAcc::new("base-cp-implies-type1-region-cp");
    part.check(!base.holds || lifted.holds, || {
        format!("base packed but the lift region is not: {:?}", lifted.witness)
    });
    part.commit(&mut rep);

    rep.trivial_at_finite_scale = zero_dimensional(c.carrier_spec());
    Ok(rep)
}

/// When the off-`V(J)` region of `Spec(S)` is compactly packed, the family
/// of all type-2 traces is a compactly packed region of the carrier
/// spectrum.
pub fn verify_cp_type2_family(
    c: &ClassifiedAmalgam,
    limits: &Limits,
    policy: &FamilyPolicy,
) -> Result<LemmaReport> {
    let mut rep = LemmaReport::new("cp-type2-family", c.amalgam().carrier().name());
    let region = compactly_packed_decide(
        c.spec_s(),
        c.type2_sources(),
        CpProbes::Primes,
        limits,
        policy,
    )?;
    rep.note("type2-source-region-compactly-packed", region.holds);

    let t2 = type2_positions(c);
    let lifted = compactly_packed_decide(c.carrier_spec(), &t2, CpProbes::Primes, limits, policy)?;
    rep.families_examined = region.families_examined + lifted.families_examined;

    let mut part = PartAcc::new("region-cp-implies-type2-region-cp");
    part.check(!region.holds || lifted.holds, || {
        format!("source region packed but the trace region is not: {:?}", lifted.witness)
    });
    part.commit(&mut rep);

    rep.trivial_at_finite_scale = zero_dimensional(c.carrier_spec());
    Ok(rep)
}

/// Proper zipping always passes from the carrier down to `R`; with a
/// surjective hom it also passes up, and `S` (an image of the carrier)
/// inherits it too.
pub fn verify_pz_transfer(c: &ClassifiedAmalgam, policy: &FamilyPolicy) -> Result<LemmaReport> {
    let mut rep = LemmaReport::new("pz-transfer", c.amalgam().carrier().name());
    let pz_c = properly_zipped_decide(c.carrier_spec(), policy);
    let pz_r = properly_zipped_decide(c.spec_r(), policy);
    rep.families_examined = pz_c.families_examined + pz_r.families_examined;

    let mut down = PartAcc::new("carrier-pz-implies-base-pz");
    down.check(!pz_c.holds || pz_r.holds, || {
        format!("carrier zipped but base is not: {:?}", pz_r.witness)
    });
    down.commit(&mut rep);

    let surjective = c.amalgam().hom().is_surjective();
    rep.note("hom-surjective", surjective);
    if surjective {
        let mut up = PartAcc::new("base-pz-implies-carrier-pz");
        up.check(!pz_r.holds || pz_c.holds, || {
            format!("base zipped but carrier is not: {:?}", pz_c.witness)
        });
        up.commit(&mut rep);

        let pz_s = properly_zipped_decide(c.spec_s(), policy);
        rep.families_examined += pz_s.families_examined;
        let mut image = PartAcc::new("base-pz-implies-image-pz");
        image.check(!pz_r.holds || pz_s.holds, || {
            format!("base zipped but its image is not: {:?}", pz_s.witness)
        });
        image.commit(&mut rep);
    }

    rep.trivial_at_finite_scale = zero_dimensional(c.carrier_spec());
    Ok(rep)
}

/// For a duplication, proper zipping holds in the carrier iff it holds in
/// the base.
pub fn verify_pz_duplication(c: &ClassifiedAmalgam, policy: &FamilyPolicy) -> Result<LemmaReport> {
    if !c.amalgam().is_duplication() {
        return Err(Error::invalid(
            "verifier",
            "pz duplication check requires S = R and f = id",
        ));
    }
    let mut rep = LemmaReport::new("pz-duplication", c.amalgam().carrier().name());
    let pz_c = properly_zipped_decide(c.carrier_spec(), policy);
    let pz_r = properly_zipped_decide(c.spec_r(), policy);
    rep.families_examined = pz_c.families_examined + pz_r.families_examined;

    let mut equiv = PartAcc::new("duplication-pz-iff-base-pz");
    equiv.check(pz_c.holds == pz_r.holds, || {
        format!("carrier zipped = {}, base zipped = {}", pz_c.holds, pz_r.holds)
    });
    equiv.commit(&mut rep);

    rep.trivial_at_finite_scale = zero_dimensional(c.carrier_spec());
    Ok(rep)
}

/// When `J` consists of nilpotents the carrier has no type-2 primes (a
/// biconditional, checked both ways), and both compact packing and proper
/// zipping hold in the carrier iff they hold in the base.
pub fn verify_nil_transfer(
    c: &ClassifiedAmalgam,
    limits: &Limits,
    policy: &FamilyPolicy,
) -> Result<LemmaReport> {
    let mut rep = LemmaReport::new("nil-transfer", c.amalgam().carrier().name());
    let nil = nilradical(c.amalgam().ring_s());
    let j_nil = c.amalgam().ideal_j().members().is_subset(nil.members());

    let mut presence = PartAcc::new("no-type2-primes-iff-j-nilpotent");
    presence.check(c.type2_sources().is_empty() == j_nil, || {
        format!(
            "type-2 sources absent = {}, J nilpotent = {j_nil}",
            c.type2_sources().is_empty()
        )
    });
    presence.commit(&mut rep);

    rep.note("j-nilpotent", j_nil);
    if j_nil {
        let all_c: Vec<usize> = (0..c.carrier_spec().len()).collect();
        let all_r: Vec<usize> = (0..c.spec_r().len()).collect();
        let cp_c =
            compactly_packed_decide(c.carrier_spec(), &all_c, CpProbes::Primes, limits, policy)?;
        let cp_r = compactly_packed_decide(c.spec_r(), &all_r, CpProbes::Primes, limits, policy)?;
        let pz_c = properly_zipped_decide(c.carrier_spec(), policy);
        let pz_r = properly_zipped_decide(c.spec_r(), policy);
        rep.families_examined = cp_c.families_examined
            + cp_r.families_examined
            + pz_c.families_examined
            + pz_r.families_examined;

        let mut cp = PartAcc::new("carrier-cp-iff-base-cp");
        cp.check(cp_c.holds == cp_r.holds, || {
            format!("carrier packed = {}, base packed = {}", cp_c.holds, cp_r.holds)
        });
        cp.commit(&mut rep);

        let mut pz = PartAcc::new("carrier-pz-iff-base-pz");
        pz.check(pz_c.holds == pz_r.holds, || {
            format!("carrier zipped = {}, base zipped = {}", pz_c.holds, pz_r.holds)
        });
        pz.commit(&mut rep);
    }

    rep.trivial_at_finite_scale = zero_dimensional(c.carrier_spec());
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::{amalgamate, duplicate};
    use crate::hom::enumerate_homs;
    use crate::ideal::{ideal_generate, spec_of};
    use crate::ring::make_zn;

    fn classified_z6_two() -> ClassifiedAmalgam {
        let z6 = make_zn(6).unwrap();
        let two = ideal_generate(&z6, &[2]);
        classify_spectrum(duplicate(&z6, &two).unwrap(), &Limits::default()).unwrap()
    }

    #[test]
    fn pm_holds_on_zero_dimensional_spectra() {
        let z6 = make_zn(6).unwrap();
        let spec = spec_of(&z6, &Limits::default()).unwrap();
        assert!(is_pm(&spec).holds);
    }

    #[test]
    fn cover_count_for_the_off_region_prime() {
        let c = classified_z6_two();
        // q = (3) is the unique type-2 source.
        let qi = c.type2_sources()[0];
        let cc = max_cover_count(&c, qi).unwrap();
        assert_eq!(cc.term_max_s, 1);
        assert_eq!(cc.term_max_r, 0);
        assert_eq!(cc.total(), 1);
        // Primes containing J have no cover count.
        let in_vj = c.vj()[0];
        assert!(max_cover_count(&c, in_vj).is_err());
    }

    #[test]
    fn pm_reports_pass_on_the_duplication() {
        let c = classified_z6_two();
        let rep = verify_pm_equivalence(&c).unwrap();
        assert!(rep.passed(), "{:?}", rep.counterexample);
        assert!(rep.trivial_at_finite_scale);
        let rep = verify_pm_duplication(&c).unwrap();
        assert!(rep.passed(), "{:?}", rep.counterexample);
    }

    #[test]
    fn pm_duplication_rejects_proper_amalgamations() {
        let z12 = make_zn(12).unwrap();
        let z6 = make_zn(6).unwrap();
        let f = enumerate_homs(&z12, &z6).pop().unwrap();
        let j = ideal_generate(&z6, &[2]);
        let c = classify_spectrum(amalgamate(f, j).unwrap(), &Limits::default()).unwrap();
        assert!(verify_pm_duplication(&c).is_err());
        // But the general equivalence still verifies.
        assert!(verify_pm_equivalence(&c).unwrap().passed());
    }

    #[test]
    fn jacobson_hypothesis_is_detected_and_used() {
        // J = (2) = Jac(Z4): hypothesis holds.
        let z4 = make_zn(4).unwrap();
        let two = ideal_generate(&z4, &[2]);
        let c = classify_spectrum(duplicate(&z4, &two).unwrap(), &Limits::default()).unwrap();
        let rep = verify_pm_jacobson(&c, &Limits::default()).unwrap();
        assert!(rep.passed(), "{:?}", rep.counterexample);
        assert!(rep.hypotheses.iter().any(|h| h.name == "j-inside-jacobson" && h.holds));
        assert!(rep.parts.iter().any(|p| p.name == "first-term-vanishes"));

        // J = (2) ⊄ Jac(Z6) = 0: hypothesis fails, the unconditional
        // biconditional is still checked.
        let c = classified_z6_two();
        let rep = verify_pm_jacobson(&c, &Limits::default()).unwrap();
        assert!(rep.passed(), "{:?}", rep.counterexample);
        assert!(rep.hypotheses.iter().any(|h| h.name == "j-inside-jacobson" && !h.holds));
        assert!(!rep.parts.iter().any(|p| p.name == "first-term-vanishes"));
    }

    #[test]
    fn trivial_extension_report_passes() {
        let z6 = make_zn(6).unwrap();
        let m = FiniteModule::regular(&z6);
        let rep = verify_pm_trivial_extension(&z6, &m, &Limits::default()).unwrap();
        assert!(rep.passed(), "{:?}", rep.counterexample);
        assert!(rep.hypotheses.iter().any(|h| h.name == "j-squares-to-zero" && h.holds));
    }

    #[test]
    fn inclusion_lemma_reports_pass() {
        let c = classified_z6_two();
        let policy = FamilyPolicy::default();
        let rep = verify_union_inclusions(&c, &Limits::default(), &policy).unwrap();
        assert!(rep.passed(), "{:?}", rep.counterexample);
        assert!(rep.families_examined > 0);
        assert_eq!(rep.parts.len(), 6);
        let rep = verify_intersection_inclusions(&c, &Limits::default(), &policy).unwrap();
        assert!(rep.passed(), "{:?}", rep.counterexample);
        assert_eq!(rep.parts.len(), 6);
        let rep = verify_pairwise_inclusions(&c).unwrap();
        assert!(rep.passed(), "{:?}", rep.counterexample);
        assert_eq!(rep.parts.len(), 4);
    }

    #[test]
    fn packing_and_zipping_decisions() {
        let z6 = make_zn(6).unwrap();
        let spec = spec_of(&z6, &Limits::default()).unwrap();
        let policy = FamilyPolicy::default();
        let all: Vec<usize> = (0..spec.len()).collect();
        let cp = compactly_packed_decide(&spec, &all, CpProbes::Primes, &Limits::default(), &policy)
            .unwrap();
        assert!(cp.holds);
        assert_eq!(cp.families_examined, 3);
        let cp_all =
            compactly_packed_decide(&spec, &all, CpProbes::AllIdeals, &Limits::default(), &policy)
                .unwrap();
        assert!(cp_all.holds);
        let pz = properly_zipped_decide(&spec, &policy);
        assert!(pz.holds);
        // An empty region is vacuously packed.
        let cp = compactly_packed_decide(&spec, &[], CpProbes::Primes, &Limits::default(), &policy)
            .unwrap();
        assert!(cp.holds);
        assert_eq!(cp.families_examined, 0);
    }

    #[test]
    fn packing_transfer_reports_pass() {
        let c = classified_z6_two();
        let policy = FamilyPolicy::default();
        let limits = Limits::default();
        for rep in [
            verify_cp_transfer(&c, &limits, &policy).unwrap(),
            verify_cp_type1_family(&c, &limits, &policy).unwrap(),
            verify_cp_type2_family(&c, &limits, &policy).unwrap(),
            verify_pz_transfer(&c, &policy).unwrap(),
            verify_pz_duplication(&c, &policy).unwrap(),
            verify_nil_transfer(&c, &limits, &policy).unwrap(),
        ] {
            assert!(rep.passed(), "{}: {:?}", rep.check, rep.counterexample);
            assert!(rep.trivial_at_finite_scale);
        }
    }

    #[test]
    fn nil_transfer_uses_the_hypothesis_when_it_holds() {
        let z4 = make_zn(4).unwrap();
        let two = ideal_generate(&z4, &[2]);
        let c = classify_spectrum(duplicate(&z4, &two).unwrap(), &Limits::default()).unwrap();
        let rep = verify_nil_transfer(&c, &Limits::default(), &FamilyPolicy::default()).unwrap();
        assert!(rep.passed(), "{:?}", rep.counterexample);
        assert!(rep.hypotheses.iter().any(|h| h.name == "j-nilpotent" && h.holds));
        assert!(rep.parts.iter().any(|p| p.name == "carrier-cp-iff-base-cp"));
    }
}
