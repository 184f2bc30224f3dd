//! The amalgamation `R ⋈^f J` of a ring along an ideal.
//!
//! Given a homomorphism `f: R → S` and an ideal `J` of `S`, the amalgamation
//! is the subring
//!
//! ```text
//! R ⋈^f J = { (r, f(r) + j) : r ∈ R, j ∈ J }  ⊆  R × S
//! ```
//!
//! Distinct parameters give distinct pairs, so the carrier has exactly
//! `|R| · |J|` elements; here it is materialized as a [`FiniteRing`] with
//! element `r·|J| + k` standing for the pair `(r, f(r) + jₖ)` (with `jₖ` the
//! `k`-th smallest element of `J`).  Special cases: `duplicate` (`S = R`,
//! `f = id`) and `trivial_extension_as_amalgam` (`S = R ⋉ M`, `J = 0 ⋉ M`),
//! the latter returning an explicit isomorphism onto the trivial extension.
//!
//! Two families of primes are attached to an amalgamation.  For `p` prime in
//! `R` and `q` prime in `S` with `J ⊄ q`:
//!
//! * type 1: `p ⋈^f J = { (x, f(x)+j) : x ∈ p, j ∈ J }`,
//! * type 2: `q̄^f = { (x, f(x)+j) : f(x)+j ∈ q }`,
//!
//! and `classify_spectrum` checks — against an independent brute-force
//! enumeration of the carrier's spectrum, with zero tolerance — that these
//! two families are exactly the primes of the amalgamation, tagging each
//! carrier prime with its source.  `max_classify` does the same for maximal
//! ideals, where the type-2 family is restricted to maximal `q` off `V(J)`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::hom::RingHom;
use crate::ideal::{is_prime, spec_of, v_of, IdealSet, SpectrumList};
use crate::limits::Limits;
use crate::module::FiniteModule;
use crate::ring::{
    make_trivial_extension, same_ring, Elem, FiniteRing, MAX_RING_SIZE,
};

/// An amalgamation with its materialized carrier ring.
#[derive(Clone)]
pub struct AmalgamationRing {
    f: RingHom,
    j: IdealSet,
    carrier: Arc<FiniteRing>,
    /// Carrier index → the pair `(r, s)` it denotes (`s = f(r) + j`).
    pairs: Vec<(u16, u16)>,
    pair_index: HashMap<(u16, u16), u16>,
}

impl std::fmt::Debug for AmalgamationRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AmalgamationRing({})", self.carrier.name())
    }
}

impl AmalgamationRing {
    pub fn ring_r(&self) -> &Arc<FiniteRing> {
        self.f.domain()
    }

    pub fn ring_s(&self) -> &Arc<FiniteRing> {
        self.f.codomain()
    }

    pub fn hom(&self) -> &RingHom {
        &self.f
    }

    pub fn ideal_j(&self) -> &IdealSet {
        &self.j
    }

    pub fn carrier(&self) -> &Arc<FiniteRing> {
        &self.carrier
    }

    /// The pair `(r, s) ∈ R × S` denoted by a carrier element.
    pub fn pair(&self, idx: Elem) -> (Elem, Elem) {
        let (r, s) = self.pairs[idx];
        (r as Elem, s as Elem)
    }

    /// Carrier element denoting the pair `(r, s)`, if it lies in the
    /// amalgamation.
    pub fn index_of_pair(&self, r: Elem, s: Elem) -> Option<Elem> {
        self.pair_index.get(&(r as u16, s as u16)).map(|&i| i as Elem)
    }

    /// Whether this is a duplication: `S = R` and `f = id`.
    pub fn is_duplication(&self) -> bool {
        self.f.is_identity()
    }

    /// First projection `R ⋈^f J → R`, surjective with kernel `{0} × J`.
    pub fn projection_hom(&self) -> RingHom {
        let map: Vec<Elem> = self.pairs.iter().map(|&(r, _)| r as Elem).collect();
        let hom = RingHom::new(self.carrier.clone(), self.ring_r().clone(), map)
            .expect("first projection of an amalgamation is a ring hom");
        debug_assert!(hom.is_surjective());
        debug_assert_eq!(
            hom.kernel().elements(),
            self.pairs
                .iter()
                .enumerate()
                .filter(|(_, &(r, _))| r as Elem == self.ring_r().zero())
                .map(|(i, _)| i)
                .collect::<Vec<_>>()
        );
        hom
    }
}

/// Constructs `R ⋈^f J`.  `J` must be a nonzero proper ideal of the codomain
/// of `f`.
pub fn amalgamate(f: RingHom, j: IdealSet) -> Result<AmalgamationRing> {
    if !same_ring(j.ring(), f.codomain()) {
        return Err(Error::AmbientMismatch(format!(
            "J lives over {}, the hom lands in {}",
            j.ring().name(),
            f.codomain().name()
        )));
    }
    if j.is_zero() {
        return Err(Error::invalid("amalgamation", "J must be a nonzero ideal"));
    }
    if !j.is_proper() {
        return Err(Error::invalid("amalgamation", "J must be a proper ideal"));
    }
    let r = f.domain().clone();
    let s = f.codomain().clone();
    let j_elems = j.elements();
    let n = r.size() * j_elems.len();
    if n > MAX_RING_SIZE {
        return Err(Error::CapExceeded {
            what: "amalgamation carrier",
            size: n,
            cap: MAX_RING_SIZE,
        });
    }

    let mut pairs: Vec<(u16, u16)> = Vec::with_capacity(n);
    let mut pair_index: HashMap<(u16, u16), u16> = HashMap::with_capacity(n);
    for x in r.elements() {
        for &jj in &j_elems {
            let y = s.add(f.apply(x), jj);
            let key = (x as u16, y as u16);
            if pair_index.insert(key, pairs.len() as u16).is_some() {
                // (x, f(x)+j) = (x, f(x)+j') forces j = j', so this cannot
                // happen for a genuine ideal; keep it as a guarded invariant.
                return Err(Error::invalid(
                    "amalgamation",
                    format!("carrier pair ({x},{y}) produced twice"),
                ));
            }
            pairs.push(key);
        }
    }
    debug_assert_eq!(pairs.len(), n);

    let look = |r1: Elem, s1: Elem| -> Result<Elem> {
        pair_index
            .get(&(r1 as u16, s1 as u16))
            .map(|&i| i as Elem)
            .ok_or_else(|| {
                Error::invalid(
                    "amalgamation",
                    format!("carrier not closed: pair ({r1},{s1}) escapes"),
                )
            })
    };
    let mut add = vec![vec![0usize; n]; n];
    let mut mul = vec![vec![0usize; n]; n];
    for (p_idx, &(r1, s1)) in pairs.iter().enumerate() {
        let (r1, s1) = (r1 as Elem, s1 as Elem);
        for (q_idx, &(r2, s2)) in pairs.iter().enumerate() {
            let (r2, s2) = (r2 as Elem, s2 as Elem);
            add[p_idx][q_idx] = look(r.add(r1, r2), s.add(s1, s2))?;
            mul[p_idx][q_idx] = look(r.mul(r1, r2), s.mul(s1, s2))?;
        }
    }
    let zero = look(r.zero(), s.zero())?;
    let one = look(r.one(), s.one())?;
    let name = if f.is_identity() {
        format!("{}⋈{}", r.name(), j.members())
    } else {
        format!("{}⋈^f[{}⊂{}]", r.name(), j.members(), s.name())
    };
    let carrier = FiniteRing::from_tables(name, zero, one, add, mul)?;
    Ok(AmalgamationRing {
        f,
        j,
        carrier,
        pairs,
        pair_index,
    })
}

/// The amalgamated duplication `R ⋈ I` (`S = R`, `f = id`).
pub fn duplicate(r: &Arc<FiniteRing>, i: &IdealSet) -> Result<AmalgamationRing> {
    if !same_ring(i.ring(), r) {
        return Err(Error::AmbientMismatch(format!(
            "duplicating {} along an ideal of {}",
            r.name(),
            i.ring().name()
        )));
    }
    amalgamate(RingHom::identity(r), i.clone())
}

/// Realizes `R ⋉ M` as an amalgamation: `S = R ⋉ M`, `f(r) = (r, 0)`,
/// `J = {0} ⋉ M`.  Returns the amalgamation together with an isomorphism
/// onto the trivial extension (the second projection, which is bijective
/// here).
pub fn trivial_extension_as_amalgam(
    r: &Arc<FiniteRing>,
    m: &FiniteModule,
) -> Result<(AmalgamationRing, RingHom)> {
    if m.size() < 2 {
        return Err(Error::invalid(
            "amalgamation",
            "trivial extension by the zero module has J = 0",
        ));
    }
    let ext = make_trivial_extension(r, m)?;
    let f_map: Vec<Elem> = r
        .elements()
        .map(|x| x * ext.module_size + m.zero())
        .collect();
    let f = RingHom::new(r.clone(), ext.ring.clone(), f_map)?;
    let amalgam = amalgamate(f, ext.embedded_module.clone())?;
    let iso_map: Vec<Elem> = amalgam.pairs.iter().map(|&(_, s)| s as Elem).collect();
    let iso = RingHom::new(amalgam.carrier.clone(), ext.ring.clone(), iso_map)?;
    if !iso.is_injective() || !iso.is_surjective() {
        return Err(Error::invalid(
            "amalgamation",
            "second projection onto the trivial extension failed to be bijective",
        ));
    }
    Ok((amalgam, iso))
}

fn type1_mask(a: &AmalgamationRing, p: &IdealSet) -> Bitset {
    Bitset::from_indices(
        a.carrier.size(),
        a.pairs
            .iter()
            .enumerate()
            .filter(|(_, &(r, _))| p.contains(r as Elem))
            .map(|(i, _)| i),
    )
}

fn type2_mask(a: &AmalgamationRing, q: &IdealSet) -> Bitset {
    Bitset::from_indices(
        a.carrier.size(),
        a.pairs
            .iter()
            .enumerate()
            .filter(|(_, &(_, s))| q.contains(s as Elem))
            .map(|(i, _)| i),
    )
}

/// The type-1 lift `p ⋈^f J` of a prime `p` of `R`, verified prime in the
/// carrier.
pub fn lift_type1(a: &AmalgamationRing, p: &IdealSet) -> Result<IdealSet> {
    if !same_ring(p.ring(), a.ring_r()) {
        return Err(Error::AmbientMismatch(
            "type-1 lift of an ideal from the wrong ring".into(),
        ));
    }
    if !is_prime(p)? {
        return Err(Error::invalid("ideal", format!("{p} is not prime")));
    }
    let lifted = IdealSet::new(a.carrier.clone(), type1_mask(a, p))?;
    if !is_prime(&lifted)? {
        return Err(Error::TheoremViolation(format!(
            "type-1 lift of {p} is not prime in {}",
            a.carrier.name()
        )));
    }
    Ok(lifted)
}

/// The type-2 trace `q̄^f` of a prime `q` of `S` with `J ⊄ q`, verified
/// prime in the carrier.
pub fn lift_type2(a: &AmalgamationRing, q: &IdealSet) -> Result<IdealSet> {
    if !same_ring(q.ring(), a.ring_s()) {
        return Err(Error::AmbientMismatch(
            "type-2 trace of an ideal from the wrong ring".into(),
        ));
    }
    if !is_prime(q)? {
        return Err(Error::invalid("ideal", format!("{q} is not prime")));
    }
    if a.j.is_subset(q) {
        return Err(Error::invalid(
            "ideal",
            format!("{q} contains J; its trace is a type-1 prime, not type 2"),
        ));
    }
    let lifted = IdealSet::new(a.carrier.clone(), type2_mask(a, q))?;
    if !is_prime(&lifted)? {
        return Err(Error::TheoremViolation(format!(
            "type-2 trace of {q} is not prime in {}",
            a.carrier.name()
        )));
    }
    Ok(lifted)
}

/// Which family a carrier prime belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum PrimeTag {
    Type1,
    Type2,
}

/// A carrier prime together with its source prime downstairs.
#[derive(Clone, Debug)]
pub struct TaggedPrime {
    pub tag: PrimeTag,
    /// Index into `spec_r` (type 1) or `spec_s` (type 2).
    pub source: usize,
    pub ideal: IdealSet,
}

/// The fully classified spectrum of an amalgamation: the carrier's primes
/// (enumerated brute-force) matched one-to-one against the two lift
/// families.
pub struct ClassifiedAmalgam {
    amalgam: AmalgamationRing,
    spec_r: SpectrumList,
    spec_s: SpectrumList,
    /// Indices into `spec_s` of primes containing `J`.
    vj: Vec<usize>,
    /// Indices into `spec_s` of primes **not** containing `J`, in order.
    type2_sources: Vec<usize>,
    carrier_spec: SpectrumList,
    /// Aligned with `carrier_spec`: `tagged[i].ideal` is `carrier_spec[i]`.
    tagged: Vec<TaggedPrime>,
}

impl ClassifiedAmalgam {
    pub fn amalgam(&self) -> &AmalgamationRing {
        &self.amalgam
    }

    pub fn spec_r(&self) -> &SpectrumList {
        &self.spec_r
    }

    pub fn spec_s(&self) -> &SpectrumList {
        &self.spec_s
    }

    pub fn vj(&self) -> &[usize] {
        &self.vj
    }

    pub fn type2_sources(&self) -> &[usize] {
        &self.type2_sources
    }

    pub fn carrier_spec(&self) -> &SpectrumList {
        &self.carrier_spec
    }

    pub fn tagged(&self) -> &[TaggedPrime] {
        &self.tagged
    }

    /// Rank of a `spec_s` index within the type-2 source list.
    pub fn type2_rank(&self, spec_s_idx: usize) -> Option<usize> {
        self.type2_sources.iter().position(|&q| q == spec_s_idx)
    }

    /// Carrier-spectrum position of the type-1 lift of `spec_r[i]`.
    pub fn type1_position(&self, spec_r_idx: usize) -> usize {
        self.tagged
            .iter()
            .position(|t| t.tag == PrimeTag::Type1 && t.source == spec_r_idx)
            .expect("every R-prime lifts")
    }

    /// Carrier-spectrum position of the type-2 trace of `spec_s[i]`.
    pub fn type2_position(&self, spec_s_idx: usize) -> usize {
        self.tagged
            .iter()
            .position(|t| t.tag == PrimeTag::Type2 && t.source == spec_s_idx)
            .expect("every off-V(J) S-prime traces")
    }
}

/// Enumerates the carrier's primes brute-force, independently builds the two
/// lift families, and matches them exactly.  Any discrepancy is a theorem
/// violation carrying both sides.
pub fn classify_spectrum(a: AmalgamationRing, limits: &Limits) -> Result<ClassifiedAmalgam> {
    let spec_r = spec_of(a.ring_r(), limits)?;
    let spec_s = spec_of(a.ring_s(), limits)?;
    let vj = v_of(&spec_s, &a.j)?;
    let type2_sources: Vec<usize> = (0..spec_s.len()).filter(|i| !vj.contains(i)).collect();

    let mut expected: Vec<(Bitset, PrimeTag, usize)> = Vec::new();
    for (i, p) in spec_r.primes().iter().enumerate() {
        expected.push((type1_mask(&a, p), PrimeTag::Type1, i));
    }
    for &qi in &type2_sources {
        expected.push((type2_mask(&a, spec_s.prime(qi)), PrimeTag::Type2, qi));
    }
    expected.sort_by(|x, y| x.0.cmp(&y.0));
    for w in expected.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::TheoremViolation(format!(
                "lift families collide on {} in {}",
                w[0].0,
                a.carrier.name()
            )));
        }
    }

    let carrier_spec = spec_of(&a.carrier, limits)?;
    let brute: Vec<&Bitset> = carrier_spec.primes().iter().map(|p| p.members()).collect();
    let formula: Vec<&Bitset> = expected.iter().map(|(m, _, _)| m).collect();
    if brute.len() != formula.len() || brute.iter().zip(&formula).any(|(b, f)| *b != *f) {
        return Err(Error::TheoremViolation(format!(
            "spectrum of {} disagrees with the two-family description: \
             brute-force {:?} vs lifts {:?}",
            a.carrier.name(),
            brute,
            formula
        )));
    }

    let tagged: Vec<TaggedPrime> = expected
        .into_iter()
        .enumerate()
        .map(|(i, (mask, tag, source))| {
            debug_assert_eq!(&mask, carrier_spec.prime(i).members());
            TaggedPrime {
                tag,
                source,
                ideal: carrier_spec.prime(i).clone(),
            }
        })
        .collect();

    Ok(ClassifiedAmalgam {
        amalgam: a,
        spec_r,
        spec_s,
        vj,
        type2_sources,
        carrier_spec,
        tagged,
    })
}

/// Matches the carrier's maximal ideals (brute-force flags) against the
/// description "type-1 lifts of maximal ideals of `R`, plus type-2 traces of
/// maximal ideals of `S` off `V(J)`", returning the tagged maximal primes.
pub fn max_classify(c: &ClassifiedAmalgam) -> Result<Vec<TaggedPrime>> {
    let mut expect_max: Vec<Bitset> = Vec::new();
    for (i, p) in c.spec_r.primes().iter().enumerate() {
        if c.spec_r.is_max(i) {
            expect_max.push(type1_mask(&c.amalgam, p));
        }
    }
    for &qi in &c.type2_sources {
        if c.spec_s.is_max(qi) {
            expect_max.push(type2_mask(&c.amalgam, c.spec_s.prime(qi)));
        }
    }
    expect_max.sort();

    let brute_max: Vec<Bitset> = (0..c.carrier_spec.len())
        .filter(|&i| c.carrier_spec.is_max(i))
        .map(|i| c.carrier_spec.prime(i).members().clone())
        .collect();

    if brute_max != expect_max {
        return Err(Error::TheoremViolation(format!(
            "maximal ideals of {} disagree with the two-family description: \
             brute-force {:?} vs lifts {:?}",
            c.amalgam.carrier.name(),
            brute_max,
            expect_max
        )));
    }
    Ok((0..c.carrier_spec.len())
        .filter(|&i| c.carrier_spec.is_max(i))
        .map(|i| c.tagged[i].clone())
        .collect())
}
