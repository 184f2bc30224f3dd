//! Ideals of a finite commutative ring and the prime spectrum.
//!
//! An ideal is a validated subset mask over the ring's elements.  The whole
//! ideal lattice is enumerated by closing the set of principal ideals under
//! pairwise sums — every ideal of a finite unital ring is a finite sum of
//! principal ideals, so this reaches everything without walking the power
//! set.  Primality and maximality are decided by their definitions:
//!
//! * `P` prime  ⇔  `P` proper and `ab ∈ P ⇒ a ∈ P or b ∈ P`;
//! * `P` maximal ⇔ `P` proper and `P + (a) = R` for every `a ∉ P`.
//!
//! Spectra come back in a canonical order (lexicographic on subset masks),
//! duplicate-free, with maximality flags.  In a finite commutative ring every
//! prime is maximal (the ring is zero-dimensional); the code never *assumes*
//! that, it recomputes both predicates and lets callers assert the collapse.

use std::fmt;
use std::sync::Arc;

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::ring::{same_ring, Elem, FiniteRing};

/// A validated ideal of a specific ring.
#[derive(Clone)]
pub struct IdealSet {
    ring: Arc<FiniteRing>,
    members: Bitset,
}

impl PartialEq for IdealSet {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.members == other.members
    }
}
impl Eq for IdealSet {}

impl fmt::Debug for IdealSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IdealSet({} of {})", self.members, self.ring.name())
    }
}

impl fmt::Display for IdealSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.members)
    }
}

impl IdealSet {
    /// Wraps a member mask after checking the ideal axioms: contains zero,
    /// closed under addition, and closed under multiplication by every ring
    /// element (which also forces additive inverses).
    pub fn new(ring: Arc<FiniteRing>, members: Bitset) -> Result<Self> {
        if members.universe() != ring.size() {
            return Err(Error::invalid(
                "ideal",
                format!(
                    "mask over {} elements does not match ring of size {}",
                    members.universe(),
                    ring.size()
                ),
            ));
        }
        if !members.contains(ring.zero()) {
            return Err(Error::invalid("ideal", "does not contain 0"));
        }
        for a in members.iter() {
            for b in members.iter() {
                if !members.contains(ring.add(a, b)) {
                    return Err(Error::invalid(
                        "ideal",
                        format!("not closed under addition: {a} + {b} escapes"),
                    ));
                }
            }
            if !members.contains(ring.neg(a)) {
                return Err(Error::invalid(
                    "ideal",
                    format!("missing additive inverse of {a}"),
                ));
            }
            for r in ring.elements() {
                if !members.contains(ring.mul(r, a)) {
                    return Err(Error::invalid(
                        "ideal",
                        format!("not absorbing: {r} * {a} escapes"),
                    ));
                }
            }
        }
        Ok(IdealSet { ring, members })
    }

    /// Internal constructor for masks that are ideals by construction
    /// (sums, intersections, preimages).  Validity is still checked in
    /// debug builds.
    pub(crate) fn from_parts_unchecked(ring: Arc<FiniteRing>, members: Bitset) -> Self {
        debug_assert!(
            IdealSet::new(ring.clone(), members.clone()).is_ok(),
            "internal mask is not an ideal"
        );
        IdealSet { ring, members }
    }

    pub fn zero_ideal(ring: &Arc<FiniteRing>) -> Self {
        let mask = Bitset::from_indices(ring.size(), [ring.zero()]);
        IdealSet::from_parts_unchecked(ring.clone(), mask)
    }

    pub fn unit_ideal(ring: &Arc<FiniteRing>) -> Self {
        IdealSet::from_parts_unchecked(ring.clone(), Bitset::full(ring.size()))
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn members(&self) -> &Bitset {
        &self.members
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }

    /// Number of elements.
    pub fn size(&self) -> usize {
        self.members.count()
    }

    pub fn is_zero(&self) -> bool {
        self.size() == 1
    }

    pub fn is_proper(&self) -> bool {
        !self.members.is_full()
    }

    /// `self ⊆ other` (they must live over the same ring).
    pub fn is_subset(&self, other: &IdealSet) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn elements(&self) -> Vec<Elem> {
        self.members.to_vec()
    }

    /// A small generating set, computed greedily: repeatedly pick the least
    /// element not yet generated.  Used for display and shorthand output.
    pub fn generators_hint(&self) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut span = ideal_generate(&self.ring, &gens).members;
        while span != self.members {
            let next = self
                .members
                .iter()
                .find(|&x| !span.contains(x))
                .expect("span is a strict subset");
            gens.push(next);
            span = ideal_generate(&self.ring, &gens).members;
        }
        gens
    }
}

/// The principal ideal `(a) = {r·a : r ∈ R}` — one multiplication-table row
/// turned into a mask.  (With 1 in the ring, no extra additive closure is
/// needed.)
pub fn principal(ring: &Arc<FiniteRing>, a: Elem) -> IdealSet {
    let mask = Bitset::from_indices(ring.size(), ring.elements().map(|r| ring.mul(r, a)));
    IdealSet::from_parts_unchecked(ring.clone(), mask)
}

/// The smallest ideal containing `gens`: closure of `{0} ∪ gens` under
/// addition and multiplication by arbitrary ring elements, to a fixpoint.
pub fn ideal_generate(ring: &Arc<FiniteRing>, gens: &[Elem]) -> IdealSet {
    let n = ring.size();
    let mut mask = Bitset::new(n);
    mask.insert(ring.zero());
    let mut queue: Vec<Elem> = vec![ring.zero()];
    for &g in gens {
        assert!(g < n, "generator {g} out of range for ring of size {n}");
        if mask.insert(g) {
            queue.push(g);
        }
    }
    while let Some(x) = queue.pop() {
        for r in ring.elements() {
            let y = ring.mul(r, x);
            if mask.insert(y) {
                queue.push(y);
            }
        }
        // Sums with everything currently present.
        for y in mask.clone().iter() {
            let s = ring.add(x, y);
            if mask.insert(s) {
                queue.push(s);
            }
        }
    }
    IdealSet::from_parts_unchecked(ring.clone(), mask)
}

/// All ideals of the ring, canonically ordered.
///
/// Starts from the distinct principal ideals and closes under pairwise ideal
/// sums (a worklist fixpoint); since every ideal is a finite sum of
/// principal ideals, the closure is the whole lattice.
pub fn enumerate_ideals(ring: &Arc<FiniteRing>, limits: &Limits) -> Result<Vec<IdealSet>> {
    if ring.size() > limits.element_cap {
        return Err(Error::CapExceeded {
            what: "ideal enumeration",
            size: ring.size(),
            cap: limits.element_cap,
        });
    }
    let mut principals: Vec<Bitset> = ring
        .elements()
        .map(|a| principal(ring, a).members)
        .collect();
    principals.sort();
    principals.dedup();

    let mut known: std::collections::BTreeSet<Bitset> = principals.iter().cloned().collect();
    let mut queue: Vec<Bitset> = principals.clone();
    while let Some(current) = queue.pop() {
        for p in &principals {
            let sum = sum_masks(ring, &current, p);
            if known.insert(sum.clone()) {
                queue.push(sum);
            }
        }
    }
    Ok(known
        .into_iter()
        .map(|mask| IdealSet::from_parts_unchecked(ring.clone(), mask))
        .collect())
}

/// Setwise sum `{i + j : i ∈ I, j ∈ J}` of two ideal masks (itself an ideal).
fn sum_masks(ring: &FiniteRing, i: &Bitset, j: &Bitset) -> Bitset {
    let mut out = Bitset::new(ring.size());
    for a in i.iter() {
        for b in j.iter() {
            out.insert(ring.add(a, b));
        }
    }
    out
}

fn require_same_ring(i: &IdealSet, j: &IdealSet, op: &str) -> Result<()> {
    if !same_ring(&i.ring, &j.ring) {
        return Err(Error::AmbientMismatch(format!(
            "{op} of ideals over {} and {}",
            i.ring.name(),
            j.ring.name()
        )));
    }
    Ok(())
}

/// The ideal sum `I + J`.
pub fn ideal_sum(i: &IdealSet, j: &IdealSet) -> Result<IdealSet> {
    require_same_ring(i, j, "sum")?;
    Ok(IdealSet::from_parts_unchecked(
        i.ring.clone(),
        sum_masks(&i.ring, &i.members, &j.members),
    ))
}

/// The intersection `I ∩ J`.
pub fn ideal_intersect(i: &IdealSet, j: &IdealSet) -> Result<IdealSet> {
    require_same_ring(i, j, "intersection")?;
    Ok(IdealSet::from_parts_unchecked(
        i.ring.clone(),
        i.members.intersect(&j.members),
    ))
}

/// The ideal product `I·J`: additive closure of the pairwise products (the
/// product set is already closed under ring multiplication).
pub fn ideal_product(i: &IdealSet, j: &IdealSet) -> Result<IdealSet> {
    require_same_ring(i, j, "product")?;
    let ring = &i.ring;
    let mut mask = Bitset::new(ring.size());
    mask.insert(ring.zero());
    let mut queue: Vec<Elem> = vec![];
    for a in i.members.iter() {
        for b in j.members.iter() {
            let p = ring.mul(a, b);
            if mask.insert(p) {
                queue.push(p);
            }
        }
    }
    while let Some(x) = queue.pop() {
        for y in mask.clone().iter() {
            let s = ring.add(x, y);
            if mask.insert(s) {
                queue.push(s);
            }
        }
    }
    Ok(IdealSet::from_parts_unchecked(ring.clone(), mask))
}

/// Whether the proper ideal `P` is prime: no pair outside `P` multiplies
/// into `P`.  Improper input is an error, not `false`.
pub fn is_prime(p: &IdealSet) -> Result<bool> {
    Ok(prime_witness(p)?.is_none())
}

/// A pair `(a, b)` with `a, b ∉ P` but `ab ∈ P`, if one exists.
pub fn prime_witness(p: &IdealSet) -> Result<Option<(Elem, Elem)>> {
    if !p.is_proper() {
        return Err(Error::invalid("ideal", "primality asks a proper ideal"));
    }
    let ring = &p.ring;
    for a in ring.elements().filter(|&a| !p.contains(a)) {
        for b in ring.elements().filter(|&b| !p.contains(b)) {
            if p.contains(ring.mul(a, b)) {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}

/// Whether the proper ideal `P` is maximal: adjoining any outside element
/// generates the unit ideal.  Decided directly from the definition (no
/// zero-dimensionality shortcut): `P + (a) ∋ 1` for every `a ∉ P`.
pub fn is_maximal(p: &IdealSet) -> Result<bool> {
    if !p.is_proper() {
        return Err(Error::invalid("ideal", "maximality asks a proper ideal"));
    }
    let ring = &p.ring;
    let one = ring.one();
    for a in ring.elements().filter(|&a| !p.contains(a)) {
        let gen_a = principal(ring, a);
        // P + (a) is an ideal, so it is the unit ideal iff it contains 1.
        let hits_one = p
            .members
            .iter()
            .any(|x| gen_a.members.iter().any(|y| ring.add(x, y) == one));
        if !hits_one {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The prime spectrum of a ring: canonical list of primes plus maximality
/// flags.
#[derive(Clone, Debug)]
pub struct SpectrumList {
    ring: Arc<FiniteRing>,
    primes: Vec<IdealSet>,
    maximal_flags: Vec<bool>,
}

impl SpectrumList {
    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn prime(&self, i: usize) -> &IdealSet {
        &self.primes[i]
    }

    pub fn primes(&self) -> &[IdealSet] {
        &self.primes
    }

    pub fn is_max(&self, i: usize) -> bool {
        self.maximal_flags[i]
    }

    pub fn maximal_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.maximal_flags[i]).collect()
    }

    /// Index of a prime with the given member mask, if present.
    pub fn position_of(&self, ideal: &IdealSet) -> Option<usize> {
        self.primes
            .iter()
            .position(|p| p.members() == ideal.members())
    }
}

/// Enumerates the prime spectrum.
pub fn spec_of(ring: &Arc<FiniteRing>, limits: &Limits) -> Result<SpectrumList> {
    let mut primes = Vec::new();
    for ideal in enumerate_ideals(ring, limits)? {
        if ideal.is_proper() && is_prime(&ideal)? {
            primes.push(ideal);
        }
    }
    // enumerate_ideals returns masks in canonical order already.
    let maximal_flags = primes
        .iter()
        .map(is_maximal)
        .collect::<Result<Vec<bool>>>()?;
    Ok(SpectrumList {
        ring: ring.clone(),
        primes,
        maximal_flags,
    })
}

/// The maximal spectrum: the maximal ideals only (all flags true).
pub fn max_spec_of(ring: &Arc<FiniteRing>, limits: &Limits) -> Result<SpectrumList> {
    let full = spec_of(ring, limits)?;
    let keep: Vec<usize> = full.maximal_indices();
    Ok(SpectrumList {
        ring: full.ring.clone(),
        primes: keep.iter().map(|&i| full.primes[i].clone()).collect(),
        maximal_flags: vec![true; keep.len()],
    })
}

/// The nilradical: all nilpotent elements (no spectrum needed).
pub fn nilradical(ring: &Arc<FiniteRing>) -> IdealSet {
    let mask = Bitset::from_indices(
        ring.size(),
        ring.elements().filter(|&a| ring.is_nilpotent(a)),
    );
    IdealSet::new(ring.clone(), mask).expect("nilpotents form an ideal in a commutative ring")
}

/// The Jacobson radical: intersection of all maximal ideals.
pub fn jacobson(ring: &Arc<FiniteRing>, limits: &Limits) -> Result<IdealSet> {
    let max = max_spec_of(ring, limits)?;
    let mut mask = Bitset::full(ring.size());
    for p in max.primes() {
        mask.intersect_with(p.members());
    }
    Ok(IdealSet::from_parts_unchecked(ring.clone(), mask))
}

/// The radical `√I = {a : aᵏ ∈ I for some k ≥ 1}`, computed elementwise by
/// walking power sequences (each cycles within `|R|` steps).
pub fn radical(i: &IdealSet) -> IdealSet {
    let ring = &i.ring;
    let mask = Bitset::from_indices(
        ring.size(),
        ring.elements().filter(|&a| {
            let mut pow = a;
            for _ in 0..ring.size() {
                if i.contains(pow) {
                    return true;
                }
                pow = ring.mul(pow, a);
            }
            false
        }),
    );
    IdealSet::new(ring.clone(), mask).expect("the radical of an ideal is an ideal")
}

/// The vanishing locus `V(I)`: indices of spectrum primes containing `I`.
pub fn v_of(spectrum: &SpectrumList, i: &IdealSet) -> Result<Vec<usize>> {
    if !same_ring(&spectrum.ring, &i.ring) {
        return Err(Error::AmbientMismatch(format!(
            "V(I) with I over {} against the spectrum of {}",
            i.ring.name(),
            spectrum.ring.name()
        )));
    }
    Ok((0..spectrum.len())
        .filter(|&k| i.members().is_subset(spectrum.prime(k).members()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{make_product, make_zn};

    fn mask(ring: &Arc<FiniteRing>, xs: &[usize]) -> Bitset {
        Bitset::from_indices(ring.size(), xs.iter().copied())
    }

    /// Brute-force oracle: every subset containing 0 that satisfies the
    /// ideal axioms.  Exponential, so only for tiny rings.
    fn ideals_by_brute_force(ring: &Arc<FiniteRing>) -> Vec<Bitset> {
        let n = ring.size();
        assert!(n <= 16, "oracle is exponential");
        let mut out = Vec::new();
        'subsets: for bits in 0u32..(1 << n) {
            if bits >> ring.zero() & 1 == 0 {
                continue;
            }
            let m = Bitset::from_indices(n, (0..n).filter(|i| bits >> i & 1 == 1));
            for a in m.iter() {
                for b in m.iter() {
                    if !m.contains(ring.add(a, b)) {
                        continue 'subsets;
                    }
                }
                for r in ring.elements() {
                    if !m.contains(ring.mul(r, a)) {
                        continue 'subsets;
                    }
                }
            }
            out.push(m);
        }
        out.sort();
        out
    }

    #[test]
    fn generation_matches_small_cases() {
        let z6 = make_zn(6).unwrap();
        assert_eq!(ideal_generate(&z6, &[2]).elements(), vec![0, 2, 4]);
        assert_eq!(ideal_generate(&z6, &[]).elements(), vec![0]);
        assert!(ideal_generate(&z6, &[1]).members().is_full());
        assert_eq!(ideal_generate(&z6, &[2, 3]).size(), 6); // (2)+(3) = Z6
    }

    #[test]
    fn enumeration_agrees_with_brute_force() {
        for n in [2usize, 3, 4, 6, 8, 9, 12] {
            let ring = make_zn(n).unwrap();
            let fast: Vec<Bitset> = enumerate_ideals(&ring, &Limits::default())
                .unwrap()
                .into_iter()
                .map(|i| i.members().clone())
                .collect();
            assert_eq!(fast, ideals_by_brute_force(&ring), "Z{n}");
        }
        let p = make_product(&make_zn(2).unwrap(), &make_zn(2).unwrap()).unwrap();
        let fast: Vec<Bitset> = enumerate_ideals(&p, &Limits::default())
            .unwrap()
            .into_iter()
            .map(|i| i.members().clone())
            .collect();
        assert_eq!(fast, ideals_by_brute_force(&p));
    }

    #[test]
    fn z6_lattice_and_spectrum() {
        let z6 = make_zn(6).unwrap();
        let ideals = enumerate_ideals(&z6, &Limits::default()).unwrap();
        let masks: Vec<Vec<usize>> = ideals.iter().map(|i| i.elements()).collect();
        assert_eq!(
            masks,
            vec![
                vec![0],
                vec![0, 1, 2, 3, 4, 5],
                vec![0, 2, 4],
                vec![0, 3]
            ]
        );
        let spec = spec_of(&z6, &Limits::default()).unwrap();
        let primes: Vec<Vec<usize>> = spec.primes().iter().map(|p| p.elements()).collect();
        assert_eq!(primes, vec![vec![0, 2, 4], vec![0, 3]]);
        assert!(spec.is_max(0) && spec.is_max(1));
        assert!(jacobson(&z6, &Limits::default()).unwrap().is_zero());
        assert!(nilradical(&z6).is_zero());
    }

    #[test]
    fn z4_spectrum_and_nilradical() {
        let z4 = make_zn(4).unwrap();
        let ideals = enumerate_ideals(&z4, &Limits::default()).unwrap();
        let masks: Vec<Vec<usize>> = ideals.iter().map(|i| i.elements()).collect();
        assert_eq!(masks, vec![vec![0], vec![0, 1, 2, 3], vec![0, 2]]);
        let spec = spec_of(&z4, &Limits::default()).unwrap();
        assert_eq!(spec.len(), 1);
        assert_eq!(spec.prime(0).elements(), vec![0, 2]);
        assert!(spec.is_max(0));
        assert_eq!(nilradical(&z4).elements(), vec![0, 2]);
    }

    #[test]
    fn primality_and_witnesses() {
        let z6 = make_zn(6).unwrap();
        let two = IdealSet::new(z6.clone(), mask(&z6, &[0, 2, 4])).unwrap();
        assert!(is_prime(&two).unwrap());
        let zero = IdealSet::zero_ideal(&z6);
        // 2 * 3 = 0 lands in (0) with neither factor inside.
        assert!(!is_prime(&zero).unwrap());
        assert_eq!(prime_witness(&zero).unwrap(), Some((2, 3)));
        assert!(!is_maximal(&zero).unwrap());
        assert!(is_prime(&IdealSet::unit_ideal(&z6)).is_err());
    }

    #[test]
    fn sums_intersections_products_radicals() {
        let z6 = make_zn(6).unwrap();
        let two = IdealSet::new(z6.clone(), mask(&z6, &[0, 2, 4])).unwrap();
        let three = IdealSet::new(z6.clone(), mask(&z6, &[0, 3])).unwrap();
        assert!(ideal_sum(&two, &three).unwrap().members().is_full());
        assert!(ideal_intersect(&two, &three).unwrap().is_zero());
        assert!(ideal_product(&two, &three).unwrap().is_zero());

        let z12 = make_zn(12).unwrap();
        let four = ideal_generate(&z12, &[4]);
        assert_eq!(four.elements(), vec![0, 4, 8]);
        assert_eq!(radical(&four).elements(), vec![0, 2, 4, 6, 8, 10]);
        // Cross-check: radical = intersection of primes over the ideal.
        let spec = spec_of(&z12, &Limits::default()).unwrap();
        let over = v_of(&spec, &four).unwrap();
        let mut cap = Bitset::full(12);
        for k in over {
            cap.intersect_with(spec.prime(k).members());
        }
        assert_eq!(radical(&four).members(), &cap);
    }

    #[test]
    fn vanishing_locus() {
        let z6 = make_zn(6).unwrap();
        let spec = spec_of(&z6, &Limits::default()).unwrap();
        let two = IdealSet::new(z6.clone(), mask(&z6, &[0, 2, 4])).unwrap();
        assert_eq!(v_of(&spec, &two).unwrap(), vec![0]);
        let zero = IdealSet::zero_ideal(&z6);
        assert_eq!(v_of(&spec, &zero).unwrap(), vec![0, 1]);
    }

    #[test]
    fn non_ideal_masks_are_rejected() {
        let z6 = make_zn(6).unwrap();
        assert!(IdealSet::new(z6.clone(), mask(&z6, &[1, 2])).is_err()); // no zero
        assert!(IdealSet::new(z6.clone(), mask(&z6, &[0, 2])).is_err()); // 2+2 escapes... (2+2=4)
        assert!(IdealSet::new(z6.clone(), mask(&z6, &[0, 1])).is_err()); // not absorbing
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let z6 = make_zn(6).unwrap();
        let tight = Limits::with_cap(4);
        assert!(matches!(
            enumerate_ideals(&z6, &tight),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn generators_hint_recovers_principal_form() {
        let z12 = make_zn(12).unwrap();
        let four = ideal_generate(&z12, &[4]);
        assert_eq!(four.generators_hint(), vec![4]);
        assert_eq!(IdealSet::zero_ideal(&z12).generators_hint(), Vec::<usize>::new());
    }
}
