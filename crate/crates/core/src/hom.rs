//! Unital ring homomorphisms as full element maps.
//!
//! A map `f: R → S` is validated exhaustively: `f(0) = 0`, `f(1) = 1`, and
//! additivity/multiplicativity over all pairs.  Preimages of ideals are
//! ideals by construction; preimages of primes are prime (checked where the
//! spectrum code relies on it).
//!
//! `enumerate_homs` finds every unital homomorphism between two rings by
//! backtracking over images of a small additive generating set: a candidate
//! image is pruned unless its additive order divides the generator's, each
//! partial assignment is propagated through the additive span, and complete
//! maps are kept only if they also preserve 1 and multiplication.

use std::fmt;
use std::sync::Arc;

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::ideal::IdealSet;
use crate::ring::{same_ring, Elem, FiniteRing};

#[derive(Clone)]
pub struct RingHom {
    domain: Arc<FiniteRing>,
    codomain: Arc<FiniteRing>,
    map: Vec<u16>,
}

impl PartialEq for RingHom {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.domain, &other.domain)
            && same_ring(&self.codomain, &other.codomain)
            && self.map == other.map
    }
}
impl Eq for RingHom {}

impl fmt::Debug for RingHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RingHom({} -> {}, {:?})",
            self.domain.name(),
            self.codomain.name(),
            self.map
        )
    }
}

impl RingHom {
    /// Validates and wraps an element map.
    pub fn new(
        domain: Arc<FiniteRing>,
        codomain: Arc<FiniteRing>,
        map: Vec<Elem>,
    ) -> Result<Self> {
        if map.len() != domain.size() {
            return Err(Error::invalid(
                "hom",
                format!(
                    "map covers {} elements, domain has {}",
                    map.len(),
                    domain.size()
                ),
            ));
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= codomain.size()) {
            return Err(Error::invalid(
                "hom",
                format!("image {bad} out of range for codomain"),
            ));
        }
        if map[domain.zero()] != codomain.zero() {
            return Err(Error::invalid(
                "hom",
                format!("f(0) = {} ≠ 0", map[domain.zero()]),
            ));
        }
        if map[domain.one()] != codomain.one() {
            return Err(Error::invalid(
                "hom",
                format!("f(1) = {} ≠ 1", map[domain.one()]),
            ));
        }
        for a in domain.elements() {
            for b in domain.elements() {
                if map[domain.add(a, b)] != codomain.add(map[a], map[b]) {
                    return Err(Error::invalid(
                        "hom",
                        format!(
                            "additivity fails at ({a},{b}): f({a}+{b})={} but f({a})+f({b})={}",
                            map[domain.add(a, b)],
                            codomain.add(map[a], map[b])
                        ),
                    ));
                }
                if map[domain.mul(a, b)] != codomain.mul(map[a], map[b]) {
                    return Err(Error::invalid(
                        "hom",
                        format!(
                            "multiplicativity fails at ({a},{b}): f({a}*{b})={} but f({a})f({b})={}",
                            map[domain.mul(a, b)],
                            codomain.mul(map[a], map[b])
                        ),
                    ));
                }
            }
        }
        Ok(RingHom {
            domain,
            codomain,
            map: map.into_iter().map(|x| x as u16).collect(),
        })
    }

    pub fn identity(ring: &Arc<FiniteRing>) -> Self {
        RingHom {
            domain: ring.clone(),
            codomain: ring.clone(),
            map: (0..ring.size()).map(|x| x as u16).collect(),
        }
    }

    pub fn domain(&self) -> &Arc<FiniteRing> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FiniteRing> {
        &self.codomain
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a] as Elem
    }

    pub fn map(&self) -> Vec<Elem> {
        self.map.iter().map(|&x| x as Elem).collect()
    }

    pub fn is_surjective(&self) -> bool {
        let mut image = Bitset::new(self.codomain.size());
        for &y in &self.map {
            image.insert(y as usize);
        }
        image.is_full()
    }

    pub fn is_injective(&self) -> bool {
        let mut image = Bitset::new(self.codomain.size());
        self.map.iter().all(|&y| image.insert(y as usize))
    }

    pub fn is_identity(&self) -> bool {
        same_ring(&self.domain, &self.codomain)
            && self.map.iter().enumerate().all(|(i, &y)| i == y as usize)
    }

    /// The kernel `f⁻¹(0)`.
    pub fn kernel(&self) -> IdealSet {
        let zero = IdealSet::zero_ideal(&self.codomain);
        preimage_ideal(self, &zero).expect("kernel is a preimage over the right ring")
    }

    /// Composition `g ∘ f` where `self = f`.
    pub fn then(&self, g: &RingHom) -> Result<RingHom> {
        if !same_ring(&self.codomain, &g.domain) {
            return Err(Error::AmbientMismatch(format!(
                "composing {} -> {} with {} -> {}",
                self.domain.name(),
                self.codomain.name(),
                g.domain.name(),
                g.codomain.name()
            )));
        }
        Ok(RingHom {
            domain: self.domain.clone(),
            codomain: g.codomain.clone(),
            map: self.map.iter().map(|&x| g.map[x as usize]).collect(),
        })
    }
}

/// The preimage `f⁻¹(Q)` of an ideal of the codomain — an ideal of the
/// domain by construction.
pub fn preimage_ideal(f: &RingHom, q: &IdealSet) -> Result<IdealSet> {
    if !same_ring(q.ring(), &f.codomain) {
        return Err(Error::AmbientMismatch(format!(
            "preimage of an ideal over {} under a hom into {}",
            q.ring().name(),
            f.codomain.name()
        )));
    }
    let mask = Bitset::from_indices(
        f.domain.size(),
        f.domain.elements().filter(|&a| q.contains(f.apply(a))),
    );
    Ok(IdealSet::from_parts_unchecked(f.domain.clone(), mask))
}

/// The image `f(I)` of an ideal under a **surjective** homomorphism (only
/// then is the image an ideal).
pub fn image_ideal(f: &RingHom, i: &IdealSet) -> Result<IdealSet> {
    if !same_ring(i.ring(), &f.domain) {
        return Err(Error::AmbientMismatch(format!(
            "image of an ideal over {} under a hom from {}",
            i.ring().name(),
            f.domain.name()
        )));
    }
    if !f.is_surjective() {
        return Err(Error::invalid(
            "hom",
            "image of an ideal requires a surjective homomorphism",
        ));
    }
    let mask = Bitset::from_indices(f.codomain.size(), i.members().iter().map(|a| f.apply(a)));
    IdealSet::new(f.codomain.clone(), mask)
}

/// A minimal additive generating sequence, chosen greedily by least index.
fn additive_generators(ring: &FiniteRing) -> Vec<Elem> {
    let mut gens = Vec::new();
    let mut span = additive_span(ring, &gens);
    while !span.is_full() {
        let g = ring
            .elements()
            .find(|&x| !span.contains(x))
            .expect("span not full");
        gens.push(g);
        span = additive_span(ring, &gens);
    }
    gens
}

/// The additive subgroup generated by `gens` (closure under addition; in a
/// finite group this includes inverses).
fn additive_span(ring: &FiniteRing, gens: &[Elem]) -> Bitset {
    let mut mask = Bitset::new(ring.size());
    mask.insert(ring.zero());
    let mut queue = vec![ring.zero()];
    for &g in gens {
        if mask.insert(g) {
            queue.push(g);
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
    mask
}

/// Every unital ring homomorphism `domain → codomain`, in a deterministic
/// order (lexicographic on the element map).
pub fn enumerate_homs(domain: &Arc<FiniteRing>, codomain: &Arc<FiniteRing>) -> Vec<RingHom> {
    let gens = additive_generators(domain);
    let gen_orders: Vec<usize> = gens.iter().map(|&g| domain.add_order(g)).collect();
    let mut results = Vec::new();
    let mut images = vec![0 as Elem; gens.len()];
    search_homs(
        domain,
        codomain,
        &gens,
        &gen_orders,
        0,
        &mut images,
        &mut results,
    );
    results.sort_by(|a, b| a.map.cmp(&b.map));
    results
}

fn search_homs(
    domain: &Arc<FiniteRing>,
    codomain: &Arc<FiniteRing>,
    gens: &[Elem],
    gen_orders: &[usize],
    depth: usize,
    images: &mut Vec<Elem>,
    results: &mut Vec<RingHom>,
) {
    if depth == gens.len() {
        if let Some(map) = propagate_additively(domain, codomain, gens, images) {
            // The additive span of the generators is everything, so `map` is
            // total; accept it only if it is a genuine unital ring hom.
            if let Ok(hom) = RingHom::new(domain.clone(), codomain.clone(), map) {
                results.push(hom);
            }
        }
        return;
    }
    for y in codomain.elements() {
        // ord(f(g)) must divide ord(g).
        if !gen_orders[depth].is_multiple_of(codomain.add_order(y)) {
            continue;
        }
        images[depth] = y;
        // Consistency is settled by propagation at the leaf; propagating at
        // every level costs more than it saves at these sizes.
        search_homs(domain, codomain, gens, gen_orders, depth + 1, images, results);
    }
}

/// Extends `gens ↦ images` additively to a total map, or detects a clash.
fn propagate_additively(
    domain: &FiniteRing,
    codomain: &FiniteRing,
    gens: &[Elem],
    images: &[Elem],
) -> Option<Vec<Elem>> {
    let n = domain.size();
    let mut map: Vec<Option<Elem>> = vec![None; n];
    map[domain.zero()] = Some(codomain.zero());
    for (&g, &y) in gens.iter().zip(images) {
        if let Some(prev) = map[g] {
            if prev != y {
                return None;
            }
        }
        map[g] = Some(y);
    }
    // Worklist closure: whenever a and b are defined, a+b must map to
    // f(a)+f(b).
    let mut changed = true;
    while changed {
        changed = false;
        for a in 0..n {
            let Some(fa) = map[a] else { continue };
            for b in a..n {
                let Some(fb) = map[b] else { continue };
                let s = domain.add(a, b);
                let fs = codomain.add(fa, fb);
                match map[s] {
                    None => {
                        map[s] = Some(fs);
                        changed = true;
                    }
                    Some(prev) if prev != fs => return None,
                    _ => {}
                }
            }
        }
    }
    map.into_iter().collect()
}
