//! Finite commutative rings with identity as dense operation tables.
//!
//! A ring on `n` elements is stored as canonical indices `0..n` with full
//! `n × n` addition and multiplication tables.  Construction always validates
//! the axioms:
//!
//! 1. `(R, +)` is an abelian group with identity `zero` (identity row,
//!    commutativity, associativity, and each row a permutation — which,
//!    together with the identity, yields inverses);
//! 2. `·` is commutative and associative with identity `one`;
//! 3. `·` distributes over `+`;
//! 4. `one ≠ zero` (the zero ring is rejected).
//!
//! The cubic checks (associativity, distributivity) run in full up to a
//! configurable size and switch to fixed-seed random sampling above it.
//! Validation reports the first violated axiom together with witnessing
//! elements rather than panicking, so deliberately corrupted tables can be
//! probed in tests.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::error::{Error, Result};
use crate::hom::RingHom;
use crate::ideal::IdealSet;
use crate::module::FiniteModule;

/// Index of a ring element in its canonical enumeration.
pub type Elem = usize;

/// Hard ceiling on ring sizes, independent of the (smaller) enumeration cap:
/// tables are quadratic in the element count and entries are stored as `u16`.
pub const MAX_RING_SIZE: usize = 4096;

/// A violated ring axiom, with the elements that witness the failure.
#[derive(Debug, Clone, Error)]
#[error("axiom `{axiom}` fails at {witness:?}: {detail}")]
pub struct Violation {
    pub axiom: &'static str,
    pub witness: Vec<Elem>,
    pub detail: String,
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::invalid("ring", v.to_string())
    }
}

/// How hard to work when validating operation tables.
#[derive(Clone, Debug)]
pub struct ValidationPolicy {
    /// Run the full cubic associativity/distributivity checks up to this
    /// element count.
    pub full_check_max: usize,
    /// Above the cutoff, check this many fixed-seed random triples instead.
    pub sample_triples: usize,
    pub seed: u64,
}

impl Default for ValidationPolicy {
    fn default() -> Self {
        ValidationPolicy {
            full_check_max: 256,
            sample_triples: 200_000,
            seed: 0x0b_0e71e,
        }
    }
}

/// A finite commutative ring with identity.
///
/// Values are immutable once built and shared via [`Arc`]; all constructors
/// return validated instances.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteRing {
    name: String,
    size: usize,
    zero: u16,
    one: u16,
    neg: Vec<u16>,
    add: Vec<u16>,
    mul: Vec<u16>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({}, {} elements)", self.name, self.size)
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

impl FiniteRing {
    /// Builds a ring from nested operation tables, validating all axioms
    /// under the default policy.
    pub fn from_tables(
        name: impl Into<String>,
        zero: Elem,
        one: Elem,
        add: Vec<Vec<Elem>>,
        mul: Vec<Vec<Elem>>,
    ) -> Result<Arc<Self>> {
        Self::from_tables_with(name, zero, one, add, mul, &ValidationPolicy::default())
    }

    /// As [`FiniteRing::from_tables`] with an explicit validation policy.
    pub fn from_tables_with(
        name: impl Into<String>,
        zero: Elem,
        one: Elem,
        add: Vec<Vec<Elem>>,
        mul: Vec<Vec<Elem>>,
        policy: &ValidationPolicy,
    ) -> Result<Arc<Self>> {
        let name = name.into();
        let size = add.len();
        if size == 0 {
            return Err(Error::invalid("ring", "empty carrier"));
        }
        if size > MAX_RING_SIZE {
            return Err(Error::CapExceeded {
                what: "ring carrier",
                size,
                cap: MAX_RING_SIZE,
            });
        }
        validate_tables(size, zero, one, &add, &mul, policy)?;
        let flat = |t: Vec<Vec<Elem>>| -> Vec<u16> {
            t.into_iter()
                .flat_map(|row| row.into_iter().map(|x| x as u16))
                .collect()
        };
        let add = flat(add);
        let mul = flat(mul);
        let mut neg = vec![0u16; size];
        for a in 0..size {
            for b in 0..size {
                if add[a * size + b] as usize == zero {
                    neg[a] = b as u16;
                    break;
                }
            }
        }
        Ok(Arc::new(FiniteRing {
            name,
            size,
            zero: zero as u16,
            one: one as u16,
            neg,
            add,
            mul,
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> Elem {
        self.zero as Elem
    }

    pub fn one(&self) -> Elem {
        self.one as Elem
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a * self.size + b] as Elem
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.size + b] as Elem
    }

    /// Additive inverse.
    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a] as Elem
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size
    }

    /// Order of `a` in the additive group.
    pub fn add_order(&self, a: Elem) -> usize {
        let mut acc = a;
        let mut k = 1;
        while acc != self.zero() {
            acc = self.add(acc, a);
            k += 1;
        }
        k
    }

    /// Whether some power of `a` is zero.  The power sequence over a finite
    /// carrier cycles within `size` steps, so the search is bounded.
    pub fn is_nilpotent(&self, a: Elem) -> bool {
        let mut pow = a;
        for _ in 0..self.size {
            if pow == self.zero() {
                return true;
            }
            pow = self.mul(pow, a);
        }
        false
    }

    /// The addition table in nested form (for serialization).
    pub fn add_table(&self) -> Vec<Vec<Elem>> {
        (0..self.size)
            .map(|a| (0..self.size).map(|b| self.add(a, b)).collect())
            .collect()
    }

    /// The multiplication table in nested form (for serialization).
    pub fn mul_table(&self) -> Vec<Vec<Elem>> {
        (0..self.size)
            .map(|a| (0..self.size).map(|b| self.mul(a, b)).collect())
            .collect()
    }
}

/// Two ring handles denote the same ring if they are literally shared or
/// structurally equal (same tables and constants; names are ignored).
pub fn same_ring(a: &Arc<FiniteRing>, b: &Arc<FiniteRing>) -> bool {
    Arc::ptr_eq(a, b)
        || (a.size == b.size
            && a.zero == b.zero
            && a.one == b.one
            && a.add == b.add
            && a.mul == b.mul)
}

/// Validates operation tables against the ring axioms, reporting the first
/// violation.  `add`/`mul` are `size × size` nested tables.
pub fn validate_tables(
    size: usize,
    zero: Elem,
    one: Elem,
    add: &[Vec<Elem>],
    mul: &[Vec<Elem>],
    policy: &ValidationPolicy,
) -> std::result::Result<(), Violation> {
    let shape_ok = |t: &[Vec<Elem>], what: &'static str| {
        if t.len() != size || t.iter().any(|row| row.len() != size) {
            return Err(Violation {
                axiom: what,
                witness: vec![],
                detail: format!("table is not {size}x{size}"),
            });
        }
        for (a, row) in t.iter().enumerate() {
            for (b, &x) in row.iter().enumerate() {
                if x >= size {
                    return Err(Violation {
                        axiom: what,
                        witness: vec![a, b],
                        detail: format!("entry {x} out of range 0..{size}"),
                    });
                }
            }
        }
        Ok(())
    };
    shape_ok(add, "add-closure")?;
    shape_ok(mul, "mul-closure")?;
    if zero >= size || one >= size {
        return Err(Violation {
            axiom: "constants",
            witness: vec![zero, one],
            detail: "zero or one out of range".into(),
        });
    }
    if zero == one {
        return Err(Violation {
            axiom: "nontrivial",
            witness: vec![zero],
            detail: "one equals zero (zero ring rejected)".into(),
        });
    }

    for a in 0..size {
        if add[zero][a] != a || add[a][zero] != a {
            return Err(Violation {
                axiom: "add-identity",
                witness: vec![a],
                detail: format!("0 + {a} = {}", add[zero][a]),
            });
        }
        if mul[one][a] != a || mul[a][one] != a {
            return Err(Violation {
                axiom: "mul-identity",
                witness: vec![a],
                detail: format!("1 * {a} = {}", mul[one][a]),
            });
        }
    }

    for a in 0..size {
        for b in 0..a {
            if add[a][b] != add[b][a] {
                return Err(Violation {
                    axiom: "add-commutativity",
                    witness: vec![a, b],
                    detail: format!("{a}+{b}={} but {b}+{a}={}", add[a][b], add[b][a]),
                });
            }
            if mul[a][b] != mul[b][a] {
                return Err(Violation {
                    axiom: "mul-commutativity",
                    witness: vec![a, b],
                    detail: format!("{a}*{b}={} but {b}*{a}={}", mul[a][b], mul[b][a]),
                });
            }
        }
    }

    // Each addition row must be a permutation; with the identity row in hand
    // this forces additive inverses to exist.
    let mut seen = vec![false; size];
    for (a, row) in add.iter().enumerate() {
        seen.iter_mut().for_each(|s| *s = false);
        for (b, &x) in row.iter().enumerate() {
            if seen[x] {
                return Err(Violation {
                    axiom: "add-invertibility",
                    witness: vec![a, b, x],
                    detail: format!("row {a} of + repeats value {x}"),
                });
            }
            seen[x] = true;
        }
    }

    let check_triple = |a: usize, b: usize, c: usize| -> std::result::Result<(), Violation> {
        let ab_c = add[add[a][b]][c];
        let a_bc = add[a][add[b][c]];
        if ab_c != a_bc {
            return Err(Violation {
                axiom: "add-associativity",
                witness: vec![a, b, c],
                detail: format!("({a}+{b})+{c}={ab_c} but {a}+({b}+{c})={a_bc}"),
            });
        }
        let mab_c = mul[mul[a][b]][c];
        let ma_bc = mul[a][mul[b][c]];
        if mab_c != ma_bc {
            return Err(Violation {
                axiom: "mul-associativity",
                witness: vec![a, b, c],
                detail: format!("({a}*{b})*{c}={mab_c} but {a}*({b}*{c})={ma_bc}"),
            });
        }
        let lhs = mul[a][add[b][c]];
        let rhs = add[mul[a][b]][mul[a][c]];
        if lhs != rhs {
            return Err(Violation {
                axiom: "distributivity",
                witness: vec![a, b, c],
                detail: format!("{a}*({b}+{c})={lhs} but {a}*{b}+{a}*{c}={rhs}"),
            });
        }
        Ok(())
    };

    if size <= policy.full_check_max {
        for a in 0..size {
            for b in 0..size {
                for c in 0..size {
                    check_triple(a, b, c)?;
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
        for _ in 0..policy.sample_triples {
            let a = rng.random_range(0..size);
            let b = rng.random_range(0..size);
            let c = rng.random_range(0..size);
            check_triple(a, b, c)?;
        }
    }
    Ok(())
}

/// Re-validates an already constructed ring (used by conformance tests).
pub fn validate_ring(
    ring: &FiniteRing,
    policy: &ValidationPolicy,
) -> std::result::Result<(), Violation> {
    validate_tables(
        ring.size,
        ring.zero(),
        ring.one(),
        &ring.add_table(),
        &ring.mul_table(),
        policy,
    )
}

/// The ring of integers modulo `n` (`n ≥ 2`).
pub fn make_zn(n: usize) -> Result<Arc<FiniteRing>> {
    if n < 2 {
        return Err(Error::invalid(
            "ring",
            format!("Z_n requires n >= 2, got {n}"),
        ));
    }
    if n > MAX_RING_SIZE {
        return Err(Error::CapExceeded {
            what: "ring carrier",
            size: n,
            cap: MAX_RING_SIZE,
        });
    }
    let add = (0..n)
        .map(|a| (0..n).map(|b| (a + b) % n).collect())
        .collect();
    let mul = (0..n)
        .map(|a| (0..n).map(|b| (a * b) % n).collect())
        .collect();
    FiniteRing::from_tables(format!("Z{n}"), 0, 1, add, mul)
}

/// The direct product `A × B` with componentwise operations.  Element
/// `(x, y)` sits at index `x * |B| + y`.
pub fn make_product(a: &Arc<FiniteRing>, b: &Arc<FiniteRing>) -> Result<Arc<FiniteRing>> {
    let n = a.size() * b.size();
    if n > MAX_RING_SIZE {
        return Err(Error::CapExceeded {
            what: "ring carrier",
            size: n,
            cap: MAX_RING_SIZE,
        });
    }
    let idx = |x: Elem, y: Elem| x * b.size() + y;
    let componentwise = |f: &dyn Fn(&FiniteRing, Elem, Elem) -> Elem| -> Vec<Vec<Elem>> {
        (0..n)
            .map(|p| {
                let (x1, y1) = (p / b.size(), p % b.size());
                (0..n)
                    .map(|q| {
                        let (x2, y2) = (q / b.size(), q % b.size());
                        idx(f(a, x1, x2), f(b, y1, y2))
                    })
                    .collect()
            })
            .collect()
    };
    let add = componentwise(&FiniteRing::add);
    let mul = componentwise(&FiniteRing::mul);
    FiniteRing::from_tables(
        format!("{}x{}", a.name(), b.name()),
        idx(a.zero(), b.zero()),
        idx(a.one(), b.one()),
        add,
        mul,
    )
}

/// The quotient `A / I` by a proper ideal, together with the quotient map.
///
/// Cosets are represented by their smallest member index; quotient elements
/// are the distinct representatives in increasing order.  `I = (0)` is
/// allowed and yields an isomorphic relabeling of `A`.
pub fn make_quotient(
    a: &Arc<FiniteRing>,
    i: &IdealSet,
) -> Result<(Arc<FiniteRing>, RingHom)> {
    if !same_ring(i.ring(), a) {
        return Err(Error::AmbientMismatch(format!(
            "ideal over {} used to quotient {}",
            i.ring().name(),
            a.name()
        )));
    }
    if !i.is_proper() {
        return Err(Error::invalid(
            "ideal",
            "cannot quotient by the unit ideal (the zero ring is not a ring here)",
        ));
    }
    let n = a.size();
    // rep[x] = least element of the coset x + I.
    let mut rep = vec![usize::MAX; n];
    for (x, slot) in rep.iter_mut().enumerate() {
        let mut least = x;
        for j in i.members().iter() {
            least = least.min(a.add(x, j));
        }
        *slot = least;
    }
    let mut reps: Vec<Elem> = rep.clone();
    reps.sort_unstable();
    reps.dedup();
    let mut class_of = vec![usize::MAX; n];
    for (k, &r) in reps.iter().enumerate() {
        class_of[r] = k;
    }
    let q_size = reps.len();
    let table = |f: &dyn Fn(Elem, Elem) -> Elem| -> Vec<Vec<Elem>> {
        (0..q_size)
            .map(|u| {
                (0..q_size)
                    .map(|v| class_of[rep[f(reps[u], reps[v])]])
                    .collect()
            })
            .collect()
    };
    let add = table(&|x, y| a.add(x, y));
    let mul = table(&|x, y| a.mul(x, y));
    let quotient = FiniteRing::from_tables(
        format!("{}/{}", a.name(), i.members()),
        class_of[rep[a.zero()]],
        class_of[rep[a.one()]],
        add,
        mul,
    )?;
    let map: Vec<Elem> = (0..n).map(|x| class_of[rep[x]]).collect();
    let projection = RingHom::new(a.clone(), quotient.clone(), map)?;
    Ok((quotient, projection))
}

/// A trivial extension `R ⋉ M` together with the embedded copy of `M`.
pub struct TrivialExtension {
    /// The extension ring on carrier `R × M`.
    pub ring: Arc<FiniteRing>,
    /// The ideal `{0} × M`, which squares to zero.
    pub embedded_module: IdealSet,
    /// Width of the `M` component: element `(r, m)` has index
    /// `r * module_size + m`.
    pub module_size: usize,
}

/// The trivial extension (idealization) `R ⋉ M`: carrier `R × M`,
/// componentwise addition, and `(r, m)·(r', m') = (r r', r·m' + r'·m)`.
pub fn make_trivial_extension(
    r: &Arc<FiniteRing>,
    m: &FiniteModule,
) -> Result<TrivialExtension> {
    if !same_ring(m.ring(), r) {
        return Err(Error::AmbientMismatch(format!(
            "module over {} idealized against {}",
            m.ring().name(),
            r.name()
        )));
    }
    let msize = m.size();
    let n = r.size() * msize;
    if n > MAX_RING_SIZE {
        return Err(Error::CapExceeded {
            what: "ring carrier",
            size: n,
            cap: MAX_RING_SIZE,
        });
    }
    let idx = |x: Elem, u: Elem| x * msize + u;
    let mut add = vec![vec![0usize; n]; n];
    let mut mul = vec![vec![0usize; n]; n];
    for p in 0..n {
        let (x1, u1) = (p / msize, p % msize);
        for q in 0..n {
            let (x2, u2) = (q / msize, q % msize);
            add[p][q] = idx(r.add(x1, x2), m.add(u1, u2));
            mul[p][q] = idx(r.mul(x1, x2), m.add(m.act(x1, u2), m.act(x2, u1)));
        }
    }
    let ring = FiniteRing::from_tables(
        format!("{}⋉{}", r.name(), m.name()),
        idx(r.zero(), m.zero()),
        idx(r.one(), m.zero()),
        add,
        mul,
    )?;
    let mask = crate::bitset::Bitset::from_indices(n, (0..msize).map(|u| idx(r.zero(), u)));
    let embedded_module = IdealSet::new(ring.clone(), mask)?;
    Ok(TrivialExtension {
        ring,
        embedded_module,
        module_size: msize,
    })
}
