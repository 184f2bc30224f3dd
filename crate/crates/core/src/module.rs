//! Finite modules over a finite commutative ring, as dense tables.
//!
//! A module on `m` elements over a ring `R` stores an `m × m` addition table
//! and an `|R| × m` scalar action table.  Validation mirrors the ring case:
//! abelian group axioms for `+`, additivity of the action in both arguments,
//! compatibility with ring multiplication, and `1 · u = u`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{Elem, FiniteRing, MAX_RING_SIZE};

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteModule {
    name: String,
    ring: Arc<FiniteRing>,
    size: usize,
    zero: u16,
    add: Vec<u16>,
    action: Vec<u16>, // ring.size() × size, row-major by scalar
}

impl fmt::Debug for FiniteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteModule({}, {} elements over {})",
            self.name,
            self.size,
            self.ring.name()
        )
    }
}

impl FiniteModule {
    pub fn new(
        name: impl Into<String>,
        ring: Arc<FiniteRing>,
        zero: Elem,
        add: Vec<Vec<Elem>>,
        action: Vec<Vec<Elem>>,
    ) -> Result<Self> {
        let name = name.into();
        let size = add.len();
        let fail = |message: String| Err(Error::invalid("module", message));
        if size == 0 {
            return fail("empty carrier".into());
        }
        if size > MAX_RING_SIZE {
            return Err(Error::CapExceeded {
                what: "module carrier",
                size,
                cap: MAX_RING_SIZE,
            });
        }
        if add.iter().any(|row| row.len() != size) {
            return fail(format!("addition table is not {size}x{size}"));
        }
        if action.len() != ring.size() || action.iter().any(|row| row.len() != size) {
            return fail(format!(
                "action table is not {}x{size}",
                ring.size()
            ));
        }
        if zero >= size
            || add.iter().flatten().any(|&x| x >= size)
            || action.iter().flatten().any(|&x| x >= size)
        {
            return fail("table entry out of range".into());
        }
        // Abelian group axioms.
        for (u, &v) in add[zero].iter().enumerate() {
            if v != u {
                return fail(format!("0 + {u} = {v}"));
            }
        }
        let mut seen = vec![false; size];
        for u in 0..size {
            seen.iter_mut().for_each(|s| *s = false);
            for v in 0..size {
                if add[u][v] != add[v][u] {
                    return fail(format!("addition not commutative at ({u},{v})"));
                }
                if seen[add[u][v]] {
                    return fail(format!("row {u} of + repeats a value (no inverses)"));
                }
                seen[add[u][v]] = true;
            }
        }
        for a in 0..size {
            for b in 0..size {
                for c in 0..size {
                    if add[add[a][b]][c] != add[a][add[b][c]] {
                        return fail(format!("addition not associative at ({a},{b},{c})"));
                    }
                }
            }
        }
        // Action axioms.
        for (u, &v) in action[ring.one()].iter().enumerate() {
            if v != u {
                return fail(format!("1 · {u} = {v}"));
            }
        }
        for r in ring.elements() {
            for u in 0..size {
                for v in 0..size {
                    if action[r][add[u][v]] != add[action[r][u]][action[r][v]] {
                        return fail(format!("r·(u+v) ≠ r·u + r·v at ({r},{u},{v})"));
                    }
                }
            }
        }
        for r in ring.elements() {
            for s in ring.elements() {
                for u in 0..size {
                    if action[ring.add(r, s)][u] != add[action[r][u]][action[s][u]] {
                        return fail(format!("(r+s)·u ≠ r·u + s·u at ({r},{s},{u})"));
                    }
                    if action[ring.mul(r, s)][u] != action[r][action[s][u]] {
                        return fail(format!("(rs)·u ≠ r·(s·u) at ({r},{s},{u})"));
                    }
                }
            }
        }
        let flat = |t: Vec<Vec<Elem>>| -> Vec<u16> {
            t.into_iter()
                .flat_map(|row| row.into_iter().map(|x| x as u16))
                .collect()
        };
        Ok(FiniteModule {
            name,
            ring,
            size,
            zero: zero as u16,
            add: flat(add),
            action: flat(action),
        })
    }

    /// The ring viewed as a module over itself (addition and action are the
    /// ring's own tables).
    pub fn regular(ring: &Arc<FiniteRing>) -> Self {
        let add = ring.add_table();
        let action = ring.mul_table();
        FiniteModule::new(ring.name().to_string(), ring.clone(), ring.zero(), add, action)
            .expect("a ring is a module over itself")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> Elem {
        self.zero as Elem
    }

    #[inline]
    pub fn add(&self, u: Elem, v: Elem) -> Elem {
        self.add[u * self.size + v] as Elem
    }

    /// Scalar action `r · u`.
    #[inline]
    pub fn act(&self, r: Elem, u: Elem) -> Elem {
        self.action[r * self.size + u] as Elem
    }

    pub fn add_table(&self) -> Vec<Vec<Elem>> {
        (0..self.size)
            .map(|u| (0..self.size).map(|v| self.add(u, v)).collect())
            .collect()
    }

    pub fn action_table(&self) -> Vec<Vec<Elem>> {
        self.ring
            .elements()
            .map(|r| (0..self.size).map(|u| self.act(r, u)).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::make_zn;

    #[test]
    fn regular_module_satisfies_axioms() {
        let z6 = make_zn(6).unwrap();
        let m = FiniteModule::regular(&z6);
        assert_eq!(m.size(), 6);
        assert_eq!(m.act(4, 5), 2);
        assert_eq!(m.add(4, 5), 3);
    }

    #[test]
    fn corrupted_action_is_rejected() {
        let z4 = make_zn(4).unwrap();
        let add = z4.add_table();
        let mut action = z4.mul_table();
        action[2][3] = 1; // 2·3 should be 2 in Z4
        let err = FiniteModule::new("bad", z4.clone(), 0, add, action).unwrap_err();
        assert!(matches!(err, Error::Invalid { kind: "module", .. }));
    }

    #[test]
    fn zero_action_follows_from_bilinearity() {
        let z6 = make_zn(6).unwrap();
        let m = FiniteModule::regular(&z6);
        for u in 0..m.size() {
            assert_eq!(m.act(z6.zero(), u), m.zero());
        }
    }
}
