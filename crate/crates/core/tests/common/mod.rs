//! Shared helpers for the integration suites.

use std::sync::Arc;

use bowtie_core::{Elem, FiniteRing};

/// Per-element invariants preserved by any ring isomorphism; used to prune
/// the bijection search.
fn signature(r: &FiniteRing, a: Elem) -> (usize, bool, bool) {
    let idempotent = r.mul(a, a) == a;
    (r.add_order(a), r.is_nilpotent(a), idempotent)
}

fn extend(
    a: &FiniteRing,
    b: &FiniteRing,
    map: &mut Vec<Option<Elem>>,
    used: &mut Vec<bool>,
) -> bool {
    // Propagate forced images: if x and y are mapped, x+y and x·y are too.
    let mut forced: Vec<(Elem, Elem)> = Vec::new();
    loop {
        forced.clear();
        for x in 0..a.size() {
            let Some(fx) = map[x] else { continue };
            for y in x..a.size() {
                let Some(fy) = map[y] else { continue };
                for (s, fs) in [
                    (a.add(x, y), b.add(fx, fy)),
                    (a.mul(x, y), b.mul(fx, fy)),
                ] {
                    match map[s] {
                        Some(img) if img != fs => return false,
                        Some(_) => {}
                        None => forced.push((s, fs)),
                    }
                }
            }
        }
        if forced.is_empty() {
            break;
        }
        let mut changed = false;
        for &(s, fs) in &forced {
            match map[s] {
                Some(img) if img != fs => return false,
                Some(_) => {}
                None => {
                    if used[fs] {
                        return false;
                    }
                    map[s] = Some(fs);
                    used[fs] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }

    let Some(x) = map.iter().position(Option::is_none) else {
        return true;
    };
    let sig = signature(a, x);
    for t in 0..b.size() {
        if used[t] || signature(b, t) != sig {
            continue;
        }
        let saved_map = map.clone();
        let saved_used = used.clone();
        map[x] = Some(t);
        used[t] = true;
        if extend(a, b, map, used) {
            return true;
        }
        *map = saved_map;
        *used = saved_used;
    }
    false
}

/// Decides whether two finite rings are isomorphic by backtracking over
/// structure-preserving bijections (intended for small test rings).
pub fn ring_isomorphic(a: &Arc<FiniteRing>, b: &Arc<FiniteRing>) -> bool {
    if a.size() != b.size() {
        return false;
    }
    let mut sig_a: Vec<_> = (0..a.size()).map(|x| signature(a, x)).collect();
    let mut sig_b: Vec<_> = (0..b.size()).map(|x| signature(b, x)).collect();
    sig_a.sort();
    sig_b.sort();
    if sig_a != sig_b {
        return false;
    }
    let mut map: Vec<Option<Elem>> = vec![None; a.size()];
    let mut used = vec![false; b.size()];
    map[a.zero()] = Some(b.zero());
    used[b.zero()] = true;
    if a.one() != a.zero() {
        if used[b.one()] {
            return false;
        }
        map[a.one()] = Some(b.one());
        used[b.one()] = true;
    }
    extend(a, b, &mut map, &mut used)
}
