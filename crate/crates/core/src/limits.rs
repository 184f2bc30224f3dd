//! Resource caps and the family-sampling policy for exhaustive checks.

use rand::seq::index::sample as rand_sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Default cap on the number of elements of any ring whose ideal lattice we
/// enumerate exhaustively.
pub const DEFAULT_ELEMENT_CAP: usize = 256;

/// Caps that guard every exhaustive enumeration.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Limits {
    /// Largest ring (by element count) eligible for ideal-lattice and
    /// spectrum enumeration.
    pub element_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            element_cap: DEFAULT_ELEMENT_CAP,
        }
    }
}

impl Limits {
    pub fn with_cap(element_cap: usize) -> Self {
        Limits { element_cap }
    }
}

/// How to range over families (finite sets) of primes in verifiers that
/// quantify over "any collection of primes".
///
/// Small pools are exhausted: every non-empty subset is examined.  Above the
/// threshold the quantifier is sampled instead — first every family of size
/// at most `max_family_size` in lexicographic order, and if even those exceed
/// the budget, a fixed-seed random selection of them — so results stay
/// deterministic for a given policy.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyPolicy {
    /// Pools up to this size have their full power set enumerated.
    pub exhaustive_threshold: usize,
    /// Above the threshold, families are capped at this many members.
    pub max_family_size: usize,
    /// Hard ceiling on the number of families examined per quantifier.
    pub sample_budget: usize,
    /// Seed for the sampling fallback.
    pub seed: u64,
}

impl Default for FamilyPolicy {
    fn default() -> Self {
        FamilyPolicy {
            exhaustive_threshold: 12,
            max_family_size: 3,
            sample_budget: 20_000,
            seed: 0,
        }
    }
}

impl FamilyPolicy {
    /// All index families over a pool of `pool` elements that this policy
    /// examines, in a deterministic order.  Families are non-empty sorted
    /// index vectors.
    pub fn families(&self, pool: usize) -> Vec<Vec<usize>> {
        if pool == 0 {
            return Vec::new();
        }
        if pool <= self.exhaustive_threshold {
            // Counting order over subset masks: 1, 2, …, 2^pool - 1.
            return (1u64..(1u64 << pool))
                .map(|mask| (0..pool).filter(|i| mask >> i & 1 == 1).collect())
                .collect();
        }
        let mut families: Vec<Vec<usize>> = Vec::new();
        let size_cap = self.max_family_size.min(pool);
        for k in 1..=size_cap {
            extend_combinations(pool, k, &mut families);
        }
        if families.len() > self.sample_budget {
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
            let chosen = rand_sample(&mut rng, families.len(), self.sample_budget);
            let mut picked: Vec<usize> = chosen.into_iter().collect();
            picked.sort_unstable();
            families = picked.into_iter().map(|i| families[i].clone()).collect();
        }
        families
    }
}

/// Appends all `k`-combinations of `0..pool` in lexicographic order.
fn extend_combinations(pool: usize, k: usize, out: &mut Vec<Vec<usize>>) {
    let mut combo: Vec<usize> = (0..k).collect();
    loop {
        out.push(combo.clone());
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if combo[i] != i + pool - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        combo[i] += 1;
        for j in i + 1..k {
            combo[j] = combo[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_pools_are_exhausted() {
        let policy = FamilyPolicy::default();
        let fams = policy.families(3);
        assert_eq!(fams.len(), 7);
        assert!(fams.contains(&vec![0, 1, 2]));
        assert!(fams.contains(&vec![2]));
        assert!(policy.families(0).is_empty());
    }

    #[test]
    fn large_pools_cap_family_size() {
        let policy = FamilyPolicy::default();
        let fams = policy.families(20);
        // C(20,1) + C(20,2) + C(20,3) = 20 + 190 + 1140.
        assert_eq!(fams.len(), 1350);
        assert!(fams.iter().all(|f| !f.is_empty() && f.len() <= 3));
        // Lexicographic and duplicate-free.
        let mut sorted = fams.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), fams.len());
    }

    #[test]
    fn sampling_is_deterministic() {
        let policy = FamilyPolicy {
            exhaustive_threshold: 4,
            max_family_size: 3,
            sample_budget: 50,
            seed: 7,
        };
        let a = policy.families(30);
        let b = policy.families(30);
        assert_eq!(a.len(), 50);
        assert_eq!(a, b);
    }
}
