//! Randomized structural invariants: bitset algebra, poset construction,
//! ring constructors, and validity of everything the spectrum-data fuzzer
//! emits.

use bowtie_core::{
    check_pm_equivalence, check_pm_jacobson_abstract, classify_spectrum, duplicate,
    ideal_generate, make_zn, Bitset, Limits, SpectralPoset, SpectrumDataFuzzer,
};
use proptest::prelude::*;

fn members(len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..len, 0..=len.min(24))
}

proptest! {
    #[test]
    fn bitset_roundtrip_and_lattice_laws(
        len in 1usize..130,
        xs in members(129),
        ys in members(129),
    ) {
        let xs: Vec<usize> = xs.into_iter().filter(|&i| i < len).collect();
        let ys: Vec<usize> = ys.into_iter().filter(|&i| i < len).collect();
        let a = Bitset::from_indices(len, xs.iter().copied());
        let b = Bitset::from_indices(len, ys.iter().copied());

        for i in 0..len {
            prop_assert_eq!(a.contains(i), xs.contains(&i));
        }
        let union = a.union(&b);
        let meet = a.intersect(&b);
        for i in 0..len {
            prop_assert_eq!(union.contains(i), a.contains(i) || b.contains(i));
            prop_assert_eq!(meet.contains(i), a.contains(i) && b.contains(i));
        }
        prop_assert!(meet.is_subset(&a) && meet.is_subset(&b));
        prop_assert!(a.is_subset(&union) && b.is_subset(&union));
        prop_assert_eq!(a.is_subset(&b) && b.is_subset(&a), a == b);
        prop_assert_eq!(union.count() + meet.count(), a.count() + b.count());
    }

    #[test]
    fn bitset_order_is_dictionary_order_on_member_lists(
        xs in members(100),
        ys in members(100),
    ) {
        let a = Bitset::from_indices(100, xs);
        let b = Bitset::from_indices(100, ys);
        prop_assert_eq!(a.cmp(&b), a.to_vec().cmp(&b.to_vec()));
    }

    #[test]
    fn dag_edges_always_close_to_a_poset(
        n in 1usize..8,
        raw in prop::collection::vec((0usize..8, 0usize..8), 0..20),
    ) {
        let edges: Vec<(usize, usize)> = raw
            .into_iter()
            .filter_map(|(i, j)| {
                let (i, j) = (i % n, j % n);
                (i < j).then_some((i, j))
            })
            .collect();
        let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let p = SpectralPoset::from_edges(labels, &edges).unwrap();
        // Reflexive, transitive, contains the generating edges.
        for i in 0..n {
            prop_assert!(p.le(i, i));
        }
        for &(i, j) in &edges {
            prop_assert!(p.le(i, j));
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if p.le(i, j) && p.le(j, k) {
                        prop_assert!(p.le(i, k));
                    }
                }
            }
        }
        // Maximality: no strict upper bound.
        for i in 0..n {
            let has_upper = (0..n).any(|j| j != i && p.le(i, j));
            prop_assert_eq!(p.is_maximal(i), !has_upper);
        }
    }

    #[test]
    fn two_cycles_are_rejected(n in 2usize..6) {
        let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let err = SpectralPoset::from_edges(labels, &[(0, 1), (1, 0)]);
        prop_assert!(err.is_err());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn duplication_carrier_size_is_base_times_ideal(
        n in 2usize..13,
        g in 1usize..13,
    ) {
        let g = g % n;
        prop_assume!(g != 0);
        let zn = make_zn(n).unwrap();
        let ideal = ideal_generate(&zn, &[g]);
        prop_assume!(ideal.is_proper());
        let a = duplicate(&zn, &ideal).unwrap();
        prop_assert_eq!(a.carrier().size(), n * ideal.size());
        // Classification partitions the spectrum: every carrier prime is
        // tagged exactly once.
        let c = classify_spectrum(a, &Limits::default()).unwrap();
        prop_assert_eq!(c.tagged().len(), c.carrier_spec().len());
    }

    #[test]
    fn fuzzed_spectrum_data_always_satisfies_the_theorems(
        seed in any::<u64>(),
        bound in 1usize..6,
    ) {
        let mut fuzzer = SpectrumDataFuzzer::new(seed, bound);
        for _ in 0..8 {
            let d = fuzzer.next_data();
            let rep = check_pm_equivalence(&d).unwrap();
            prop_assert!(rep.passed());
            if d.kappa().is_some() {
                let rep = check_pm_jacobson_abstract(&d).unwrap().unwrap();
                prop_assert!(rep.passed());
            }
        }
    }
}
