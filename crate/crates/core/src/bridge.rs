//! Extraction of abstract order data from a concrete amalgamation, and the
//! cross-layer agreement check.
//!
//! [`extract_spectrum_data`] reads off the posets of `Spec(R)` and
//! `Spec(S)` (ordered by inclusion), the region of primes containing `J`,
//! the contraction relation `C(q, p) ⟺ f⁻¹(q + J) ⊆ p`, and the
//! contraction-point map `κ(q) = f⁻¹(q)`.  [`verify_cross_layer`] then
//! certifies that building the carrier poset from that data reproduces the
//! brute-force classified spectrum exactly: same node count, same order,
//! same maximal elements, and a contraction relation recoverable from the
//! carrier's own inclusion order.
//!
//! Note that over finite rings every prime is maximal, so `q + J = S` for
//! every off-region `q` and the extracted contraction relation is always
//! empty; the abstract layer's fuzzer is what exercises non-trivial
//! contractions.

use crate::amalgam::{ClassifiedAmalgam, PrimeTag};
use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::hom::preimage_ideal;
use crate::ideal::ideal_sum;
use crate::poset::{build_amalgam_poset, AmalgamSpectrumData, SpectralPoset};
use crate::props::LemmaReport;

fn inclusion_poset(primes: &[crate::ideal::IdealSet]) -> Result<SpectralPoset> {
    let labels: Vec<String> = primes.iter().map(|p| p.to_string()).collect();
    let n = primes.len();
    let mut le = vec![false; n * n];
    for (i, a) in primes.iter().enumerate() {
        for (j, b) in primes.iter().enumerate() {
            le[i * n + j] = a.members().is_subset(b.members());
        }
    }
    SpectralPoset::new(labels, le)
}

/// Reads the abstract order data off a classified amalgamation.  The
/// result always passes data validation: real spectra give genuine posets,
/// the region is upward closed, the contraction relation is monotone with
/// the required empty rows, domination holds because every carrier prime
/// lies under a maximal ideal, and `κ` is coherent by construction.
pub fn extract_spectrum_data(c: &ClassifiedAmalgam) -> Result<AmalgamSpectrumData> {
    let pr = inclusion_poset(c.spec_r().primes())?;
    let ps = inclusion_poset(c.spec_s().primes())?;
    let vj = Bitset::from_indices(c.spec_s().len(), c.vj().iter().copied());

    let f = c.amalgam().hom();
    let j = c.amalgam().ideal_j();
    let mut rel = vec![false; c.spec_s().len() * c.spec_r().len()];
    for &qi in c.type2_sources() {
        let pulled = preimage_ideal(f, &ideal_sum(c.spec_s().prime(qi), j)?)?;
        for (p, prime) in c.spec_r().primes().iter().enumerate() {
            rel[qi * c.spec_r().len() + p] = pulled.members().is_subset(prime.members());
        }
    }

    let mut kappa = Vec::with_capacity(c.spec_s().len());
    for q in c.spec_s().primes() {
        let contracted = preimage_ideal(f, q)?;
        let pos = c.spec_r().position_of(&contracted).ok_or_else(|| {
            Error::TheoremViolation(format!(
                "preimage {contracted} of the prime {q} is not in the computed spectrum"
            ))
        })?;
        kappa.push(pos);
    }

    AmalgamSpectrumData::new(pr, ps, vj, rel, Some(kappa))
}

/// Certifies that the abstract carrier poset built from extracted data is
/// order-isomorphic — via the type-1/type-2 tagging — to the concrete
/// classified spectrum.
pub fn verify_cross_layer(c: &ClassifiedAmalgam) -> Result<LemmaReport> {
    let data = extract_spectrum_data(c)?;
    let built = build_amalgam_poset(&data)?;
    let mut rep = LemmaReport::new("cross-layer", c.amalgam().carrier().name());

    let spec_c = c.carrier_spec();
    rep.record_part(
        "node-count-matches",
        built.poset().len() == spec_c.len(),
        || {
            format!(
                "abstract poset has {} nodes, concrete spectrum {}",
                built.poset().len(),
                spec_c.len()
            )
        },
    );
    if !rep.passed() {
        return Ok(rep);
    }

    // Concrete spectrum position → abstract node position, through tags.
    let to_node: Vec<usize> = c
        .tagged()
        .iter()
        .map(|t| match t.tag {
            PrimeTag::Type1 => Ok(built.position_of_type1(t.source)),
            PrimeTag::Type2 => built.position_of_type2(t.source).ok_or_else(|| {
                Error::TheoremViolation(format!(
                    "no trace node for source index {}",
                    t.source
                ))
            }),
        })
        .collect::<Result<_>>()?;

    let poset = built.poset();
    let mut order_ok = true;
    let mut order_detail = String::new();
    let mut max_ok = true;
    let mut max_detail = String::new();
    for i in 0..spec_c.len() {
        for k in 0..spec_c.len() {
            let concrete = spec_c
                .prime(i)
                .members()
                .is_subset(spec_c.prime(k).members());
            let abstracted = poset.le(to_node[i], to_node[k]);
            if concrete != abstracted && order_ok {
                order_ok = false;
                order_detail = format!(
                    "{} ⊆ {} is {concrete} concretely but {abstracted} abstractly",
                    spec_c.prime(i),
                    spec_c.prime(k)
                );
            }
        }
        let concrete_max = spec_c.is_max(i);
        let abstract_max = poset.is_maximal(to_node[i]);
        if concrete_max != abstract_max && max_ok {
            max_ok = false;
            max_detail = format!(
                "{} is maximal = {concrete_max} concretely but {abstract_max} abstractly",
                spec_c.prime(i)
            );
        }
    }
    rep.record_part("order-isomorphic", order_ok, || order_detail);
    rep.record_part("maximal-elements-agree", max_ok, || max_detail);

    // Rebuilding fixpoint: the contraction relation is recoverable from the
    // carrier order itself (trace-under-lift pairs add nothing beyond C).
    let mut rec_ok = true;
    let mut rec_detail = String::new();
    for &qi in c.type2_sources() {
        let t2 = built
            .position_of_type2(qi)
            .expect("off-region source has a trace node");
        for p in 0..c.spec_r().len() {
            let t1 = built.position_of_type1(p);
            let from_order = poset.le(t2, t1);
            let from_data = data.contracts(qi, p);
            if from_order != from_data && rec_ok {
                rec_ok = false;
                rec_detail = format!(
                    "trace {} under lift {}: order says {from_order}, data says {from_data}",
                    c.spec_s().prime(qi),
                    c.spec_r().prime(p)
                );
            }
        }
    }
    rep.record_part("contraction-recoverable-from-order", rec_ok, || rec_detail);

    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::{amalgamate, classify_spectrum, duplicate};
    use crate::hom::enumerate_homs;
    use crate::ideal::ideal_generate;
    use crate::limits::Limits;
    use crate::ring::make_zn;

    #[test]
    fn extraction_from_the_standard_duplication() {
        let z6 = make_zn(6).unwrap();
        let two = ideal_generate(&z6, &[2]);
        let c = classify_spectrum(duplicate(&z6, &two).unwrap(), &Limits::default()).unwrap();
        let d = extract_spectrum_data(&c).unwrap();
        assert_eq!(d.pr().len(), 2);
        assert_eq!(d.ps().len(), 2);
        assert_eq!(d.vj().count(), 1);
        // Zero-dimensional source: q + J is the unit ideal, so no
        // contraction edges survive.
        assert!((0..2).all(|q| (0..2).all(|p| !d.contracts(q, p))));
        // The identity hom contracts each prime to itself.
        assert_eq!(d.kappa().unwrap(), &[0, 1]);
        // Both posets are antichains.
        assert!(!d.pr().le(0, 1) && !d.pr().le(1, 0));
    }

    #[test]
    fn cross_layer_agreement_on_mixed_instances() {
        let limits = Limits::default();
        let z6 = make_zn(6).unwrap();
        let z4 = make_zn(4).unwrap();
        let z12 = make_zn(12).unwrap();

        let mut instances = vec![
            duplicate(&z6, &ideal_generate(&z6, &[2])).unwrap(),
            duplicate(&z4, &ideal_generate(&z4, &[2])).unwrap(),
            duplicate(&z12, &ideal_generate(&z12, &[4])).unwrap(),
        ];
        let f = enumerate_homs(&z12, &z6).pop().unwrap();
        instances.push(amalgamate(f, ideal_generate(&z6, &[2])).unwrap());

        for a in instances {
            let c = classify_spectrum(a, &limits).unwrap();
            let rep = verify_cross_layer(&c).unwrap();
            assert!(rep.passed(), "{}: {:?}", rep.instance, rep.counterexample);
            assert_eq!(rep.parts.len(), 4);
        }
    }

    #[test]
    fn full_region_instance_collapses_abstractly() {
        let z4 = make_zn(4).unwrap();
        let c = classify_spectrum(
            duplicate(&z4, &ideal_generate(&z4, &[2])).unwrap(),
            &Limits::default(),
        )
        .unwrap();
        let d = extract_spectrum_data(&c).unwrap();
        assert_eq!(d.type2_sources().len(), 0);
        let built = build_amalgam_poset(&d).unwrap();
        assert_eq!(built.poset().len(), 1);
        assert!(verify_cross_layer(&c).unwrap().passed());
    }
}
