//! The verification corpus: a deterministic family of rings and
//! amalgamations generated from a small declarative spec.

use std::sync::Arc;

use bowtie_core::{
    amalgamate, enumerate_homs, enumerate_ideals, ideal_generate, make_product, make_quotient,
    make_trivial_extension, make_zn, AmalgamationRing, Error, FiniteModule, FiniteRing, IdealSet,
    Limits, Result,
};
use serde::{Deserialize, Serialize};

/// Parameters of the seeded fuzz pass over abstract spectrum data.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FuzzSpec {
    pub seed: u64,
    pub count: usize,
    /// Upper bound on the element count of each random poset.
    pub max_elements: usize,
}

impl Default for FuzzSpec {
    fn default() -> Self {
        FuzzSpec {
            seed: 0,
            count: 10_000,
            max_elements: 6,
        }
    }
}

/// Declarative description of the corpus.  The default value generates the
/// standard suite; a JSON file with any subset of the fields overrides it.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CorpusSpec {
    /// Moduli of the cyclic rings to include.
    pub zn: Vec<usize>,
    /// Pairs of moduli whose product rings are included.
    pub product_pairs: Vec<(usize, usize)>,
    /// Every proper nonzero quotient of these cyclic rings is included.
    pub quotient_bases: Vec<usize>,
    /// Trivial extensions Zn ⋉ Zn are included for n up to this bound.
    pub trivial_extension_max: usize,
    /// Amalgamations are generated over cyclic rings up to this modulus...
    pub amalgam_zn_max: usize,
    /// ...plus the product rings, when set.
    pub amalgam_products: bool,
    /// Skip any amalgamation whose carrier would exceed this element count.
    pub carrier_cap: usize,
    /// Extra instance documents (full envelope objects, inline) verified
    /// alongside the generated corpus.  A document that fails to load or
    /// validate is reported as a failed instance without aborting the run.
    pub documents: Vec<serde_json::Value>,
    pub fuzz: FuzzSpec,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            zn: (2..=30).collect(),
            product_pairs: vec![
                (2, 2),
                (2, 3),
                (2, 4),
                (2, 6),
                (3, 3),
                (3, 4),
                (3, 6),
                (4, 4),
                (4, 6),
                (6, 6),
            ],
            quotient_bases: vec![12, 36],
            trivial_extension_max: 6,
            amalgam_zn_max: 16,
            amalgam_products: true,
            carrier_cap: 256,
            documents: Vec::new(),
            fuzz: FuzzSpec::default(),
        }
    }
}

impl CorpusSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::invalid("corpus", format!("bad corpus spec: {e}")))
    }
}

/// The generated corpus.
pub struct Corpus {
    /// Standalone rings: cyclic, products, quotients, trivial extensions.
    pub rings: Vec<Arc<FiniteRing>>,
    /// Every admissible amalgamation over the amalgam pool.
    pub amalgams: Vec<AmalgamationRing>,
}

fn nonzero_proper_ideals(ring: &Arc<FiniteRing>, limits: &Limits) -> Result<Vec<IdealSet>> {
    Ok(enumerate_ideals(ring, limits)?
        .into_iter()
        .filter(|i| !i.is_zero() && i.is_proper())
        .collect())
}

/// Generates the corpus.  Deterministic: same spec, same corpus, in the
/// same order.
pub fn build_corpus(spec: &CorpusSpec, limits: &Limits) -> Result<Corpus> {
    let mut rings: Vec<Arc<FiniteRing>> = Vec::new();
    for &n in &spec.zn {
        rings.push(make_zn(n)?);
    }
    let mut products: Vec<Arc<FiniteRing>> = Vec::new();
    for &(a, b) in &spec.product_pairs {
        let p = make_product(&make_zn(a)?, &make_zn(b)?)?;
        products.push(p.clone());
        rings.push(p);
    }
    for &n in &spec.quotient_bases {
        let base = make_zn(n)?;
        for ideal in nonzero_proper_ideals(&base, limits)? {
            rings.push(make_quotient(&base, &ideal)?.0);
        }
    }
    for n in 2..=spec.trivial_extension_max {
        let zn = make_zn(n)?;
        rings.push(make_trivial_extension(&zn, &FiniteModule::regular(&zn))?.ring);
    }

    let mut pool: Vec<Arc<FiniteRing>> = (2..=spec.amalgam_zn_max)
        .map(make_zn)
        .collect::<Result<_>>()?;
    if spec.amalgam_products {
        pool.extend(products.iter().cloned());
    }

    let mut amalgams = Vec::new();
    for s in &pool {
        let ideals = nonzero_proper_ideals(s, limits)?;
        if ideals.is_empty() {
            continue;
        }
        for r in &pool {
            for f in enumerate_homs(r, s) {
                for j in &ideals {
                    if r.size() * j.size() > spec.carrier_cap {
                        continue;
                    }
                    amalgams.push(amalgamate(f.clone(), j.clone())?);
                }
            }
        }
    }
    Ok(Corpus { rings, amalgams })
}

/// The two abstract spectrum-data fixtures shipped with the repository,
/// embedded so `verify` never depends on the working directory.
pub fn shipped_specdata_fixtures() -> Vec<(&'static str, &'static str)> {
    vec![
        (
            "specdata_non_pm",
            include_str!("../../../fixtures/specdata_non_pm.json"),
        ),
        (
            "specdata_dup_maximal_pm",
            include_str!("../../../fixtures/specdata_dup_maximal_pm.json"),
        ),
    ]
}

/// Convenience constructor used by tests and benches.
pub fn z6_duplication_example() -> Result<AmalgamationRing> {
    let z6 = make_zn(6)?;
    bowtie_core::duplicate(&z6, &ideal_generate(&z6, &[2]))
}
