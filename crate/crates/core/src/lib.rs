//! Exact computational algebra on finite commutative rings.
//!
//! The crate has two layers that talk to each other:
//!
//! * **Concrete layer** — rings are dense addition/multiplication tables over
//!   canonical element indices (`ring`, `module`), ideals are subset masks
//!   (`ideal`), homomorphisms are full element maps (`hom`).  On top of these
//!   sits the amalgamation `R ⋈^f J = {(r, f(r)+j) : r ∈ R, j ∈ J}` of a ring
//!   `R` along an ideal `J` of `S` with respect to a homomorphism `f: R → S`
//!   (`amalgam`), together with verifiers for the structure of its prime
//!   spectrum (`props`): every prime is either the lift `p ⋈^f J` of a prime
//!   of `R` (type 1) or the trace `q̄^f` of a prime of `S` not containing `J`
//!   (type 2), and questions such as "is every prime below a unique maximal
//!   ideal?" reduce to counting formulas over those two families.
//!
//! * **Abstract layer** — the same spectrum structure captured purely
//!   order-theoretically (`poset`): two finite posets, an upward-closed
//!   region, and a monotone contraction relation.  This decouples the
//!   combinatorial content of the spectrum theorems from ring arithmetic and
//!   admits instances (e.g. with non-trivial order) that no finite ring
//!   realizes.  `bridge` extracts abstract data from a concrete amalgamation
//!   and checks that both layers agree.
//!
//! Everything is deterministic: enumeration orders are canonical, randomized
//! paths (table sampling, poset fuzzing) use fixed-seed ChaCha streams, and
//! all reports serialize to stable JSON.

pub mod amalgam;
pub mod bitset;
pub mod bridge;
pub mod dot;
pub mod error;
pub mod hom;
pub mod ideal;
pub mod json;
pub mod limits;
pub mod module;
pub mod poset;
pub mod props;
pub mod ring;

pub use amalgam::{
    amalgamate, classify_spectrum, duplicate, lift_type1, lift_type2, max_classify,
    trivial_extension_as_amalgam, AmalgamationRing, ClassifiedAmalgam, PrimeTag, TaggedPrime,
};
pub use bitset::Bitset;
pub use bridge::{extract_spectrum_data, verify_cross_layer};
pub use error::{Error, Result};
pub use hom::{enumerate_homs, preimage_ideal, RingHom};
pub use ideal::{
    enumerate_ideals, ideal_generate, ideal_intersect, ideal_product, ideal_sum, is_maximal,
    is_prime, jacobson, max_spec_of, nilradical, radical, spec_of, v_of, IdealSet, SpectrumList,
};
pub use limits::{FamilyPolicy, Limits};
pub use module::FiniteModule;
pub use poset::{
    build_amalgam_poset, check_pm_equivalence, check_pm_jacobson_abstract,
    max_cover_count_abstract, poset_is_pm, AmalgamNode, AmalgamPoset, AmalgamSpectrumData,
    SpectralPoset, SpectrumDataFuzzer,
};
pub use props::{
    compactly_packed_decide, is_pm, max_cover_count, properly_zipped_decide, verify_cp_transfer,
    verify_cp_type1_family, verify_cp_type2_family, verify_intersection_inclusions,
    verify_nil_transfer, verify_pairwise_inclusions, verify_pm_duplication,
    verify_pm_equivalence, verify_pm_jacobson, verify_pm_trivial_extension,
    verify_pz_duplication, verify_pz_transfer, verify_union_inclusions, CpOutcome, CpProbes,
    LemmaReport, MaxCoverCount, PmOutcome, Verdict,
};
pub use ring::{
    make_product, make_quotient, make_trivial_extension, make_zn, validate_ring, Elem,
    FiniteRing, TrivialExtension, ValidationPolicy, Violation,
};
