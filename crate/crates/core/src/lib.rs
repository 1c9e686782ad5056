//! Exact computations with S-prime and S-maximal ideals over finite
//! commutative rings, their trivial (idealization) extensions `A ⋉ M`, and
//! an integer layer for `Z ⋉ M` where ideals stay finitely describable.
//!
//! The crate is organized bottom-up:
//!
//! * [`ring`] / [`module`] — finite ring and module arithmetic,
//!   enumeration, and subgroup lattices.
//! * [`ideal`] — ideals, multiplicative sets, and the S-prime/S-maximal
//!   decision procedures in both definitional and residual form.
//! * [`extension`] — trivial extensions `A ⋉ M`, graded slices, and the
//!   component-wise characterizations of S-prime and S-maximal.
//! * [`packed`] — covering properties of the S-prime spectrum.
//! * [`zlayer`] — the same questions over `Z` and `Z ⋉ M`, finitized by
//!   residue closure.

mod bitset;
pub mod cli;
pub mod error;
pub mod expr;
pub mod extension;
pub mod ideal;
pub mod module;
pub mod packed;
pub mod ring;
pub mod verify;
pub mod zlayer;

pub use error::{Error, Result};
pub use expr::{parse_element_list, parse_ring, print_coords, print_module, print_ring};
pub use extension::{
    components, extension_parts, homogeneous_ideal, is_s_maximal_via_components,
    is_s_prime_via_components, make_trivial_extension, max_s_extension, pair_element, proj_a,
    proj_m, project_mult_set, spec_s_extension, HomogeneousDecomposition,
};
pub use ideal::{
    enumerate_ideals, find_disjoint_prime, ideal_generated, is_maximal, is_prime,
    is_s_maximal_definitional, is_s_maximal_residual, is_s_prime_definitional,
    is_s_prime_residual, max_s, mult_set_generated, residual, residual_ideal, saturation,
    scaled_ideal, spec_s, Certificate, Ideal, MultiplicativeSet, Reason, SPrimalityCertificate,
};
pub use packed::{
    compactly_packed_exhaustive, coprimely_packed_exhaustive, is_compactly_s_packed,
    is_coprimely_s_packed, is_s_pm, PackingCounterexample, PackingReport, PmReport, PmViolation,
    PmViolationKind,
};
pub use module::{
    enumerate_submodules, full_submodule, is_s_divisible, is_uniformly_s_torsion, make_module,
    s_divisibility_counterexample, scaled_submodule, submodule_generated, uniform_torsion_witness,
    zero_submodule, BaseRing, ModuleDescriptor, ModuleElement, Submodule,
};
pub use ring::{
    make_product_ring, make_residue_ring, Cardinality, RingDescriptor, RingElement,
    DEFAULT_MAX_CARDINALITY,
};
pub use verify::{
    reproduce_examples, run_suite, search_counterexamples, CatalogSpec, VerificationReport,
    SEARCH_TARGETS, SUITES,
};
pub use zlayer::{
    z_divisibility_counterexample, z_is_disjoint, z_is_s_divisible, z_is_s_maximal,
    z_is_s_prime, z_is_uniformly_s_torsion, z_reachable_residues, z_residual,
    z_uniform_torsion_witness, zte_ideal, zte_is_homogeneous, zte_is_s_maximal, zte_is_s_prime,
    zte_membership, ZCertificate, ZIdeal, ZMultSet, ZTEIdeal, ZWitness,
};
