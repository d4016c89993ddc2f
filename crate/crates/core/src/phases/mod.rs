//! Phase functions, their gauge classes, and what they predict.
//!
//! A phase function is stored as `v_g ∈ (ℤ/M)ʳ` with `Φ_g(k) = k·v_g/M`;
//! all arithmetic is exact over `ℤ/M`. Representatives of `H¹(G, L̂)` use
//! `M = #G`.

mod cocycle;
mod cohomology;
mod extinction;
mod products;

pub use cocycle::{coboundary, pair, GaugeFunction, Phase, PhaseCocycle};
pub use cohomology::{
    apply_automorphism, check_equivariant, cohomology_classes, induced_automorphism, normalize_gauge_at,
    pairing_matrix, reduce_to_torsion, CohomologyGroup,
};
pub use extinction::{
    expressibility, extinction_set, kg_cycle_classes, sigma_cap_classes, Expressibility, ExpressibilitySearch,
    Extinction,
};
pub use products::{
    cap_sigma, cap_sigma_partial, cup_sigma, km_identity_check, translation_difference, FactorSystem, KmCheck,
    TranslationCocycle, TwoChain,
};
