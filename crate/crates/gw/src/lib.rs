//! Enumerative and J-function data of projective space.
//!
//! Exact parts: plane-curve counts and the WDVV check, the K-theoretic
//! J-function over `Q(q)[ε]/(ε^{N+1})`, the cohomological one over `Q`, and the
//! coefficientwise q → 1 comparison between them. The torus-equivariant
//! versions are evaluated numerically along q-spirals.

pub mod compare;
pub mod equivariant;
pub mod error;
pub mod jcoh;
pub mod jk;
pub mod nd;
pub mod potential;
pub mod quantum;

pub use compare::{
    confluence_compare, confluence_compare_with, k_side_scaled, limit_log_series, p2_table, ConfluenceComparison,
    Mismatch, P2Table, TableRow,
};
pub use equivariant::{
    equivariant_coh_target, equivariant_confluence_compare, jk_equivariant, BranchComparison, EquivariantComparison,
    EquivariantJ, EquivariantSpec, RESONANCE_TOL,
};
pub use error::{GwError, GwResult};
pub use jcoh::{
    coh_apply, coh_prefactor, homogeneity_defect, jcoh_modified, jcoh_modified_at, jcoh_ode_residual, jcoh_series,
    jcoh_series_at, jcoh_z_exponent,
};
pub use jk::{
    elementary_sums, jk_closed_formula, jk_closed_formula_with, jk_modified, jk_qde_residual, jk_series,
    jk_series_with, jk_twisted_residual, modify, pn_apply, series_zero_through, sigma, twisted_sigma,
};
pub use nd::{nd_recursion, NdTable};
pub use potential::{gw_potential_p2, potential_from_counts, wdvv_residual, wdvv_residual_p2, Monomial, Potential};
pub use quantum::{small_quantum_rings, QuantumRingChecks, Reduced, SmallQuantumRing};
