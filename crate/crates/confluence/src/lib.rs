//! Confluence of q-difference systems to differential systems as `q → 1`.
//!
//! Exact systems over `ℚ(q)` are tested against the four confluence
//! conditions; numeric solutions are followed along `q = q0^t` and
//! extrapolated to `t = 0`.

pub mod builtins;
pub mod check;
pub mod delta;
pub mod error;
pub mod monodromy;
pub mod ode;
pub mod path;
pub mod roots;

pub use builtins::{builtin, irregular, pn_j, pochhammer_raw, pochhammer_scaled, BUILTIN_NAMES};
pub use check::{check_confluent, limit_of_delta_form, ConfluenceReport, JORDAN_NORMALIZATION};
pub use delta::{delta_coefficients, delta_companion, delta_form, poly_roots, q_pullback, DeltaForm, Pole};
pub use error::{ConfluenceError, ConfluenceResult};
pub use monodromy::{
    birkhoff_limit, birkhoff_limit_formula, branch_distance, monodromy_exponents, monodromy_poly, solution_limit,
    solution_limit_formula, MonodromyExample, MONODROMY_POLY,
};
pub use ode::{classify_constant, ode_frobenius_solution, ODESystem, OdeExponents, OdeFundamentalSolution, OdeJson};
pub use path::{
    asymptotic_qpoch_ratio, asymptotic_theta_ratio, limit_matrix_along_path, limit_solution_along_path,
    limit_vector_along_path, log_one_minus_along_spiral, path_qpoch_ratio, path_theta_ratio, relative_distance,
    PathLimit, TSchedule, LINEAR_RATIO_BAND, SPIRAL_TOL,
};
pub use roots::{gaussian, gaussian_to_c64, root_taylor, root_taylor_numeric, BivariatePoly, GaussianRational, RootTaylor};
