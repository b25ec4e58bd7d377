//! Regular-singular q-difference systems and scalar operators.
//!
//! Exact work uses [`QRational`] over `RationalFunctionQ` or `BigRational`;
//! numeric evaluation specializes to `Complex64`.

pub mod birkhoff;
pub mod error;
pub mod field;
pub mod frobenius;
pub mod mat;
pub mod matseries;
pub mod operator;
pub mod qhg;
pub mod qrational;
pub mod system;

pub use birkhoff::{as_matrix, birkhoff_matrix, q_constancy_defect, rank1_product_solution, Rank1Product};
pub use error::{QDiffError, QDiffResult};
pub use field::Field;
pub use frobenius::{
    eigen_decomposition, exp_nilpotent, frobenius_solution, log_unipotent, Exponents, FundamentalSolutionAt0, EIGEN_CLUSTER_TOL,
};
pub use mat::{max_norm, Mat};
pub use matseries::MatSeries;
pub use operator::ScalarQOperator;
pub use qhg::{casorati_matrix, qhg_bases, qhg_series, qhg_sum, Argument, QHypergeometricSpec, QhgBases, QhgSolution};
pub use qrational::QRational;
pub use system::{parse_system_json, Normalization, ParsedSystem, QDifferenceSystem, SystemJson, ToComplex};
