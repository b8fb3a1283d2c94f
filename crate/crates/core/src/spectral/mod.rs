//! Norm lower bounds from exact moments: Hankel determinants, Jacobi
//! coefficients `α_n`, the top eigenvalues of the truncated Jacobi
//! matrices, and an extrapolation fit.

mod fit;
mod fixed;
mod hankel;
mod jacobi;
mod moments;
pub mod poly;

pub use fit::{fit_extrapolation, FitParams};
pub use fixed::Fixed;
pub use hankel::{hankel_ladder, HankelLadder};
pub use jacobi::{
    bounds_table, gamma_cogrowth, jacobi_coefficients, lambda_max, lambda_max_bracketed, lambda_min,
    reconstruct_moments, BoundsTable, JacobiCoefficients, NormBoundsRow, BOUNDS_HEADER,
    DEFAULT_PRECISION_BITS, DEFAULT_TOLERANCE,
};
pub use moments::MomentVector;
