//! Spectral theory of a harmonic oscillator on a deformed Heisenberg algebra.
//!
//! The deformation `[x, p] = i (1 + beta p^2)` introduces a minimal position
//! uncertainty `sqrt(beta)`. In a suitable momentum representation the
//! oscillator becomes a symmetric Poschl-Teller well, which makes the whole
//! problem exactly solvable: closed-form spectra, Gegenbauer-polynomial
//! eigenfunctions, and a deformed su(1,1) ladder structure whose coefficients
//! are fixed algebraically rather than by quadrature.
//!
//! The crate is organised around that solution:
//!
//! - [`params`]: deformation parameters and the kinematic consequences of the
//!   modified commutator (uncertainty bound, minimal wavelength, dispersion).
//! - [`specfun`]: orthogonal-polynomial recurrences, a stable `log_gamma`,
//!   and Gauss quadrature rules used for inner products.
//! - [`spectrum`]: closed-form energy levels and the square-root recursion
//!   between neighbouring levels.
//! - [`algebra`]: truncated matrix realisations of the ladder operators and
//!   residual checks of every operator identity they satisfy.
//! - [`wavefn`]: position-representation eigenfunctions and their
//!   orthonormality, node, and ladder-action properties.
//! - [`oracle`]: finite-difference and momentum-grid solvers that validate
//!   the closed forms without sharing any code path with them.
//! - [`ddim`]: the D-dimensional radial generalisation, where the well gains
//!   a centrifugal wall and the ladder algebra deforms further.
//!
//! Everything numeric is generic over the scalar type through
//! [`scalar::Real`]; the type aliases at the crate root fix `f64`, which is
//! what the command-line tool and the test suite use.

pub mod algebra;
pub mod ddim;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod params;
pub mod scalar;
pub mod specfun;
pub mod spectrum;
pub mod tridiag;
pub mod wavefn;

pub use error::{Error, Result};
pub use scalar::Real;

/// 1D model parameters over `f64`.
pub type ModelParams1D = params::ModelParams1D<f64>;
/// Uncertainty-relation evaluation over `f64`.
pub type UncertaintyBound = params::UncertaintyBound<f64>;
/// Quadrature rule over `f64`.
pub type QuadratureRule = specfun::QuadratureRule<f64>;
/// Energy listing over `f64`.
pub type Spectrum = spectrum::Spectrum<f64>;
/// Truncated operator realisation over `f64`.
pub type OperatorSet = algebra::OperatorSet<f64>;
/// Identity-residual report over `f64`.
pub type AlgebraReport = algebra::AlgebraReport<f64>;
/// Ladder coefficient table over `f64`.
pub type LadderCoefficients = algebra::LadderCoefficients<f64>;
/// Dense complex matrix over `f64`.
pub type CMatrix = linalg::CMatrix<f64>;
/// Radial D-dimensional parameters over `f64`.
pub type DdimParams = ddim::DdimParams<f64>;
/// D-dimensional ladder realisation over `f64`.
pub type DdimLadderSet = ddim::DdimLadderSet<f64>;
