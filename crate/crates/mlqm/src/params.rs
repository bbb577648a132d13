//! Model parameters and the kinematics of the deformed commutator.
//!
//! The commutator `[x, p] = i (1 + beta p^2)` fixes everything in this
//! module: the uncertainty bound it implies, the minimal position
//! uncertainty `sqrt(beta)`, the bounded wavevector obtained from momentum,
//! and the pair of derived constants the spectral solution runs on,
//!
//! - `alpha = omega sqrt(beta)`, the angular scale of the equivalent well,
//! - `nu = (1 + sqrt(1 + 4 / (beta^2 omega^2))) / 2`, the well depth index,
//!
//! which satisfy `nu (nu - 1) alpha^2 = 1 / beta` identically.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Deformation and oscillator parameters for the 1D problem, with the
/// derived well constants cached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams1D<T> {
    /// Deformation strength in `[x, p] = i (1 + beta p^2)`; positive.
    pub beta: T,
    /// Oscillator frequency; positive.
    pub omega: T,
    /// Measure exponent of the momentum representation; non-negative. It
    /// never moves an energy level, only the representation of states.
    pub gamma: T,
    /// Angular scale `omega sqrt(beta)` of the equivalent well.
    pub alpha: T,
    /// Well depth index, the positive root of `nu (nu - 1) = 1 / (beta^2 omega^2)`.
    pub nu: T,
}

/// Validate raw inputs and derive the well constants.
pub fn derive_params<T: Real>(beta: T, omega: T, gamma: T) -> Result<ModelParams1D<T>> {
    if !(beta > T::zero()) || !beta.is_finite() {
        return Err(Error::domain(format!("beta must be positive, got {beta}")));
    }
    if !(omega > T::zero()) || !omega.is_finite() {
        return Err(Error::domain(format!("omega must be positive, got {omega}")));
    }
    if !(gamma >= T::zero()) || !gamma.is_finite() {
        return Err(Error::domain(format!(
            "gamma must be non-negative, got {gamma}"
        )));
    }
    let alpha = omega * beta.sqrt();
    let nu = T::half() * (T::one() + (T::one() + T::of(4.0) / (beta * beta * omega * omega)).sqrt());
    Ok(ModelParams1D {
        beta,
        omega,
        gamma,
        alpha,
        nu,
    })
}

/// Smallest achievable position uncertainty, `sqrt(beta)`.
pub fn min_position_uncertainty<T: Real>(beta: T) -> Result<T> {
    if !(beta > T::zero()) || !beta.is_finite() {
        return Err(Error::domain(format!("beta must be positive, got {beta}")));
    }
    Ok(beta.sqrt())
}

/// One evaluation of the deformed uncertainty relation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncertaintyBound<T> {
    pub delta_p: T,
    pub mean_p: T,
    /// Lower bound on `Delta x` at this momentum spread.
    pub bound: T,
}

/// Lower bound `Delta x >= (1 + beta Delta p^2 + beta <p>^2) / (2 Delta p)`.
///
/// `beta = 0` recovers the undeformed relation; minimising over `Delta p`
/// at `<p> = 0` lands exactly on [`min_position_uncertainty`].
pub fn uncertainty_bound<T: Real>(delta_p: T, mean_p: T, beta: T) -> Result<UncertaintyBound<T>> {
    if !(delta_p > T::zero()) || !delta_p.is_finite() {
        return Err(Error::domain(format!(
            "delta_p must be positive, got {delta_p}"
        )));
    }
    if !(beta >= T::zero()) || !beta.is_finite() {
        return Err(Error::domain(format!(
            "beta must be non-negative, got {beta}"
        )));
    }
    let bound =
        T::half() * (T::one() + beta * delta_p * delta_p + beta * mean_p * mean_p) / delta_p;
    Ok(UncertaintyBound {
        delta_p,
        mean_p,
        bound,
    })
}

/// Free-particle energy at wavelength `lambda`,
/// `E = tan^2(2 pi sqrt(beta) / lambda) / (2 m beta)`.
///
/// Wavelengths at or below the minimal one, `4 sqrt(beta)`, do not propagate
/// and are rejected. As `beta -> 0` the expression tends to the ordinary
/// `(2 pi / lambda)^2 / (2 m)`.
pub fn free_dispersion<T: Real>(lambda: T, mass: T, beta: T) -> Result<T> {
    if !(mass > T::zero()) || !mass.is_finite() {
        return Err(Error::domain(format!("mass must be positive, got {mass}")));
    }
    if !(beta > T::zero()) || !beta.is_finite() {
        return Err(Error::domain(format!("beta must be positive, got {beta}")));
    }
    let lambda_min = T::of(4.0) * beta.sqrt();
    if !(lambda > lambda_min) {
        return Err(Error::domain(format!(
            "wavelength {lambda} is below the minimal wavelength {lambda_min}"
        )));
    }
    let arg = T::two() * T::PI() * beta.sqrt() / lambda;
    let t = arg.tan();
    Ok(t * t / (T::two() * mass * beta))
}

/// Bounded wavevector carried by momentum `p`:
/// `rho = arctan(sqrt(beta) p) / sqrt(beta)`, always inside
/// `(-pi / (2 sqrt(beta)), pi / (2 sqrt(beta)))`.
pub fn momentum_to_wavevector<T: Real>(p: T, beta: T) -> Result<T> {
    if !(beta > T::zero()) || !beta.is_finite() {
        return Err(Error::domain(format!("beta must be positive, got {beta}")));
    }
    let sb = beta.sqrt();
    Ok((sb * p).atan() / sb)
}

/// Momentum carried by a wavevector, `p = tan(sqrt(beta) rho) / sqrt(beta)`.
///
/// Requires `|rho| < pi / (2 sqrt(beta))`.
pub fn wavevector_to_momentum<T: Real>(rho: T, beta: T) -> Result<T> {
    if !(beta > T::zero()) || !beta.is_finite() {
        return Err(Error::domain(format!("beta must be positive, got {beta}")));
    }
    let sb = beta.sqrt();
    let limit = T::PI() * T::half() / sb;
    if !(rho.abs() < limit) {
        return Err(Error::domain(format!(
            "wavevector {rho} outside the open interval (-{limit}, {limit})"
        )));
    }
    Ok((sb * rho).tan() / sb)
}
