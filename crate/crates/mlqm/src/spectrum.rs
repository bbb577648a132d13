//! Closed-form energy levels and the level recursion.
//!
//! In the wavevector representation the deformed oscillator is a symmetric
//! Poschl-Teller (PT) well with depth index `nu` and angular scale `alpha`,
//! so the spectrum is quadratic in the level index:
//!
//! - well energies `E_n = (alpha^2 / 2) (n + nu)^2`,
//! - oscillator energies shifted down by the constant `1 / (2 beta)`,
//!   which also admit the explicit form
//!   `omega (n + 1/2) sqrt(1 + beta^2 omega^2 / 4)
//!    + (omega^2 beta / 2) ((n + 1/2)^2 + 1/4)`.
//!
//! Neighbouring well levels satisfy the exact square-root recursion
//! `sqrt(2 E_{n+1}) = sqrt(2 E_n) + alpha`, which this module implements as
//! an independent route to the same numbers.

use crate::error::Result;
use crate::params::ModelParams1D;
use crate::scalar::Real;

/// How a [`Spectrum`] was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumSource {
    /// Direct evaluation of the closed-form level formula.
    ClosedForm,
    /// The square-root recursion seeded with the ground level.
    Recursion,
    /// An independent numerical solver (finite differences).
    Oracle,
}

/// A list of `(level index, energy)` pairs tagged with its origin.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T> {
    pub entries: Vec<(usize, T)>,
    pub source: SpectrumSource,
    /// The 1D parameters the listing belongs to, when applicable.
    pub params: Option<ModelParams1D<T>>,
}

impl<T: Copy> Spectrum<T> {
    /// Energy of level `n` if the listing contains it.
    pub fn energy(&self, n: usize) -> Option<T> {
        self.entries
            .iter()
            .find(|&&(m, _)| m == n)
            .map(|&(_, e)| e)
    }
}

/// Well energy `E_n = (alpha^2 / 2) (n + nu)^2`.
pub fn energy_spt<T: Real>(n: usize, p: &ModelParams1D<T>) -> T {
    let s = T::of_usize(n) + p.nu;
    p.alpha * p.alpha * T::half() * s * s
}

/// Oscillator energy by its explicit closed form (the primary route):
/// `omega (n + 1/2) sqrt(1 + beta^2 omega^2 / 4)
///  + (omega^2 beta / 2) ((n + 1/2)^2 + 1/4)`.
pub fn energy_osc<T: Real>(n: usize, p: &ModelParams1D<T>) -> T {
    let half_step = T::of_usize(n) + T::half();
    let bw = p.beta * p.omega;
    let quarter = T::half() * T::half();
    p.omega * half_step * (T::one() + bw * bw * quarter).sqrt()
        + p.omega * p.omega * p.beta * T::half() * (half_step * half_step + quarter)
}

/// Oscillator energy as the well level minus the constant `1 / (2 beta)`.
///
/// This is the cross-check route for [`energy_osc`]; the subtraction cancels
/// catastrophically for tiny `beta`, which is why it is not the primary one.
pub fn energy_osc_from_shift<T: Real>(n: usize, p: &ModelParams1D<T>) -> T {
    energy_spt(n, p) - T::one() / (T::two() * p.beta)
}

/// Well levels `0..=n_max` from the closed form.
pub fn spectrum_spt<T: Real>(n_max: usize, p: &ModelParams1D<T>) -> Spectrum<T> {
    Spectrum {
        entries: (0..=n_max).map(|n| (n, energy_spt(n, p))).collect(),
        source: SpectrumSource::ClosedForm,
        params: Some(*p),
    }
}

/// Oscillator levels `0..=n_max` from the closed form.
pub fn spectrum_osc<T: Real>(n_max: usize, p: &ModelParams1D<T>) -> Spectrum<T> {
    Spectrum {
        entries: (0..=n_max).map(|n| (n, energy_osc(n, p))).collect(),
        source: SpectrumSource::ClosedForm,
        params: Some(*p),
    }
}

/// Well levels `0..=n_max` by iterating `sqrt(2 E_{n+1}) = sqrt(2 E_n) + alpha`
/// from the ground level `E_0 = alpha^2 nu^2 / 2`.
pub fn spectrum_by_recursion<T: Real>(n_max: usize, p: &ModelParams1D<T>) -> Result<Spectrum<T>> {
    let mut entries = Vec::with_capacity(n_max + 1);
    let e0 = energy_spt(0, p);
    let mut root = (T::two() * e0).sqrt();
    entries.push((0, e0));
    for n in 1..=n_max {
        root += p.alpha;
        entries.push((n, root * root * T::half()));
    }
    Ok(Spectrum {
        entries,
        source: SpectrumSource::Recursion,
        params: Some(*p),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::derive_params;

    #[test]
    fn ground_levels_frozen_values() {
        let p = derive_params(0.2f64, 1.0, 0.0).unwrap();
        assert!((energy_spt(0, &p) - 3.0524937810560444).abs() < 1e-13);
        assert!((energy_osc(0, &p) - 0.5524937810560445).abs() < 1e-13);
    }

    #[test]
    fn shift_route_agrees_with_explicit_form() {
        let p = derive_params(0.2f64, 1.0, 0.0).unwrap();
        for n in 0..50 {
            let a = energy_osc(n, &p);
            let b = energy_osc_from_shift(n, &p);
            assert!((a - b).abs() < 1e-12 * a.abs(), "n={n}: {a} vs {b}");
        }
    }

    #[test]
    fn shift_route_within_absolute_tolerance_at_tiny_beta() {
        // The subtraction loses ~ eps / beta absolute accuracy; the explicit
        // form stays fully accurate, and agreement holds to 1e-8 * (1/beta).
        let beta = 1e-8f64;
        let p = derive_params(beta, 1.0, 0.0).unwrap();
        let tol = 1e-8 / beta;
        for n in [0usize, 1, 5, 20] {
            let a = energy_osc(n, &p);
            let b = energy_osc_from_shift(n, &p);
            assert!((a - b).abs() < tol, "n={n}: |{a} - {b}| >= {tol}");
            // And the explicit form sits the expected O(beta n^2) above the
            // undeformed level.
            let half = n as f64 + 0.5;
            assert!((a - half).abs() < beta * (half * half + 0.25));
        }
    }

    #[test]
    fn recursion_matches_closed_form() {
        for (beta, omega) in [(0.05f64, 1.0), (0.2, 1.0), (1.0, 1.0), (0.7, 3.0)] {
            let p = derive_params(beta, omega, 0.0).unwrap();
            let rec = spectrum_by_recursion(200, &p).unwrap();
            assert_eq!(rec.source, SpectrumSource::Recursion);
            for &(n, e) in &rec.entries {
                let direct = energy_spt(n, &p);
                assert!(
                    (e - direct).abs() < 1e-12 * direct,
                    "beta={beta} n={n}: {e} vs {direct}"
                );
            }
        }
    }

    #[test]
    fn spectrum_lookup() {
        let p = derive_params(0.2f64, 1.0, 0.0).unwrap();
        let s = spectrum_osc(10, &p);
        assert_eq!(s.entries.len(), 11);
        assert!(s.energy(10).is_some());
        assert!(s.energy(11).is_none());
        assert_eq!(s.source, SpectrumSource::ClosedForm);
    }
}
