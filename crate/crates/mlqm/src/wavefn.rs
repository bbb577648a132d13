//! Eigenfunctions on the compact coordinate `y` in `(-1, 1)`.
//!
//! With `y` the sine of the rescaled wavevector, the well eigenfunctions are
//! weighted Gegenbauer polynomials,
//!
//! `psi_n(y) = 2^nu Gamma(nu)
//!   sqrt(alpha n! (n + nu) / (2 pi Gamma(n + 2 nu)))
//!   (1 - y^2)^{nu/2} C_n^nu(y)`,
//!
//! orthonormal under `(1/alpha) int f g dy / sqrt(1 - y^2)`. The oscillator
//! eigenfunctions differ only in the envelope exponent, which picks up the
//! measure parameter: `(nu + gamma/beta) / 2`, and are orthonormal once the
//! compensating factor `(1 - y^2)^{-gamma/beta}` joins the measure.
//!
//! Everything here is closed-form; the checks ([`gram_matrix`],
//! [`ladder_action_check`], [`node_count`]) exist so independent routes can
//! disagree loudly if any constant drifts.

use crate::error::{Error, Result};
use crate::params::ModelParams1D;
use crate::scalar::Real;
use crate::specfun::{gegenbauer, jacobi_rule, log_gamma};
use crate::spectrum::energy_spt;

/// Which family a sampled wavefunction belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WaveModel {
    /// Well eigenfunctions, envelope exponent `nu / 2`.
    Spt,
    /// Oscillator eigenfunctions, envelope exponent `(nu + gamma/beta) / 2`.
    Oscillator,
}

fn check_y<T: Real>(y: T) -> Result<()> {
    if !(y.abs() <= T::one()) {
        return Err(Error::domain(format!(
            "coordinate y must lie in [-1, 1], got {y}"
        )));
    }
    Ok(())
}

/// Log of the common normalisation prefactor of level `n`.
fn ln_prefactor<T: Real>(n: usize, p: &ModelParams1D<T>) -> Result<T> {
    let nu = p.nu;
    let nf = T::of_usize(n);
    Ok(nu * T::two().ln()
        + log_gamma(nu)?
        + T::half()
            * (p.alpha.ln() + log_gamma(nf + T::one())? + (nf + nu).ln()
                - (T::two() * T::PI()).ln()
                - log_gamma(nf + T::two() * nu)?))
}

/// Ground state `psi_0(y) = sqrt(alpha Gamma(nu + 1) / (sqrt(pi) Gamma(nu + 1/2)))
/// (1 - y^2)^{nu/2}`.
pub fn psi_ground<T: Real>(y: T, p: &ModelParams1D<T>) -> Result<T> {
    check_y(y)?;
    let nu = p.nu;
    let ln_c = T::half()
        * (p.alpha.ln() + log_gamma(nu + T::one())?
            - T::half() * T::PI().ln()
            - log_gamma(nu + T::half())?);
    Ok(ln_c.exp() * (T::one() - y * y).powf(nu * T::half()))
}

/// Well eigenfunction `psi_n(y)`.
pub fn psi<T: Real>(y: T, n: usize, p: &ModelParams1D<T>) -> Result<T> {
    check_y(y)?;
    let c = ln_prefactor(n, p)?.exp();
    Ok(c * (T::one() - y * y).powf(p.nu * T::half()) * gegenbauer(n, p.nu, y)?)
}

/// Oscillator eigenfunction: same polynomial and prefactor, envelope
/// exponent `(nu + gamma/beta) / 2`.
pub fn psi_oscillator<T: Real>(y: T, n: usize, p: &ModelParams1D<T>) -> Result<T> {
    check_y(y)?;
    let c = ln_prefactor(n, p)?.exp();
    let expo = (p.nu + p.gamma / p.beta) * T::half();
    Ok(c * (T::one() - y * y).powf(expo) * gegenbauer(n, p.nu, y)?)
}

/// Gram matrix `G_{mn} = (1/alpha) int psi_m psi_n dy / sqrt(1 - y^2)` for
/// `m, n <= n_max`, evaluated with a Gauss rule that integrates the product
/// weight exactly. Orthonormality means `G` is the identity to rounding.
pub fn gram_matrix<T: Real>(n_max: usize, p: &ModelParams1D<T>) -> Result<Vec<Vec<T>>> {
    let nu = p.nu;
    // After pulling the envelope into the weight, the integrand is
    // C_m C_n (1 - y^2)^{nu - 1/2}: a Gauss-Jacobi rule of size n_max + 8
    // is exact for every entry.
    let rule = jacobi_rule(n_max + 8, nu - T::half(), nu - T::half())?;
    let prefs: Vec<T> = (0..=n_max)
        .map(|n| ln_prefactor(n, p).map(|l| l.exp()))
        .collect::<Result<_>>()?;
    // Tabulate polynomial values once per node.
    let mut table = vec![vec![T::zero(); n_max + 1]; rule.nodes.len()];
    for (row, &x) in table.iter_mut().zip(&rule.nodes) {
        for (n, slot) in row.iter_mut().enumerate() {
            *slot = gegenbauer(n, nu, x)?;
        }
    }
    let mut g = vec![vec![T::zero(); n_max + 1]; n_max + 1];
    for m in 0..=n_max {
        for n in m..=n_max {
            let mut s = T::zero();
            for (row, &w) in table.iter().zip(&rule.weights) {
                s += w * row[m] * row[n];
            }
            let val = prefs[m] * prefs[n] * s / p.alpha;
            g[m][n] = val;
            g[n][m] = val;
        }
    }
    Ok(g)
}

/// Worst deviation of a Gram matrix from the identity.
pub fn gram_defect<T: Real>(g: &[Vec<T>]) -> T {
    let mut worst = T::zero();
    for (m, row) in g.iter().enumerate() {
        for (n, &v) in row.iter().enumerate() {
            let target = if m == n { T::one() } else { T::zero() };
            worst = worst.max((v - target).abs());
        }
    }
    worst
}

/// Normalisation of an oscillator eigenfunction through an entirely
/// different quadrature route: Chebyshev sampling of
/// `(1/alpha) int Psi_n^2 (1 - y^2)^{-gamma/beta} dy / sqrt(1 - y^2)`.
/// Returns the computed norm (expected: 1). Convergence in the rule size is
/// only algebraic, so this is a coarse cross-check, not a precision route.
pub fn oscillator_norm_check<T: Real>(
    n: usize,
    p: &ModelParams1D<T>,
    rule_size: usize,
) -> Result<T> {
    let rule = crate::specfun::chebyshev_rule(rule_size)?;
    let mut s = T::zero();
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let v = psi_oscillator(x, n, p)?;
        let compensate = (T::one() - x * x).powf(-p.gamma / p.beta);
        s += w * v * v * compensate;
    }
    Ok(s / p.alpha)
}

/// Number of interior sign changes of `psi_n` on a uniform grid of the given
/// size; an eigenfunction of level `n` must show exactly `n`.
pub fn node_count<T: Real>(n: usize, p: &ModelParams1D<T>, grid: usize) -> Result<usize> {
    if grid < 3 {
        return Err(Error::config("node counting needs a grid of at least 3"));
    }
    let inset = T::of(1e-9);
    let lo = -T::one() + inset;
    let h = (T::one() - inset - lo) / T::of_usize(grid - 1);
    let mut count = 0usize;
    let mut last_sign = T::zero();
    for i in 0..grid {
        let y = lo + h * T::of_usize(i);
        let v = psi(y, n, p)?;
        if v == T::zero() {
            continue;
        }
        let sign = v.signum();
        if last_sign != T::zero() && sign != last_sign {
            count += 1;
        }
        last_sign = sign;
    }
    Ok(count)
}

/// Apply the raising operator to `psi_{n-1}` numerically and compare with
/// the closed-form `psi_n`.
///
/// The raising operator acts in the coordinate representation as
///
/// `psi_n = (1 / (alpha^2 kappa_n))
///    [ y g(E_{n-1}) - alpha^2 (1 - y^2) d/dy + (alpha^2 / 2) y ]
///    (sqrt(2 E_{n-1}) + alpha) / sqrt(2 E_{n-1}) psi_{n-1}`
///
/// with `g(E) = alpha sqrt(2 E) - alpha^2 / 2`. The derivative is taken by
/// second-order finite differences on a uniform grid (central in the
/// interior, one-sided at the ends), and the residual is the worst absolute
/// deviation over `|y| <= 0.999`; it shrinks with the square of the step.
pub fn ladder_action_check<T: Real>(
    n: usize,
    p: &ModelParams1D<T>,
    grid: usize,
) -> Result<T> {
    if n == 0 {
        return Err(Error::domain(
            "ladder action check needs a level n >= 1 to raise into",
        ));
    }
    if grid < 5 {
        return Err(Error::config("ladder action check needs a grid of at least 5"));
    }
    let alpha = p.alpha;
    let a2 = alpha * alpha;
    let e_prev = energy_spt(n - 1, p);
    let root = (T::two() * e_prev).sqrt();
    let g = alpha * root - a2 * T::half();
    let scalar = (root + alpha) / root;
    let kap = crate::algebra::kappa(n, p.nu)?;

    let inset = T::of(1e-9);
    let lo = -T::one() + inset;
    let h = (T::one() - inset - lo) / T::of_usize(grid - 1);
    let ys: Vec<T> = (0..grid).map(|i| lo + h * T::of_usize(i)).collect();
    let prev: Vec<T> = ys.iter().map(|&y| psi(y, n - 1, p)).collect::<Result<_>>()?;

    let mut worst = T::zero();
    let cutoff = T::of(0.999);
    for i in 0..grid {
        let y = ys[i];
        if y.abs() > cutoff {
            continue;
        }
        let deriv = if i == 0 {
            (-T::of(3.0) * prev[0] + T::of(4.0) * prev[1] - prev[2]) / (T::two() * h)
        } else if i == grid - 1 {
            (T::of(3.0) * prev[i] - T::of(4.0) * prev[i - 1] + prev[i - 2]) / (T::two() * h)
        } else {
            (prev[i + 1] - prev[i - 1]) / (T::two() * h)
        };
        let raised = (y * g * prev[i] - a2 * (T::one() - y * y) * deriv
            + a2 * T::half() * y * prev[i])
            * scalar
            / (a2 * kap);
        let direct = psi(y, n, p)?;
        worst = worst.max((raised - direct).abs());
    }
    Ok(worst)
}

/// A wavefunction tabulated on a uniform grid, for serialisation.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunctionSample<T> {
    pub n: usize,
    pub model: WaveModel,
    pub nodes: Vec<T>,
    pub values: Vec<T>,
}

/// Tabulate `psi_n` (or its oscillator counterpart) on a uniform grid of
/// `samples` points spanning `(-1, 1)` with a hair of inset at the walls.
pub fn sample<T: Real>(
    n: usize,
    p: &ModelParams1D<T>,
    samples: usize,
    model: WaveModel,
) -> Result<WaveFunctionSample<T>> {
    if samples < 2 {
        return Err(Error::config("sampling needs at least 2 points"));
    }
    let inset = T::of(1e-9);
    let lo = -T::one() + inset;
    let h = (T::one() - inset - lo) / T::of_usize(samples - 1);
    let nodes: Vec<T> = (0..samples).map(|i| lo + h * T::of_usize(i)).collect();
    let values: Vec<T> = nodes
        .iter()
        .map(|&y| match model {
            WaveModel::Spt => psi(y, n, p),
            WaveModel::Oscillator => psi_oscillator(y, n, p),
        })
        .collect::<Result<_>>()?;
    Ok(WaveFunctionSample {
        n,
        model,
        nodes,
        values,
    })
}
