//! The D-dimensional isotropic oscillator with non-commuting coordinates.
//!
//! The radial problem maps onto a two-wall Poschl-Teller well on
//! `x in (0, pi / (2 alpha))` with independent wall strengths: the
//! centrifugal barrier sets `mu`, the deformation sets `nu`,
//!
//! `V(x) = ((2 alpha)^2 / 8) ( nu (nu - 1) / cos^2(alpha x)
//!        + mu (mu - 1) / sin^2(alpha x) )`,
//!
//! with `alpha^2 = (beta + beta') m omega^2`. Well levels are
//! `2 alpha^2 (n_r + d)^2` with ground offset `d = (nu + mu) / 2`, and the
//! physical energies subtract a constant `z_shift`. On the natural
//! coordinate `y = -cos(2 alpha x)` the eigenfunctions are weighted Jacobi
//! polynomials and the ladder algebra mirrors the 1D one with `alpha`
//! doubled and a central constant `C = nu(nu-1) - mu(mu-1)` appearing
//! wherever the two walls differ.
//!
//! The closed-form level formula is also evaluated in a commonly printed
//! variant ([`ddim_energy_printed_form`]) that disagrees with the well route;
//! it is reported as a diagnostic, never as a checked identity.

use num_complex::Complex;

use crate::algebra::AlgebraReport;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::scalar::Real;
use crate::specfun::{jacobi, jacobi_matrix, jacobi_rule, log_gamma};

/// Derived parameters of the D-dimensional radial problem at fixed angular
/// momentum `l`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DdimParams<T> {
    pub dim: usize,
    pub l: usize,
    pub mass: T,
    pub omega: T,
    /// Radial deformation in `[x_i, p_j] = i ((1 + beta p^2) delta_ij + beta' p_i p_j)`.
    pub beta: T,
    pub beta_prime: T,
    /// Measure exponent parameter of the momentum representation.
    pub gamma: T,
    /// `B = beta + beta'`.
    pub b_total: T,
    /// `alpha = omega sqrt(m B)`; the well lives on `(0, pi / (2 alpha))`.
    pub alpha: T,
    /// Effective angular index `j = l + (D - 3) / 2`.
    pub j: T,
    /// `J = j (j + 1)`.
    pub jj: T,
    /// Deformation wall strength index.
    pub nu: T,
    /// Centrifugal wall strength index, `mu = j + 1`.
    pub mu: T,
    /// Constant subtracted from well levels to get physical energies.
    pub z_shift: T,
    /// Exponent `gamma / B - (beta' / B)(D - 1) / 2` of the radial measure.
    pub measure_exponent: T,
    /// The geometry part of the exponent, `-(beta' / B)(D - 1) / 2`.
    pub measure_delta: T,
}

/// Validate inputs and derive the radial well parameters.
pub fn ddim_derive<T: Real>(
    dim: usize,
    l: usize,
    mass: T,
    omega: T,
    beta: T,
    beta_prime: T,
    gamma: T,
) -> Result<DdimParams<T>> {
    if dim == 0 {
        return Err(Error::domain("dimension must be at least 1"));
    }
    if !(mass > T::zero()) || !mass.is_finite() {
        return Err(Error::domain(format!("mass must be positive, got {mass}")));
    }
    if !(omega > T::zero()) || !omega.is_finite() {
        return Err(Error::domain(format!("omega must be positive, got {omega}")));
    }
    if !(beta >= T::zero()) || !beta.is_finite() {
        return Err(Error::domain(format!("beta must be non-negative, got {beta}")));
    }
    if !(beta_prime >= T::zero()) || !beta_prime.is_finite() {
        return Err(Error::domain(format!(
            "beta_prime must be non-negative, got {beta_prime}"
        )));
    }
    let b_total = beta + beta_prime;
    if !(b_total > T::zero()) {
        return Err(Error::domain("beta + beta_prime must be positive"));
    }
    if !(gamma >= T::zero()) || !gamma.is_finite() {
        return Err(Error::domain(format!(
            "gamma must be non-negative, got {gamma}"
        )));
    }
    let df = T::of_usize(dim);
    let lf = T::of_usize(l);
    let j = lf + (df - T::of(3.0)) * T::half();
    let jj = j * (j + T::one());
    let alpha = omega * (mass * b_total).sqrt();
    let half_dm1 = (df - T::one()) * T::half();
    let r = (beta * beta * jj - beta * beta_prime * half_dm1) / (b_total * b_total)
        + T::one() / (mass * mass * omega * omega * b_total * b_total);
    let quarter_plus_r = T::of(0.25) + r;
    if !(quarter_plus_r >= T::zero()) {
        return Err(Error::domain(format!(
            "no real well index: 1/4 + R = {quarter_plus_r} is negative"
        )));
    }
    let nu = T::half() + quarter_plus_r.sqrt();
    let mu = j + T::one();
    let z_shift = T::one() / (T::two() * mass * b_total)
        - (mass * omega * omega * beta_prime * (beta_prime + T::two() * beta)
            / (T::two() * b_total))
            * (jj + half_dm1);
    let measure_delta = -(beta_prime / b_total) * half_dm1;
    let measure_exponent = gamma / b_total + measure_delta;
    Ok(DdimParams {
        dim,
        l,
        mass,
        omega,
        beta,
        beta_prime,
        gamma,
        b_total,
        alpha,
        j,
        jj,
        nu,
        mu,
        z_shift,
        measure_exponent,
        measure_delta,
    })
}

/// Well level `2 alpha^2 (n_r + d)^2` with `d = (nu + mu) / 2`.
pub fn ddim_energy_pt<T: Real>(n_r: usize, dp: &DdimParams<T>) -> T {
    let d = (dp.nu + dp.mu) * T::half();
    let s = T::of_usize(n_r) + d;
    T::two() * dp.alpha * dp.alpha * s * s
}

fn radial_quantum_number(n: usize, l: usize) -> Result<usize> {
    if n < l || (n - l) % 2 != 0 {
        return Err(Error::domain(format!(
            "incompatible radial excitation: n = {n}, l = {l} (need n >= l and n - l even)"
        )));
    }
    Ok((n - l) / 2)
}

/// Physical energy of the `(n, l)` level through the well route:
/// re-derive the wall indices at this `l`, take the well level at
/// `n_r = (n - l) / 2`, subtract the constant shift.
pub fn ddim_energy_route_well<T: Real>(n: usize, l: usize, dp: &DdimParams<T>) -> Result<T> {
    let n_r = radial_quantum_number(n, l)?;
    let at_l = ddim_derive(
        dp.dim,
        l,
        dp.mass,
        dp.omega,
        dp.beta,
        dp.beta_prime,
        dp.gamma,
    )?;
    Ok(ddim_energy_pt(n_r, &at_l) - at_l.z_shift)
}

/// Physical energy of the `(n, l)` level in closed form:
///
/// `E = omega X sqrt(1 + m^2 omega^2 [beta^2 J
///        + (beta^2 + beta'^2 - 2 beta beta' (D - 2)) / 4])
///    + (m omega^2 B / 2) X^2 + m omega^2 B / 8
///    + (m omega^2 B / 2) J + m omega^2 beta' (D - 1) / 4`
///
/// with `X = n + D/2` and `J = j (j + 1)` at the given `l`.
pub fn ddim_energy_closed<T: Real>(n: usize, l: usize, dp: &DdimParams<T>) -> Result<T> {
    radial_quantum_number(n, l)?;
    let df = T::of_usize(dp.dim);
    let j = T::of_usize(l) + (df - T::of(3.0)) * T::half();
    let jj = j * (j + T::one());
    let m = dp.mass;
    let w = dp.omega;
    let b = dp.beta;
    let bp = dp.beta_prime;
    let bt = dp.b_total;
    let x = T::of_usize(n) + df * T::half();
    let radicand = T::one()
        + m * m
            * w
            * w
            * (b * b * jj + (b * b + bp * bp - T::two() * b * bp * (df - T::two())) * T::of(0.25));
    Ok(w * x * radicand.sqrt()
        + m * w * w * bt * T::half() * x * x
        + m * w * w * bt * T::of(0.125)
        + m * w * w * bt * T::half() * jj
        + m * w * w * bp * (df - T::one()) * T::of(0.25))
}

/// The commonly printed variant of the closed form. It replaces `(D - 2)`
/// by `(D - 3)` in the radicand, carries the J term with coefficient
/// `(beta - beta') / 2` and an extra `-(D-1)(D-3)/4` offset, uses
/// `beta' D / 4`, and drops the `m omega^2 B / 8` constant. Kept only so the
/// deviation from [`ddim_energy_closed`] can be reported; at `beta' = 0` the
/// gap is exactly `beta m omega^2 (D - 2)^2 / 8`.
pub fn ddim_energy_printed_form<T: Real>(n: usize, l: usize, dp: &DdimParams<T>) -> Result<T> {
    radial_quantum_number(n, l)?;
    let df = T::of_usize(dp.dim);
    let j = T::of_usize(l) + (df - T::of(3.0)) * T::half();
    let jj = j * (j + T::one());
    let m = dp.mass;
    let w = dp.omega;
    let b = dp.beta;
    let bp = dp.beta_prime;
    let bt = dp.b_total;
    let x = T::of_usize(n) + df * T::half();
    let radicand = T::one()
        + m * m
            * w
            * w
            * (b * b * jj + (b * b + bp * bp - T::two() * b * bp * (df - T::of(3.0))) * T::of(0.25));
    Ok(w * x * radicand.sqrt()
        + m * w * w * bt * T::half() * x * x
        + m * w * w * bp * df * T::of(0.25)
        + m * w * w * (b - bp) * T::half()
            * (jj - (df - T::one()) * (df - T::of(3.0)) * T::of(0.25)))
}

/// Structure-function constants of the two-wall ladder.
fn wall_constants<T: Real>(nu: T, mu: T) -> (T, T, T) {
    let cn = nu * (nu - T::one());
    let cm = mu * (mu - T::one());
    // (C, Q, d)
    (cn - cm, cn + cm, (nu + mu) * T::half())
}

/// Two-wall structure function in factorised form:
///
/// `phi(n) = n (n + nu + mu - 1) (n + (2 nu - 1)/2) (n + (2 mu - 1)/2)
///           (n + (nu + mu)/2)
///         / ((n + (nu + mu - 1)/2)^2 (n + (nu + mu - 2)/2))`.
pub fn ddim_phi<T: Real>(n: usize, nu: T, mu: T) -> Result<T> {
    let nf = T::of_usize(n);
    let s = nu + mu;
    let den1 = nf + (s - T::one()) * T::half();
    let den2 = nf + (s - T::two()) * T::half();
    let tiny = T::of(1e-12);
    if den1.abs() < tiny || den2.abs() < tiny {
        return Err(Error::domain(format!(
            "structure function pole at n = {n} for nu = {nu}, mu = {mu}"
        )));
    }
    Ok(nf * (nf + s - T::one())
        * (nf + nu - T::half())
        * (nf + mu - T::half())
        * (nf + s * T::half())
        / (den1 * den1 * den2))
}

/// Two-wall structure function in its defining (unfactorised) form,
/// `-(Q/2) u/(u-1) + u^2 + (C^2/4) u / ((u-1)(2u-1)^2)` with `u = n + d`.
pub fn ddim_phi_unfactorized<T: Real>(n: usize, nu: T, mu: T) -> Result<T> {
    let (c, q, d) = wall_constants(nu, mu);
    let u = T::of_usize(n) + d;
    let um1 = u - T::one();
    let tu = T::two() * u - T::one();
    let tiny = T::of(1e-12);
    if um1.abs() < tiny || tu.abs() < tiny {
        return Err(Error::domain(format!(
            "structure function pole at n = {n} for nu = {nu}, mu = {mu}"
        )));
    }
    Ok(-(q * T::half()) * u / um1 + u * u + (c * c * T::of(0.25)) * u / (um1 * tu * tu))
}

/// Ladder coefficient `kappa_n = sqrt(phi(n))` of the two-wall ladder.
pub fn ddim_kappa<T: Real>(n: usize, nu: T, mu: T) -> Result<T> {
    let p = ddim_phi(n, nu, mu)?;
    if p < T::zero() {
        return Err(Error::domain(format!(
            "structure function negative at n = {n}: {p}"
        )));
    }
    Ok(p.sqrt())
}

/// The five roots of the ground-offset quintic and their residuals.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundRoots<T> {
    /// `{0, (nu+mu)/2, (nu+1-mu)/2, (1-nu+mu)/2, (2-nu-mu)/2}`.
    pub roots: [T; 5],
    /// `|P(root)|` on the cleared-denominator quintic; all should vanish.
    pub residuals: [T; 5],
    /// The physical ground offset, `d = (nu + mu) / 2`.
    pub selected: T,
    /// Why the root `d = 0` is rejected.
    pub rejected_zero_reason: &'static str,
}

/// Classify the candidate ground offsets `d` for the two-wall ladder.
///
/// The consistency condition `phi(0) = 0` with unknown offset `d` clears to
/// the quintic `P(d) = d^2 (d-1)(2d-1)^2 - (Q/2) d (2d-1)^2 + (C^2/4) d`;
/// its five roots are returned with their residuals. `d = 0` is rejected
/// because it sends the first excited level to infinity (a pole of the
/// structure function), and `d = (nu + mu)/2` is the physical choice.
pub fn ddim_ground_roots<T: Real>(nu: T, mu: T) -> Result<GroundRoots<T>> {
    if !(nu + mu > T::one()) {
        return Err(Error::domain(format!(
            "wall indices too weak: nu + mu must exceed 1, got {nu} + {mu}"
        )));
    }
    let (c, q, _) = wall_constants(nu, mu);
    let roots = [
        T::zero(),
        (nu + mu) * T::half(),
        (nu + T::one() - mu) * T::half(),
        (T::one() - nu + mu) * T::half(),
        (T::two() - nu - mu) * T::half(),
    ];
    let quintic = |d: T| {
        let tu = T::two() * d - T::one();
        d * d * (d - T::one()) * tu * tu - q * T::half() * d * tu * tu
            + c * c * T::of(0.25) * d
    };
    let mut residuals = [T::zero(); 5];
    for (slot, &r) in residuals.iter_mut().zip(&roots) {
        *slot = quintic(r).abs();
    }
    Ok(GroundRoots {
        roots,
        residuals,
        selected: (nu + mu) * T::half(),
        rejected_zero_reason:
            "offset 0 puts a pole of the structure function at the first excited state",
    })
}

/// Truncated matrix realisation of the two-wall ladder set on the natural
/// coordinate `y = -cos(2 alpha x)`.
#[derive(Debug, Clone)]
pub struct DdimLadderSet<T> {
    pub dim: usize,
    pub interior: usize,
    pub alpha: T,
    pub nu: T,
    pub mu: T,
    /// Ground offset `d = (nu + mu) / 2`.
    pub offset: T,
    /// Central constant `C = nu(nu-1) - mu(mu-1)`.
    pub c_const: T,
    /// `Q = nu(nu-1) + mu(mu-1)`.
    pub q_const: T,
    pub h: CMatrix<T>,
    /// Natural coordinate; tridiagonal with a nonzero diagonal because the
    /// two walls break the symmetry.
    pub y: CMatrix<T>,
    /// `k = i (H y - y H)`, Hermitian.
    pub k: CMatrix<T>,
    pub a: CMatrix<T>,
    pub a_dag: CMatrix<T>,
}

impl<T: Real> DdimLadderSet<T> {
    pub fn window(&self) -> (usize, usize) {
        let lo = (self.dim - self.interior) / 2;
        (lo, lo + self.interior)
    }

    fn energies(&self) -> Vec<T> {
        (0..self.dim)
            .map(|n| {
                let s = T::of_usize(n) + self.offset;
                T::two() * self.alpha * self.alpha * s * s
            })
            .collect()
    }
}

/// Build the truncated two-wall ladder set at explicit wall indices.
///
/// Requires the physical branch `nu > 1`, `mu >= 0`, and
/// `8 <= interior <= dim - 8`.
pub fn build_ddim_ladder<T: Real>(
    dim: usize,
    interior: usize,
    alpha: T,
    nu: T,
    mu: T,
) -> Result<DdimLadderSet<T>> {
    if !(nu > T::one()) {
        return Err(Error::domain(format!(
            "ladder construction needs nu > 1, got {nu}"
        )));
    }
    if !(mu >= T::zero()) {
        return Err(Error::domain(format!("mu must be non-negative, got {mu}")));
    }
    if !(alpha > T::zero()) || !alpha.is_finite() {
        return Err(Error::domain(format!("alpha must be positive, got {alpha}")));
    }
    if interior < 8 || interior + 8 > dim {
        return Err(Error::config(format!(
            "interior window {interior} must satisfy 8 <= interior <= dim - 8 (dim = {dim})"
        )));
    }
    let (c_const, q_const, offset) = wall_constants(nu, mu);
    let energies: Vec<T> = (0..dim)
        .map(|n| {
            let s = T::of_usize(n) + offset;
            T::two() * alpha * alpha * s * s
        })
        .collect();
    let h = CMatrix::from_real_diag(&energies);
    // y is the Jacobi matrix of the weight the eigenfunctions square to.
    let (ydiag, yoff) = jacobi_matrix(dim, nu - T::half(), mu - T::half())?;
    let mut y = CMatrix::zeros(dim);
    for n in 0..dim {
        y[(n, n)] = Complex::new(ydiag[n], T::zero());
        if n + 1 < dim {
            y[(n, n + 1)] = Complex::new(yoff[n], T::zero());
            y[(n + 1, n)] = Complex::new(yoff[n], T::zero());
        }
    }
    let k = CMatrix::commutator(&h, &y).scale(Complex::new(T::zero(), T::one()));
    let mut a = CMatrix::zeros(dim);
    for n in 0..dim - 1 {
        a[(n, n + 1)] = Complex::new(ddim_kappa(n + 1, nu, mu)?, T::zero());
    }
    let a_dag = a.adjoint();
    Ok(DdimLadderSet {
        dim,
        interior,
        alpha,
        nu,
        mu,
        offset,
        c_const,
        q_const,
        h,
        y,
        k,
        a,
        a_dag,
    })
}

/// Build the ladder set from derived radial parameters.
pub fn build_ddim_ladder_from<T: Real>(
    dim: usize,
    interior: usize,
    dp: &DdimParams<T>,
) -> Result<DdimLadderSet<T>> {
    build_ddim_ladder(dim, interior, dp.alpha, dp.nu, dp.mu)
}

/// Measure the operator identities of the two-wall ladder set.
///
/// Checked identities (`residuals`):
///
/// - `hy_commutator`: `[H, y] + i k`
/// - `yk_commutator`: `[y, k] - i (2a)^2 (1 - y^2)`
/// - `hk_commutator`: `[H, k] - i (2a)^2 (2 y H - ((2a)^2/4) y - i k + ((2a)^2/4) C)`
/// - `ha_commutator_left`: `[H, a] + a (2a sqrt(2H) - 2a^2)`
/// - `ha_commutator_right`: `[H, a] + (2a sqrt(2H) + 2a^2) a`
/// - `sqrt_h_commutator`: `[sqrt(2H), a] + 2a a`
/// - `ladder_a_reconstruction`:
///   `a - (y (2a sqrt(2H) + 2a^2) + i k + 4a^4 C (2a sqrt(2H) - 2a^2)^{-1}) / (4a^2)`
/// - `ladder_adag_reconstruction`: adjoint counterpart
/// - `aad_commutator`: `[a, a^dagger] - (phi(N+1) - phi(N))`
/// - `number_diagonal`: `a^dagger a - phi(N)`
/// - `h_from_number`: `H - 2a^2 (N + d)^2`
///
/// (`a` abbreviates `alpha` above.) Two printed variants that do *not* hold
/// are reported under `diagnostics`: `hk_commutator_printed_form` (sign of
/// the `y` term flipped, central constant outside the commutator bracket)
/// and `ha_commutator_printed_form` (ladder shift `2 alpha` instead of
/// `2 alpha^2`); their residuals stay O(1) and are never thresholded.
pub fn check_ddim_algebra<T: Real>(set: &DdimLadderSet<T>) -> Result<AlgebraReport<T>> {
    let alpha = set.alpha;
    let two_a = T::two() * alpha;
    let fa2 = two_a * two_a; // (2 alpha)^2 = 4 alpha^2
    let dim = set.dim;
    let (lo, hi) = set.window();
    let i_unit = Complex::new(T::zero(), T::one());
    let energies = set.energies();
    let sqrt2h: Vec<T> = energies.iter().map(|&e| (T::two() * e).sqrt()).collect();
    let mut residuals = std::collections::BTreeMap::new();
    let mut diagnostics = std::collections::BTreeMap::new();

    // [H, y] = -i k by construction of k.
    let r = CMatrix::commutator(&set.h, &set.y).add(&set.k.scale(i_unit));
    residuals.insert("hy_commutator".into(), r.max_abs_window(lo, hi));

    // [y, k] = i (2a)^2 (1 - y^2).
    let one_minus_y2 = CMatrix::identity(dim).sub(&set.y.mul(&set.y));
    let r = CMatrix::commutator(&set.y, &set.k).sub(&one_minus_y2.scale(i_unit.scale(fa2)));
    residuals.insert("yk_commutator".into(), r.max_abs_window(lo, hi));

    // [H, k] = i (2a)^2 (2 y H - ((2a)^2 / 4) y - i k + ((2a)^2 / 4) C).
    let central = CMatrix::identity(dim).scale_real(fa2 * T::of(0.25) * set.c_const);
    let rhs = set
        .y
        .mul(&set.h)
        .scale_real(T::two())
        .sub(&set.y.scale_real(fa2 * T::of(0.25)))
        .sub(&set.k.scale(i_unit))
        .add(&central)
        .scale(i_unit.scale(fa2));
    let hk = CMatrix::commutator(&set.h, &set.k);
    let r = hk.sub(&rhs);
    residuals.insert("hk_commutator".into(), r.max_abs_window(lo, hi));

    // Printed variant: + y term, central constant outside, no i on it.
    let rhs_printed = set
        .y
        .mul(&set.h)
        .scale_real(T::two())
        .add(&set.y.scale_real(fa2 * T::of(0.25)))
        .sub(&set.k.scale(i_unit))
        .scale(i_unit.scale(fa2))
        .add(&central);
    let r = hk.sub(&rhs_printed);
    diagnostics.insert("hk_commutator_printed_form".into(), r.max_abs_window(lo, hi));

    // [H, a] = -a (2a sqrt(2H) - 2a^2) = -(2a sqrt(2H) + 2a^2) a.
    let g_minus = CMatrix::from_real_diag(
        &sqrt2h.iter().map(|&s| two_a * s - T::two() * alpha * alpha).collect::<Vec<_>>(),
    );
    let g_plus = CMatrix::from_real_diag(
        &sqrt2h.iter().map(|&s| two_a * s + T::two() * alpha * alpha).collect::<Vec<_>>(),
    );
    let ha = CMatrix::commutator(&set.h, &set.a);
    let r = ha.add(&set.a.mul(&g_minus));
    residuals.insert("ha_commutator_left".into(), r.max_abs_window(lo, hi));
    let r = ha.add(&g_plus.mul(&set.a));
    residuals.insert("ha_commutator_right".into(), r.max_abs_window(lo, hi));

    // Printed variant shifts by 2 alpha rather than 2 alpha^2; it only
    // masquerades as correct at alpha = 1.
    let g_printed = CMatrix::from_real_diag(
        &sqrt2h.iter().map(|&s| two_a * s - two_a).collect::<Vec<_>>(),
    );
    let r = ha.add(&set.a.mul(&g_printed));
    diagnostics.insert("ha_commutator_printed_form".into(), r.max_abs_window(lo, hi));

    // [sqrt(2H), a] = -2a a, exactly.
    let sq = CMatrix::from_real_diag(&sqrt2h);
    let r = CMatrix::commutator(&sq, &set.a).add(&set.a.scale_real(two_a));
    residuals.insert("sqrt_h_commutator".into(), r.max_abs_window(lo, hi));

    // Ladder reconstruction with the +C central term. The shift being
    // inverted vanishes when some n + (nu + mu)/2 equals 1/2; refuse rather
    // than divide through the pole.
    let inv_shift: Vec<T> = sqrt2h
        .iter()
        .map(|&s| {
            let shift = two_a * s - T::two() * alpha * alpha;
            if shift.abs() < T::of(1e-9) * alpha * alpha {
                return Err(Error::domain(
                    "ladder reconstruction hits the singular downward shift",
                ));
            }
            Ok(T::one() / shift)
        })
        .collect::<Result<_>>()?;
    let inv_gm = CMatrix::from_real_diag(&inv_shift);
    let central_term = inv_gm.scale_real(T::of(4.0) * alpha.powi(4) * set.c_const);
    let ik = set.k.scale(i_unit);
    let r = set
        .y
        .mul(&g_plus)
        .add(&ik)
        .add(&central_term)
        .scale_real(T::one() / fa2)
        .sub(&set.a);
    residuals.insert("ladder_a_reconstruction".into(), r.max_abs_window(lo, hi));
    let r = g_plus
        .mul(&set.y)
        .sub(&ik)
        .add(&central_term)
        .scale_real(T::one() / fa2)
        .sub(&set.a_dag);
    residuals.insert("ladder_adag_reconstruction".into(), r.max_abs_window(lo, hi));

    // Structure-function identities.
    let phi_diag: Vec<T> = (0..dim)
        .map(|n| ddim_phi(n, set.nu, set.mu))
        .collect::<Result<_>>()?;
    let f_diag: Vec<T> = (0..dim)
        .map(|n| Ok(ddim_phi(n + 1, set.nu, set.mu)? - phi_diag[n]))
        .collect::<Result<_>>()?;
    let r = CMatrix::commutator(&set.a, &set.a_dag).sub(&CMatrix::from_real_diag(&f_diag));
    residuals.insert("aad_commutator".into(), r.max_abs_window(lo, hi));
    let r = set
        .a_dag
        .mul(&set.a)
        .sub(&CMatrix::from_real_diag(&phi_diag));
    residuals.insert("number_diagonal".into(), r.max_abs_window(lo, hi));

    // H against the level recursion sqrt(2 E_{n+1}) = sqrt(2 E_n) + 2 alpha
    // seeded at the ground level (a distinct arithmetic route to the diag).
    let mut rec = Vec::with_capacity(dim);
    let mut s = two_a * set.offset;
    rec.push(s * s * T::half());
    for _ in 1..dim {
        s += two_a;
        rec.push(s * s * T::half());
    }
    let r = set.h.sub(&CMatrix::from_real_diag(&rec));
    residuals.insert("h_from_number".into(), r.max_abs_window(lo, hi));

    Ok(AlgebraReport {
        dim,
        interior: set.interior,
        residuals,
        diagnostics,
    })
}

/// Radial eigenfunction on the natural coordinate,
/// `psi_{n_r}(y) = c (1-y)^{nu/2} (1+y)^{mu/2} P_{n_r}^{(nu-1/2, mu-1/2)}(y)`,
/// normalised under `(1/(2 alpha)) int f g dy / sqrt(1 - y^2)`.
pub fn ddim_wavefunction<T: Real>(y: T, n_r: usize, dp: &DdimParams<T>) -> Result<T> {
    if !(y.abs() <= T::one()) {
        return Err(Error::domain(format!(
            "coordinate y must lie in [-1, 1], got {y}"
        )));
    }
    let nu = dp.nu;
    let mu = dp.mu;
    let nf = T::of_usize(n_r);
    // Jacobi norm: h_n = 2^(nu+mu) Gamma(n+nu+1/2) Gamma(n+mu+1/2)
    //   / ((2n+nu+mu) n! Gamma(n+nu+mu)).
    let ln_h = (nu + mu) * T::two().ln() + log_gamma(nf + nu + T::half())?
        + log_gamma(nf + mu + T::half())?
        - (T::two() * nf + nu + mu).ln()
        - log_gamma(nf + T::one())?
        - log_gamma(nf + nu + mu)?;
    let c = (((T::two() * dp.alpha).ln() - ln_h) * T::half()).exp();
    Ok(c * (T::one() - y).powf(nu * T::half())
        * (T::one() + y).powf(mu * T::half())
        * jacobi(n_r, nu - T::half(), mu - T::half(), y)?)
}

/// Gram matrix of radial eigenfunctions under
/// `(1/(2 alpha)) int f g dy / sqrt(1 - y^2)`, by a Gauss-Jacobi rule exact
/// for the product weight.
pub fn ddim_gram_matrix<T: Real>(n_max: usize, dp: &DdimParams<T>) -> Result<Vec<Vec<T>>> {
    let a = dp.nu - T::half();
    let b = dp.mu - T::half();
    let rule = jacobi_rule(n_max + 8, a, b)?;
    // Strip the envelope: on the rule's weight the integrand is the product
    // of normalised Jacobi polynomials.
    let mut values = vec![vec![T::zero(); n_max + 1]; rule.nodes.len()];
    for (row, &x) in values.iter_mut().zip(&rule.nodes) {
        for (n, slot) in row.iter_mut().enumerate() {
            let env = (T::one() - x).powf(dp.nu * T::half())
                * (T::one() + x).powf(dp.mu * T::half());
            *slot = ddim_wavefunction(x, n, dp)? / env;
        }
    }
    let mut g = vec![vec![T::zero(); n_max + 1]; n_max + 1];
    for m in 0..=n_max {
        for n in m..=n_max {
            let mut s = T::zero();
            for (row, &w) in values.iter().zip(&rule.weights) {
                s += w * row[m] * row[n];
            }
            let v = s / (T::two() * dp.alpha);
            g[m][n] = v;
            g[n][m] = v;
        }
    }
    Ok(g)
}

/// Number of independent states with angular momentum `l` in `D` dimensions
/// (multiplicity in the magnetic quantum numbers).
pub fn magnetic_degeneracy(dim: usize, l: usize) -> Result<u64> {
    fn binom(n: i64, k: i64) -> Result<u128> {
        if k < 0 || n < k {
            return Ok(0);
        }
        let mut acc: u128 = 1;
        for i in 0..k as u128 {
            acc = acc
                .checked_mul(n as u128 - i)
                .ok_or_else(|| Error::computation("degeneracy overflows"))?;
            acc /= i + 1;
        }
        Ok(acc)
    }
    if dim == 0 {
        return Err(Error::domain("dimension must be at least 1"));
    }
    let d = dim as i64;
    let l = l as i64;
    let count = binom(l + d - 1, l)? - binom(l + d - 3, l - 2)?;
    u64::try_from(count).map_err(|_| Error::computation("degeneracy overflows"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::derive_params;
    use crate::wavefn::gram_defect;

    fn base_params() -> DdimParams<f64> {
        ddim_derive(3, 1, 1.0, 1.0, 0.25, 0.05, 0.0).unwrap()
    }

    #[test]
    fn reduces_to_one_dimension() {
        let dp = ddim_derive(1, 0, 1.0f64, 1.0, 0.2, 0.0, 0.0).unwrap();
        let p1 = derive_params(0.2f64, 1.0, 0.0).unwrap();
        assert!((dp.nu - p1.nu).abs() < 1e-12);
        assert!((dp.alpha - p1.alpha).abs() < 1e-15);
        assert!((dp.mu - 0.0).abs() < 1e-15);
        assert!((dp.z_shift - 2.5).abs() < 1e-12);
        // Physical levels match the 1D oscillator, even n through the even
        // sector (l = 0), odd n through the odd one (l = 1).
        for n in 0..6 {
            let got = ddim_energy_route_well(n, n % 2, &dp).unwrap();
            let want = crate::spectrum::energy_osc(n, &p1);
            assert!((got - want).abs() < 1e-10 * want, "n={n}: {got} vs {want}");
        }
    }

    #[test]
    fn centrifugal_wall_indices() {
        assert!((ddim_derive(3, 0, 1.0f64, 1.0, 0.2, 0.0, 0.0).unwrap().mu - 1.0).abs() < 1e-15);
        assert!((ddim_derive(3, 2, 1.0f64, 1.0, 0.2, 0.0, 0.0).unwrap().mu - 3.0).abs() < 1e-15);
        assert!((ddim_derive(2, 0, 1.0f64, 1.0, 0.2, 0.0, 0.0).unwrap().mu - 0.5).abs() < 1e-15);
        assert!((ddim_derive(1, 1, 1.0f64, 1.0, 0.2, 0.0, 0.0).unwrap().mu - 1.0).abs() < 1e-15);
        assert!(ddim_derive(3, 0, 1.0, 1.0, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn structure_function_frozen_value_and_route_equality() {
        let got = ddim_phi(1, 3.0f64, 2.0).unwrap();
        assert!((got - 245.0 / 36.0).abs() < 1e-13);
        let got = ddim_phi_unfactorized(1, 3.0f64, 2.0).unwrap();
        assert!((got - 245.0 / 36.0).abs() < 1e-13);
        for n in 0..=40 {
            let a = ddim_phi(n, 4.7f64, 2.3).unwrap();
            let b = ddim_phi_unfactorized(n, 4.7f64, 2.3).unwrap();
            assert!(
                (a - b).abs() < 1e-11 * a.abs().max(1.0),
                "n={n}: {a} vs {b}"
            );
        }
        assert_eq!(ddim_phi(0, 3.0f64, 2.0).unwrap(), 0.0);
    }

    #[test]
    fn structure_function_positive_for_all_excitations() {
        for (nu, mu) in [(4.7f64, 2.3), (3.0, 2.0), (1.2, 1.1)] {
            for n in 1..=10_000usize {
                let p = ddim_phi(n, nu, mu).unwrap();
                assert!(p > 0.0, "nu={nu} mu={mu} n={n}: {p}");
            }
        }
    }

    #[test]
    fn ground_offset_roots() {
        let roots = ddim_ground_roots(3.0f64, 2.0).unwrap();
        let expect = [0.0, 2.5, 1.0, 0.0, -1.5];
        for (got, want) in roots.roots.iter().zip(expect) {
            assert!((got - want).abs() < 1e-14, "{got} vs {want}");
        }
        for (i, r) in roots.residuals.iter().enumerate() {
            assert!(*r < 1e-12, "root {i}: residual {r}");
        }
        assert_eq!(roots.selected, 2.5);
        assert!(!roots.rejected_zero_reason.is_empty());
    }

    #[test]
    fn energy_routes_agree() {
        for dim in [3usize, 5] {
            for l in [0usize, 1, 2] {
                for beta in [0.05f64, 0.2] {
                    for bp in [0.0f64, 0.03] {
                        let dp = ddim_derive(dim, l, 1.0, 1.0, beta, bp, 0.0).unwrap();
                        for n_r in 0..=8usize {
                            let n = 2 * n_r + l;
                            let well = ddim_energy_route_well(n, l, &dp).unwrap();
                            let closed = ddim_energy_closed(n, l, &dp).unwrap();
                            assert!(
                                ((well - closed) / closed).abs() < 1e-12,
                                "D={dim} l={l} beta={beta} bp={bp} n={n}: {well} vs {closed}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn printed_form_misses_by_the_known_gap() {
        // At beta' = 0 the printed variant sits exactly
        // beta m omega^2 (D-2)^2 / 8 below the route-checked value.
        let dp = ddim_derive(5, 0, 1.0f64, 1.0, 0.2, 0.0, 0.0).unwrap();
        let n = 4;
        let good = ddim_energy_closed(n, 0, &dp).unwrap();
        let printed = ddim_energy_printed_form(n, 0, &dp).unwrap();
        let gap = 0.2 * 9.0 / 8.0;
        assert!(
            ((good - printed) - gap).abs() < 1e-12,
            "gap {} vs {gap}",
            good - printed
        );
    }

    #[test]
    fn level_index_constraints() {
        let dp = base_params();
        assert!(matches!(
            ddim_energy_route_well(2, 1, &dp),
            Err(crate::Error::Domain(_))
        ));
        assert!(matches!(
            ddim_energy_closed(0, 1, &dp),
            Err(crate::Error::Domain(_))
        ));
    }

    #[test]
    fn ladder_identities_hold_away_from_alpha_one() {
        // alpha far from 1 so the printed ladder shift cannot masquerade.
        let set = build_ddim_ladder(64, 40, 0.8f64, 4.7, 2.3).unwrap();
        let report = check_ddim_algebra(&set).unwrap();
        for (name, r) in &report.residuals {
            assert!(*r < 1e-10, "{name}: residual {r}");
        }
        // The printed variants must fail loudly.
        assert!(report.diagnostics["hk_commutator_printed_form"] > 1e-2);
        assert!(report.diagnostics["ha_commutator_printed_form"] > 1e-2);
    }

    #[test]
    fn ladder_from_derived_params() {
        let dp = base_params();
        let set = build_ddim_ladder_from(48, 24, &dp).unwrap();
        let report = check_ddim_algebra(&set).unwrap();
        assert!(report.max_residual() < 1e-10, "max {}", report.max_residual());
    }

    #[test]
    fn radial_gram_matrix_is_identity() {
        let dp = base_params();
        let g = ddim_gram_matrix(12, &dp).unwrap();
        assert!(gram_defect(&g) < 1e-9, "defect {}", gram_defect(&g));
    }

    #[test]
    fn wall_envelope_vanishes_at_both_walls() {
        let dp = base_params();
        assert_eq!(ddim_wavefunction(1.0, 2, &dp).unwrap(), 0.0);
        assert_eq!(ddim_wavefunction(-1.0, 2, &dp).unwrap(), 0.0);
        assert!(ddim_wavefunction(1.5, 2, &dp).is_err());
    }

    #[test]
    fn degeneracies() {
        assert_eq!(magnetic_degeneracy(3, 0).unwrap(), 1);
        assert_eq!(magnetic_degeneracy(3, 2).unwrap(), 5);
        assert_eq!(magnetic_degeneracy(2, 0).unwrap(), 1);
        assert_eq!(magnetic_degeneracy(2, 3).unwrap(), 2);
        assert_eq!(magnetic_degeneracy(1, 0).unwrap(), 1);
        assert_eq!(magnetic_degeneracy(1, 1).unwrap(), 1);
        assert_eq!(magnetic_degeneracy(5, 2).unwrap(), 14);
    }
}
