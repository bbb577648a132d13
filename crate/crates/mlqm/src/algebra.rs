//! Deformed ladder algebra of the oscillator.
//!
//! The well levels `E_n = (alpha^2 / 2)(n + nu)^2` admit ladder operators
//! whose structure function
//!
//! `phi(n) = (n + nu)^2 - nu (nu - 1) / (n + nu - 1) - nu (nu - 1)`
//!
//! fixes everything: `a^dagger a = phi(N)`, the ladder coefficients are
//! `kappa_n = sqrt(phi(n))`, `[a, a^dagger] = phi(N + 1) - phi(N)`, and the
//! whole set closes on functions of the Hamiltonian. The identities are
//! exact, so a truncated matrix realisation must reproduce them to rounding
//! away from the truncation edge; [`check_algebra`] measures exactly that.
//!
//! Two independent routes tie the same coefficients to ordinary bosons and
//! to su(1,1) generators ([`bose_map_check`]), a cubic in the number-operator
//! offset selects the physical branch ([`number_operator_map`]), and the
//! negative-depth branch closes finite-dimensional representations
//! ([`finite_rep_condition`]).

use std::collections::BTreeMap;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::params::ModelParams1D;
use crate::scalar::Real;
use crate::spectrum::energy_spt;

fn require_physical_nu<T: Real>(nu: T) -> Result<()> {
    if !(nu > T::one()) {
        return Err(Error::domain(format!(
            "structure function needs the physical branch nu > 1, got {nu}"
        )));
    }
    Ok(())
}

/// Structure function `phi(n)`, evaluated in its defining (unfactorised)
/// form. Requires the physical branch `nu > 1`.
pub fn phi<T: Real>(n: usize, nu: T) -> Result<T> {
    require_physical_nu(nu)?;
    let s = T::of_usize(n) + nu;
    let c = nu * (nu - T::one());
    Ok(s * s - c / (s - T::one()) - c)
}

/// Structure function in its factorised form,
/// `phi(n) = ((n + nu) / (n + nu - 1)) n (n + 2 nu - 1)`.
///
/// Algebraically identical to [`phi`]; kept as a separate code path so the
/// two can be compared.
pub fn phi_factorized<T: Real>(n: usize, nu: T) -> Result<T> {
    require_physical_nu(nu)?;
    Ok(phi_factorized_at(T::of_usize(n), nu))
}

/// Factorised structure function continued to a real level index, with no
/// branch guard. Used by the finite-representation analysis, which lives on
/// `nu < 0` where the physical-branch guard does not apply.
pub fn phi_factorized_at<T: Real>(n: T, nu: T) -> T {
    let s = n + nu;
    (s / (s - T::one())) * n * (n + T::two() * nu - T::one())
}

/// Ladder coefficient `kappa_n = sqrt(phi(n))`, evaluated in the product
/// form `sqrt((n + nu) / (n - 1 + nu)) sqrt(n (n + 2 nu - 1))` which keeps
/// every factor positive on the physical branch. `kappa_0 = 0`.
pub fn kappa<T: Real>(n: usize, nu: T) -> Result<T> {
    require_physical_nu(nu)?;
    if n == 0 {
        return Ok(T::zero());
    }
    let nf = T::of_usize(n);
    let ratio = (nf + nu) / (nf - T::one() + nu);
    Ok(ratio.sqrt() * (nf * (nf + T::two() * nu - T::one())).sqrt())
}

/// Commutator structure function `f(n) = 1 + 2 (n + nu)
/// + nu (nu - 1) / ((n + nu)(n + nu - 1))`, the diagonal of
/// `[a, a^dagger]`. Equals `phi(n + 1) - phi(n)` identically.
pub fn f_structure<T: Real>(n: usize, nu: T) -> Result<T> {
    require_physical_nu(nu)?;
    let s = T::of_usize(n) + nu;
    Ok(T::one() + T::two() * s + nu * (nu - T::one()) / (s * (s - T::one())))
}

/// Diagonal of the anticommutator `{a, a^dagger}`:
/// `1/2 - nu (nu - 1)(2 (n + nu)^2 - 1) / ((n + nu)(n + nu - 1))
///  + (2 (n + nu) + 1)^2 / 2`. Equals `phi(n + 1) + phi(n)` identically.
pub fn anticommutator_structure<T: Real>(n: usize, nu: T) -> Result<T> {
    require_physical_nu(nu)?;
    let s = T::of_usize(n) + nu;
    let c = nu * (nu - T::one());
    let odd = T::two() * s + T::one();
    Ok(T::half() - c * (T::two() * s * s - T::one()) / (s * (s - T::one()))
        + T::half() * odd * odd)
}

/// Ladder coefficients `kappa_1..kappa_n` and state normalisations
/// `N_0..N_n` for one value of `nu`.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderCoefficients<T> {
    pub nu: T,
    /// `kappa[n]` is the coefficient in `a |n> = kappa_n |n - 1>`; `kappa[0] = 0`.
    pub kappa: Vec<T>,
    /// `norm[n] = sqrt(nu Gamma(2 nu) / ((nu + n) n! Gamma(2 nu + n)))`,
    /// equal to `1 / (kappa_n ... kappa_1)`.
    pub norm: Vec<T>,
}

/// Tabulate ladder coefficients and normalisations up to level `n_max`.
///
/// The normalisation is evaluated through `log_gamma`, so it only fails when
/// the true value underflows to zero in the scalar type, which is reported
/// as a computation error.
pub fn ladder_coefficients<T: Real>(n_max: usize, nu: T) -> Result<LadderCoefficients<T>> {
    require_physical_nu(nu)?;
    let mut kap = Vec::with_capacity(n_max + 1);
    let mut norm = Vec::with_capacity(n_max + 1);
    let ln_head = nu.ln() + crate::specfun::log_gamma(T::two() * nu)?;
    for n in 0..=n_max {
        kap.push(kappa(n, nu)?);
        let nf = T::of_usize(n);
        let ln_norm = T::half()
            * (ln_head
                - (nu + nf).ln()
                - crate::specfun::log_gamma(nf + T::one())?
                - crate::specfun::log_gamma(T::two() * nu + nf)?);
        let value = ln_norm.exp();
        if value == T::zero() {
            return Err(Error::computation(format!(
                "state normalisation underflows to zero at level {n} for nu = {nu}"
            )));
        }
        norm.push(value);
    }
    Ok(LadderCoefficients {
        nu,
        kappa: kap,
        norm,
    })
}

/// Truncated matrix realisation of the operator set on the first `dim`
/// levels.
#[derive(Debug, Clone)]
pub struct OperatorSet<T> {
    pub dim: usize,
    /// Width of the central window on which residuals are measured.
    pub interior: usize,
    pub params: ModelParams1D<T>,
    /// Hamiltonian, diagonal on the level basis.
    pub h: CMatrix<T>,
    /// Position-like coordinate of the well, tridiagonal with zero diagonal.
    pub y: CMatrix<T>,
    /// Conjugate operator `k = i (H y - y H)`, Hermitian.
    pub k: CMatrix<T>,
    /// Lowering operator, `a[n, n+1] = kappa_{n+1}`.
    pub a: CMatrix<T>,
    /// Raising operator, adjoint of `a`.
    pub a_dag: CMatrix<T>,
    /// Number operator, `diag(0..dim)`.
    pub n_op: CMatrix<T>,
}

impl<T: Real> OperatorSet<T> {
    /// Bounds of the central residual window, `[lo, hi)`.
    pub fn window(&self) -> (usize, usize) {
        let lo = (self.dim - self.interior) / 2;
        (lo, lo + self.interior)
    }

    /// Diagonal matrix `func(E_n)` of a function of the Hamiltonian.
    fn diag_of_energy(&self, func: impl Fn(T) -> T) -> CMatrix<T> {
        let d: Vec<T> = (0..self.dim)
            .map(|n| func(energy_spt(n, &self.params)))
            .collect();
        CMatrix::from_real_diag(&d)
    }
}

/// Build the truncated operator set.
///
/// Requires `8 <= interior <= dim - 8`, so the residual window keeps a
/// margin of at least four rows on either side and never touches entries
/// polluted by truncation.
pub fn build_operator_set<T: Real>(
    dim: usize,
    interior: usize,
    params: &ModelParams1D<T>,
) -> Result<OperatorSet<T>> {
    if interior < 8 || interior + 8 > dim {
        return Err(Error::config(format!(
            "interior window {interior} must satisfy 8 <= interior <= dim - 8 (dim = {dim})"
        )));
    }
    let nu = params.nu;
    let h = CMatrix::from_real_diag(
        &(0..dim).map(|n| energy_spt(n, params)).collect::<Vec<_>>(),
    );
    let mut y = CMatrix::zeros(dim);
    for n in 0..dim - 1 {
        let nf = T::of_usize(n);
        let b = T::half()
            * ((nf + T::one()) * (nf + T::two() * nu)
                / ((nf + nu) * (nf + nu + T::one())))
            .sqrt();
        y[(n, n + 1)] = Complex::new(b, T::zero());
        y[(n + 1, n)] = Complex::new(b, T::zero());
    }
    let k = CMatrix::commutator(&h, &y).scale(Complex::new(T::zero(), T::one()));
    let mut a = CMatrix::zeros(dim);
    for n in 0..dim - 1 {
        a[(n, n + 1)] = Complex::new(kappa(n + 1, nu)?, T::zero());
    }
    let a_dag = a.adjoint();
    let n_op = CMatrix::from_real_diag(&(0..dim).map(T::of_usize).collect::<Vec<_>>());
    Ok(OperatorSet {
        dim,
        interior,
        params: *params,
        h,
        y,
        k,
        a,
        a_dag,
        n_op,
    })
}

/// Residuals of the operator identities, measured on the interior window.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraReport<T> {
    pub dim: usize,
    pub interior: usize,
    /// Identity name -> worst interior residual. All entries are expected to
    /// vanish to rounding.
    pub residuals: BTreeMap<String, T>,
    /// Informational entries that are *not* expected to vanish (residuals of
    /// rejected variant forms); never thresholded.
    pub diagnostics: BTreeMap<String, T>,
}

impl<T: Real> AlgebraReport<T> {
    pub fn max_residual(&self) -> T {
        self.residuals
            .values()
            .fold(T::zero(), |acc, &v| acc.max(v))
    }
}

/// Measure every operator identity of the 1D ladder set.
///
/// The entries of the returned map:
///
/// - `yk_commutator`: `[y, k] - i alpha^2 (1 - y^2)`
/// - `hy_commutator`: `[H, y] + i k`
/// - `hk_commutator`: `[H, k] - i alpha^2 (2 y H - (alpha^2/4) y - i k)`
/// - `ha_commutator_left`: `[H, a] + a (alpha sqrt(2H) - alpha^2/2)`
/// - `ha_commutator_right`: `[H, a] + (alpha sqrt(2H) + alpha^2/2) a`
/// - `aad_commutator`: `[a, a^dagger] - f(N)`
/// - `anticommutator`: `{a, a^dagger} - (phi(N+1) + phi(N))`
/// - `number_diagonal`: `a^dagger a - phi(N)`
/// - `ladder_a_reconstruction`: `a - (y (alpha sqrt(2H) + alpha^2/2) + i k) / alpha^2`
/// - `ladder_adag_reconstruction`: adjoint counterpart
/// - `h_from_number`: `H - (alpha^2/2)(N + nu)^2`
/// - `casimir_k`: su(1,1) Casimir `K_0^2 - (K_+ K_- + K_- K_+)/2 - nu(nu-1)`
pub fn check_algebra<T: Real>(ops: &OperatorSet<T>) -> Result<AlgebraReport<T>> {
    let p = &ops.params;
    let nu = p.nu;
    let alpha = p.alpha;
    let a2 = alpha * alpha;
    let dim = ops.dim;
    let (lo, hi) = ops.window();
    let i_unit = Complex::new(T::zero(), T::one());
    let mut residuals = BTreeMap::new();

    // (i) [y, k] = i alpha^2 (1 - y^2)
    let y2 = ops.y.mul(&ops.y);
    let rhs = CMatrix::identity(dim).sub(&y2).scale(i_unit.scale(a2));
    let r = CMatrix::commutator(&ops.y, &ops.k).sub(&rhs);
    residuals.insert("yk_commutator".into(), r.max_abs_window(lo, hi));

    // (ii) [H, y] = -i k
    let r = CMatrix::commutator(&ops.h, &ops.y).add(&ops.k.scale(i_unit));
    residuals.insert("hy_commutator".into(), r.max_abs_window(lo, hi));

    // (iii) [H, k] = i alpha^2 (2 y H - (alpha^2/4) y - i k)
    let rhs = ops
        .y
        .mul(&ops.h)
        .scale_real(T::two())
        .sub(&ops.y.scale_real(a2 * T::of(0.25)))
        .sub(&ops.k.scale(i_unit))
        .scale(i_unit.scale(a2));
    let r = CMatrix::commutator(&ops.h, &ops.k).sub(&rhs);
    residuals.insert("hk_commutator".into(), r.max_abs_window(lo, hi));

    // (iv) [H, a] = -a (alpha sqrt(2H) - alpha^2/2) = -(alpha sqrt(2H) + alpha^2/2) a
    let g_minus = ops.diag_of_energy(|e| alpha * (T::two() * e).sqrt() - a2 * T::half());
    let g_plus = ops.diag_of_energy(|e| alpha * (T::two() * e).sqrt() + a2 * T::half());
    let ha = CMatrix::commutator(&ops.h, &ops.a);
    let r = ha.add(&ops.a.mul(&g_minus));
    residuals.insert("ha_commutator_left".into(), r.max_abs_window(lo, hi));
    let r = ha.add(&g_plus.mul(&ops.a));
    residuals.insert("ha_commutator_right".into(), r.max_abs_window(lo, hi));

    // (v) [a, a^dagger] = f(N), plus the anticommutator and the diagonal
    // product, all expressed through the structure function.
    let f_diag: Vec<T> = (0..dim).map(|n| f_structure(n, nu)).collect::<Result<_>>()?;
    let r = CMatrix::commutator(&ops.a, &ops.a_dag).sub(&CMatrix::from_real_diag(&f_diag));
    residuals.insert("aad_commutator".into(), r.max_abs_window(lo, hi));

    let anti_diag: Vec<T> = (0..dim)
        .map(|n| anticommutator_structure(n, nu))
        .collect::<Result<_>>()?;
    let r = CMatrix::anticommutator(&ops.a, &ops.a_dag)
        .sub(&CMatrix::from_real_diag(&anti_diag));
    residuals.insert("anticommutator".into(), r.max_abs_window(lo, hi));

    let phi_diag: Vec<T> = (0..dim).map(|n| phi(n, nu)).collect::<Result<_>>()?;
    let r = ops
        .a_dag
        .mul(&ops.a)
        .sub(&CMatrix::from_real_diag(&phi_diag));
    residuals.insert("number_diagonal".into(), r.max_abs_window(lo, hi));

    // (vi) a = (y (alpha sqrt(2H) + alpha^2/2) + i k) / alpha^2 and adjoint.
    let ik = ops.k.scale(i_unit);
    let r = ops
        .y
        .mul(&g_plus)
        .add(&ik)
        .scale_real(T::one() / a2)
        .sub(&ops.a);
    residuals.insert("ladder_a_reconstruction".into(), r.max_abs_window(lo, hi));
    let r = g_plus
        .mul(&ops.y)
        .sub(&ik)
        .scale_real(T::one() / a2)
        .sub(&ops.a_dag);
    residuals.insert(
        "ladder_adag_reconstruction".into(),
        r.max_abs_window(lo, hi),
    );

    // H rebuilt from the number operator.
    let h_n = ops.diag_of_energy(|e| e);
    let n_diag: Vec<T> = (0..dim)
        .map(|n| {
            let s = T::of_usize(n) + nu;
            a2 * T::half() * s * s
        })
        .collect();
    let r = h_n.sub(&CMatrix::from_real_diag(&n_diag));
    residuals.insert("h_from_number".into(), r.max_abs_window(lo, hi));

    // su(1,1) Casimir through the K generators.
    let mut k_plus = CMatrix::zeros(dim);
    for n in 0..dim - 1 {
        let nf = T::of_usize(n);
        k_plus[(n + 1, n)] = Complex::new(
            ((nf + T::one()) * (nf + T::two() * nu)).sqrt(),
            T::zero(),
        );
    }
    let k_minus = k_plus.adjoint();
    let k0 = CMatrix::from_real_diag(&(0..dim).map(|n| T::of_usize(n) + nu).collect::<Vec<_>>());
    let casimir = k0
        .mul(&k0)
        .sub(&CMatrix::anticommutator(&k_plus, &k_minus).scale_real(T::half()));
    let r = casimir.sub(&CMatrix::identity(dim).scale_real(nu * (nu - T::one())));
    residuals.insert("casimir_k".into(), r.max_abs_window(lo, hi));

    Ok(AlgebraReport {
        dim,
        interior: ops.interior,
        residuals,
        diagnostics: BTreeMap::new(),
    })
}

/// The three roots of the consistency cubic for the number-operator offset
/// `c` in `N = sqrt(2 H) / alpha - c`, and which one survives.
#[derive(Debug, Clone, PartialEq)]
pub struct NumberOperatorMap<T> {
    /// Roots `{0, nu, 1 - nu}` of the cubic.
    pub candidates: [T; 3],
    /// The physical choice, `c = nu`.
    pub selected: T,
    /// Why `c = 0` is excluded.
    pub rejection_c0: &'static str,
}

/// Classify the number-operator offset candidates for a given `nu`.
///
/// `c = 0` makes the structure function of the first excited state diverge
/// (its defining form has a pole at `n + c - 1 = 0` with `n = 1`), and
/// `c = 1 - nu` is negative on the physical branch; `c = nu` remains.
pub fn number_operator_map<T: Real>(nu: T) -> Result<NumberOperatorMap<T>> {
    require_physical_nu(nu)?;
    Ok(NumberOperatorMap {
        candidates: [T::zero(), nu, T::one() - nu],
        selected: nu,
        rejection_c0: "offset 0 puts a pole of the structure function at the first excited state",
    })
}

impl<T: Real> NumberOperatorMap<T> {
    /// Worst relative deviation of `(alpha^2 / 2)(n + c)^2` from the well
    /// levels over `0..=n_max`, with the selected offset.
    pub fn spectrum_residual(&self, p: &ModelParams1D<T>, n_max: usize) -> T {
        let mut worst = T::zero();
        for n in 0..=n_max {
            let s = T::of_usize(n) + self.selected;
            let e = p.alpha * p.alpha * T::half() * s * s;
            let want = energy_spt(n, p);
            worst = worst.max(((e - want) / want).abs());
        }
        worst
    }
}

/// Deviations of the two coefficient maps and the su(1,1) Casimir.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoseMapReport<T> {
    pub n_max: usize,
    pub nu: T,
    /// Relative deviation of `b^dagger sqrt(phi(N + 1) / (N + 1))` entries
    /// from `kappa`.
    pub bose_route: T,
    /// Relative deviation of `K_+ sqrt((N + nu + 1) / (N + nu))` entries
    /// from `kappa`.
    pub k_raising_route: T,
    /// Relative deviation of `K_- sqrt((N + nu) / (N + nu - 1))` entries
    /// from `kappa`.
    pub k_lowering_route: T,
    /// Absolute deviation of `K_0^2 - (K_+ K_- + K_- K_+) / 2` from
    /// `nu (nu - 1)`.
    pub casimir: T,
}

/// Check the maps from ordinary bosons and su(1,1) generators onto the
/// deformed ladder coefficients, entry by entry up to level `n_max`.
pub fn bose_map_check<T: Real>(n_max: usize, nu: T) -> Result<BoseMapReport<T>> {
    require_physical_nu(nu)?;
    let mut bose = T::zero();
    let mut k_raise = T::zero();
    let mut k_lower = T::zero();
    let mut casimir = T::zero();
    for n in 0..=n_max {
        let nf = T::of_usize(n);
        let target = kappa(n + 1, nu)?;
        // Bose route: entry sqrt(n + 1) sqrt(phi(n + 1) / (n + 1)).
        let got = (nf + T::one()).sqrt() * (phi(n + 1, nu)? / (nf + T::one())).sqrt();
        bose = bose.max(((got - target) / target).abs());
        // Raising route through K_+, diagonal factor evaluated at N = n.
        let e_plus = ((nf + T::one()) * (nf + T::two() * nu)).sqrt();
        let got = e_plus * ((nf + nu + T::one()) / (nf + nu)).sqrt();
        k_raise = k_raise.max(((got - target) / target).abs());
        // Lowering route through K_-, diagonal factor evaluated at N = n + 1.
        let m = nf + T::one();
        let got = e_plus * ((m + nu) / (m + nu - T::one())).sqrt();
        k_lower = k_lower.max(((got - target) / target).abs());
        // Casimir on the diagonal: K_-K_+ contributes (n+1)(n+2nu) and
        // K_+K_- contributes n(n+2nu-1).
        let k0 = nf + nu;
        let c = k0 * k0
            - T::half() * ((nf + T::one()) * (nf + T::two() * nu) + nf * (nf + T::two() * nu - T::one()));
        casimir = casimir.max((c - nu * (nu - T::one())).abs());
    }
    Ok(BoseMapReport {
        n_max,
        nu,
        bose_route: bose,
        k_raising_route: k_raise,
        k_lowering_route: k_lower,
        casimir,
    })
}

/// A finite-dimensional closure of the ladder on the unphysical branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiniteRep<T> {
    /// Dimension of the closed representation.
    pub k: usize,
    /// Depth index `(1 - k) / 2` on the negative branch.
    pub nu: T,
    /// Deformation `beta = 2 / (omega sqrt(k^2 - 1))` realising that branch.
    pub beta: T,
    /// `|phi(k)|` on the continued structure function; zero means the ladder
    /// closes after `k` rungs.
    pub phi_residual: T,
    /// Always false: these representations require `nu < 0`.
    pub physical_branch: bool,
}

/// Parameters of the `k`-dimensional representation, `k >= 2`.
pub fn finite_rep_condition<T: Real>(k: usize, omega: T) -> Result<FiniteRep<T>> {
    if k < 2 {
        return Err(Error::domain(format!(
            "finite representations need dimension k >= 2, got {k}"
        )));
    }
    if !(omega > T::zero()) || !omega.is_finite() {
        return Err(Error::domain(format!("omega must be positive, got {omega}")));
    }
    let kf = T::of_usize(k);
    let nu = (T::one() - kf) * T::half();
    let beta = T::two() / (omega * (kf * kf - T::one()).sqrt());
    let phi_residual = phi_factorized_at(kf, nu).abs();
    Ok(FiniteRep {
        k,
        nu,
        beta,
        phi_residual,
        physical_branch: false,
    })
}

/// Parity sector of a level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Parity of level `n` together with the Bargmann index of the su(1,1)
/// irreducible representation it belongs to: `1/4` for even, `3/4` for odd.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParityClass<T> {
    pub parity: Parity,
    pub bargmann_index: T,
}

pub fn parity_classification<T: Real>(n: usize) -> ParityClass<T> {
    if n % 2 == 0 {
        ParityClass {
            parity: Parity::Even,
            bargmann_index: T::of(0.25),
        }
    } else {
        ParityClass {
            parity: Parity::Odd,
            bargmann_index: T::of(0.75),
        }
    }
}
