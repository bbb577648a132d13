//! Special functions and quadrature used by the spectral solution.
//!
//! The eigenfunctions of the deformed oscillator are weighted Gegenbauer
//! polynomials, and the D-dimensional radial problem upgrades them to Jacobi
//! polynomials, so stable evaluation of both families plus `log_gamma` for
//! their normalisation constants is all the special-function machinery the
//! crate needs. Inner products are done with Gauss rules: Chebyshev
//! (first kind) where only the `1/sqrt(1-y^2)` factor matters, Gauss-Jacobi
//! where the full `(1-y)^a (1+y)^b` weight must be exact.

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tridiag::SymTridiag;

/// Lanczos approximation constants, g = 607/128 with 15 coefficients.
/// Relative error stays below 1e-13 over the positive reals used here.
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS_COEFF: [f64; 15] = [
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
];

/// Natural log of the Gamma function for positive argument.
///
/// Lanczos with `g = 607/128`; relative accuracy is better than `1e-12`
/// across `(0, 1e3]` and degrades only slowly beyond.
pub fn log_gamma<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::domain(format!(
            "log_gamma requires a positive finite argument, got {x}"
        )));
    }
    let g = T::of(LANCZOS_G);
    let mut s = T::of(LANCZOS_COEFF[0]);
    for (k, &c) in LANCZOS_COEFF.iter().enumerate().skip(1) {
        s += T::of(c) / (x + T::of_usize(k - 1));
    }
    let t = x + g - T::half();
    let half_ln_2pi = T::half() * (T::two() * T::PI()).ln();
    Ok((x - T::half()) * t.ln() - t + half_ln_2pi + s.ln())
}

/// Gegenbauer polynomial `C_n^nu(y)` by the forward three-term recurrence.
///
/// Base cases are exact: `C_0 = 1`, `C_1 = 2 nu y`. Requires `nu > 0`.
pub fn gegenbauer<T: Real>(n: usize, nu: T, y: T) -> Result<T> {
    if !(nu > T::zero()) {
        return Err(Error::domain(format!(
            "gegenbauer order parameter nu must be positive, got {nu}"
        )));
    }
    if n == 0 {
        return Ok(T::one());
    }
    let mut prev = T::one();
    let mut cur = T::two() * nu * y;
    for k in 2..=n {
        let kf = T::of_usize(k);
        let next =
            (T::two() * (kf + nu - T::one()) * y * cur - (kf + T::two() * nu - T::two()) * prev)
                / kf;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Jacobi polynomial `P_n^(a,b)(y)` by the forward three-term recurrence.
///
/// Base cases are exact: `P_0 = 1`, `P_1 = ((a + b + 2) y + a - b) / 2`.
/// Requires `a > -1` and `b > -1`.
pub fn jacobi<T: Real>(n: usize, a: T, b: T, y: T) -> Result<T> {
    if !(a > -T::one()) || !(b > -T::one()) {
        return Err(Error::domain(format!(
            "jacobi exponents must exceed -1, got a = {a}, b = {b}"
        )));
    }
    if n == 0 {
        return Ok(T::one());
    }
    let mut prev = T::one();
    let mut cur = ((a + b + T::two()) * y + a - b) * T::half();
    for k in 1..n {
        let kf = T::of_usize(k);
        let ab = a + b;
        let c1 = T::two() * (kf + T::one()) * (kf + ab + T::one()) * (T::two() * kf + ab);
        let c2 = (T::two() * kf + ab + T::one())
            * ((T::two() * kf + ab + T::two()) * (T::two() * kf + ab) * y + a * a - b * b);
        let c3 = T::two() * (kf + a) * (kf + b) * (T::two() * kf + ab + T::two());
        let next = (c2 * cur - c3 * prev) / c1;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Which weight a [`QuadratureRule`] integrates against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadKind {
    /// Weight `1/sqrt(1 - y^2)` on `(-1, 1)`.
    ChebyshevFirstKind,
    /// Weight `(1 - y)^a (1 + y)^b` on `(-1, 1)`.
    JacobiWeighted,
}

/// Nodes and weights of a Gauss rule on `(-1, 1)`.
///
/// Invariants: nodes strictly increasing, weights strictly positive.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
    pub kind: QuadKind,
}

impl<T: Real> QuadratureRule<T> {
    /// Apply the rule to samples of a function at the nodes.
    pub fn integrate(&self, f: impl Fn(T) -> T) -> T {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Gauss-Chebyshev rule of the first kind with `n` points: nodes
/// `cos((2i - 1) pi / 2n)` in increasing order, uniform weights `pi / n`.
pub fn chebyshev_rule<T: Real>(n: usize) -> Result<QuadratureRule<T>> {
    if n == 0 {
        return Err(Error::config("quadrature size must be at least 1"));
    }
    let w = T::PI() / T::of_usize(n);
    let mut nodes = Vec::with_capacity(n);
    for i in (1..=n).rev() {
        let theta = T::of_usize(2 * i - 1) * T::PI() / T::of_usize(2 * n);
        nodes.push(theta.cos());
    }
    Ok(QuadratureRule {
        nodes,
        weights: vec![w; n],
        kind: QuadKind::ChebyshevFirstKind,
    })
}

/// Recurrence coefficients of the orthonormal Jacobi polynomials for weight
/// `(1 - y)^a (1 + y)^b`: the symmetric tridiagonal (Jacobi) matrix whose
/// eigenvalues are the Gauss nodes. Returns `(diag, off)` with `diag` of
/// length `n` and `off` of length `n - 1`.
pub fn jacobi_matrix<T: Real>(n: usize, a: T, b: T) -> Result<(Vec<T>, Vec<T>)> {
    if !(a > -T::one()) || !(b > -T::one()) {
        return Err(Error::domain(format!(
            "jacobi weight exponents must exceed -1, got a = {a}, b = {b}"
        )));
    }
    if n == 0 {
        return Err(Error::config("jacobi matrix must have dimension >= 1"));
    }
    let ab = a + b;
    let mut diag = Vec::with_capacity(n);
    diag.push((b - a) / (ab + T::two()));
    for k in 1..n {
        let tk = T::two() * T::of_usize(k);
        diag.push((b * b - a * a) / ((tk + ab) * (tk + ab + T::two())));
    }
    let mut off = Vec::with_capacity(n.saturating_sub(1));
    for k in 1..n {
        let kf = T::of_usize(k);
        let tk = T::two() * kf;
        let num = T::of(4.0) * kf * (kf + a) * (kf + b) * (kf + ab);
        let den = (tk + ab) * (tk + ab) * (tk + ab + T::one()) * (tk + ab - T::one());
        off.push((num / den).sqrt());
    }
    Ok((diag, off))
}

/// Total mass of the Jacobi weight, `int_{-1}^{1} (1-y)^a (1+y)^b dy`.
fn jacobi_weight_mass<T: Real>(a: T, b: T) -> Result<T> {
    let ln = (a + b + T::one()) * T::two().ln() + log_gamma(a + T::one())?
        + log_gamma(b + T::one())?
        - log_gamma(a + b + T::two())?;
    Ok(ln.exp())
}

/// Gauss-Jacobi rule with `n` points for weight `(1 - y)^a (1 + y)^b`.
///
/// Nodes are the eigenvalues of the Jacobi matrix (Golub-Welsch); weights
/// come from the Christoffel function, `w_i = 1 / sum_k ptilde_k(x_i)^2`
/// over the orthonormal polynomials up to degree `n - 1`.
pub fn jacobi_rule<T: Real>(n: usize, a: T, b: T) -> Result<QuadratureRule<T>> {
    let (diag, off) = jacobi_matrix(n, a, b)?;
    let mass = jacobi_weight_mass(a, b)?;
    if n == 1 {
        return Ok(QuadratureRule {
            nodes: diag,
            weights: vec![mass],
            kind: QuadKind::JacobiWeighted,
        });
    }
    let m = SymTridiag::new(diag.clone(), off.clone())?;
    let nodes = m.eigenvalues_all()?;
    let mut weights = Vec::with_capacity(n);
    for &x in &nodes {
        let mut p_prev = T::zero();
        let mut p = T::one() / mass.sqrt();
        let mut s = p * p;
        for k in 0..n - 1 {
            let prev_off = if k > 0 { off[k - 1] } else { T::zero() };
            let p_next = ((x - diag[k]) * p - prev_off * p_prev) / off[k];
            p_prev = p;
            p = p_next;
            s += p * p;
        }
        weights.push(T::one() / s);
    }
    Ok(QuadratureRule {
        nodes,
        weights,
        kind: QuadKind::JacobiWeighted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_gamma_known_values() {
        // Gamma(1/2) = sqrt(pi); integers hit factorials exactly.
        let half = log_gamma(0.5f64).unwrap();
        assert!((half - 0.5 * std::f64::consts::PI.ln()).abs() < 1e-14);
        assert!(log_gamma(1.0f64).unwrap().abs() < 1e-14);
        assert!((log_gamma(6.0f64).unwrap() - 120.0f64.ln()).abs() < 1e-13);
        let x = 5.524937810560445f64;
        assert!((log_gamma(x).unwrap() - 3.9980529861815697).abs() < 1e-12);
        // Large and small ends of the stated accuracy window.
        assert!((log_gamma(777.25f64).unwrap() / 4393.5322172620718 - 1.0).abs() < 1e-12);
        assert!((log_gamma(1e-3f64).unwrap() / 6.9071788853838534 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn log_gamma_rejects_nonpositive() {
        assert!(matches!(log_gamma(0.0f64), Err(crate::Error::Domain(_))));
        assert!(matches!(log_gamma(-3.2f64), Err(crate::Error::Domain(_))));
    }

    #[test]
    fn gegenbauer_matches_closed_forms() {
        // C_2^nu(y) = 2 nu (nu + 1) y^2 - nu and a frozen higher-order value.
        assert_eq!(gegenbauer(0, 1.5f64, 0.9).unwrap(), 1.0);
        assert!((gegenbauer(1, 1.5f64, 0.9).unwrap() - 2.7).abs() < 1e-15);
        assert!((gegenbauer(2, 2.0f64, 0.5).unwrap() - 1.0).abs() < 1e-14);
        assert!((gegenbauer(3, 1.5f64, 0.3).unwrap() + 1.7775).abs() < 1e-14);
        assert!((gegenbauer(5, 0.7f64, -0.2).unwrap() + 0.52056152064).abs() < 1e-14);
        assert!(matches!(
            gegenbauer(2, 0.0f64, 0.5),
            Err(crate::Error::Domain(_))
        ));
    }

    #[test]
    fn jacobi_matches_closed_forms() {
        assert_eq!(jacobi(0, 2.5f64, 1.5, 0.3).unwrap(), 1.0);
        // P_1 = ((a + b + 2) y + a - b) / 2.
        assert!((jacobi(1, 2.5f64, 1.5, 0.3).unwrap() - 1.4).abs() < 1e-15);
        assert!((jacobi(2, 2.5f64, 1.5, 0.3).unwrap() - 0.28).abs() < 1e-14);
        assert!((jacobi(4, 0.3f64, -0.4, 0.1).unwrap() - 0.20710084273437512).abs() < 1e-14);
        assert!(matches!(
            jacobi(2, -1.0f64, 0.0, 0.1),
            Err(crate::Error::Domain(_))
        ));
    }

    #[test]
    fn gegenbauer_reduces_to_jacobi() {
        // C_n^nu proportional to P_n^(nu-1/2, nu-1/2) with a Gamma-ratio factor.
        let nu = 1.75f64;
        let n = 6usize;
        let y = 0.37f64;
        let ln_scale = log_gamma(nu + 0.5).unwrap() + log_gamma(n as f64 + 2.0 * nu).unwrap()
            - log_gamma(2.0 * nu).unwrap()
            - log_gamma(n as f64 + nu + 0.5).unwrap();
        let expect = jacobi(n, nu - 0.5, nu - 0.5, y).unwrap() * ln_scale.exp();
        let got = gegenbauer(n, nu, y).unwrap();
        assert!((got - expect).abs() < 1e-13 * expect.abs());
    }

    #[test]
    fn chebyshev_rule_nodes_and_exactness() {
        let rule = chebyshev_rule::<f64>(4).unwrap();
        assert_eq!(rule.kind, QuadKind::ChebyshevFirstKind);
        assert!(rule.nodes.windows(2).all(|w| w[0] < w[1]));
        assert!((rule.nodes[3] - (std::f64::consts::PI / 8.0).cos()).abs() < 1e-15);
        assert!(rule.weights.iter().all(|&w| w == std::f64::consts::PI / 4.0));
        // int y^2 / sqrt(1 - y^2) dy = pi / 2, exact for any n >= 2.
        let got = rule.integrate(|y| y * y);
        assert!((got - std::f64::consts::PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn jacobi_rule_matches_reference_and_mass() {
        let rule = jacobi_rule::<f64>(5, 1.0249378, 0.7).unwrap();
        assert_eq!(rule.kind, QuadKind::JacobiWeighted);
        assert!(rule.nodes.windows(2).all(|w| w[0] < w[1]));
        assert!(rule.weights.iter().all(|&w| w > 0.0));
        assert!((rule.nodes[0] + 0.85805635326005558).abs() < 1e-13);
        assert!((rule.weights[0] - 0.12350334106980081).abs() < 1e-13);
        assert!((rule.nodes[4] - 0.82051558043584161).abs() < 1e-13);
        assert!((rule.weights[4] - 0.075830278524996866).abs() < 1e-13);
        // Total mass equals the Beta-function value of the weight integral.
        let mass: f64 = rule.weights.iter().sum();
        assert!((mass - jacobi_weight_mass(1.0249378f64, 0.7).unwrap()).abs() < 1e-13);
    }

    #[test]
    fn jacobi_rule_orthogonality_of_gegenbauer() {
        // With weight exponents nu - 1/2 the rule integrates C_m C_n exactly;
        // off-diagonal entries vanish and the diagonal matches the known norm.
        let nu = 1.618f64;
        let rule = jacobi_rule::<f64>(12, nu - 0.5, nu - 0.5).unwrap();
        for m in 0..6usize {
            for n in 0..6usize {
                let got = rule.integrate(|y| {
                    gegenbauer(m, nu, y).unwrap() * gegenbauer(n, nu, y).unwrap()
                });
                if m != n {
                    assert!(got.abs() < 1e-13, "C_{m} C_{n}: {got}");
                } else {
                    let ln_h = std::f64::consts::PI.ln() + (1.0 - 2.0 * nu) * 2.0f64.ln()
                        + log_gamma(n as f64 + 2.0 * nu).unwrap()
                        - log_gamma(n as f64 + 1.0).unwrap()
                        - (n as f64 + nu).ln()
                        - 2.0 * log_gamma(nu).unwrap();
                    let h = ln_h.exp();
                    assert!((got - h).abs() < 1e-12 * h, "norm C_{n}: {got} vs {h}");
                }
            }
        }
    }

    #[test]
    fn chebyshev_rule_orthogonality_with_smooth_weight_factor() {
        // The same orthogonality integral through the Chebyshev rule needs the
        // residual smooth factor (1 - y^2)^nu in the integrand and converges
        // only algebraically; a large rule gets it to modest accuracy.
        let nu = 1.5f64;
        let rule = chebyshev_rule::<f64>(4000).unwrap();
        let got = rule.integrate(|y| {
            gegenbauer(1, nu, y).unwrap() * gegenbauer(3, nu, y).unwrap()
                * (1.0 - y * y).powf(nu)
        });
        assert!(got.abs() < 1e-8, "off-diagonal leakage {got}");
    }

    #[test]
    fn f32_instantiation_smoke() {
        assert!((gegenbauer(3, 1.5f32, 0.3).unwrap() + 1.7775).abs() < 1e-5);
        assert!((log_gamma(6.0f32).unwrap() - 120.0f32.ln()).abs() < 1e-4);
        let rule = jacobi_rule::<f32>(4, 0.5, 0.5).unwrap();
        let mass: f32 = rule.weights.iter().sum();
        assert!((mass - std::f32::consts::PI / 2.0).abs() < 1e-5);
    }
}
