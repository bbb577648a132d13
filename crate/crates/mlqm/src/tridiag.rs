//! Symmetric tridiagonal eigenproblems.
//!
//! Eigenvalues come from Sturm-sequence bisection, eigenvectors from inverse
//! iteration with a pivoted tridiagonal solve. Both are fully deterministic:
//! fixed iteration counts, no randomness, no data-dependent branching beyond
//! pivot selection, so repeated runs on the same platform agree to the last
//! bit. That property is relied on by the verification tooling.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Symmetric tridiagonal matrix: `diag` of length `n`, `off` of length
/// `n - 1` holding the sub/superdiagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiag<T> {
    pub diag: Vec<T>,
    pub off: Vec<T>,
}

impl<T: Real> SymTridiag<T> {
    pub fn new(diag: Vec<T>, off: Vec<T>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::config("tridiagonal matrix must have dimension >= 1"));
        }
        if off.len() + 1 != diag.len() {
            return Err(Error::config(format!(
                "off-diagonal length {} does not match dimension {}",
                off.len(),
                diag.len()
            )));
        }
        Ok(SymTridiag { diag, off })
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    /// Interval certain to contain the whole spectrum (Gershgorin).
    fn spectrum_bounds(&self) -> (T, T) {
        let n = self.n();
        let mut lo = T::infinity();
        let mut hi = T::neg_infinity();
        for i in 0..n {
            let mut r = T::zero();
            if i > 0 {
                r += self.off[i - 1].abs();
            }
            if i + 1 < n {
                r += self.off[i].abs();
            }
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `x`, by counting negative pivots
    /// of the LDL^T factorisation of `A - x I`. Zero pivots are clamped to a
    /// tiny negative value, which at worst shifts an exact tie into the
    /// count; bisection is insensitive to that.
    fn count_below(&self, x: T) -> usize {
        let floor = T::min_positive_value();
        let n = self.n();
        let mut d = self.diag[0] - x;
        if d.abs() < floor {
            d = -floor;
        }
        let mut count = usize::from(d < T::zero());
        for i in 1..n {
            d = self.diag[i] - x - self.off[i - 1] * self.off[i - 1] / d;
            if d.abs() < floor {
                d = -floor;
            }
            if d < T::zero() {
                count += 1;
            }
        }
        count
    }

    /// `k`-th smallest eigenvalue (0-indexed), to near machine precision.
    pub fn eigenvalue(&self, k: usize) -> Result<T> {
        let n = self.n();
        if k >= n {
            return Err(Error::config(format!(
                "eigenvalue index {k} out of range for dimension {n}"
            )));
        }
        if n == 1 {
            return Ok(self.diag[0]);
        }
        let (mut lo, mut hi) = self.spectrum_bounds();
        let scale = lo.abs().max(hi.abs()).max(T::one());
        let tol = T::epsilon() * scale * T::two();
        for _ in 0..256 {
            if hi - lo <= tol {
                break;
            }
            let mid = lo + (hi - lo) * T::half();
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(lo + (hi - lo) * T::half())
    }

    /// The `k` smallest eigenvalues in ascending order.
    pub fn eigenvalues_lowest(&self, k: usize) -> Result<Vec<T>> {
        if k > self.n() {
            return Err(Error::config(format!(
                "requested {k} eigenvalues from a dimension-{} matrix",
                self.n()
            )));
        }
        (0..k).map(|i| self.eigenvalue(i)).collect()
    }

    /// All eigenvalues in ascending order.
    pub fn eigenvalues_all(&self) -> Result<Vec<T>> {
        self.eigenvalues_lowest(self.n())
    }

    /// Unit-norm eigenvector for an eigenvalue `lambda` obtained from
    /// [`Self::eigenvalue`]. Inverse iteration with a fixed number of sweeps;
    /// the sign is fixed by making the largest-magnitude component positive.
    pub fn eigenvector(&self, lambda: T) -> Result<Vec<T>> {
        let n = self.n();
        if n == 1 {
            return Ok(vec![T::one()]);
        }
        let (lo, hi) = self.spectrum_bounds();
        let scale = lo.abs().max(hi.abs()).max(T::one());
        // Nudge off the exact eigenvalue so the shifted solve stays finite
        // while remaining overwhelmingly dominated by the target mode.
        let shifted = lambda + scale * T::epsilon() * T::of(16.0);
        let mut v = vec![T::one() / T::of_usize(n).sqrt(); n];
        for _ in 0..3 {
            self.solve_shifted(shifted, &mut v);
            let norm = v.iter().map(|&x| x * x).sum::<T>().sqrt();
            if !norm.is_finite() || norm == T::zero() {
                return Err(Error::computation(format!(
                    "inverse iteration broke down at eigenvalue {lambda}"
                )));
            }
            for x in v.iter_mut() {
                *x /= norm;
            }
        }
        let mut imax = 0;
        for i in 1..n {
            if v[i].abs() > v[imax].abs() {
                imax = i;
            }
        }
        if v[imax] < T::zero() {
            for x in v.iter_mut() {
                *x = -*x;
            }
        }
        Ok(v)
    }

    /// In-place solve of `(A - shift I) x = b` by Gaussian elimination with
    /// adjacent-row pivoting (one extra superdiagonal of fill-in).
    fn solve_shifted(&self, shift: T, b: &mut [T]) {
        let n = self.n();
        let floor = T::min_positive_value();
        let mut d: Vec<T> = self.diag.iter().map(|&x| x - shift).collect();
        let mut e: Vec<T> = self.off.clone();
        let mut f = vec![T::zero(); n.saturating_sub(2)];
        for i in 0..n - 1 {
            let sub = self.off[i];
            if d[i].abs() >= sub.abs() {
                let piv = if d[i].abs() < floor {
                    floor.copysign(d[i])
                } else {
                    d[i]
                };
                d[i] = piv;
                let m = sub / piv;
                d[i + 1] = d[i + 1] - m * e[i];
                b[i + 1] = b[i + 1] - m * b[i];
            } else {
                // Swap rows i and i+1, then eliminate.
                let m = d[i] / sub;
                let di1 = d[i + 1];
                d[i] = sub;
                d[i + 1] = e[i] - m * di1;
                e[i] = di1;
                if i + 2 < n {
                    f[i] = e[i + 1];
                    e[i + 1] = -m * f[i];
                }
                b.swap(i, i + 1);
                b[i + 1] = b[i + 1] - m * b[i];
            }
        }
        if d[n - 1].abs() < floor {
            d[n - 1] = floor.copysign(d[n - 1]);
        }
        b[n - 1] = b[n - 1] / d[n - 1];
        if n >= 2 {
            b[n - 2] = (b[n - 2] - e[n - 2] * b[n - 1]) / d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - e[i] * b[i + 1] - f[i] * b[i + 2]) / d[i];
        }
    }

    /// Residual `max_i |(A v)_i - lambda v_i|`, for diagnostics and tests.
    pub fn residual(&self, lambda: T, v: &[T]) -> T {
        let n = self.n();
        let mut worst = T::zero();
        for i in 0..n {
            let mut av = self.diag[i] * v[i];
            if i > 0 {
                av += self.off[i - 1] * v[i - 1];
            }
            if i + 1 < n {
                av += self.off[i] * v[i + 1];
            }
            worst = worst.max((av - lambda * v[i]).abs());
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn laplacian3() -> SymTridiag<f64> {
        SymTridiag::new(vec![2.0, 2.0, 2.0], vec![-1.0, -1.0]).unwrap()
    }

    #[test]
    fn eigenvalues_of_discrete_laplacian() {
        let m = laplacian3();
        let ev = m.eigenvalues_all().unwrap();
        let expect = [2.0 - std::f64::consts::SQRT_2, 2.0, 2.0 + std::f64::consts::SQRT_2];
        for (got, want) in ev.iter().zip(expect) {
            assert!((got - want).abs() < 1e-14, "{got} vs {want}");
        }
    }

    #[test]
    fn eigenvector_matches_known_mode() {
        let m = laplacian3();
        let lam = m.eigenvalue(1).unwrap();
        let v = m.eigenvector(lam).unwrap();
        // Middle eigenvalue 2 has mode (1, 0, -1)/sqrt(2) up to sign.
        let inv_sqrt2 = 1.0 / std::f64::consts::SQRT_2;
        assert!((v[0].abs() - inv_sqrt2).abs() < 1e-10);
        assert!(v[1].abs() < 1e-10);
        assert!(m.residual(lam, &v) < 1e-12);
    }

    #[test]
    fn chebyshev_jacobi_matrix_reproduces_nodes() {
        // Jacobi matrix of Chebyshev-T: zero diagonal, off = [1/sqrt(2), 1/2, ...].
        let n = 16usize;
        let mut off = vec![0.5; n - 1];
        off[0] = 0.5f64.sqrt();
        let m = SymTridiag::new(vec![0.0; n], off).unwrap();
        let ev = m.eigenvalues_all().unwrap();
        for (k, lam) in ev.iter().enumerate() {
            let i = n - k; // ascending eigenvalues against descending cosines
            let node = ((2 * i - 1) as f64 * std::f64::consts::PI / (2 * n) as f64).cos();
            assert!((lam - node).abs() < 1e-13, "node {k}: {lam} vs {node}");
        }
    }

    #[test]
    fn determinism_to_the_last_bit() {
        let m = laplacian3();
        let a = m.eigenvalues_all().unwrap();
        let b = m.eigenvalues_all().unwrap();
        assert_eq!(a, b);
        let va = m.eigenvector(a[0]).unwrap();
        let vb = m.eigenvector(b[0]).unwrap();
        assert_eq!(va, vb);
    }

    #[test]
    fn index_out_of_range_is_config_error() {
        let m = laplacian3();
        assert!(matches!(m.eigenvalue(3), Err(crate::Error::Config(_))));
    }
}
