//! Minimal dense complex linear algebra for truncated operator realisations.
//!
//! Everything the ladder-algebra checks need is a square complex matrix with
//! products, commutators, adjoints, and entrywise maxima over an interior
//! window (truncation pollutes the last rows and columns, so residuals are
//! always measured away from the edge). Dimensions stay in the hundreds, so
//! the naive O(n^3) product is plenty.

use num_complex::Complex;

use crate::scalar::Real;

/// Square, row-major, complex dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<T> {
    n: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        CMatrix {
            n,
            data: vec![Complex::new(T::zero(), T::zero()); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex::new(T::one(), T::zero());
        }
        m
    }

    /// Diagonal matrix from real entries.
    pub fn from_real_diag(d: &[T]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = Complex::new(x, T::zero());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] = out.data[i * n + j] + a * rhs.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&rhs.data) {
            *x = *x + *y;
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&rhs.data) {
            *x = *x - *y;
        }
        out
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x = *x * c;
        }
        out
    }

    pub fn scale_real(&self, c: T) -> Self {
        self.scale(Complex::new(c, T::zero()))
    }

    /// `A B - B A`.
    pub fn commutator(a: &Self, b: &Self) -> Self {
        a.mul(b).sub(&b.mul(a))
    }

    /// `A B + B A`.
    pub fn anticommutator(a: &Self, b: &Self) -> Self {
        a.mul(b).add(&b.mul(a))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        out
    }

    /// Largest entry magnitude over the whole matrix.
    pub fn max_abs(&self) -> T {
        self.max_abs_window(0, self.n)
    }

    /// Largest entry magnitude over rows and columns in `[lo, hi)`.
    ///
    /// `|z|` is evaluated as `hypot(re, im)`, safe against overflow.
    pub fn max_abs_window(&self, lo: usize, hi: usize) -> T {
        let mut worst = T::zero();
        for i in lo..hi {
            for j in lo..hi {
                let z = self.data[i * self.n + j];
                worst = worst.max(z.re.hypot(z.im));
            }
        }
        worst
    }

    /// Largest deviation from Hermitian symmetry, `max |A - A^dagger|`.
    pub fn hermiticity_defect(&self) -> T {
        self.sub(&self.adjoint()).max_abs()
    }
}

impl<T> std::ops::Index<(usize, usize)> for CMatrix<T> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.n + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for CMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.n + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn pauli_algebra() {
        // sigma_x sigma_y - sigma_y sigma_x = 2 i sigma_z.
        let mut sx = CMatrix::<f64>::zeros(2);
        sx[(0, 1)] = c(1.0, 0.0);
        sx[(1, 0)] = c(1.0, 0.0);
        let mut sy = CMatrix::<f64>::zeros(2);
        sy[(0, 1)] = c(0.0, -1.0);
        sy[(1, 0)] = c(0.0, 1.0);
        let mut expect = CMatrix::<f64>::zeros(2);
        expect[(0, 0)] = c(0.0, 2.0);
        expect[(1, 1)] = c(0.0, -2.0);
        let comm = CMatrix::commutator(&sx, &sy);
        assert!(comm.sub(&expect).max_abs() < 1e-15);
        // sigma_x sigma_y + sigma_y sigma_x = 0.
        assert!(CMatrix::anticommutator(&sx, &sy).max_abs() < 1e-15);
        assert!(sx.hermiticity_defect() < 1e-15);
    }

    #[test]
    fn adjoint_and_window() {
        let mut m = CMatrix::<f64>::zeros(3);
        m[(0, 2)] = c(0.0, 5.0);
        m[(1, 1)] = c(2.0, 0.0);
        let a = m.adjoint();
        assert_eq!(a[(2, 0)], c(0.0, -5.0));
        // The window excludes the big corner entry.
        assert_eq!(m.max_abs_window(0, 2), 2.0);
        assert_eq!(m.max_abs(), 5.0);
    }

    #[test]
    fn diag_and_identity() {
        let d = CMatrix::from_real_diag(&[1.0f64, 2.0, 3.0]);
        let i = CMatrix::identity(3);
        assert_eq!(d.mul(&i), d);
        assert_eq!(d.scale_real(2.0)[(2, 2)], c(6.0, 0.0));
    }
}
