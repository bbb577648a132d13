//! Finite-difference cross-checks that never touch the closed forms.
//!
//! Everything here goes through a second-order discretisation of a
//! Schrodinger problem on an interval, so agreement with the analytic
//! spectra and eigenfunctions is evidence, not circularity. The deformed
//! oscillator becomes an ordinary differential problem in the auxiliary
//! coordinate `rho = arctan(sqrt(beta) p) / sqrt(beta)`: the Hamiltonian is
//! `-(omega^2/2) d^2/drho^2 + tan^2(sqrt(beta) rho) / (2 beta)` on
//! `(-pi/(2 sqrt(beta)), pi/(2 sqrt(beta)))`, and its eigenvalues are the
//! physical levels directly.
//!
//! The grid is staggered: nodes sit at half-integer steps so each wall
//! falls exactly midway between a node and its ghost, which keeps both
//! Dirichlet and Neumann walls second-order accurate.

use num_complex::Complex;

use crate::ddim::{ddim_wavefunction, DdimParams};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::params::ModelParams1D;
use crate::scalar::Real;
use crate::spectrum::{Spectrum, SpectrumSource};
use crate::tridiag::SymTridiag;
use crate::wavefn::psi;

/// Behaviour of the solution at a wall of the interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WallCondition {
    /// The solution vanishes at the wall.
    Dirichlet,
    /// The normal derivative vanishes at the wall.
    Neumann,
}

/// A one-dimensional stationary problem `-c psi'' + V psi = E psi` on an
/// interval, discretised on a staggered uniform grid.
pub struct FdProblem<'a, T> {
    pub domain: (T, T),
    pub grid_size: usize,
    /// Coefficient `c` of the second-derivative term.
    pub kinetic_coeff: T,
    pub left: WallCondition,
    pub right: WallCondition,
    pub potential: &'a dyn Fn(T) -> T,
}

impl<T: Real> FdProblem<'_, T> {
    fn step(&self) -> T {
        (self.domain.1 - self.domain.0) / T::of_usize(self.grid_size)
    }

    /// Node positions: `x_i = lo + (i + 1/2) h`. The walls sit half a step
    /// outside the first and last node.
    pub fn nodes(&self) -> Vec<T> {
        let h = self.step();
        (0..self.grid_size)
            .map(|i| self.domain.0 + (T::of_usize(i) + T::half()) * h)
            .collect()
    }

    /// Assemble the symmetric tridiagonal matrix of the discretised
    /// operator. A Dirichlet wall is an anti-mirror ghost node
    /// (`psi_ghost = -psi_edge`), a Neumann wall a mirror one.
    pub fn assemble(&self) -> Result<SymTridiag<T>> {
        if self.grid_size < 8 {
            return Err(Error::config(format!(
                "grid size {} is too small to discretise on",
                self.grid_size
            )));
        }
        if !(self.domain.1 > self.domain.0) {
            return Err(Error::domain("domain must have positive length"));
        }
        if !(self.kinetic_coeff > T::zero()) || !self.kinetic_coeff.is_finite() {
            return Err(Error::domain("kinetic coefficient must be positive"));
        }
        let h = self.step();
        let c = self.kinetic_coeff;
        let lap = c / (h * h);
        let mut diag = Vec::with_capacity(self.grid_size);
        for (i, x) in self.nodes().into_iter().enumerate() {
            let v = (self.potential)(x);
            if !v.is_finite() {
                return Err(Error::domain(format!(
                    "potential is not finite at node {x}"
                )));
            }
            let mut d = T::two() * lap + v;
            if i == 0 {
                d += match self.left {
                    WallCondition::Dirichlet => lap,
                    WallCondition::Neumann => -lap,
                };
            }
            if i == self.grid_size - 1 {
                d += match self.right {
                    WallCondition::Dirichlet => lap,
                    WallCondition::Neumann => -lap,
                };
            }
            diag.push(d);
        }
        let off = vec![-lap; self.grid_size - 1];
        SymTridiag::new(diag, off)
    }

    /// Lowest `n_levels` eigenvalues.
    pub fn solve(&self, n_levels: usize) -> Result<Vec<T>> {
        self.check_resolution(n_levels)?;
        self.assemble()?.eigenvalues_lowest(n_levels)
    }

    /// Lowest `n_levels` eigenpairs; eigenvectors have unit Euclidean norm.
    pub fn solve_modes(&self, n_levels: usize) -> Result<Vec<(T, Vec<T>)>> {
        self.check_resolution(n_levels)?;
        let m = self.assemble()?;
        let mut out = Vec::with_capacity(n_levels);
        for k in 0..n_levels {
            let lambda = m.eigenvalue(k)?;
            let v = m.eigenvector(lambda)?;
            out.push((lambda, v));
        }
        Ok(out)
    }

    fn check_resolution(&self, n_levels: usize) -> Result<()> {
        if n_levels == 0 {
            return Err(Error::config("asked for zero levels"));
        }
        if n_levels * 20 > self.grid_size {
            return Err(Error::config(format!(
                "grid of {} nodes cannot resolve {} levels; need at least 20 nodes per level",
                self.grid_size, n_levels
            )));
        }
        Ok(())
    }
}

/// An interval problem with an owned potential, ready to discretise at any
/// grid size.
struct ProblemSpec<T> {
    domain: (T, T),
    kinetic_coeff: T,
    left: WallCondition,
    right: WallCondition,
    potential: Box<dyn Fn(T) -> T>,
}

impl<T: Real> ProblemSpec<T> {
    fn at(&self, grid: usize) -> FdProblem<'_, T> {
        FdProblem {
            domain: self.domain,
            grid_size: grid,
            kinetic_coeff: self.kinetic_coeff,
            left: self.left,
            right: self.right,
            potential: self.potential.as_ref(),
        }
    }
}

fn oscillator_spec<T: Real>(p: &ModelParams1D<T>) -> ProblemSpec<T> {
    let sb = p.beta.sqrt();
    let half_width = T::FRAC_PI_2() / sb;
    let beta = p.beta;
    ProblemSpec {
        domain: (-half_width, half_width),
        kinetic_coeff: p.omega * p.omega * T::half(),
        left: WallCondition::Dirichlet,
        right: WallCondition::Dirichlet,
        potential: Box::new(move |rho: T| {
            let t = (sb * rho).tan();
            t * t / (T::two() * beta)
        }),
    }
}

/// Solve the deformed oscillator numerically in the auxiliary coordinate.
/// The returned levels are the physical energies.
pub fn solve_oscillator_fd<T: Real>(
    p: &ModelParams1D<T>,
    grid: usize,
    n_levels: usize,
) -> Result<Spectrum<T>> {
    let levels = oscillator_spec(p).at(grid).solve(n_levels)?;
    Ok(Spectrum {
        entries: levels.into_iter().enumerate().collect(),
        source: SpectrumSource::Oracle,
        params: Some(*p),
    })
}

/// Distance between the numerically computed and analytic eigenfunction of
/// level `n`, as the Euclidean norm of the difference of the unit-normalised
/// node vectors (sign aligned).
pub fn fd_mode_deviation<T: Real>(n: usize, p: &ModelParams1D<T>, grid: usize) -> Result<T> {
    let spec = oscillator_spec(p);
    let problem = spec.at(grid);
    let modes = problem.solve_modes(n + 1)?;
    let numeric = &modes[n].1;
    let sb = p.beta.sqrt();
    let analytic: Vec<T> = problem
        .nodes()
        .into_iter()
        .map(|rho| psi((sb * rho).sin(), n, p))
        .collect::<Result<_>>()?;
    Ok(compare_unit_vectors(numeric, &analytic))
}

/// Solve the radial well of the D-dimensional problem numerically. The
/// returned levels are the well levels (the constant shift not subtracted);
/// the wall at the origin is a mirror when the centrifugal index vanishes
/// and a hard wall when it is at least one.
pub fn solve_radial_well_fd<T: Real>(
    dp: &DdimParams<T>,
    grid: usize,
    n_levels: usize,
) -> Result<Spectrum<T>> {
    let levels = radial_spec(dp)?.at(grid).solve(n_levels)?;
    Ok(Spectrum {
        entries: levels.into_iter().enumerate().collect(),
        source: SpectrumSource::Oracle,
        params: None,
    })
}

fn radial_spec<T: Real>(dp: &DdimParams<T>) -> Result<ProblemSpec<T>> {
    let left = if dp.mu == T::zero() {
        WallCondition::Neumann
    } else if dp.mu >= T::one() {
        WallCondition::Dirichlet
    } else {
        return Err(Error::domain(format!(
            "centrifugal index mu = {} in (0, 1) gives a cusp no mirrored grid represents",
            dp.mu
        )));
    };
    let alpha = dp.alpha;
    let nu = dp.nu;
    let mu = dp.mu;
    let strength = alpha * alpha * T::half();
    Ok(ProblemSpec {
        domain: (T::zero(), T::FRAC_PI_2() / alpha),
        kinetic_coeff: T::half(),
        left,
        right: WallCondition::Dirichlet,
        potential: Box::new(move |x: T| {
            let cn = (alpha * x).cos();
            let sn = (alpha * x).sin();
            let centrifugal = if mu == T::zero() {
                T::zero()
            } else {
                mu * (mu - T::one()) / (sn * sn)
            };
            strength * (nu * (nu - T::one()) / (cn * cn) + centrifugal)
        }),
    })
}

/// Euclidean distance of the radial mode `n_r` between the finite-difference
/// eigenvector and the analytic eigenfunction sampled on the same nodes.
pub fn radial_fd_mode_deviation<T: Real>(
    n_r: usize,
    dp: &DdimParams<T>,
    grid: usize,
) -> Result<T> {
    let spec = radial_spec(dp)?;
    let problem = spec.at(grid);
    let modes = problem.solve_modes(n_r + 1)?;
    let numeric = &modes[n_r].1;
    let two_alpha = T::two() * dp.alpha;
    let analytic: Vec<T> = problem
        .nodes()
        .into_iter()
        .map(|x| ddim_wavefunction(-(two_alpha * x).cos(), n_r, dp))
        .collect::<Result<_>>()?;
    Ok(compare_unit_vectors(numeric, &analytic))
}

fn compare_unit_vectors<T: Real>(a: &[T], b: &[T]) -> T {
    let na = a.iter().map(|&x| x * x).sum::<T>().sqrt();
    let nb = b.iter().map(|&x| x * x).sum::<T>().sqrt();
    let dot: T = a.iter().zip(b).map(|(&x, &y)| x * y).sum();
    let sign = if dot < T::zero() { -T::one() } else { T::one() };
    a.iter()
        .zip(b)
        .map(|(&x, &y)| {
            let d = x / na - sign * y / nb;
            d * d
        })
        .sum::<T>()
        .sqrt()
}

/// Result of checking the deformed commutator on a momentum grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumGridReport<T> {
    pub beta: T,
    pub gamma: T,
    pub p_max: T,
    pub grid_size: usize,
    pub h: T,
    /// Worst row deviation of `[x, p]` from `i (1 + beta p^2)` over the
    /// central half of the grid; second-order, `beta h^2 / 2` for the exact
    /// symmetrised discretisation.
    pub residual: T,
}

/// Discretise `x = i ((1 + beta p^2) d/dp + gamma p)` symmetrically on a
/// uniform momentum grid and measure how well `[x, p] = i (1 + beta p^2)`
/// holds row by row. The position operator is assembled as the matrix
/// `i (A D + D A) / 2 + i gamma P` with `A = diag(1 + beta p^2)`, `D` the
/// central difference, `P = diag(p)`; the multiplicative `gamma` term is
/// diagonal and drops out of the commutator with `P` identically.
pub fn momentum_grid_commutator_check<T: Real>(
    beta: T,
    gamma: T,
    p_max: T,
    grid: usize,
) -> Result<MomentumGridReport<T>> {
    if !(beta >= T::zero()) || !beta.is_finite() {
        return Err(Error::domain(format!("beta must be non-negative, got {beta}")));
    }
    if !(gamma >= T::zero()) || !gamma.is_finite() {
        return Err(Error::domain(format!(
            "gamma must be non-negative, got {gamma}"
        )));
    }
    if !(p_max > T::zero()) || !p_max.is_finite() {
        return Err(Error::domain(format!("p_max must be positive, got {p_max}")));
    }
    if grid < 16 {
        return Err(Error::config(format!(
            "momentum grid of {grid} points is too coarse"
        )));
    }
    let h = T::two() * p_max / T::of_usize(grid - 1);
    let p: Vec<T> = (0..grid).map(|j| -p_max + T::of_usize(j) * h).collect();
    let mut a = CMatrix::zeros(grid);
    let mut d = CMatrix::zeros(grid);
    for j in 0..grid {
        a[(j, j)] = Complex::new(T::one() + beta * p[j] * p[j], T::zero());
        if j + 1 < grid {
            let inv = T::one() / (T::two() * h);
            d[(j, j + 1)] = Complex::new(inv, T::zero());
            d[(j + 1, j)] = Complex::new(-inv, T::zero());
        }
    }
    let i_half = Complex::new(T::zero(), T::half());
    let mut x = a.mul(&d).add(&d.mul(&a)).scale(i_half);
    for j in 0..grid {
        x[(j, j)] += Complex::new(T::zero(), gamma * p[j]);
    }
    // Row reading of the commutator: ([x, p] psi)_j needs only
    // sum_k x_jk (p_k - p_j), which the rows of x provide directly.
    let lo = grid / 4;
    let hi = grid - grid / 4;
    let mut worst = T::zero();
    for j in lo..hi {
        let mut acc = Complex::new(T::zero(), T::zero());
        for k in 0..grid {
            let w = x[(j, k)];
            if w.re != T::zero() || w.im != T::zero() {
                acc += w.scale(p[k] - p[j]);
            }
        }
        let want = Complex::new(T::zero(), T::one() + beta * p[j] * p[j]);
        let dev = (acc - want).norm_sqr().sqrt();
        if dev > worst {
            worst = dev;
        }
    }
    Ok(MomentumGridReport {
        beta,
        gamma,
        p_max,
        grid_size: grid,
        h,
        residual: worst,
    })
}

/// Least-squares slope of `ln err` against `ln h` over `(h, err)` pairs;
/// the observed order of convergence.
pub fn convergence_order<T: Real>(pairs: &[(T, T)]) -> Result<T> {
    if pairs.len() < 2 {
        return Err(Error::config(
            "need at least two (step, error) pairs to fit an order",
        ));
    }
    let mut xs = Vec::with_capacity(pairs.len());
    let mut ys = Vec::with_capacity(pairs.len());
    for &(h, err) in pairs {
        if !(h > T::zero()) || !(err > T::zero()) {
            return Err(Error::domain(
                "steps and errors must be positive to fit a log-log slope",
            ));
        }
        xs.push(h.ln());
        ys.push(err.ln());
    }
    let n = T::of_usize(pairs.len());
    let mx = xs.iter().copied().sum::<T>() / n;
    let my = ys.iter().copied().sum::<T>() / n;
    let mut num = T::zero();
    let mut den = T::zero();
    for (x, y) in xs.iter().zip(&ys) {
        num += (*x - mx) * (*y - my);
        den += (*x - mx) * (*x - mx);
    }
    if den == T::zero() {
        return Err(Error::domain("all steps are equal; slope is undefined"));
    }
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ddim::{ddim_derive, ddim_energy_pt};
    use crate::params::derive_params;
    use crate::spectrum::energy_osc;

    #[test]
    fn box_walls_are_second_order() {
        // Particle in a box on (0, pi) with c = 1/2: Dirichlet levels
        // k^2/2 for k = 1, 2, 3; Neumann levels k^2/2 for k = 0, 1, 2.
        let zero = |_x: f64| 0.0;
        let dirichlet = FdProblem {
            domain: (0.0, std::f64::consts::PI),
            grid_size: 800,
            kinetic_coeff: 0.5,
            left: WallCondition::Dirichlet,
            right: WallCondition::Dirichlet,
            potential: &zero,
        };
        let got = dirichlet.solve(3).unwrap();
        for (e, want) in got.iter().zip([0.5, 2.0, 4.5]) {
            assert!((e - want).abs() < 1e-4, "{e} vs {want}");
        }
        let neumann = FdProblem {
            left: WallCondition::Neumann,
            right: WallCondition::Neumann,
            ..dirichlet
        };
        let got = neumann.solve(3).unwrap();
        for (e, want) in got.iter().zip([0.0, 0.5, 2.0]) {
            assert!((e - want).abs() < 1e-4, "{e} vs {want}");
        }
    }

    #[test]
    fn oscillator_levels_from_the_grid() {
        let p = derive_params(0.2f64, 1.0, 0.0).unwrap();
        let spec = solve_oscillator_fd(&p, 2000, 6).unwrap();
        assert_eq!(spec.source, SpectrumSource::Oracle);
        for (n, e) in &spec.entries {
            let want = energy_osc(*n, &p);
            let rel = ((e - want) / want).abs();
            assert!(rel < 5e-4, "n={n}: rel {rel}");
        }
    }

    #[test]
    fn oscillator_levels_converge_at_second_order() {
        let p = derive_params(0.2f64, 1.0, 0.0).unwrap();
        let want = energy_osc(4, &p);
        let mut pairs = Vec::new();
        for grid in [500usize, 1000, 2000] {
            let spec = solve_oscillator_fd(&p, grid, 5).unwrap();
            let err = (spec.energy(4).unwrap() - want).abs();
            pairs.push((1.0 / grid as f64, err));
        }
        let order = convergence_order(&pairs).unwrap();
        assert!((order - 2.0).abs() < 0.2, "order {order}");
    }

    #[test]
    fn mode_shapes_match_the_analytic_eigenfunctions() {
        let p = derive_params(0.2f64, 1.0, 0.0).unwrap();
        for n in [0usize, 1, 3] {
            let dev = fd_mode_deviation(n, &p, 2000).unwrap();
            assert!(dev < 1e-3, "n={n}: deviation {dev}");
        }
    }

    #[test]
    fn radial_well_levels_and_modes() {
        // mu = 1 (three dimensions, s-wave): hard wall at the origin.
        let dp = ddim_derive(3, 0, 1.0f64, 1.0, 0.25, 0.05, 0.0).unwrap();
        let spec = solve_radial_well_fd(&dp, 2000, 5).unwrap();
        for (n_r, e) in &spec.entries {
            let want = ddim_energy_pt(*n_r, &dp);
            let rel = ((e - want) / want).abs();
            assert!(rel < 5e-4, "n_r={n_r}: rel {rel}");
        }
        let dev = radial_fd_mode_deviation(2, &dp, 2000).unwrap();
        assert!(dev < 1e-3, "deviation {dev}");
    }

    #[test]
    fn radial_well_mirror_wall_when_centrifugal_term_vanishes() {
        // mu = 0 only arises in the one-dimensional reduction.
        let dp = ddim_derive(1, 0, 1.0f64, 1.0, 0.2, 0.0, 0.0).unwrap();
        assert_eq!(dp.mu, 0.0);
        let spec = solve_radial_well_fd(&dp, 2000, 4).unwrap();
        for (n_r, e) in &spec.entries {
            let want = ddim_energy_pt(*n_r, &dp);
            let rel = ((e - want) / want).abs();
            assert!(rel < 5e-4, "n_r={n_r}: rel {rel}");
        }
    }

    #[test]
    fn radial_well_rejects_fractional_wall_exponent() {
        // Two dimensions, l = 0: mu = 1/2 is a cusp neither wall type fits.
        let dp = ddim_derive(2, 0, 1.0f64, 1.0, 0.2, 0.0, 0.0).unwrap();
        assert!(matches!(
            solve_radial_well_fd(&dp, 2000, 4),
            Err(crate::Error::Domain(_))
        ));
    }

    #[test]
    fn commutator_residual_is_exactly_second_order() {
        let rep = momentum_grid_commutator_check(0.2f64, 0.0, 10.0, 512).unwrap();
        let expect = 0.2 * rep.h * rep.h / 2.0;
        assert!(
            rep.residual > 0.9 * expect && rep.residual < 1.1 * expect,
            "residual {} vs {expect}",
            rep.residual
        );
        // The measure term is diagonal: no effect on the commutator rows.
        let with_gamma = momentum_grid_commutator_check(0.2f64, 0.3, 10.0, 512).unwrap();
        assert!((with_gamma.residual - rep.residual).abs() < 1e-13);
        // Undeformed commutator is represented to rounding error.
        let flat = momentum_grid_commutator_check(0.0f64, 0.0, 10.0, 512).unwrap();
        assert!(flat.residual < 1e-10, "residual {}", flat.residual);
    }

    #[test]
    fn commutator_residual_halves_twice_when_the_grid_doubles() {
        let a = momentum_grid_commutator_check(0.2f64, 0.0, 10.0, 256).unwrap();
        let b = momentum_grid_commutator_check(0.2f64, 0.0, 10.0, 512).unwrap();
        let order = convergence_order(&[(a.h, a.residual), (b.h, b.residual)]).unwrap();
        assert!((order - 2.0).abs() < 0.05, "order {order}");
    }

    #[test]
    fn order_fit_input_validation() {
        assert!(matches!(
            convergence_order::<f64>(&[(0.1, 1e-3)]),
            Err(crate::Error::Config(_))
        ));
        assert!(matches!(
            convergence_order(&[(0.1, 1e-3), (0.05, -1.0)]),
            Err(crate::Error::Domain(_))
        ));
    }

    #[test]
    fn resolution_guard() {
        let p = derive_params(0.2f64, 1.0, 0.0).unwrap();
        assert!(matches!(
            solve_oscillator_fd(&p, 100, 10),
            Err(crate::Error::Config(_))
        ));
    }
}
