//! Closed-form eigenvalue densities and the analytic objects behind them.

mod density;
mod distribution;
mod nu;
mod quadrature;

use std::f64::consts::{LN_2, PI, SQRT_2};

pub use density::{f_bc, g_function, v_density, v_piece, w_density, w_piece, Piece};
pub use distribution::{f_w_minus, f_w_minus_with_budget};
pub use nu::{antiderivatives_nu, nu, nu1, nu2};
pub use quadrature::{integrate, QuadratureResult, DEFAULT_BUDGET};

use crate::error::{invalid, Result};

/// Points where the densities change formula.
pub const BREAKPOINTS: [f64; 7] = [-2.0, -SQRT_2, -1.0, 0.0, 1.0, SQRT_2, 2.0];

/// Default 1-D absolute tolerance.
pub const DEFAULT_TOL_1D: f64 = 1e-10;
/// Default absolute tolerance for the double integral.
pub const DEFAULT_TOL_2D: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    /// `(7 sqrt 2 + 4 + 3 log(sqrt 2 + 1)) / (3 pi^2)`
    pub c_integer: f64,
    pub six_over_pi_sq: f64,
    /// Probability that a uniform `[-1, 1]` matrix has real eigenvalues.
    pub real_pair_probability: f64,
    /// Total mass of `W`.
    pub w_mass: f64,
    pub w_at_one: f64,
    pub v_at_one: f64,
    /// Total mass of `V`, `4/9 (7 sqrt 2 + 4 + 3 log(sqrt 2 + 1))`.
    pub v_mass: f64,
}

pub fn constants() -> Constants {
    let bracket = 7.0 * SQRT_2 + 4.0 + 3.0 * (SQRT_2 + 1.0).ln();
    Constants {
        c_integer: bracket / (3.0 * PI * PI),
        six_over_pi_sq: 6.0 / (PI * PI),
        real_pair_probability: 49.0 / 72.0,
        w_mass: 49.0 / 36.0,
        w_at_one: 15.0 / 32.0,
        v_at_one: 1.0 + LN_2,
        v_mass: 4.0 / 9.0 * bracket,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DensityKind {
    V,
    W,
    /// `V` scaled to total mass 2.
    UZ,
    /// `W` scaled to total mass 2.
    UR,
}

impl DensityKind {
    pub fn eval(self, delta: f64) -> f64 {
        let c = constants();
        match self {
            DensityKind::V => v_density(delta),
            DensityKind::W => w_density(delta),
            DensityKind::UZ => 2.0 * v_density(delta) / c.v_mass,
            DensityKind::UR => 2.0 * w_density(delta) / c.w_mass,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DensityKind::V => "V",
            DensityKind::W => "W",
            DensityKind::UZ => "UZ",
            DensityKind::UR => "UR",
        }
    }
}

impl std::str::FromStr for DensityKind {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "V" => Ok(DensityKind::V),
            "W" => Ok(DensityKind::W),
            "UZ" => Ok(DensityKind::UZ),
            "UR" => Ok(DensityKind::UR),
            other => Err(invalid(format!("unknown density kind {other:?}"))),
        }
    }
}

/// Samples of one density on a strictly increasing grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityTable {
    pub kind: DensityKind,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
}

impl DensityTable {
    pub fn tabulate(kind: DensityKind, grid: Vec<f64>) -> Result<Self> {
        if grid.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(invalid("density grid must be strictly increasing"));
        }
        let values = grid.iter().map(|&d| kind.eval(d)).collect();
        Ok(Self { kind, grid, values })
    }

    pub fn trapezoid(&self) -> f64 {
        self.grid
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(g, v)| 0.5 * (g[1] - g[0]) * (v[0] + v[1]))
            .sum()
    }
}

/// `points` evenly spaced samples of `[from, to]` merged with every
/// breakpoint in range. Grids symmetric about 0 are built mirror-exact.
pub fn density_grid(from: f64, to: f64, points: usize) -> Result<Vec<f64>> {
    if points < 2 || !(from < to) || !from.is_finite() || !to.is_finite() {
        return Err(invalid(format!("need at least 2 points on a nonempty range, got {points} on [{from}, {to}]")));
    }
    let n = points - 1;
    let at = |i: usize| from + (to - from) * (i as f64) / (n as f64);
    let mut grid: Vec<f64> = if from == -to {
        (0..=n)
            .map(|i| if 2 * i == n { 0.0 } else if 2 * i > n { -at(n - i) } else { at(i) })
            .collect()
    } else {
        (0..=n).map(at).collect()
    };
    grid.extend(BREAKPOINTS.iter().copied().filter(|&p| from <= p && p <= to));
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    Ok(grid)
}

/// Integral of a density over `[a, b] ⊂ [-2, 2]`, with panels split at the
/// breakpoints.
pub fn integrate_density(kind: DensityKind, a: f64, b: f64, tol: f64) -> Result<QuadratureResult> {
    if !(-2.0 <= a && a <= b && b <= 2.0) {
        return Err(invalid(format!("need -2 <= a <= b <= 2, got [{a}, {b}]")));
    }
    integrate(|d| kind.eval(d), a, b, &BREAKPOINTS, tol, DEFAULT_BUDGET)
}

/// Maximizer of `f` on `[lo, hi]` by golden-section search down to an
/// interval of width `xtol`.
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, xtol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > xtol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    0.5 * (lo + hi)
}

/// Positive location of the maximum of `W`.
pub fn argmax_w() -> f64 {
    golden_section_max(w_density, 0.5, 0.95, 1e-8)
}
