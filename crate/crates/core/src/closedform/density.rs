//! Limiting eigenvalue densities: `V` for integer matrices scaled by `k`, `W`
//! for matrices with independent uniform `[-1, 1]` entries.

use std::f64::consts::{LN_2, SQRT_2};

/// `t log t`, extended by its limit 0 at `t = 0`.
pub(crate) fn xlogx(t: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        t * t.abs().ln()
    }
}

/// Branches of the piecewise formulas, on `|delta|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Piece {
    /// `[0, 1]`
    Inner,
    /// `[1, sqrt 2]`
    Middle,
    /// `[sqrt 2, 2]`
    Outer,
}

/// Evaluates one branch formula of `V` at `t >= 0` regardless of range, for
/// checking continuity where branches meet.
pub fn v_piece(piece: Piece, t: f64) -> f64 {
    let t2 = t * t;
    match piece {
        Piece::Inner => 4.0 - 2.0 * t - t2 + t2 * (1.0 + t).ln() - 2.0 * xlogx(1.0 - t),
        Piece::Middle => 4.0 - 2.0 * t - t2 + t2 * (t + 1.0).ln() + 2.0 * xlogx(t - 1.0),
        Piece::Outer => t2 - 2.0 * t - (t2 - 2.0 * t + 2.0) * (t - 1.0).ln(),
    }
}

/// Integer-eigenvalue density, even, supported on `[-2, 2]`.
pub fn v_density(delta: f64) -> f64 {
    let t = delta.abs();
    if t < 1.0 {
        v_piece(Piece::Inner, t)
    } else if t == 1.0 {
        1.0 + LN_2
    } else if t <= SQRT_2 {
        v_piece(Piece::Middle, t)
    } else if t <= 2.0 {
        v_piece(Piece::Outer, t)
    } else {
        0.0
    }
}

/// Evaluates one branch formula of `W` at `t >= 0` regardless of range.
pub fn w_piece(piece: Piece, t: f64) -> f64 {
    let t2 = t * t;
    let t3 = t2 * t;
    let t4 = t2 * t2;
    match piece {
        Piece::Inner => {
            (80.0 + 20.0 * t + 90.0 * t2 + 52.0 * t3 - 107.0 * t4) / (144.0 * (1.0 + t))
                - (5.0 - 7.0 * t + 8.0 * t2) * xlogx(1.0 - t) / 12.0
                - t * (1.0 - t2) * (1.0 + t).ln() / 4.0
        }
        Piece::Middle => {
            t * (20.0 + 10.0 * t - 12.0 * t2 - 3.0 * t3) / (16.0 * (1.0 + t))
                + (3.0 * t - 1.0) * xlogx(t - 1.0) / 4.0
                + t * (t2 - 1.0) * (t + 1.0).ln() / 4.0
        }
        Piece::Outer => {
            t * (t - 2.0) * (2.0 - 6.0 * t + 3.0 * t2) / (16.0 * (t - 1.0))
                - (t - 1.0) * (t - 1.0) * xlogx(t - 1.0) / 4.0
        }
    }
}

/// Density of real eigenvalues of a uniform `[-1, 1]` matrix, even, supported
/// on `(-2, 2)`.
pub fn w_density(delta: f64) -> f64 {
    let t = delta.abs();
    if t < 1.0 {
        w_piece(Piece::Inner, t)
    } else if t == 1.0 {
        15.0 / 32.0
    } else if t <= SQRT_2 {
        w_piece(Piece::Middle, t)
    } else if t < 2.0 {
        w_piece(Piece::Outer, t)
    } else {
        0.0
    }
}

/// `G(z) = z (1 - log|z|)`, the odd antiderivative of `-log|t|` with `G(0) = 0`.
pub fn g_function(z: f64) -> f64 {
    z - xlogx(z)
}

/// Distribution function of the product of two independent uniform `[-1, 1]`
/// variables.
pub fn f_bc(z: f64) -> f64 {
    if z < -1.0 {
        0.0
    } else if z > 1.0 {
        1.0
    } else {
        0.5 * (1.0 + g_function(z))
    }
}
