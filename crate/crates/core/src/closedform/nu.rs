//! Expected count of negative eigenvalues of `[[x, B], [C, y]]` with `B, C`
//! independent uniform on `[-1, 1]`, and antiderivatives of its pieces.

use super::density::{g_function, xlogx};
use crate::error::{invalid, Result};

pub fn nu1(x: f64, y: f64) -> f64 {
    0.5 + 0.5 * g_function(x * y) + g_function((x - y) * (x - y) / 4.0)
}

pub fn nu2(x: f64, y: f64) -> f64 {
    0.5 - 0.5 * g_function(x * y)
}

/// Branch value without the domain check. Points on `xy = 1` or `x + y = 0`
/// fall through to the final branch.
pub(crate) fn nu_unchecked(x: f64, y: f64) -> f64 {
    let p = x * y;
    let s = x + y;
    if p < 1.0 && s < 0.0 {
        nu1(x, y)
    } else if p < 1.0 && s > 0.0 {
        nu2(x, y)
    } else if p > 1.0 && s < 0.0 {
        1.0 + g_function((x - y) * (x - y) / 4.0)
    } else {
        0.0
    }
}

/// Expected number of negative eigenvalues given the diagonal `(x, y)`;
/// requires `|x - y| <= 2`.
pub fn nu(x: f64, y: f64) -> Result<f64> {
    if !((x - y).abs() <= 2.0) {
        return Err(invalid(format!("|x - y| must be at most 2, got x = {x}, y = {y}")));
    }
    Ok(nu_unchecked(x, y))
}

/// `(A1, A2)` with `dA1/dx = nu1` and `dA2/dx = nu2` for fixed nonzero `y`.
pub fn antiderivatives_nu(x: f64, y: f64) -> Result<(f64, f64)> {
    if y == 0.0 {
        return Err(invalid("antiderivatives need y != 0"));
    }
    // x^2 y (3 - 2 log|xy|) / 8, continuous through x = 0
    let product = if x == 0.0 {
        0.0
    } else {
        x * x * y * 3.0 / 8.0 - x * xlogx(x * y) / 4.0
    };
    // (x-y)^3 (5 - 6 log|(x-y)/2|) / 36
    let h = (x - y) / 2.0;
    let gap = 8.0 * h * h * (5.0 * h - 6.0 * xlogx(h)) / 36.0;
    Ok((0.5 * x + product + gap, 0.5 * x - product))
}
