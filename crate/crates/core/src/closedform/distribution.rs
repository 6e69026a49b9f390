use std::cell::Cell;

use super::nu::nu_unchecked;
use super::quadrature::{integrate, QuadratureResult, DEFAULT_BUDGET};
use crate::error::{invalid, Error, Result};

/// Expected number of eigenvalues below `-delta` for a uniform `[-1, 1]`
/// matrix, as a quarter of the integral of `nu` over `[delta-1, delta+1]^2`.
///
/// Iterated quadrature: the inner `x` panels are cut where `x + y = 0`,
/// `xy = 1`, `x = 0` and `x = y`, the outer `y` panels where those cuts enter
/// or leave the square.
pub fn f_w_minus(delta: f64, tol: f64) -> Result<QuadratureResult> {
    f_w_minus_with_budget(delta, tol, DEFAULT_BUDGET)
}

pub fn f_w_minus_with_budget(delta: f64, tol: f64, budget: usize) -> Result<QuadratureResult> {
    if !(0.0..=2.0).contains(&delta) {
        return Err(invalid(format!("delta = {delta} outside [0, 2]")));
    }
    if !(tol > 0.0) {
        return Err(invalid("tolerance must be positive"));
    }
    let lo = delta - 1.0;
    let hi = delta + 1.0;
    let width = hi - lo;

    let spent = Cell::new(0_usize);
    let worst_inner = Cell::new(0.0_f64);
    let failure: Cell<Option<Error>> = Cell::new(None);
    let inner_tol = tol / width;

    let inner = |y: f64| -> f64 {
        let mut cuts = vec![-y, 0.0, y];
        if y != 0.0 {
            cuts.push(1.0 / y);
        }
        let remaining = budget.saturating_sub(spent.get());
        match integrate(|x| nu_unchecked(x, y), lo, hi, &cuts, inner_tol, remaining) {
            Ok(r) => {
                spent.set(spent.get() + r.evaluations);
                worst_inner.set(worst_inner.get().max(r.error_estimate));
                r.value
            }
            Err(e) => {
                spent.set(budget);
                failure.set(Some(e));
                0.0
            }
        }
    };

    let mut outer_cuts = vec![0.0, -lo, -hi, 1.0 / hi];
    if lo != 0.0 {
        outer_cuts.push(1.0 / lo);
    }
    let outer = integrate(inner, lo, hi, &outer_cuts, tol, usize::MAX);
    if let Some(e) = failure.take() {
        return Err(match e {
            Error::QuadratureBudget { estimate, .. } => Error::QuadratureBudget { tol, budget, estimate },
            other => other,
        });
    }
    let outer = outer?;
    let error_estimate = 0.25 * (outer.error_estimate + width * worst_inner.get());
    Ok(QuadratureResult {
        value: 0.25 * outer.value,
        error_estimate,
        evaluations: spent.get(),
    })
}
