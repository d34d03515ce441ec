//! Matrix exponential by scaling-and-squaring with a truncated Taylor
//! series. No eigendecomposition is assumed anywhere; the matrices here
//! are generally non-normal.

use num_complex::Complex64;

use super::FockOperator;
use crate::error::{Error, Result};

/// Series length cap. With the operand scaled to unit 1-norm the terms
/// fall below 1e-16 well before k = 30; the cap only guards pathological
/// inputs.
const MAX_TERMS: usize = 64;

/// Compute `exp(X)`.
///
/// `X` is scaled by a power of two until its 1-norm is at most one, the
/// series is summed until the next term falls below 1e-17 of the running
/// sum, and the result is squared back up.
pub fn matrix_exp(x: &FockOperator) -> Result<FockOperator> {
    if !x.is_finite() {
        return Err(Error::NonFinite);
    }
    let dim = x.dim();
    let norm = one_norm(x);
    let squarings = if norm > 1.0 {
        norm.log2().ceil() as u32
    } else {
        0
    };
    let scale = Complex64::new(0.5f64.powi(squarings as i32), 0.0);
    let scaled = x.scale(scale);

    let mut sum = FockOperator::identity(dim);
    let mut term = FockOperator::identity(dim);
    for k in 1..=MAX_TERMS {
        term = term.dot(&scaled)?.scale(Complex64::new(1.0 / k as f64, 0.0));
        sum = sum.add(&term)?;
        if term.max_abs() < 1e-17 * sum.max_abs().max(1.0) {
            break;
        }
    }

    let mut result = sum;
    for _ in 0..squarings {
        result = result.dot(&result)?;
    }
    Ok(result)
}

fn one_norm(x: &FockOperator) -> f64 {
    let entries = x.entries();
    let mut max_col = 0.0f64;
    for j in 0..x.dim() {
        let col_sum: f64 = (0..x.dim()).map(|i| entries[[i, j]].norm()).sum();
        max_col = max_col.max(col_sum);
    }
    max_col
}
