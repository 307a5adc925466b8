//! Generic matrix exponential used as an independent reference.
//!
//! Scaling and squaring around a plain Taylor series: scale so that
//! `‖X / 2^s‖_F ≤ 0.5`, sum terms until one drops below `1e-18` of the
//! partial sum (at most 40 terms), then square `s` times. It knows nothing
//! about the block structure the closed forms exploit.

use crate::dense::{mat_add, mat_mul, require_square, ComplexMatrix};
use crate::error::Result;
use num_complex::Complex64;

const TARGET_NORM: f64 = 0.5;
const MAX_TERMS: usize = 40;
const REL_TERM_TOL: f64 = 1e-18;

/// `e^x` for a square matrix `x`.
pub fn expm(x: &ComplexMatrix) -> Result<ComplexMatrix> {
    require_square(x)?;
    let norm = x.frobenius_norm();
    let squarings = if norm > TARGET_NORM {
        (norm / TARGET_NORM).log2().ceil().max(0.0) as i32
    } else {
        0
    };
    let scaled = x.scale(Complex64::new(0.5_f64.powi(squarings), 0.0));

    let n = x.n_rows();
    let mut sum = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..=MAX_TERMS {
        term = mat_mul(&term, &scaled)?.scale(Complex64::new(1.0 / k as f64, 0.0));
        sum = mat_add(&sum, &term)?;
        if term.frobenius_norm() <= REL_TERM_TOL * sum.frobenius_norm() {
            break;
        }
    }

    for _ in 0..squarings {
        sum = mat_mul(&sum, &sum)?;
    }
    Ok(sum)
}
