//! Inverse map: unitary matrix to canonical parameters.
//!
//! In `U = e^{X₀} e^{X₂} ⋯ e^{Xₙ}` only the last factor touches row `n`
//! beyond its diagonal phase, so the last row of `U` is
//! `e^{iθₙ} (−sin ρₙ ⟨z̃ₙ|, cos ρₙ)`. Reading `θₙ`, `ρₙ` and `z̃ₙ` off that
//! row and multiplying by `e^{−Xₙ}` on the right leaves
//! `diag(U', e^{iθₙ})` with `U'` of the same form one size smaller.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::block_exp::{compose, exp_k};
use crate::dense::{require_square, stable_norm, unitarity_defect, ComplexMatrix, ComplexVector};
use crate::error::{Error, Result};
use crate::params::CcskParams;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecomposeOptions {
    /// Per-dimension unitarity gate: inputs need `‖U†U − I‖_F ≤ tol·n`.
    pub unitarity_tol: f64,
    /// Pivot magnitudes and off-diagonal row norms at or below this are
    /// treated as exactly zero.
    pub zero_tol: f64,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        Self {
            unitarity_tol: 1e-10,
            zero_tol: 1e-12,
        }
    }
}

impl DecomposeOptions {
    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("unitarity_tol", self.unitarity_tol),
            ("zero_tol", self.zero_tol),
        ] {
            if !(value > 0.0 && value < 1.0) {
                return Err(Error::Tolerance { name, value });
            }
        }
        Ok(())
    }

    /// Allowed residual in the peeled row and column.
    pub fn peel_tol(&self) -> f64 {
        10.0 * self.unitarity_tol
    }
}

/// Recovers canonical parameters `p` with `compose(p) ≈ u`.
pub fn decompose(u: &ComplexMatrix, opts: &DecomposeOptions) -> Result<CcskParams> {
    opts.validate()?;
    require_square(u)?;
    let n = u.n_rows();
    let tol = opts.unitarity_tol * n as f64;
    let defect = unitarity_defect(u)?;
    if defect > tol {
        return Err(Error::NotUnitary { defect, tol });
    }

    let mut thetas = vec![0.0; n];
    let mut z_columns: Vec<ComplexVector> = Vec::with_capacity(n.saturating_sub(1));
    let mut m = u.clone();

    for j in (2..=n).rev() {
        let last = j - 1;
        let pivot = m[(last, last)];
        let off = &m.row(last)[..last];

        // cos ρ and sin ρ up to a common positive factor; atan2 keeps ρ
        // accurate near both ends of [0, π/2], where arccos alone loses
        // half the digits.
        let cos_part = pivot.norm();
        let sin_part = stable_norm(off);
        let rho = sin_part.atan2(cos_part);

        let theta = if cos_part > opts.zero_tol {
            pivot.arg()
        } else {
            0.0
        };
        let phase = Complex64::from_polar(1.0, theta);

        let z = if sin_part <= opts.zero_tol {
            ComplexVector::zeros(last)
        } else {
            let entries = off
                .iter()
                .map(|v| -v.conj() * phase * (rho / sin_part))
                .collect();
            ComplexVector::from_vec_unchecked(entries)
        };

        if !z.is_zero() {
            m.mul_leading_block_right(&exp_k(&z).adjoint());
        }

        let residual = peel_residual(&m, last, phase);
        if residual > opts.peel_tol() {
            return Err(Error::PeelInconsistent {
                j,
                residual,
                tol: opts.peel_tol(),
            });
        }

        thetas[last] = theta;
        z_columns.push(z);
    }
    thetas[0] = m[(0, 0)].arg();
    z_columns.reverse();

    let mut p = CcskParams::from_parts_unchecked(thetas, z_columns);
    for t in p.thetas_mut() {
        *t = wrap_angle(*t);
    }
    Ok(p)
}

/// Frobenius distance of row and column `k` (within the leading
/// `(k+1) x (k+1)` block) from `phase · e_k`.
fn peel_residual(m: &ComplexMatrix, k: usize, phase: Complex64) -> f64 {
    let mut sum = (m[(k, k)] - phase).norm_sqr();
    for i in 0..k {
        sum += m[(k, i)].norm_sqr() + m[(i, k)].norm_sqr();
    }
    sum.sqrt()
}

/// `‖compose(decompose(u)) − u‖_F`.
pub fn roundtrip_error(u: &ComplexMatrix, opts: &DecomposeOptions) -> Result<f64> {
    let p = decompose(u, opts)?;
    compose(&p).distance(u)
}

/// Wraps an angle into `(−π, π]`. Results within a few ulps of `±π` land
/// on `π`.
pub fn wrap_angle(theta: f64) -> f64 {
    if theta > -PI && theta <= PI {
        return theta;
    }
    let two_pi = 2.0 * PI;
    let r = theta.rem_euclid(two_pi);
    let snap = 8.0 * f64::EPSILON * theta.abs().max(1.0);
    if (r - PI).abs() <= snap {
        PI
    } else if r > PI {
        r - two_pi
    } else {
        r
    }
}

/// Wraps every θ into `(−π, π]`; `z` is untouched.
pub fn normalize_thetas(p: &CcskParams) -> CcskParams {
    let mut out = p.clone();
    for t in out.thetas_mut() {
        *t = wrap_angle(*t);
    }
    out
}
