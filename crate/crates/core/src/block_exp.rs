//! Closed-form exponentials of the generator pieces and the ordered
//! product `e^{X₀} e^{X₂} ⋯ e^{Xₙ}`.
//!
//! For `z` of length `j − 1` the block
//!
//! ```text
//!     K = [  0_{j-1}   |z⟩ ]
//!         [ −⟨z|        0  ]
//! ```
//!
//! satisfies `K³ = −⟨z|z⟩ K`, so its exponential collapses to
//!
//! ```text
//!     e^K = [ I − (1 − cos ρ)|z̃⟩⟨z̃|    sin ρ |z̃⟩ ]
//!           [ −sin ρ ⟨z̃|               cos ρ    ]
//! ```
//!
//! with `ρ = ‖z‖₂` and `z̃ = z / ρ`.

use num_complex::Complex64;

use crate::dense::{ComplexMatrix, ComplexVector};
use crate::error::{Error, Result};
use crate::params::CcskParams;

/// Below this norm the closed form is evaluated through `z` directly
/// (`sin ρ / ρ · z`) rather than through the normalised `z̃`.
pub const SMALL_RHO: f64 = 1e-14;

/// `z` together with its norm and direction.
#[derive(Debug, Clone, PartialEq)]
pub struct KBlock {
    z: ComplexVector,
    rho: f64,
    ztilde: Option<ComplexVector>,
}

impl KBlock {
    pub fn new(z: ComplexVector) -> Self {
        let rho = z.norm();
        let ztilde = (rho > 0.0).then(|| z.scale(1.0 / rho));
        Self { z, rho, ztilde }
    }

    /// Block size `j = len(z) + 1`.
    pub fn j(&self) -> usize {
        self.z.len() + 1
    }

    pub fn z(&self) -> &ComplexVector {
        &self.z
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// Unit direction; `None` when `z = 0`.
    pub fn ztilde(&self) -> Option<&ComplexVector> {
        self.ztilde.as_ref()
    }

    /// The `j x j` anti-Hermitian matrix `K`.
    pub fn k_matrix(&self) -> ComplexMatrix {
        k_matrix(&self.z)
    }

    pub fn exp(&self) -> ComplexMatrix {
        let j = self.j();
        let m = j - 1;
        let Some(ztilde) = &self.ztilde else {
            return ComplexMatrix::identity(j);
        };
        let rho = self.rho;
        let (sin, cos) = rho.sin_cos();
        // 1 − cos ρ without cancellation.
        let half = (0.5 * rho).sin();
        let one_minus_cos = 2.0 * half * half;

        // Column vector u and projector coefficient so that the top-right
        // column is u and the top-left block is I − coef·|v⟩⟨v|.
        let (column, proj_vec, proj_coef) = if rho < SMALL_RHO {
            (self.z.scale(sin / rho), &self.z, 2.0 * (half / rho).powi(2))
        } else {
            (ztilde.scale(sin), ztilde, one_minus_cos)
        };

        let mut out = ComplexMatrix::identity(j);
        for r in 0..m {
            for c in 0..m {
                out[(r, c)] -= proj_vec[r] * proj_vec[c].conj() * proj_coef;
            }
            out[(r, m)] = column[r];
            out[(m, r)] = -column[r].conj();
        }
        out[(m, m)] = Complex64::new(cos, 0.0);
        out
    }
}

/// `K = [[0, |z⟩], [−⟨z|, 0]]`, of size `len(z) + 1`.
pub fn k_matrix(z: &ComplexVector) -> ComplexMatrix {
    let j = z.len() + 1;
    let m = j - 1;
    let mut k = ComplexMatrix::zeros(j, j);
    for (r, v) in z.iter().enumerate() {
        k[(r, m)] = *v;
        k[(m, r)] = -v.conj();
    }
    k
}

/// `diag(e^{iθ₁}, …, e^{iθₙ})`.
pub fn exp_diagonal(thetas: &[f64]) -> ComplexMatrix {
    let diag: Vec<Complex64> = thetas
        .iter()
        .map(|t| Complex64::from_polar(1.0, *t))
        .collect();
    ComplexMatrix::from_diagonal(&diag)
}

/// Closed-form `e^K` for the `(len(z) + 1)`-sized block built from `z`.
pub fn exp_k(z: &ComplexVector) -> ComplexMatrix {
    KBlock::new(z.clone()).exp()
}

/// `e^{X_j}` as an `n x n` matrix: `e^K` in the leading `j x j` block and
/// the identity on the trailing `n − j` coordinates.
pub fn exp_column_factor(z: &ComplexVector, n: usize, j: usize) -> Result<ComplexMatrix> {
    check_factor_shape(z, n, j)?;
    Ok(ComplexMatrix::embed_leading(&exp_k(z), n))
}

fn check_factor_shape(z: &ComplexVector, n: usize, j: usize) -> Result<()> {
    if j < 2 || j > n {
        return Err(Error::Shape(format!(
            "column index j = {j} must satisfy 2 <= j <= n = {n}"
        )));
    }
    if z.len() != j - 1 {
        return Err(Error::Shape(format!(
            "z_{j} must have length {}, got {}",
            j - 1,
            z.len()
        )));
    }
    Ok(())
}

/// `e^{X₀} e^{X₂} ⋯ e^{Xₙ}`, multiplied left to right.
///
/// Each factor acts only on the leading `j x j` block, and the running
/// product is block diagonal (dense leading block, then phases), so only
/// that corner is updated.
pub fn compose(p: &CcskParams) -> ComplexMatrix {
    let mut u = exp_diagonal(p.thetas());
    for z in p.z_columns() {
        if z.is_zero() {
            continue;
        }
        u.mul_leading_block_right(&exp_k(z));
    }
    u
}

/// `compose` evaluated through full `n x n` products of the embedded
/// factors. Slower; kept as a cross-check of the blocked schedule.
pub fn compose_dense(p: &CcskParams) -> ComplexMatrix {
    let n = p.n();
    p.z_columns()
        .iter()
        .enumerate()
        .fold(exp_diagonal(p.thetas()), |acc, (k, z)| {
            let factor = exp_column_factor(z, n, k + 2).expect("validated parameter shape");
            &acc * &factor
        })
}
