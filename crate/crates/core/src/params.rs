//! Parameters `(θ, z)` and the anti-Hermitian generator they describe.
//!
//! Column indices follow the mathematical convention: `z_j` (for
//! `j = 2..=n`) is the strict upper part of column `j` of the generator and
//! has length `j − 1`. Internally `z_columns[j - 2]` holds `z_j`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::dense::{anti_hermiticity_defect, require_square, ComplexMatrix, ComplexVector};
use crate::error::{Error, Result};

/// Generator defect allowed per unit of dimension.
pub const GENERATOR_TOL_PER_DIM: f64 = 1e-12;

/// Largest |Re| accepted on the diagonal of a generator.
pub const DIAGONAL_REAL_TOL: f64 = 1e-12;

/// Diagonal phases `θ_1..θ_n` plus the column vectors `z_2..z_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CcskParams {
    thetas: Vec<f64>,
    z_columns: Vec<ComplexVector>,
}

impl CcskParams {
    /// Validates shapes (`z_columns[k]` has length `k + 1`) and finiteness.
    pub fn new(thetas: Vec<f64>, z_columns: Vec<ComplexVector>) -> Result<Self> {
        let n = thetas.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        if z_columns.len() != n - 1 {
            return Err(Error::Shape(format!(
                "expected {} z columns for n = {n}, got {}",
                n - 1,
                z_columns.len()
            )));
        }
        for (k, z) in z_columns.iter().enumerate() {
            if z.len() != k + 1 {
                return Err(Error::Shape(format!(
                    "z_{} must have length {}, got {}",
                    k + 2,
                    k + 1,
                    z.len()
                )));
            }
        }
        if let Some(k) = thetas.iter().position(|t| !t.is_finite()) {
            return Err(Error::NonFinite { row: k, col: k });
        }
        Ok(Self { thetas, z_columns })
    }

    /// All-zero parameters; they compose to the identity.
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1);
        Self {
            thetas: vec![0.0; n],
            z_columns: (1..n).map(ComplexVector::zeros).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.thetas.len()
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    /// `z_2, z_3, …, z_n` in order.
    pub fn z_columns(&self) -> &[ComplexVector] {
        &self.z_columns
    }

    /// `z_j` for `2 <= j <= n`.
    pub fn z(&self, j: usize) -> &ComplexVector {
        assert!(j >= 2 && j <= self.n(), "column index {j} out of range");
        &self.z_columns[j - 2]
    }

    /// `ρ_j = ‖z_j‖₂` for `j = 2..=n`.
    pub fn rhos(&self) -> Vec<f64> {
        self.z_columns.iter().map(ComplexVector::norm).collect()
    }

    /// Number of real degrees of freedom; always `n²`.
    pub fn real_parameter_count(&self) -> usize {
        self.thetas.len() + 2 * self.z_columns.iter().map(ComplexVector::len).sum::<usize>()
    }

    /// True when every θ lies in `(−π, π]` and every `ρ_j` in `[0, π/2]`.
    pub fn is_canonical(&self) -> bool {
        self.thetas.iter().all(|t| *t > -PI && *t <= PI)
            && self.rhos().iter().all(|r| *r <= PI / 2.0)
    }

    pub(crate) fn from_parts_unchecked(thetas: Vec<f64>, z_columns: Vec<ComplexVector>) -> Self {
        debug_assert!(Self::new(thetas.clone(), z_columns.clone()).is_ok());
        Self { thetas, z_columns }
    }

    pub(crate) fn thetas_mut(&mut self) -> &mut [f64] {
        &mut self.thetas
    }
}

/// A validated element of `u(n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    x: ComplexMatrix,
}

impl Generator {
    /// Accepts `x` when it is square and `‖X† + X‖_F ≤ 1e-12·n`.
    pub fn new(x: ComplexMatrix) -> Result<Self> {
        require_square(&x)?;
        let tol = GENERATOR_TOL_PER_DIM * x.n_rows() as f64;
        let defect = anti_hermiticity_defect(&x)?;
        if defect > tol {
            return Err(Error::NotAntiHermitian { defect, tol });
        }
        Ok(Self { x })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.x
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.x
    }

    pub fn n(&self) -> usize {
        self.x.n_rows()
    }
}

/// Writes out the generator: `iθ_k` on the diagonal, `z_j` above it in
/// column `j`, and `−conj` mirrored below.
pub fn assemble_generator(p: &CcskParams) -> Generator {
    let n = p.n();
    let mut x = ComplexMatrix::zeros(n, n);
    for (k, theta) in p.thetas().iter().enumerate() {
        x[(k, k)] = Complex64::new(0.0, *theta);
    }
    for (col, z) in p.z_columns().iter().enumerate().map(|(k, z)| (k + 1, z)) {
        for (row, v) in z.iter().enumerate() {
            x[(row, col)] = *v;
            x[(col, row)] = -v.conj();
        }
    }
    Generator { x }
}

/// The pieces `X₀` and `X_2..X_n` of a generator.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitGenerator {
    /// Diagonal part.
    pub x0: ComplexMatrix,
    /// `blocks[j - 2]` is `X_j`: column `j` above the diagonal and its
    /// mirrored row, zero elsewhere.
    pub blocks: Vec<ComplexMatrix>,
}

impl SplitGenerator {
    /// `X₀ + Σ X_j`.
    pub fn reassemble(&self) -> ComplexMatrix {
        self.blocks.iter().fold(self.x0.clone(), |acc, b| &acc + b)
    }
}

pub fn split_generator(g: &Generator) -> SplitGenerator {
    let x = g.matrix();
    let n = g.n();
    let mut x0 = ComplexMatrix::zeros(n, n);
    for k in 0..n {
        x0[(k, k)] = x[(k, k)];
    }
    let blocks = (1..n)
        .map(|col| {
            let mut b = ComplexMatrix::zeros(n, n);
            for row in 0..col {
                b[(row, col)] = x[(row, col)];
                b[(col, row)] = x[(col, row)];
            }
            b
        })
        .collect();
    SplitGenerator { x0, blocks }
}

/// Reads `θ` from the diagonal and `z_j` from the strict upper triangle.
pub fn params_from_generator(g: &Generator) -> Result<CcskParams> {
    let x = g.matrix();
    let n = g.n();
    let mut thetas = Vec::with_capacity(n);
    for k in 0..n {
        let d = x[(k, k)];
        if d.re.abs() > DIAGONAL_REAL_TOL {
            return Err(Error::NotAntiHermitian {
                defect: 2.0 * d.re.abs(),
                tol: 2.0 * DIAGONAL_REAL_TOL,
            });
        }
        thetas.push(d.im);
    }
    let z_columns = (1..n)
        .map(|col| {
            let entries: Vec<Complex64> = (0..col).map(|row| x[(row, col)]).collect();
            ComplexVector::from_vec_unchecked(entries)
        })
        .collect();
    Ok(CcskParams::from_parts_unchecked(thetas, z_columns))
}
