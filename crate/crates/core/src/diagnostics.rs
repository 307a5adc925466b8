//! Numerical diagnostics that tie the closed forms to the oracle.

use crate::block_exp::{compose, exp_column_factor, exp_diagonal};
use crate::decompose::{decompose, DecomposeOptions};
use crate::dense::{unitarity_defect, ComplexMatrix};
use crate::error::Result;
use crate::oracle::expm;
use crate::params::{assemble_generator, split_generator, CcskParams};

#[derive(Debug, Clone, PartialEq)]
pub struct DefectReport {
    /// `‖U†U − I‖_F` of the matrix under test.
    pub unitarity_defect: f64,
    /// `‖compose(decompose(U)) − U‖_F`, when a decomposition was attempted.
    pub roundtrip_error: Option<f64>,
    /// Distance from the oracle, when one was evaluated.
    pub oracle_deviation: Option<f64>,
}

impl DefectReport {
    pub fn for_unitary(u: &ComplexMatrix, opts: &DecomposeOptions) -> Result<Self> {
        let unitarity_defect = unitarity_defect(u)?;
        let p = decompose(u, opts)?;
        Ok(Self {
            unitarity_defect,
            roundtrip_error: Some(compose(&p).distance(u)?),
            oracle_deviation: None,
        })
    }
}

/// Product map versus the exponential of the whole generator.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleComparison {
    /// `‖compose(p) − expm(X)‖_F`; generically large, the pieces of `X`
    /// do not commute.
    pub product_deviation: f64,
    /// `‖e^{X_j} − expm(X_j)‖_F` for `j = 2..=n`, closed form against oracle.
    pub factor_deviations: Vec<f64>,
    /// `‖e^{X₀} − expm(X₀)‖_F`.
    pub diagonal_deviation: f64,
}

impl OracleComparison {
    pub fn max_factor_deviation(&self) -> f64 {
        self.factor_deviations
            .iter()
            .copied()
            .fold(self.diagonal_deviation, f64::max)
    }
}

pub fn compare_with_oracle(p: &CcskParams) -> Result<OracleComparison> {
    let n = p.n();
    let generator = assemble_generator(p);
    let product_deviation = compose(p).distance(&expm(generator.matrix())?)?;
    let split = split_generator(&generator);
    let diagonal_deviation = exp_diagonal(p.thetas()).distance(&expm(&split.x0)?)?;
    let factor_deviations = p
        .z_columns()
        .iter()
        .zip(&split.blocks)
        .enumerate()
        .map(|(k, (z, block))| exp_column_factor(z, n, k + 2)?.distance(&expm(block)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(OracleComparison {
        product_deviation,
        factor_deviations,
        diagonal_deviation,
    })
}
