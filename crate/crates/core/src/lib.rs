//! Unitary matrices in canonical coordinates of the second kind.
//!
//! An element of `u(n)` is written with diagonal phases `θ_k` and, for
//! each column `j = 2..=n`, the vector `z_j` of its entries above the
//! diagonal. Instead of exponentiating the whole generator, [`compose`]
//! multiplies the exponentials of its pieces,
//!
//! ```text
//!     U = e^{X₀} e^{X₂} ⋯ e^{Xₙ},
//! ```
//!
//! each of which has a closed form. [`decompose`] goes the other way,
//! recovering canonical parameters from any unitary matrix. The generic
//! [`expm`] is an independent reference for testing the closed forms.
//!
//! ```
//! use ccsk_core::{compose, decompose, random_params, DecomposeOptions, RngState};
//!
//! let p = random_params(4, &mut RngState::new(7));
//! let u = compose(&p);
//! let back = decompose(&u, &DecomposeOptions::default()).unwrap();
//! assert!(ccsk_core::compose(&back).distance(&u).unwrap() < 1e-12);
//! ```

pub mod batch;
pub mod block_exp;
pub mod decompose;
pub mod dense;
pub mod diagnostics;
pub mod error;
pub mod oracle;
pub mod params;
pub mod random;
pub mod special;

pub use num_complex::Complex64;

pub use block_exp::{compose, exp_column_factor, exp_diagonal, exp_k, k_matrix, KBlock};
pub use decompose::{decompose, normalize_thetas, roundtrip_error, wrap_angle, DecomposeOptions};
pub use dense::{anti_hermiticity_defect, mat_mul, unitarity_defect, ComplexMatrix, ComplexVector};
pub use diagnostics::{compare_with_oracle, DefectReport, OracleComparison};
pub use error::{Error, Result};
pub use oracle::expm;
pub use params::{
    assemble_generator, params_from_generator, split_generator, CcskParams, Generator,
    SplitGenerator,
};
pub use random::{random_params, random_unit_vector, random_unitary, RngState};
pub use special::{euler2_factorize, projector_form, Euler2Factors, ProjectorPair};
