//! Two closed forms that fall out of the column factor: the phase ·
//! rotation · phase split for `n = 2`, and the projector form of the upper
//! `(j−1) x (j−1)` block of `e^K`.

use num_complex::Complex64;

use crate::dense::{ComplexMatrix, ComplexVector};
use crate::error::{Error, Result};

fn phase(angle: f64) -> Complex64 {
    Complex64::from_polar(1.0, angle)
}

fn real_rotation(angle: f64) -> ComplexMatrix {
    let (s, c) = angle.sin_cos();
    ComplexMatrix::from_real_rows(&[&[c, s], &[-s, c]]).expect("finite rotation")
}

/// `α = arg z`, with `arg 0 = 0`.
fn alpha_of(z: Complex64) -> f64 {
    if z == Complex64::new(0.0, 0.0) {
        0.0
    } else {
        z.arg()
    }
}

/// `e^{X₀} e^{X₂}` for `n = 2` written as phase · rotation · phase.
#[derive(Debug, Clone, PartialEq)]
pub struct Euler2Factors {
    /// `diag(e^{i(θ₁+α/2)}, e^{i(θ₂−α/2)})`
    pub left_phase: ComplexMatrix,
    /// Real rotation by `|z|`.
    pub rotation: ComplexMatrix,
    /// `diag(e^{−iα/2}, e^{iα/2})`
    pub right_phase: ComplexMatrix,
}

impl Euler2Factors {
    pub fn product(&self) -> ComplexMatrix {
        &(&self.left_phase * &self.rotation) * &self.right_phase
    }
}

pub fn euler2_factorize(theta1: f64, theta2: f64, z: Complex64) -> Euler2Factors {
    let alpha = alpha_of(z);
    Euler2Factors {
        left_phase: ComplexMatrix::from_diagonal(&[
            phase(theta1 + alpha / 2.0),
            phase(theta2 - alpha / 2.0),
        ]),
        rotation: real_rotation(z.norm()),
        right_phase: ComplexMatrix::from_diagonal(&[phase(-alpha / 2.0), phase(alpha / 2.0)]),
    }
}

/// `diag(e^{iθ₁}, e^{iθ₂}) · [[cos|z|, e^{iα} sin|z|], [−e^{−iα} sin|z|, cos|z|]]`
pub fn euler2_phase_rotation(theta1: f64, theta2: f64, z: Complex64) -> ComplexMatrix {
    let alpha = alpha_of(z);
    let (s, c) = z.norm().sin_cos();
    let e = phase(alpha);
    let rot = ComplexMatrix::new(
        2,
        2,
        vec![
            Complex64::new(c, 0.0),
            e * s,
            -e.conj() * s,
            Complex64::new(c, 0.0),
        ],
    )
    .expect("finite entries");
    &ComplexMatrix::from_diagonal(&[phase(theta1), phase(theta2)]) * &rot
}

/// `diag(e^{iθ₁}, e^{iθ₂}) · diag(e^{iα/2}, e^{−iα/2}) · R(|z|) · diag(e^{−iα/2}, e^{iα/2})`
pub fn euler2_conjugated_rotation(theta1: f64, theta2: f64, z: Complex64) -> ComplexMatrix {
    let alpha = alpha_of(z);
    let outer = ComplexMatrix::from_diagonal(&[phase(theta1), phase(theta2)]);
    let left = ComplexMatrix::from_diagonal(&[phase(alpha / 2.0), phase(-alpha / 2.0)]);
    let right = ComplexMatrix::from_diagonal(&[phase(-alpha / 2.0), phase(alpha / 2.0)]);
    &(&(&outer * &left) * &real_rotation(z.norm())) * &right
}

/// `P₀ = I − |z̃⟩⟨z̃|` and `P₁ = |z̃⟩⟨z̃|` for a nonzero `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectorPair {
    pub p0: ComplexMatrix,
    pub p1: ComplexMatrix,
    pub rho: f64,
}

impl ProjectorPair {
    /// `P₀ + cos ρ · P₁`
    pub fn cosine_block(&self) -> ComplexMatrix {
        &self.p0 + &self.p1.scale(Complex64::new(self.rho.cos(), 0.0))
    }

    /// `I − (1 − cos ρ) P₁`, the same block written the other way.
    pub fn shifted_identity_block(&self) -> ComplexMatrix {
        let n = self.p1.n_rows();
        let coef = 1.0 - self.rho.cos();
        &ComplexMatrix::identity(n) - &self.p1.scale(Complex64::new(coef, 0.0))
    }
}

pub fn projector_form(z: &ComplexVector) -> Result<ProjectorPair> {
    let rho = z.norm();
    if rho == 0.0 {
        return Err(Error::ZeroVector);
    }
    let ztilde = z.scale(1.0 / rho);
    let p1 = ztilde.outer(&ztilde);
    let p0 = &ComplexMatrix::identity(z.len()) - &p1;
    Ok(ProjectorPair { p0, p1, rho })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::FRAC_PI_4;

    use super::*;
    use crate::block_exp::{compose, exp_diagonal, exp_k};
    use crate::dense::unitarity_defect;
    use crate::params::CcskParams;
    use crate::random::{random_unit_vector, RngState};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn compose2(theta1: f64, theta2: f64, z: Complex64) -> ComplexMatrix {
        let p = CcskParams::new(
            vec![theta1, theta2],
            vec![ComplexVector::new(vec![z]).unwrap()],
        )
        .unwrap();
        compose(&p)
    }

    #[test]
    fn zero_z_gives_pure_phases() {
        let f = euler2_factorize(0.2, -0.5, c(0.0, 0.0));
        assert_eq!(f.rotation, ComplexMatrix::identity(2));
        let diff = f
            .product()
            .max_abs_diff(&exp_diagonal(&[0.2, -0.5]))
            .unwrap();
        assert!(diff <= 1e-16);
    }

    #[test]
    fn imaginary_z_quarter_pi() {
        let z = c(0.0, FRAC_PI_4);
        let f = euler2_factorize(0.0, 0.0, z);
        let s = FRAC_PI_4.sin();
        let co = FRAC_PI_4.cos();
        let expected =
            ComplexMatrix::new(2, 2, vec![c(co, 0.0), c(0.0, s), c(0.0, s), c(co, 0.0)]).unwrap();
        assert!(f.product().max_abs_diff(&expected).unwrap() <= 1e-15);
        assert!(f.product().distance(&compose2(0.0, 0.0, z)).unwrap() <= 1e-15);
    }

    #[test]
    fn factors_are_unitary_and_forms_agree() {
        let mut rng = RngState::new(61);
        for _ in 0..20 {
            let t1 = (rng.next_f64() - 0.5) * 6.0;
            let t2 = (rng.next_f64() - 0.5) * 6.0;
            let z = Complex64::from_polar(rng.next_f64() * 2.0, (rng.next_f64() - 0.5) * 6.0);
            let f = euler2_factorize(t1, t2, z);
            for m in [&f.left_phase, &f.rotation, &f.right_phase] {
                assert!(unitarity_defect(m).unwrap() <= 1e-14);
            }
            let direct = compose2(t1, t2, z);
            for form in [
                euler2_phase_rotation(t1, t2, z),
                euler2_conjugated_rotation(t1, t2, z),
                f.product(),
            ] {
                assert!(form.distance(&direct).unwrap() <= 1e-14);
            }
        }
    }

    #[test]
    fn one_dimensional_projector() {
        let pair = projector_form(&ComplexVector::new(vec![c(1.0, 0.0)]).unwrap()).unwrap();
        assert_eq!(pair.p1[(0, 0)], c(1.0, 0.0));
        assert_eq!(pair.p0[(0, 0)], c(0.0, 0.0));
        assert!((pair.cosine_block()[(0, 0)] - c(1.0_f64.cos(), 0.0)).norm() <= 1e-16);
    }

    #[test]
    fn projectors_complete_and_match_exp_k() {
        let v = ComplexVector::new(vec![c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
        let z = v.scale(0.7 / v.norm());
        let pair = projector_form(&z).unwrap();
        let sum = &pair.p0 + &pair.p1;
        assert!(sum.max_abs_diff(&ComplexMatrix::identity(2)).unwrap() <= 1e-15);
        assert!((pair.rho - 0.7).abs() <= 1e-15);

        let mut rng = RngState::new(62);
        let z = random_unit_vector(4, &mut rng).scale(1.2);
        let pair = projector_form(&z).unwrap();
        let block = exp_k(&z).leading_block(4);
        assert!(pair.cosine_block().max_abs_diff(&block).unwrap() <= 1e-13);
        assert!(
            pair.shifted_identity_block()
                .max_abs_diff(&pair.cosine_block())
                .unwrap()
                <= 1e-14
        );
    }

    #[test]
    fn zero_vector_has_no_projector() {
        assert_eq!(
            projector_form(&ComplexVector::zeros(3)).unwrap_err(),
            Error::ZeroVector
        );
    }
}
