//! Seeded, reproducible random parameters and unitaries.
//!
//! The stream is SplitMix64 (Steele, Lea & Flood): the state advances by
//! the constant `0x9E3779B97F4A7C15` and each output is the state passed
//! through a fixed xor-shift/multiply finaliser. It is fully specified by
//! the 64-bit seed and platform independent. Reference outputs for seed 0:
//!
//! ```text
//! 0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F
//! ```
//!
//! Uniform reals take the top 53 bits of one output (`[0, 1)`); normals
//! use the ziggurat sampler from `rand_distr`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rand::{Rng, RngCore, SeedableRng};
use rand_distr::StandardNormal;
use rand_xoshiro::SplitMix64;

use crate::block_exp::compose;
use crate::dense::{ComplexMatrix, ComplexVector};
use crate::params::CcskParams;

/// Single-owner random stream. Clone it to fork an identical stream; use
/// distinct seeds for independent parallel streams.
#[derive(Debug, Clone)]
pub struct RngState {
    seed: u64,
    draws: u64,
    inner: SplitMix64,
}

impl RngState {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            draws: 0,
            inner: SplitMix64::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of samples drawn so far (a normal deviate counts as one).
    pub fn draws(&self) -> u64 {
        self.draws
    }

    pub fn next_u64(&mut self) -> u64 {
        self.draws += 1;
        self.inner.next_u64()
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        self.draws += 1;
        self.inner.random::<f64>()
    }

    /// Standard normal deviate.
    pub fn next_normal(&mut self) -> f64 {
        self.draws += 1;
        self.inner.sample(StandardNormal)
    }
}

/// Uniformly distributed unit vector in `C^len` (normalised complex
/// Gaussian).
pub fn random_unit_vector(len: usize, rng: &mut RngState) -> ComplexVector {
    assert!(len >= 1);
    loop {
        let entries: Vec<Complex64> = (0..len)
            .map(|_| Complex64::new(rng.next_normal(), rng.next_normal()))
            .collect();
        let v = ComplexVector::from_vec_unchecked(entries);
        let norm = v.norm();
        if norm > 0.0 {
            return v.scale(1.0 / norm);
        }
    }
}

/// Canonical parameters: `θ_k` uniform in `(−π, π]`, and `z_j = ρ z̃` with
/// `ρ` uniform in `[0, π/2)` and `z̃` a uniform unit vector.
pub fn random_params(n: usize, rng: &mut RngState) -> CcskParams {
    assert!(n >= 1, "dimension must be at least 1");
    let thetas = (0..n).map(|_| PI - 2.0 * PI * rng.next_f64()).collect();
    let z_columns = (1..n)
        .map(|len| {
            let rho = FRAC_PI_2 * rng.next_f64();
            random_unit_vector(len, rng).scale(rho)
        })
        .collect();
    CcskParams::from_parts_unchecked(thetas, z_columns)
}

/// `compose(random_params(n))`. Covers all of `U(n)` but is not
/// Haar-distributed.
pub fn random_unitary(n: usize, rng: &mut RngState) -> ComplexMatrix {
    compose(&random_params(n, rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::unitarity_defect;

    #[test]
    fn splitmix_reference_vectors() {
        let mut rng = RngState::new(0);
        assert_eq!(rng.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(rng.next_u64(), 0x6E78_9E6A_A1B9_65F4);
        assert_eq!(rng.next_u64(), 0x06C4_5D18_8009_454F);
        assert_eq!(rng.draws(), 3);
        assert_eq!(rng.seed(), 0);
    }

    #[test]
    fn uniform_uses_top_53_bits() {
        let mut a = RngState::new(99);
        let mut b = RngState::new(99);
        let expected = (a.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        assert_eq!(b.next_f64(), expected);
    }

    #[test]
    fn params_shapes_and_ranges() {
        let mut rng = RngState::new(5);
        let p = random_params(1, &mut rng);
        assert_eq!(p.thetas().len(), 1);
        assert!(p.z_columns().is_empty());

        for n in 2..10 {
            let p = random_params(n, &mut rng);
            assert!(p.is_canonical());
            assert_eq!(p.real_parameter_count(), n * n);
        }
    }

    #[test]
    fn same_seed_same_params() {
        let a = random_params(7, &mut RngState::new(123));
        let b = random_params(7, &mut RngState::new(123));
        assert_eq!(a, b);
        let c = random_params(7, &mut RngState::new(124));
        assert_ne!(a, c);
    }

    #[test]
    fn cloned_state_forks_identical_stream() {
        let mut a = RngState::new(8);
        a.next_normal();
        let mut b = a.clone();
        assert_eq!(a.next_normal().to_bits(), b.next_normal().to_bits());
    }

    #[test]
    fn composed_random_params_are_unitary() {
        let p = random_params(6, &mut RngState::new(42));
        assert!(unitarity_defect(&compose(&p)).unwrap() <= 1e-12 * 6.0);
    }

    #[test]
    fn random_unitary_cases() {
        let mut rng = RngState::new(6);
        let u = random_unitary(1, &mut rng);
        assert!((u[(0, 0)].norm() - 1.0).abs() <= 1e-15);
        for n in 1..=16 {
            let u = random_unitary(n, &mut rng);
            assert!(unitarity_defect(&u).unwrap() <= 1e-12 * n as f64);
        }
    }

    #[test]
    fn unit_vectors_have_unit_norm() {
        let mut rng = RngState::new(7);
        for len in 1..10 {
            let v = random_unit_vector(len, &mut rng);
            assert!((v.norm() - 1.0).abs() <= 1e-15);
        }
    }
}
