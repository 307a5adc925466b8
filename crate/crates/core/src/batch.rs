//! Batch evaluation over many independent inputs.
//!
//! With the `parallel` feature (on by default) the `*_batch` functions fan
//! out over rayon's global pool; without it they fall back to the
//! `*_sequential` versions. Every item is computed by the same pure
//! function either way, so results are bit-identical between the two.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::block_exp::compose;
use crate::decompose::{roundtrip_error, DecomposeOptions};
use crate::dense::{unitarity_defect, ComplexMatrix};
use crate::error::Result;
use crate::params::CcskParams;
use crate::random::{random_params, RngState};

/// Maps `f` over `items`, in parallel when the `parallel` feature is on.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_sequential(items, f)
    }
}

pub fn map_sequential<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

/// One seeded parameter set per `(n, seed)` pair.
pub fn random_params_batch(specs: &[(usize, u64)]) -> Vec<CcskParams> {
    map(specs, |&(n, seed)| {
        random_params(n, &mut RngState::new(seed))
    })
}

pub fn compose_batch(params: &[CcskParams]) -> Vec<ComplexMatrix> {
    map(params, compose)
}

pub fn compose_sequential(params: &[CcskParams]) -> Vec<ComplexMatrix> {
    map_sequential(params, compose)
}

pub fn unitarity_defects(matrices: &[ComplexMatrix]) -> Vec<Result<f64>> {
    map(matrices, unitarity_defect)
}

pub fn roundtrip_errors(matrices: &[ComplexMatrix], opts: &DecomposeOptions) -> Vec<Result<f64>> {
    map(matrices, |u| roundtrip_error(u, opts))
}

pub fn roundtrip_errors_sequential(
    matrices: &[ComplexMatrix],
    opts: &DecomposeOptions,
) -> Vec<Result<f64>> {
    map_sequential(matrices, |u| roundtrip_error(u, opts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn batch_and_sequential_agree_bitwise() {
        let specs: Vec<(usize, u64)> = (0..24).map(|k| (1 + k % 12, 1000 + k as u64)).collect();
        let params = random_params_batch(&specs);
        let a = compose_batch(&params);
        let b = compose_sequential(&params);
        assert_eq!(a, b);

        let opts = DecomposeOptions::default();
        let ra = roundtrip_errors(&a, &opts);
        let rb = roundtrip_errors_sequential(&a, &opts);
        assert_eq!(ra, rb);
        assert!(ra.iter().all(|r| r.is_ok()));
    }

    #[test]
    fn batch_preserves_order() {
        let specs = [(3, 1), (5, 2), (2, 3)];
        let params = random_params_batch(&specs);
        let dims: Vec<usize> = params.iter().map(CcskParams::n).collect();
        assert_eq!(dims, vec![3, 5, 2]);
        assert_eq!(params[1], random_params(5, &mut RngState::new(2)));
    }
}
