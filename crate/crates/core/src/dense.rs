//! Dense complex matrices and vectors.
//!
//! Only the handful of kernels the parametrisation needs: products,
//! adjoints, Frobenius norms and the two membership defects for `U(n)` and
//! `u(n)`. Finiteness is checked once, when a container is built from
//! caller-supplied data; the kernels themselves never re-check.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense complex column vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector {
    data: Vec<Complex64>,
}

impl ComplexVector {
    /// Builds a vector, rejecting empty input and non-finite entries.
    pub fn new(data: Vec<Complex64>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(i) = data.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite { row: i, col: 0 });
        }
        Ok(Self { data })
    }

    pub fn zeros(len: usize) -> Self {
        assert!(len >= 1, "vector length must be at least 1");
        Self {
            data: vec![ZERO; len],
        }
    }

    pub(crate) fn from_vec_unchecked(data: Vec<Complex64>) -> Self {
        debug_assert!(!data.is_empty());
        Self { data }
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    /// Always false; kept for the `len`/`is_empty` pairing clippy expects.
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Complex64> {
        self.data.iter()
    }

    /// Euclidean norm, computed in two passes (max-abs scaling, then the
    /// scaled sum of squares) so tiny and huge vectors keep full precision.
    pub fn norm(&self) -> f64 {
        stable_norm(&self.data)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            data: self.data.iter().map(|c| c * s).collect(),
        }
    }

    /// `|self⟩⟨other|` as a `len x len` matrix.
    pub fn outer(&self, other: &ComplexVector) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.len(), other.len());
        for (i, a) in self.data.iter().enumerate() {
            for (j, b) in other.data.iter().enumerate() {
                out[(i, j)] = a * b.conj();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| *c == ZERO)
    }
}

impl Index<usize> for ComplexVector {
    type Output = Complex64;

    fn index(&self, i: usize) -> &Complex64 {
        &self.data[i]
    }
}

pub(crate) fn stable_norm(entries: &[Complex64]) -> f64 {
    let scale = entries
        .iter()
        .map(|c| c.re.abs().max(c.im.abs()))
        .fold(0.0_f64, f64::max);
    if scale == 0.0 {
        return 0.0;
    }
    let sum: f64 = entries
        .iter()
        .map(|c| {
            let re = c.re / scale;
            let im = c.im / scale;
            re * re + im * im
        })
        .sum();
    scale * sum.sqrt()
}

/// Dense complex matrix, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major data, validating shape and finiteness.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Empty);
        }
        if data.len() != rows * cols {
            return Err(Error::DataLength {
                rows,
                cols,
                len: data.len(),
            });
        }
        if let Some(k) = data.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite {
                row: k / cols,
                col: k % cols,
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from nested rows. All rows must have equal length.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != n_cols) {
            return Err(Error::DataLength {
                rows: n_rows,
                cols: n_cols,
                len: bad.len(),
            });
        }
        Self::new(n_rows, n_cols, rows.concat())
    }

    /// Real-valued convenience constructor, mainly for tests and fixtures.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(
            rows >= 1 && cols >= 1,
            "matrix dimensions must be at least 1"
        );
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = *d;
        }
        m
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_iter(&self) -> std::slice::Chunks<'_, Complex64> {
        self.data.chunks(self.cols)
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|c| c * s).collect(),
        }
    }

    /// Frobenius distance `‖self − other‖_F`.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        check_same_shape("distance", self, other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        check_same_shape("max_abs_diff", self, other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Copy of the leading `k x k` block.
    pub fn leading_block(&self, k: usize) -> Self {
        assert!(k >= 1 && k <= self.rows && k <= self.cols);
        let mut out = Self::zeros(k, k);
        for i in 0..k {
            out.data[i * k..(i + 1) * k].copy_from_slice(&self.row(i)[..k]);
        }
        out
    }

    /// `n x n` matrix holding `block` in its leading corner and the identity
    /// on the remaining coordinates.
    pub fn embed_leading(block: &Self, n: usize) -> Self {
        assert!(block.is_square() && block.rows <= n);
        let mut out = Self::identity(n);
        let k = block.rows;
        for i in 0..k {
            out.data[i * n..i * n + k].copy_from_slice(block.row(i));
        }
        out
    }

    /// Replaces the leading `k x k` block (rows and columns `0..k`) of `self`
    /// with `self[0..k, 0..k] · right`, where `right` is `k x k`.
    pub(crate) fn mul_leading_block_right(&mut self, right: &Self) {
        let k = right.rows;
        debug_assert!(right.is_square() && k <= self.rows && k <= self.cols);
        let mut scratch = vec![ZERO; k];
        for i in 0..k {
            let row = &mut self.data[i * self.cols..i * self.cols + k];
            for (j, s) in scratch.iter_mut().enumerate() {
                *s = row
                    .iter()
                    .enumerate()
                    .fold(ZERO, |acc, (l, a)| acc + a * right.data[l * k + j]);
            }
            row.copy_from_slice(&scratch);
        }
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|c| c.is_finite())
    }
}

fn check_same_shape(op: &'static str, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    if a.rows != b.rows || a.cols != b.cols {
        return Err(Error::DimensionMismatch {
            op,
            left_rows: a.rows,
            left_cols: a.cols,
            right_rows: b.rows,
            right_cols: b.cols,
        });
    }
    Ok(())
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Complex matrix product `a · b`.
pub fn mat_mul(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch {
            op: "mat_mul",
            left_rows: a.rows,
            left_cols: a.cols,
            right_rows: b.rows,
            right_cols: b.cols,
        });
    }
    let mut out = ComplexMatrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        let a_row = a.row(i);
        let out_row = &mut out.data[i * b.cols..(i + 1) * b.cols];
        for (l, a_il) in a_row.iter().enumerate() {
            if *a_il == ZERO {
                continue;
            }
            for (o, b_lj) in out_row.iter_mut().zip(b.row(l)) {
                *o += a_il * b_lj;
            }
        }
    }
    Ok(out)
}

fn elementwise(
    op: &'static str,
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    f: impl Fn(Complex64, Complex64) -> Complex64,
) -> Result<ComplexMatrix> {
    check_same_shape(op, a, b)?;
    Ok(ComplexMatrix {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(x, y)| f(*x, *y)).collect(),
    })
}

pub fn mat_add(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    elementwise("mat_add", a, b, |x, y| x + y)
}

pub fn mat_sub(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    elementwise("mat_sub", a, b, |x, y| x - y)
}

/// `‖U†U − I‖_F`. Zero, up to roundoff, exactly when `u` is unitary.
pub fn unitarity_defect(u: &ComplexMatrix) -> Result<f64> {
    require_square(u)?;
    let n = u.rows;
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            // (U†U)[i][j] = Σ_k conj(U[k][i]) U[k][j]
            let mut acc = ZERO;
            for k in 0..n {
                acc += u[(k, i)].conj() * u[(k, j)];
            }
            if i == j {
                acc -= ONE;
            }
            sum += acc.norm_sqr();
        }
    }
    Ok(sum.sqrt())
}

/// `‖X† + X‖_F`. Zero exactly when `x` is anti-Hermitian.
pub fn anti_hermiticity_defect(x: &ComplexMatrix) -> Result<f64> {
    require_square(x)?;
    let n = x.rows;
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            sum += (x[(j, i)].conj() + x[(i, j)]).norm_sqr();
        }
    }
    Ok(sum.sqrt())
}

pub(crate) fn require_square(m: &ComplexMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    Ok(())
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    /// Panics on a dimension mismatch; use [`mat_mul`] for a fallible product.
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        mat_mul(self, rhs).expect("matrix product dimension mismatch")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        mat_add(self, rhs).expect("matrix sum dimension mismatch")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        mat_sub(self, rhs).expect("matrix difference dimension mismatch")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::RngState;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_matrix(n: usize, rng: &mut RngState) -> ComplexMatrix {
        let data = (0..n * n)
            .map(|_| c(rng.next_f64() * 2.0 - 1.0, rng.next_f64() * 2.0 - 1.0))
            .collect();
        ComplexMatrix::new(n, n, data).unwrap()
    }

    #[test]
    fn identity_is_left_neutral() {
        let mut rng = RngState::new(1);
        let m = random_matrix(3, &mut rng);
        assert_eq!(mat_mul(&ComplexMatrix::identity(3), &m).unwrap(), m);
    }

    #[test]
    fn rotation_squared_is_minus_identity() {
        let r = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[-1.0, 0.0]]).unwrap();
        let expected = ComplexMatrix::from_real_rows(&[&[-1.0, 0.0], &[0.0, -1.0]]).unwrap();
        assert_eq!(&r * &r, expected);
    }

    #[test]
    fn product_is_associative() {
        let mut rng = RngState::new(2);
        let (a, b, cm) = (
            random_matrix(4, &mut rng),
            random_matrix(4, &mut rng),
            random_matrix(4, &mut rng),
        );
        let left = &(&a * &b) * &cm;
        let right = &a * &(&b * &cm);
        assert!(left.max_abs_diff(&right).unwrap() <= 1e-13);
    }

    #[test]
    fn mismatched_product_reports_both_shapes() {
        let a = ComplexMatrix::zeros(2, 3);
        let b = ComplexMatrix::zeros(2, 2);
        let err = mat_mul(&a, &b).unwrap_err();
        assert_eq!(
            err,
            Error::DimensionMismatch {
                op: "mat_mul",
                left_rows: 2,
                left_cols: 3,
                right_rows: 2,
                right_cols: 2
            }
        );
        assert!(err.to_string().contains("2x3"));
    }

    #[test]
    fn adjoint_cases() {
        let sym = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, -3.0]]).unwrap();
        assert_eq!(sym.adjoint(), sym);

        let i1 = ComplexMatrix::new(1, 1, vec![c(0.0, 1.0)]).unwrap();
        assert_eq!(i1.adjoint()[(0, 0)], c(0.0, -1.0));

        let mut rng = RngState::new(3);
        let a = random_matrix(3, &mut rng);
        let b = random_matrix(3, &mut rng);
        let lhs = (&a * &b).adjoint();
        let rhs = &b.adjoint() * &a.adjoint();
        assert!(lhs.max_abs_diff(&rhs).unwrap() <= 1e-14);
        assert_eq!(a.adjoint().adjoint(), a);
    }

    #[test]
    fn frobenius_norm_cases() {
        assert_eq!(ComplexMatrix::zeros(3, 3).frobenius_norm(), 0.0);
        for n in 1..6 {
            let norm = ComplexMatrix::identity(n).frobenius_norm();
            assert!((norm - (n as f64).sqrt()).abs() <= 1e-15);
        }
        let m = ComplexMatrix::new(2, 2, vec![c(3.0, 0.0), c(0.0, 4.0), ZERO, ZERO]).unwrap();
        assert_eq!(m.frobenius_norm(), 5.0);
    }

    #[test]
    fn unitarity_defect_cases() {
        assert_eq!(unitarity_defect(&ComplexMatrix::identity(5)).unwrap(), 0.0);

        let d = ComplexMatrix::from_diagonal(&[
            Complex64::from_polar(1.0, 0.7),
            Complex64::from_polar(1.0, -1.1),
        ]);
        assert!(unitarity_defect(&d).unwrap() <= 1e-15);

        let two = ComplexMatrix::identity(2).scale(c(2.0, 0.0));
        // (2I)†(2I) − I = 3·I₂, whose Frobenius norm is 3√2.
        let expected = 3.0 * 2.0_f64.sqrt();
        assert!((unitarity_defect(&two).unwrap() - expected).abs() <= 1e-15);

        assert!(matches!(
            unitarity_defect(&ComplexMatrix::zeros(2, 3)),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn anti_hermiticity_defect_cases() {
        let x = ComplexMatrix::new(1, 1, vec![c(0.0, 0.42)]).unwrap();
        assert_eq!(anti_hermiticity_defect(&x).unwrap(), 0.0);
        // ‖I† + I‖_F = ‖2·I₂‖_F = 2√2.
        let d = anti_hermiticity_defect(&ComplexMatrix::identity(2)).unwrap();
        assert!((d - 2.0 * 2.0_f64.sqrt()).abs() <= 1e-15);
        assert!(anti_hermiticity_defect(&ComplexMatrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn containers_reject_non_finite() {
        let err = ComplexMatrix::new(2, 2, vec![ONE, ONE, c(f64::NAN, 0.0), ONE]).unwrap_err();
        assert_eq!(err, Error::NonFinite { row: 1, col: 0 });
        assert!(ComplexVector::new(vec![c(0.0, f64::INFINITY)]).is_err());
        assert_eq!(ComplexVector::new(vec![]).unwrap_err(), Error::Empty);
        assert!(ComplexMatrix::new(2, 2, vec![ONE; 3]).is_err());
    }

    #[test]
    fn stable_norm_survives_tiny_and_huge_entries() {
        let tiny = ComplexVector::new(vec![c(3e-200, 0.0), c(0.0, 4e-200)]).unwrap();
        assert!((tiny.norm() / 5e-200 - 1.0).abs() <= 1e-15);
        let huge = ComplexVector::new(vec![c(3e200, 0.0), c(0.0, 4e200)]).unwrap();
        assert!((huge.norm() / 5e200 - 1.0).abs() <= 1e-15);
        assert_eq!(ComplexVector::zeros(3).norm(), 0.0);
    }

    #[test]
    fn leading_block_multiply_matches_embedded_product() {
        let mut rng = RngState::new(9);
        let m = random_matrix(5, &mut rng);
        let r = random_matrix(3, &mut rng);
        let mut fast = m.clone();
        fast.mul_leading_block_right(&r);
        // Only the leading 3x3 corner is updated.
        let mut expected = m.clone();
        let corner = &m.leading_block(3) * &r;
        for i in 0..3 {
            for j in 0..3 {
                expected[(i, j)] = corner[(i, j)];
            }
        }
        assert!(fast.max_abs_diff(&expected).unwrap() <= 1e-15);
    }
}
