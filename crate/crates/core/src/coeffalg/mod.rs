//! The coefficient algebra `M_n(C)` and group actions on it.

mod action;
mod complex;

pub use action::{
    parse_matrix_list, random_unitary, ActionKind, ActionSpec, GroupAction, Implementer, UNITARY_TOL,
};
pub use complex::{format_complex, parse_complex};

use std::ops::{Add, Mul};

use nalgebra::DMatrix;

use crate::error::{Error, Result};

pub type C64 = num_complex::Complex64;

/// Relative tolerance for Hermitian/positivity checks.
pub const POSITIVITY_TOL: f64 = 1e-8;

/// An `n × n` complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffOp {
    m: DMatrix<C64>,
}

impl CoeffOp {
    pub fn from_matrix(m: DMatrix<C64>) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() == 0 {
            return Err(Error::DimensionMismatch {
                expected: m.nrows().max(1),
                found: m.ncols(),
            });
        }
        Ok(CoeffOp { m })
    }

    /// From row-major entries.
    pub fn from_rows(n: usize, entries: &[C64]) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        Ok(CoeffOp {
            m: DMatrix::from_row_slice(n, n, entries),
        })
    }

    pub fn scalar(z: C64) -> Self {
        CoeffOp {
            m: DMatrix::from_element(1, 1, z),
        }
    }

    pub fn identity(n: usize) -> Self {
        CoeffOp {
            m: DMatrix::identity(n, n),
        }
    }

    pub fn zero(n: usize) -> Self {
        CoeffOp {
            m: DMatrix::zeros(n, n),
        }
    }

    pub fn diag(values: &[C64]) -> Self {
        let n = values.len();
        let mut m = DMatrix::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = *v;
        }
        CoeffOp { m }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.m
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.m[(i, j)]
    }

    /// Row-major copy of the entries.
    pub fn row_major(&self) -> Vec<C64> {
        let n = self.dim();
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                out.push(self.m[(i, j)]);
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        CoeffOp {
            m: self.m.adjoint(),
        }
    }

    pub fn scale(&self, z: C64) -> Self {
        CoeffOp { m: &self.m * z }
    }

    /// Exact structural zero: every entry compares equal to `0`.
    pub fn is_zero(&self) -> bool {
        self.m.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    /// A multiple of the identity.
    pub fn is_scalar(&self) -> bool {
        let d = self.m[(0, 0)];
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.m[(i, j)] == if i == j { d } else { C64::new(0.0, 0.0) }))
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Largest absolute entry difference.
    pub fn max_abs_diff(&self, other: &CoeffOp) -> f64 {
        self.m
            .iter()
            .zip(other.m.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    fn check_dim(&self, other: &CoeffOp) -> Result<()> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            })
        }
    }

    pub fn try_mul(&self, other: &CoeffOp) -> Result<CoeffOp> {
        self.check_dim(other)?;
        Ok(CoeffOp {
            m: &self.m * &other.m,
        })
    }

    pub fn try_add(&self, other: &CoeffOp) -> Result<CoeffOp> {
        self.check_dim(other)?;
        Ok(CoeffOp {
            m: &self.m + &other.m,
        })
    }

    /// `‖a‖`: the largest singular value.
    pub fn op_norm(&self) -> f64 {
        if self.dim() == 1 {
            return self.m[(0, 0)].norm();
        }
        self.m
            .clone()
            .singular_values()
            .iter()
            .copied()
            .fold(0.0, f64::max)
    }

    /// `‖a*a‖^{1/2}` through a Hermitian eigensolver; cross-check for [`CoeffOp::op_norm`].
    pub fn op_norm_via_gram(&self) -> f64 {
        hermitian_extremes(&(self.m.adjoint() * &self.m)).1.max(0.0).sqrt()
    }
}

impl Add for &CoeffOp {
    type Output = CoeffOp;
    fn add(self, rhs: &CoeffOp) -> CoeffOp {
        self.try_add(rhs).expect("coefficient dimensions differ")
    }
}

impl Mul for &CoeffOp {
    type Output = CoeffOp;
    fn mul(self, rhs: &CoeffOp) -> CoeffOp {
        self.try_mul(rhs).expect("coefficient dimensions differ")
    }
}

/// Smallest and largest eigenvalue of the Hermitian part of `m`.
pub(crate) fn hermitian_extremes(m: &DMatrix<C64>) -> (f64, f64) {
    if m.nrows() == 1 {
        let v = m[(0, 0)].re;
        return (v, v);
    }
    let h = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let eig = h.symmetric_eigenvalues();
    let lo = eig.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = eig.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (lo, hi)
}

/// `‖Σ a_i‖` for Hermitian positive semidefinite summands.
///
/// The sum is checked to be Hermitian and to have no eigenvalue below
/// `-1e-8 · scale`, where `scale` is the largest summand entry.
pub fn positive_part_norm(terms: &[CoeffOp]) -> Result<f64> {
    let Some(first) = terms.first() else {
        return Ok(0.0);
    };
    let n = first.dim();
    let mut sum = DMatrix::<C64>::zeros(n, n);
    let mut scale = 0.0f64;
    for t in terms {
        if t.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: t.dim(),
            });
        }
        scale = scale.max(t.m.iter().map(|z| z.norm()).fold(0.0, f64::max));
        sum += &t.m;
    }
    positive_matrix_norm(&sum, scale)
}

pub(crate) fn positive_matrix_norm(sum: &DMatrix<C64>, scale: f64) -> Result<f64> {
    let scale = scale.max(sum.iter().map(|z| z.norm()).fold(0.0, f64::max)).max(f64::MIN_POSITIVE);
    let skew = (sum - sum.adjoint())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if skew > POSITIVITY_TOL * scale {
        return Err(Error::NotPositive { deviation: skew });
    }
    let (lo, hi) = hermitian_extremes(sum);
    if lo < -POSITIVITY_TOL * scale {
        return Err(Error::NotPositive { deviation: -lo });
    }
    Ok(hi.max(0.0))
}

#[cfg(test)]
pub(crate) mod testutil {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub fn random_op(n: usize, seed: u64) -> CoeffOp {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let entries: Vec<C64> = (0..n * n)
            .map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        CoeffOp::from_rows(n, &entries).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::testutil::random_op;
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn norms_of_simple_operators() {
        assert!((CoeffOp::identity(3).op_norm() - 1.0).abs() < 1e-12);
        assert!((CoeffOp::diag(&[c(3.0), c(-4.0)]).op_norm() - 4.0).abs() < 1e-12);
        assert_eq!(CoeffOp::scalar(C64::new(3.0, 4.0)).op_norm(), 5.0);
        assert_eq!(CoeffOp::zero(2).op_norm(), 0.0);
    }

    #[test]
    fn c_star_identity_and_two_routes() {
        for seed in 0..20 {
            let a = random_op(5, seed);
            let na = a.op_norm();
            let ata = &a.adjoint() * &a;
            assert!((ata.op_norm() - na * na).abs() <= 1e-8 * na * na);
            assert!((a.op_norm_via_gram() - na).abs() <= 1e-8 * na);
            let b = random_op(5, seed + 100);
            assert!((&a * &b).op_norm() <= na * b.op_norm() * (1.0 + 1e-10));
        }
    }

    #[test]
    fn positive_part() {
        assert!((positive_part_norm(&[CoeffOp::identity(2)]).unwrap() - 1.0).abs() < 1e-12);
        let a = random_op(3, 7);
        let ata = &a.adjoint() * &a;
        let single = positive_part_norm(std::slice::from_ref(&ata)).unwrap();
        assert!((single - a.op_norm().powi(2)).abs() < 1e-8 * single);

        let b = random_op(3, 8);
        let btb = &b.adjoint() * &b;
        let got = positive_part_norm(&[ata.clone(), btb.clone()]).unwrap();
        // oracle: singular values of the (Hermitian) sum
        let sum = (&ata + &btb).into_matrix();
        let oracle = sum.singular_values().iter().copied().fold(0.0, f64::max);
        assert!((got - oracle).abs() < 1e-8 * oracle);
    }

    #[test]
    fn positive_part_rejects_non_hermitian() {
        let a = CoeffOp::from_rows(2, &[c(1.0), c(1.0), c(0.0), c(1.0)]).unwrap();
        assert!(matches!(positive_part_norm(&[a]), Err(Error::NotPositive { .. })));
        let neg = CoeffOp::diag(&[c(1.0), c(-1.0)]);
        assert!(matches!(positive_part_norm(&[neg]), Err(Error::NotPositive { .. })));
        assert!(positive_part_norm(&[CoeffOp::identity(2), CoeffOp::identity(3)]).is_err());
    }

    #[test]
    fn zero_detection_is_structural() {
        assert!(CoeffOp::zero(2).is_zero());
        assert!(!CoeffOp::diag(&[c(1e-300), c(0.0)]).is_zero());
    }
}
