//! Exact integer linear algebra over exponent matrices: lifting, rank,
//! integer kernel bases, bounded kernel enumeration, and the positive /
//! negative split of lattice vectors.

use num::{BigInt, Signed, Zero};
use thiserror::Error;

use crate::linalg;

/// Guard against runaway kernel enumeration: `(2·bound+1)^cols` candidates.
pub const DEFAULT_CELL_LIMIT: u128 = 100_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("exponent set must be nonempty")]
    Empty,
    #[error("exponent vector {0} has {1} entries, expected {2}")]
    WrongLength(usize, usize, usize),
    #[error("exponent vectors must be distinct (duplicate at index {0})")]
    Duplicate(usize),
    #[error("ambient dimension must be positive")]
    ZeroDimension,
    #[error("enumeration box of {0} cells exceeds the limit of {1}")]
    CellLimitExceeded(u128, u128),
    #[error("bound must be at least 1")]
    ZeroBound,
}

/// An ordered list of integer exponent vectors in ℤⁿ. Also acts as the
/// integer matrix whose columns are the vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentSet {
    n: usize,
    vectors: Vec<Vec<i64>>,
}

impl ExponentSet {
    pub fn new(n: usize, vectors: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        if n == 0 {
            return Err(LatticeError::ZeroDimension);
        }
        if vectors.is_empty() {
            return Err(LatticeError::Empty);
        }
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != n {
                return Err(LatticeError::WrongLength(i, v.len(), n));
            }
            if vectors[..i].contains(v) {
                return Err(LatticeError::Duplicate(i));
            }
        }
        Ok(ExponentSet { n, vectors })
    }

    /// Convenience constructor for one-dimensional exponent sets.
    pub fn segment_points(points: &[i64]) -> Result<Self, LatticeError> {
        Self::new(1, points.iter().map(|&p| vec![p]).collect())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Number of exponent vectors, `ℓ + 1`.
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vectors(&self) -> &[Vec<i64>] {
        &self.vectors
    }

    /// The `n × (ℓ+1)` matrix whose columns are the exponent vectors.
    pub fn matrix(&self) -> IntMat {
        let rows = (0..self.n)
            .map(|r| self.vectors.iter().map(|v| BigInt::from(v[r])).collect())
            .collect();
        IntMat::new(rows)
    }
}

/// Dense integer matrix, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: Vec<Vec<BigInt>>,
}

impl IntMat {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Self {
        if let Some(first) = rows.first() {
            let c = first.len();
            assert!(rows.iter().all(|r| r.len() == c), "ragged matrix");
        }
        IntMat { rows }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn transpose(&self) -> IntMat {
        let rows = (0..self.n_cols())
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        IntMat::new(rows)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.n_cols());
        self.rows
            .iter()
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// The lifted matrix `𝒜⁺`: a row of ones on top of the column matrix of `A`.
pub fn lift(a: &ExponentSet) -> IntMat {
    let mut rows = vec![vec![BigInt::from(1); a.len()]];
    rows.extend(a.matrix().rows.iter().cloned());
    IntMat::new(rows)
}

/// Rank over ℚ via exact fraction-free elimination.
pub fn rank(m: &IntMat) -> usize {
    linalg::rank_bareiss(m.rows())
}

/// ℤ-basis of `ker(M) ∩ ℤ^cols`, normalized (positive leading entry, sorted
/// lexicographically). Full-rank input yields the empty list.
pub fn integer_kernel_basis(m: &IntMat) -> Vec<Vec<BigInt>> {
    linalg::integer_kernel_basis(m.rows())
}

/// All nonzero integer kernel vectors with `‖u‖_∞ ≤ bound`, one
/// representative per `±` pair (positive leading entry), in lexicographic
/// order.
pub fn enumerate_kernel_vectors(
    m: &IntMat,
    bound: u32,
) -> Result<Vec<Vec<BigInt>>, LatticeError> {
    enumerate_kernel_vectors_with_limit(m, bound, DEFAULT_CELL_LIMIT)
}

pub fn enumerate_kernel_vectors_with_limit(
    m: &IntMat,
    bound: u32,
    cell_limit: u128,
) -> Result<Vec<Vec<BigInt>>, LatticeError> {
    if bound == 0 {
        return Err(LatticeError::ZeroBound);
    }
    let cols = m.n_cols();
    let width = 2 * bound as u128 + 1;
    let mut cells: u128 = 1;
    for _ in 0..cols {
        cells = cells.saturating_mul(width);
        if cells > cell_limit {
            return Err(LatticeError::CellLimitExceeded(cells, cell_limit));
        }
    }

    let b = bound as i64;
    let mut u = vec![-b; cols];
    let mut out = Vec::new();
    'outer: loop {
        if canonical_rep(&u) {
            let v: Vec<BigInt> = u.iter().map(|&x| BigInt::from(x)).collect();
            if m.mul_vec(&v).iter().all(Zero::is_zero) {
                out.push(v);
            }
        }
        // odometer, most significant digit first so output is lex sorted
        for i in (0..cols).rev() {
            if u[i] < b {
                u[i] += 1;
                for x in &mut u[i + 1..] {
                    *x = -b;
                }
                continue 'outer;
            }
        }
        break;
    }
    Ok(out)
}

fn canonical_rep(u: &[i64]) -> bool {
    match u.iter().find(|&&x| x != 0) {
        Some(&x) => x > 0,
        None => false,
    }
}

/// Write `u = u⁺ − u⁻` with both parts nonnegative and disjointly supported.
pub fn pos_neg_split(u: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let plus = u
        .iter()
        .map(|x| if x.is_positive() { x.clone() } else { BigInt::zero() })
        .collect();
    let minus = u
        .iter()
        .map(|x| if x.is_negative() { -x.clone() } else { BigInt::zero() })
        .collect();
    (plus, minus)
}
