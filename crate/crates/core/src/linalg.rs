//! Linear algebra over F_2 on bit-packed vectors.
//!
//! Vectors of dimension `n <= 32` are `u32` values; bit `j` is coordinate
//! `x_{j+1}`. A matrix is stored as rows, so `(A x)_i = parity(row_i & x)`.

use rand::Rng;

use crate::error::{Error, Result};

#[inline]
pub fn parity(x: u32) -> u32 {
    x.count_ones() & 1
}

/// Inner product `u . x` over F_2.
#[inline]
pub fn dot(u: u32, x: u32) -> u32 {
    parity(u & x)
}

/// Square binary matrix of dimension `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n: usize,
    rows: Vec<u32>,
}

impl BitMatrix {
    pub fn identity(n: usize) -> Self {
        assert!(n <= 32);
        BitMatrix {
            n,
            rows: (0..n).map(|i| 1u32 << i).collect(),
        }
    }

    pub fn zero(n: usize) -> Self {
        assert!(n <= 32);
        BitMatrix { n, rows: vec![0; n] }
    }

    /// Builds a matrix from its rows; entries beyond column `n` must be zero.
    pub fn from_rows(rows: Vec<u32>) -> Result<Self> {
        let n = rows.len();
        if n > 32 {
            return Err(Error::range("matrix dimension", n as u64, "at most 32"));
        }
        let mask = low_mask(n);
        if let Some(r) = rows.iter().find(|&&r| r & !mask != 0) {
            return Err(Error::domain(format!("row {r:#x} has bits beyond column {n}")));
        }
        Ok(BitMatrix { n, rows })
    }

    /// Builds a matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(cols: &[u32]) -> Result<Self> {
        let n = cols.len();
        let mut rows = vec![0u32; n];
        for (j, &c) in cols.iter().enumerate() {
            for (i, row) in rows.iter_mut().enumerate() {
                *row |= ((c >> i) & 1) << j;
            }
        }
        Self::from_rows(rows)
    }

    /// Permutation matrix sending coordinate `j` to coordinate `perm[j]`.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let cols: Vec<u32> = perm.iter().map(|&p| 1u32 << p).collect();
        let m = Self::from_columns(&cols)?;
        if !m.is_invertible() {
            return Err(Error::domain("coordinate map is not a permutation"));
        }
        Ok(m)
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mask = low_mask(n);
        BitMatrix {
            n,
            rows: (0..n).map(|_| rng.gen::<u32>() & mask).collect(),
        }
    }

    /// Uniform sample from GL(n, 2) by rejection.
    pub fn random_invertible<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        loop {
            let m = Self::random(n, rng);
            if m.is_invertible() {
                return m;
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &r)| acc | (dot(r, x) << i))
    }

    pub fn rank(&self) -> usize {
        rank(&self.rows)
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    /// Gauss-Jordan inverse; `Domain` error when singular.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut a = self.rows.clone();
        let mut inv: Vec<u32> = (0..n).map(|i| 1u32 << i).collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| (a[r] >> col) & 1 == 1)
                .ok_or_else(|| Error::domain("matrix is singular"))?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            for r in 0..n {
                if r != col && (a[r] >> col) & 1 == 1 {
                    a[r] ^= a[col];
                    inv[r] ^= inv[col];
                }
            }
        }
        Ok(BitMatrix { n, rows: inv })
    }

    /// Matrix product `self * other` (apply `other` first).
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.n, other.n);
        let cols: Vec<u32> = (0..other.n).map(|j| self.apply(other.column(j))).collect();
        BitMatrix::from_columns(&cols).expect("product of n x n matrices")
    }

    pub fn column(&self, j: usize) -> u32 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &r)| acc | (((r >> j) & 1) << i))
    }

    pub fn transpose(&self) -> BitMatrix {
        let cols = self.rows.clone();
        BitMatrix::from_columns(&cols).expect("square")
    }
}

/// Affine map `x -> A x + b` on F_2^n. `A` need not be invertible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    pub matrix: BitMatrix,
    pub offset: u32,
}

impl AffineMap {
    pub fn new(matrix: BitMatrix, offset: u32) -> Self {
        AffineMap { matrix, offset }
    }

    pub fn identity(n: usize) -> Self {
        AffineMap::new(BitMatrix::identity(n), 0)
    }

    pub fn zero(n: usize) -> Self {
        AffineMap::new(BitMatrix::zero(n), 0)
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.matrix.apply(x) ^ self.offset
    }
}

#[inline]
pub(crate) fn low_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Rank of a set of vectors.
pub fn rank(vectors: &[u32]) -> usize {
    echelon_basis(vectors).len()
}

/// Reduced basis of the span of `vectors`, one vector per distinct leading bit.
pub fn echelon_basis(vectors: &[u32]) -> Vec<u32> {
    let mut basis: Vec<u32> = Vec::new();
    for &v in vectors {
        let mut v = v;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            // keep sorted descending so the greedy reduction above is exact
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis
}

/// All `2^k` elements of the span of a linearly independent `basis`, in
/// Gray-code order starting at 0.
pub fn span(basis: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(1 << basis.len());
    out.push(0);
    for &b in basis {
        let len = out.len();
        for i in 0..len {
            out.push(out[i] ^ b);
        }
    }
    out
}
