//! Exact arithmetic over a prime field F_p and dense matrix rank computation.
//!
//! Everything downstream (multiplication matrices, cohomology ranks, emptiness
//! certificates) reduces to [`FpMatrix::rank`]. Elimination uses deterministic
//! pivoting — first nonzero row in column order — so ranks are reproducible
//! bit-for-bit across runs and platforms.

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Moduli are capped below 2^31 so a product of two reduced residues plus one
/// additive carry always fits in a `u64`.
const MAX_MODULUS: u64 = 1 << 31;

/// The arithmetic context F_p. Construction verifies that `p` is a prime > 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Standard computational-algebra prime used as the default modulus.
    pub const DEFAULT_PRIME: u64 = 32003;

    pub fn new(p: u64) -> Result<Self, Error> {
        if p >= MAX_MODULUS {
            return Err(Error::ModulusTooLarge(p));
        }
        if p <= 2 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    /// F_32003.
    pub fn default_field() -> Self {
        PrimeField {
            p: Self::DEFAULT_PRIME,
        }
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    pub fn reduce_u64(self, x: u64) -> u64 {
        x % self.p
    }

    pub fn reduce_i64(self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    pub fn add(self, x: u64, y: u64) -> u64 {
        let s = x + y;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(self, x: u64, y: u64) -> u64 {
        if x >= y {
            x - y
        } else {
            x + self.p - y
        }
    }

    pub fn neg(self, x: u64) -> u64 {
        if x == 0 {
            0
        } else {
            self.p - x
        }
    }

    pub fn mul(self, x: u64, y: u64) -> u64 {
        x * y % self.p
    }

    pub fn pow(self, base: u64, mut exp: u64) -> u64 {
        let mut base = base % self.p;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero residue (Fermat).
    pub fn inv(self, x: u64) -> u64 {
        debug_assert!(x != 0 && x < self.p);
        self.pow(x, self.p - 2)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    if n.is_multiple_of(3) {
        return n == 3;
    }
    let mut d = 5;
    while d * d <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// Dense row-major matrix over F_p. Entries are kept reduced in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl FpMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FpMatrix {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    /// Build from explicit rows, reducing entries mod p. All rows must have
    /// equal length.
    pub fn from_rows(data: &[Vec<u64>], ctx: PrimeField) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows * cols);
        for row in data {
            assert_eq!(row.len(), cols, "ragged rows");
            entries.extend(row.iter().map(|&x| ctx.reduce_u64(x)));
        }
        FpMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.entries[i * self.cols + j];
            }
        }
        t
    }

    pub fn matmul(&self, rhs: &FpMatrix, ctx: PrimeField) -> FpMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let p = ctx.modulus();
        let mut out = FpMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entries[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let cur = out.entries[i * rhs.cols + j];
                    out.entries[i * rhs.cols + j] = (cur + a * rhs.entries[k * rhs.cols + j]) % p;
                }
            }
        }
        out
    }

    /// Rank over F_p by row echelon elimination on a scratch copy.
    ///
    /// Pivoting is deterministic: columns are processed left to right and the
    /// pivot is the first row with a nonzero entry.
    pub fn rank(&self, ctx: PrimeField) -> usize {
        let p = ctx.modulus();
        let (r, c) = (self.rows, self.cols);
        if r == 0 || c == 0 {
            return 0;
        }
        let mut a = self.entries.clone();
        let mut pivot_row = 0usize;
        for col in 0..c {
            if pivot_row >= r {
                break;
            }
            let Some(pr) = (pivot_row..r).find(|&i| a[i * c + col] != 0) else {
                continue;
            };
            if pr != pivot_row {
                for j in col..c {
                    a.swap(pr * c + j, pivot_row * c + j);
                }
            }
            let inv = ctx.inv(a[pivot_row * c + col]);
            for i in pivot_row + 1..r {
                let f = a[i * c + col];
                if f == 0 {
                    continue;
                }
                // row_i -= (f / pivot) * row_pivot
                let scale = p - ctx.mul(f, inv);
                for j in col..c {
                    a[i * c + j] = (a[i * c + j] + scale * a[pivot_row * c + j]) % p;
                }
            }
            pivot_row += 1;
        }
        pivot_row
    }

    /// Kernel dimension via rank-nullity: `cols - rank`.
    pub fn kernel_dim(&self, ctx: PrimeField) -> usize {
        self.cols - self.rank(ctx)
    }

    /// Cokernel dimension: `rows - rank`.
    pub fn cokernel_dim(&self, ctx: PrimeField) -> usize {
        self.rows - self.rank(ctx)
    }

    /// Explicit null-space basis, computed by full reduced row echelon form.
    ///
    /// This is an independent route to the kernel and is cross-checked against
    /// [`FpMatrix::kernel_dim`] in tests.
    pub fn kernel_basis(&self, ctx: PrimeField) -> Vec<Vec<u64>> {
        let p = ctx.modulus();
        let (r, c) = (self.rows, self.cols);
        if c == 0 {
            return Vec::new();
        }
        let mut a = self.entries.clone();
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..c {
            if pivot_row >= r {
                break;
            }
            let Some(pr) = (pivot_row..r).find(|&i| a[i * c + col] != 0) else {
                continue;
            };
            if pr != pivot_row {
                for j in 0..c {
                    a.swap(pr * c + j, pivot_row * c + j);
                }
            }
            let inv = ctx.inv(a[pivot_row * c + col]);
            for j in 0..c {
                a[pivot_row * c + j] = ctx.mul(a[pivot_row * c + j], inv);
            }
            for i in 0..r {
                if i == pivot_row {
                    continue;
                }
                let f = a[i * c + col];
                if f == 0 {
                    continue;
                }
                let scale = p - f;
                for j in 0..c {
                    a[i * c + j] = (a[i * c + j] + scale * a[pivot_row * c + j]) % p;
                }
            }
            pivot_cols.push(col);
            pivot_row += 1;
        }
        let mut basis = Vec::with_capacity(c - pivot_cols.len());
        let mut next_pivot = 0usize;
        for free in 0..c {
            if next_pivot < pivot_cols.len() && pivot_cols[next_pivot] == free {
                next_pivot += 1;
                continue;
            }
            // back-substitute: v[free] = 1, v[pivot_col] = -a[row][free]
            let mut v = vec![0u64; c];
            v[free] = 1;
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = ctx.neg(a[row * c + free]);
            }
            basis.push(v);
        }
        basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f7() -> PrimeField {
        PrimeField::new(7).unwrap()
    }

    #[test]
    fn primality_at_construction() {
        assert!(PrimeField::new(32003).is_ok());
        assert!(PrimeField::new(5).is_ok());
        assert!(matches!(PrimeField::new(1), Err(Error::NotPrime(_))));
        assert!(matches!(PrimeField::new(2), Err(Error::NotPrime(_))));
        assert!(matches!(PrimeField::new(4), Err(Error::NotPrime(_))));
        assert!(matches!(PrimeField::new(32001), Err(Error::NotPrime(_)))); // 3 | 32001
        assert!(matches!(
            PrimeField::new(1 << 33),
            Err(Error::ModulusTooLarge(_))
        ));
    }

    #[test]
    fn field_ops() {
        let f = f7();
        assert_eq!(f.add(5, 4), 2);
        assert_eq!(f.sub(2, 5), 4);
        assert_eq!(f.mul(3, 5), 1);
        assert_eq!(f.neg(0), 0);
        assert_eq!(f.neg(3), 4);
        assert_eq!(f.reduce_i64(-1), 6);
        for x in 1..7 {
            assert_eq!(f.mul(x, f.inv(x)), 1);
        }
    }

    #[test]
    fn rank_of_empty_matrices() {
        let f = f7();
        assert_eq!(FpMatrix::zeros(0, 5).rank(f), 0);
        assert_eq!(FpMatrix::zeros(0, 5).kernel_dim(f), 5);
        assert_eq!(FpMatrix::zeros(5, 0).rank(f), 0);
        assert_eq!(FpMatrix::zeros(5, 0).cokernel_dim(f), 5);
    }

    #[test]
    fn rank_of_identity() {
        let f = f7();
        let id = FpMatrix::identity(3);
        assert_eq!(id.rank(f), 3);
        assert_eq!(id.kernel_dim(f), 0);
        assert_eq!(id.cokernel_dim(f), 0);
    }

    #[test]
    fn rank_of_proportional_rows() {
        let f = f7();
        let m = FpMatrix::from_rows(&[vec![1, 2], vec![2, 4]], f);
        assert_eq!(m.rank(f), 1);
        assert_eq!(m.kernel_dim(f), 1);
        assert_eq!(m.cokernel_dim(f), 1);
    }

    #[test]
    fn kernel_basis_spans_the_kernel() {
        let f = f7();
        let m = FpMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]], f);
        let basis = m.kernel_basis(f);
        assert_eq!(basis.len(), m.kernel_dim(f));
        for v in &basis {
            for i in 0..m.rows() {
                let mut acc = 0u64;
                for (j, &vj) in v.iter().enumerate() {
                    acc = f.add(acc, f.mul(m.get(i, j), vj));
                }
                assert_eq!(acc, 0);
            }
        }
    }

    fn random_matrix_strategy() -> impl Strategy<Value = (usize, usize, Vec<u64>)> {
        (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
            proptest::collection::vec(0u64..7, r * c).prop_map(move |v| (r, c, v))
        })
    }

    proptest! {
        #[test]
        fn rank_equals_rank_of_transpose((r, c, v) in random_matrix_strategy()) {
            let f = f7();
            let m = FpMatrix { rows: r, cols: c, entries: v };
            prop_assert_eq!(m.rank(f), m.transpose().rank(f));
        }

        #[test]
        fn rank_nullity((r, c, v) in random_matrix_strategy()) {
            let f = f7();
            let m = FpMatrix { rows: r, cols: c, entries: v };
            prop_assert_eq!(m.rank(f) + m.kernel_dim(f), c);
            prop_assert_eq!(m.kernel_basis(f).len(), m.kernel_dim(f));
        }

        #[test]
        fn rank_stable_under_row_ops(
            (r, c, v) in random_matrix_strategy(),
            scale in 1u64..7,
            i in 0usize..6,
            j in 0usize..6,
        ) {
            let f = f7();
            let m = FpMatrix { rows: r, cols: c, entries: v };
            let (i, j) = (i % r, j % r);
            // scale row i by a nonzero scalar
            let mut scaled = m.clone();
            for k in 0..c {
                let x = scaled.get(i, k);
                scaled.set(i, k, f.mul(x, scale));
            }
            prop_assert_eq!(m.rank(f), scaled.rank(f));
            // swap rows i and j
            let mut swapped = m.clone();
            for k in 0..c {
                let (x, y) = (swapped.get(i, k), swapped.get(j, k));
                swapped.set(i, k, y);
                swapped.set(j, k, x);
            }
            prop_assert_eq!(m.rank(f), swapped.rank(f));
            // swap two columns
            let (ci, cj) = (i % c, j % c);
            let mut col_swapped = m.clone();
            for k in 0..r {
                let (x, y) = (col_swapped.get(k, ci), col_swapped.get(k, cj));
                col_swapped.set(k, ci, y);
                col_swapped.set(k, cj, x);
            }
            prop_assert_eq!(m.rank(f), col_swapped.rank(f));
        }
    }
}
