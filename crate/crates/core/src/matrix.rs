//! Dense exact-integer matrices.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged matrix rows");
            data.extend_from_slice(r.as_ref());
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn neg(&self) -> Self {
        IntMatrix { data: self.data.iter().map(|x| -x).collect(), ..self.clone() }
    }

    /// `self^k` for `k >= 0`; square matrices only.
    pub fn pow(&self, k: u32) -> Self {
        assert!(self.is_square());
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self[(i, j)] == -self[(j, i)]))
    }

    /// Smallest `k >= 1` with `self^k = I`, searching up to `bound`.
    pub fn order(&self, bound: u32) -> Option<u32> {
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_identity() {
                return Some(k);
            }
            acc = &acc * self;
        }
        None
    }

    /// Fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> i128 {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> = (0..n)
            .map(|i| self.row(i).iter().map(|&x| x as i128).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                let Some(swap) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                    return 0;
                };
                a.swap(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        sign * a[n - 1][n - 1]
    }

    /// Inverse of a matrix with determinant `+-1`, by integer row reduction.
    pub fn inverse_unimodular(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            // Euclid on the column below the diagonal until one entry is left
            loop {
                let pivot = (col..n)
                    .filter(|&i| a[(i, col)] != 0)
                    .min_by_key(|&i| a[(i, col)].abs())?;
                a.swap_rows(col, pivot);
                inv.swap_rows(col, pivot);
                let mut done = true;
                for i in col + 1..n {
                    let q = a[(i, col)] / a[(col, col)];
                    if q != 0 {
                        a.add_row_multiple(i, col, -q);
                        inv.add_row_multiple(i, col, -q);
                    }
                    if a[(i, col)] != 0 {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            match a[(col, col)] {
                1 => {}
                -1 => {
                    a.scale_row(col, -1);
                    inv.scale_row(col, -1);
                }
                _ => return None,
            }
        }
        for col in (0..n).rev() {
            for i in 0..col {
                let q = a[(i, col)];
                if q != 0 {
                    a.add_row_multiple(i, col, -q);
                    inv.add_row_multiple(i, col, -q);
                }
            }
        }
        Some(inv)
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.data.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }

    pub fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + i, r * self.cols + j);
            }
        }
    }

    /// `row[i] += k * row[j]`.
    pub fn add_row_multiple(&mut self, i: usize, j: usize, k: i64) {
        for c in 0..self.cols {
            let v = self[(j, c)];
            self[(i, c)] += k * v;
        }
    }

    /// `col[i] += k * col[j]`.
    pub fn add_col_multiple(&mut self, i: usize, j: usize, k: i64) {
        for r in 0..self.rows {
            let v = self[(r, j)];
            self[(r, i)] += k * v;
        }
    }

    pub fn scale_row(&mut self, i: usize, k: i64) {
        for c in 0..self.cols {
            self[(i, c)] *= k;
        }
    }

    pub fn scale_col(&mut self, j: usize, k: i64) {
        for r in 0..self.rows {
            self[(r, j)] *= k;
        }
    }

    pub fn block_diagonal(blocks: &[IntMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m[(r0 + i, c0 + j)] = b[(i, j)];
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Rows and columns reordered: entry `(i, j)` of the result is entry
    /// `(order[i], order[j])` of `self`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        assert!(self.is_square() && order.len() == self.rows);
        Self::from_fn(self.rows, self.cols, |i, j| self[(order[i], order[j])])
    }

    /// The permutation matrix `P` with `P e_j = e_{order[j]}`, so that
    /// `P^T A P = A.permuted(order)`.
    pub fn permutation(order: &[usize]) -> Self {
        let n = order.len();
        let mut m = Self::zeros(n, n);
        for (j, &i) in order.iter().enumerate() {
            m[(i, j)] = 1;
        }
        m
    }

    pub fn max_abs(&self) -> i64 {
        self.data.iter().map(|x| x.abs()).max().unwrap_or(0)
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;

    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Mul for IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: IntMatrix) -> IntMatrix {
        &self * &rhs
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.data.iter().map(|x| x.to_string().len()).max().unwrap_or(1);
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| format!("{x:>width$}")).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn determinants() {
        assert_eq!(IntMatrix::identity(4).determinant(), 1);
        assert_eq!(IntMatrix::from_rows(&[[0, 1], [-1, 0]]).determinant(), 1);
        assert_eq!(IntMatrix::from_rows(&[[0, 1], [1, 0]]).determinant(), -1);
        assert_eq!(IntMatrix::from_rows(&[[2, 3, 1], [4, 1, 0], [0, 5, 3]]).determinant(), -10);
        assert_eq!(IntMatrix::from_rows(&[[1, 2], [2, 4]]).determinant(), 0);
        assert_eq!(IntMatrix::zeros(0, 0).determinant(), 1);
    }

    #[test]
    fn unimodular_inverse() {
        let m = IntMatrix::from_rows(&[[2, 3], [1, 2]]);
        let inv = m.inverse_unimodular().unwrap();
        assert_eq!(inv, IntMatrix::from_rows(&[[2, -3], [-1, 2]]));
        assert!(IntMatrix::from_rows(&[[2, 0], [0, 1]]).inverse_unimodular().is_none());
        assert!(IntMatrix::from_rows(&[[1, 2], [2, 4]]).inverse_unimodular().is_none());
    }

    #[test]
    fn permutations() {
        let a = IntMatrix::from_rows(&[[1, 2, 3], [4, 5, 6], [7, 8, 9]]);
        let order = [2, 0, 1];
        let p = IntMatrix::permutation(&order);
        assert_eq!(&(&p.transpose() * &a) * &p, a.permuted(&order));
        assert_eq!(a.permuted(&order)[(0, 0)], 9);
    }

    #[test]
    fn orders_and_blocks() {
        let c = IntMatrix::from_rows(&[[0, 1, 0], [0, 0, 1], [1, 0, 0]]);
        assert_eq!(c.order(10), Some(3));
        let n = IntMatrix::from_rows(&[[0, 1], [-1, -1]]);
        assert_eq!(n.order(10), Some(3));
        let b = IntMatrix::block_diagonal(&[c, n]);
        assert_eq!(b.rows(), 5);
        assert_eq!(b[(3, 4)], 1);
        assert_eq!(b[(4, 3)], -1);
        assert_eq!(b.order(10), Some(3));
    }

    fn unimodular() -> impl Strategy<Value = IntMatrix> {
        // products of elementary matrices
        (2usize..6).prop_flat_map(|n| {
            prop::collection::vec((0..n, 0..n, -3i64..=3), 0..12).prop_map(move |ops| {
                let mut m = IntMatrix::identity(n);
                for (i, j, k) in ops {
                    if i != j {
                        m.add_row_multiple(i, j, k);
                    } else {
                        m.scale_row(i, -1);
                    }
                }
                m
            })
        })
    }

    proptest! {
        #[test]
        fn inverse_of_elementary_products(m in unimodular()) {
            prop_assert_eq!(m.determinant().abs(), 1);
            let inv = m.inverse_unimodular().unwrap();
            prop_assert!((&m * &inv).is_identity());
            prop_assert!((&inv * &m).is_identity());
        }

        #[test]
        fn determinant_is_multiplicative(a in unimodular(), k in -3i64..=3) {
            let mut b = a.clone();
            b.scale_row(0, k);
            prop_assert_eq!(b.determinant(), k as i128 * a.determinant());
            prop_assert_eq!((&a * &a).determinant(), a.determinant() * a.determinant());
        }
    }
}
