//! Integer normalization of a unimodular alternating form and conjugation
//! of the action into the symplectic group.

use thiserror::Error;

use crate::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymplecticError {
    #[error("form is not skew-symmetric")]
    NotSkew,
    #[error("form is not unimodular")]
    NotUnimodular,
    #[error("odd dimension {0}")]
    OddDimension(usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

/// Arrangement of the standard form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arrangement {
    /// `((0, 1), (-1, 0))` blocks down the diagonal.
    Paired,
    /// `((0, I), (-I, 0))`.
    Split,
}

/// `P^T B P = J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticChange {
    pub change: IntMatrix,
    pub target: IntMatrix,
    pub arrangement: Arrangement,
}

impl SymplecticChange {
    /// The same change followed by the reordering to the split form.
    pub fn to_split(&self) -> SymplecticChange {
        if self.arrangement == Arrangement::Split {
            return self.clone();
        }
        let order = paired_to_split(self.change.rows() / 2);
        SymplecticChange {
            change: &self.change * &IntMatrix::permutation(&order),
            target: self.target.permuted(&order),
            arrangement: Arrangement::Split,
        }
    }

    pub fn verify(&self, form: &IntMatrix) -> bool {
        let p = &self.change;
        p.determinant().abs() == 1 && &(&p.transpose() * form) * p == self.target
    }
}

pub fn paired_form(n: usize) -> IntMatrix {
    IntMatrix::from_fn(2 * n, 2 * n, |i, j| {
        if i % 2 == 0 && j == i + 1 {
            1
        } else if j % 2 == 0 && i == j + 1 {
            -1
        } else {
            0
        }
    })
}

/// `((0, I_n), (-I_n, 0))`.
pub fn split_form(n: usize) -> IntMatrix {
    IntMatrix::from_fn(2 * n, 2 * n, |i, j| {
        if j == i + n {
            1
        } else if i == j + n {
            -1
        } else {
            0
        }
    })
}

/// `paired_form(n).permuted(&paired_to_split(n)) == split_form(n)`.
pub fn paired_to_split(n: usize) -> Vec<usize> {
    (0..n).map(|i| 2 * i).chain((0..n).map(|i| 2 * i + 1)).collect()
}

/// Congruence by an elementary column operation `e_i += k e_j`.
fn add_multiple(g: &mut IntMatrix, p: &mut IntMatrix, i: usize, j: usize, k: i64) {
    if k != 0 {
        g.add_col_multiple(i, j, k);
        g.add_row_multiple(i, j, k);
        p.add_col_multiple(i, j, k);
    }
}

fn swap(g: &mut IntMatrix, p: &mut IntMatrix, i: usize, j: usize) {
    if i != j {
        g.swap_cols(i, j);
        g.swap_rows(i, j);
        p.swap_cols(i, j);
    }
}

/// Smallest nonzero `|g[i][j]|` with `r <= i < j`, lowest row then column
/// on ties.
fn pivot(g: &IntMatrix, r: usize) -> Option<(usize, usize)> {
    let n = g.rows();
    let mut best: Option<(i64, usize, usize)> = None;
    for i in r..n {
        for j in i + 1..n {
            let v = g[(i, j)].abs();
            if v != 0 && best.is_none_or(|(b, _, _)| v < b) {
                best = Some((v, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// A unimodular `P` with `P^T B P` the paired standard form, by
/// skew-symmetric Gaussian elimination producing one hyperbolic pair at a
/// time.
pub fn symplectic_basis(b: &IntMatrix) -> Result<SymplecticChange, SymplecticError> {
    if !b.is_square() {
        return Err(SymplecticError::DimensionMismatch(b.rows(), b.cols()));
    }
    let n = b.rows();
    if n % 2 == 1 {
        return Err(SymplecticError::OddDimension(n));
    }
    if !b.is_skew_symmetric() {
        return Err(SymplecticError::NotSkew);
    }
    let mut g = b.clone();
    let mut p = IntMatrix::identity(n);
    for r in (0..n).step_by(2) {
        loop {
            let (i, j) = pivot(&g, r).ok_or(SymplecticError::NotUnimodular)?;
            // j > i >= r, so the first swap leaves j in place
            swap(&mut g, &mut p, r, i);
            swap(&mut g, &mut p, r + 1, j);
            let a = g[(r, r + 1)];
            let mut clean = true;
            for k in r + 2..n {
                // e_k += x e_r + y e_{r+1} shifts g[r][k] by y a and
                // g[r+1][k] by -x a
                let y = -(g[(r, k)] / a);
                let x = g[(r + 1, k)] / a;
                add_multiple(&mut g, &mut p, k, r + 1, y);
                add_multiple(&mut g, &mut p, k, r, x);
                clean &= g[(r, k)] == 0 && g[(r + 1, k)] == 0;
            }
            if clean {
                break;
            }
        }
        match g[(r, r + 1)] {
            1 => {}
            -1 => swap(&mut g, &mut p, r, r + 1),
            _ => return Err(SymplecticError::NotUnimodular),
        }
    }
    debug_assert_eq!(g, paired_form(n / 2));
    Ok(SymplecticChange { change: p, target: g, arrangement: Arrangement::Paired })
}

/// The action in the new basis.
///
/// `m` has the images of the old basis vectors in its rows; the new basis
/// vectors are the columns of `P`, so the result is `P^T M P^{-T}` (the
/// row form of `P^{-1} M P`).
pub fn transform_action(m: &IntMatrix, chg: &SymplecticChange) -> Result<IntMatrix, SymplecticError> {
    let p = &chg.change;
    if m.rows() != p.rows() || !m.is_square() {
        return Err(SymplecticError::DimensionMismatch(m.rows(), p.rows()));
    }
    let pinv = p.inverse_unimodular().ok_or(SymplecticError::NotUnimodular)?;
    Ok(&(&p.transpose() * m) * &pinv.transpose())
}

/// `M^T J M = J`.
pub fn is_symplectic(m: &IntMatrix, j: &IntMatrix) -> Result<bool, SymplecticError> {
    check_dims(m, j)?;
    Ok(&(&m.transpose() * j) * m == *j)
}

/// `M B M^T = B` for an action with images in rows.
pub fn preserves_form(m: &IntMatrix, b: &IntMatrix) -> Result<bool, SymplecticError> {
    check_dims(m, b)?;
    Ok(&(m * b) * &m.transpose() == *b)
}

fn check_dims(m: &IntMatrix, j: &IntMatrix) -> Result<(), SymplecticError> {
    if !m.is_square() || !j.is_square() || m.rows() != j.rows() {
        return Err(SymplecticError::DimensionMismatch(m.rows(), j.rows()));
    }
    Ok(())
}

/// Exactly one entry `1` in every row and column, all others `0`.
pub fn is_permutation(m: &IntMatrix) -> bool {
    m.is_square()
        && (0..m.rows()).all(|i| m.row(i).iter().filter(|&&x| x != 0).count() == 1)
        && (0..m.cols()).all(|j| (0..m.rows()).filter(|&i| m[(i, j)] != 0).count() == 1)
        && m.to_rows().iter().flatten().all(|&x| x == 0 || x == 1)
}
