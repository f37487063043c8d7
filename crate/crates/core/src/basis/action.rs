use std::collections::BTreeMap;

use super::{enumerate_basis, fixed_point_pairs, BasisElement, BasisError, LabeledMatrix};
use crate::invariants::PrimeOrderData;
use crate::matrix::IntMatrix;
use crate::rewriter::{induced_action_on_generators, single_relator_presentation, GeneratorSymbol, SymbolKind};

/// Cyclic permutation matrix: row `i` has its 1 in column `i + 1 (mod p)`.
pub fn m_block(p: usize) -> IntMatrix {
    IntMatrix::from_fn(p, p, |i, j| i64::from(j == (i + 1) % p))
}

/// Companion block: ones on the superdiagonal, last row all `-1`.
pub fn n_block(p: usize) -> IntMatrix {
    let n = p - 1;
    IntMatrix::from_fn(n, n, |i, j| {
        if i == n - 1 {
            -1
        } else {
            i64::from(j == i + 1)
        }
    })
}

/// Matrix of `h` on the adapted basis. Row `i` holds the coordinates of
/// the image of basis element `i`, so `M I M^T = I` for the intersection
/// matrix `I`.
pub fn action_matrix(d: &PrimeOrderData) -> LabeledMatrix {
    let p = d.p as usize;
    let basis = enumerate_basis(d);
    let mut blocks = Vec::new();
    let handles = if d.t == 0 { d.g0 as usize - 1 } else { d.g0 as usize };
    blocks.extend(std::iter::repeat_n(m_block(p), 2 * handles));
    if d.t == 0 {
        blocks.push(IntMatrix::identity(2));
    } else {
        blocks.extend(std::iter::repeat_n(n_block(p), d.t - 2));
    }
    LabeledMatrix::new(basis, IntMatrix::block_diagonal(&blocks))
}

/// The action obtained from the one-relator presentation: `h` on each
/// surviving generator, abelianized over the adapted basis.
///
/// Generator `h^k(X_j)` of the presentation is the basis curve
/// `h^k(X_{s,v})` where `s = n_j` and `j` is the `v`-th fixed point with
/// that datum.
pub fn homology_action_full(d: &PrimeOrderData) -> Result<LabeledMatrix, BasisError> {
    let pres = single_relator_presentation(d)?;
    let nd = &pres.data;
    let basis = enumerate_basis(nd);
    let index: BTreeMap<BasisElement, usize> = basis.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let pairs = fixed_point_pairs(nd);
    let to_basis = |g: &GeneratorSymbol| -> Result<usize, BasisError> {
        let e = match g.kind {
            SymbolKind::A => BasisElement::LiftA { w: g.index, power: g.power },
            SymbolKind::B => BasisElement::LiftB { w: g.index, power: g.power },
            SymbolKind::X => {
                let (s, v) = pairs[g.index as usize - 1];
                BasisElement::Exceptional { s, v, power: g.power }
            }
            SymbolKind::AlphaBeta if g.index == 0 => BasisElement::Alpha,
            SymbolKind::AlphaBeta => BasisElement::Beta,
        };
        index
            .get(&e)
            .copied()
            .ok_or_else(|| BasisError::ContextMismatch(e.to_string()))
    };
    let action = induced_action_on_generators(&pres)?;
    let n = basis.len();
    if action.len() != n {
        return Err(BasisError::ContextMismatch(format!(
            "{} generators for a basis of {n}",
            action.len()
        )));
    }
    let mut m = IntMatrix::zeros(n, n);
    for (g, image) in &action {
        let row = to_basis(g)?;
        for (sym, coeff) in image.abelianize() {
            m[(row, to_basis(&sym)?)] += coeff;
        }
    }
    Ok(LabeledMatrix::new(basis, m))
}
