//! The adapted homology basis, the action of `h` on it, and its
//! intersection form.
//!
//! Ordering used throughout: lifts first (for each `w`, `A_w` at powers
//! `0..p` then `B_w` at powers `0..p`), then exceptional curves sorted by
//! `(s, v)` and power, then `alpha`, `beta` in the fixed-point-free case.

mod action;
mod intersection;

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

pub use action::{action_matrix, homology_action_full, m_block, n_block};
pub use intersection::{
    bracket_residue, canonical_intersection, intersection_matrix, intersection_number, ResidueContext,
};

use crate::invariants::{InvariantError, PrimeOrderData};
use crate::matrix::IntMatrix;
use crate::rewriter::RewriteError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BasisError {
    #[error("basis element {0} does not belong to this class")]
    ContextMismatch(String),
    #[error("(p - 1)(t - 2) = {0} is odd")]
    OddQ(i64),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisElement {
    /// `h^power(A_w)`.
    LiftA { w: u32, power: u32 },
    /// `h^power(B_w)`.
    LiftB { w: u32, power: u32 },
    /// `h^power(X_{s,v})`: the `v`-th fixed point with `n_i = s`.
    Exceptional { s: u32, v: u32, power: u32 },
    Alpha,
    Beta,
}

impl BasisElement {
    pub fn power(&self) -> u32 {
        match *self {
            BasisElement::LiftA { power, .. }
            | BasisElement::LiftB { power, .. }
            | BasisElement::Exceptional { power, .. } => power,
            BasisElement::Alpha | BasisElement::Beta => 0,
        }
    }

    pub fn is_lift(&self) -> bool {
        matches!(self, BasisElement::LiftA { .. } | BasisElement::LiftB { .. })
    }

    pub fn is_exceptional(&self) -> bool {
        matches!(self, BasisElement::Exceptional { .. })
    }

    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisElement::LiftA { w, power } => write!(f, "h^{power}(A_{w})"),
            BasisElement::LiftB { w, power } => write!(f, "h^{power}(B_{w})"),
            BasisElement::Exceptional { s, v, power } => write!(f, "h^{power}(X_{{{s},{v}}})"),
            BasisElement::Alpha => write!(f, "alpha"),
            BasisElement::Beta => write!(f, "beta"),
        }
    }
}

impl Serialize for BasisElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// All pairs `(s, v)` with `1 <= v <= m_s`, in lexicographic order, minus
/// the two smallest.
pub fn exceptional_pairs(m: &[usize]) -> Vec<(u32, u32)> {
    m.iter()
        .enumerate()
        .flat_map(|(i, &count)| (1..=count as u32).map(move |v| (i as u32 + 1, v)))
        .skip(2)
        .collect()
}

/// `(s, v)` for each fixed point of normalized data, in order.
pub fn fixed_point_pairs(d: &PrimeOrderData) -> Vec<(u32, u32)> {
    let mut seen = vec![0u32; d.p as usize];
    d.n.iter()
        .map(|&n| {
            seen[n as usize] += 1;
            (n, seen[n as usize])
        })
        .collect()
}

fn lifts(p: u32, handles: std::ops::RangeInclusive<u32>) -> Vec<BasisElement> {
    let mut out = Vec::new();
    for w in handles {
        out.extend((0..p).map(|power| BasisElement::LiftA { w, power }));
        out.extend((0..p).map(|power| BasisElement::LiftB { w, power }));
    }
    out
}

/// The adapted basis, `2g` elements.
pub fn enumerate_basis(d: &PrimeOrderData) -> Vec<BasisElement> {
    if d.t == 0 {
        return enumerate_basis_t0(d);
    }
    let p = d.p;
    let mut out = lifts(p, 1..=d.g0);
    for (s, v) in exceptional_pairs(&d.m) {
        out.extend((0..p - 1).map(|power| BasisElement::Exceptional { s, v, power }));
    }
    out
}

/// Basis for the fixed-point-free case: lifts of the handles `2..=g0`,
/// then `alpha`, `beta`.
pub fn enumerate_basis_t0(d: &PrimeOrderData) -> Vec<BasisElement> {
    let mut out = lifts(d.p, 2..=d.g0);
    out.push(BasisElement::Alpha);
    out.push(BasisElement::Beta);
    out
}

/// Number of lifted and of exceptional elements.
pub fn type_counts(basis: &[BasisElement]) -> (usize, usize) {
    let lifted = basis.iter().filter(|e| e.is_lift()).count();
    let exceptional = basis.iter().filter(|e| e.is_exceptional()).count();
    (lifted, exceptional)
}

/// Whether `e` is a member of the basis of `d`.
pub fn belongs_to(e: &BasisElement, d: &PrimeOrderData) -> bool {
    let p = d.p;
    match *e {
        BasisElement::LiftA { w, power } | BasisElement::LiftB { w, power } => {
            let lo = if d.t == 0 { 2 } else { 1 };
            (lo..=d.g0).contains(&w) && power < p
        }
        BasisElement::Exceptional { s, v, power } => {
            d.t > 0 && power < p - 1 && exceptional_pairs(&d.m).contains(&(s, v))
        }
        BasisElement::Alpha | BasisElement::Beta => d.t == 0,
    }
}

/// Reordering that lists every `A`-type lift first, then every `B`-type
/// lift, then the rest (exceptional curves, then `alpha` before `beta`).
/// For lift-only and fixed-point-free bases this is the order in which the
/// intersection form reads `((0, I), (-I, 0))` up to the trailing blocks.
pub fn canonical_order(basis: &[BasisElement]) -> Vec<usize> {
    let pick = |f: &dyn Fn(&BasisElement) -> bool| -> Vec<usize> {
        (0..basis.len()).filter(|&i| f(&basis[i])).collect()
    };
    let mut order = pick(&|e| matches!(e, BasisElement::LiftA { .. }));
    order.extend(pick(&|e| matches!(e, BasisElement::LiftB { .. })));
    order.extend(pick(&|e| e.is_exceptional()));
    order.extend(pick(&|e| *e == BasisElement::Alpha));
    order.extend(pick(&|e| *e == BasisElement::Beta));
    order
}

/// A square matrix together with the basis labelling its rows and columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledMatrix {
    pub labels: Vec<BasisElement>,
    pub matrix: IntMatrix,
}

impl LabeledMatrix {
    pub fn new(labels: Vec<BasisElement>, matrix: IntMatrix) -> Self {
        assert_eq!(labels.len(), matrix.rows(), "one label per row");
        LabeledMatrix { labels, matrix }
    }

    pub fn label_strings(&self) -> Vec<String> {
        self.labels.iter().map(BasisElement::label).collect()
    }

    /// Same matrix in another basis order (see [`IntMatrix::permuted`]).
    pub fn permuted(&self, order: &[usize]) -> Self {
        LabeledMatrix {
            labels: order.iter().map(|&i| self.labels[i]).collect(),
            matrix: self.matrix.permuted(order),
        }
    }
}

impl Serialize for LabeledMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("LabeledMatrix", 2)?;
        st.serialize_field("labels", &self.labels)?;
        st.serialize_field("rows", &self.matrix.to_rows())?;
        st.end()
    }
}

impl fmt::Display for LabeledMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = self.label_strings();
        let lw = labels.iter().map(String::len).max().unwrap_or(0);
        let cw = self.matrix.max_abs().to_string().len() + 1;
        for (i, label) in labels.iter().enumerate() {
            write!(f, "{label:<lw$} |")?;
            for x in self.matrix.row(i) {
                write!(f, " {x:>cw$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
