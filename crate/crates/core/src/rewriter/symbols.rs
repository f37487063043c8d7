use std::fmt;

use serde::{Serialize, Serializer};

/// A generator of the quotient orbifold group `F0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BaseGenerator {
    A(u32),
    B(u32),
    X(u32),
}

impl fmt::Display for BaseGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseGenerator::A(i) => write!(f, "a_{i}"),
            BaseGenerator::B(i) => write!(f, "b_{i}"),
            BaseGenerator::X(j) => write!(f, "x_{j}"),
        }
    }
}

/// Schreier generator `S_{K, a} = K a (overline{K a})^-1` for the coset
/// representative `K = stable^coset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SchreierGenerator {
    pub base: BaseGenerator,
    pub coset: u32,
}

impl fmt::Display for SchreierGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S[{},{}]", self.coset, self.base)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SymbolKind {
    A,
    B,
    X,
    AlphaBeta,
}

/// Generator of the surface group in the final one-relator presentation:
/// `h^power(A_index)`, `h^power(B_index)`, `h^power(X_index)`, or one of the
/// two invariant curves `alpha` (index 0) and `beta` (index 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorSymbol {
    pub kind: SymbolKind,
    pub index: u32,
    pub power: u32,
}

impl GeneratorSymbol {
    pub fn a(index: u32, power: u32) -> Self {
        GeneratorSymbol { kind: SymbolKind::A, index, power }
    }

    pub fn b(index: u32, power: u32) -> Self {
        GeneratorSymbol { kind: SymbolKind::B, index, power }
    }

    pub fn x(index: u32, power: u32) -> Self {
        GeneratorSymbol { kind: SymbolKind::X, index, power }
    }

    pub fn alpha() -> Self {
        GeneratorSymbol { kind: SymbolKind::AlphaBeta, index: 0, power: 0 }
    }

    pub fn beta() -> Self {
        GeneratorSymbol { kind: SymbolKind::AlphaBeta, index: 1, power: 0 }
    }
}

impl fmt::Display for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SymbolKind::A => write!(f, "h^{}(A_{})", self.power, self.index),
            SymbolKind::B => write!(f, "h^{}(B_{})", self.power, self.index),
            SymbolKind::X => write!(f, "h^{}(X_{})", self.power, self.index),
            SymbolKind::AlphaBeta if self.index == 0 => write!(f, "alpha"),
            SymbolKind::AlphaBeta => write!(f, "beta"),
        }
    }
}

impl Serialize for GeneratorSymbol {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
