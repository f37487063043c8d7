use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::ops::Mul;

/// Anything that can label a free generator.
pub trait Symbol: Clone + Ord + Hash + fmt::Debug + fmt::Display {}

impl<T: Clone + Ord + Hash + fmt::Debug + fmt::Display> Symbol for T {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter<G> {
    pub symbol: G,
    pub inverse: bool,
}

impl<G: Symbol> Letter<G> {
    pub fn pos(symbol: G) -> Self {
        Letter { symbol, inverse: false }
    }

    pub fn neg(symbol: G) -> Self {
        Letter { symbol, inverse: true }
    }

    pub fn sign(&self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inverted(&self) -> Self {
        Letter { symbol: self.symbol.clone(), inverse: !self.inverse }
    }

    fn cancels(&self, other: &Self) -> bool {
        self.symbol == other.symbol && self.inverse != other.inverse
    }
}

impl<G: fmt::Display> fmt::Display for Letter<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.symbol)
        } else {
            write!(f, "{}", self.symbol)
        }
    }
}

/// A freely reduced word in a free group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeWord<G> {
    letters: Vec<Letter<G>>,
}

impl<G: Symbol> Default for FreeWord<G> {
    fn default() -> Self {
        Self::identity()
    }
}

impl<G: Symbol> FreeWord<G> {
    pub fn identity() -> Self {
        FreeWord { letters: Vec::new() }
    }

    pub fn generator(symbol: G) -> Self {
        FreeWord { letters: vec![Letter::pos(symbol)] }
    }

    pub fn from_letters<I: IntoIterator<Item = Letter<G>>>(letters: I) -> Self {
        let mut w = Self::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// `(symbol, sign)` pairs with sign `+1` or `-1`.
    pub fn from_signed<I: IntoIterator<Item = (G, i64)>>(pairs: I) -> Self {
        Self::from_letters(pairs.into_iter().map(|(g, s)| {
            debug_assert!(s == 1 || s == -1);
            Letter { symbol: g, inverse: s < 0 }
        }))
    }

    /// `symbol^power`.
    pub fn power(symbol: G, power: i64) -> Self {
        let letter = Letter { symbol, inverse: power < 0 };
        FreeWord { letters: vec![letter; power.unsigned_abs() as usize] }
    }

    pub fn commutator(a: &Self, b: &Self) -> Self {
        a * b * a.inverse() * b.inverse()
    }

    pub fn push(&mut self, letter: Letter<G>) {
        if self.letters.last().is_some_and(|last| last.cancels(&letter)) {
            self.letters.pop();
        } else {
            self.letters.push(letter);
        }
    }

    pub fn append(&mut self, other: &Self) {
        for l in &other.letters {
            self.push(l.clone());
        }
    }

    pub fn letters(&self) -> &[Letter<G>] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeWord { letters: self.letters.iter().rev().map(Letter::inverted).collect() }
    }

    /// Strip matching letters from both ends.
    pub fn cyclically_reduced(&self) -> Self {
        let mut lo = 0;
        let mut hi = self.letters.len();
        while hi - lo >= 2 && self.letters[lo].cancels(&self.letters[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        FreeWord { letters: self.letters[lo..hi].to_vec() }
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(a), Some(b)) if self.letters.len() > 1 => !a.cancels(b),
            _ => true,
        }
    }

    /// The cyclic conjugate starting at position `k`. Only meaningful for
    /// cyclically reduced words.
    pub fn rotated(&self, k: usize) -> Self {
        if self.letters.is_empty() {
            return self.clone();
        }
        let k = k % self.letters.len();
        let mut letters = self.letters[k..].to_vec();
        letters.extend_from_slice(&self.letters[..k]);
        FreeWord::from_letters(letters)
    }

    /// True when `other` is a cyclic permutation of `self` (both taken
    /// cyclically reduced).
    pub fn is_cyclic_conjugate_of(&self, other: &Self) -> bool {
        let a = self.cyclically_reduced();
        let b = other.cyclically_reduced();
        if a.len() != b.len() {
            return false;
        }
        if a.is_empty() {
            return true;
        }
        (0..a.len()).any(|k| {
            a.letters[k..]
                .iter()
                .chain(&a.letters[..k])
                .eq(b.letters.iter())
        })
    }

    /// Positions of every occurrence of `symbol` (either sign).
    pub fn occurrences(&self, symbol: &G) -> Vec<usize> {
        self.letters
            .iter()
            .enumerate()
            .filter(|(_, l)| &l.symbol == symbol)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn contains(&self, symbol: &G) -> bool {
        self.letters.iter().any(|l| &l.symbol == symbol)
    }

    pub fn symbols(&self) -> Vec<G> {
        let mut out: Vec<G> = self.letters.iter().map(|l| l.symbol.clone()).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Replace generators by words; `None` keeps the generator.
    pub fn substitute<F>(&self, mut f: F) -> Self
    where
        F: FnMut(&G) -> Option<FreeWord<G>>,
    {
        let mut out = Self::identity();
        for l in &self.letters {
            match f(&l.symbol) {
                Some(w) if l.inverse => out.append(&w.inverse()),
                Some(w) => out.append(&w),
                None => out.push(l.clone()),
            }
        }
        out
    }

    /// Homomorphism into another free group.
    pub fn map_words<H: Symbol, F>(&self, mut f: F) -> FreeWord<H>
    where
        F: FnMut(&G) -> FreeWord<H>,
    {
        let mut out = FreeWord::identity();
        for l in &self.letters {
            let w = f(&l.symbol);
            if l.inverse {
                out.append(&w.inverse());
            } else {
                out.append(&w);
            }
        }
        out
    }

    pub fn map_symbols<H: Symbol, F>(&self, mut f: F) -> FreeWord<H>
    where
        F: FnMut(&G) -> H,
    {
        FreeWord::from_letters(
            self.letters
                .iter()
                .map(|l| Letter { symbol: f(&l.symbol), inverse: l.inverse }),
        )
    }

    /// Exponent sums; zero entries are dropped.
    pub fn abelianize(&self) -> BTreeMap<G, i64> {
        let mut out = BTreeMap::new();
        for l in &self.letters {
            *out.entry(l.symbol.clone()).or_insert(0) += l.sign();
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Solve `self = 1` for a generator occurring exactly once, returning
    /// the word it equals.
    pub fn solve_for(&self, symbol: &G) -> Option<FreeWord<G>> {
        let occ = self.occurrences(symbol);
        if occ.len() != 1 {
            return None;
        }
        let i = occ[0];
        // U s^e V = 1  =>  s^e = U^-1 V^-1 = (V U)^-1
        let rest = FreeWord::from_letters(
            self.letters[i + 1..].iter().chain(&self.letters[..i]).cloned(),
        );
        Some(if self.letters[i].inverse { rest } else { rest.inverse() })
    }
}

impl<G: Symbol> Mul for &FreeWord<G> {
    type Output = FreeWord<G>;

    fn mul(self, rhs: Self) -> FreeWord<G> {
        let mut out = self.clone();
        out.append(rhs);
        out
    }
}

impl<G: Symbol> Mul<FreeWord<G>> for FreeWord<G> {
    type Output = FreeWord<G>;

    fn mul(mut self, rhs: FreeWord<G>) -> FreeWord<G> {
        self.append(&rhs);
        self
    }
}

impl<G: Symbol> Mul<&FreeWord<G>> for FreeWord<G> {
    type Output = FreeWord<G>;

    fn mul(mut self, rhs: &FreeWord<G>) -> FreeWord<G> {
        self.append(rhs);
        self
    }
}

impl<G: Symbol> Mul<FreeWord<G>> for &FreeWord<G> {
    type Output = FreeWord<G>;

    fn mul(self, rhs: FreeWord<G>) -> FreeWord<G> {
        self * &rhs
    }
}

impl<G: fmt::Display> fmt::Display for FreeWord<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}
