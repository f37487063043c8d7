//! Reidemeister-Schreier rewriting for the surface-kernel map `F0 -> Z_p`.
//!
//! The Schreier transversal is `{1, u, u^2, ..., u^{p-1}}` for a single
//! "stable" generator `u`: `x_1` when there are fixed points, `a_1` when
//! there are none. The coset of a word is recorded as the exponent of `u`
//! in its representative.

use std::collections::BTreeMap;

use super::symbols::{BaseGenerator, SchreierGenerator};
use super::word::{FreeWord, Letter};
use super::{Presentation, RewriteError};
use crate::invariants::{inverse_mod, PrimeOrderData};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchreierSystem {
    p: u32,
    stable: BaseGenerator,
    /// Image under the surface-kernel map, in `Z_p`.
    phi: BTreeMap<BaseGenerator, u32>,
    /// How far each generator moves the coset exponent.
    steps: BTreeMap<BaseGenerator, u32>,
}

impl SchreierSystem {
    /// Build the system for `d` as given (no reordering of fixed points).
    pub fn for_data(d: &PrimeOrderData) -> Self {
        let mut phi = BTreeMap::new();
        for i in 1..=d.g0 {
            phi.insert(BaseGenerator::A(i), 0);
            phi.insert(BaseGenerator::B(i), 0);
        }
        let stable = if d.t > 0 {
            for (j, &n) in d.n.iter().enumerate() {
                phi.insert(BaseGenerator::X(j as u32 + 1), n);
            }
            BaseGenerator::X(1)
        } else {
            phi.insert(BaseGenerator::A(1), 1);
            BaseGenerator::A(1)
        };
        let unit = inverse_mod(phi[&stable] as i64, d.p).expect("stable generator maps to a unit");
        let steps = phi
            .iter()
            .map(|(&g, &v)| (g, ((v as u64 * unit as u64) % d.p as u64) as u32))
            .collect();
        SchreierSystem { p: d.p, stable, phi, steps }
    }

    pub fn order(&self) -> u32 {
        self.p
    }

    pub fn stable(&self) -> BaseGenerator {
        self.stable
    }

    /// Base generators in presentation order.
    pub fn alphabet(&self) -> Vec<BaseGenerator> {
        self.phi.keys().copied().collect()
    }

    fn lookup<'a>(
        map: &'a BTreeMap<BaseGenerator, u32>,
        g: &BaseGenerator,
    ) -> Result<&'a u32, RewriteError> {
        map.get(g).ok_or_else(|| RewriteError::UnknownGenerator(g.to_string()))
    }

    pub fn step(&self, g: &BaseGenerator) -> Result<u32, RewriteError> {
        Self::lookup(&self.steps, g).copied()
    }

    /// Image of `w` under the surface-kernel map.
    pub fn phi(&self, w: &FreeWord<BaseGenerator>) -> Result<u32, RewriteError> {
        let p = self.p as i64;
        let mut total = 0i64;
        for l in w.letters() {
            total += l.sign() * *Self::lookup(&self.phi, &l.symbol)? as i64;
        }
        Ok(total.rem_euclid(p) as u32)
    }

    /// Exponent `c` with `overline{w} = u^c`.
    pub fn coset_exponent(&self, w: &FreeWord<BaseGenerator>) -> Result<u32, RewriteError> {
        let p = self.p as i64;
        let mut c = 0i64;
        for l in w.letters() {
            c += l.sign() * self.step(&l.symbol)? as i64;
        }
        Ok(c.rem_euclid(p) as u32)
    }

    pub fn representative(&self, coset: u32) -> FreeWord<BaseGenerator> {
        FreeWord::power(self.stable, coset as i64)
    }

    /// The word `K a (overline{K a})^-1` in `F0`.
    pub fn schreier_word(&self, s: &SchreierGenerator) -> Result<FreeWord<BaseGenerator>, RewriteError> {
        let next = (s.coset + self.step(&s.base)?) % self.p;
        Ok(self.representative(s.coset)
            * FreeWord::generator(s.base)
            * self.representative(next).inverse())
    }

    pub fn is_freely_trivial(&self, s: &SchreierGenerator) -> bool {
        self.schreier_word(s).is_ok_and(|w| w.is_empty())
    }

    /// Generators discarded before any relator is considered: every
    /// `S_{K, x_1}` when `x_1` is the stable letter (all but one are freely
    /// trivial and the last one is `x_1^p`), and the freely trivial
    /// `S_{K, a_1}` otherwise.
    pub fn is_deleted(&self, s: &SchreierGenerator) -> bool {
        match self.stable {
            BaseGenerator::X(_) => s.base == self.stable,
            _ => self.is_freely_trivial(s),
        }
    }

    pub fn generators(&self) -> Vec<SchreierGenerator> {
        self.alphabet()
            .into_iter()
            .flat_map(|base| (0..self.p).map(move |coset| SchreierGenerator { coset, base }))
            .collect()
    }

    /// The Reidemeister rewriting of a kernel word, keeping every Schreier
    /// generator.
    pub fn rewrite(&self, w: &FreeWord<BaseGenerator>) -> Result<FreeWord<SchreierGenerator>, RewriteError> {
        let p = self.p;
        let mut coset = 0u32;
        let mut out = FreeWord::identity();
        for l in w.letters() {
            let step = self.step(&l.symbol)?;
            if l.inverse {
                coset = (coset + p - step) % p;
                out.push(Letter::neg(SchreierGenerator { coset, base: l.symbol }));
            } else {
                out.push(Letter::pos(SchreierGenerator { coset, base: l.symbol }));
                coset = (coset + step) % p;
            }
        }
        if coset != 0 {
            return Err(RewriteError::NotInKernel { coset });
        }
        Ok(out)
    }

    pub fn delete_trivial(&self, w: &FreeWord<SchreierGenerator>) -> FreeWord<SchreierGenerator> {
        w.substitute(|s| self.is_deleted(s).then(FreeWord::identity))
    }

    /// Substitute `S_{K,a} -> K a (overline{K a})^-1`.
    pub fn expand(&self, w: &FreeWord<SchreierGenerator>) -> Result<FreeWord<BaseGenerator>, RewriteError> {
        let mut out = FreeWord::identity();
        for l in w.letters() {
            let s = self.schreier_word(&l.symbol)?;
            out.append(&if l.inverse { s.inverse() } else { s });
        }
        Ok(out)
    }

    /// Image of a kernel element under conjugation by the stable letter,
    /// which is how the automorphism `h` acts on the kernel.
    pub fn conjugate_by_stable(
        &self,
        w: &FreeWord<SchreierGenerator>,
    ) -> Result<FreeWord<SchreierGenerator>, RewriteError> {
        let u = FreeWord::generator(self.stable);
        let conj = &u * self.expand(w)? * u.inverse();
        self.rewrite(&conj)
    }
}

/// Where a relator of the rewritten presentation came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum RelatorOrigin {
    /// `tau(K R K^-1)` for the long surface relator `R`.
    Surface { coset: u32 },
    /// `tau(K x_j^p K^-1)`.
    Power { generator: u32, coset: u32 },
}

/// Presentation of the kernel produced by the rewriting, before any
/// simplification.
#[derive(Debug, Clone)]
pub struct SchreierPresentation {
    pub data: PrimeOrderData,
    pub system: SchreierSystem,
    pub presentation: Presentation<SchreierGenerator>,
    pub origins: Vec<RelatorOrigin>,
}

/// Presentation of `F0`: the long relator first, then the `x_j^p`.
pub fn base_presentation(d: &PrimeOrderData) -> Presentation<BaseGenerator> {
    let mut generators = Vec::new();
    for i in 1..=d.g0 {
        generators.push(BaseGenerator::A(i));
        generators.push(BaseGenerator::B(i));
    }
    generators.extend((1..=d.t as u32).map(BaseGenerator::X));
    let mut relators = vec![long_relator(d)];
    for j in 1..=d.t as u32 {
        relators.push(FreeWord::power(BaseGenerator::X(j), d.p as i64));
    }
    Presentation { generators, relators }
}

/// `x_1 ... x_t [a_1, b_1] ... [a_g0, b_g0]`.
pub fn long_relator(d: &PrimeOrderData) -> FreeWord<BaseGenerator> {
    let mut r = FreeWord::identity();
    for j in 1..=d.t as u32 {
        r.append(&FreeWord::generator(BaseGenerator::X(j)));
    }
    for i in 1..=d.g0 {
        r.append(&FreeWord::commutator(
            &FreeWord::generator(BaseGenerator::A(i)),
            &FreeWord::generator(BaseGenerator::B(i)),
        ));
    }
    r
}

/// Kernel presentation from the rewriting, on the normalized class.
///
/// Relators are `tau(K R K^-1)` for every coset and `tau(K x_j^p K^-1)`
/// for every coset and `j >= 2`; `tau(K x_1^p K^-1)` is empty once the
/// `S_{K, x_1}` are deleted and is not listed.
pub fn subgroup_presentation(d: &PrimeOrderData) -> SchreierPresentation {
    let data = d.normalized();
    let system = SchreierSystem::for_data(&data);
    let generators: Vec<SchreierGenerator> = system
        .generators()
        .into_iter()
        .filter(|s| !system.is_deleted(s))
        .collect();
    let mut relators = Vec::new();
    let mut origins = Vec::new();
    let conj = |coset: u32, w: &FreeWord<BaseGenerator>| {
        let k = system.representative(coset);
        let tau = system
            .rewrite(&(&k * w * k.inverse()))
            .expect("conjugates of relators lie in the kernel");
        system.delete_trivial(&tau)
    };
    let r = long_relator(&data);
    for coset in 0..data.p {
        relators.push(conj(coset, &r));
        origins.push(RelatorOrigin::Surface { coset });
    }
    for j in 2..=data.t as u32 {
        let xp = FreeWord::power(BaseGenerator::X(j), data.p as i64);
        for coset in 0..data.p {
            relators.push(conj(coset, &xp));
            origins.push(RelatorOrigin::Power { generator: j, coset });
        }
    }
    SchreierPresentation {
        data,
        system,
        presentation: Presentation { generators, relators },
        origins,
    }
}
