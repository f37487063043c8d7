//! Tietze eliminations that take the rewritten kernel presentation down to a
//! single defining relator on `2g` generators.

use std::collections::BTreeMap;

use super::schreier::{long_relator, subgroup_presentation, RelatorOrigin, SchreierPresentation, SchreierSystem};
use super::symbols::{BaseGenerator, GeneratorSymbol, SchreierGenerator};
use super::word::FreeWord;
use super::{Presentation, RewriteError};
use crate::invariants::PrimeOrderData;

/// One-relator presentation of the surface group, together with the
/// bookkeeping needed to push any kernel word through the same
/// eliminations.
#[derive(Debug, Clone)]
pub struct SimplifiedPresentation {
    pub data: PrimeOrderData,
    pub presentation: Presentation<GeneratorSymbol>,
    system: SchreierSystem,
    /// Eliminated Schreier generators with the words that replace them, in
    /// elimination order.
    eliminations: Vec<(SchreierGenerator, FreeWord<SchreierGenerator>)>,
    naming: BTreeMap<SchreierGenerator, GeneratorSymbol>,
}

impl SimplifiedPresentation {
    pub fn relator(&self) -> &FreeWord<GeneratorSymbol> {
        &self.presentation.relators[0]
    }

    pub fn generators(&self) -> &[GeneratorSymbol] {
        &self.presentation.generators
    }

    pub fn system(&self) -> &SchreierSystem {
        &self.system
    }

    pub fn schreier_of(&self, g: &GeneratorSymbol) -> Option<SchreierGenerator> {
        self.naming.iter().find(|(_, v)| *v == g).map(|(k, _)| *k)
    }

    /// Rewrite a word in Schreier generators into the surviving generators.
    pub fn from_schreier(
        &self,
        w: &FreeWord<SchreierGenerator>,
    ) -> Result<FreeWord<GeneratorSymbol>, RewriteError> {
        let elim: BTreeMap<_, _> = self.eliminations.iter().cloned().collect();
        let mut current = self.system.delete_trivial(w);
        // each pass removes one layer of the (acyclic) elimination chain
        for _ in 0..=self.eliminations.len() {
            if !current.letters().iter().any(|l| elim.contains_key(&l.symbol)) {
                break;
            }
            current = current.substitute(|s| elim.get(s).cloned());
        }
        let mut missing = None;
        let out = current.map_symbols(|s| match self.naming.get(s) {
            Some(g) => *g,
            None => {
                missing = Some(*s);
                GeneratorSymbol::alpha()
            }
        });
        match missing {
            Some(s) => Err(RewriteError::MalformedInput(format!(
                "generator {s} survived the eliminations"
            ))),
            None => Ok(out),
        }
    }

    /// Express a kernel word of `F0` in the surviving generators.
    pub fn express(&self, w: &FreeWord<BaseGenerator>) -> Result<FreeWord<GeneratorSymbol>, RewriteError> {
        self.from_schreier(&self.system.rewrite(w)?)
    }
}

fn malformed(msg: impl Into<String>) -> RewriteError {
    RewriteError::MalformedInput(msg.into())
}

/// The unique Schreier generator over `base` in `w`.
fn single_letter(
    w: &FreeWord<SchreierGenerator>,
    base: BaseGenerator,
) -> Result<SchreierGenerator, RewriteError> {
    let mut found = w.letters().iter().filter(|l| l.symbol.base == base);
    match (found.next(), found.next()) {
        (Some(l), None) => Ok(l.symbol),
        _ => Err(malformed(format!("expected exactly one {base} letter in {w}"))),
    }
}

/// Eliminate down to one relator when there are fixed points.
///
/// 1. The power relators `tau(K x_j^p K^-1)` with `K != 1` are cyclic
///    permutations of the `K = 1` one and are dropped.
/// 2. Each surface relator `tau(K R K^-1)` contains one `S_{., x_2}`; solving
///    for it (cosets in increasing order) and substituting into the inverted
///    `tau(x_2^p)` removes the `x_2` family and gives `R^`.
/// 3. For `j >= 3`, `tau(x_j^p)` is solved for `h^{p-1}(X_j)` and substituted.
///
/// `X_j` denotes `S_{K_j, x_j}` where `K_j` represents the prefix
/// `x_1 ... x_{j-1}` of the long relator, so that `R^^` begins
/// `h(X_3) h(X_4) ...`.
pub fn simplify_to_single_relator(pres: &SchreierPresentation) -> Result<SimplifiedPresentation, RewriteError> {
    let d = &pres.data;
    let p = d.p;
    let t = d.t as u32;
    if t < 2 {
        return Err(malformed("fixed-point presentation needs t >= 2"));
    }
    let relators = &pres.presentation.relators;
    if relators.len() != pres.origins.len() {
        return Err(malformed("relator origins do not match relators"));
    }
    let mut surface: BTreeMap<u32, &FreeWord<SchreierGenerator>> = BTreeMap::new();
    let mut powers: BTreeMap<(u32, u32), &FreeWord<SchreierGenerator>> = BTreeMap::new();
    for (origin, rel) in pres.origins.iter().zip(relators) {
        match *origin {
            RelatorOrigin::Surface { coset } => {
                surface.insert(coset, rel);
            }
            RelatorOrigin::Power { generator, coset } => {
                powers.insert((generator, coset), rel);
            }
        }
    }
    if surface.len() != p as usize {
        return Err(malformed("missing surface relators"));
    }

    // (1) conjugate power relators
    let mut power_base = BTreeMap::new();
    for j in 2..=t {
        let base = *powers
            .get(&(j, 0))
            .ok_or_else(|| malformed(format!("missing power relator for x_{j}")))?;
        for coset in 1..p {
            let other = powers
                .get(&(j, coset))
                .ok_or_else(|| malformed(format!("missing conjugate power relator for x_{j}")))?;
            if !other.is_cyclic_conjugate_of(base) {
                return Err(malformed(format!(
                    "power relator for x_{j} at coset {coset} is not a cyclic permutation"
                )));
            }
        }
        power_base.insert(j, base);
    }

    // base point of X_j: the coset at which x_j is read in tau(R)
    let first = surface[&0];
    let mut base_coset = BTreeMap::new();
    for j in 2..=t {
        base_coset.insert(j, single_letter(first, BaseGenerator::X(j))?.coset);
    }

    // (2) the x_2 family
    let mut eliminations = Vec::new();
    for rel in surface.values() {
        let target = single_letter(rel, BaseGenerator::X(2))?;
        let solution = rel
            .solve_for(&target)
            .ok_or_else(|| malformed(format!("cannot solve for {target}")))?;
        eliminations.push((target, solution));
    }
    let elim_x2: BTreeMap<_, _> = eliminations.iter().cloned().collect();
    if elim_x2.len() != p as usize {
        return Err(malformed("surface relators do not determine every S_{K,x_2}"));
    }
    let mut reduced = power_base[&2]
        .inverse()
        .substitute(|s| elim_x2.get(s).cloned());

    // (3) h^{p-1}(X_j) for j >= 3
    for j in 3..=t {
        let target = SchreierGenerator {
            base: BaseGenerator::X(j),
            coset: (base_coset[&j] + p - 1) % p,
        };
        let solution = power_base[&j]
            .solve_for(&target)
            .ok_or_else(|| malformed(format!("cannot solve for {target}")))?;
        reduced = reduced.substitute(|s| (*s == target).then(|| solution.clone()));
        eliminations.push((target, solution));
    }
    let relator = reduced.cyclically_reduced();

    let mut naming = BTreeMap::new();
    let mut generators = Vec::new();
    for i in 1..=d.g0 {
        for (base, ctor) in [
            (BaseGenerator::A(i), GeneratorSymbol::a as fn(u32, u32) -> GeneratorSymbol),
            (BaseGenerator::B(i), GeneratorSymbol::b),
        ] {
            for coset in 0..p {
                let sym = ctor(i, coset);
                naming.insert(SchreierGenerator { base, coset }, sym);
                generators.push(sym);
            }
        }
    }
    for j in 3..=t {
        for power in 0..p - 1 {
            let coset = (base_coset[&j] + power) % p;
            let sym = GeneratorSymbol::x(j, power);
            naming.insert(SchreierGenerator { base: BaseGenerator::X(j), coset }, sym);
            generators.push(sym);
        }
    }
    let mut missing = None;
    let relator = relator.map_symbols(|s| match naming.get(s) {
        Some(g) => *g,
        None => {
            missing = Some(*s);
            GeneratorSymbol::alpha()
        }
    });
    if let Some(s) = missing {
        return Err(malformed(format!("{s} was not eliminated")));
    }

    Ok(SimplifiedPresentation {
        data: d.clone(),
        presentation: Presentation { generators, relators: vec![relator] },
        system: pres.system.clone(),
        eliminations,
        naming,
    })
}

/// One-relator presentation in the fixed-point-free case.
///
/// With `u = a_1` as stable letter the surface relators read
/// `h^{k+1}(B) h^k(B)^-1 h^k(P)` for `k < p - 1` and
/// `alpha B alpha^-1 beta^-1 h^{p-1}(P)` for `k = p - 1`, where
/// `B = S_{1, b_1}`, `beta = h^{p-1}(B)`, `alpha = a_1^p` and
/// `P = [A_2, B_2] ... [A_g0, B_g0]`. Eliminating `h^k(B)` for
/// `k = p-2, ..., 0` leaves
/// `alpha Q beta alpha^-1 beta^-1 h^{p-1}(P)` with
/// `Q = P h(P) ... h^{p-2}(P)`, a cyclic conjugate of the inverse of
/// `beta alpha beta^-1 (h^{p-1}(P) alpha Q)^-1`.
pub fn t0_presentation(d: &PrimeOrderData) -> Result<SimplifiedPresentation, RewriteError> {
    if d.t != 0 {
        return Err(RewriteError::BadT(d.t));
    }
    let pres = subgroup_presentation(d);
    let d = &pres.data;
    let p = d.p;
    let mut rels: Vec<FreeWord<SchreierGenerator>> = pres.presentation.relators.clone();
    if rels.len() != p as usize {
        return Err(malformed("expected one surface relator per coset"));
    }
    let b1 = BaseGenerator::B(1);
    let mut eliminations = Vec::new();
    for k in (0..p - 1).rev() {
        let target = SchreierGenerator { base: b1, coset: k };
        let solution = rels[k as usize]
            .solve_for(&target)
            .ok_or_else(|| malformed(format!("cannot solve for {target}")))?;
        for (r, rel) in rels.iter_mut().enumerate() {
            if r as u32 != k {
                *rel = rel.substitute(|s| (*s == target).then(|| solution.clone()));
            }
        }
        eliminations.push((target, solution));
    }
    let relator = rels[p as usize - 1].cyclically_reduced();

    let mut naming = BTreeMap::new();
    let mut generators = Vec::new();
    for i in 2..=d.g0 {
        for coset in 0..p {
            let sym = GeneratorSymbol::a(i, coset);
            naming.insert(SchreierGenerator { base: BaseGenerator::A(i), coset }, sym);
            generators.push(sym);
        }
        for coset in 0..p {
            let sym = GeneratorSymbol::b(i, coset);
            naming.insert(SchreierGenerator { base: BaseGenerator::B(i), coset }, sym);
            generators.push(sym);
        }
    }
    naming.insert(
        SchreierGenerator { base: BaseGenerator::A(1), coset: p - 1 },
        GeneratorSymbol::alpha(),
    );
    naming.insert(SchreierGenerator { base: b1, coset: p - 1 }, GeneratorSymbol::beta());
    generators.push(GeneratorSymbol::alpha());
    generators.push(GeneratorSymbol::beta());

    let simplified = SimplifiedPresentation {
        data: d.clone(),
        presentation: Presentation { generators, relators: vec![] },
        system: pres.system.clone(),
        eliminations,
        naming,
    };
    let relator = simplified.from_schreier(&relator)?;
    Ok(SimplifiedPresentation {
        presentation: Presentation {
            relators: vec![relator],
            ..simplified.presentation.clone()
        },
        ..simplified
    })
}

/// Dispatch on the number of fixed points.
pub fn single_relator_presentation(d: &PrimeOrderData) -> Result<SimplifiedPresentation, RewriteError> {
    if d.t == 0 {
        t0_presentation(d)
    } else {
        simplify_to_single_relator(&subgroup_presentation(d))
    }
}

/// The automorphism `h` (conjugation by the stable letter) on the surviving
/// generators.
pub fn induced_action_on_generators(
    pres: &SimplifiedPresentation,
) -> Result<BTreeMap<GeneratorSymbol, FreeWord<GeneratorSymbol>>, RewriteError> {
    let mut out = BTreeMap::new();
    for g in pres.generators() {
        let s = pres
            .schreier_of(g)
            .ok_or_else(|| malformed(format!("{g} has no Schreier generator")))?;
        let image = pres.system.conjugate_by_stable(&FreeWord::generator(s))?;
        out.insert(*g, pres.from_schreier(&image)?);
    }
    Ok(out)
}

/// Check that the long relator of `F0` maps to a consequence of the
/// single relator: `tau(R)` must become trivial or a cyclic conjugate of
/// `R^^` or its inverse after the eliminations. Used by tests.
pub fn long_relator_image(pres: &SimplifiedPresentation) -> Result<FreeWord<GeneratorSymbol>, RewriteError> {
    pres.express(&long_relator(&pres.data))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{conjugacy_classes, validate};
    use crate::rewriter::{check_fully_linked, Letter};
    use proptest::prelude::*;

    fn x(j: u32, k: u32) -> FreeWord<GeneratorSymbol> {
        FreeWord::generator(GeneratorSymbol::x(j, k))
    }

    #[test]
    fn worked_example_relator() {
        let d = validate(3, &[1, 1, 2, 1, 1], 0).unwrap();
        let sp = single_relator_presentation(&d).unwrap();
        let (a, b, c) = (x(3, 0), x(4, 0), x(5, 0));
        let (ha, hb, hc) = (x(3, 1), x(4, 1), x(5, 1));
        let expected = &ha * &hb * &hc * &a * &b * &c
            * ha.inverse() * a.inverse() * hb.inverse() * b.inverse() * c.inverse() * hc.inverse();
        assert_eq!(sp.relator(), &expected);
        assert_eq!(sp.generators().len(), 6);
        assert!(sp.presentation.is_consistent());
        assert!(check_fully_linked(sp.relator()).unwrap());
    }

    #[test]
    fn worked_example_with_handles() {
        // P = [A_1, B_1] sits after h(c), after c and at the end, at levels 1, 0, 2
        let d = validate(3, &[1, 1, 2, 1, 1], 1).unwrap();
        let sp = single_relator_presentation(&d).unwrap();
        let p = |k: u32| {
            FreeWord::commutator(
                &FreeWord::generator(GeneratorSymbol::a(1, k)),
                &FreeWord::generator(GeneratorSymbol::b(1, k)),
            )
        };
        let (a, b, c) = (x(3, 0), x(4, 0), x(5, 0));
        let (ha, hb, hc) = (x(3, 1), x(4, 1), x(5, 1));
        let expected = &ha * &hb * &hc * p(1) * &a * &b * &c * p(0)
            * ha.inverse() * a.inverse() * hb.inverse() * b.inverse() * c.inverse() * hc.inverse()
            * p(2);
        assert!(sp.relator().is_cyclic_conjugate_of(&expected), "{}", sp.relator());
        assert_eq!(sp.generators().len(), 2 * d.g as usize);
    }

    #[test]
    fn t0_relator_shape() {
        let d = validate(3, &[], 2).unwrap();
        let sp = single_relator_presentation(&d).unwrap();
        assert_eq!(sp.generators().len(), 2 * d.g as usize);
        let alpha = FreeWord::generator(GeneratorSymbol::alpha());
        let beta = FreeWord::generator(GeneratorSymbol::beta());
        let ph = |k: u32| {
            FreeWord::commutator(
                &FreeWord::generator(GeneratorSymbol::a(2, k)),
                &FreeWord::generator(GeneratorSymbol::b(2, k)),
            )
        };
        let q = ph(0) * ph(1);
        // beta alpha beta^-1 = h^{p-1}(P) alpha Q
        let lhs = &beta * &alpha * beta.inverse();
        let rhs = ph(2) * &alpha * &q;
        let rel = lhs * rhs.inverse();
        assert!(
            sp.relator().is_cyclic_conjugate_of(&rel.inverse()),
            "{}",
            sp.relator()
        );
        assert!(check_fully_linked(sp.relator()).unwrap());
    }

    #[test]
    fn t0_action_on_alpha_beta() {
        let d = validate(5, &[], 2).unwrap();
        let sp = single_relator_presentation(&d).unwrap();
        let h = induced_action_on_generators(&sp).unwrap();
        let alpha = FreeWord::generator(GeneratorSymbol::alpha());
        assert_eq!(h[&GeneratorSymbol::alpha()], alpha);
        // the top power wraps round through alpha
        let a2 = FreeWord::generator(GeneratorSymbol::a(2, 0));
        assert_eq!(h[&GeneratorSymbol::a(2, 4)], &alpha * &a2 * alpha.inverse());
        assert_eq!(h[&GeneratorSymbol::a(2, 1)], FreeWord::generator(GeneratorSymbol::a(2, 2)));
    }

    #[test]
    fn relators_of_f0_become_trivial() {
        for (p, t, g0) in [(3, 5, 0), (5, 3, 1), (7, 4, 0), (2, 6, 1), (3, 0, 2), (5, 2, 1)] {
            for d in conjugacy_classes(p, t, g0) {
                let sp = single_relator_presentation(&d).unwrap();
                let r = long_relator(&sp.data);
                let image = sp.express(&r).unwrap();
                assert!(
                    image.is_empty() || image.is_cyclic_conjugate_of(sp.relator())
                        || image.is_cyclic_conjugate_of(&sp.relator().inverse()),
                    "{image}"
                );
                assert_eq!(sp.generators().len(), 2 * sp.data.g as usize);
                assert!(sp.relator().abelianize().is_empty());
                assert!(check_fully_linked(sp.relator()).unwrap());
            }
        }
    }

    #[test]
    fn action_has_order_p_on_abelianization() {
        for (p, t, g0) in [(3, 5, 0), (5, 3, 1), (3, 0, 2), (2, 4, 1)] {
            for d in conjugacy_classes(p, t, g0) {
                let sp = single_relator_presentation(&d).unwrap();
                let h = induced_action_on_generators(&sp).unwrap();
                for g in sp.generators() {
                    let mut w = FreeWord::generator(*g);
                    for _ in 0..p {
                        w = w.map_words(|s| h[s].clone());
                    }
                    let mut diff = w * FreeWord::generator(*g).inverse();
                    diff = diff.cyclically_reduced();
                    // h^p is conjugation by u^p, trivial in homology
                    let ab = diff.abelianize();
                    assert!(ab.is_empty(), "{g}: {ab:?}");
                }
            }
        }
    }

    fn kernel_word(d: &PrimeOrderData) -> impl Strategy<Value = FreeWord<BaseGenerator>> {
        let sys = SchreierSystem::for_data(d);
        let alphabet = sys.alphabet();
        prop::collection::vec((0..alphabet.len(), any::<bool>()), 0..30).prop_map(move |v| {
            let mut w = FreeWord::from_letters(
                v.iter().map(|&(i, inv)| Letter { symbol: alphabet[i], inverse: inv }),
            );
            // close up with the stable letter
            let c = sys.coset_exponent(&w).unwrap();
            w.append(&FreeWord::power(sys.stable(), -(c as i64)));
            w
        })
    }

    proptest! {
        #[test]
        fn rewriting_round_trips(w in kernel_word(&validate(5, &[1, 2, 4, 3], 1).unwrap())) {
            let d = validate(5, &[1, 2, 4, 3], 1).unwrap();
            let sys = SchreierSystem::for_data(&d);
            let tau = sys.rewrite(&w).unwrap();
            prop_assert_eq!(sys.expand(&tau).unwrap(), w);
        }

        #[test]
        fn rewriting_round_trips_without_fixed_points(w in kernel_word(&validate(3, &[], 2).unwrap())) {
            let d = validate(3, &[], 2).unwrap();
            let sys = SchreierSystem::for_data(&d);
            let tau = sys.rewrite(&w).unwrap();
            prop_assert_eq!(sys.expand(&tau).unwrap(), w);
        }
    }
}
