use super::{belongs_to, enumerate_basis, BasisElement, BasisError, LabeledMatrix};
use crate::invariants::{inverse_mod, PrimeOrderData};
use crate::matrix::IntMatrix;
use crate::symplectic::split_form;

/// `s^` is the smallest `s` with `m_s != 0` and `q^ s^ = 1 (mod p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResidueContext {
    pub p: u32,
    pub s_hat: u32,
    pub q_hat: u32,
}

impl ResidueContext {
    pub fn new(p: u32, s_hat: u32) -> Option<Self> {
        Some(ResidueContext { p, s_hat, q_hat: inverse_mod(s_hat as i64, p)? })
    }

    /// `None` when there are no fixed points.
    pub fn for_data(d: &PrimeOrderData) -> Option<Self> {
        Self::new(d.p, d.smallest_rotation()?)
    }

    fn matches(&self, d: &PrimeOrderData) -> bool {
        Self::for_data(d).is_some_and(|c| c == *self)
    }
}

/// `[v]`: the least non-negative residue of `q^ v` mod `p`.
pub fn bracket_residue(v: i64, ctx: &ResidueContext) -> u32 {
    (ctx.q_hat as i64 * v.rem_euclid(ctx.p as i64)).rem_euclid(ctx.p as i64) as u32
}

/// `h^0(X_{r,v_r}) x h^k(X_{s,v_s})` for `(r, v_r) <= (s, v_s)`.
fn exceptional_normal_form(r: (u32, u32), s: (u32, u32), k: u32, ctx: &ResidueContext) -> i64 {
    let br = |v: i64| bracket_residue(v, ctx);
    let kk = br(k as i64);
    let ks = br(k as i64 + s.0 as i64);
    if r == s {
        let ss = br(s.0 as i64);
        if kk <= ss && ss < ks {
            1
        } else if ks < ss && ss < kk {
            -1
        } else {
            0
        }
    } else {
        let rr = br(r.0 as i64);
        if kk < rr && rr <= ks {
            1
        } else if ks < rr && rr <= kk {
            -1
        } else {
            0
        }
    }
}

/// Algebraic intersection number of two basis curves of `d`.
///
/// Exceptional pairs are reduced with `C x D = -(D x C)` and
/// `h^j(C) x h^k(D) = C x h^{k-j}(D)` to the case `C <= D`, power 0 on the
/// left.
pub fn intersection_number(
    e1: &BasisElement,
    e2: &BasisElement,
    d: &PrimeOrderData,
    ctx: Option<&ResidueContext>,
) -> Result<i64, BasisError> {
    for e in [e1, e2] {
        if !belongs_to(e, d) {
            return Err(BasisError::ContextMismatch(e.to_string()));
        }
    }
    use BasisElement::*;
    Ok(match (*e1, *e2) {
        (LiftA { w, power }, LiftB { w: w2, power: p2 }) if w == w2 && power == p2 => 1,
        (LiftB { w, power }, LiftA { w: w2, power: p2 }) if w == w2 && power == p2 => -1,
        (Alpha, Beta) => 1,
        (Beta, Alpha) => -1,
        (Exceptional { s: s1, v: v1, power: j }, Exceptional { s: s2, v: v2, power: k }) => {
            let ctx = match ctx {
                Some(c) if c.matches(d) => c,
                _ => return Err(BasisError::ContextMismatch("residue context".into())),
            };
            let p = d.p;
            let (a, b) = ((s1, v1), (s2, v2));
            if a <= b {
                exceptional_normal_form(a, b, (k + p - j) % p, ctx)
            } else {
                -exceptional_normal_form(b, a, (j + p - k) % p, ctx)
            }
        }
        _ => 0,
    })
}

/// The `2g x 2g` intersection matrix over [`enumerate_basis`].
pub fn intersection_matrix(d: &PrimeOrderData) -> LabeledMatrix {
    let basis = enumerate_basis(d);
    let ctx = ResidueContext::for_data(d);
    let n = basis.len();
    let matrix = IntMatrix::from_fn(n, n, |i, j| {
        intersection_number(&basis[i], &basis[j], d, ctx.as_ref())
            .expect("basis elements belong to their own class")
    });
    LabeledMatrix::new(basis, matrix)
}

/// `((0, I_a, 0, 0), (-I_a, 0, 0, 0), (0, 0, 0, I_q), (0, 0, -I_q, 0))`
/// with `a = p g0`, `q = (p-1)(t-2)/2` when there are fixed points and
/// `a = p (g0 - 1)`, `q = 1` when there are none.
pub fn canonical_intersection(d: &PrimeOrderData) -> Result<IntMatrix, BasisError> {
    let p = d.p as i64;
    let (a, q) = if d.t == 0 {
        (p * (d.g0 as i64 - 1), 1)
    } else {
        let twice = (p - 1) * (d.t as i64 - 2);
        if twice % 2 != 0 {
            return Err(BasisError::OddQ(twice));
        }
        (p * d.g0 as i64, twice / 2)
    };
    Ok(IntMatrix::block_diagonal(&[split_form(a as usize), split_form(q as usize)]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{canonical_order, exceptional_pairs};
    use crate::invariants::{conjugacy_classes, validate, validate_fixed_point_free};
    use proptest::prelude::*;

    fn exc(s: u32, v: u32, power: u32) -> BasisElement {
        BasisElement::Exceptional { s, v, power }
    }

    #[test]
    fn residues() {
        let ctx = ResidueContext::new(5, 1).unwrap();
        assert_eq!(bracket_residue(7, &ctx), 2);
        let ctx = ResidueContext::new(5, 2).unwrap();
        assert_eq!(ctx.q_hat, 3);
        assert_eq!(bracket_residue(4, &ctx), 2);
        assert_eq!(bracket_residue(0, &ctx), 0);
        assert_eq!(bracket_residue(-1, &ctx), 2);
        for v in 0..5 {
            assert_eq!((ctx.s_hat * bracket_residue(v, &ctx)) % 5, v as u32);
        }
    }

    #[test]
    fn worked_example_entries() {
        let d = validate(3, &[1, 1, 2, 1, 1], 0).unwrap();
        let ctx = ResidueContext::for_data(&d).unwrap();
        let x = |a, b| intersection_number(&a, &b, &d, Some(&ctx)).unwrap();
        assert_eq!(x(exc(1, 3, 0), exc(1, 3, 1)), 1);
        assert_eq!(x(exc(1, 3, 0), exc(2, 1, 1)), -1);
        assert_eq!(x(exc(1, 3, 0), exc(1, 4, 1)), 0);
        assert_eq!(
            intersection_number(&exc(1, 1, 0), &exc(1, 3, 0), &d, Some(&ctx)),
            Err(BasisError::ContextMismatch("h^0(X_{1,1})".into()))
        );
        let other = ResidueContext::new(3, 2).unwrap();
        assert!(intersection_number(&exc(1, 3, 0), &exc(1, 4, 0), &d, Some(&other)).is_err());
    }

    #[test]
    fn worked_example_matrix() {
        let d = validate(3, &[1, 1, 2, 1, 1], 0).unwrap();
        let expected = IntMatrix::from_rows(&[
            [0, 1, 1, 0, 1, -1],
            [-1, 0, -1, 1, 0, 1],
            [-1, 1, 0, 1, 1, -1],
            [0, -1, -1, 0, 0, 1],
            [-1, 0, -1, 0, 0, 0],
            [1, -1, 1, -1, 0, 0],
        ]);
        assert_eq!(intersection_matrix(&d).matrix, expected);
    }

    #[test]
    fn lifts_pair_canonically() {
        let d = validate(3, &[1, 2], 2).unwrap();
        let i = intersection_matrix(&d);
        let order = canonical_order(&i.labels);
        assert_eq!(i.matrix.permuted(&order), canonical_intersection(&d).unwrap());
        let a = BasisElement::LiftA { w: 1, power: 0 };
        assert_eq!(intersection_number(&a, &BasisElement::LiftB { w: 1, power: 0 }, &d, None), Ok(1));
        assert_eq!(intersection_number(&a, &BasisElement::LiftB { w: 1, power: 1 }, &d, None), Ok(0));
    }

    #[test]
    fn fixed_point_free_is_canonical() {
        for (p, g0) in [(2, 2), (3, 2), (5, 3)] {
            let d = validate_fixed_point_free(p, g0).unwrap();
            let i = intersection_matrix(&d);
            let order = canonical_order(&i.labels);
            assert_eq!(i.matrix.permuted(&order), canonical_intersection(&d).unwrap());
        }
    }

    #[test]
    fn canonical_shapes() {
        let d = validate(3, &[1, 1, 2, 1, 1], 0).unwrap();
        assert_eq!(canonical_intersection(&d).unwrap(), split_form(3));
        let d = validate(2, &[1, 1], 1).unwrap();
        assert_eq!(canonical_intersection(&d).unwrap(), split_form(2));
    }

    /// Both readings of the same-pair `-1` case, to show which one gives an
    /// alternating unimodular form.
    fn same_pair_variant(p: u32, n: &[u32], strict: bool) -> IntMatrix {
        let d = validate(p, n, 0).unwrap();
        let ctx = ResidueContext::for_data(&d).unwrap();
        let basis = enumerate_basis(&d);
        IntMatrix::from_fn(basis.len(), basis.len(), |i, j| {
            let (BasisElement::Exceptional { s: s1, v: v1, power: a }, BasisElement::Exceptional { s: s2, v: v2, power: b }) =
                (basis[i], basis[j])
            else {
                unreachable!()
            };
            let f = |r: (u32, u32), s: (u32, u32), k: u32| {
                if r == s && !strict {
                    let br = |v: i64| bracket_residue(v, &ctx);
                    let (kk, ss, ks) = (br(k as i64), br(s.0 as i64), br((k + s.0) as i64));
                    if kk <= ss && ss < ks {
                        1
                    } else if ks < ss && ss <= kk {
                        -1
                    } else {
                        0
                    }
                } else {
                    exceptional_normal_form(r, s, k, &ctx)
                }
            };
            if (s1, v1) <= (s2, v2) {
                f((s1, v1), (s2, v2), (b + p - a) % p)
            } else {
                -f((s2, v2), (s1, v1), (a + p - b) % p)
            }
        })
    }

    #[test]
    fn same_pair_rule_is_strict() {
        let mut loose_failures = 0;
        for p in [5, 7] {
            for t in 3..=6 {
                for d in conjugacy_classes(p, t, 0) {
                    let strict = same_pair_variant(p, &d.n, true);
                    assert!(strict.is_skew_symmetric());
                    assert_eq!(strict.determinant(), 1);
                    let loose = same_pair_variant(p, &d.n, false);
                    if !loose.is_skew_symmetric() || loose.determinant() != 1 {
                        loose_failures += 1;
                    }
                }
            }
        }
        assert!(loose_failures > 0);
    }

    fn class() -> impl Strategy<Value = PrimeOrderData> {
        (prop::sample::select(vec![2u32, 3, 5, 7]), 2usize..=8, 0u32..=2).prop_flat_map(|(p, t, g0)| {
            let classes = conjugacy_classes(p, t, g0);
            let fallback = conjugacy_classes(3, 5, 0);
            let pool = if classes.is_empty() { fallback } else { classes };
            prop::sample::select(pool)
        })
    }

    proptest! {
        #[test]
        fn power_shift(d in class(), i in 0usize..64, j in 0usize..64, shift in 0u32..7) {
            let pairs = exceptional_pairs(&d.m);
            prop_assume!(!pairs.is_empty());
            let ctx = ResidueContext::for_data(&d).unwrap();
            let p = d.p;
            let (c, dd) = (pairs[i % pairs.len()], pairs[j % pairs.len()]);
            let shift = shift % p;
            for a in 0..p - 1 {
                for b in 0..p - 1 {
                    let (a2, b2) = (a + shift, b + shift);
                    if a2 < p - 1 && b2 < p - 1 {
                        let x = intersection_number(&exc(c.0, c.1, a), &exc(dd.0, dd.1, b), &d, Some(&ctx)).unwrap();
                        let y = intersection_number(&exc(c.0, c.1, a2), &exc(dd.0, dd.1, b2), &d, Some(&ctx)).unwrap();
                        prop_assert_eq!(x, y);
                    }
                }
            }
        }

        #[test]
        fn form_is_alternating_and_unimodular(d in class()) {
            let i = intersection_matrix(&d).matrix;
            prop_assert_eq!(i.rows(), 2 * d.g as usize);
            prop_assert!(i.is_skew_symmetric());
            prop_assert_eq!(i.determinant(), 1);
        }
    }
}
