//! The full invariant suite for one class, and a sweep over small classes.

use rayon::prelude::*;
use serde::Serialize;

use crate::basis::{
    action_matrix, canonical_intersection, canonical_order, enumerate_basis, homology_action_full,
    intersection_matrix, type_counts,
};
use crate::invariants::{conjugacy_classes, is_prime, PrimeOrderData};
use crate::rewriter::{check_evenly_worded, check_fully_linked, single_relator_presentation};
use crate::symplectic::{is_symplectic, preserves_form, symplectic_basis, transform_action};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub p: u32,
    pub n: Vec<u32>,
    pub g0: u32,
    pub g: u32,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn record(&mut self, name: &'static str, result: Result<bool, String>) {
        let (passed, detail) = match result {
            Ok(ok) => (ok, None),
            Err(e) => (false, Some(e)),
        };
        self.checks.push(Check { name, passed, detail });
    }
}

/// Run every exact check on `d`.
pub fn verify(d: &PrimeOrderData) -> VerificationReport {
    let d = d.normalized();
    let mut report = VerificationReport { p: d.p, n: d.n.clone(), g0: d.g0, g: d.g, checks: Vec::new() };
    let two_g = 2 * d.g as usize;
    let p = d.p as usize;

    report.record("riemann-hurwitz", Ok(d.riemann_hurwitz_defect() == 0));

    let basis = enumerate_basis(&d);
    let (lifted, exceptional) = type_counts(&basis);
    let lifts_expected = if d.t == 0 { 2 * p * (d.g0 as usize - 1) } else { 2 * p * d.g0 as usize };
    let exc_expected = if d.t == 0 { 0 } else { (p - 1) * (d.t - 2) };
    report.record(
        "basis-count",
        Ok(basis.len() == two_g && lifted == lifts_expected && exceptional == exc_expected),
    );

    match single_relator_presentation(&d) {
        Ok(pres) => {
            let rel = pres.relator();
            report.record("relator-generators", Ok(pres.generators().len() == two_g));
            report.record("relator-evenly-worded", Ok(check_evenly_worded(rel)));
            report.record(
                "relator-fully-linked",
                check_fully_linked(rel).map_err(|e| e.to_string()),
            );
            report.record("relator-abelianization", Ok(rel.abelianize().is_empty()));
        }
        Err(e) => report.record("relator", Err(e.to_string())),
    }

    let m = action_matrix(&d).matrix;
    let i = intersection_matrix(&d).matrix;
    report.record("action-order", Ok(m.order(d.p) == Some(d.p)));
    report.record("intersection-skew", Ok(i.is_skew_symmetric()));
    report.record("intersection-unimodular", Ok(i.determinant() == 1));
    report.record("form-preserved", preserves_form(&m, &i).map_err(|e| e.to_string()));
    report.record(
        "rewriter-action",
        homology_action_full(&d)
            .map(|full| full.matrix == m)
            .map_err(|e| e.to_string()),
    );

    match symplectic_basis(&i) {
        Ok(chg) => {
            report.record("symplectic-change", Ok(chg.verify(&i)));
            match transform_action(&m, &chg) {
                Ok(t) => {
                    report.record(
                        "symplectic-action",
                        is_symplectic(&t, &chg.target).map_err(|e| e.to_string()),
                    );
                    report.record("symplectic-order", Ok(t.pow(d.p).is_identity()));
                }
                Err(e) => report.record("symplectic-action", Err(e.to_string())),
            }
        }
        Err(e) => report.record("symplectic-change", Err(e.to_string())),
    }

    if d.t == 0 {
        let canonical = canonical_intersection(&d).map_err(|e| e.to_string());
        let order = canonical_order(&basis);
        report.record(
            "fixed-point-free-canonical",
            canonical.map(|c| i.permuted(&order) == c),
        );
    }
    report
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub cases: Vec<VerificationReport>,
    pub passed: usize,
    pub failed: usize,
}

/// Every normalized class with `p <= p_max` prime, `t <= t_max` and
/// `g0 <= g0_max`.
pub fn sweep_classes(p_max: u32, t_max: usize, g0_max: u32) -> Vec<PrimeOrderData> {
    let mut out = Vec::new();
    for p in (2..=p_max).filter(|&p| is_prime(p)) {
        for t in std::iter::once(0).chain(2..=t_max) {
            if t > t_max {
                continue;
            }
            for g0 in 0..=g0_max {
                out.extend(conjugacy_classes(p, t, g0));
            }
        }
    }
    out
}

/// Verify every class of [`sweep_classes`], in parallel.
pub fn sweep(p_max: u32, t_max: usize, g0_max: u32) -> SweepReport {
    let cases: Vec<VerificationReport> = sweep_classes(p_max, t_max, g0_max).par_iter().map(verify).collect();
    let passed = cases.iter().filter(|c| c.passed()).count();
    SweepReport { failed: cases.len() - passed, passed, cases }
}
