//! Shared fixtures for the benchmarks.

use adapted_basis::invariants::{validate, validate_fixed_point_free};
use adapted_basis::PrimeOrderData;

/// A named class to benchmark.
pub struct Fixture {
    pub name: &'static str,
    pub data: PrimeOrderData,
}

/// From the small worked example up to a class of genus 32.
pub fn fixtures() -> Vec<Fixture> {
    let make = |name, p, n: &[u32], g0| Fixture { name, data: validate(p, n, g0).unwrap() };
    vec![
        make("p3-t5-g0", 3, &[1, 1, 2, 1, 1], 0),
        make("p5-t4-g1", 5, &[1, 2, 4, 3], 1),
        make("p7-t6-g1", 7, &[1, 1, 2, 3, 4, 3], 1),
        make("p7-t8-g2", 7, &[1, 1, 1, 2, 2, 3, 5, 6], 2),
        Fixture { name: "p5-t0-g3", data: validate_fixed_point_free(5, 3).unwrap() },
    ]
}
