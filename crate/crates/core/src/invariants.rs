//! Conjugacy invariants of a prime-order automorphism class.
//!
//! A class is described by its order `p`, the quotient genus `g0` and the
//! complementary rotation numbers `n_1, ..., n_t` at the `t` fixed points
//! (equivalently the multiplicities `m_j = #{i : n_i = j}`). Everything else
//! (rotation numbers, total genus) is derived here and checked against the
//! Riemann-Hurwitz relation.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("order {0} is not prime")]
    NotPrime(u32),
    #[error("rotation data sum to {sum}, which is not divisible by {p}")]
    RotationSumNonzero { sum: u64, p: u32 },
    #[error("derived genus {0} is below 2")]
    GenusTooSmall(i64),
    #[error("an automorphism of prime order cannot have exactly one fixed point")]
    InvalidT,
    #[error("rotation datum {value} at position {index} is outside (0, {p})")]
    OutOfRange { index: usize, value: u32, p: u32 },
    #[error("exponent {0} is divisible by the order")]
    BadExponent(i64),
    #[error("invalid input: {0}")]
    BadInput(String),
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Multiplicative inverse of `a` modulo the prime `p`.
pub fn inverse_mod(a: i64, p: u32) -> Option<u32> {
    let p = p as i64;
    let a = a.rem_euclid(p);
    if a == 0 {
        return None;
    }
    // extended Euclid
    let (mut r0, mut r1) = (p, a);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(p) as u32)
}

/// Validated conjugacy data of a prime-order automorphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeOrderData {
    pub p: u32,
    pub t: usize,
    /// Complementary rotation numbers, one per fixed point.
    pub n: Vec<u32>,
    /// Rotation numbers, `s_i * n_i = 1 (mod p)`.
    pub s: Vec<u32>,
    /// `m[j - 1]` is the number of fixed points with `n_i = j`.
    pub m: Vec<usize>,
    pub g0: u32,
    pub g: u32,
    /// `n[i]` was the datum of fixed point `permutation[i]` (0-based) in the
    /// order the class was originally given.
    #[serde(skip)]
    pub permutation: Vec<usize>,
}

fn multiplicities(p: u32, n: &[u32]) -> Vec<usize> {
    let mut m = vec![0usize; p as usize - 1];
    for &v in n {
        m[v as usize - 1] += 1;
    }
    m
}

fn rotation_numbers(p: u32, n: &[u32]) -> Vec<u32> {
    n.iter()
        .map(|&v| inverse_mod(v as i64, p).expect("n_i is a unit mod p"))
        .collect()
}

/// Validate a class given by its complementary rotation numbers.
///
/// An empty `n` is the fixed-point-free case and is routed to
/// [`validate_fixed_point_free`].
pub fn validate(p: u32, n: &[u32], g0: u32) -> Result<PrimeOrderData, InvariantError> {
    if !is_prime(p) {
        return Err(InvariantError::NotPrime(p));
    }
    if n.is_empty() {
        return validate_fixed_point_free(p, g0);
    }
    for (index, &value) in n.iter().enumerate() {
        if value == 0 || value >= p {
            return Err(InvariantError::OutOfRange { index, value, p });
        }
    }
    let t = n.len();
    if t == 1 {
        return Err(InvariantError::InvalidT);
    }
    let sum: u64 = n.iter().map(|&v| v as u64).sum();
    if !sum.is_multiple_of(p as u64) {
        return Err(InvariantError::RotationSumNonzero { sum, p });
    }
    let twice_g = 2 * p as i64 * g0 as i64 + (p as i64 - 1) * (t as i64 - 2);
    let g = twice_g / 2;
    if g < 2 {
        return Err(InvariantError::GenusTooSmall(g));
    }
    Ok(PrimeOrderData {
        p,
        t,
        n: n.to_vec(),
        s: rotation_numbers(p, n),
        m: multiplicities(p, n),
        g0,
        g: g as u32,
        permutation: (0..t).collect(),
    })
}

/// Validate a class given by its multiplicity vector `(m_1, ..., m_{p-1})`.
pub fn validate_multiplicities(
    p: u32,
    m: &[usize],
    g0: u32,
) -> Result<PrimeOrderData, InvariantError> {
    if !is_prime(p) {
        return Err(InvariantError::NotPrime(p));
    }
    if m.len() != p as usize - 1 {
        return Err(InvariantError::BadInput(format!(
            "expected {} multiplicities for p = {p}, got {}",
            p - 1,
            m.len()
        )));
    }
    let n: Vec<u32> = m
        .iter()
        .enumerate()
        .flat_map(|(j, &count)| std::iter::repeat_n(j as u32 + 1, count))
        .collect();
    validate(p, &n, g0)
}

/// The fixed-point-free case, where `2g = 2p(g0 - 1) + 2`.
pub fn validate_fixed_point_free(p: u32, g0: u32) -> Result<PrimeOrderData, InvariantError> {
    if !is_prime(p) {
        return Err(InvariantError::NotPrime(p));
    }
    let g = p as i64 * (g0 as i64 - 1) + 1;
    if g < 2 {
        return Err(InvariantError::GenusTooSmall(g));
    }
    Ok(PrimeOrderData {
        p,
        t: 0,
        n: Vec::new(),
        s: Vec::new(),
        m: vec![0; p as usize - 1],
        g0,
        g: g as u32,
        permutation: Vec::new(),
    })
}

/// Sort the rotation data non-decreasingly, recording the permutation.
pub fn normalize_conjugacy(d: &PrimeOrderData) -> PrimeOrderData {
    let mut order: Vec<usize> = (0..d.t).collect();
    order.sort_by_key(|&i| d.n[i]);
    let n: Vec<u32> = order.iter().map(|&i| d.n[i]).collect();
    PrimeOrderData {
        s: rotation_numbers(d.p, &n),
        permutation: order.iter().map(|&i| d.permutation[i]).collect(),
        n,
        ..d.clone()
    }
}

/// Conjugacy data of `h^k`.
pub fn power_class(d: &PrimeOrderData, k: i64) -> Result<PrimeOrderData, InvariantError> {
    let p = d.p as i64;
    let k = k.rem_euclid(p);
    if k == 0 {
        return Err(InvariantError::BadExponent(k));
    }
    let n: Vec<u32> = d.n.iter().map(|&v| ((v as i64 * k) % p) as u32).collect();
    let powered = PrimeOrderData {
        s: rotation_numbers(d.p, &n),
        m: multiplicities(d.p, &n),
        n,
        ..d.clone()
    };
    Ok(normalize_conjugacy(&powered))
}

impl PrimeOrderData {
    pub fn normalized(&self) -> PrimeOrderData {
        normalize_conjugacy(self)
    }

    pub fn is_normalized(&self) -> bool {
        self.n.windows(2).all(|w| w[0] <= w[1])
    }

    /// Left side minus right side of the Riemann-Hurwitz relation; zero for
    /// every valid class.
    pub fn riemann_hurwitz_defect(&self) -> i64 {
        let (p, g0, g) = (self.p as i64, self.g0 as i64, self.g as i64);
        if self.t > 0 {
            2 * g - 2 * p * g0 - (p - 1) * (self.t as i64 - 2)
        } else {
            2 * g - 2 * p * (g0 - 1) - 2
        }
    }

    /// Smallest `s` with `m_s != 0`; `None` when there are no fixed points.
    pub fn smallest_rotation(&self) -> Option<u32> {
        self.m.iter().position(|&c| c > 0).map(|j| j as u32 + 1)
    }
}

/// JSON description of a class: exactly one of `n`, `m`, or `t: 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConjugacyInput {
    pub p: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    pub g0: u32,
}

impl ConjugacyInput {
    pub fn from_json(text: &str) -> Result<Self, InvariantError> {
        serde_json::from_str(text).map_err(|e| InvariantError::BadInput(e.to_string()))
    }

    pub fn to_data(&self) -> Result<PrimeOrderData, InvariantError> {
        let d = match (&self.n, &self.m) {
            (Some(_), Some(_)) => {
                return Err(InvariantError::BadInput(
                    "give either n or m, not both".into(),
                ))
            }
            (Some(n), None) => validate(self.p, n, self.g0)?,
            (None, Some(m)) => validate_multiplicities(self.p, m, self.g0)?,
            (None, None) => match self.t {
                Some(0) => validate_fixed_point_free(self.p, self.g0)?,
                _ => {
                    return Err(InvariantError::BadInput(
                        "one of n, m, or t = 0 is required".into(),
                    ))
                }
            },
        };
        if let Some(t) = self.t {
            if t != d.t {
                return Err(InvariantError::BadInput(format!(
                    "t = {t} disagrees with the {} rotation data given",
                    d.t
                )));
            }
        }
        Ok(d)
    }
}

/// All normalized classes with the given `p`, `t` and `g0` (one per
/// non-decreasing `n`-vector), skipping those with genus below 2.
pub fn conjugacy_classes(p: u32, t: usize, g0: u32) -> Vec<PrimeOrderData> {
    if !is_prime(p) {
        return Vec::new();
    }
    if t == 0 {
        return validate_fixed_point_free(p, g0).into_iter().collect();
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(t);
    fn extend(
        p: u32,
        t: usize,
        g0: u32,
        current: &mut Vec<u32>,
        out: &mut Vec<PrimeOrderData>,
    ) {
        if current.len() == t {
            if let Ok(d) = validate(p, current, g0) {
                out.push(d);
            }
            return;
        }
        let start = current.last().copied().unwrap_or(1);
        for v in start..p {
            current.push(v);
            extend(p, t, g0, current, out);
            current.pop();
        }
    }
    extend(p, t, g0, &mut current, &mut out);
    out
}
