//! Characteristic-class arithmetic on diagonal negative-definite lattices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error("class vector is empty")]
    EmptyClass,
    #[error("b2 must be at least 1, got {0}")]
    NonPositiveB2(i64),
    #[error("b1 must be non-negative, got {0}")]
    NegativeB1(i64),
    #[error("summand b2 must be non-negative, got {0}")]
    NegativeSummand(i64),
}

/// Square of the class `Σ c_i e_i` in the lattice `-I`, reduced mod 4.
pub fn pontryagin_square_diag(c: &[i64]) -> Result<u8, ObstructionError> {
    if c.is_empty() {
        return Err(ObstructionError::EmptyClass);
    }
    let sum: i64 = c.iter().map(|&x| (x.rem_euclid(4) * x.rem_euclid(4)) % 4).sum();
    Ok((-sum).rem_euclid(4) as u8)
}

pub const HUREWICZ_NOTE: &str = "informational: a representation with this Stiefel-Whitney class \
requires that no basis class e_i is represented by a sphere; sphere-representability is not decided here";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummandVerdict {
    pub b2: i64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    /// Pontryagin square of `w = Σ e_i` on the whole lattice.
    pub psq: u8,
    pub b2_mod4: u8,
    pub divisibility_pass: bool,
    pub summand_verdicts: Option<Vec<SummandVerdict>>,
    /// Overall verdict: divisibility, and every summand when summands are given.
    pub pass: bool,
    pub message: String,
    pub hurewicz_flag: &'static str,
}

fn w_square(b2: i64) -> u8 {
    (-b2).rem_euclid(4) as u8
}

pub fn divisibility_obstruction(b2: i64) -> Result<ObstructionReport, ObstructionError> {
    if b2 < 1 {
        return Err(ObstructionError::NonPositiveB2(b2));
    }
    let psq = w_square(b2);
    let pass = psq == 0;
    Ok(ObstructionReport {
        psq,
        b2_mod4: b2.rem_euclid(4) as u8,
        divisibility_pass: pass,
        summand_verdicts: None,
        pass,
        message: if pass {
            format!("b2 = {b2} is divisible by four; the necessary condition holds")
        } else {
            format!(
                "b2 = {b2} is not divisible by four: no representation with w = sum e_i mod 2 and p1 = 0 exists"
            )
        },
        hurewicz_flag: HUREWICZ_NOTE,
    })
}

/// Each summand with nonzero `b2` must itself satisfy the divisibility test.
pub fn connected_sum_obstruction(summand_b2s: &[i64]) -> Result<ObstructionReport, ObstructionError> {
    if let Some(&bad) = summand_b2s.iter().find(|&&b| b < 0) {
        return Err(ObstructionError::NegativeSummand(bad));
    }
    let total: i64 = summand_b2s.iter().sum();
    let verdicts: Vec<SummandVerdict> =
        summand_b2s.iter().map(|&b2| SummandVerdict { b2, pass: b2 % 4 == 0 }).collect();
    let psq = w_square(total);
    let failing: Vec<String> = verdicts.iter().filter(|v| !v.pass).map(|v| v.b2.to_string()).collect();
    let pass = failing.is_empty() && psq == 0;
    let message = if !failing.is_empty() {
        format!(
            "summands with b2 = {} are not divisible by four: the connected sum does not admit a representation",
            failing.join(", ")
        )
    } else if psq != 0 {
        format!("total b2 = {total} is not divisible by four")
    } else {
        "every summand has b2 divisible by four".to_string()
    };
    Ok(ObstructionReport {
        psq,
        b2_mod4: total.rem_euclid(4) as u8,
        divisibility_pass: psq == 0,
        summand_verdicts: Some(verdicts),
        pass,
        message,
        hurewicz_flag: HUREWICZ_NOTE,
    })
}

fn rational_string<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BundleProfile {
    pub b1: i64,
    pub b2: i64,
    pub c2: i64,
    pub c1sq: i128,
    pub p1: i128,
    #[serde(serialize_with = "rational_string")]
    pub energy: BigRational,
    pub compact: bool,
    pub flat: bool,
    pub irreducible_locked: bool,
    pub d: i128,
}

/// Profile of a rank-2 bundle with `c1 = Σ e_i` over a manifold with
/// `b2⁺ = 0`.
pub fn bundle_profile(b1: i64, b2: i64, c2: i64) -> Result<BundleProfile, ObstructionError> {
    if b2 < 1 {
        return Err(ObstructionError::NonPositiveB2(b2));
    }
    if b1 < 0 {
        return Err(ObstructionError::NegativeB1(b1));
    }
    let c1sq = -(b2 as i128);
    let p1 = -4 * c2 as i128 + c1sq;
    let energy = BigRational::new(BigInt::from(4 * c2 as i128 - c1sq), BigInt::from(4));
    let compact = !energy.is_negative() && energy < BigRational::from_integer(1.into());
    let flat = energy.is_zero();
    Ok(BundleProfile {
        b1,
        b2,
        c2,
        c1sq,
        p1,
        energy,
        compact,
        flat,
        irreducible_locked: !splits(b2 as u64, c2),
        d: -2 * p1 + 3 * (b1 as i128 - 1),
    })
}

fn is_triangular(n: u64) -> bool {
    // n = k(k+1)/2  iff  8n + 1 is an odd square
    let m = 8 * n as u128 + 1;
    let r = m.isqrt();
    r * r == m
}

/// Whether some `l ∈ Zᵇ²` has `Σ (l_i² - l_i) = c2`. Each term `l(l-1)` is
/// twice a triangular number and every triangular number occurs, so this
/// asks whether `c2 / 2` is a sum of `b2` triangular numbers; three always
/// suffice.
pub fn splits(b2: u64, c2: i64) -> bool {
    if c2 < 0 || c2 % 2 != 0 {
        return false;
    }
    let n = (c2 / 2) as u64;
    match b2 {
        0 => n == 0,
        1 => is_triangular(n),
        2 => (0u64..).map(|k| k * (k + 1) / 2).take_while(|&t| t <= n).any(|t| is_triangular(n - t)),
        _ => true,
    }
}

/// A witness `l` for [`splits`], found by exhaustive search in the box
/// `|l_i| ≤ 1 + |c2|`. Exponential in `b2`; meant for cross-checking.
pub fn brute_force_split(b2: usize, c2: i64) -> Option<Vec<i64>> {
    let bound = 1 + c2.abs();
    let mut l = Vec::with_capacity(b2);
    fn go(l: &mut Vec<i64>, b2: usize, remaining: i64, bound: i64, lo: i64) -> bool {
        if l.len() == b2 {
            return remaining == 0;
        }
        // terms are non-negative, so an overdrawn budget is final
        if remaining < 0 {
            return false;
        }
        // non-decreasing sequences suffice since the sum is symmetric
        for v in lo..=bound {
            let term = v * v - v;
            if term > remaining && v >= 1 {
                break;
            }
            if term > remaining {
                continue;
            }
            l.push(v);
            if go(l, b2, remaining - term, bound, v) {
                return true;
            }
            l.pop();
        }
        false
    }
    go(&mut l, b2, c2, bound, -bound).then_some(l)
}
