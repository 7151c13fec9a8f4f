//! Exact big-integer evaluation of the counting and threshold formulas used
//! by the obstruction machinery: the compact-trajectory count bound, the two
//! pigeonhole counts, and the repeated-cut length threshold.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// Upper bound on the number of compact trajectories of width at most `k`
/// over a base space of dimension `theta` with field order `q`:
/// 2^(9 theta + 2) * q^(theta (theta - 1)) * 2^(2 (2 theta + 1) k).
pub fn compact_trajectory_bound(theta: u32, k: u32, q: u64) -> BigUint {
    let two = BigUint::from(2u32);
    let qq = BigUint::from(q);
    two.pow(9 * theta + 2) * qq.pow(theta * (theta - 1)) * two.pow(2 * (2 * theta + 1) * k)
}

/// An exact value of the form 2^exponent + 1 whose exponent may be far too
/// large to materialize in decimal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerOfTwoPlusOne {
    pub exponent: BigUint,
}

impl PowerOfTwoPlusOne {
    /// Materialize when the exponent is small enough to hold the value.
    pub fn to_biguint(&self) -> Option<BigUint> {
        let bits: u64 = u64::try_from(&self.exponent).ok()?;
        if bits > 1 << 22 {
            return None;
        }
        Some((BigUint::one() << bits) + BigUint::one())
    }

    /// Exact comparison against a machine integer without materializing.
    pub fn exceeds(&self, n: u64) -> bool {
        match u64::try_from(&self.exponent) {
            Ok(bits) if bits < 64 => (1u128 << bits) + 1 > n as u128,
            _ => true,
        }
    }
}

impl fmt::Display for PowerOfTwoPlusOne {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_biguint() {
            Some(v) if self.exponent <= BigUint::from(4096u32) => write!(f, "{v}"),
            _ => write!(f, "2^{} + 1", self.exponent),
        }
    }
}

/// Cap on `k` so that exponent towers stay storable.
const MAX_K: u32 = 64;

/// The pigeonhole count for represented matroids:
/// 2^(2^(9k+11) q^(k(k+1)) 2^(2(2k+3)k)) + 1.
pub fn matroid_pigeonhole_count(k: u32, q: u64) -> Result<PowerOfTwoPlusOne> {
    if k > MAX_K {
        return Err(Error::budget(
            "pigeonhole exponent",
            k as usize,
            MAX_K as usize,
        ));
    }
    let two = BigUint::from(2u32);
    let exponent =
        two.pow(9 * k + 11) * BigUint::from(q).pow(k * (k + 1)) * two.pow(2 * (2 * k + 3) * k);
    Ok(PowerOfTwoPlusOne { exponent })
}

/// The pigeonhole count for graphs:
/// 2^(2^(18(k+1) + 2 + (2k+2)(2k+1) + 2(4k+3)2k)) + 1.
pub fn graph_pigeonhole_count(k: u32) -> Result<PowerOfTwoPlusOne> {
    if k > MAX_K {
        return Err(Error::budget(
            "pigeonhole exponent",
            k as usize,
            MAX_K as usize,
        ));
    }
    let inner = 18 * (k + 1) + 2 + (2 * k + 2) * (2 * k + 1) + 2 * (4 * k + 3) * 2 * k;
    Ok(PowerOfTwoPlusOne {
        exponent: BigUint::from(2u32).pow(inner),
    })
}

/// Least profile length that forces `count` repeated cuts at height `h`:
/// the ceiling of (count-1 + 2(count-2)/(count-3)) (count-2)^h
/// - 2(count-2)/(count-3), evaluated as one exact rational.
pub fn repeat_length_threshold(count: &BigUint, h: u32) -> Result<BigUint> {
    let three = BigUint::from(3u32);
    if *count < BigUint::from(4u32) {
        return Err(Error::Precondition(
            "the threshold needs at least four repeats".into(),
        ));
    }
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    let l1 = count - &one; // count - 1
    let l2 = count - &two; // count - 2
    let l3 = count - &three; // count - 3
    let numerator = (&l1 * &l3 + &two * &l2) * l2.pow(h) - &two * &l2;
    // Ceiling division of non-negative exact integers.
    Ok((&numerator + &l3 - &one) / &l3)
}

/// The formula constants bound to one (k, q) pair.
#[derive(Clone, Debug)]
pub struct BoundConstants {
    pub k: u32,
    pub q: u64,
    pub matroid_count: PowerOfTwoPlusOne,
    pub graph_count: PowerOfTwoPlusOne,
}

impl BoundConstants {
    /// The profile-length threshold at the matroid pigeonhole count and
    /// height k + 1, materialized only when the count itself is.
    pub fn matroid_size_threshold(&self) -> Option<BigUint> {
        let l = self.matroid_count.to_biguint()?;
        repeat_length_threshold(&l, self.k + 1).ok()
    }
}

pub fn bound_constants(k: u32, q: u64) -> Result<BoundConstants> {
    Ok(BoundConstants {
        k,
        q,
        matroid_count: matroid_pigeonhole_count(k, q)?,
        graph_count: graph_pigeonhole_count(k)?,
    })
}
