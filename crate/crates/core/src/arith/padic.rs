use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::Rat;
use crate::error::{Error, Result};

/// Deterministic trial division; `p` is a small parameter here.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// `|n|_p`, stored as the exponent `l` of `p^-l`, with `None` for `n = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PAdicAbs {
    pub p: u64,
    pub valuation: Option<u32>,
}

impl PAdicAbs {
    pub fn is_zero(&self) -> bool {
        self.valuation.is_none()
    }

    pub fn value(&self) -> Rat {
        match self.valuation {
            None => Rat::zero(),
            Some(l) => Rat::new(BigInt::one(), BigInt::from(self.p).pow(l)),
        }
    }

    /// Denominator `p^l` of the value (`1` for the zero value).
    pub fn denominator(&self) -> BigInt {
        match self.valuation {
            None => BigInt::one(),
            Some(l) => BigInt::from(self.p).pow(l),
        }
    }

    /// Numerator of the value: `0` or `1`.
    pub fn numerator(&self) -> u32 {
        u32::from(self.valuation.is_some())
    }
}

impl PartialOrd for PAdicAbs {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.p != other.p {
            return self.value().partial_cmp(&other.value());
        }
        Some(match (self.valuation, other.valuation) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) => b.cmp(&a),
        })
    }
}

impl fmt::Display for PAdicAbs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.valuation {
            None => write!(f, "0"),
            Some(0) => write!(f, "1"),
            Some(l) => write!(f, "1/{}", BigInt::from(self.p).pow(l)),
        }
    }
}

/// Exponent of the exact power of `p` dividing a non-zero `n`.
pub(crate) fn valuation(n: &BigInt, p: u64) -> u32 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut l = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return l;
        }
        n = q;
        l += 1;
    }
}

/// The p-adic absolute value of an integer.
pub fn padic_abs(n: &BigInt, p: u64) -> Result<PAdicAbs> {
    check_prime(p)?;
    let valuation = if n.is_zero() {
        None
    } else {
        Some(valuation(n, p))
    };
    Ok(PAdicAbs { p, valuation })
}

pub fn padic_abs_i64(n: i64, p: u64) -> Result<PAdicAbs> {
    padic_abs(&BigInt::from(n), p)
}

/// `|n+m|_p <= max(|n|_p, |m|_p) <= |n|_p + |m|_p`, checked exactly.
pub fn padic_triangle_check(m: &BigInt, n: &BigInt, p: u64) -> Result<bool> {
    let am = padic_abs(m, p)?.value();
    let an = padic_abs(n, p)?.value();
    let asum = padic_abs(&(m + n), p)?.value();
    let max = if am >= an { am.clone() } else { an.clone() };
    Ok(asum <= max && max <= am + an)
}
