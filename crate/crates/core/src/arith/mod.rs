//! Exact arithmetic layer: rationals, quadratic surds, p-adic absolute
//! values and outward-rounded rational enclosures.

mod enclosure;
mod padic;
mod quad;
mod surd;

pub use enclosure::Enclosure;
pub use padic::{is_prime, padic_abs, padic_abs_i64, padic_triangle_check, PAdicAbs};
pub(crate) use padic::check_prime;
pub use quad::QuadNum;
pub use surd::{cmp_surd_rat, dist_nearest_int, surd_floor, Surd};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational with arbitrary-precision parts, always reduced with a
/// positive denominator.
pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: impl Into<BigInt>) -> Rat {
    Rat::from_integer(n.into())
}

/// Floor of the square root of a non-negative integer.
///
/// Integer Newton iteration started above the root; no floating point.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of a negative integer");
    if n.is_zero() {
        return BigInt::zero();
    }
    // 2^ceil(bits/2) >= sqrt(n)
    let mut x = BigInt::one() << n.bits().div_ceil(2);
    loop {
        let y = (&x + n / &x) >> 1;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// Returns the integer root when `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = isqrt(n);
    if &s * &s == *n {
        Some(s)
    } else {
        None
    }
}

pub fn rat_floor(x: &Rat) -> BigInt {
    x.numer().div_floor(x.denom())
}

/// Distance from a rational to the nearest integer.
pub fn rat_dist_nearest_int(x: &Rat) -> Rat {
    let frac = x - Rat::from_integer(rat_floor(x));
    let other = Rat::one() - &frac;
    if frac <= other {
        frac
    } else {
        other
    }
}

/// Parses `a`, `-a` or `a/b` into a rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::OutOfRange(format!("cannot parse rational '{s}'"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(num, den))
}

/// Formats a rational as `num/den` (or just `num` for integers).
pub fn format_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Rounds `x` down to the grid `2^-bits`.
pub(crate) fn round_down(x: &Rat, bits: u32) -> Rat {
    let scale = BigInt::one() << bits;
    let scaled = x * Rat::from_integer(scale.clone());
    Rat::new(rat_floor(&scaled), scale)
}

/// Rounds `x` up to the grid `2^-bits`.
pub(crate) fn round_up(x: &Rat, bits: u32) -> Rat {
    let scale = BigInt::one() << bits;
    let scaled = x * Rat::from_integer(scale.clone());
    let c = -rat_floor(&-scaled);
    Rat::new(c, scale)
}

/// Decimal rendering of `x` rounded toward negative infinity (`up = false`)
/// or positive infinity (`up = true`) at `digits` fractional places.
pub fn format_decimal(x: &Rat, digits: usize, up: bool) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = x * Rat::from_integer(scale.clone());
    let n = if up {
        -rat_floor(&-scaled)
    } else {
        rat_floor(&scaled)
    };
    let neg = n.is_negative();
    let (int_part, frac_part) = n.abs().div_rem(&scale);
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if digits > 0 {
        out.push('.');
        out.push_str(&format!("{:0>width$}", frac_part.to_string(), width = digits));
    }
    out
}

/// Serde helpers writing exact values as strings.
pub mod serde_str {
    use num_bigint::BigInt;
    use serde::Serializer;

    use super::{format_rat, Rat};

    pub fn rat<S: Serializer>(x: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(x))
    }

    pub fn bigint<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }
}
