use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{format_decimal, isqrt, round_down, round_up, QuadNum, Rat};

/// A closed rational interval `[lo, hi]` known to contain a real value.
///
/// Endpoints are rounded outward onto a dyadic grid after each operation so
/// their size stays bounded; the enclosed value is never lost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    lo: Rat,
    hi: Rat,
}

impl Enclosure {
    pub fn new(lo: Rat, hi: Rat) -> Enclosure {
        assert!(lo <= hi, "empty enclosure");
        Enclosure { lo, hi }
    }

    pub fn exact(x: Rat) -> Enclosure {
        Enclosure {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    fn outward(lo: Rat, hi: Rat, bits: u32) -> Enclosure {
        Enclosure {
            lo: round_down(&lo, bits),
            hi: round_up(&hi, bits),
        }
    }

    /// Encloses `(a + b sqrt d)/c` with endpoints on the grid `2^-bits`.
    pub fn from_quad(x: &QuadNum, bits: u32) -> Enclosure {
        if let Some(r) = x.to_rat() {
            return Enclosure::outward(r.clone(), r, bits);
        }
        // sqrt(d) in [s, s+1] / 2^k with k chosen relative to the scale of b/c
        let extra = (x.b().bits() as u32) + bits + 4;
        let scale = BigInt::one() << extra;
        let s = isqrt(&(x.d() * &scale * &scale));
        let root_lo = Rat::new(s.clone(), scale.clone());
        let root_hi = Rat::new(s + 1, scale);
        let a = Rat::new(x.a().clone(), x.c().clone());
        let b = Rat::new(x.b().clone(), x.c().clone());
        let (lo, hi) = if b.is_positive() {
            (&a + &b * &root_lo, &a + &b * &root_hi)
        } else {
            (&a + &b * &root_hi, &a + &b * &root_lo)
        };
        Enclosure::outward(lo, hi, bits)
    }

    pub fn add(&self, other: &Enclosure, bits: u32) -> Enclosure {
        Enclosure::outward(&self.lo + &other.lo, &self.hi + &other.hi, bits)
    }

    pub fn mul(&self, other: &Enclosure, bits: u32) -> Enclosure {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Enclosure::outward(lo, hi, bits)
    }

    pub fn scale(&self, k: &Rat, bits: u32) -> Enclosure {
        self.mul(&Enclosure::exact(k.clone()), bits)
    }

    /// Natural logarithm of a positive integer.
    pub fn ln_int(n: &BigInt, bits: u32) -> Enclosure {
        assert!(n.is_positive(), "logarithm of a non-positive integer");
        if n.is_one() {
            return Enclosure::exact(Rat::zero());
        }
        // n = 2^e * m with m in [1, 2)
        let e = n.bits() - 1;
        let work = bits + 16 + (64 - e.leading_zeros());
        let m = Rat::new(n.clone(), BigInt::one() << e);
        let ln2 = ln_series(&Rat::new(1.into(), 3.into()), work);
        let one = Rat::one();
        let t = (&m - &one) / (&m + &one);
        let lnm = ln_series(&t, work);
        let e = Rat::from_integer(BigInt::from(e));
        Enclosure::outward(
            &e * &ln2.lo + &lnm.lo,
            &e * &ln2.hi + &lnm.hi,
            bits,
        )
    }

    /// Natural logarithm of a positive rational.
    pub fn ln_rat(x: &Rat, bits: u32) -> Enclosure {
        assert!(x.is_positive(), "logarithm of a non-positive rational");
        let num = Enclosure::ln_int(x.numer(), bits + 4);
        let den = Enclosure::ln_int(x.denom(), bits + 4);
        Enclosure::outward(&num.lo - &den.hi, &num.hi - &den.lo, bits)
    }

    /// Compares two enclosures; `None` when they overlap.
    pub fn certainly_cmp(&self, other: &Enclosure) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else if self.lo == self.hi && self == other {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn lo_decimal(&self, digits: usize) -> String {
        format_decimal(&self.lo, digits, false)
    }

    pub fn hi_decimal(&self, digits: usize) -> String {
        format_decimal(&self.hi, digits, true)
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo_decimal(24), self.hi_decimal(24))
    }
}

/// Encloses `2 atanh(t) = ln((1+t)/(1-t))` for `0 <= t <= 1/3`.
fn ln_series(t: &Rat, bits: u32) -> Enclosure {
    debug_assert!(!t.is_negative() && *t <= Rat::new(1.into(), 3.into()));
    if t.is_zero() {
        return Enclosure::exact(Rat::zero());
    }
    // fixed point with w fractional bits; lower and upper chains rounded apart
    let w = bits + 8;
    let one = BigInt::one() << w;
    let scaled = t * Rat::from_integer(one.clone());
    let t_lo = scaled.floor().to_integer();
    let t_hi = scaled.ceil().to_integer();
    let t2_lo = (&t_lo * &t_lo) >> w;
    let t2_hi = ceil_shift(&(&t_hi * &t_hi), w);
    let eps = BigInt::one() << 6;

    let mut pow_lo = t_lo;
    let mut pow_hi = t_hi;
    let mut sum_lo = BigInt::zero();
    let mut sum_hi = BigInt::zero();
    let mut j: u64 = 0;
    loop {
        let k = BigInt::from(2 * j + 1);
        sum_lo += &pow_lo / &k;
        sum_hi += ceil_div(&pow_hi, &k);
        pow_lo = (&pow_lo * &t2_lo) >> w;
        pow_hi = ceil_shift(&(&pow_hi * &t2_hi), w);
        j += 1;
        // remaining terms sum to at most pow_hi / ((2j+1)(1 - t^2)) and
        // 1 - t^2 >= 8/9
        let tail = ceil_div(&(&pow_hi * 9), &(BigInt::from(8 * (2 * j + 1))));
        if tail < eps || pow_hi.is_zero() {
            sum_hi += tail;
            break;
        }
    }
    Enclosure {
        lo: Rat::new(sum_lo * 2, one.clone()),
        hi: Rat::new(sum_hi * 2, one),
    }
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

fn ceil_shift(a: &BigInt, w: u32) -> BigInt {
    -((-a) >> w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    // ln 2 = 0.693147180559945309417232121458176568075500134360255254120680...
    const LN2_60: &str = "0.693147180559945309417232121458176568075500134360255254120680";

    #[test]
    fn ln2_to_sixty_digits() {
        let e = Enclosure::ln_int(&BigInt::from(2), 220);
        let x = crate::arith::parse_rat(&format!(
            "{}/1{}",
            LN2_60.replace("0.", ""),
            "0".repeat(60)
        ))
        .unwrap();
        assert!(e.lo() <= &(x.clone() + rat(1, 1) * Rat::new(1.into(), BigInt::from(10).pow(60))));
        assert!(e.hi() >= &x);
        assert!(e.width() < Rat::new(1.into(), BigInt::from(10).pow(60)));
    }

    #[test]
    fn ln_of_six_and_product_rule() {
        let l6 = Enclosure::ln_int(&BigInt::from(6), 100);
        let l2 = Enclosure::ln_int(&BigInt::from(2), 100);
        let l3 = Enclosure::ln_int(&BigInt::from(3), 100);
        let sum = l2.add(&l3, 100);
        // ln 6 = 1.791759469228055000812477358380702272722990692183004705855374...
        assert!(l6.lo_decimal(20).starts_with("1.79175946922805500081"));
        assert!(l6.certainly_cmp(&sum).is_none());
        assert!(l6.width() < rat(1, 1_000_000_000_000_000_000));
    }

    #[test]
    fn ln_of_one_is_zero_and_large_ints_are_tight() {
        assert_eq!(Enclosure::ln_int(&BigInt::one(), 64), Enclosure::exact(Rat::zero()));
        let big = BigInt::from(10).pow(300);
        let e = Enclosure::ln_int(&big, 80);
        // 300 ln 10 = 690.775527898213705205397436405309262280330446588631892809...
        assert!(e.lo_decimal(15).starts_with("690.775527898213"));
        assert!(e.width() < rat(1, 1_000_000_000_000_000_000));
    }

    #[test]
    fn quad_enclosure_contains_value() {
        let x = QuadNum::new((-1).into(), 1.into(), 1.into(), 2.into());
        let e = Enclosure::from_quad(&x, 90);
        assert_eq!(x.cmp_rat(e.lo()), Ordering::Greater);
        assert_eq!(x.cmp_rat(e.hi()), Ordering::Less);
        assert!(e.width() < rat(1, 1_000_000_000_000_000_000));
        let y = QuadNum::new(17.into(), (-12).into(), 1.into(), 2.into());
        let e = Enclosure::from_quad(&y, 90);
        assert_eq!(y.cmp_rat(e.lo()), Ordering::Greater);
        assert_eq!(y.cmp_rat(e.hi()), Ordering::Less);
    }

    #[test]
    fn ln_rat_brackets_quotient() {
        let e = Enclosure::ln_rat(&rat(3, 2), 80);
        // ln 1.5 = 0.405465108108164381978013115464349136571990423462494928...
        assert!(e.lo_decimal(18).starts_with("0.405465108108164381"));
    }
}
