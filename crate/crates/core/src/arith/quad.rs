use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{exact_sqrt, isqrt, Rat};

/// An element `(a + b*sqrt(d)) / c` of a real quadratic field, with integer
/// coefficients, `c > 0` and `gcd(a, b, c) = 1`.
///
/// Binary operations require both operands to share the radicand `d`
/// unless one of them is rational (`b = 0`). Every value derived from a
/// single quadratic irrational by ring operations shares its radicand.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadNum {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

/// Sign of `a + b*sqrt(d)` for `d >= 0`.
pub(crate) fn sign_linear(a: &BigInt, b: &BigInt, d: &BigInt) -> Ordering {
    let zero = BigInt::zero();
    let sa = a.cmp(&zero);
    let sb = if d.is_zero() { Ordering::Equal } else { b.cmp(&zero) };
    match (sa, sb) {
        (_, Ordering::Equal) => sa,
        (Ordering::Equal, _) => sb,
        _ if sa == sb => sa,
        _ => {
            // opposite signs: the larger magnitude wins
            match (a * a).cmp(&(b * b * d)) {
                Ordering::Greater => sa,
                Ordering::Less => sb,
                Ordering::Equal => Ordering::Equal,
            }
        }
    }
}

const SMALL_PRIMES: [u32; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

impl QuadNum {
    /// Builds `(a + b*sqrt(d)) / c`. Panics if `c = 0` or `d < 0`.
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        assert!(!c.is_zero(), "zero denominator");
        assert!(!d.is_negative(), "negative radicand");
        let mut q = QuadNum { a, b, c, d };
        q.normalize();
        q
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        QuadNum::from_rat(&Rat::from_integer(n.into()))
    }

    pub fn from_rat(r: &Rat) -> Self {
        QuadNum {
            a: r.numer().clone(),
            b: BigInt::zero(),
            c: r.denom().clone(),
            d: BigInt::zero(),
        }
    }

    fn normalize(&mut self) {
        if self.c.is_negative() {
            self.a = -&self.a;
            self.b = -&self.b;
            self.c = -&self.c;
        }
        if !self.b.is_zero() {
            if let Some(s) = exact_sqrt(&self.d) {
                self.a += &self.b * s;
                self.b = BigInt::zero();
            }
        }
        if self.b.is_zero() {
            self.d = BigInt::zero();
        } else {
            // pull small square factors out of the radicand
            for f in SMALL_PRIMES {
                let f2 = BigInt::from(f * f);
                while self.d >= f2 && (&self.d % &f2).is_zero() {
                    self.d /= &f2;
                    self.b *= f;
                }
            }
        }
        let g = self.a.gcd(&self.b).gcd(&self.c);
        if !g.is_one() && !g.is_zero() {
            self.a /= &g;
            self.b /= &g;
            self.c /= &g;
        }
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }
    pub fn b(&self) -> &BigInt {
        &self.b
    }
    pub fn c(&self) -> &BigInt {
        &self.c
    }
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The rational value, if `b = 0`.
    pub fn to_rat(&self) -> Option<Rat> {
        self.is_rational()
            .then(|| Rat::new(self.a.clone(), self.c.clone()))
    }

    /// Rewrites `other` over the radicand of `self` when the two radicands
    /// differ by a rational square. Panics otherwise.
    fn align(&self, other: QuadNum) -> (BigInt, QuadNum) {
        if self.b.is_zero() {
            return (other.d.clone(), other);
        }
        if other.b.is_zero() || self.d == other.d {
            return (self.d.clone(), other);
        }
        // sqrt(d2) = sqrt(d1 d2) / d1 * sqrt(d1)
        let k = exact_sqrt(&(&self.d * &other.d)).unwrap_or_else(|| {
            panic!(
                "mixed radicands {} and {} in quadratic arithmetic",
                self.d, other.d
            )
        });
        let d1 = self.d.clone();
        let moved = QuadNum {
            a: &other.a * &d1,
            b: &other.b * k,
            c: &other.c * &d1,
            d: d1.clone(),
        };
        (d1, moved)
    }

    pub fn signum(&self) -> Ordering {
        sign_linear(&self.a, &self.b, &self.d)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn abs(&self) -> QuadNum {
        if self.signum() == Ordering::Less {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Exact floor, using integer square roots only.
    pub fn floor(&self) -> BigInt {
        if self.b.is_zero() {
            return self.a.div_floor(&self.c);
        }
        // b*sqrt(d) = sign(b) * sqrt(b^2 d), which lies in (m, m+1) unless exact
        let radicand = &self.b * &self.b * &self.d;
        let m = isqrt(&radicand);
        if &m * &m == radicand {
            let t = if self.b.is_negative() { -m } else { m };
            return (&self.a + t).div_floor(&self.c);
        }
        let lo = if self.b.is_positive() {
            &self.a + m
        } else {
            &self.a - m - 1
        };
        // value*c lies strictly inside (lo, lo+1), so no multiple of c is crossed
        lo.div_floor(&self.c)
    }

    pub fn ceil(&self) -> BigInt {
        -(-self.clone()).floor()
    }

    /// Fractional part `x - floor(x)`, in `[0, 1)`.
    pub fn fract(&self) -> QuadNum {
        self.add_int(&-self.floor())
    }

    /// Distance to the nearest integer, in `[0, 1/2]`.
    pub fn dist_nearest_int(&self) -> QuadNum {
        let f = self.fract();
        let g = QuadNum::from_int(1) - f.clone();
        if f.cmp_value(&g) == Ordering::Greater {
            g
        } else {
            f
        }
    }

    pub fn add_int(&self, k: &BigInt) -> QuadNum {
        QuadNum::new(
            &self.a + k * &self.c,
            self.b.clone(),
            self.c.clone(),
            self.d.clone(),
        )
    }

    pub fn mul_int(&self, k: &BigInt) -> QuadNum {
        QuadNum::new(&self.a * k, &self.b * k, self.c.clone(), self.d.clone())
    }

    pub fn mul_rat(&self, r: &Rat) -> QuadNum {
        QuadNum::new(
            &self.a * r.numer(),
            &self.b * r.numer(),
            &self.c * r.denom(),
            self.d.clone(),
        )
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> QuadNum {
        assert!(!self.is_zero(), "reciprocal of zero");
        // c / (a + b sqrt d) = c (a - b sqrt d) / (a^2 - b^2 d)
        let norm = &self.a * &self.a - &self.b * &self.b * &self.d;
        QuadNum::new(
            &self.c * &self.a,
            -(&self.c * &self.b),
            norm,
            self.d.clone(),
        )
    }

    pub fn div(&self, other: &QuadNum) -> QuadNum {
        self.clone() * other.recip()
    }

    /// Exact comparison of values.
    pub fn cmp_value(&self, other: &QuadNum) -> Ordering {
        (self.clone() - other.clone()).signum()
    }

    pub fn cmp_rat(&self, r: &Rat) -> Ordering {
        // sign of (a + b sqrt d)/c - n/m = sign(m a - n c + m b sqrt d)
        sign_linear(
            &(r.denom() * &self.a - r.numer() * &self.c),
            &(r.denom() * &self.b),
            &self.d,
        )
    }

    /// Square of the value.
    pub fn square(&self) -> QuadNum {
        self.clone() * self.clone()
    }

    /// Lossy decimal approximation, for display only.
    pub fn to_f64(&self) -> f64 {
        let enc = super::Enclosure::from_quad(self, 64);
        let mid = (enc.lo() + enc.hi()) / Rat::from_integer(2.into());
        rat_to_f64(&mid)
    }
}

pub(crate) fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl From<Rat> for QuadNum {
    fn from(r: Rat) -> Self {
        QuadNum::from_rat(&r)
    }
}

impl From<&Rat> for QuadNum {
    fn from(r: &Rat) -> Self {
        QuadNum::from_rat(r)
    }
}

impl Neg for QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum {
            a: -self.a,
            b: -self.b,
            c: self.c,
            d: self.d,
        }
    }
}

impl Add for QuadNum {
    type Output = QuadNum;
    fn add(self, rhs: QuadNum) -> QuadNum {
        let (d, rhs) = self.align(rhs);
        QuadNum::new(
            &self.a * &rhs.c + &rhs.a * &self.c,
            &self.b * &rhs.c + &rhs.b * &self.c,
            &self.c * &rhs.c,
            d,
        )
    }
}

impl Sub for QuadNum {
    type Output = QuadNum;
    fn sub(self, rhs: QuadNum) -> QuadNum {
        self + (-rhs)
    }
}

impl Mul for QuadNum {
    type Output = QuadNum;
    fn mul(self, rhs: QuadNum) -> QuadNum {
        let (d, rhs) = self.align(rhs);
        QuadNum::new(
            &self.a * &rhs.a + &self.b * &rhs.b * &d,
            &self.a * &rhs.b + &self.b * &rhs.a,
            &self.c * &rhs.c,
            d,
        )
    }
}

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            if self.c.is_one() {
                return write!(f, "{}", self.a);
            }
            return write!(f, "{}/{}", self.a, self.c);
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        let babs = self.b.abs();
        let coef = if babs.is_one() {
            String::new()
        } else {
            format!("{babs}*")
        };
        if self.c.is_one() {
            write!(f, "{} {} {}sqrt({})", self.a, sign, coef, self.d)
        } else {
            write!(f, "({} {} {}sqrt({}))/{}", self.a, sign, coef, self.d, self.c)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn q(a: i64, b: i64, c: i64, d: i64) -> QuadNum {
        QuadNum::new(a.into(), b.into(), c.into(), d.into())
    }

    #[test]
    fn floor_of_common_surds() {
        assert_eq!(q(0, 1, 1, 2).floor(), BigInt::from(1));
        assert_eq!(q(1, 1, 2, 5).floor(), BigInt::from(1));
        assert_eq!(q(-1, 1, 1, 2).floor(), BigInt::from(0));
        assert_eq!(q(0, -1, 1, 2).floor(), BigInt::from(-2));
        assert_eq!(q(5, -3, 7, 11).floor(), BigInt::from(-1));
        assert_eq!(q(7, 0, 2, 0).floor(), BigInt::from(3));
        assert_eq!(q(-7, 0, 2, 0).floor(), BigInt::from(-4));
    }

    #[test]
    fn perfect_square_radicand_folds() {
        let x = q(1, 1, 1, 4);
        assert!(x.is_rational());
        assert_eq!(x.to_rat().unwrap(), rat(3, 1));
    }

    #[test]
    fn field_operations_round_trip() {
        let x = q(3, 2, 5, 7);
        let y = q(-1, 4, 3, 7);
        let z = (x.clone() * y.clone()).div(&y);
        assert_eq!(z, x);
        assert_eq!(x.clone() - x.clone(), QuadNum::from_int(0));
        let r = x.recip();
        assert_eq!(r * x, QuadNum::from_int(1));
    }

    #[test]
    fn comparisons_are_exact() {
        let s2m1 = q(-1, 1, 1, 2);
        assert_eq!(s2m1.cmp_rat(&rat(2, 5)), Ordering::Greater);
        assert_eq!(s2m1.cmp_rat(&rat(1, 2)), Ordering::Less);
        // 99/70 and 140/99 bracket sqrt(2) tightly
        let s2 = q(0, 1, 1, 2);
        assert_eq!(s2.cmp_rat(&rat(99, 70)), Ordering::Less);
        assert_eq!(s2.cmp_rat(&rat(140, 99)), Ordering::Greater);
    }

    #[test]
    fn nearest_int_distance() {
        let x = q(-5, 5, 1, 2); // 5 sqrt 2 - 5
        assert_eq!(x.dist_nearest_int(), q(-7, 5, 1, 2));
        let half = QuadNum::from_rat(&rat(7, 2));
        assert_eq!(half.dist_nearest_int(), QuadNum::from_rat(&rat(1, 2)));
    }

    #[test]
    fn display() {
        assert_eq!(q(-1, 1, 1, 2).to_string(), "-1 + sqrt(2)");
        assert_eq!(q(1, -3, 2, 5).to_string(), "(1 - 3*sqrt(5))/2");
    }

    #[test]
    #[should_panic(expected = "mixed radicands")]
    fn mixed_radicands_panic() {
        let _ = q(0, 1, 1, 2) + q(0, 1, 1, 3);
    }

    #[test]
    fn radicands_differing_by_a_square_mix() {
        assert_eq!(q(-2, 1, 2, 8), q(-1, 1, 1, 2));
        // 53^2 * 2 is beyond the small-prime stripping
        let big = q(0, 1, 53, 53 * 53 * 2);
        assert_eq!(big.d(), &BigInt::from(5618));
        let diff = big - q(0, 1, 1, 2);
        assert!(diff.is_zero());
        assert_eq!(q(0, 1, 1, 2).cmp_value(&q(1, 1, 1, 5618)), Ordering::Less);
    }
}
