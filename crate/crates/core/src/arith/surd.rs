use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{exact_sqrt, QuadNum, Rat};
use crate::error::{Error, Result};

/// A quadratic surd `(P + sqrt(D)) / Q` kept in the normal form
/// `Q | D - P^2`, so that continued-fraction steps stay integral.
///
/// Equality is structural: two surds compare equal when they carry the same
/// `(P, D, Q)`. Use [`Surd::value`] for value comparisons.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Surd {
    p: BigInt,
    d: BigInt,
    q: BigInt,
}

impl Surd {
    /// Builds `(P + sqrt(D)) / Q`, rescaling to normal form when needed.
    pub fn new(p: impl Into<BigInt>, d: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Surd> {
        let (p, d, q) = (p.into(), d.into(), q.into());
        if d.is_negative() {
            return Err(Error::InvalidSurd(format!("negative radicand D = {d}")));
        }
        if q.is_zero() {
            return Err(Error::InvalidSurd("zero denominator Q".into()));
        }
        Ok(Surd::normal_form(p, d, q))
    }

    fn normal_form(p: BigInt, d: BigInt, q: BigInt) -> Surd {
        let defect = &d - &p * &p;
        let g = q.gcd(&defect);
        let scale = q.abs() / g;
        let (mut p, mut d, mut q) = if scale.is_one() {
            (p, d, q)
        } else {
            (&p * &scale, &d * &scale * &scale, &q * &scale)
        };
        // undo a common factor when the normal form survives it
        let c = p.gcd(&q);
        if !c.is_one() && !c.is_zero() {
            let c2 = &c * &c;
            if (&d % &c2).is_zero() {
                let (p2, d2, q2) = (&p / &c, &d / &c2, &q / &c);
                if ((&d2 - &p2 * &p2) % &q2).is_zero() {
                    p = p2;
                    d = d2;
                    q = q2;
                }
            }
        }
        Surd { p, d, q }
    }

    /// Rebuilds the surd form of a quadratic number.
    pub fn from_quad(x: &QuadNum) -> Surd {
        let d = x.b() * x.b() * x.d();
        if x.b().is_negative() {
            Surd::normal_form(-x.a(), d, -x.c())
        } else {
            Surd::normal_form(x.a().clone(), d, x.c().clone())
        }
    }

    pub fn from_rat(r: &Rat) -> Surd {
        Surd::from_quad(&QuadNum::from_rat(r))
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }
    pub fn d(&self) -> &BigInt {
        &self.d
    }
    pub fn q(&self) -> &BigInt {
        &self.q
    }

    /// True when `D` is a perfect square, i.e. the value is rational.
    pub fn is_rational(&self) -> bool {
        exact_sqrt(&self.d).is_some()
    }

    /// The value as an element of `Q(sqrt(D))`.
    pub fn value(&self) -> QuadNum {
        QuadNum::new(self.p.clone(), BigInt::one(), self.q.clone(), self.d.clone())
    }

    pub fn floor(&self) -> BigInt {
        self.value().floor()
    }

    pub fn cmp_rat(&self, r: &Rat) -> Ordering {
        self.value().cmp_rat(r)
    }

    pub fn dist_nearest_int(&self) -> Surd {
        Surd::from_quad(&self.value().dist_nearest_int())
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + sqrt({}))/{}", self.p, self.d, self.q)
    }
}

/// Exact floor of a surd.
pub fn surd_floor(x: &Surd) -> BigInt {
    x.floor()
}

/// Distance to the nearest integer, as an exact surd in `[0, 1/2]`.
pub fn dist_nearest_int(x: &Surd) -> Surd {
    x.dist_nearest_int()
}

/// Exact sign of `x - r`.
pub fn cmp_surd_rat(x: &Surd, r: &Rat) -> Ordering {
    x.cmp_rat(r)
}
