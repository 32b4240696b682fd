use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::serde_str;
use crate::error::{Error, Result};

/// A 2x2 integer matrix `[[a11, a12], [a21, a22]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Mat2Z {
    #[serde(serialize_with = "serde_str::bigint")]
    pub a11: BigInt,
    #[serde(serialize_with = "serde_str::bigint")]
    pub a12: BigInt,
    #[serde(serialize_with = "serde_str::bigint")]
    pub a21: BigInt,
    #[serde(serialize_with = "serde_str::bigint")]
    pub a22: BigInt,
}

impl Mat2Z {
    pub fn new(
        a11: impl Into<BigInt>,
        a12: impl Into<BigInt>,
        a21: impl Into<BigInt>,
        a22: impl Into<BigInt>,
    ) -> Mat2Z {
        Mat2Z {
            a11: a11.into(),
            a12: a12.into(),
            a21: a21.into(),
            a22: a22.into(),
        }
    }

    pub fn identity() -> Mat2Z {
        Mat2Z::new(1, 0, 0, 1)
    }

    pub fn det(&self) -> BigInt {
        &self.a11 * &self.a22 - &self.a12 * &self.a21
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    pub(crate) fn require_unimodular(&self) -> Result<()> {
        if self.is_unimodular() {
            Ok(())
        } else {
            Err(Error::NotUnimodular(self.det().to_string()))
        }
    }

    /// Inverse inside GL(2, Z).
    pub fn inverse(&self) -> Result<Mat2Z> {
        self.require_unimodular()?;
        let det = self.det();
        Ok(Mat2Z {
            a11: &det * &self.a22,
            a12: -(&det * &self.a12),
            a21: -(&det * &self.a21),
            a22: &det * &self.a11,
        })
    }

    pub fn pow(&self, mut e: u64) -> Mat2Z {
        let mut base = self.clone();
        let mut acc = Mat2Z::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Product with the column vector `(x, y)`.
    pub fn apply(&self, x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
        (
            &self.a11 * x + &self.a12 * y,
            &self.a21 * x + &self.a22 * y,
        )
    }

    pub fn is_identity(&self) -> bool {
        self.a11.is_one() && self.a22.is_one() && self.a12.is_zero() && self.a21.is_zero()
    }
}

impl Mul for &Mat2Z {
    type Output = Mat2Z;
    fn mul(self, rhs: &Mat2Z) -> Mat2Z {
        Mat2Z {
            a11: &self.a11 * &rhs.a11 + &self.a12 * &rhs.a21,
            a12: &self.a11 * &rhs.a12 + &self.a12 * &rhs.a22,
            a21: &self.a21 * &rhs.a11 + &self.a22 * &rhs.a21,
            a22: &self.a21 * &rhs.a12 + &self.a22 * &rhs.a22,
        }
    }
}

impl Mul for Mat2Z {
    type Output = Mat2Z;
    fn mul(self, rhs: Mat2Z) -> Mat2Z {
        &self * &rhs
    }
}

impl fmt::Display for Mat2Z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.a11, self.a12, self.a21, self.a22
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_powers() {
        let a = Mat2Z::new(0, 1, 1, 2);
        assert_eq!(a.det(), BigInt::from(-1));
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        assert_eq!(a.pow(3), &(&a * &a) * &a);
        assert!(a.pow(0).is_identity());
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let m = Mat2Z::new(2, 0, 0, 1);
        assert_eq!(m.inverse(), Err(Error::NotUnimodular("2".into())));
    }
}
