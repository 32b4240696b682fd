//! Continued fractions of quadratic irrationals.
//!
//! A number `x` in `(0, 1)` is written `x = 1/(a_1 + 1/(a_2 + ...))`, so the
//! first digit sits inside the fraction and there is no integer part.
//! Convergents follow `p_0 = 0, q_0 = 1, p_1 = 1, q_1 = a_1` and
//! `p_{n+1} = a_{n+1} p_n + p_{n-1}` (same for `q`).

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{serde_str, QuadNum, Rat, Surd};
use crate::error::{Error, Result};
use crate::matrix::Mat2Z;

/// Eventually periodic expansion `[b_1..b_r, (a_1..a_s)*]` in canonical form:
/// minimal period, minimal preperiod.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CfExpansion {
    preperiod: Vec<u64>,
    period: Vec<u64>,
}

impl CfExpansion {
    /// Validates digits and canonicalizes the (preperiod, period) pair.
    pub fn new(preperiod: Vec<u64>, period: Vec<u64>) -> Result<CfExpansion> {
        if period.is_empty() {
            return Err(Error::OutOfRange("period must be nonempty".into()));
        }
        if preperiod.iter().chain(&period).any(|&d| d == 0) {
            return Err(Error::OutOfRange("partial quotients must be >= 1".into()));
        }
        let mut cf = CfExpansion { preperiod, period };
        cf.canonicalize();
        Ok(cf)
    }

    fn canonicalize(&mut self) {
        let s = self.period.len();
        if let Some(d) = (1..=s)
            .filter(|d| s.is_multiple_of(*d))
            .find(|&d| (d..s).all(|i| self.period[i] == self.period[i - d]))
        {
            self.period.truncate(d);
        }
        while let (Some(&b), Some(&a)) = (self.preperiod.last(), self.period.last()) {
            if a != b {
                break;
            }
            self.preperiod.pop();
            self.period.rotate_right(1);
        }
    }

    pub fn preperiod(&self) -> &[u64] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u64] {
        &self.period
    }

    /// `r`, the preperiod length.
    pub fn r(&self) -> usize {
        self.preperiod.len()
    }

    /// `s`, the period length.
    pub fn s(&self) -> usize {
        self.period.len()
    }

    /// The `k`-th partial quotient, `k >= 1`.
    pub fn digit(&self, k: usize) -> u64 {
        assert!(k >= 1, "digits are indexed from 1");
        let r = self.preperiod.len();
        if k <= r {
            self.preperiod[k - 1]
        } else {
            self.period[(k - r - 1) % self.period.len()]
        }
    }

    pub fn max_digit(&self) -> u64 {
        self.preperiod
            .iter()
            .chain(&self.period)
            .copied()
            .max()
            .unwrap_or(1)
    }

    /// Convergents starting from `k = 0`.
    pub fn convergents(&self) -> Convergents<'_> {
        Convergents {
            cf: self,
            k: 0,
            prev: (BigInt::one(), BigInt::zero()),
            cur: (BigInt::zero(), BigInt::one()),
        }
    }

    /// `q_0, ..., q_kmax`.
    pub fn denominators(&self, kmax: usize) -> Vec<BigInt> {
        self.convergents().take(kmax + 1).map(|c| c.q).collect()
    }

    /// The exact value, reconstructed from the periodic tail.
    pub fn value(&self) -> QuadNum {
        // y = [period repeating] solves y = (p_s + p_{s-1} y) / (q_s + q_{s-1} y)
        let block = CfExpansion {
            preperiod: Vec::new(),
            period: self.period.clone(),
        };
        let conv: Vec<Convergent> = block.convergents().take(self.s() + 1).collect();
        let (ps, qs) = (&conv[self.s()].p, &conv[self.s()].q);
        let (ps1, qs1) = (&conv[self.s() - 1].p, &conv[self.s() - 1].q);
        let lin = qs - ps1;
        let disc = &lin * &lin + BigInt::from(4) * qs1 * ps;
        let y = QuadNum::new(-lin, BigInt::one(), BigInt::from(2) * qs1, disc);

        let r = self.r();
        let pre: Vec<Convergent> = self.convergents().take(r + 1).collect();
        let (pr, qr) = (&pre[r].p, &pre[r].q);
        let (pr1, qr1) = if r == 0 {
            (BigInt::one(), BigInt::zero())
        } else {
            (pre[r - 1].p.clone(), pre[r - 1].q.clone())
        };
        let num = y.mul_int(&pr1).add_int(pr);
        let den = y.mul_int(&qr1).add_int(qr);
        num.div(&den)
    }

    pub fn to_surd(&self) -> Surd {
        Surd::from_quad(&self.value())
    }
}

impl fmt::Display for CfExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| {
            v.iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(
            f,
            "preperiod: [{}]\nperiod: [{}]",
            join(&self.preperiod),
            join(&self.period)
        )
    }
}

/// The convergent `p_k / q_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Convergent {
    pub k: usize,
    #[serde(serialize_with = "serde_str::bigint")]
    pub p: BigInt,
    #[serde(serialize_with = "serde_str::bigint")]
    pub q: BigInt,
}

impl Convergent {
    pub fn value(&self) -> Rat {
        Rat::new(self.p.clone(), self.q.clone())
    }
}

pub struct Convergents<'a> {
    cf: &'a CfExpansion,
    k: usize,
    prev: (BigInt, BigInt),
    cur: (BigInt, BigInt),
}

impl Iterator for Convergents<'_> {
    type Item = Convergent;

    fn next(&mut self) -> Option<Convergent> {
        let out = Convergent {
            k: self.k,
            p: self.cur.0.clone(),
            q: self.cur.1.clone(),
        };
        self.k += 1;
        let a = BigInt::from(self.cf.digit(self.k));
        let next = (
            &a * &self.cur.0 + &self.prev.0,
            &a * &self.cur.1 + &self.prev.1,
        );
        self.prev = std::mem::replace(&mut self.cur, next);
        Some(out)
    }
}

/// Expands `x` in `(0, 1)` by iterating complete quotients `(P + sqrt D)/Q`
/// until a state repeats.
pub fn cf_expand(x: &Surd, max_states: usize) -> Result<CfExpansion> {
    if x.is_rational() {
        return Err(Error::RationalInput);
    }
    if x.cmp_rat(&Rat::zero()) != Ordering::Greater || x.cmp_rat(&Rat::one()) != Ordering::Less {
        return Err(Error::OutOfRange(format!("{x} is not in (0, 1)")));
    }
    let d = x.d().clone();
    // 1/x = (-P + sqrt D) / ((D - P^2) / Q), still in normal form
    let mut p = -x.p();
    let mut q = (&d - x.p() * x.p()) / x.q();

    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    let mut digits: Vec<u64> = Vec::new();
    loop {
        if let Some(&start) = seen.get(&(p.clone(), q.clone())) {
            let period = digits.split_off(start);
            return CfExpansion::new(digits, period);
        }
        if seen.len() >= max_states {
            return Err(Error::BudgetExceeded(format!(
                "no repeated complete quotient within {max_states} states"
            )));
        }
        seen.insert((p.clone(), q.clone()), digits.len());
        let xi = QuadNum::new(p.clone(), BigInt::one(), q.clone(), d.clone());
        let a = xi.floor();
        let digit = a
            .to_u64()
            .filter(|&v| v >= 1)
            .ok_or_else(|| Error::Inconsistency(format!("partial quotient {a} out of range")))?;
        digits.push(digit);
        p = &a * &q - &p;
        let next_q = (&d - &p * &p) / &q;
        q = next_q;
    }
}

/// `(p_k, q_k)` for `k = 1..=kmax`.
pub fn convergents(cf: &CfExpansion, kmax: usize) -> Vec<Convergent> {
    cf.convergents().skip(1).take(kmax).collect()
}

/// `[[0, 1], [1, a]]`.
pub fn step_matrix(a: u64) -> Mat2Z {
    Mat2Z::new(0, 1, 1, a)
}

/// `A_k ... A_1`; maps `(0, 1)` to `(q_{k-1}, q_k)`.
pub fn matrix_word(cf: &CfExpansion, k: usize) -> Mat2Z {
    (1..=k).fold(Mat2Z::identity(), |acc, i| &step_matrix(cf.digit(i)) * &acc)
}

/// `|x - p_k/q_k| <= 1/(q_k q_{k+1})`, decided exactly.
pub fn check_quality(x: &Surd, cf: &CfExpansion, k: usize) -> bool {
    let conv: Vec<Convergent> = cf.convergents().skip(k).take(2).collect();
    let (ck, ck1) = (&conv[0], &conv[1]);
    let err = (x.value() - QuadNum::from_rat(&ck.value())).abs();
    let bound = Rat::new(BigInt::one(), &ck.q * &ck1.q);
    err.cmp_rat(&bound) != Ordering::Greater
}

/// For `k = 0..=kmax`, whether `q_k * ||q_k x|| <= 1/sqrt(5)`.
pub fn hurwitz_scan(x: &Surd, kmax: usize) -> Result<Vec<(BigInt, bool)>> {
    let cf = cf_expand(x, DEFAULT_MAX_STATES)?;
    let fifth = Rat::new(BigInt::one(), BigInt::from(5));
    Ok(cf
        .denominators(kmax)
        .into_iter()
        .map(|q| {
            let y = x.value().mul_int(&q).dist_nearest_int().mul_int(&q);
            let ok = y.square().cmp_rat(&fifth) != Ordering::Greater;
            (q, ok)
        })
        .collect())
}

/// State budget used by callers that do not pick their own.
pub const DEFAULT_MAX_STATES: usize = 1_000_000;

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: i64, d: i64, q: i64) -> Surd {
        Surd::new(p, d, q).unwrap()
    }

    fn cf(pre: &[u64], per: &[u64]) -> CfExpansion {
        CfExpansion::new(pre.to_vec(), per.to_vec()).unwrap()
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(cf_expand(&s(-1, 2, 1), 100).unwrap(), cf(&[], &[2]));
        assert_eq!(cf_expand(&s(-1, 5, 2), 100).unwrap(), cf(&[], &[1]));
        assert_eq!(cf_expand(&s(-1, 3, 2), 100).unwrap(), cf(&[], &[2, 1]));
        // sqrt(2)/2 = [1, (2)*] in this convention
        assert_eq!(cf_expand(&s(0, 2, 2), 100).unwrap(), cf(&[1], &[2]));
    }

    #[test]
    fn expansion_rejects_bad_input() {
        assert_eq!(cf_expand(&s(1, 0, 2), 100), Err(Error::RationalInput));
        assert!(matches!(cf_expand(&s(0, 2, 1), 100), Err(Error::OutOfRange(_))));
        assert!(matches!(cf_expand(&s(-2, 2, 1), 100), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn canonical_form() {
        assert_eq!(cf(&[], &[2, 2, 2]), cf(&[], &[2]));
        assert_eq!(cf(&[3, 1, 2], &[1, 2]), cf(&[3], &[1, 2]));
        assert_eq!(cf(&[2], &[1, 2]), cf(&[], &[2, 1]));
        assert!(CfExpansion::new(vec![], vec![]).is_err());
        assert!(CfExpansion::new(vec![0], vec![1]).is_err());
    }

    #[test]
    fn convergent_examples() {
        let c = convergents(&cf(&[], &[2]), 3);
        let pq: Vec<(i64, i64)> = c
            .iter()
            .map(|c| (c.p.clone().try_into().unwrap(), c.q.clone().try_into().unwrap()))
            .collect();
        assert_eq!(pq, vec![(1, 2), (2, 5), (5, 12)]);

        let fib = cf(&[], &[1]).denominators(4);
        assert_eq!(fib, [1, 1, 2, 3, 5].map(BigInt::from).to_vec());

        let first = cf(&[4], &[1, 3]).convergents().next().unwrap();
        assert_eq!((first.p, first.q), (BigInt::zero(), BigInt::one()));
    }

    #[test]
    fn step_matrix_examples() {
        assert_eq!(step_matrix(2), Mat2Z::new(0, 1, 1, 2));
        assert_eq!(step_matrix(1), Mat2Z::new(0, 1, 1, 1));
        assert_eq!(step_matrix(7).det(), BigInt::from(-1));
    }

    #[test]
    fn matrix_word_examples() {
        let c = cf(&[], &[2]);
        let m1 = matrix_word(&c, 1);
        assert_eq!(m1, Mat2Z::new(0, 1, 1, 2));
        assert_eq!(m1.apply(&0.into(), &1.into()), (1.into(), 2.into()));
        let m2 = matrix_word(&c, 2);
        assert_eq!(m2.apply(&0.into(), &1.into()), (2.into(), 5.into()));
        let other = cf(&[6], &[1, 4]);
        assert_eq!(matrix_word(&other, 1).apply(&0.into(), &1.into()), (1.into(), 6.into()));
    }

    #[test]
    fn quality_examples() {
        let x = s(-1, 2, 1);
        let c = cf_expand(&x, 100).unwrap();
        assert!(check_quality(&x, &c, 1));
        assert!(check_quality(&x, &c, 3));
        let g = s(-1, 5, 2);
        assert!(check_quality(&g, &cf_expand(&g, 100).unwrap(), 4));
    }

    #[test]
    fn hurwitz_examples() {
        let x = s(-1, 2, 1);
        let scan = hurwitz_scan(&x, 3).unwrap();
        // ||sqrt 2 - 1|| = 0.414 <= 1/sqrt 5, and 2 ||2 (sqrt 2 - 1)|| = 0.343
        assert_eq!(scan[0], (BigInt::one(), true));
        assert_eq!(scan[1], (BigInt::from(2), true));

        // sqrt 30 - 5 = 0.4772..., farther than 1/sqrt 5 from every integer
        let far = s(-5, 30, 1);
        assert_eq!(hurwitz_scan(&far, 0).unwrap()[0], (BigInt::one(), false));
    }

    #[test]
    fn value_reconstruction() {
        assert_eq!(cf(&[], &[2]).to_surd().value(), s(-1, 2, 1).value());
        let c = cf(&[1], &[2]);
        assert_eq!(cf_expand(&c.to_surd(), 100).unwrap(), c);
    }
}
