//! Primitive integer vectors under the p-adic cross-ratio metric
//! `d(m, n) = |m1 n2 - m2 n1|_p`, explicit ball covers, and the action of
//! `GL(2, Z)` by matrix multiplication.

use std::fmt;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{check_prime, padic_abs, serde_str, PAdicAbs, Rat};
use crate::error::{Error, Result};
use crate::matrix::Mat2Z;

/// A primitive vector, one representative per line through the origin:
/// `n1 > 0`, or `n1 = 0` and `n2 = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PrimitiveVector {
    #[serde(serialize_with = "serde_str::bigint")]
    n1: BigInt,
    #[serde(serialize_with = "serde_str::bigint")]
    n2: BigInt,
}

impl PrimitiveVector {
    pub fn new(n1: impl Into<BigInt>, n2: impl Into<BigInt>) -> Result<PrimitiveVector> {
        let (n1, n2) = (n1.into(), n2.into());
        if !n1.gcd(&n2).is_one() {
            return Err(Error::OutOfRange(format!("({n1}, {n2}) is not primitive")));
        }
        Ok(PrimitiveVector::canonical(n1, n2))
    }

    fn canonical(n1: BigInt, n2: BigInt) -> PrimitiveVector {
        if n1.is_negative() || (n1.is_zero() && n2.is_negative()) {
            PrimitiveVector { n1: -n1, n2: -n2 }
        } else {
            PrimitiveVector { n1, n2 }
        }
    }

    pub fn n1(&self) -> &BigInt {
        &self.n1
    }

    pub fn n2(&self) -> &BigInt {
        &self.n2
    }

    /// `m1 n2 - m2 n1`.
    pub fn cross(&self, other: &PrimitiveVector) -> BigInt {
        &self.n1 * &other.n2 - &self.n2 * &other.n1
    }
}

impl fmt::Display for PrimitiveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.n1, self.n2)
    }
}

/// `d(m, n)` as a p-adic absolute value.
pub fn pdist_abs(m: &PrimitiveVector, n: &PrimitiveVector, p: u64) -> Result<PAdicAbs> {
    padic_abs(&m.cross(n), p)
}

/// `d(m, n) = |m1 n2 - m2 n1|_p`.
pub fn pdist(m: &PrimitiveVector, n: &PrimitiveVector, p: u64) -> Result<Rat> {
    pdist_abs(m, n, p).map(|a| a.value())
}

/// `d(m, n) <= d(m, k) + d(k, n)`.
pub fn triangle_check(
    k: &PrimitiveVector,
    m: &PrimitiveVector,
    n: &PrimitiveVector,
    p: u64,
) -> Result<bool> {
    Ok(pdist(m, n, p)? <= pdist(m, k, p)? + pdist(k, n, p)?)
}

/// `A m`, re-canonicalized. `A` must be unimodular.
pub fn act(a: &Mat2Z, m: &PrimitiveVector) -> Result<PrimitiveVector> {
    a.require_unimodular()?;
    let (x, y) = a.apply(&m.n1, &m.n2);
    if !x.gcd(&y).is_one() {
        return Err(Error::Inconsistency(format!(
            "image ({x}, {y}) of a primitive vector is not primitive"
        )));
    }
    Ok(PrimitiveVector::canonical(x, y))
}

/// `d(A m, A n) = d(m, n)`.
pub fn isometry_check(
    a: &Mat2Z,
    m: &PrimitiveVector,
    n: &PrimitiveVector,
    p: u64,
) -> Result<bool> {
    let am = act(a, m)?;
    let an = act(a, n)?;
    Ok(pdist(&am, &an, p)? == pdist(m, n, p)?)
}

/// Smallest `k` with `p^k >= N`, so `p^-k <= 1/N < p^(1-k)`.
pub fn cover_exponent(p: u64, n: u64) -> Result<u32> {
    check_prime(p)?;
    if n == 0 {
        return Err(Error::OutOfRange("N must be positive".into()));
    }
    let mut k = 0;
    let mut pk = BigInt::one();
    while pk < BigInt::from(n) {
        pk *= p;
        k += 1;
    }
    Ok(k)
}

/// Centers of closed balls of radius `p^-k` covering all primitive vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverSpec {
    pub p: u64,
    pub n: u64,
    pub k: u32,
    pub centers: Vec<PrimitiveVector>,
}

impl CoverSpec {
    pub fn modulus(&self) -> BigInt {
        BigInt::from(self.p).pow(self.k)
    }

    /// `p^-k`.
    pub fn radius(&self) -> Rat {
        Rat::new(BigInt::one(), self.modulus())
    }

    /// Header line `# p N k`, then one `n1 n2` line per center.
    pub fn to_text(&self) -> String {
        let mut out = format!("# p={} N={} k={}\n", self.p, self.n, self.k);
        for c in &self.centers {
            writeln!(out, "{} {}", c.n1, c.n2).unwrap();
        }
        out
    }
}

/// Centers `(1, l)` for `1 <= l <= p^k` and `(l, 1)` for `p | l`.
pub fn build_cover(p: u64, n: u64) -> Result<CoverSpec> {
    let k = cover_exponent(p, n)?;
    let pk = BigInt::from(p).pow(k);
    let mut centers = Vec::new();
    let mut l = BigInt::one();
    while l <= pk {
        centers.push(PrimitiveVector::canonical(BigInt::one(), l.clone()));
        l += 1;
    }
    if k > 0 {
        let mut l = BigInt::from(p);
        while l <= pk {
            centers.push(PrimitiveVector::canonical(l.clone(), BigInt::one()));
            l += p;
        }
    }
    Ok(CoverSpec { p, n, k, centers })
}

/// Which cover piece holds `v`: `(1, l)` when `p` does not divide `n1`,
/// else `(2, l)`. Residue `0` is reported as `p^k`.
pub fn classify(v: &PrimitiveVector, p: u64, k: u32) -> Result<(u8, BigInt)> {
    check_prime(p)?;
    let pk = BigInt::from(p).pow(k);
    if k == 0 {
        return Ok((1, BigInt::one()));
    }
    let to_range = |r: BigInt| {
        let r = r.mod_floor(&pk);
        if r.is_zero() {
            pk.clone()
        } else {
            r
        }
    };
    if !(&v.n1 % p).is_zero() {
        let inv = mod_inverse(&v.n1, &pk)?;
        Ok((1, to_range(inv * &v.n2)))
    } else {
        let inv = mod_inverse(&v.n2, &pk)?;
        Ok((2, to_range(&v.n1 * inv)))
    }
}

/// Center of the cover piece `(branch, l)`.
pub fn center(branch: u8, l: &BigInt) -> PrimitiveVector {
    if branch == 1 {
        PrimitiveVector::canonical(BigInt::one(), l.clone())
    } else {
        PrimitiveVector::canonical(l.clone(), BigInt::one())
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Result<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if !e.gcd.is_one() {
        return Err(Error::Inconsistency(format!("{a} has no inverse mod {m}")));
    }
    Ok(e.x.mod_floor(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use proptest::prelude::*;

    fn v(a: i64, b: i64) -> PrimitiveVector {
        PrimitiveVector::new(a, b).unwrap()
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(v(-1, -2), v(1, 2));
        assert_eq!(v(0, -1), v(0, 1));
        assert!(PrimitiveVector::new(2, 4).is_err());
        assert!(PrimitiveVector::new(0, 0).is_err());
    }

    #[test]
    fn distance_examples() {
        for p in [2, 3, 5, 7] {
            assert_eq!(pdist(&v(1, 0), &v(0, 1), p).unwrap(), rat(1, 1));
            assert_eq!(pdist(&v(1, 2), &v(-1, -2), p).unwrap(), rat(0, 1));
        }
        assert_eq!(pdist(&v(1, 2), &v(1, 5), 3).unwrap(), rat(1, 3));
        assert!(pdist(&v(1, 2), &v(1, 5), 4).is_err());
    }

    #[test]
    fn triangle_examples() {
        assert!(triangle_check(&v(1, 1), &v(1, 0), &v(0, 1), 2).unwrap());
        assert!(triangle_check(&v(3, 7), &v(3, 7), &v(2, 9), 3).unwrap());
    }

    #[test]
    fn action_examples() {
        let t = Mat2Z::new(1, 1, 0, 1);
        assert_eq!(act(&t, &v(1, 2)).unwrap(), v(3, 2));
        assert_eq!(act(&Mat2Z::identity(), &v(4, -7)).unwrap(), v(4, -7));
        assert_eq!(act(&Mat2Z::new(0, 1, 1, 2), &v(0, 1)).unwrap(), v(1, 2));
        let a = Mat2Z::new(0, 1, 1, 2);
        assert!(isometry_check(&a, &v(1, 0), &v(0, 1), 2).unwrap());
        assert!(matches!(
            isometry_check(&Mat2Z::new(2, 0, 0, 1), &v(1, 0), &v(0, 1), 2),
            Err(Error::NotUnimodular(_))
        ));
    }

    #[test]
    fn cover_examples() {
        let c = build_cover(2, 3).unwrap();
        assert_eq!((c.k, c.centers.len()), (2, 6));
        let c = build_cover(3, 2).unwrap();
        assert_eq!(c.k, 1);
        assert_eq!(c.centers, vec![v(1, 1), v(1, 2), v(1, 3), v(3, 1)]);
        for p in [2, 3, 5] {
            let c = build_cover(p, 1).unwrap();
            assert_eq!((c.k, c.centers.len()), (0, 1));
        }
        assert_eq!(build_cover(2, 2).unwrap().to_text(), "# p=2 N=2 k=1\n1 1\n1 2\n2 1\n");
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&v(1, 5), 2, 2).unwrap(), (1, BigInt::from(1)));
        assert_eq!(classify(&v(2, 1), 2, 2).unwrap(), (2, BigInt::from(2)));
        for p in [2u64, 3, 5] {
            assert_eq!(classify(&v(0, 1), p, 3).unwrap(), (2, BigInt::from(p.pow(3))));
        }
    }

    fn primitive() -> impl Strategy<Value = PrimitiveVector> {
        (-1_000_000i64..=1_000_000, -1_000_000i64..=1_000_000)
            .prop_filter("primitive", |(a, b)| a.gcd(b) == 1)
            .prop_map(|(a, b)| v(a, b))
    }

    fn word() -> impl Strategy<Value = Mat2Z> {
        prop::collection::vec(any::<bool>(), 0..=12).prop_map(|w| {
            w.into_iter().fold(Mat2Z::identity(), |acc, t| {
                let g = if t {
                    Mat2Z::new(1, 1, 0, 1)
                } else {
                    Mat2Z::new(0, 1, 1, 0)
                };
                &acc * &g
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn metric_axioms(a in primitive(), b in primitive(), c in primitive(), p in prop::sample::select(vec![2u64, 3, 5])) {
            let dab = pdist(&a, &b, p).unwrap();
            prop_assert!(dab >= rat(0, 1));
            prop_assert_eq!(dab.clone(), pdist(&b, &a, p).unwrap());
            prop_assert_eq!(dab == rat(0, 1), a == b);
            prop_assert!(triangle_check(&c, &a, &b, p).unwrap());
        }

        #[test]
        fn group_action(a in word(), b in word(), m in primitive(), n in primitive(), p in prop::sample::select(vec![2u64, 3, 5])) {
            let ab = &a * &b;
            prop_assert_eq!(act(&ab, &m).unwrap(), act(&a, &act(&b, &m).unwrap()).unwrap());
            prop_assert!(isometry_check(&a, &m, &n, p).unwrap());
        }

        #[test]
        fn cover_is_complete(m in primitive(), p in prop::sample::select(vec![2u64, 3, 5]), n in 1u64..=100) {
            let cover = build_cover(p, n).unwrap();
            let (branch, l) = classify(&m, p, cover.k).unwrap();
            let c = center(branch, &l);
            prop_assert!(cover.centers.contains(&c));
            prop_assert!(pdist(&m, &c, p).unwrap() <= cover.radius());
        }
    }
}
