//! Explicit witnesses for the bound
//! `liminf n |n|_p ||n alpha|| log n <= 8 b^2 p log C`
//! on a quadratic irrational `alpha`.
//!
//! For each `N` the search looks for `1 <= i <= N` with
//! `|b22 q_{is+r-1} - b12 q_{is+r}|_p <= 2p/N`, where `(b12, b22)` is the
//! second column of the preperiod matrix. Such an `i` exists because the
//! `N` points `A^i B (0, 1)` are pairwise far apart in the projective metric
//! unless two of them share a small ball, and fewer than `N` balls suffice.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::json;

use crate::arith::{check_prime, padic_abs, Enclosure, PAdicAbs, QuadNum, Rat, Surd};
use crate::cf::{step_matrix, CfExpansion};
use crate::error::{Error, Result};
use crate::matrix::Mat2Z;

/// Working precision, in bits, of the logarithm enclosures.
pub const DEFAULT_BITS: u32 = 128;

const DECIMAL_DIGITS: usize = 30;

/// `A = A_{r+s} ... A_{r+1}` and `B = A_r ... A_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodMatrices {
    pub a: Mat2Z,
    pub b_mat: Mat2Z,
    pub r: usize,
    pub s: usize,
    /// `max(|b22|, |b12|)`.
    pub b: BigInt,
}

pub fn build_period_matrices(cf: &CfExpansion) -> PeriodMatrices {
    let (r, s) = (cf.r(), cf.s());
    let word = |from: usize, to: usize| {
        (from..=to).fold(Mat2Z::identity(), |acc, k| &step_matrix(cf.digit(k)) * &acc)
    };
    let b_mat = word(1, r);
    let a = word(r + 1, r + s);
    let b = b_mat.a22.abs().max(b_mat.a12.abs());
    PeriodMatrices { a, b_mat, r, s, b }
}

/// `2 b q_r (a_max + 1)^s`, which bounds `n_N` by `C^N`.
pub fn growth_constant(cf: &CfExpansion) -> BigInt {
    let mats = build_period_matrices(cf);
    let qr = cf.denominators(cf.r())[cf.r()].clone();
    BigInt::from(2) * &mats.b * qr * BigInt::from(cf.max_digit() + 1).pow(cf.s() as u32)
}

/// `|x|_p <= 2p/N`, exactly.
fn within_threshold(x: &PAdicAbs, p: u64, n: u64) -> bool {
    match x.valuation {
        None => true,
        Some(v) => BigInt::from(n) <= BigInt::from(2 * p) * BigInt::from(p).pow(v),
    }
}

/// Smallest valid index and the signed value `b22 q_{is+r-1} - b12 q_{is+r}`.
fn scan_index(
    mats: &PeriodMatrices,
    qs: &[BigInt],
    p: u64,
    n: u64,
) -> Result<(u64, BigInt)> {
    let (b12, b22) = (&mats.b_mat.a12, &mats.b_mat.a22);
    // A^i B (0, 1) = (q_{is+r-1}, q_{is+r}), tracked independently
    let mut col = (b12.clone(), b22.clone());
    for i in 1..=n {
        col = mats.a.apply(&col.0, &col.1);
        let k = i as usize * mats.s + mats.r;
        if col.0 != qs[k - 1] || col.1 != qs[k] {
            return Err(Error::Inconsistency(format!(
                "matrix route and recurrence disagree at convergent {k}"
            )));
        }
        let x = b22 * &qs[k - 1] - b12 * &qs[k];
        if within_threshold(&padic_abs(&x, p)?, p, n) {
            return Ok((i, x));
        }
    }
    Err(Error::Inconsistency(format!(
        "no index i <= {n} meets the 2p/N threshold"
    )))
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        Err(Error::OutOfRange("N must be positive".into()))
    } else {
        Ok(())
    }
}

/// Smallest `1 <= i <= N` with `|b22 q_{is+r-1} - b12 q_{is+r}|_p <= 2p/N`.
pub fn find_witness_index(cf: &CfExpansion, p: u64, n: u64) -> Result<u64> {
    check_n(n)?;
    check_prime(p)?;
    let mats = build_period_matrices(cf);
    let qs = cf.denominators(n as usize * mats.s + mats.r + 1);
    scan_index(&mats, &qs, p, n).map(|(i, _)| i)
}

/// One certified witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessRecord {
    pub n: u64,
    pub i: u64,
    pub n_n: BigInt,
    pub padic: PAdicAbs,
    /// `||n_N alpha||`.
    pub norm_term: Surd,
    /// `n_N |n_N|_p ||n_N alpha||`, exactly.
    pub product_exact: QuadNum,
    pub product: Enclosure,
    /// `product * log n_N`.
    pub product_log: Enclosure,
}

impl WitnessRecord {
    pub const CSV_HEADER: &'static str =
        "N,nN,productLo,productHi,productLogLo,productLogHi";

    pub fn to_json(&self) -> String {
        json!({
            "N": self.n,
            "i": self.i,
            "nN": self.n_n.to_string(),
            "padicNum": self.padic.numerator(),
            "padicDen": self.padic.denominator().to_string(),
            "productLo": self.product.lo_decimal(DECIMAL_DIGITS),
            "productHi": self.product.hi_decimal(DECIMAL_DIGITS),
            "productLogLo": self.product_log.lo_decimal(DECIMAL_DIGITS),
            "productLogHi": self.product_log.hi_decimal(DECIMAL_DIGITS),
        })
        .to_string()
    }

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.n,
            self.n_n,
            self.product.lo_decimal(DECIMAL_DIGITS),
            self.product.hi_decimal(DECIMAL_DIGITS),
            self.product_log.lo_decimal(DECIMAL_DIGITS),
            self.product_log.hi_decimal(DECIMAL_DIGITS)
        )
    }
}

/// Everything that does not depend on `N`.
struct Pipeline<'a> {
    cf: &'a CfExpansion,
    mats: PeriodMatrices,
    alpha: QuadNum,
    c: BigInt,
    p: u64,
    bits: u32,
    bound: Enclosure,
}

impl<'a> Pipeline<'a> {
    fn new(cf: &'a CfExpansion, p: u64, bits: u32) -> Result<Pipeline<'a>> {
        check_prime(p)?;
        let mats = build_period_matrices(cf);
        let c = growth_constant(cf);
        let scale = Rat::from_integer(BigInt::from(8 * p) * &mats.b * &mats.b);
        let bound = Enclosure::ln_int(&c, bits + 8).scale(&scale, bits);
        Ok(Pipeline {
            cf,
            alpha: cf.value(),
            mats,
            c,
            p,
            bits,
            bound,
        })
    }

    fn witness(&self, n: u64) -> Result<WitnessRecord> {
        check_n(n)?;
        let mats = &self.mats;
        let qs = self.cf.denominators(n as usize * mats.s + mats.r + 1);
        let (i, x) = scan_index(mats, &qs, self.p, n)?;
        let n_n = x.abs();
        if n_n.is_zero() {
            return Err(Error::BelowThreshold(n));
        }
        let fail = |what: &str| Err(Error::Inconsistency(format!("N = {n}: {what}")));
        let k = i as usize * mats.s + mats.r;
        let dist = |m: &BigInt| self.alpha.mul_int(m).dist_nearest_int();

        // ||q_j alpha|| < 1/q_{j+1}
        for j in [k - 1, k] {
            if dist(&qs[j]).cmp_rat(&Rat::new(BigInt::one(), qs[j + 1].clone())) != Ordering::Less {
                return fail("convergent quality bound");
            }
        }
        let norm = dist(&n_n);
        let (b12, b22) = (mats.b_mat.a12.abs(), mats.b_mat.a22.abs());
        let split = dist(&qs[k - 1]).mul_int(&b22) + dist(&qs[k]).mul_int(&b12);
        if norm.cmp_value(&split) == Ordering::Greater {
            return fail("||n_N alpha|| exceeds the two-term bound");
        }
        let b = &mats.b;
        if n_n > BigInt::from(2) * b * &qs[k] {
            return fail("n_N > 2 b q_{is+r}");
        }
        let four_b2 = Rat::from_integer(BigInt::from(4) * b * b);
        if norm.mul_int(&n_n).cmp_rat(&four_b2) == Ordering::Greater {
            return fail("n_N ||n_N alpha|| > 4 b^2");
        }
        let padic = padic_abs(&n_n, self.p)?;
        let product_exact = norm.mul_rat(&padic.value()).mul_int(&n_n);
        let cap = Rat::new(BigInt::from(8 * self.p) * b * b, BigInt::from(n));
        if product_exact.cmp_rat(&cap) == Ordering::Greater {
            return fail("product exceeds 8 b^2 p / N");
        }
        if n_n > self.c.pow(n as u32) {
            return fail("n_N > C^N");
        }

        let mut bits = self.bits;
        loop {
            let product = Enclosure::from_quad(&product_exact, bits + 8);
            let product_log = product.mul(&Enclosure::ln_int(&n_n, bits + 8), bits);
            match product_log.certainly_cmp(&self.bound) {
                Some(Ordering::Greater) => return fail("product log n_N exceeds 8 b^2 p log C"),
                Some(_) if product_log.hi() <= self.bound.lo() => {
                    return Ok(WitnessRecord {
                        n,
                        i,
                        norm_term: Surd::from_quad(&norm),
                        n_n,
                        padic,
                        product_exact,
                        product,
                        product_log,
                    });
                }
                _ if bits < 4096 => bits *= 2,
                _ => return fail("log bound undecided at 4096 bits"),
            }
        }
    }
}

/// The witness `n_N` for one `N`, with every bound checked.
pub fn make_witness(cf: &CfExpansion, p: u64, n: u64) -> Result<WitnessRecord> {
    Pipeline::new(cf, p, DEFAULT_BITS)?.witness(n)
}

/// Records for `N = 2, 4, ..., <= Nmax` and the bound they all respect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub records: Vec<WitnessRecord>,
    /// Values of `N` where `n_N` vanished.
    pub skipped: Vec<u64>,
    pub b: BigInt,
    pub c: BigInt,
    /// `8 b^2 p log C`.
    pub bound: Enclosure,
}

impl Certificate {
    pub fn max_product_log(&self) -> Option<&WitnessRecord> {
        self.records
            .iter()
            .max_by(|x, y| x.product_log.hi().cmp(y.product_log.hi()))
    }

    /// Every record's upper end lies below the lower end of the bound.
    pub fn holds(&self) -> bool {
        self.records
            .iter()
            .all(|r| r.product_log.hi() <= self.bound.lo())
    }

    pub fn summary_json(&self) -> String {
        let max = self.max_product_log();
        json!({
            "records": self.records.len(),
            "skipped": self.skipped,
            "b": self.b.to_string(),
            "C": self.c.to_string(),
            "boundLo": self.bound.lo_decimal(DECIMAL_DIGITS),
            "boundHi": self.bound.hi_decimal(DECIMAL_DIGITS),
            "maxProductLogN": max.map(|r| r.n),
            "maxProductLogHi": max.map(|r| r.product_log.hi_decimal(DECIMAL_DIGITS)),
            "holds": self.holds(),
        })
        .to_string()
    }
}

fn sweep_values(nmax: u64) -> Vec<u64> {
    std::iter::successors(Some(2u64), |n| n.checked_mul(2))
        .take_while(|&n| n <= nmax)
        .collect()
}

pub fn liminf_certificate(cf: &CfExpansion, p: u64, nmax: u64) -> Result<Certificate> {
    liminf_certificate_with_threads(cf, p, nmax, 1)
}

/// Same as [`liminf_certificate`], spreading the values of `N` over
/// `threads` workers. Output does not depend on `threads`.
pub fn liminf_certificate_with_threads(
    cf: &CfExpansion,
    p: u64,
    nmax: u64,
    threads: usize,
) -> Result<Certificate> {
    if nmax < 2 {
        return Err(Error::OutOfRange("Nmax must be at least 2".into()));
    }
    let pipeline = Pipeline::new(cf, p, DEFAULT_BITS)?;
    let ns = sweep_values(nmax);
    let threads = threads.clamp(1, ns.len());
    let mut results: Vec<(u64, Result<WitnessRecord>)> = if threads == 1 {
        ns.iter().map(|&n| (n, pipeline.witness(n))).collect()
    } else {
        let pipeline = &pipeline;
        let ns = &ns;
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads)
                .map(|t| {
                    scope.spawn(move || {
                        ns.iter()
                            .skip(t)
                            .step_by(threads)
                            .map(|&n| (n, pipeline.witness(n)))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("sweep worker panicked"))
                .collect()
        })
    };
    results.sort_by_key(|(n, _)| *n);

    let mut records = Vec::new();
    let mut skipped = Vec::new();
    for (n, r) in results {
        match r {
            Ok(rec) => records.push(rec),
            Err(Error::BelowThreshold(_)) => skipped.push(n),
            Err(e) => return Err(e),
        }
    }
    let cert = Certificate {
        records,
        skipped,
        b: pipeline.mats.b.clone(),
        c: pipeline.c.clone(),
        bound: pipeline.bound.clone(),
    };
    if !cert.holds() {
        return Err(Error::Inconsistency("sweep exceeds 8 b^2 p log C".into()));
    }
    Ok(cert)
}

/// Minimizer of `n |n|_p ||n alpha||` (times `log n` when weighted).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForce {
    pub n: u64,
    /// `n |n|_p ||n alpha||` at the minimizer, exactly.
    pub product: QuadNum,
    /// Enclosure of the minimized quantity.
    pub value: Enclosure,
}

pub fn brute_force_inf(cf: &CfExpansion, p: u64, nmax: u64, weighted: bool) -> Result<BruteForce> {
    brute_force_inf_with_threads(cf, p, nmax, weighted, 1)
}

const BRUTE_BITS: u32 = 160;

fn product_at(alpha: &QuadNum, n: u64, p: u64) -> Result<QuadNum> {
    let nb = BigInt::from(n);
    let padic = padic_abs(&nb, p)?;
    Ok(alpha.mul_int(&nb).dist_nearest_int().mul_rat(&padic.value()).mul_int(&nb))
}

/// A scan candidate; the weighted enclosure is kept to avoid recomputing logs.
struct Candidate {
    n: u64,
    product: QuadNum,
    weighted: Option<Enclosure>,
}

impl Candidate {
    fn new(n: u64, product: QuadNum, weighted: bool) -> Candidate {
        let weighted = weighted.then(|| weighted_enclosure(&product, n, BRUTE_BITS));
        Candidate { n, product, weighted }
    }

    /// Strictly smaller than `other`; undecided ties keep `other`.
    fn beats(&self, other: &Candidate) -> bool {
        let (Some(x), Some(y)) = (&self.weighted, &other.weighted) else {
            return self.product.cmp_value(&other.product) == Ordering::Less;
        };
        if let Some(o) = x.certainly_cmp(y) {
            return o == Ordering::Less;
        }
        let mut bits = 2 * BRUTE_BITS;
        while bits <= 2048 {
            let x = weighted_enclosure(&self.product, self.n, bits);
            let y = weighted_enclosure(&other.product, other.n, bits);
            if let Some(o) = x.certainly_cmp(&y) {
                return o == Ordering::Less;
            }
            bits *= 2;
        }
        false
    }
}

fn weighted_enclosure(x: &QuadNum, n: u64, bits: u32) -> Enclosure {
    Enclosure::from_quad(x, bits + 8).mul(&Enclosure::ln_int(&BigInt::from(n), bits + 8), bits)
}

fn scan_range(
    alpha: &QuadNum,
    p: u64,
    lo: u64,
    hi: u64,
    weighted: bool,
) -> Result<Option<Candidate>> {
    let mut best: Option<Candidate> = None;
    for n in lo..=hi {
        let v = product_at(alpha, n, p)?;
        let cand = Candidate::new(n, v, weighted);
        if best.as_ref().is_none_or(|b| cand.beats(b)) {
            best = Some(cand);
        }
    }
    Ok(best)
}

/// Parallel exhaustive scan; ties go to the smaller `n`.
///
/// The weighted scan starts at `n = 2`, since `log 1 = 0` would make `n = 1`
/// a trivial minimizer.
pub fn brute_force_inf_with_threads(
    cf: &CfExpansion,
    p: u64,
    nmax: u64,
    weighted: bool,
    threads: usize,
) -> Result<BruteForce> {
    check_prime(p)?;
    let start = if weighted { 2 } else { 1 };
    if nmax < start {
        return Err(Error::OutOfRange(format!("nmax must be at least {start}")));
    }
    let alpha = cf.value();
    let total = nmax - start + 1;
    let threads = (threads.max(1) as u64).min(total);
    let chunk = total.div_ceil(threads);
    let ranges: Vec<(u64, u64)> = (0..threads)
        .map(|t| (start + t * chunk, (start + (t + 1) * chunk - 1).min(nmax)))
        .filter(|(a, b)| a <= b)
        .collect();
    let partial: Vec<Result<Option<Candidate>>> = if ranges.len() == 1 {
        vec![scan_range(&alpha, p, ranges[0].0, ranges[0].1, weighted)]
    } else {
        let alpha = &alpha;
        std::thread::scope(|scope| {
            let handles: Vec<_> = ranges
                .iter()
                .map(|&(a, b)| scope.spawn(move || scan_range(alpha, p, a, b, weighted)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("scan worker panicked"))
                .collect()
        })
    };
    let mut best: Option<Candidate> = None;
    for part in partial {
        if let Some(cand) = part? {
            if best.as_ref().is_none_or(|b| cand.beats(b)) {
                best = Some(cand);
            }
        }
    }
    let best = best.expect("nonempty range");
    let value = match best.weighted {
        Some(e) => e,
        None => Enclosure::from_quad(&best.product, BRUTE_BITS),
    };
    Ok(BruteForce {
        n: best.n,
        product: best.product,
        value,
    })
}

/// For `M_i = B^-1 A^i B`, checks `M_i^-1 M_j = M_{j-i}` for `1 <= i < j <= N`,
/// so the `M_i` span a complete subgraph of the Cayley graph.
pub fn complete_subgraph_check(mats: &PeriodMatrices, n: u64) -> Result<bool> {
    let b_inv = mats.b_mat.inverse()?;
    mats.a.require_unimodular()?;
    let len = n.to_usize().ok_or_else(|| Error::OutOfRange("N too large".into()))?;
    let mut powers = Vec::with_capacity(len + 1);
    let mut ai = Mat2Z::identity();
    for _ in 0..=len {
        powers.push(&(&b_inv * &ai) * &mats.b_mat);
        ai = &ai * &mats.a;
    }
    for i in 1..=len {
        let inv = powers[i].inverse()?;
        for j in i + 1..=len {
            if &inv * &powers[j] != powers[j - i] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn cf(pre: &[u64], per: &[u64]) -> CfExpansion {
        CfExpansion::new(pre.to_vec(), per.to_vec()).unwrap()
    }

    #[test]
    fn period_matrix_examples() {
        let m = build_period_matrices(&cf(&[], &[2]));
        assert_eq!(m.a, Mat2Z::new(0, 1, 1, 2));
        assert!(m.b_mat.is_identity());
        assert_eq!(m.b, BigInt::one());
        let m = build_period_matrices(&cf(&[1], &[2]));
        assert_eq!(m.b_mat, Mat2Z::new(0, 1, 1, 1));
        assert_eq!(m.a, Mat2Z::new(0, 1, 1, 2));
        assert_eq!(m.b, BigInt::one());
        let m = build_period_matrices(&cf(&[], &[1, 2]));
        assert_eq!(m.a, Mat2Z::new(1, 1, 2, 3));
    }

    #[test]
    fn index_examples() {
        assert_eq!(find_witness_index(&cf(&[], &[2]), 2, 16).unwrap(), 4);
        assert_eq!(find_witness_index(&cf(&[], &[2]), 2, 4).unwrap(), 1);
        assert_eq!(find_witness_index(&cf(&[], &[1]), 2, 8).unwrap(), 3);
    }

    #[test]
    fn index_is_minimal() {
        for (pre, per) in [(vec![], vec![2]), (vec![3, 1], vec![1, 4]), (vec![2], vec![5, 1, 1])] {
            let c = cf(&pre, &per);
            let qs = c.denominators(300);
            let m = build_period_matrices(&c);
            for p in [2u64, 3, 5] {
                for n in 1..=40u64 {
                    let i = find_witness_index(&c, p, n).unwrap();
                    for j in 1..=i {
                        let k = j as usize * m.s + m.r;
                        let x = &m.b_mat.a22 * &qs[k - 1] - &m.b_mat.a12 * &qs[k];
                        let ok = within_threshold(&padic_abs(&x, p).unwrap(), p, n);
                        assert_eq!(ok, j == i, "p={p} N={n} j={j}");
                    }
                }
            }
        }
    }

    #[test]
    fn witness_examples() {
        let c = cf(&[], &[2]);
        let w = make_witness(&c, 2, 16).unwrap();
        assert_eq!(w.n_n, BigInt::from(12));
        assert_eq!(w.norm_term.value(), QuadNum::new(17.into(), (-12).into(), 1.into(), 2.into()));
        // 3 (17 - 12 sqrt 2)
        let expected = QuadNum::new(51.into(), (-36).into(), 1.into(), 2.into());
        assert_eq!(w.product_exact, expected);
        assert!(w.product.lo() > &rat(883, 10000) && w.product.hi() < &rat(884, 10000));
        let w = make_witness(&c, 2, 4).unwrap();
        assert_eq!(w.n_n, BigInt::one());
        assert_eq!(w.product_exact, c.value());
        assert_eq!(w.product_log, Enclosure::exact(rat(0, 1)));
    }

    #[test]
    fn purely_periodic_witness_is_a_denominator() {
        let c = cf(&[], &[3, 1]);
        let qs = c.denominators(200);
        for n in [2u64, 8, 32] {
            let w = make_witness(&c, 3, n).unwrap();
            assert_eq!(w.n_n, qs[w.i as usize * 2 - 1]);
        }
    }

    #[test]
    fn growth_constant_examples() {
        assert_eq!(growth_constant(&cf(&[], &[2])), BigInt::from(6));
        assert_eq!(growth_constant(&cf(&[], &[1])), BigInt::from(4));
        // b = 1, q_1 = 1, a_max = 2
        assert_eq!(growth_constant(&cf(&[1], &[2])), BigInt::from(6));
        let c = cf(&[], &[2]);
        let qs = c.denominators(10);
        for n in 1..=10u32 {
            assert!(qs[n as usize - 1] <= BigInt::from(6).pow(n));
        }
    }

    #[test]
    fn sweep_examples() {
        let c = cf(&[], &[2]);
        let cert = liminf_certificate(&c, 2, 1024).unwrap();
        assert_eq!(cert.records.len(), 10);
        assert!(cert.holds());
        let bound = Enclosure::ln_int(&BigInt::from(6), 64).scale(&rat(16, 1), 64);
        assert!(cert.max_product_log().unwrap().product_log.hi() < bound.lo());
        let cert = liminf_certificate(&cf(&[], &[1]), 2, 256).unwrap();
        assert_eq!(cert.c, BigInt::from(4));
        assert!(cert.holds());
    }

    #[test]
    fn parallel_sweep_matches_serial() {
        let c = cf(&[1, 2], &[1, 3]);
        let a = liminf_certificate(&c, 3, 512).unwrap();
        let b = liminf_certificate_with_threads(&c, 3, 512, 4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn brute_force_examples() {
        let c = cf(&[], &[2]);
        let r = brute_force_inf(&c, 2, 12, false).unwrap();
        assert_eq!(r.n, 12);
        assert_eq!(r.product, QuadNum::new(51.into(), (-36).into(), 1.into(), 2.into()));
        let r = brute_force_inf(&c, 5, 1, false).unwrap();
        assert_eq!((r.n, r.product), (1, c.value()));
        let w = brute_force_inf(&c, 2, 200, true).unwrap();
        assert!(w.n >= 2);
        assert_eq!(
            w,
            brute_force_inf_with_threads(&c, 2, 200, true, 3).unwrap()
        );
    }

    #[test]
    fn brute_force_is_monotone() {
        let c = cf(&[1], &[1, 2]);
        let mut prev: Option<QuadNum> = None;
        for nmax in [1u64, 5, 20, 80, 320] {
            let r = brute_force_inf(&c, 3, nmax, false).unwrap();
            if let Some(pv) = prev {
                assert_ne!(r.product.cmp_value(&pv), Ordering::Greater);
            }
            prev = Some(r.product);
        }
    }

    #[test]
    fn complete_subgraph_examples() {
        assert!(complete_subgraph_check(&build_period_matrices(&cf(&[], &[2])), 5).unwrap());
        assert!(complete_subgraph_check(&build_period_matrices(&cf(&[], &[2])), 1).unwrap());
        assert!(complete_subgraph_check(&build_period_matrices(&cf(&[1], &[2])), 4).unwrap());
    }

    #[test]
    fn json_record_fields() {
        let w = make_witness(&cf(&[], &[2]), 2, 16).unwrap();
        let v: serde_json::Value = serde_json::from_str(&w.to_json()).unwrap();
        for key in ["N", "i", "nN", "padicNum", "padicDen", "productLo", "productHi", "productLogLo", "productLogHi"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["nN"], "12");
        assert_eq!(v["padicDen"], "4");
        assert_eq!(w.to_csv().split(',').count(), 6);
    }
}
