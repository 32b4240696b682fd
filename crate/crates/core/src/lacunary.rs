//! Nested-interval certificates for lacunary sequences.
//!
//! Given `n_1 < n_2 < ...` with `n_{k+1}/n_k >= lambda > 1`, the construction
//! produces a rational interval of points `x` with `||n_k x|| > 1/N` for every
//! covered index. Each stage looks `K` terms ahead, cuts the working
//! interval around the fractions with those denominators, and keeps a
//! subinterval of the largest surviving piece.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::arith::{format_rat, rat_dist_nearest_int, rat_floor, serde_str, Rat};
use crate::error::{Error, Result};

/// Strictly increasing positive integers with consecutive ratios `>= lambda`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LacunarySeq {
    terms: Vec<BigInt>,
    lambda: Rat,
}

impl LacunarySeq {
    pub fn new(terms: Vec<BigInt>, lambda: Rat) -> Result<LacunarySeq> {
        if lambda <= Rat::one() {
            return Err(Error::OutOfRange(format!(
                "lambda = {} must exceed 1",
                format_rat(&lambda)
            )));
        }
        if terms.is_empty() {
            return Err(Error::OutOfRange("sequence is empty".into()));
        }
        if !terms[0].is_positive() {
            return Err(Error::OutOfRange("terms must be positive".into()));
        }
        for (k, w) in terms.windows(2).enumerate() {
            if ratio(&w[1], &w[0]) < lambda {
                return Err(Error::Precondition(format!(
                    "n_{}/n_{} = {}/{} is below lambda = {}",
                    k + 2,
                    k + 1,
                    w[1],
                    w[0],
                    format_rat(&lambda)
                )));
            }
        }
        Ok(LacunarySeq { terms, lambda })
    }

    /// Builds the prefix `f(1), ..., f(len)`.
    pub fn from_fn(
        lambda: Rat,
        len: usize,
        mut f: impl FnMut(usize) -> BigInt,
    ) -> Result<LacunarySeq> {
        LacunarySeq::new((1..=len).map(&mut f).collect(), lambda)
    }

    /// `base^1, ..., base^len` with `lambda = base`.
    pub fn geometric(base: u64, len: usize) -> Result<LacunarySeq> {
        let b = BigInt::from(base);
        LacunarySeq::from_fn(Rat::from_integer(b.clone()), len, |k| b.pow(k as u32))
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }

    pub fn lambda(&self) -> &Rat {
        &self.lambda
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The term `n_k`, `k >= 1`.
    pub fn term(&self, k: usize) -> &BigInt {
        &self.terms[k - 1]
    }

    /// `lambda <= n_{k+1}/n_k < lambda (lambda + 1)` for all consecutive terms.
    pub fn is_dense(&self) -> bool {
        let cap = upper_ratio(&self.lambda);
        self.terms.windows(2).all(|w| {
            let r = ratio(&w[1], &w[0]);
            r >= self.lambda && r < cap
        })
    }
}

fn ratio(num: &BigInt, den: &BigInt) -> Rat {
    Rat::new(num.clone(), den.clone())
}

fn upper_ratio(lambda: &Rat) -> Rat {
    lambda * (lambda + Rat::one())
}

fn ceil_rat(x: &Rat) -> BigInt {
    -rat_floor(&-x)
}

/// Inserts `ceil(lambda n_k)` after `n_k` until every ratio is below
/// `lambda (lambda + 1)`. The input survives as a subsequence.
pub fn densify(seq: &LacunarySeq) -> LacunarySeq {
    let lambda = &seq.lambda;
    let cap = upper_ratio(lambda);
    let mut out: Vec<BigInt> = Vec::with_capacity(seq.len());
    for next in &seq.terms {
        while let Some(last) = out.last() {
            if ratio(next, last) < cap {
                break;
            }
            let inserted = ceil_rat(&(lambda * Rat::from_integer(last.clone())));
            out.push(inserted);
        }
        out.push(next.clone());
    }
    LacunarySeq {
        terms: out,
        lambda: lambda.clone(),
    }
}

/// Look-ahead depth `K`, interval scale `Delta` and avoidance level `N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionParams {
    pub k: usize,
    #[serde(serialize_with = "serde_str::rat")]
    pub delta: Rat,
    #[serde(serialize_with = "serde_str::bigint")]
    pub n: BigInt,
}

impl ConstructionParams {
    /// Checks, exactly:
    /// `K + 1 < lambda^K`, `Delta < (lambda(lambda+1))^-K`,
    /// `Delta (1 - (K+1) lambda^-K) > 2K/N` and `Delta < 1 - 2/N`.
    pub fn validate(&self, lambda: &Rat) -> Result<()> {
        let fail = |what: &str| Err(Error::Precondition(format!("parameters violate {what}")));
        if self.k == 0 || !self.delta.is_positive() || !self.n.is_positive() {
            return fail("positivity");
        }
        let k = Rat::from_integer(BigInt::from(self.k));
        let lk = pow_rat(lambda, self.k);
        if k.clone() + Rat::one() >= lk {
            return fail("K + 1 < lambda^K");
        }
        if self.delta >= pow_rat(&upper_ratio(lambda), self.k).recip() {
            return fail("Delta < (lambda(lambda+1))^-K");
        }
        let n = Rat::from_integer(self.n.clone());
        let slack = &self.delta * (Rat::one() - (k.clone() + Rat::one()) / &lk);
        if slack <= Rat::from_integer(2.into()) * &k / &n {
            return fail("Delta (1 - (K+1) lambda^-K) > 2K/N");
        }
        if self.delta >= Rat::one() - Rat::from_integer(2.into()) / &n {
            return fail("Delta < 1 - 2/N");
        }
        Ok(())
    }

    /// `1/N`.
    pub fn inv_n(&self) -> Rat {
        Rat::new(BigInt::one(), self.n.clone())
    }
}

fn pow_rat(x: &Rat, e: usize) -> Rat {
    Rat::new(x.numer().pow(e as u32), x.denom().pow(e as u32))
}

/// Smallest valid `K`, then `Delta` at half its bound, then the smallest `N`.
pub fn choose_params(lambda: &Rat) -> Result<ConstructionParams> {
    if *lambda <= Rat::one() {
        return Err(Error::OutOfRange(format!(
            "lambda = {} must exceed 1",
            format_rat(lambda)
        )));
    }
    let mut k = 1usize;
    while Rat::from_integer(BigInt::from(k + 1)) >= pow_rat(lambda, k) {
        k += 1;
    }
    let kr = Rat::from_integer(BigInt::from(k));
    let delta = pow_rat(&upper_ratio(lambda), k).recip() / Rat::from_integer(2.into());
    let slack = &delta * (Rat::one() - (kr.clone() + Rat::one()) / pow_rat(lambda, k));
    // N > 2K / slack and N > 2 / (1 - Delta)
    let n1: BigInt = rat_floor(&(Rat::from_integer(2.into()) * &kr / &slack)) + 1;
    let n2 = rat_floor(&(Rat::from_integer(2.into()) / (Rat::one() - &delta))) + 1;
    let params = ConstructionParams {
        k,
        delta,
        n: n1.max(n2),
    };
    params.validate(lambda)?;
    Ok(params)
}

/// Open rational interval `(lo, hi)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntervalQ {
    #[serde(serialize_with = "serde_str::rat")]
    pub lo: Rat,
    #[serde(serialize_with = "serde_str::rat")]
    pub hi: Rat,
}

impl IntervalQ {
    pub fn new(lo: Rat, hi: Rat) -> Result<IntervalQ> {
        if lo >= hi {
            return Err(Error::OutOfRange(format!(
                "empty interval ({}, {})",
                format_rat(&lo),
                format_rat(&hi)
            )));
        }
        Ok(IntervalQ { lo, hi })
    }

    pub fn length(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(2.into())
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo < x && x < &self.hi
    }

    pub fn is_within(&self, outer: &IntervalQ) -> bool {
        outer.lo <= self.lo && self.hi <= outer.hi
    }
}

impl fmt::Display for IntervalQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rat(&self.lo), format_rat(&self.hi))
    }
}

/// A closed neighborhood of `c / n_t`, clipped to the working interval.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Removal {
    pub index: usize,
    #[serde(serialize_with = "serde_str::bigint")]
    pub numerator: BigInt,
    #[serde(serialize_with = "serde_str::rat")]
    pub lo: Rat,
    #[serde(serialize_with = "serde_str::rat")]
    pub hi: Rat,
}

/// One look-ahead stage.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageRecord {
    pub stage: usize,
    /// Index `s` of the denominator sizing the working interval.
    pub start_index: usize,
    #[serde(serialize_with = "serde_str::bigint")]
    pub denominator: BigInt,
    /// `floor(n_s * lo)` for the working interval.
    #[serde(serialize_with = "serde_str::bigint")]
    pub base: BigInt,
    pub working: IntervalQ,
    pub removals: Vec<Removal>,
    pub components: Vec<IntervalQ>,
    pub chosen_component: usize,
    pub next: IntervalQ,
}

impl StageRecord {
    pub const CSV_HEADER: &'static str =
        "stage,start_index,denominator,base,working_lo,working_hi,removals,component_lo,component_hi,next_lo,next_hi";

    pub fn to_csv(&self) -> String {
        let removals = self
            .removals
            .iter()
            .map(|r| format!("{}:{}:{}..{}", r.index, r.numerator, format_rat(&r.lo), format_rat(&r.hi)))
            .collect::<Vec<_>>()
            .join(";");
        let comp = &self.components[self.chosen_component];
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.stage,
            self.start_index,
            self.denominator,
            self.base,
            format_rat(&self.working.lo),
            format_rat(&self.working.hi),
            removals,
            format_rat(&comp.lo),
            format_rat(&comp.hi),
            format_rat(&self.next.lo),
            format_rat(&self.next.hi)
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("stage record serializes")
    }
}

/// Output of [`construct`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Construction {
    pub initial: IntervalQ,
    pub interval: IntervalQ,
    /// Largest index `k` with `||n_k x|| > 1/N` guaranteed on `interval`.
    pub covered: usize,
    pub trace: Vec<StageRecord>,
}

/// Runs `stages` look-ahead stages on a densified sequence.
pub fn construct(
    seq: &LacunarySeq,
    params: &ConstructionParams,
    stages: usize,
) -> Result<(IntervalQ, Vec<StageRecord>)> {
    let c = construct_full(seq, params, stages)?;
    Ok((c.interval, c.trace))
}

pub fn construct_full(
    seq: &LacunarySeq,
    params: &ConstructionParams,
    stages: usize,
) -> Result<Construction> {
    if !seq.is_dense() {
        return Err(Error::Precondition(
            "sequence ratios must lie in [lambda, lambda(lambda+1)); densify first".into(),
        ));
    }
    params.validate(&seq.lambda)?;
    let k = params.k;
    let covered = 1 + stages * k;
    if seq.len() < covered {
        return Err(Error::Precondition(format!(
            "{stages} stages need {covered} terms, sequence has {}",
            seq.len()
        )));
    }
    let inv_n = params.inv_n();
    let n1 = Rat::from_integer(seq.term(1).clone());
    // b_1 = 0, interval left-aligned inside ((b_1 + 1/N)/n_1, (b_1 + 1 - 1/N)/n_1)
    let lo = &inv_n / &n1;
    let initial = IntervalQ::new(lo.clone(), &lo + &params.delta / &n1)?;

    let lambda_k = pow_rat(&seq.lambda, k);
    let two_k = Rat::from_integer(BigInt::from(2 * k));
    let k_plus_1 = Rat::from_integer(BigInt::from(k + 1));
    let bound_star1 = (&params.delta - &two_k * &inv_n) / &k_plus_1;
    let bound_star2 = &params.delta / &lambda_k;
    if bound_star1 <= bound_star2 {
        return Err(Error::Inconsistency(
            "largest-component bound does not exceed the next interval scale".into(),
        ));
    }

    let mut current = initial.clone();
    let mut trace = Vec::with_capacity(stages);
    for stage in 0..stages {
        let s = 1 + stage * k;
        let ns = seq.term(s).clone();
        let nsr = Rat::from_integer(ns.clone());
        let radius = &inv_n / &nsr;

        let mut removals = Vec::new();
        for t in s + 1..=s + k {
            let nt = Rat::from_integer(seq.term(t).clone());
            // fractions c/n_t whose closed neighborhood meets the open interval
            let first: BigInt = rat_floor(&((&current.lo - &radius) * &nt)) + 1;
            let last: BigInt = ceil_rat(&((&current.hi + &radius) * &nt)) - 1;
            let mut found = 0;
            let mut c = first;
            while c <= last {
                let centre = Rat::new(c.clone(), seq.term(t).clone());
                let lo = (&centre - &radius).max(current.lo.clone());
                let hi = (&centre + &radius).min(current.hi.clone());
                removals.push(Removal {
                    index: t,
                    numerator: c.clone(),
                    lo,
                    hi,
                });
                found += 1;
                c += 1;
            }
            if found > 1 {
                return Err(Error::Inconsistency(format!(
                    "{found} fractions with denominator n_{t} meet the working interval"
                )));
            }
        }

        let components = complement(&current, &removals);
        let removed: Rat = removals.iter().map(|r| &r.hi - &r.lo).sum();
        let floor_measure = (&params.delta - &two_k * &inv_n) / &nsr;
        if current.length() - &removed < floor_measure {
            return Err(Error::Inconsistency(format!(
                "stage {stage}: surviving measure below (Delta - 2K/N)/n_s"
            )));
        }
        let (chosen, best) = components
            .iter()
            .enumerate()
            .fold(None::<(usize, &IntervalQ)>, |acc, (i, c)| match acc {
                Some((_, b)) if b.length() >= c.length() => acc,
                _ => Some((i, c)),
            })
            .ok_or_else(|| Error::Inconsistency(format!("stage {stage}: nothing survives")))?;
        if best.length() <= &bound_star2 / &nsr {
            return Err(Error::Inconsistency(format!(
                "stage {stage}: largest component does not exceed Delta/(lambda^K n_s)"
            )));
        }
        let next_len = &params.delta / Rat::from_integer(seq.term(s + k).clone());
        if next_len > best.length() {
            return Err(Error::Inconsistency(format!(
                "stage {stage}: next interval does not fit"
            )));
        }
        let next = IntervalQ::new(best.lo.clone(), &best.lo + &next_len)?;
        trace.push(StageRecord {
            stage,
            start_index: s,
            base: rat_floor(&(&nsr * &current.lo)),
            denominator: ns,
            working: current.clone(),
            removals,
            components: components.clone(),
            chosen_component: chosen,
            next: next.clone(),
        });
        current = next;
    }

    Ok(Construction {
        initial,
        interval: current,
        covered,
        trace,
    })
}

/// Open components of `interval` minus the closed removals.
fn complement(interval: &IntervalQ, removals: &[Removal]) -> Vec<IntervalQ> {
    let mut cuts: Vec<(&Rat, &Rat)> = removals.iter().map(|r| (&r.lo, &r.hi)).collect();
    cuts.sort();
    let mut out = Vec::new();
    let mut cursor = interval.lo.clone();
    for (lo, hi) in cuts {
        if *lo > cursor {
            out.push(IntervalQ {
                lo: cursor.clone(),
                hi: lo.clone(),
            });
        }
        if *hi > cursor {
            cursor = hi.clone();
        }
    }
    if interval.hi > cursor {
        out.push(IntervalQ {
            lo: cursor,
            hi: interval.hi.clone(),
        });
    }
    out
}

/// `min_{k <= upto} ||n_k x|| > 1/N`, exactly.
pub fn verify_avoidance(x: &Rat, seq: &LacunarySeq, upto: usize, n: &BigInt) -> bool {
    let inv_n = Rat::new(BigInt::one(), n.clone());
    seq.terms
        .iter()
        .take(upto)
        .all(|t| rat_dist_nearest_int(&(x * Rat::from_integer(t.clone()))) > inv_n)
}

/// Smallest `||n_k x||` over the first `upto` terms.
pub fn min_distance(x: &Rat, seq: &LacunarySeq, upto: usize) -> Option<Rat> {
    seq.terms
        .iter()
        .take(upto)
        .map(|t| rat_dist_nearest_int(&(x * Rat::from_integer(t.clone()))))
        .min()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn seq(v: &[i64], lambda: Rat) -> LacunarySeq {
        LacunarySeq::new(ints(v), lambda).unwrap()
    }

    #[test]
    fn sequence_validation() {
        assert!(LacunarySeq::new(ints(&[1, 2, 3]), rat(2, 1)).is_err());
        assert!(LacunarySeq::new(ints(&[1, 2]), rat(1, 1)).is_err());
        assert!(LacunarySeq::new(ints(&[0, 2]), rat(2, 1)).is_err());
        assert!(LacunarySeq::new(vec![], rat(2, 1)).is_err());
    }

    #[test]
    fn densify_examples() {
        assert_eq!(densify(&seq(&[1, 10], rat(2, 1))).terms(), ints(&[1, 2, 10]));
        assert_eq!(densify(&seq(&[1, 2, 4, 8], rat(2, 1))).terms(), ints(&[1, 2, 4, 8]));
        // 100/32 < 6 stops the insertions
        assert_eq!(
            densify(&seq(&[1, 100], rat(2, 1))).terms(),
            ints(&[1, 2, 4, 8, 16, 32, 100])
        );
    }

    #[test]
    fn densify_at_exact_cap() {
        // 6 = lambda(lambda+1) exactly: must insert to get a strict bound
        let d = densify(&seq(&[1, 6], rat(2, 1)));
        assert_eq!(d.terms(), ints(&[1, 2, 6]));
        assert!(d.is_dense());
    }

    #[test]
    fn params_examples() {
        let p = choose_params(&rat(2, 1)).unwrap();
        assert_eq!((p.k, p.delta.clone(), p.n.clone()), (2, rat(1, 72), BigInt::from(1153)));
        let p = choose_params(&rat(4, 1)).unwrap();
        assert_eq!((p.k, p.delta.clone(), p.n.clone()), (1, rat(1, 40), BigInt::from(161)));
        let p = choose_params(&rat(3, 2)).unwrap();
        assert_eq!(p.k, 4);
        assert_eq!(p.delta, rat(128, 50625));
        // slack = Delta/81 = 128/4100625 and N > 8/slack = 256289.06...
        assert_eq!(p.n, BigInt::from(256290));
    }

    #[test]
    fn params_are_minimal() {
        for lambda in [rat(3, 2), rat(2, 1), rat(3, 1), rat(4, 1), rat(11, 10)] {
            let p = choose_params(&lambda).unwrap();
            let smaller = ConstructionParams {
                n: &p.n - 1,
                ..p.clone()
            };
            assert!(smaller.validate(&lambda).is_err());
        }
    }

    #[test]
    fn validation_rejects_bad_params() {
        let good = choose_params(&rat(2, 1)).unwrap();
        let big_delta = ConstructionParams {
            delta: rat(1, 30),
            ..good.clone()
        };
        assert!(big_delta.validate(&rat(2, 1)).is_err());
        let small_k = ConstructionParams { k: 1, ..good };
        assert!(small_k.validate(&rat(2, 1)).is_err());
    }

    #[test]
    fn construction_base_of_four() {
        let s = LacunarySeq::geometric(4, 6).unwrap();
        let params = ConstructionParams {
            k: 1,
            delta: rat(1, 40),
            n: BigInt::from(161),
        };
        let (interval, trace) = construct(&s, &params, 3).unwrap();
        assert_eq!(trace.len(), 3);
        assert!(verify_avoidance(&interval.midpoint(), &s, 4, &params.n));
        assert_eq!(interval.length(), rat(1, 40) / rat(256, 1));
    }

    #[test]
    fn zero_stages_gives_initial_interval() {
        let s = LacunarySeq::geometric(4, 2).unwrap();
        let params = choose_params(&rat(4, 1)).unwrap();
        let c = construct_full(&s, &params, 0).unwrap();
        assert_eq!(c.interval, c.initial);
        assert_eq!(c.interval.length(), rat(1, 40) / rat(4, 1));
        assert_eq!(c.covered, 1);
        for x in [c.interval.midpoint(), &c.interval.lo + rat(1, 1_000_000), &c.interval.hi - rat(1, 1_000_000)] {
            assert!(verify_avoidance(&x, &s, 1, &params.n));
        }
    }

    #[test]
    fn construction_powers_of_two() {
        let s = densify(&LacunarySeq::geometric(2, 8).unwrap());
        let params = choose_params(&rat(2, 1)).unwrap();
        let c = construct_full(&s, &params, 2).unwrap();
        assert_eq!(c.covered, 5);
        assert!(verify_avoidance(&c.interval.midpoint(), &s, 5, &params.n));
    }

    #[test]
    fn construction_preconditions() {
        let sparse = seq(&[1, 100, 10000], rat(2, 1));
        let params = choose_params(&rat(2, 1)).unwrap();
        assert!(matches!(construct(&sparse, &params, 1), Err(Error::Precondition(_))));
        let short = LacunarySeq::geometric(2, 3).unwrap();
        assert!(matches!(construct(&short, &params, 2), Err(Error::Precondition(_))));
    }

    #[test]
    fn avoidance_examples() {
        let s = seq(&[2], rat(2, 1));
        assert!(verify_avoidance(&rat(1, 3), &s, 1, &BigInt::from(4)));
        assert!(!verify_avoidance(&rat(1, 2), &s, 1, &BigInt::from(10)));
    }

    #[test]
    fn trace_serializes() {
        let s = LacunarySeq::geometric(4, 3).unwrap();
        let params = choose_params(&rat(4, 1)).unwrap();
        let (_, trace) = construct(&s, &params, 2).unwrap();
        let json = trace[0].to_json();
        assert!(json.contains("\"removals\""));
        assert!(json.contains("\"denominator\":\"4\""));
        assert_eq!(trace[0].to_csv().split(',').count(), 11);
    }
}
