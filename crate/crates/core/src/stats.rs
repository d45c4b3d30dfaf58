//! Factorization-type statistics over short intervals `f(T) + a_m T^m + ... + a_0`
//! compared against cycle-type probabilities in `S_d`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::rng::{keyed, mix};
use crate::unipoly::{count_irreducibles, Partition, UniPoly};

/// Largest interval size enumerated exhaustively.
pub const MAX_EXHAUSTIVE: u64 = 1 << 24;
pub const MAX_PARTITION_DEGREE: u32 = 20;
const SAMPLE_BLOCK: u64 = 4096;

/// All partitions of `d`, parts descending, in descending lexicographic order.
pub fn partitions(d: u32) -> Result<Vec<Partition>> {
    if d == 0 || d > MAX_PARTITION_DEGREE {
        return Err(Error::OverContract {
            what: "partition degree",
            got: d as u64,
            limit: MAX_PARTITION_DEGREE as u64,
        });
    }
    fn rec(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition::new(prefix.clone()).expect("positive parts"));
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            prefix.push(part);
            rec(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, &mut Vec::new(), &mut out);
    Ok(out)
}

fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `p_lambda = 1 / prod_j (j^{m_j} m_j!)`.
pub fn cycle_type_probability(lambda: &Partition) -> BigRational {
    let denom = lambda
        .multiplicities()
        .iter()
        .fold(BigUint::one(), |acc, &(j, m)| {
            acc * BigUint::from(j).pow(m) * factorial(m)
        });
    BigRational::new(BigInt::one(), BigInt::from(denom))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sampled { n: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct TypeRow {
    pub partition: Partition,
    pub count: u64,
    pub probability: BigRational,
    pub reference: BigRational,
}

impl TypeRow {
    /// `probability - reference`.
    pub fn deviation(&self) -> BigRational {
        &self.probability - &self.reference
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DistributionReport {
    pub f: UniPoly,
    pub m: u32,
    pub s: Option<Elem>,
    pub q: u64,
    pub d: usize,
    pub mode: Mode,
    /// One row per partition of `d`, in [`partitions`] order.
    pub rows: Vec<TypeRow>,
    pub total: u64,
    /// `max |P - p|` over partitions; `None` for an empty tally.
    pub max_abs_deviation: Option<BigRational>,
    /// Total-variation distance `(1/2) sum |P - p|`.
    pub tv_distance: Option<BigRational>,
    /// `sqrt(q) * max_abs_deviation`.
    pub scaled_deviation: Option<f64>,
}

fn sqrt_q(q: u64) -> f64 {
    (q as f64).sqrt()
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl DistributionReport {
    fn assemble(f: &UniPoly, m: u32, s: Option<Elem>, mode: Mode, counts: Vec<u64>) -> Result<Self> {
        let d = f.degree().expect("nonzero");
        let q = f.field().size() as u64;
        let total: u64 = counts.iter().sum();
        let rows: Vec<TypeRow> = partitions(d as u32)?
            .into_iter()
            .zip(counts)
            .map(|(partition, count)| TypeRow {
                probability: if total == 0 {
                    BigRational::zero()
                } else {
                    BigRational::new(count.into(), total.into())
                },
                reference: cycle_type_probability(&partition),
                partition,
                count,
            })
            .collect();
        let (max_abs_deviation, tv_distance) = if total == 0 {
            (None, None)
        } else {
            let devs: Vec<BigRational> = rows.iter().map(|r| r.deviation().abs()).collect();
            let max = devs.iter().max().cloned().unwrap_or_else(BigRational::zero);
            let sum = devs.iter().fold(BigRational::zero(), |a, b| a + b);
            (Some(max), Some(sum / BigInt::from(2)))
        };
        let scaled_deviation = max_abs_deviation.as_ref().map(|m| to_f64(m) * sqrt_q(q));
        Ok(DistributionReport {
            f: f.clone(),
            m,
            s,
            q,
            d,
            mode,
            rows,
            total,
            max_abs_deviation,
            tv_distance,
            scaled_deviation,
        })
    }

    pub fn count(&self, lambda: &Partition) -> u64 {
        self.rows
            .iter()
            .find(|r| &r.partition == lambda)
            .map_or(0, |r| r.count)
    }

    /// Empirical probability of being irreducible.
    pub fn irreducible_probability(&self) -> BigRational {
        self.rows[0].probability.clone()
    }

    /// `partition;count;probability;reference;deviation;scaled_deviation`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("partition;count;probability;reference;deviation;scaled_deviation\n");
        let scale = sqrt_q(self.q);
        for r in &self.rows {
            let dev = r.deviation();
            let _ = writeln!(
                out,
                "{};{};{};{};{};{:.6}",
                r.partition,
                r.count,
                r.probability,
                r.reference,
                dev,
                to_f64(&dev) * scale
            );
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let scale = sqrt_q(self.q);
        let mode = match self.mode {
            Mode::Exhaustive => json!({"kind": "exhaustive"}),
            Mode::Sampled { n, seed } => json!({"kind": "sampled", "n": n, "seed": seed}),
        };
        json!({
            "f": self.f.to_string(),
            "field": self.f.field().to_string(),
            "m": self.m,
            "s": self.s.map(|e| e.encoding()),
            "q": self.q,
            "d": self.d,
            "mode": mode,
            "total": self.total,
            "rows": self.rows.iter().map(|r| {
                let dev = r.deviation();
                json!({
                    "partition": r.partition,
                    "count": r.count,
                    "probability": r.probability.to_string(),
                    "reference": r.reference.to_string(),
                    "deviation": dev.to_string(),
                    "scaled_deviation": to_f64(&dev) * scale,
                })
            }).collect::<Vec<_>>(),
            "max_abs_deviation": self.max_abs_deviation.as_ref().map(|r| r.to_string()),
            "tv_distance": self.tv_distance.as_ref().map(|r| r.to_string()),
            "scaled_deviation": self.scaled_deviation,
        })
    }
}

/// Tallies factorization types into a vector indexed like [`partitions`].
struct Tally {
    index: HashMap<Partition, usize>,
    len: usize,
}

impl Tally {
    fn new(d: usize) -> Result<Tally> {
        let parts = partitions(d as u32)?;
        let len = parts.len();
        Ok(Tally {
            index: parts.into_iter().enumerate().map(|(i, p)| (p, i)).collect(),
            len,
        })
    }

    fn zeros(&self) -> Vec<u64> {
        vec![0; self.len]
    }

    fn add(&self, counts: &mut [u64], g: &UniPoly) {
        let t = g.factorization_type().expect("nonconstant member");
        counts[self.index[&t]] += 1;
    }

    fn merge(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        a
    }
}

fn validate(f: &UniPoly, m: u32, s: Option<Elem>) -> Result<usize> {
    let d = match f.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(d) if d < 2 => return Err(Error::DegreeTooSmall { got: d, min: 2 }),
        Some(d) => d,
    };
    if d > MAX_PARTITION_DEGREE as usize {
        return Err(Error::OverContract {
            what: "degree",
            got: d as u64,
            limit: MAX_PARTITION_DEGREE as u64,
        });
    }
    if m > 1 {
        return Err(Error::InvalidArgument("m must be 0 or 1".into()));
    }
    if m == 1 && s.is_some() {
        return Err(Error::InvalidArgument("a fixed s requires m = 0".into()));
    }
    if let Some(s) = s {
        if s.encoding() >= f.field().size() {
            return Err(Error::ElementOutOfRange(s.encoding() as u64));
        }
    }
    Ok(d)
}

fn element(i: u64) -> Elem {
    Elem(i as u32)
}

/// Factorization types across `I(f, m)`. With `m = 0` and `s` given the
/// interval is `f(T) + sT + b` over `b`.
pub fn interval_distribution(
    f: &UniPoly,
    m: u32,
    s: Option<Elem>,
    mode: Mode,
) -> Result<DistributionReport> {
    let d = validate(f, m, s)?;
    let q = f.field().size() as u64;
    let tally = Tally::new(d)?;
    let s0 = s.unwrap_or(Elem::ZERO);
    let counts = match mode {
        Mode::Exhaustive => {
            let size = q.pow(m + 1);
            if size > MAX_EXHAUSTIVE {
                return Err(Error::OverContract {
                    what: "interval size",
                    got: size,
                    limit: MAX_EXHAUSTIVE,
                });
            }
            if m == 0 {
                slice_counts(f, s0, &tally)
            } else {
                (0..q)
                    .into_par_iter()
                    .map(|a1| slice_counts(f, element(a1), &tally))
                    .reduce(|| tally.zeros(), Tally::merge)
            }
        }
        Mode::Sampled { n, seed } => {
            let blocks = n.div_ceil(SAMPLE_BLOCK);
            (0..blocks)
                .into_par_iter()
                .map(|block| {
                    let mut rng = keyed(seed, mix(f.key(), block));
                    let mut counts = tally.zeros();
                    let len = SAMPLE_BLOCK.min(n - block * SAMPLE_BLOCK);
                    for _ in 0..len {
                        let a1 = if m == 1 { element(rng.gen_range(0..q)) } else { s0 };
                        let a0 = element(rng.gen_range(0..q));
                        tally.add(&mut counts, &f.shift(a1, a0));
                    }
                    counts
                })
                .reduce(|| tally.zeros(), Tally::merge)
        }
    };
    DistributionReport::assemble(f, m, s, mode, counts)
}

/// Counts for `f + sT + b` over all `b`.
fn slice_counts(f: &UniPoly, s: Elem, tally: &Tally) -> Vec<u64> {
    let q = f.field().size() as u64;
    let mut counts = tally.zeros();
    for b in 0..q {
        tally.add(&mut counts, &f.shift(s, element(b)));
    }
    counts
}

#[derive(Clone, Debug, PartialEq)]
pub struct SliceDeviation {
    pub s: Elem,
    pub max_abs_deviation: BigRational,
    /// `sqrt(q) * max |P_s - p|`.
    pub scaled_max_deviation: f64,
    /// `sqrt(q) * |P_s(irreducible) - 1/d|`.
    pub scaled_irreducible_deviation: f64,
    pub flagged: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BadCountReport {
    pub f: UniPoly,
    pub tolerance: f64,
    pub per_s: Vec<SliceDeviation>,
    pub bad_count: usize,
    /// `d^2 - d - 1`.
    pub theorem_bound: u64,
    pub median_scaled_irreducible_deviation: f64,
}

impl BadCountReport {
    pub fn flagged(&self) -> Vec<Elem> {
        self.per_s.iter().filter(|r| r.flagged).map(|r| r.s).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "f": self.f.to_string(),
            "field": self.f.field().to_string(),
            "tolerance": self.tolerance,
            "bad_count": self.bad_count,
            "theorem_bound": self.theorem_bound,
            "within_bound": self.bad_count as u64 <= self.theorem_bound,
            "flagged_s": self.flagged().iter().map(|e| e.encoding()).collect::<Vec<_>>(),
            "median_scaled_irreducible_deviation": self.median_scaled_irreducible_deviation,
            "per_s": self.per_s.iter().map(|r| json!({
                "s": r.s.encoding(),
                "max_abs_deviation": r.max_abs_deviation.to_string(),
                "scaled_max_deviation": r.scaled_max_deviation,
                "scaled_irreducible_deviation": r.scaled_irreducible_deviation,
                "flagged": r.flagged,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("s;max_abs_deviation;scaled_max_deviation;scaled_irreducible_deviation;flagged\n");
        for r in &self.per_s {
            let _ = writeln!(
                out,
                "{};{};{:.6};{:.6};{}",
                r.s.encoding(),
                r.max_abs_deviation,
                r.scaled_max_deviation,
                r.scaled_irreducible_deviation,
                r.flagged
            );
        }
        out
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    if v.is_empty() {
        return f64::NAN;
    }
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

/// Flags each `s` whose slice `f + sT + b` deviates by more than
/// `tolerance / sqrt(q)` from the cycle-type probabilities in some type.
pub fn count_bad_s(f: &UniPoly, tolerance: f64) -> Result<BadCountReport> {
    let d = validate(f, 0, None)?;
    if !(tolerance.is_finite() && tolerance >= 0.0) {
        return Err(Error::InvalidArgument("tolerance must be finite and nonnegative".into()));
    }
    let q = f.field().size() as u64;
    if q * q > MAX_EXHAUSTIVE {
        return Err(Error::OverContract {
            what: "sweep size",
            got: q * q,
            limit: MAX_EXHAUSTIVE,
        });
    }
    let tally = Tally::new(d)?;
    let c = BigRational::from_float(tolerance).expect("finite");
    let threshold = &c * &c;
    let scale = sqrt_q(q);
    let per_s = (0..q)
        .into_par_iter()
        .map(|s| {
            let s = element(s);
            let report =
                DistributionReport::assemble(f, 0, Some(s), Mode::Exhaustive, slice_counts(f, s, &tally))?;
            let max = report.max_abs_deviation.clone().expect("nonempty slice");
            // max > C / sqrt(q)  <=>  max^2 q > C^2
            let flagged = &max * &max * BigInt::from(q) > threshold;
            let irr = (report.irreducible_probability() - &report.rows[0].reference).abs();
            Ok(SliceDeviation {
                s,
                scaled_max_deviation: to_f64(&max) * scale,
                scaled_irreducible_deviation: to_f64(&irr) * scale,
                max_abs_deviation: max,
                flagged,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let d = d as u64;
    Ok(BadCountReport {
        f: f.clone(),
        tolerance,
        bad_count: per_s.iter().filter(|r| r.flagged).count(),
        theorem_bound: d * d - d - 1,
        median_scaled_irreducible_deviation: median(
            per_s.iter().map(|r| r.scaled_irreducible_deviation).collect(),
        ),
        per_s,
    })
}

fn multichoose(n: u128, k: u32) -> BigUint {
    // C(n + k - 1, k)
    let mut acc = BigUint::one();
    for i in 0..k as u128 {
        acc = acc * BigUint::from(n + i) / BigUint::from(i + 1);
    }
    acc
}

pub const MAX_FULL_SPACE_DEGREE: u32 = 8;
pub const MAX_FULL_SPACE_FIELD: u32 = 1 << 10;

/// Exact number of monic degree-`d` polynomials of each factorization type,
/// in [`partitions`] order.
pub fn full_space_exact(d: u32, field: &Arc<Field>) -> Result<Vec<(Partition, u128)>> {
    if d == 0 || d > MAX_FULL_SPACE_DEGREE {
        return Err(Error::OverContract {
            what: "degree",
            got: d as u64,
            limit: MAX_FULL_SPACE_DEGREE as u64,
        });
    }
    if field.size() > MAX_FULL_SPACE_FIELD {
        return Err(Error::OverContract {
            what: "field size",
            got: field.size() as u64,
            limit: MAX_FULL_SPACE_FIELD as u64,
        });
    }
    let q = field.size() as u64;
    let irreducible: Vec<u128> = (1..=d)
        .map(|j| count_irreducibles(j, q))
        .collect::<Result<_>>()?;
    partitions(d)?
        .into_iter()
        .map(|lambda| {
            let count = lambda
                .multiplicities()
                .iter()
                .fold(BigUint::one(), |acc, &(j, m)| {
                    acc * multichoose(irreducible[j as usize - 1], m)
                });
            let count = count.to_u128().ok_or(Error::Overflow("type count"))?;
            Ok((lambda, count))
        })
        .collect()
}
