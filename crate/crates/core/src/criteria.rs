//! Checkers for when `f(T) + sT + b` has equidistributed factorization
//! types, and the exceptional sets of `s` that the bounds exclude.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bipoly::{
    bipoly_gcd, difference_quotient, eliminate, geometrically_irreducible, is_power_of_x_minus_y,
    strip_x_minus_y, tilde, BiPoly, Var,
};
use crate::error::{Error, Result};
use crate::gf::{gcd_u64, Elem, Embedding, Field};
use crate::unipoly::{resultant_shifted, UniPoly};

/// Largest degree accepted by [`conjecture_scan`].
pub const MAX_SCAN_DEGREE: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Hypotheses {
    pub d2f_nonzero: bool,
    pub deg_fprime_ge_1: bool,
    pub gcd_condition: bool,
    pub fprimeprime_nonzero: bool,
    pub q_coprime_2d: bool,
    pub q_coprime_d_dminus1: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub main_theorem: bool,
    pub prop_kr: bool,
    pub thm_duke: bool,
}

/// Size bounds on the exceptional sets, functions of `d` only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    #[serde(rename = "B1")]
    pub b1: u64,
    #[serde(rename = "B2")]
    pub b2: u64,
    #[serde(rename = "B")]
    pub b: u64,
    pub total: u64,
}

impl Bounds {
    pub fn for_degree(d: u64) -> Bounds {
        Bounds {
            b1: d.saturating_sub(2),
            b2: (d - 1) * d.saturating_sub(2),
            b: d * d - 2 * d,
            total: d * d - d - 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub f: UniPoly,
    pub hypotheses: Hypotheses,
    /// `gcd(tilde(f) - f'(x), tilde(f'))`, normalized.
    pub gcd: BiPoly,
    pub verdicts: Verdicts,
    pub morse: bool,
    pub affine_linearized: bool,
    pub bounds: Bounds,
    /// `d^2 - d - 1` when the main theorem applies.
    pub bad_set_bound: Option<u64>,
}

/// A locus polynomial in `S` whose roots contain an exceptional set.
#[derive(Clone, Debug)]
pub struct Locus {
    pub locus: UniPoly,
    /// Roots in the coefficient field, ascending.
    pub roots: Vec<Elem>,
    /// Distinct roots over the algebraic closure.
    pub distinct_roots: usize,
}

impl Locus {
    fn new(locus: UniPoly) -> Result<Locus> {
        Ok(Locus {
            roots: locus.roots(),
            distinct_roots: locus.distinct_root_count()?,
            locus,
        })
    }
}

#[derive(Clone, Debug)]
pub struct BadSetReport {
    pub b1: Locus,
    /// Candidates only: diagonal solutions may survive the elimination.
    pub b2: Locus,
    pub bounds: Bounds,
    pub lemma21_bad_s: Option<Vec<Elem>>,
}

impl BadSetReport {
    /// Union of the field roots of both loci, ascending.
    pub fn candidates(&self) -> Vec<Elem> {
        let mut all: Vec<Elem> = self.b1.roots.iter().chain(&self.b2.roots).copied().collect();
        all.sort();
        all.dedup();
        all
    }
}

fn degree_at_least_two(f: &UniPoly) -> Result<usize> {
    match f.degree() {
        None => Err(Error::ZeroPolynomial),
        Some(d) if d < 2 => Err(Error::DegreeTooSmall { got: d, min: 2 }),
        Some(d) => Ok(d),
    }
}

/// True iff every exponent carrying a nonzero coefficient is 0 or a power of `p`.
pub fn is_affine_linearized(f: &UniPoly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let p = f.field().characteristic() as usize;
    let power_of_p = |mut e: usize| {
        while e.is_multiple_of(p) {
            e /= p;
        }
        e == 1
    };
    Ok(f
        .coeffs()
        .iter()
        .enumerate()
        .all(|(i, c)| c.is_zero() || i == 0 || power_of_p(i)))
}

/// `f'` has `d - 1` distinct roots over the closure and the critical values
/// `f(a)` at them are pairwise distinct.
pub fn is_morse(f: &UniPoly) -> Result<bool> {
    let d = degree_at_least_two(f)?;
    let df = f.derivative();
    if df.degree() != Some(d - 1) || df.distinct_root_count()? != d - 1 {
        return Ok(false);
    }
    // Res_T(f'(T), S - f(T)) = lc * prod (S - f(a)) over the roots a of f'
    let critical = resultant_shifted(&df, &f.neg())?;
    Ok(critical.distinct_root_count()? == d - 1)
}

/// The pair `(tilde(f) - f'(x), tilde(f'))`; the second entry is zero when
/// `f'` is constant.
pub fn difference_system(f: &UniPoly) -> Result<(BiPoly, BiPoly)> {
    let df = f.derivative();
    let f1 = tilde(f)?.sub(&BiPoly::from_x(&df));
    Ok((f1, difference_quotient(&df)))
}

pub fn check_prop_kr(f: &UniPoly) -> Result<(bool, bool)> {
    let d = degree_at_least_two(f)? as u64;
    let q = f.field().size() as u64;
    let fpp = !f.derivative().derivative().is_zero();
    Ok((fpp, gcd_u64(q, 2 * d) == 1))
}

pub fn check_thm_duke(d: u64, field: &Field) -> Result<bool> {
    if d < 2 {
        return Err(Error::DegreeTooSmall { got: d as usize, min: 2 });
    }
    Ok(gcd_u64(field.size() as u64, d * (d - 1)) == 1)
}

/// Evaluates every hypothesis for a monic `f` of degree at least 2.
pub fn check_main_theorem(f: &UniPoly) -> Result<CriterionReport> {
    let d = degree_at_least_two(f)?;
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let (f1, f2) = difference_system(f)?;
    let gcd = bipoly_gcd(&f1, &f2)?;
    let (fprimeprime_nonzero, q_coprime_2d) = check_prop_kr(f)?;
    let q_coprime_d_dminus1 = check_thm_duke(d as u64, f.field())?;
    let hypotheses = Hypotheses {
        d2f_nonzero: !f.hasse(2).is_zero(),
        deg_fprime_ge_1: f.derivative().degree().is_some_and(|e| e >= 1),
        gcd_condition: is_power_of_x_minus_y(&gcd)?,
        fprimeprime_nonzero,
        q_coprime_2d,
        q_coprime_d_dminus1,
    };
    let main_theorem =
        hypotheses.d2f_nonzero && hypotheses.deg_fprime_ge_1 && hypotheses.gcd_condition;
    let bounds = Bounds::for_degree(d as u64);
    Ok(CriterionReport {
        f: f.clone(),
        hypotheses,
        gcd,
        verdicts: Verdicts {
            main_theorem,
            prop_kr: fprimeprime_nonzero && q_coprime_2d,
            thm_duke: q_coprime_d_dminus1,
        },
        morse: is_morse(f)?,
        affine_linearized: is_affine_linearized(f)?,
        bounds,
        bad_set_bound: main_theorem.then_some(bounds.total),
    })
}

/// `{-f'(a) : D^2 f(a) = 0}` as the roots of `Res_T(D^2 f(T), S + f'(T))`.
pub fn bad_set_b1(f: &UniPoly) -> Result<Locus> {
    degree_at_least_two(f)?;
    let d2 = f.hasse(2);
    if d2.is_zero() {
        return Err(Error::SecondHasseZero);
    }
    Locus::new(resultant_shifted(&d2, &f.derivative())?)
}

/// Candidate values `-f'(a)` over common zeros `(a, b)` of the difference
/// system, after removing powers of `x - y`. The locus is
/// `Res_x(r(x), S + f'(x))` with `r` the `y`-resultant of the stripped pair.
pub fn bad_set_b2(f: &UniPoly) -> Result<Locus> {
    let d = degree_at_least_two(f)?;
    let df = f.derivative();
    if df.degree().unwrap_or(0) < 1 {
        return Err(Error::DegreeTooSmall { got: df.degree().unwrap_or(0), min: 1 });
    }
    let (f1, f2) = difference_system(f)?;
    let (f1, _) = strip_x_minus_y(&f1)?;
    let (f2, _) = strip_x_minus_y(&f2)?;
    let r = eliminate(&f1, &f2, Var::Y)?;
    debug_assert!(r.degree().unwrap_or(0) <= (d - 1) * (d - 2));
    Locus::new(resultant_shifted(&r, &df)?)
}

pub fn bad_sets(f: &UniPoly) -> Result<BadSetReport> {
    let d = degree_at_least_two(f)? as u64;
    Ok(BadSetReport {
        b1: bad_set_b1(f)?,
        b2: bad_set_b2(f)?,
        bounds: Bounds::for_degree(d),
        lemma21_bad_s: None,
    })
}

/// The `s` in `search_field` for which `tilde(f) + s` is geometrically
/// reducible. `search_field` must contain the field of `f`.
pub fn bad_set_lemma21(f: &UniPoly, search_field: &Arc<Field>) -> Result<Vec<Elem>> {
    degree_at_least_two(f)?;
    if is_affine_linearized(f)? {
        return Err(Error::AffineLinearized);
    }
    let f = if f.field().same(search_field) {
        f.clone()
    } else {
        f.embed(&*Embedding::between(f.field(), search_field)?)
    };
    let t = tilde(&f)?;
    let field = search_field.clone();
    let elements: Vec<Elem> = field.elements().collect();
    let flags = elements
        .par_iter()
        .map(|&s| geometrically_irreducible(&t.add(&BiPoly::constant(&field, s))))
        .collect::<Result<Vec<bool>>>()?;
    Ok(elements
        .into_iter()
        .zip(flags)
        .filter(|(_, ok)| !ok)
        .map(|(s, _)| s)
        .collect())
}

/// The `s` in the field of `f` for which `f(T) + sT` is Morse.
pub fn morse_scan(f: &UniPoly) -> Result<Vec<Elem>> {
    degree_at_least_two(f)?;
    let field = f.field().clone();
    let elements: Vec<Elem> = field.elements().collect();
    let flags = elements
        .par_iter()
        .map(|&s| is_morse(&f.shift(s, Elem::ZERO)))
        .collect::<Result<Vec<bool>>>()?;
    Ok(elements
        .into_iter()
        .zip(flags)
        .filter(|(_, ok)| *ok)
        .map(|(s, _)| s)
        .collect())
}

#[derive(Clone, Debug)]
pub struct ScanEntry {
    pub f: UniPoly,
    pub gcd: BiPoly,
    pub gcd_is_power_of_x_minus_y: bool,
}

#[derive(Clone, Debug)]
pub struct ScanReport {
    pub field: Arc<Field>,
    pub d_max: usize,
    /// Polynomials with `f'' != 0`.
    pub scanned: u64,
    /// Polynomials with `f'' = 0`.
    pub skipped: u64,
    /// Scanned polynomials with a nonconstant gcd.
    pub counterexamples: Vec<ScanEntry>,
    /// Skipped polynomials whose gcd is nonconstant.
    pub skip_ledger: Vec<ScanEntry>,
}

/// Computes `gcd(tilde(f) - f'(x), tilde(f'))` for every monic `f` with
/// `2 <= deg f <= d_max` and sorts the nonconstant results by whether
/// `f'' != 0` holds.
pub fn conjecture_scan(field: &Arc<Field>, d_max: usize) -> Result<ScanReport> {
    if d_max > MAX_SCAN_DEGREE {
        return Err(Error::OverContract {
            what: "scan degree",
            got: d_max as u64,
            limit: MAX_SCAN_DEGREE as u64,
        });
    }
    if d_max < 2 {
        return Err(Error::DegreeTooSmall { got: d_max, min: 2 });
    }
    let q = field.size() as u64;
    let mut report = ScanReport {
        field: field.clone(),
        d_max,
        scanned: 0,
        skipped: 0,
        counterexamples: Vec::new(),
        skip_ledger: Vec::new(),
    };
    for d in 2..=d_max {
        let count = q
            .checked_pow(d as u32)
            .ok_or(Error::Overflow("number of monic polynomials"))?;
        let rows = (0..count)
            .into_par_iter()
            .map(|i| {
                let f = UniPoly::monic_from_index(field, d, i);
                let hypothesis = !f.derivative().derivative().is_zero();
                let (f1, f2) = difference_system(&f)?;
                let gcd = bipoly_gcd(&f1, &f2)?;
                if gcd.is_constant() {
                    return Ok((hypothesis, None));
                }
                let entry = ScanEntry {
                    gcd_is_power_of_x_minus_y: is_power_of_x_minus_y(&gcd)?,
                    f,
                    gcd,
                };
                Ok((hypothesis, Some(entry)))
            })
            .collect::<Result<Vec<_>>>()?;
        for (hypothesis, entry) in rows {
            if hypothesis {
                report.scanned += 1;
                report.counterexamples.extend(entry);
            } else {
                report.skipped += 1;
                report.skip_ledger.extend(entry);
            }
        }
    }
    Ok(report)
}

fn encodings(v: &[Elem]) -> Vec<u32> {
    v.iter().map(|e| e.encoding()).collect()
}

fn locus_json(l: &Locus) -> Value {
    json!({
        "locus": l.locus.to_string(),
        "coefficients": l.locus.encodings(),
        "roots": encodings(&l.roots),
        "distinct_closure_roots": l.distinct_roots,
    })
}

/// Report object with the stable keys `f`, `field`, `hypotheses`, `gcd`,
/// `verdicts`, `bounds` and `bad_s_candidates`.
pub fn report_json(report: &CriterionReport, bad: Option<&BadSetReport>) -> Value {
    let mut v = json!({
        "f": report.f.to_string(),
        "field": report.f.field().to_string(),
        "hypotheses": report.hypotheses,
        "gcd": report.gcd.to_string(),
        "verdicts": report.verdicts,
        "properties": {
            "morse": report.morse,
            "affine_linearized": report.affine_linearized,
        },
        "bounds": report.bounds,
        "bad_set_bound": report.bad_set_bound,
        "bad_s_candidates": bad.map(|b| encodings(&b.candidates())).unwrap_or_default(),
    });
    if let Some(b) = bad {
        v["B1"] = locus_json(&b.b1);
        v["B2"] = locus_json(&b.b2);
        v["B2"]["note"] = json!("candidates; diagonal solutions may be included");
        if let Some(l) = &b.lemma21_bad_s {
            v["lemma21_bad_s"] = json!(encodings(l));
        }
    }
    v
}

fn entry_json(e: &ScanEntry) -> Value {
    json!({
        "f": e.f.to_string(),
        "gcd": e.gcd.to_string(),
        "gcd_is_power_of_x_minus_y": e.gcd_is_power_of_x_minus_y,
    })
}

pub fn scan_json(r: &ScanReport) -> Value {
    json!({
        "field": r.field.to_string(),
        "d_max": r.d_max,
        "scanned": r.scanned,
        "skipped": r.skipped,
        "counterexample_count": r.counterexamples.len(),
        "counterexamples": r.counterexamples.iter().map(entry_json).collect::<Vec<_>>(),
        "skip_reason": "f'' = 0",
        "skip_ledger": r.skip_ledger.iter().map(entry_json).collect::<Vec<_>>(),
    })
}
