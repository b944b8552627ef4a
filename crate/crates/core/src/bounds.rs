//! Bound evaluation: entropy, exact ball sizes, the asymptotic rate bound
//! `R(δ) ≤ H(1/2 - √(δ(1-δ)))`, the finite certificate `|C| ≤ m·|B(r*)|`
//! and covering-radius bounds.

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::ball_spectra::{
    lambda_ball_exact, lambda_for_radius_recurrence, min_radius_for_lambda, BallEigenWitness,
};
use crate::error::{Error, Result};
use crate::lp_witness::size_factor;
use crate::numfmt::{serialize_opt_sig9, sig9};

/// Largest block length accepted by the finite bounds.
pub const MAX_BOUND_N: usize = 4096;

/// `H(x) = -x·log₂x - (1-x)·log₂(1-x)` with `H(0) = H(1) = 0`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!(
            "entropy argument {x} outside [0, 1]"
        )));
    }
    let term = |p: f64| if p == 0.0 { 0.0 } else { -p * p.log2() };
    Ok(term(x) + term(1.0 - x))
}

/// `Σ_{i ≤ r} C(n, i)` in exact arithmetic.
pub fn ball_size(n: usize, r: usize) -> Result<BigUint> {
    if r > n {
        return Err(Error::Domain(format!("radius r={r} exceeds n={n}")));
    }
    let mut total = BigUint::from(1u32);
    let mut binom = BigUint::from(1u32);
    for i in 1..=r {
        binom = binom * BigUint::from(n - i + 1) / BigUint::from(i);
        total += &binom;
    }
    Ok(total)
}

/// `log₂ x` for a positive big integer, accurate to double precision.
pub fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    let shift = bits.saturating_sub(64);
    let top = (x >> shift).iter_u64_digits().next().unwrap_or(0);
    shift as f64 + (top as f64).log2()
}

/// `H(1/2 - √(δ(1-δ)))` for `0 ≤ δ ≤ 1/2`.
pub fn first_lp_rate(delta: f64) -> Result<f64> {
    if !(0.0..=0.5).contains(&delta) {
        return Err(Error::Domain(format!("delta={delta} outside [0, 1/2]")));
    }
    let x = (0.5 - (delta * (1.0 - delta)).sqrt()).max(0.0);
    binary_entropy(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    FiniteCode,
    Rate,
    CoveringRadius,
    Comparator,
}

/// Exact integer bounds print as bare JSON integers of any length.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundValue {
    Exact(BigUint),
    Real(f64),
}

impl BoundValue {
    pub fn as_f64(&self) -> f64 {
        match self {
            BoundValue::Exact(b) => log2_big(b).exp2(),
            BoundValue::Real(x) => *x,
        }
    }
}

impl std::fmt::Display for BoundValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundValue::Exact(b) => write!(f, "{b}"),
            BoundValue::Real(x) => write!(f, "{}", sig9(*x)),
        }
    }
}

impl Serialize for BoundValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            BoundValue::Exact(b) => serde_json::value::RawValue::from_string(b.to_string())
                .map_err(serde::ser::Error::custom)?
                .serialize(s),
            BoundValue::Real(x) => crate::numfmt::serialize_sig9(x, s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub kind: BoundKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "serialize_opt_sig9"
    )]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_star: Option<usize>,
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "serialize_opt_sig9"
    )]
    pub lambda: Option<f64>,
    /// Multiplier `max(n, 2d)` in `|C| ≤ m·|B(r*)|`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factor: Option<usize>,
    pub bound: BoundValue,
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "serialize_opt_sig9"
    )]
    pub r_asymptotic: Option<f64>,
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "serialize_opt_sig9"
    )]
    pub comparator: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
}

fn check_nd(n: usize, d: usize) -> Result<()> {
    if n == 0 || n > MAX_BOUND_N {
        return Err(Error::Dimension {
            n,
            max: MAX_BOUND_N,
        });
    }
    if d == 0 || d > n {
        return Err(Error::Domain(format!("distance d={d} outside 1..={n}")));
    }
    Ok(())
}

/// Smallest ball radius meeting the premise `λ_{B(r)} ≥ n - 2d + 1`.
fn premise_radius(n: usize, d: usize) -> Result<usize> {
    let target = n as f64 - 2.0 * d as f64 + 1.0;
    if target <= 0.0 {
        Ok(0)
    } else {
        min_radius_for_lambda(n, target)
    }
}

fn certificate_id(n: usize, r: usize) -> String {
    format!("ball-witness(n={n},r={r})")
}

/// `|C| ≤ m·|B(r*)|` for every code of length `n` and minimal distance `d`,
/// with `r*` the smallest radius meeting the premise and `m = max(n, 2d)`.
pub fn finite_code_bound(n: usize, d: usize) -> Result<BoundReport> {
    check_nd(n, d)?;
    let r_star = premise_radius(n, d)?;
    let factor = size_factor(n, d);
    let bound = BigUint::from(factor) * ball_size(n, r_star)?;
    Ok(BoundReport {
        kind: BoundKind::FiniteCode,
        n: Some(n),
        d: Some(d),
        delta: None,
        r_star: Some(r_star),
        lambda: Some(lambda_ball_exact(n, r_star)?),
        factor: Some(factor),
        bound: BoundValue::Exact(bound),
        r_asymptotic: None,
        comparator: None,
        certificate: Some(certificate_id(n, r_star)),
    })
}

/// The eigenfunction witness behind a finite-code or covering report.
pub fn certificate(report: &BoundReport) -> Result<BallEigenWitness> {
    match (report.n, report.r_star) {
        (Some(n), Some(r)) => lambda_for_radius_recurrence(n, r),
        _ => Err(Error::Domain("report carries no ball certificate".into())),
    }
}

/// `(r_finite, r_asymptotic)`: the smallest radius meeting the premise and
/// `n/2 - √(d(n-d))`. The asymptotic form needs `d ≤ n/2` and is `None`
/// otherwise.
pub fn essential_covering_radius_bound(n: usize, d: usize) -> Result<(usize, Option<f64>)> {
    check_nd(n, d)?;
    let r_finite = premise_radius(n, d)?;
    let r_asymptotic = (2 * d <= n).then(|| {
        let (n, d) = (n as f64, d as f64);
        n / 2.0 - (d * (n - d)).sqrt()
    });
    Ok((r_finite, r_asymptotic))
}

/// `n/2 - √((d/2)(n - d/2))`, the classical covering-radius bound for a code
/// with dual distance `d`.
pub fn tietavainen_bound(n: usize, d: usize) -> Result<f64> {
    check_nd(n, d)?;
    let (n, h) = (n as f64, d as f64 / 2.0);
    Ok(n / 2.0 - (h * (n - h)).sqrt())
}

/// Covering-radius report with the classical bound as comparator.
pub fn covering_radius_report(n: usize, d: usize) -> Result<BoundReport> {
    let (r_finite, r_asymptotic) = essential_covering_radius_bound(n, d)?;
    Ok(BoundReport {
        kind: BoundKind::CoveringRadius,
        n: Some(n),
        d: Some(d),
        delta: None,
        r_star: Some(r_finite),
        lambda: Some(lambda_ball_exact(n, r_finite)?),
        factor: None,
        bound: BoundValue::Exact(BigUint::from(r_finite)),
        r_asymptotic,
        comparator: Some(tietavainen_bound(n, d)?),
        certificate: Some(certificate_id(n, r_finite)),
    })
}

pub fn rate_report(delta: f64) -> Result<BoundReport> {
    Ok(BoundReport {
        kind: BoundKind::Rate,
        n: None,
        d: None,
        delta: Some(delta),
        r_star: None,
        lambda: None,
        factor: None,
        bound: BoundValue::Real(first_lp_rate(delta)?),
        r_asymptotic: None,
        comparator: None,
        certificate: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateRow {
    #[serde(serialize_with = "crate::numfmt::serialize_sig9")]
    pub delta: f64,
    #[serde(serialize_with = "crate::numfmt::serialize_sig9")]
    pub rate: f64,
}

pub fn rate_table(deltas: &[f64]) -> Result<Vec<RateRow>> {
    deltas
        .iter()
        .map(|&delta| {
            Ok(RateRow {
                delta,
                rate: first_lp_rate(delta)?,
            })
        })
        .collect()
}

/// `delta,rate` CSV with a header line.
pub fn rate_table_csv(rows: &[RateRow]) -> String {
    let mut out = String::from("delta,rate\n");
    for row in rows {
        out.push_str(&format!("{},{}\n", sig9(row.delta), sig9(row.rate)));
    }
    out
}

/// `(1/n)·log₂(finite_code_bound(n, ⌊δn⌋))`.
pub fn finite_rate(n: usize, delta: f64) -> Result<f64> {
    let d = ((delta * n as f64).floor() as usize).max(1);
    let report = finite_code_bound(n, d)?;
    match &report.bound {
        BoundValue::Exact(b) => Ok(log2_big(b) / n as f64),
        BoundValue::Real(x) => Ok(x.log2() / n as f64),
    }
}
