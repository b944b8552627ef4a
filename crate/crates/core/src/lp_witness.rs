//! Executable checks of the two inequalities behind the first linear
//! programming bound.
//!
//! * Code size: a code `C` with minimal distance `d` and a set `B` with
//!   `λ_B ≥ n - 2d + 1` satisfy `|C| ≤ n|B|`. The witness is `F = φ ∗ f`
//!   where `φ̂² = 1_C ∗ 1_C` and `f ≥ 0` is a top eigenfunction of `B`.
//! * Covering: a code `C'` with dual distance `d` and such a `B` satisfy
//!   `|∪_{z∈C'} (z + B)| ≥ 2ⁿ/n`. The witness is `F = 1_{C'} ∗ f`.
//!
//! In both cases the core claim is `𝔼F² ≤ n·𝔼²F`; every report carries the
//! intermediate quantities so a failure can be reproduced by hand.
//!
//! The spectral estimate behind that claim only gives `𝔼F² ≤ 2d·𝔼²F` when
//! `2d > n`, and both statements fail there with the factor `n` (for
//! example the code {0, 1} in n = 1 against a single point). Every check
//! therefore uses the factor `max(n, 2d)`, see [`size_factor`], which is `n`
//! throughout the regime `d ≤ n/2`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::ball_spectra::{
    lambda_ball_exact, lambda_for_radius_recurrence, top_eigenpair_bruteforce, BallEigenWitness,
    SubsetGraph,
};
use crate::codes::{
    autocorrelation, dual_distance, enumerate_linear_codes, min_distance, random_code, write_code,
    Code, MinDistance,
};
use crate::cube_fourier::{
    convolve, essential_support_size, inverse_wht, moments, weight, wht, CubeFunction,
};
use crate::error::{Error, Result};
use crate::limits;
use crate::numfmt::{serialize_opt_sig9, serialize_sig9};

/// The set `B` a check is run against.
#[derive(Debug, Clone, PartialEq)]
pub enum Neighborhood {
    /// Hamming ball of the given radius around the origin.
    Ball(usize),
    /// An explicit subset.
    Subset(SubsetGraph),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Proposition {
    /// `|C| ≤ n|B|` for a code of minimal distance `d`.
    CodeSize,
    /// `|C' + B| ≥ 2ⁿ/n` for a code of dual distance `d`.
    Covering,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    PremiseUnmet,
    /// Never produced on valid input; signals a bug.
    Violated,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropositionReport {
    pub proposition: Proposition,
    pub n: usize,
    /// Minimal distance (code size) or dual distance (covering).
    pub d: usize,
    /// Ball radius, absent for explicit subsets.
    pub r: Option<usize>,
    pub code_size: usize,
    pub set_size: usize,
    #[serde(serialize_with = "serialize_sig9")]
    pub lambda: f64,
    /// `n - 2d + 1`.
    pub premise_target: i64,
    pub premise_ok: bool,
    /// `max(n, 2d)`, see [`size_factor`].
    pub factor: usize,
    /// `𝔼F²`.
    #[serde(serialize_with = "serialize_opt_sig9")]
    pub ef2: Option<f64>,
    /// `𝔼²F`.
    #[serde(serialize_with = "serialize_opt_sig9")]
    pub ef_sq: Option<f64>,
    /// `|∪_{z∈C'} (z + B)|`, covering checks only.
    pub covered: Option<u64>,
    /// Essential support size of `F` (covering) or of `f` (code size).
    #[serde(serialize_with = "serialize_opt_sig9")]
    pub essential_support: Option<f64>,
    /// `𝔼φ²/𝔼²φ`, code-size checks only.
    #[serde(serialize_with = "serialize_opt_sig9")]
    pub phi_ratio: Option<f64>,
    #[serde(serialize_with = "serialize_sig9")]
    pub bound_lhs: f64,
    #[serde(serialize_with = "serialize_sig9")]
    pub bound_rhs: f64,
    pub verdict: Verdict,
}

/// `B` prepared for repeated use: `λ_B`, a nonnegative eigenfunction `f`
/// supported on `B` with `Af ≥ λf`, and `f̂`.
#[derive(Debug, Clone)]
pub struct PreparedSet {
    n: usize,
    radius: Option<usize>,
    members: Option<Vec<usize>>,
    size: usize,
    lambda: f64,
    f: CubeFunction,
    fhat: CubeFunction,
}

impl PreparedSet {
    pub fn new(n: usize, set: &Neighborhood) -> Result<Self> {
        match set {
            Neighborhood::Ball(r) => {
                let witness = lambda_for_radius_recurrence(n, *r)?;
                let lambda = lambda_ball_exact(n, *r)?;
                Self::from_ball_witness(&witness, lambda)
            }
            Neighborhood::Subset(b) => {
                if b.n() != n {
                    return Err(Error::DimensionMismatch {
                        left: n,
                        right: b.n(),
                    });
                }
                let (lambda, vector) = top_eigenpair_bruteforce(b, 1e-12)?;
                let mut values = vec![0.0; 1 << n];
                for (&x, v) in b.members().iter().zip(&vector) {
                    values[x] = v.max(0.0);
                }
                let f = CubeFunction::new(n, values)?;
                let fhat = wht(&f);
                Ok(PreparedSet {
                    n,
                    radius: None,
                    members: Some(b.members().to_vec()),
                    size: b.len(),
                    lambda,
                    f,
                    fhat,
                })
            }
        }
    }

    /// Ball set from a recurrence witness; `lambda` is `λ_{B(r)}`.
    pub fn from_ball_witness(w: &BallEigenWitness, lambda: f64) -> Result<Self> {
        let f = w.profile.lift()?;
        let fhat = wht(&f);
        let size = (0..1usize << w.n).filter(|x| weight(*x) <= w.r).count();
        Ok(PreparedSet {
            n: w.n,
            radius: Some(w.r),
            members: None,
            size,
            lambda,
            f,
            fhat,
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn eigenfunction(&self) -> &CubeFunction {
        &self.f
    }
}

/// A code prepared for repeated checks.
#[derive(Debug, Clone)]
pub struct PreparedCode {
    code: Code,
    min_distance: MinDistance,
    dual_distance: usize,
    /// `φ̂ = √(1_C ∗ 1_C)`.
    phi_hat: CubeFunction,
    indicator_hat: CubeFunction,
}

impl PreparedCode {
    pub fn new(code: &Code) -> Result<Self> {
        let phi_hat = autocorrelation(code)?.map(|v| v.max(0.0).sqrt());
        Ok(PreparedCode {
            code: code.clone(),
            min_distance: min_distance(code),
            dual_distance: dual_distance(code)?,
            phi_hat,
            indicator_hat: wht(&code.indicator()?),
        })
    }

    pub fn code(&self) -> &Code {
        &self.code
    }
}

/// `φ` with `φ̂ = √(1_C ∗ 1_C)`, taking the nonnegative root pointwise.
pub fn phi_from_code(c: &Code) -> Result<CubeFunction> {
    let root = autocorrelation(c)?.map(|v| v.max(0.0).sqrt());
    Ok(inverse_wht(&root))
}

/// `F = 1_{C'} ∗ f` for the lifted ball witness.
pub fn build_covering_witness(cprime: &Code, w: &BallEigenWitness) -> Result<CubeFunction> {
    if cprime.n() != w.n {
        return Err(Error::DimensionMismatch {
            left: cprime.n(),
            right: w.n,
        });
    }
    convolve(&cprime.indicator()?, &w.profile.lift()?)
}

/// Dense bitset over the points of the cube.
#[derive(Debug, Clone)]
struct CubeBitset {
    n: usize,
    words: Vec<u64>,
}

// Masks selecting, within a word, the positions whose bit `i` is clear.
const LOW_MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

impl CubeBitset {
    fn new(n: usize) -> Self {
        let words = if n >= 6 { 1 << (n - 6) } else { 1 };
        CubeBitset {
            n,
            words: vec![0; words],
        }
    }

    fn set(&mut self, x: usize) {
        self.words[x >> 6] |= 1 << (x & 63);
    }

    /// Replace the set by its radius-one neighbourhood.
    fn dilate(&mut self) {
        let mut out = self.words.clone();
        for i in 0..self.n {
            if let Some(&mask) = LOW_MASKS.get(i) {
                let shift = 1 << i;
                for (o, w) in out.iter_mut().zip(&self.words) {
                    *o |= ((w & mask) << shift) | ((w >> shift) & mask);
                }
            } else {
                let stride = 1 << (i - 6);
                for (j, o) in out.iter_mut().enumerate() {
                    *o |= self.words[j ^ stride];
                }
            }
        }
        self.words = out;
    }

    fn count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }
}

fn check_sweep(n: usize) -> Result<()> {
    let max = limits::caps().sweep;
    if n > max {
        return Err(Error::Dimension { n, max });
    }
    Ok(())
}

/// `|∪_{z∈C} (z + B(r))|` by repeated dilation of the code's bitset.
pub fn covered_count(c: &Code, r: usize) -> Result<u64> {
    check_sweep(c.n())?;
    if r > c.n() {
        return Err(Error::Domain(format!("radius r={r} exceeds n={}", c.n())));
    }
    let mut bits = CubeBitset::new(c.n());
    for &z in c.points() {
        bits.set(z);
    }
    for _ in 0..r {
        bits.dilate();
    }
    Ok(bits.count())
}

/// `|∪_{z∈C} (z + B)|` for an explicit set `B`.
pub fn covered_count_subset(c: &Code, b: &SubsetGraph) -> Result<u64> {
    check_sweep(c.n())?;
    if b.n() != c.n() {
        return Err(Error::DimensionMismatch {
            left: c.n(),
            right: b.n(),
        });
    }
    let mut bits = CubeBitset::new(c.n());
    for &z in c.points() {
        for &x in b.members() {
            bits.set(z ^ x);
        }
    }
    Ok(bits.count())
}

/// Fraction of the cube within distance `r` of the code.
pub fn covered_fraction(c: &Code, r: usize) -> Result<f64> {
    Ok(covered_count(c, r)? as f64 / (c.n() as f64).exp2())
}

/// Smallest `r` whose balls around the code cover at least a `1/n` fraction
/// of the cube.
pub fn essential_covering_radius(c: &Code) -> Result<usize> {
    let n = c.n();
    let need = 1u64 << n;
    for r in 0..=n {
        if covered_count(c, r)? * n as u64 >= need {
            return Ok(r);
        }
    }
    Ok(n)
}

/// Multiplier in `|C| ≤ m·|B|` and `|C' + B| ≥ 2ⁿ/m`: `m = max(n, 2d)`.
pub fn size_factor(n: usize, d: usize) -> usize {
    n.max(2 * d)
}

fn premise(n: usize, d: usize, lambda: f64, tol: f64) -> (i64, bool) {
    let target = n as i64 - 2 * d as i64 + 1;
    (target, lambda + tol >= target as f64)
}

/// Covering check for a prepared code and set.
pub fn covering_report(
    pc: &PreparedCode,
    set: &PreparedSet,
    tol: f64,
) -> Result<PropositionReport> {
    let n = pc.code.n();
    if set.n != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: set.n,
        });
    }
    let d = pc.dual_distance;
    let (premise_target, premise_ok) = premise(n, d, set.lambda, tol);
    let covered = match (&set.radius, &set.members) {
        (Some(r), _) => covered_count(&pc.code, *r)?,
        (None, Some(m)) => {
            covered_count_subset(&pc.code, &SubsetGraph::new(n, m.iter().copied())?)?
        }
        (None, None) => unreachable!("prepared set has a radius or members"),
    };
    let cube = 1u64 << n;
    let factor = size_factor(n, d);
    let mut report = PropositionReport {
        proposition: Proposition::Covering,
        n,
        d,
        r: set.radius,
        code_size: pc.code.len(),
        set_size: set.size,
        lambda: set.lambda,
        premise_target,
        premise_ok,
        factor,
        ef2: None,
        ef_sq: None,
        covered: Some(covered),
        essential_support: None,
        phi_ratio: None,
        bound_lhs: covered as f64,
        bound_rhs: cube as f64 / factor as f64,
        verdict: Verdict::PremiseUnmet,
    };
    if !premise_ok {
        return Ok(report);
    }
    let big_f = inverse_wht(&pc.indicator_hat.mul(&set.fhat)?);
    let (mean, second) = moments(&big_f);
    let ratio_ok = second <= (factor as f64 + tol) * mean * mean;
    let cover_ok = covered * factor as u64 >= cube;
    report.ef2 = Some(second);
    report.ef_sq = Some(mean * mean);
    report.essential_support = essential_support_size(&big_f).ok();
    report.verdict = if ratio_ok && cover_ok {
        Verdict::Holds
    } else {
        Verdict::Violated
    };
    Ok(report)
}

/// Code-size check for a prepared code and set.
pub fn code_size_report(
    pc: &PreparedCode,
    set: &PreparedSet,
    tol: f64,
) -> Result<PropositionReport> {
    let n = pc.code.n();
    if set.n != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: set.n,
        });
    }
    let d = pc.min_distance.value;
    let (premise_target, premise_ok) = premise(n, d, set.lambda, tol);
    let size = pc.code.len();
    let factor = size_factor(n, d);
    let mut report = PropositionReport {
        proposition: Proposition::CodeSize,
        n,
        d,
        r: set.radius,
        code_size: size,
        set_size: set.size,
        lambda: set.lambda,
        premise_target,
        premise_ok,
        factor,
        ef2: None,
        ef_sq: None,
        covered: None,
        essential_support: None,
        phi_ratio: None,
        bound_lhs: size as f64,
        bound_rhs: (factor * set.size) as f64,
        verdict: Verdict::PremiseUnmet,
    };
    if !premise_ok {
        return Ok(report);
    }
    let phi = inverse_wht(&pc.phi_hat);
    let (phi_mean, phi_second) = moments(&phi);
    let phi_ratio = phi_second / (phi_mean * phi_mean);

    let big_f = inverse_wht(&pc.phi_hat.mul(&set.fhat)?);
    let (mean, second) = moments(&big_f);
    let ess_f = essential_support_size(&set.f)?;

    let scale = size as f64;
    let ratio_ok = second <= (factor as f64 + tol) * mean * mean;
    let phi_ok = (phi_ratio - scale).abs() <= tol * scale.max(1.0);
    let chain_ok =
        set.size as f64 + tol >= ess_f && ess_f + tol * scale.max(1.0) >= phi_ratio / factor as f64;
    let headline_ok = size <= factor * set.size;

    report.ef2 = Some(second);
    report.ef_sq = Some(mean * mean);
    report.essential_support = Some(ess_f);
    report.phi_ratio = Some(phi_ratio);
    report.verdict = if ratio_ok && phi_ok && chain_ok && headline_ok {
        Verdict::Holds
    } else {
        Verdict::Violated
    };
    Ok(report)
}

/// Covering check: `C'` against `B`, premise `λ_B ≥ n - 2d + 1` with `d` the
/// dual distance of `C'`.
pub fn check_covering(cprime: &Code, set: &Neighborhood, tol: f64) -> Result<PropositionReport> {
    let pc = PreparedCode::new(cprime)?;
    covering_report(&pc, &PreparedSet::new(cprime.n(), set)?, tol)
}

/// Code-size check: `C` against `B`, premise `λ_B ≥ n - 2d + 1` with `d` the
/// minimal distance of `C`.
pub fn check_prop_ineq(c: &Code, set: &Neighborhood, tol: f64) -> Result<PropositionReport> {
    let pc = PreparedCode::new(c)?;
    code_size_report(&pc, &PreparedSet::new(c.n(), set)?, tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyMode {
    AllLinear,
    RandomGeneral,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifySummary {
    pub n: usize,
    pub mode: FamilyMode,
    pub trials: usize,
    pub seed: u64,
    pub codes: usize,
    pub checks: usize,
    pub holds: usize,
    pub premise_unmet: usize,
    pub violations: usize,
}

/// Everything needed to reproduce a violated check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ViolationDump {
    pub code: String,
    pub report: PropositionReport,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Library(#[from] Error),
    #[error("violated check on n={}: {:?}", .0.report.n, .0.report.proposition)]
    Violation(Box<ViolationDump>),
}

pub const ALL_LINEAR_MAX_N: usize = 7;
pub const RANDOM_GENERAL_MAX_N: usize = 12;

/// Seeded code parameters for trial `t` of a random-general run.
fn random_trial(n: usize, seed: u64, t: usize) -> Result<Code> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(t as u64);
    let min_d = rng.gen_range(1..=n);
    random_code(n, min_d, rng.gen())
}

/// Run both checks against every ball radius over a family of codes.
///
/// `all-linear` takes every subspace of dimension `1..=n` (n ≤ 7);
/// `random-general` takes `trials` seeded greedy codes with random minimal
/// distance (n ≤ 12). Work fans out over `threads` workers; results are
/// merged in family order, so the summary and the reported violation (the
/// first in that order) do not depend on the thread count.
pub fn exhaustive_verify(
    n: usize,
    mode: FamilyMode,
    trials: usize,
    seed: u64,
    tol: f64,
    threads: usize,
) -> std::result::Result<VerifySummary, VerifyError> {
    let max = match mode {
        FamilyMode::AllLinear => ALL_LINEAR_MAX_N,
        FamilyMode::RandomGeneral => RANDOM_GENERAL_MAX_N,
    };
    if n == 0 || n > max {
        return Err(Error::Dimension { n, max }.into());
    }
    let family: Vec<Code> = match mode {
        FamilyMode::AllLinear => {
            let mut out = Vec::new();
            for k in 1..=n {
                for lin in enumerate_linear_codes(n, k)? {
                    out.push(lin.to_code()?);
                }
            }
            out
        }
        FamilyMode::RandomGeneral => (0..trials)
            .map(|t| random_trial(n, seed, t))
            .collect::<Result<_>>()?,
    };
    let sets: Vec<PreparedSet> = (0..=n)
        .map(|r| PreparedSet::new(n, &Neighborhood::Ball(r)))
        .collect::<Result<_>>()?;

    let run_one = |code: &Code| -> Result<Vec<PropositionReport>> {
        let pc = PreparedCode::new(code)?;
        let mut reports = Vec::with_capacity(2 * sets.len());
        for set in &sets {
            reports.push(code_size_report(&pc, set, tol)?);
            reports.push(covering_report(&pc, set, tol)?);
        }
        Ok(reports)
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Domain(format!("thread pool: {e}")))?;
    let results: Vec<Result<Vec<PropositionReport>>> =
        pool.install(|| family.par_iter().map(run_one).collect());

    let mut summary = VerifySummary {
        n,
        mode,
        trials: match mode {
            FamilyMode::AllLinear => 0,
            FamilyMode::RandomGeneral => trials,
        },
        seed,
        codes: family.len(),
        checks: 0,
        holds: 0,
        premise_unmet: 0,
        violations: 0,
    };
    for (code, reports) in family.iter().zip(results) {
        for report in reports? {
            summary.checks += 1;
            match report.verdict {
                Verdict::Holds => summary.holds += 1,
                Verdict::PremiseUnmet => summary.premise_unmet += 1,
                Verdict::Violated => {
                    return Err(VerifyError::Violation(Box::new(ViolationDump {
                        code: write_code(code),
                        report,
                    })));
                }
            }
        }
    }
    Ok(summary)
}
