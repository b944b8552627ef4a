//! Top adjacency eigenvalue of Hamming balls and of arbitrary subsets.
//!
//! The adjacency operator acts on weight-only (symmetric) functions as the
//! tridiagonal map `Ag(i) = i·g(i-1) + (n-i)·g(i+1)`. Restricted to the ball
//! `B(r)` this is an `(r+1)×(r+1)` matrix whose top eigenvalue is `λ_{B(r)}`.
//! Two routes compute it: Sturm bisection on the symmetrized tridiagonal,
//! and a sign-change search on the forward recurrence
//! `g(i+1) = (λ·g(i) - i·g(i-1)) / (n-i)`, which also yields a nonnegative
//! witness `f` supported on the ball with `Af ≥ λf`. A power-iteration
//! oracle handles arbitrary subsets.

use serde::Serialize;

use crate::cube_fourier::{adjacency_apply, weight, CubeFunction};
use crate::error::{Error, Result};

/// Largest `n` accepted by the profile-level routines.
pub const MAX_PROFILE_N: usize = 1 << 16;

/// Width at which the recurrence search stops.
pub const RECURRENCE_BRACKET: f64 = 1e-9;

fn check_nr(n: usize, r: usize) -> Result<()> {
    if n == 0 || n > MAX_PROFILE_N {
        return Err(Error::Dimension {
            n,
            max: MAX_PROFILE_N,
        });
    }
    if r > n {
        return Err(Error::Domain(format!("radius r={r} exceeds n={n}")));
    }
    Ok(())
}

/// A function of Hamming weight only: `g[0..=m]`, zero above `m`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetricProfile {
    n: usize,
    #[serde(serialize_with = "crate::numfmt::serialize_vec_sig9")]
    values: Vec<f64>,
}

impl SymmetricProfile {
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Dimension {
                n,
                max: MAX_PROFILE_N,
            });
        }
        if values.is_empty() || values.len() > n + 1 {
            return Err(Error::Domain(format!(
                "profile of length {} for n={n}",
                values.len()
            )));
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(SymmetricProfile { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `g(i)`, zero outside the stored range.
    pub fn value(&self, i: usize) -> f64 {
        self.values.get(i).copied().unwrap_or(0.0)
    }

    /// The adjacency operator on profiles, evaluated at weights `0..=min(m+1, n)`.
    pub fn apply_adjacency(&self) -> SymmetricProfile {
        let top = (self.values.len()).min(self.n);
        let values = (0..=top)
            .map(|i| {
                let down = if i > 0 {
                    i as f64 * self.value(i - 1)
                } else {
                    0.0
                };
                let up = if i < self.n {
                    (self.n - i) as f64 * self.value(i + 1)
                } else {
                    0.0
                };
                down + up
            })
            .collect();
        SymmetricProfile { n: self.n, values }
    }

    /// The cube function `x ↦ g(|x|)`.
    pub fn lift(&self) -> Result<CubeFunction> {
        CubeFunction::from_fn(self.n, |x| self.value(weight(x)))
    }
}

/// Certificate that `λ_{B(r)} ≥ lambda`: a profile positive on weights
/// `0..=p` (with `p ≤ r`), zero above, whose lift satisfies `Af ≥ λf`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BallEigenWitness {
    pub n: usize,
    pub r: usize,
    #[serde(serialize_with = "crate::numfmt::serialize_sig9")]
    pub lambda: f64,
    pub profile: SymmetricProfile,
    pub p: usize,
}

impl BallEigenWitness {
    /// Short identifier used by bound reports.
    pub fn id(&self) -> String {
        format!("ball-witness(n={},r={},p={})", self.n, self.r, self.p)
    }

    /// Check positivity and `Ag(i) ≥ (λ - tol)·g(i)` on the profile.
    pub fn verify_profile(&self, tol: f64) -> bool {
        let g = &self.profile;
        if self.p > self.r || g.values.len() != self.p + 1 {
            return false;
        }
        if g.values.iter().any(|v| *v <= 0.0) {
            return false;
        }
        let ag = g.apply_adjacency();
        ag.values
            .iter()
            .enumerate()
            .all(|(i, a)| *a >= (self.lambda - tol) * g.value(i))
    }

    /// Check `f ≥ 0`, `supp f ⊆ B(r)` and `Af ≥ (λ - tol)·f` at every point
    /// of the cube by direct neighbour sums.
    pub fn verify_direct(&self, tol: f64) -> Result<bool> {
        let f = self.profile.lift()?;
        let af = adjacency_apply(&f);
        Ok(f.values().iter().enumerate().all(|(x, v)| {
            *v >= 0.0 && (weight(x) <= self.r || *v == 0.0) && af.get(x) >= (self.lambda - tol) * v
        }))
    }
}

/// Vertex set of an induced subgraph of the cube.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetGraph {
    n: usize,
    members: Vec<usize>,
}

impl SubsetGraph {
    pub fn new(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        if n == 0 || n > crate::limits::HARD_MAX_N {
            return Err(Error::Dimension {
                n,
                max: crate::limits::HARD_MAX_N,
            });
        }
        let mut members: Vec<usize> = members.into_iter().collect();
        if let Some(&p) = members.iter().find(|p| **p >> n != 0) {
            return Err(Error::PointOutOfRange { point: p, n });
        }
        let before = members.len();
        members.sort_unstable();
        members.dedup();
        if members.len() != before {
            return Err(Error::Domain("subset members must be distinct".into()));
        }
        Ok(SubsetGraph { n, members })
    }

    /// The Hamming ball of radius `r` around the origin.
    pub fn ball(n: usize, r: usize) -> Result<Self> {
        check_nr(n, r)?;
        if n > crate::limits::caps().transform {
            return Err(Error::Dimension {
                n,
                max: crate::limits::caps().transform,
            });
        }
        Self::new(n, (0..1usize << n).filter(|x| weight(*x) <= r))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    fn neighbour_lists(&self) -> Vec<Vec<u32>> {
        self.members
            .iter()
            .map(|&x| {
                (0..self.n)
                    .filter_map(|i| self.members.binary_search(&(x ^ (1 << i))).ok())
                    .map(|j| j as u32)
                    .collect()
            })
            .collect()
    }
}

/// Number of eigenvalues strictly below `x` of the symmetric tridiagonal
/// matrix with zero diagonal and off-diagonal `off`.
fn sturm_count_below(off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = -x;
    if q < 0.0 {
        count += 1;
    }
    for e in off {
        let denom = if q == 0.0 {
            f64::EPSILON * (e.abs() + 1.0)
        } else {
            q
        };
        q = -x - e * e / denom;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Off-diagonal of the symmetrized ball operator: `√((i+1)(n-i))`.
fn ball_off_diagonal(n: usize, r: usize) -> Vec<f64> {
    (0..r)
        .map(|i| (((i + 1) * (n - i)) as f64).sqrt())
        .collect()
}

/// `λ_{B(r)}` by Sturm bisection on the symmetrized `(r+1)×(r+1)` operator.
///
/// The Perron vector of the ball is constant on weight levels, so the
/// top eigenvalue of the weight-level operator is the top eigenvalue of the
/// induced subgraph.
pub fn lambda_ball_exact(n: usize, r: usize) -> Result<f64> {
    check_nr(n, r)?;
    if r == 0 {
        return Ok(0.0);
    }
    let off = ball_off_diagonal(n, r);
    let size = r + 1;
    let mut lo = 0.0f64;
    let mut hi = (0..size)
        .map(|i| {
            let left = if i > 0 { off[i - 1] } else { 0.0 };
            let right = if i < r { off[i] } else { 0.0 };
            left + right
        })
        .fold(0.0, f64::max);
    for _ in 0..200 {
        if hi - lo <= 4.0 * f64::EPSILON * hi.max(1.0) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if sturm_count_below(&off, mid) == size {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Whether the recurrence value `num / (n-i)` should count as zero: the
/// numerator is below the rounding error of its two terms.
#[inline]
fn cancels(num: f64, a: f64, b: f64) -> bool {
    num.abs() <= 8.0 * f64::EPSILON * (a.abs() + b.abs())
}

/// Run the recurrence from `g(0) = 1`, `g(1) = λ/n` up to index `limit`.
/// Returns the values (when `keep` is set) and the first index whose value
/// is nonpositive, or `limit + 1` when there is none.
///
/// Without `keep` only signs are needed, so the pair `(g(i-1), g(i))` is
/// rescaled whenever it drifts towards overflow or underflow. A non-finite
/// value ends the run with no sign change.
fn run_recurrence(n: usize, lambda: f64, limit: usize, keep: bool) -> (Vec<f64>, usize) {
    let limit = limit.min(n);
    let mut values = if keep { vec![1.0] } else { Vec::new() };
    let mut first = None;
    let (mut prev, mut cur) = (0.0f64, 1.0f64);
    for i in 0..limit {
        let a = lambda * cur;
        let b = i as f64 * prev;
        let num = a - b;
        let next = if cancels(num, a, b) {
            0.0
        } else {
            num / (n - i) as f64
        };
        if !next.is_finite() {
            break;
        }
        if keep {
            values.push(next);
        }
        if first.is_none() && next <= 0.0 {
            first = Some(i + 1);
            if !keep {
                break;
            }
        }
        prev = cur;
        cur = next;
        if !keep && (cur.abs() > 1e100 || cur.abs() < 1e-100) {
            let s = cur.abs();
            prev /= s;
            cur /= s;
        }
    }
    (values, first.unwrap_or(limit + 1))
}

/// Evaluate the recurrence over all weights `0..=n` for a given `λ`.
///
/// Returns the full profile and the smallest index with `g ≤ 0`, or `n + 1`
/// if there is none. Values whose defining difference is lost in rounding
/// are set to exactly zero.
pub fn eigen_recurrence(n: usize, lambda: f64) -> Result<(SymmetricProfile, usize)> {
    check_nr(n, 0)?;
    if !(0.0..=n as f64).contains(&lambda) {
        return Err(Error::Domain(format!("lambda={lambda} outside [0, {n}]")));
    }
    let (values, first) = run_recurrence(n, lambda, n, true);
    Ok((SymmetricProfile::new(n, values)?, first))
}

/// Largest `λ` whose recurrence turns nonpositive by index `r + 1`, with the
/// truncated profile as a witness.
///
/// The predicate "first nonpositive index ≤ r+1" holds on `[0, λ*]` and
/// fails above, where `λ*` is the top root of the degree-`(r+1)` recurrence
/// polynomial, i.e. `λ_{B(r)}`. Bisection on `[0, n]` stops at width
/// [`RECURRENCE_BRACKET`] and keeps the lower end, so the witness is valid.
pub fn lambda_for_radius_recurrence(n: usize, r: usize) -> Result<BallEigenWitness> {
    check_nr(n, r)?;
    let predicate = |lambda: f64| run_recurrence(n, lambda, r + 1, false).1 <= r + 1;
    let lambda = if r == n {
        n as f64
    } else {
        let (mut lo, mut hi) = (0.0f64, n as f64);
        while hi - lo > RECURRENCE_BRACKET {
            let mid = 0.5 * (lo + hi);
            if predicate(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    };
    let (values, first) = run_recurrence(n, lambda, r + 1, true);
    let p = (first - 1).min(r).min(values.len() - 1);
    let profile = SymmetricProfile::new(n, values[..=p].to_vec())?;
    Ok(BallEigenWitness {
        n,
        r,
        lambda,
        profile,
        p,
    })
}

/// Top eigenpair of the induced subgraph by shifted power iteration.
///
/// Iterates `x ← (A + cI)x` from the all-ones vector with `c` one more than
/// the largest degree, so the shifted spectrum is positive and the iterate
/// stays nonnegative. Stops once the residual `‖Ax - ρx‖/‖x‖` of the
/// Rayleigh quotient `ρ` is at most `tol`. The eigenvector is indexed like
/// `b.members()`.
pub fn top_eigenpair_bruteforce(b: &SubsetGraph, tol: f64) -> Result<(f64, Vec<f64>)> {
    if b.is_empty() {
        return Err(Error::EmptySubset);
    }
    if b.len() > 1 << 16 {
        return Err(Error::Domain(format!(
            "subset of size {} exceeds the oracle limit 2^16",
            b.len()
        )));
    }
    let adj = b.neighbour_lists();
    let shift = adj.iter().map(Vec::len).max().unwrap_or(0) as f64 + 1.0;
    let apply = |x: &[f64], out: &mut [f64]| {
        for (o, nbrs) in out.iter_mut().zip(&adj) {
            *o = nbrs.iter().map(|j| x[*j as usize]).sum();
        }
    };

    let m = b.len();
    let mut x = vec![1.0 / (m as f64).sqrt(); m];
    let mut ax = vec![0.0; m];
    let mut rho = 0.0;
    for _ in 0..2_000_000 {
        apply(&x, &mut ax);
        let xx: f64 = x.iter().map(|v| v * v).sum();
        rho = x.iter().zip(&ax).map(|(a, b)| a * b).sum::<f64>() / xx;
        let residual = x
            .iter()
            .zip(&ax)
            .map(|(xi, ai)| (ai - rho * xi).powi(2))
            .sum::<f64>()
            .sqrt()
            / xx.sqrt();
        if residual <= tol {
            break;
        }
        let mut norm = 0.0;
        for (xi, ai) in x.iter_mut().zip(&ax) {
            *xi = ai + shift * *xi;
            norm += *xi * *xi;
        }
        let norm = norm.sqrt();
        x.iter_mut().for_each(|v| *v /= norm);
    }
    Ok((rho, x))
}

/// `λ_B` for an arbitrary subset, by the power-iteration oracle.
pub fn lambda_subset_bruteforce(b: &SubsetGraph) -> Result<f64> {
    Ok(top_eigenpair_bruteforce(b, 1e-10)?.0)
}

/// Smallest `r` with `λ_{B(r)} ≥ target - 1e-9`. Targets at or below zero
/// are met by `r = 0`.
pub fn min_radius_for_lambda(n: usize, target: f64) -> Result<usize> {
    check_nr(n, 0)?;
    if target.is_nan() || target > n as f64 {
        return Err(Error::Domain(format!(
            "no ball in n={n} has lambda >= {target}"
        )));
    }
    let ok = |r: usize| -> Result<bool> { Ok(lambda_ball_exact(n, r)? >= target - 1e-9) };
    let (mut lo, mut hi) = (0usize, n);
    if ok(0)? {
        return Ok(0);
    }
    // invariant: !ok(lo) && ok(hi)
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if ok(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// `(2√(r(n-r)) - λ_{B(r)}) / n` at `r = ⌊n/4⌋`.
pub fn quarter_radius_gap(n: usize) -> Result<f64> {
    let r = n / 4;
    let lambda = lambda_ball_exact(n, r)?;
    Ok((2.0 * ((r * (n - r)) as f64).sqrt() - lambda) / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    #[test]
    fn exact_examples() {
        assert!((lambda_ball_exact(2, 1).unwrap() - SQRT2).abs() < 1e-12);
        assert!((lambda_ball_exact(4, 2).unwrap() - 10f64.sqrt()).abs() < 1e-12);
        assert!((lambda_ball_exact(5, 5).unwrap() - 5.0).abs() < 1e-12);
        assert_eq!(lambda_ball_exact(7, 0).unwrap(), 0.0);
        assert!(lambda_ball_exact(3, 4).is_err());
    }

    #[test]
    fn recurrence_examples() {
        let (g, first) = eigen_recurrence(2, SQRT2).unwrap();
        assert!((g.value(1) - SQRT2 / 2.0).abs() < 1e-15);
        assert_eq!(g.value(2), 0.0);
        assert_eq!(first, 2);

        let (g, first) = eigen_recurrence(2, 1.5).unwrap();
        assert_eq!(g.values(), &[1.0, 0.75, 0.125]);
        assert_eq!(first, 3);

        let (g, first) = eigen_recurrence(2, 1.0).unwrap();
        assert_eq!(g.values(), &[1.0, 0.5, -0.5]);
        assert_eq!(first, 2);

        assert!(eigen_recurrence(2, 2.5).is_err());
    }

    #[test]
    fn witness_examples() {
        let w = lambda_for_radius_recurrence(2, 1).unwrap();
        assert!((w.lambda - SQRT2).abs() < 1e-8);
        assert_eq!(w.p, 1);
        assert!((w.profile.value(1) - SQRT2 / 2.0).abs() < 1e-8);

        let w = lambda_for_radius_recurrence(4, 2).unwrap();
        assert!((w.lambda - 10f64.sqrt()).abs() < 1e-8);
        assert_eq!(w.p, 2);

        for n in [1, 5, 9] {
            let w = lambda_for_radius_recurrence(n, 0).unwrap();
            assert_eq!((w.lambda, w.p), (0.0, 0));
            assert_eq!(w.profile.values(), &[1.0]);
            let full = lambda_for_radius_recurrence(n, n).unwrap();
            assert_eq!((full.lambda, full.p), (n as f64, n));
            assert!(full.verify_direct(1e-9).unwrap());
        }
    }

    #[test]
    fn witness_checks_hold() {
        for n in 1..=10 {
            for r in 0..=n {
                let w = lambda_for_radius_recurrence(n, r).unwrap();
                assert!(w.verify_profile(1e-9), "profile n={n} r={r}");
                assert!(w.verify_direct(1e-9).unwrap(), "direct n={n} r={r}");
            }
        }
    }

    #[test]
    fn bruteforce_examples() {
        let edge = SubsetGraph::new(2, [0b00, 0b01]).unwrap();
        assert!((lambda_subset_bruteforce(&edge).unwrap() - 1.0).abs() < 1e-10);
        let path = SubsetGraph::new(2, [0b00, 0b01, 0b10]).unwrap();
        assert!((lambda_subset_bruteforce(&path).unwrap() - SQRT2).abs() < 1e-9);
        let point = SubsetGraph::new(3, [5]).unwrap();
        assert_eq!(lambda_subset_bruteforce(&point).unwrap(), 0.0);
        assert_eq!(
            SubsetGraph::new(3, []).and_then(|b| lambda_subset_bruteforce(&b)),
            Err(Error::EmptySubset)
        );
        assert!(SubsetGraph::new(2, [1, 1]).is_err());
    }

    #[test]
    fn min_radius_examples() {
        assert_eq!(min_radius_for_lambda(4, 1.0).unwrap(), 1);
        assert_eq!(min_radius_for_lambda(4, 2.1).unwrap(), 2);
        assert_eq!(min_radius_for_lambda(9, 0.0).unwrap(), 0);
        assert_eq!(min_radius_for_lambda(9, -3.0).unwrap(), 0);
        assert_eq!(min_radius_for_lambda(6, 6.0).unwrap(), 6);
        assert!(min_radius_for_lambda(4, 4.5).is_err());
    }

    #[test]
    fn profile_adjacency_relation() {
        let g = SymmetricProfile::new(2, vec![1.0, 1.0, 1.0]).unwrap();
        assert_eq!(g.apply_adjacency().values(), &[2.0, 2.0, 2.0]);
        let lifted = g.lift().unwrap();
        assert_eq!(adjacency_apply(&lifted).values(), &[2.0; 4]);
    }
}
