//! Binary codes: representation, minimal and dual distance, distance
//! distributions and random test codes.

mod io;
mod linear;

pub use io::{parse_code, write_code};
pub use linear::{dual_code, enumerate_linear_codes, LinearCode};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cube_fourier::{weight, CubeFunction, IntCubeFunction};
use crate::error::{Error, Result};
use crate::limits::HARD_MAX_N;

/// A nonempty set of points of {0,1}ⁿ, kept sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Code {
    n: usize,
    points: Vec<usize>,
}

impl Code {
    pub fn new(n: usize, points: impl IntoIterator<Item = usize>) -> Result<Self> {
        if n == 0 || n > HARD_MAX_N {
            return Err(Error::Dimension { n, max: HARD_MAX_N });
        }
        let mut points: Vec<usize> = points.into_iter().collect();
        if let Some(&p) = points.iter().find(|p| **p >> n != 0) {
            return Err(Error::PointOutOfRange { point: p, n });
        }
        points.sort_unstable();
        points.dedup();
        if points.is_empty() {
            return Err(Error::EmptyCode);
        }
        Ok(Code { n, points })
    }

    pub fn whole_cube(n: usize) -> Result<Self> {
        Self::new(n, 0..1usize << n.min(HARD_MAX_N))
    }

    /// The repetition code {0ⁿ, 1ⁿ}.
    pub fn repetition(n: usize) -> Result<Self> {
        Self::new(n, [0, (1usize << n.min(HARD_MAX_N)) - 1])
    }

    /// All words of even weight.
    pub fn even_weight(n: usize) -> Result<Self> {
        Self::new(
            n,
            (0..1usize << n.min(HARD_MAX_N)).filter(|x| weight(*x).is_multiple_of(2)),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.points.binary_search(&x).is_ok()
    }

    pub fn indicator(&self) -> Result<CubeFunction> {
        CubeFunction::indicator(self.n, &self.points)
    }

    pub fn int_indicator(&self) -> Result<IntCubeFunction> {
        IntCubeFunction::indicator(self.n, &self.points)
    }
}

/// Minimal distance of a code. Singletons have no pairs; they report `n + 1`
/// with `singleton` set so callers can refuse to use the value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinDistance {
    pub value: usize,
    pub singleton: bool,
}

/// Minimal distance by the pairwise XOR/popcount loop.
pub fn min_distance(c: &Code) -> MinDistance {
    if c.len() < 2 {
        return MinDistance {
            value: c.n + 1,
            singleton: true,
        };
    }
    let mut best = c.n;
    for (i, &x) in c.points.iter().enumerate() {
        for &y in &c.points[i + 1..] {
            best = best.min(weight(x ^ y));
            if best == 1 {
                return MinDistance {
                    value: 1,
                    singleton: false,
                };
            }
        }
    }
    MinDistance {
        value: best,
        singleton: false,
    }
}

/// Minimal distance read off the autocorrelation: the smallest weight
/// `|x| > 0` where `1_C ∗ 1_C` is nonzero.
pub fn min_distance_via_autocorrelation(c: &Code) -> Result<MinDistance> {
    let counts = pair_counts(c)?;
    let first = (1..=c.n).find(|&w| {
        counts
            .values()
            .iter()
            .enumerate()
            .any(|(x, v)| *v != 0 && weight(x) == w)
    });
    Ok(match first {
        Some(value) => MinDistance {
            value,
            singleton: false,
        },
        None => MinDistance {
            value: c.n + 1,
            singleton: true,
        },
    })
}

/// `count(x) = #{y ∈ C : x ⊕ y ∈ C}` in exact arithmetic, i.e.
/// `2ⁿ · (1_C ∗ 1_C)(x)`.
pub fn pair_counts(c: &Code) -> Result<IntCubeFunction> {
    let t = c.int_indicator()?.unnormalized_transform();
    let squared: Vec<i64> = t.values().iter().map(|v| v * v).collect();
    let back = IntCubeFunction::new(c.n, squared)?.unnormalized_transform();
    let values = back.values().iter().map(|v| v >> c.n).collect();
    IntCubeFunction::new(c.n, values)
}

/// `1_C ∗ 1_C`, nonnegative with value `|C|/2ⁿ` at the origin.
pub fn autocorrelation(c: &Code) -> Result<CubeFunction> {
    let counts = pair_counts(c)?;
    let scale = (-(c.n as f64)).exp2();
    CubeFunction::new(
        c.n,
        counts.values().iter().map(|v| *v as f64 * scale).collect(),
    )
}

/// Dual distance: the largest `d` such that the transform of `1_C` vanishes
/// at every `0 < |S| < d`, tested exactly on the integer transform. Returns
/// `n + 1` when it vanishes at every nonzero `S` (the whole cube).
pub fn dual_distance(c: &Code) -> Result<usize> {
    let t = c.int_indicator()?.unnormalized_transform();
    let mut first = c.n + 1;
    for (s, v) in t.values().iter().enumerate().skip(1) {
        if *v != 0 {
            first = first.min(weight(s));
        }
    }
    Ok(first)
}

/// `a[w]` = ordered codeword pairs at distance `w`, divided by `|C|`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceDistribution {
    pub n: usize,
    pub counts: Vec<f64>,
}

pub fn distance_distribution(c: &Code) -> Result<DistanceDistribution> {
    let pairs = pair_counts(c)?;
    let mut by_weight = vec![0i64; c.n + 1];
    for (x, v) in pairs.values().iter().enumerate() {
        by_weight[weight(x)] += v;
    }
    let size = c.len() as f64;
    Ok(DistanceDistribution {
        n: c.n,
        counts: by_weight.into_iter().map(|v| v as f64 / size).collect(),
    })
}

/// Greedy code with pairwise distance at least `min_d`, maximal by inclusion.
///
/// Points are visited in a seeded random order; each accepted point blocks
/// its radius `min_d - 1` ball.
pub fn random_code(n: usize, min_d: usize, seed: u64) -> Result<Code> {
    if n == 0 || n > crate::limits::caps().sweep {
        return Err(Error::Dimension {
            n,
            max: crate::limits::caps().sweep,
        });
    }
    if min_d == 0 || min_d > n + 1 {
        return Err(Error::Domain(format!("min_d={min_d} for n={n}")));
    }
    let size = 1usize << n;
    let mut order: Vec<usize> = (0..size).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    order.shuffle(&mut rng);

    let offsets: Vec<usize> = (0..size).filter(|x| weight(*x) < min_d).collect();
    let mut blocked = vec![false; size];
    let mut chosen = Vec::new();
    for z in order {
        if blocked[z] {
            continue;
        }
        chosen.push(z);
        for &o in &offsets {
            blocked[z ^ o] = true;
        }
    }
    Code::new(n, chosen)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hamming74() -> Code {
        LinearCode::from_generators(7, &[0b1000110, 0b0100101, 0b0010011, 0b0001111])
            .unwrap()
            .to_code()
            .unwrap()
    }

    #[test]
    fn min_distance_examples() {
        let rep = Code::repetition(5).unwrap();
        assert_eq!(min_distance(&rep).value, 5);
        let even = Code::even_weight(4).unwrap();
        assert_eq!(even.len(), 8);
        assert_eq!(min_distance(&even).value, 2);
        let h = hamming74();
        assert_eq!(h.len(), 16);
        assert_eq!(min_distance(&h).value, 3);
        for c in [rep, even, h] {
            assert_eq!(
                min_distance(&c),
                min_distance_via_autocorrelation(&c).unwrap()
            );
        }
    }

    #[test]
    fn singleton_distance_is_flagged() {
        let c = Code::new(4, [5]).unwrap();
        let d = min_distance(&c);
        assert_eq!(
            d,
            MinDistance {
                value: 5,
                singleton: true
            }
        );
        assert_eq!(min_distance_via_autocorrelation(&c).unwrap(), d);
    }

    #[test]
    fn autocorrelation_examples() {
        let c = Code::new(2, [0b00, 0b11]).unwrap();
        assert_eq!(autocorrelation(&c).unwrap().values(), &[0.5, 0.0, 0.0, 0.5]);
        let full = Code::whole_cube(3).unwrap();
        assert!(autocorrelation(&full)
            .unwrap()
            .values()
            .iter()
            .all(|v| *v == 1.0));
        let h = hamming74();
        let a = autocorrelation(&h).unwrap();
        assert_eq!(a.get(0), 16.0 / 128.0);
        for x in 1..128 {
            if weight(x) < 3 {
                assert_eq!(a.get(x), 0.0);
            }
        }
    }

    #[test]
    fn dual_distance_examples() {
        assert_eq!(dual_distance(&Code::even_weight(4).unwrap()).unwrap(), 4);
        assert_eq!(dual_distance(&Code::new(3, [0]).unwrap()).unwrap(), 1);
        assert_eq!(dual_distance(&Code::whole_cube(3).unwrap()).unwrap(), 4);
        assert_eq!(dual_distance(&Code::repetition(4).unwrap()).unwrap(), 2);
    }

    #[test]
    fn distance_distribution_examples() {
        let c = Code::new(2, [0b00, 0b11]).unwrap();
        assert_eq!(
            distance_distribution(&c).unwrap().counts,
            vec![1.0, 0.0, 1.0]
        );
        // weights of the even-weight code: 1 + 6 + 1
        let even = Code::even_weight(4).unwrap();
        let a = distance_distribution(&even).unwrap().counts;
        assert_eq!(a, vec![1.0, 0.0, 6.0, 0.0, 1.0]);
        assert_eq!(a.iter().sum::<f64>(), 8.0);
    }

    #[test]
    fn random_code_examples() {
        let c = random_code(4, 5, 1).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(random_code(5, 1, 9).unwrap(), Code::whole_cube(5).unwrap());
        for seed in 0..50 {
            let c = random_code(5, 3, seed).unwrap();
            assert!((2..=4).contains(&c.len()), "seed {seed}: {}", c.len());
            assert!(min_distance(&c).value >= 3);
        }
        assert_eq!(
            random_code(8, 3, 42).unwrap(),
            random_code(8, 3, 42).unwrap()
        );
        assert!(random_code(4, 0, 0).is_err());
    }

    #[test]
    fn code_construction() {
        let c = Code::new(3, [5, 1, 5, 0]).unwrap();
        assert_eq!(c.points(), &[0, 1, 5]);
        assert_eq!(Code::new(3, []), Err(Error::EmptyCode));
        assert!(matches!(
            Code::new(3, [8]),
            Err(Error::PointOutOfRange { .. })
        ));
    }
}
