//! Functions on the Hamming cube {0,1}ⁿ and their Fourier transforms.
//!
//! A point of the cube is a bitmask `x < 2ⁿ`; a character is indexed by a
//! bitmask `S` and evaluates to `(-1)^{popcount(x & S)}`. The forward
//! transform carries the `2⁻ⁿ` factor, so `f̂(S) = ⟨f, W_S⟩ = 𝔼 f·W_S`, and
//! the inverse carries none. Convolution is `(f ∗ g)(x) = 𝔼_y f(y) g(x ⊕ y)`,
//! which makes `(f ∗ g)^ = f̂ · ĝ` and `Af = f ∗ L` where `L = 2ⁿ·1_{|x|=1}`.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::limits;

/// Hamming weight of a cube point.
#[inline]
pub fn weight(x: usize) -> usize {
    x.count_ones() as usize
}

fn check_dim(n: usize) -> Result<()> {
    let max = limits::caps().transform;
    if n == 0 || n > max {
        return Err(Error::Dimension { n, max });
    }
    Ok(())
}

/// Real-valued function on {0,1}ⁿ stored densely.
#[derive(Debug, Clone, PartialEq)]
pub struct CubeFunction {
    n: usize,
    values: Vec<f64>,
}

impl CubeFunction {
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        check_dim(n)?;
        let expected = 1usize << n;
        if values.len() != expected {
            return Err(Error::Length {
                n,
                expected,
                got: values.len(),
            });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(CubeFunction { n, values })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::constant(n, 0.0)
    }

    pub fn constant(n: usize, c: f64) -> Result<Self> {
        check_dim(n)?;
        Self::new(n, vec![c; 1 << n])
    }

    /// `c` at `point`, zero elsewhere.
    pub fn delta(n: usize, point: usize, c: f64) -> Result<Self> {
        let mut f = Self::zeros(n)?;
        if point >= f.len() {
            return Err(Error::PointOutOfRange { point, n });
        }
        f.values[point] = c;
        Ok(f)
    }

    /// Indicator function of a set of points.
    pub fn indicator(n: usize, points: &[usize]) -> Result<Self> {
        let mut f = Self::zeros(n)?;
        for &p in points {
            if p >= f.len() {
                return Err(Error::PointOutOfRange { point: p, n });
            }
            f.values[p] = 1.0;
        }
        Ok(f)
    }

    pub fn from_fn(n: usize, mut g: impl FnMut(usize) -> f64) -> Result<Self> {
        check_dim(n)?;
        Self::new(n, (0..1usize << n).map(&mut g).collect())
    }

    /// The character `W_S(x) = (-1)^{⟨x,S⟩}`.
    pub fn character(n: usize, s: usize) -> Result<Self> {
        check_dim(n)?;
        if s >> n != 0 {
            return Err(Error::PointOutOfRange { point: s, n });
        }
        Self::from_fn(n, |x| {
            if weight(x & s).is_multiple_of(2) {
                1.0
            } else {
                -1.0
            }
        })
    }

    /// `L = 2ⁿ` on weight-one points, so that `Af = f ∗ L`.
    pub fn adjacency_kernel(n: usize) -> Result<Self> {
        check_dim(n)?;
        let scale = (n as f64).exp2();
        Self::from_fn(n, |x| if weight(x) == 1 { scale } else { 0.0 })
    }

    // Results of arithmetic on valid functions; finiteness is the caller's contract.
    pub(crate) fn from_raw(n: usize, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), 1 << n);
        CubeFunction { n, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn get(&self, x: usize) -> f64 {
        self.values[x]
    }

    /// Number of entries that are not exactly zero.
    pub fn support_size(&self) -> usize {
        self.values.iter().filter(|v| **v != 0.0).count()
    }

    pub fn map(&self, g: impl Fn(f64) -> f64) -> Self {
        CubeFunction::from_raw(self.n, self.values.iter().map(|v| g(*v)).collect())
    }

    pub fn scale(&self, c: f64) -> Self {
        self.map(|v| v * c)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        same_dim(self, other)?;
        Ok(CubeFunction::from_raw(
            self.n,
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        same_dim(self, other)?;
        Ok(CubeFunction::from_raw(
            self.n,
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        same_dim(self, other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Text form: one `index value` line per point.
    pub fn write_text<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "n={}", self.n)?;
        for (i, v) in self.values.iter().enumerate() {
            writeln!(w, "{i} {v:e}")?;
        }
        Ok(())
    }

    /// Parse the text form. A missing `n=` header is inferred from the line count.
    pub fn read_text<R: BufRead>(r: R) -> Result<Self> {
        let mut n = None;
        let mut entries = Vec::new();
        for (lineno, line) in r.lines().enumerate() {
            let line = line?;
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |msg: &str| Error::Parse {
                line: lineno + 1,
                msg: msg.to_string(),
            };
            if let Some(rest) = line.strip_prefix("n=") {
                n = Some(
                    rest.trim()
                        .parse::<usize>()
                        .map_err(|_| parse_err("bad n header"))?,
                );
                continue;
            }
            let mut parts = line.split_whitespace();
            let (Some(i), Some(v), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(parse_err("expected `index value`"));
            };
            let i = i.parse::<usize>().map_err(|_| parse_err("bad index"))?;
            let v = v.parse::<f64>().map_err(|_| parse_err("bad value"))?;
            entries.push((i, v, lineno + 1));
        }
        let n = match n {
            Some(n) => n,
            None => {
                let len = entries.len();
                if !len.is_power_of_two() || len < 2 {
                    return Err(Error::Parse {
                        line: 0,
                        msg: format!("{len} entries is not 2^n for n >= 1"),
                    });
                }
                len.trailing_zeros() as usize
            }
        };
        check_dim(n)?;
        let mut values = vec![0.0; 1 << n];
        let mut seen = vec![false; 1 << n];
        for (i, v, line) in entries {
            if i >= values.len() || seen[i] {
                return Err(Error::Parse {
                    line,
                    msg: format!("index {i} out of range or repeated"),
                });
            }
            seen[i] = true;
            values[i] = v;
        }
        Self::new(n, values)
    }

    const MAGIC: &'static [u8; 4] = b"CUBF";

    /// Binary form: `CUBF`, n as u32 LE, then 2ⁿ f64 LE.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 + 8 * self.values.len());
        out.extend_from_slice(Self::MAGIC);
        out.extend_from_slice(&(self.n as u32).to_le_bytes());
        for v in &self.values {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let bad = |msg: &str| Error::Parse {
            line: 0,
            msg: msg.to_string(),
        };
        if bytes.len() < 8 || &bytes[..4] != Self::MAGIC {
            return Err(bad("missing CUBF header"));
        }
        let n = u32::from_le_bytes(bytes[4..8].try_into().unwrap()) as usize;
        check_dim(n)?;
        let body = &bytes[8..];
        if body.len() != 8 << n {
            return Err(bad("payload length does not match n"));
        }
        let values = body
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        Self::new(n, values)
    }

    /// True when `bytes` starts with the binary magic.
    pub fn is_binary(bytes: &[u8]) -> bool {
        bytes.starts_with(Self::MAGIC)
    }
}

fn same_dim(f: &CubeFunction, g: &CubeFunction) -> Result<()> {
    if f.n != g.n {
        return Err(Error::DimensionMismatch {
            left: f.n,
            right: g.n,
        });
    }
    Ok(())
}

/// Exact integer carrier, used for unnormalized transforms of 0/1 functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntCubeFunction {
    n: usize,
    values: Vec<i64>,
}

impl IntCubeFunction {
    pub fn new(n: usize, values: Vec<i64>) -> Result<Self> {
        check_dim(n)?;
        let expected = 1usize << n;
        if values.len() != expected {
            return Err(Error::Length {
                n,
                expected,
                got: values.len(),
            });
        }
        Ok(IntCubeFunction { n, values })
    }

    pub fn indicator(n: usize, points: &[usize]) -> Result<Self> {
        check_dim(n)?;
        let mut values = vec![0i64; 1 << n];
        for &p in points {
            if p >= values.len() {
                return Err(Error::PointOutOfRange { point: p, n });
            }
            values[p] = 1;
        }
        Ok(IntCubeFunction { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn get(&self, x: usize) -> i64 {
        self.values[x]
    }

    /// `Σ_x f(x)(-1)^{⟨x,S⟩}`, i.e. `2ⁿ·f̂`. Applying it twice multiplies by 2ⁿ.
    ///
    /// Intermediate values are bounded by `Σ|f|`, so there is no overflow as
    /// long as that sum fits in an `i64`.
    pub fn unnormalized_transform(&self) -> Self {
        let mut values = self.values.clone();
        butterfly(&mut values);
        IntCubeFunction { n: self.n, values }
    }

    pub fn to_real(&self) -> CubeFunction {
        CubeFunction::from_raw(self.n, self.values.iter().map(|v| *v as f64).collect())
    }
}

/// In-place Walsh–Hadamard butterflies without normalization.
fn butterfly<T>(data: &mut [T])
where
    T: Copy + std::ops::Add<Output = T> + std::ops::Sub<Output = T>,
{
    let len = data.len();
    debug_assert!(len.is_power_of_two());
    let mut h = 1;
    while h < len {
        for block in data.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (u, v) = (*a, *b);
                *a = u + v;
                *b = u - v;
            }
        }
        h *= 2;
    }
}

/// Normalized forward transform `f̂(S) = 2⁻ⁿ Σ_x f(x)(-1)^{⟨x,S⟩}`.
pub fn wht(f: &CubeFunction) -> CubeFunction {
    let mut values = f.values.clone();
    butterfly(&mut values);
    let scale = (-(f.n as f64)).exp2();
    values.iter_mut().for_each(|v| *v *= scale);
    CubeFunction::from_raw(f.n, values)
}

/// Inverse transform `f(x) = Σ_S f̂(S)(-1)^{⟨x,S⟩}`.
pub fn inverse_wht(fhat: &CubeFunction) -> CubeFunction {
    let mut values = fhat.values.clone();
    butterfly(&mut values);
    CubeFunction::from_raw(fhat.n, values)
}

/// `(f ∗ g)(x) = 𝔼_y f(y) g(x ⊕ y)`, computed as transform, multiply, invert.
pub fn convolve(f: &CubeFunction, g: &CubeFunction) -> Result<CubeFunction> {
    same_dim(f, g)?;
    let product = wht(f).mul(&wht(g))?;
    Ok(inverse_wht(&product))
}

/// `(Af)(x) = Σ_{y∼x} f(y)` by direct bit flips.
pub fn adjacency_apply(f: &CubeFunction) -> CubeFunction {
    let values = (0..f.len())
        .map(|x| (0..f.n).map(|i| f.values[x ^ (1 << i)]).sum())
        .collect();
    CubeFunction::from_raw(f.n, values)
}

/// `⟨f, g⟩ = 𝔼 f·g`.
pub fn inner(f: &CubeFunction, g: &CubeFunction) -> Result<f64> {
    same_dim(f, g)?;
    let s: f64 = f.values.iter().zip(&g.values).map(|(a, b)| a * b).sum();
    Ok(s * (-(f.n as f64)).exp2())
}

/// First and second moments `(𝔼f, 𝔼f²)`.
pub fn moments(f: &CubeFunction) -> (f64, f64) {
    let scale = (-(f.n as f64)).exp2();
    let (s1, s2) = f
        .values
        .iter()
        .fold((0.0, 0.0), |(s1, s2), v| (s1 + v, s2 + v * v));
    (s1 * scale, s2 * scale)
}

/// `2ⁿ·𝔼²f / 𝔼f²`, a lower bound for the size of the support of `f`.
pub fn essential_support_size(f: &CubeFunction) -> Result<f64> {
    let (mean, second) = moments(f);
    if second == 0.0 {
        return Err(Error::ZeroFunction);
    }
    Ok((f.n as f64).exp2() * mean * mean / second)
}
