use super::Code;
use crate::error::{Error, Result};
use crate::limits::HARD_MAX_N;

/// An F₂-subspace of {0,1}ⁿ held as a generator matrix in reduced row
/// echelon form.
///
/// The pivot of a row is its highest set bit. Rows are sorted by decreasing
/// pivot and every pivot column is zero in all other rows, so two codes are
/// equal exactly when their generators are.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearCode {
    n: usize,
    rows: Vec<usize>,
}

fn pivot(row: usize) -> usize {
    usize::BITS as usize - 1 - row.leading_zeros() as usize
}

/// Insert `row` into an echelon basis; false when it is already in the span.
fn insert_row(basis: &mut Vec<usize>, mut row: usize) -> bool {
    for &b in basis.iter() {
        if row >> pivot(b) & 1 == 1 {
            row ^= b;
        }
    }
    if row == 0 {
        return false;
    }
    let p = pivot(row);
    for b in basis.iter_mut() {
        if *b >> p & 1 == 1 {
            *b ^= row;
        }
    }
    basis.push(row);
    basis.sort_unstable_by(|a, b| b.cmp(a));
    true
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > HARD_MAX_N {
        return Err(Error::Dimension { n, max: HARD_MAX_N });
    }
    Ok(())
}

impl LinearCode {
    /// Code generated by linearly independent nonzero rows.
    pub fn from_generators(n: usize, rows: &[usize]) -> Result<Self> {
        check_n(n)?;
        let mut basis = Vec::with_capacity(rows.len());
        for &r in rows {
            if r >> n != 0 {
                return Err(Error::PointOutOfRange { point: r, n });
            }
            if !insert_row(&mut basis, r) {
                return Err(Error::DependentGenerators);
            }
        }
        Ok(LinearCode { n, rows: basis })
    }

    /// Span of arbitrary vectors; dependent and zero rows are dropped.
    pub fn span(n: usize, vectors: &[usize]) -> Result<Self> {
        check_n(n)?;
        let mut basis = Vec::new();
        for &v in vectors {
            if v >> n != 0 {
                return Err(Error::PointOutOfRange { point: v, n });
            }
            insert_row(&mut basis, v);
        }
        Ok(LinearCode { n, rows: basis })
    }

    pub fn full_space(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(LinearCode {
            n,
            rows: (0..n).rev().map(|i| 1 << i).collect(),
        })
    }

    /// Recognise a linear code; `None` when the points are not a subspace.
    pub fn from_code(c: &Code) -> Option<Self> {
        if !c.contains(0) {
            return None;
        }
        let lin = LinearCode::span(c.n(), c.points()).ok()?;
        (lin.size() == c.len()).then_some(lin)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn size(&self) -> usize {
        1 << self.rows.len()
    }

    pub fn contains(&self, mut x: usize) -> bool {
        for &b in &self.rows {
            if x >> pivot(b) & 1 == 1 {
                x ^= b;
            }
        }
        x == 0
    }

    /// All 2ᵏ codewords, sorted.
    pub fn codewords(&self) -> Vec<usize> {
        let mut words = vec![0usize];
        for &r in &self.rows {
            let extra: Vec<usize> = words.iter().map(|w| w ^ r).collect();
            words.extend(extra);
        }
        words.sort_unstable();
        words
    }

    pub fn to_code(&self) -> Result<Code> {
        Code::new(self.n, self.codewords())
    }
}

/// The orthogonal complement over F₂.
pub fn dual_code(c: &LinearCode) -> LinearCode {
    let pivots: Vec<usize> = c.rows.iter().map(|r| pivot(*r)).collect();
    let mut basis = Vec::new();
    for col in (0..c.n).filter(|col| !pivots.contains(col)) {
        // x_col = 1, each pivot coordinate fixed by its row's parity check
        let mut v = 1usize << col;
        for (&r, &p) in c.rows.iter().zip(&pivots) {
            if r >> col & 1 == 1 {
                v |= 1 << p;
            }
        }
        insert_row(&mut basis, v);
    }
    LinearCode {
        n: c.n,
        rows: basis,
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every k-dimensional subspace of F₂ⁿ exactly once, as canonical echelon
/// generators. Requires `1 ≤ k ≤ n ≤ 8`.
pub fn enumerate_linear_codes(n: usize, k: usize) -> Result<impl Iterator<Item = LinearCode>> {
    if !(1..=8).contains(&n) || k == 0 || k > n {
        return Err(Error::Domain(format!(
            "enumeration needs 1 <= k <= n <= 8, got n={n}, k={k}"
        )));
    }
    Ok(combinations(n, k).into_iter().flat_map(move |mut pivots| {
        pivots.sort_unstable_by(|a, b| b.cmp(a));
        // free coordinates of each row: non-pivot columns below its pivot
        let free: Vec<Vec<usize>> = pivots
            .iter()
            .map(|&p| (0..p).filter(|c| !pivots.contains(c)).collect())
            .collect();
        let total: usize = free.iter().map(Vec::len).sum();
        (0..1usize << total).map(move |mut mask| {
            let rows = pivots
                .iter()
                .zip(&free)
                .map(|(&p, cols)| {
                    let mut row = 1usize << p;
                    for &c in cols {
                        row |= (mask & 1) << c;
                        mask >>= 1;
                    }
                    row
                })
                .collect();
            LinearCode { n, rows }
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{dual_distance, min_distance};
    use std::collections::HashSet;

    #[test]
    fn echelon_form_is_canonical() {
        let a = LinearCode::from_generators(4, &[0b1100, 0b0110]).unwrap();
        let b = LinearCode::from_generators(4, &[0b1010, 0b0110]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.rows(), &[0b1010, 0b0110]);
        assert_eq!(
            LinearCode::from_generators(3, &[0b110, 0b011, 0b101]),
            Err(Error::DependentGenerators)
        );
        assert_eq!(
            LinearCode::from_generators(3, &[0]),
            Err(Error::DependentGenerators)
        );
    }

    #[test]
    fn dual_examples() {
        let rep = LinearCode::from_generators(3, &[0b111]).unwrap();
        let d = dual_code(&rep);
        assert_eq!(d, LinearCode::from_generators(3, &[0b110, 0b011]).unwrap());
        assert_eq!(d.codewords(), vec![0b000, 0b011, 0b101, 0b110]);

        let full = LinearCode::full_space(4).unwrap();
        let zero = dual_code(&full);
        assert_eq!(zero.dimension(), 0);
        assert_eq!(zero.codewords(), vec![0]);
        assert_eq!(dual_code(&zero), full);

        let selfdual = LinearCode::from_generators(2, &[0b11]).unwrap();
        assert_eq!(dual_code(&selfdual), selfdual);
    }

    #[test]
    fn enumeration_counts() {
        let codes: Vec<_> = enumerate_linear_codes(2, 1).unwrap().collect();
        let rows: HashSet<_> = codes.iter().map(|c| c.rows().to_vec()).collect();
        assert_eq!(rows, HashSet::from([vec![0b01], vec![0b10], vec![0b11]]));
        assert_eq!(enumerate_linear_codes(3, 2).unwrap().count(), 7);
        for n in 1..=6 {
            assert_eq!(enumerate_linear_codes(n, n).unwrap().count(), 1);
        }
        assert!(enumerate_linear_codes(9, 1).is_err());
        assert!(enumerate_linear_codes(3, 0).is_err());
    }

    #[test]
    fn enumeration_is_distinct_and_canonical() {
        let all: Vec<_> = enumerate_linear_codes(5, 2).unwrap().collect();
        // Gaussian binomial [5 choose 2]_2
        assert_eq!(all.len(), 155);
        let unique: HashSet<_> = all.iter().cloned().collect();
        assert_eq!(unique.len(), all.len());
        for c in &all {
            assert_eq!(&LinearCode::from_generators(5, c.rows()).unwrap(), c);
        }
    }

    #[test]
    fn recognise_linear_codes() {
        let even = crate::codes::Code::even_weight(4).unwrap();
        let lin = LinearCode::from_code(&even).unwrap();
        assert_eq!(lin.dimension(), 3);
        assert_eq!(min_distance(&dual_code(&lin).to_code().unwrap()).value, 4);
        assert_eq!(dual_distance(&even).unwrap(), 4);
        let nonlinear = crate::codes::Code::new(3, [0, 1, 2]).unwrap();
        assert!(LinearCode::from_code(&nonlinear).is_none());
    }
}
