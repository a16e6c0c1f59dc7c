//! Exact rank computations.
//!
//! The working path is [`RowEchelon`], an incremental sparse fraction-free
//! eliminator over `BigInt`: rows are cleared of denominators, combined as
//! `p·r − r_lead·pivot` and reduced to their primitive part. [`bareiss_rank`] is a
//! dense Bareiss elimination kept as an independent second route.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::{Rational, Scalar};

/// Sparse row: `(column, value)` with strictly increasing columns, no zeros.
pub type SparseRow = Vec<(usize, BigInt)>;

fn primitive(row: &mut SparseRow) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    let neg = row.first().is_some_and(|(_, v)| v.is_negative());
    if g.is_zero() {
        return;
    }
    if neg {
        g = -g;
    }
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// Clears denominators of a rational row into a primitive integer row.
pub fn integer_row(row: &[(usize, Rational)]) -> SparseRow {
    let l = row
        .iter()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let mut out: SparseRow = row
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| (*j, c.numer() * (&l / c.denom())))
        .collect();
    out.sort_by_key(|(j, _)| *j);
    primitive(&mut out);
    out
}

/// `a·x − b·y` on sparse rows.
fn combine(a: &BigInt, x: &SparseRow, b: &BigInt, y: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, a * &x[i].1));
            i += 1;
        } else if take_y {
            out.push((y[j].0, -(b * &y[j].1)));
            j += 1;
        } else {
            let v = a * &x[i].1 - b * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incrementally built echelon form; rank is the number of pivots.
#[derive(Default, Clone, Debug)]
pub struct RowEchelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl RowEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reduces `row` against the pivots; returns the (primitive) residue.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        primitive(&mut row);
        let mut from = 0;
        loop {
            let hit = row
                .iter()
                .find(|(c, _)| *c >= from && self.pivots.contains_key(c))
                .cloned();
            let Some((col, rv)) = hit else {
                return row;
            };
            let p = &self.pivots[&col];
            let pv = &p[0].1;
            let g = pv.gcd(&rv);
            row = combine(&(pv / &g), &row, &(&rv / &g), p);
            primitive(&mut row);
            from = col + 1;
        }
    }

    /// Inserts a row; returns true if it increased the rank.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let r = self.reduce_leading(row);
        match r.first() {
            None => false,
            Some((c, _)) => {
                self.pivots.insert(*c, r);
                true
            }
        }
    }

    /// Reduction that only clears pivot columns until the leading entry is free.
    fn reduce_leading(&self, mut row: SparseRow) -> SparseRow {
        primitive(&mut row);
        while let Some((col, rv)) = row.first().cloned() {
            match self.pivots.get(&col) {
                Some(p) => {
                    let pv = &p[0].1;
                    let g = pv.gcd(&rv);
                    row = combine(&(pv / &g), &row, &(&rv / &g), p);
                    primitive(&mut row);
                }
                None => break,
            }
        }
        row
    }

    /// True if `row` lies in the span of the inserted rows.
    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Rank of a set of sparse rational rows.
pub fn rank_rational(rows: &[Vec<(usize, Rational)>]) -> usize {
    let mut ech = RowEchelon::new();
    for r in rows {
        ech.insert(integer_row(r));
    }
    ech.rank()
}

/// Dense Bareiss elimination over the integers; returns the rank.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Dense rational matrix clear-and-rank through Bareiss.
pub fn bareiss_rank_rational(m: &[Vec<Rational>]) -> usize {
    let int_rows = m
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            row.iter().map(|c| c.numer() * (&l / c.denom())).collect()
        })
        .collect();
    bareiss_rank(int_rows)
}

/// Inverse of a square rational matrix by Gauss–Jordan; `None` if singular.
pub fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "matrix must be square");
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let inv = Rational::one() / a[c][c].clone();
        for v in a[c].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[c].clone();
                for (v, p) in a[i].iter_mut().zip(pivot_row.iter()) {
                    *v = &*v - &f * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Rank of a dense matrix over any exact field, by plain Gaussian elimination.
pub fn rank_field<C: Scalar>(mut m: Vec<Vec<C>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inverse().expect("pivot is nonzero");
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone() * inv.clone();
            for j in c..cols {
                let v = m[i][j].clone() - f.clone() * m[r][j].clone();
                m[i][j] = v;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use proptest::prelude::*;

    fn dense_to_sparse(m: &[Vec<i64>]) -> Vec<Vec<(usize, Rational)>> {
        m.iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| **v != 0)
                    .map(|(j, v)| (j, int(*v)))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn small_ranks() {
        let m = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(rank_rational(&dense_to_sparse(&m)), 2);
        let big: Vec<Vec<BigInt>> = m
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        assert_eq!(bareiss_rank(big), 2);
        let dense: Vec<Vec<Rational>> = m.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
        assert_eq!(rank_field(dense), 2);
        assert_eq!(rank_rational(&[]), 0);
        assert_eq!(rank_rational(&[vec![]]), 0);
    }

    #[test]
    fn rational_rows_clear_denominators() {
        let rows = vec![
            vec![(0, rat(1, 2)), (3, rat(1, 3))],
            vec![(0, rat(3, 1)), (3, rat(2, 1))],
        ];
        assert_eq!(rank_rational(&rows), 1);
    }

    #[test]
    fn inverse_of_small_matrix() {
        let m = vec![vec![int(2), int(1)], vec![int(1), int(1)]];
        let inv = invert(&m).unwrap();
        assert_eq!(inv, vec![vec![int(1), int(-1)], vec![int(-1), int(2)]]);
        assert!(invert(&[vec![int(1), int(2)], vec![int(2), int(4)]]).is_none());
    }

    #[test]
    fn membership() {
        let mut e = RowEchelon::new();
        e.insert(vec![(0, BigInt::from(1)), (2, BigInt::from(1))]);
        e.insert(vec![(1, BigInt::from(2))]);
        assert!(e.contains(vec![(0, BigInt::from(3)), (1, BigInt::from(5)), (2, BigInt::from(3))]));
        assert!(!e.contains(vec![(2, BigInt::from(1))]));
    }

    proptest! {
        // The sparse eliminator and dense Bareiss must agree.
        #[test]
        fn sparse_and_bareiss_agree(rows in 1usize..7, cols in 1usize..7,
                                    seed in proptest::collection::vec(-2i64..3, 49),
                                    dup in 0usize..7) {
            let mut m: Vec<Vec<i64>> = (0..rows)
                .map(|i| (0..cols).map(|j| seed[(i * 7 + j) % 49]).collect())
                .collect();
            if dup < rows && rows > 1 {
                let r0 = m[0].clone();
                m[dup] = r0.iter().zip(&m[rows - 1]).map(|(a, b)| 2 * a - b).collect();
            }
            let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
            prop_assert_eq!(rank_rational(&dense_to_sparse(&m)), bareiss_rank(big));
        }
    }
}
