//! Square matrices over Q(x).

use std::fmt;

use crate::error::{Error, Result};
use crate::num::RatFun;

#[derive(Clone, PartialEq, Eq)]
pub struct MatrixRF {
    n: usize,
    entries: Vec<Vec<RatFun>>,
}

impl MatrixRF {
    pub fn new(rows: Vec<Vec<RatFun>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Precondition("matrix must be square and nonempty".into()));
        }
        Ok(MatrixRF { n, entries: rows })
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n)
            .map(|i| (0..n).map(|j| if i == j { RatFun::one() } else { RatFun::zero() }).collect())
            .collect();
        MatrixRF { n, entries }
    }

    pub fn zero(n: usize) -> Self {
        MatrixRF { n, entries: vec![vec![RatFun::zero(); n]; n] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFun {
        &self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatFun) {
        self.entries[i][j] = v;
    }

    pub fn rows(&self) -> &[Vec<RatFun>] {
        &self.entries
    }

    pub fn map(&self, f: impl Fn(&RatFun) -> RatFun) -> Self {
        MatrixRF { n: self.n, entries: self.entries.iter().map(|r| r.iter().map(&f).collect()).collect() }
    }

    pub fn mul(&self, o: &MatrixRF) -> MatrixRF {
        let n = self.n;
        let mut out = MatrixRF::zero(n);
        for i in 0..n {
            for k in 0..n {
                if self.entries[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if !o.entries[k][j].is_zero() {
                        out.entries[i][j] = &out.entries[i][j] + &(&self.entries[i][k] * &o.entries[k][j]);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &MatrixRF) -> MatrixRF {
        let entries = self
            .entries
            .iter()
            .zip(&o.entries)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        MatrixRF { n: self.n, entries }
    }

    pub fn sub(&self, o: &MatrixRF) -> MatrixRF {
        self.add(&o.map(|x| -x))
    }

    pub fn mul_vec(&self, v: &[RatFun]) -> Vec<RatFun> {
        self.entries.iter().map(|row| dot(row, v)).collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[RatFun]) -> Vec<RatFun> {
        (0..self.n)
            .map(|j| {
                v.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .fold(RatFun::zero(), |acc, (i, x)| &acc + &(x * &self.entries[i][j]))
            })
            .collect()
    }

    pub fn det(&self) -> RatFun {
        let mut a = self.entries.clone();
        let n = self.n;
        let mut det = RatFun::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return RatFun::zero();
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            det = &det * &a[col][col];
            let inv = a[col][col].inv().expect("pivot is nonzero");
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] * &inv;
                for c in col..n {
                    let t = &f * &a[col][c];
                    a[r][c] = &a[r][c] - &t;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<MatrixRF> {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut inv = MatrixRF::identity(n).entries;
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Err(Error::SingularMatrix);
            };
            a.swap(p, col);
            inv.swap(p, col);
            let piv = a[col][col].inv().expect("pivot is nonzero");
            for c in 0..n {
                a[col][c] = &a[col][c] * &piv;
                inv[col][c] = &inv[col][c] * &piv;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..n {
                    let t = &f * &a[col][c];
                    a[r][c] = &a[r][c] - &t;
                    let t = &f * &inv[col][c];
                    inv[r][c] = &inv[r][c] - &t;
                }
            }
        }
        Ok(MatrixRF { n, entries: inv })
    }

    /// Submatrix on the given row and column ranges.
    pub fn block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Vec<Vec<RatFun>> {
        self.entries[rows].iter().map(|r| r[cols.clone()].to_vec()).collect()
    }
}

pub fn dot(a: &[RatFun], b: &[RatFun]) -> RatFun {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(RatFun::zero(), |acc, (x, y)| &acc + &(x * y))
}

/// Solves `Σ_k β_k rows[k] = v` over Q(x) for linearly independent `rows`.
pub fn solve_in_span(rows: &[Vec<RatFun>], v: &[RatFun]) -> Option<Vec<RatFun>> {
    let r = rows.len();
    let n = v.len();
    // Columns are the rows; augment with v. Work on the n x (r + 1) system.
    let mut a: Vec<Vec<RatFun>> = (0..n)
        .map(|i| {
            let mut row: Vec<RatFun> = rows.iter().map(|x| x[i].clone()).collect();
            row.push(v[i].clone());
            row
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..r {
        let p = (pivot_row..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(p, pivot_row);
        let inv = a[pivot_row][col].inv().expect("pivot is nonzero");
        for c in col..=r {
            a[pivot_row][c] = &a[pivot_row][c] * &inv;
        }
        for i in 0..n {
            if i == pivot_row || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for c in col..=r {
                let t = &f * &a[pivot_row][c];
                a[i][c] = &a[i][c] - &t;
            }
        }
        pivot_row += 1;
    }
    if a[pivot_row..].iter().any(|row| !row[r].is_zero()) {
        return None;
    }
    Some((0..r).map(|k| a[k][r].clone()).collect())
}

/// Rank of a list of row vectors over Q(x).
pub fn rank(rows: &[Vec<RatFun>]) -> usize {
    let Some(n) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut a = rows.to_vec();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(p, rank);
        let inv = a[rank][col].inv().expect("pivot is nonzero");
        for i in rank + 1..a.len() {
            if a[i][col].is_zero() {
                continue;
            }
            let f = &a[i][col] * &inv;
            for c in col..n {
                let t = &f * &a[rank][c];
                a[i][c] = &a[i][c] - &t;
            }
        }
        rank += 1;
    }
    rank
}

impl fmt::Display for MatrixRF {
    /// `[[a, b], [c, d]]`, parseable by the CLI.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for MatrixRF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixRF({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat::int;
    use crate::num::Poly;

    fn c(v: i64) -> RatFun {
        RatFun::constant(int(v))
    }

    #[test]
    fn inverse_of_shift_example() {
        // A = [[0, -1], [1, x]], A^{-1} = [[x, 1], [-1, 0]].
        let a = MatrixRF::new(vec![vec![c(0), c(-1)], vec![c(1), RatFun::x()]]).unwrap();
        assert_eq!(a.det(), c(1));
        let inv = a.inverse().unwrap();
        assert_eq!(inv, MatrixRF::new(vec![vec![RatFun::x(), c(1)], vec![c(-1), c(0)]]).unwrap());
        assert_eq!(a.mul(&inv), MatrixRF::identity(2));
    }

    #[test]
    fn singular_is_reported() {
        let x = RatFun::x();
        let a = MatrixRF::new(vec![vec![x.clone(), c(1)], vec![&x * &x, x.clone()]]).unwrap();
        assert!(a.det().is_zero());
        assert_eq!(a.inverse(), Err(Error::SingularMatrix));
    }

    #[test]
    fn span_solve() {
        let x = RatFun::x();
        let rows = vec![vec![c(1), c(0), x.clone()], vec![c(0), c(1), c(1)]];
        let v = vec![c(2), x.clone(), &(&x * &c(2)) + &x];
        assert_eq!(solve_in_span(&rows, &v), Some(vec![c(2), x.clone()]));
        assert_eq!(solve_in_span(&rows, &[c(1), c(1), c(0)]), None);
        assert_eq!(rank(&rows), 2);
        let p = RatFun::from_poly(Poly::from_i64s(&[1, 1]));
        assert_eq!(rank(&[vec![c(1), x.clone()], vec![p.clone(), &p * &x]]), 1);
    }
}
