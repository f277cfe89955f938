//! Dense linear algebra over Q: row reduction, nullspaces, affine solves.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rat::Rat;

pub type Matrix = Vec<Vec<Rat>>;

fn primitive_row(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in row.iter_mut() {
            *c /= &g;
        }
    }
}

/// Reduced row echelon form in place; returns the pivot columns. Only the
/// first `ncols` columns are searched for pivots. Elimination runs
/// fraction-free on integer rows and divides by the pivots at the end.
pub fn rref(m: &mut Matrix, ncols: usize) -> Vec<usize> {
    let mut rows: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
            let mut out: Vec<BigInt> = r.iter().map(|c| c.numer() * (&l / c.denom())).collect();
            primitive_row(&mut out);
            out
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == rows.len() {
            break;
        }
        let Some(p) = (row..rows.len()).filter(|&r| !rows[r][col].is_zero()).min_by_key(|&r| rows[r][col].bits())
        else {
            continue;
        };
        rows.swap(row, p);
        let pivot_row = rows[row].clone();
        let pv = &pivot_row[col];
        for (r, other) in rows.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let g = pv.gcd(&other[col]);
            let (a, f) = (pv / &g, &other[col] / &g);
            for (c, pc) in other.iter_mut().zip(&pivot_row) {
                *c = &*c * &a - &f * pc;
            }
            primitive_row(other);
        }
        pivots.push(col);
        row += 1;
    }
    for (r, &p) in pivots.iter().enumerate() {
        let pv = rows[r][p].clone();
        m[r] = rows[r].iter().map(|c| Rat::new(c.clone(), pv.clone())).collect();
    }
    for r in m.iter_mut().skip(pivots.len()) {
        r.iter_mut().for_each(|c| *c = Rat::zero());
    }
    pivots
}

/// Basis of `{v : m v = 0}` for an `rows x ncols` matrix.
pub fn nullspace(m: &Matrix, ncols: usize) -> Vec<Vec<Rat>> {
    let mut a = m.clone();
    let pivots = rref(&mut a, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rat::zero(); ncols];
        v[free] = Rat::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -a[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solves `m v = b`. Returns a particular solution and a nullspace basis,
/// or `None` if the system is inconsistent.
pub fn solve_affine(m: &Matrix, b: &[Rat], ncols: usize) -> Option<(Vec<Rat>, Vec<Vec<Rat>>)> {
    let mut aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rat::zero(); ncols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[r][ncols].clone();
    }
    Some((x, nullspace(m, ncols)))
}

pub fn mat_vec(m: &Matrix, v: &[Rat]) -> Vec<Rat> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(Rat::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}
