//! Polynomial arithmetic over F_p for word-sized primes, used as cheap
//! filters before exact computations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

pub(crate) fn eval_mod(f: &[u64], x: u64, p: u64) -> u64 {
    f.iter().rev().fold(0u64, |acc, &c| ((acc as u128 * x as u128 + c as u128) % p as u128) as u64)
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn trim_mod(f: &mut Vec<u64>) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

/// Degree of gcd(f, g) over F_p.
pub(crate) fn gcd_degree_mod(f: &[u64], g: &[u64], p: u64) -> usize {
    let mut a = f.to_vec();
    let mut b = g.to_vec();
    trim_mod(&mut a);
    trim_mod(&mut b);
    while !b.is_empty() {
        // a <- a mod b
        let inv = inv_mod(*b.last().unwrap(), p);
        while a.len() >= b.len() {
            let c = mul_mod(*a.last().unwrap(), inv, p);
            let off = a.len() - b.len();
            for (j, &bj) in b.iter().enumerate() {
                let t = mul_mod(c, bj, p);
                a[off + j] = (a[off + j] + p - t) % p;
            }
            trim_mod(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

pub(crate) fn reduce_mod(f: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect()
}

pub(crate) fn reduce_int(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// `f(x + c)` over F_p.
pub(crate) fn taylor_shift_mod(f: &[u64], c: u64, p: u64) -> Vec<u64> {
    let mut out = f.to_vec();
    let n = out.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            out[j] = (out[j] + mul_mod(c, out[j + 1], p)) % p;
        }
    }
    out
}

pub(crate) fn divides_mod(p: u64, c: &BigInt) -> bool {
    (c % BigInt::from(p)).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_mod_matches_binomial_expansion() {
        // (x + 2)^2 = x^2 + 4x + 4 from x^2
        assert_eq!(taylor_shift_mod(&[0, 0, 1], 2, 101), vec![4, 4, 1]);
        assert_eq!(gcd_degree_mod(&[100, 0, 1], &[1, 1], 101), 1);
        assert_eq!(gcd_degree_mod(&[1, 0, 1], &[2, 1], 101), 0);
    }
}
