//! Dense multi-modular product of integer polynomials.
//!
//! Terms are placed in a dense box indexed additively by exponents, the
//! product is formed modulo primes below 2^26 with reduction delayed over
//! 4000 accumulations, and coefficients are recovered by Garner's CRT.

use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::mono::{Mono, Var};

const PRIME_BITS: u64 = 26;
// 4000·(2^26)^2 + 2^26 < 2^64
const CHUNK: usize = 4000;
const MAX_SLOTS: usize = 1 << 24;

fn primes() -> &'static [u64] {
    static P: OnceLock<Vec<u64>> = OnceLock::new();
    P.get_or_init(|| {
        let mut out = Vec::new();
        let mut n = (1u64 << PRIME_BITS) - 1;
        while out.len() < 96 {
            if (2..).take_while(|d| d * d <= n).all(|d| n % d != 0) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn residue(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().expect("reduced")
}

/// Product of two integer term lists, or `None` when the dense box is too
/// large or too many primes would be needed.
pub fn mul_dense(a: &[(Mono, BigInt)], b: &[(Mono, BigInt)]) -> Option<Vec<(Mono, BigInt)>> {
    let deg = |t: &[(Mono, BigInt)], v: Var| t.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0) as usize;
    let dims: Vec<usize> = Var::ALL.iter().map(|&v| deg(a, v) + deg(b, v) + 1).collect();
    let slots = dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d))?;
    if slots > MAX_SLOTS {
        return None;
    }
    let strides = [1, dims[0], dims[0] * dims[1]];
    let index = |m: &Mono| m.exp(Var::X) as usize * strides[0] + m.exp(Var::Y) as usize * strides[1] + m.exp(Var::Z) as usize * strides[2];
    let bits = |t: &[(Mono, BigInt)]| t.iter().map(|(_, c)| c.bits()).max().unwrap_or(0);
    let len_bits = 64 - (a.len().min(b.len()) as u64).leading_zeros() as u64;
    let need = bits(a) + bits(b) + len_bits + 2;
    let k = need.div_ceil(PRIME_BITS - 1) as usize;
    let ps = primes();
    if k > ps.len() {
        return None;
    }
    let ia: Vec<usize> = a.iter().map(|(m, _)| index(m)).collect();
    let ib: Vec<usize> = b.iter().map(|(m, _)| index(m)).collect();
    let mut occupied = vec![false; slots];
    for x in &ia {
        for y in &ib {
            occupied[x + y] = true;
        }
    }
    let live: Vec<usize> = (0..slots).filter(|&i| occupied[i]).collect();
    drop(occupied);
    let mut residues: Vec<Vec<u64>> = Vec::with_capacity(k);
    let mut acc = vec![0u64; slots];
    for &p in &ps[..k] {
        let ca: Vec<u64> = a.iter().map(|(_, c)| residue(c, p)).collect();
        let cb: Vec<u64> = b.iter().map(|(_, c)| residue(c, p)).collect();
        for &i in &live {
            acc[i] = 0;
        }
        for (chunk_a, chunk_i) in ca.chunks(CHUNK).zip(ia.chunks(CHUNK)) {
            for (x, &i) in chunk_a.iter().zip(chunk_i) {
                if *x == 0 {
                    continue;
                }
                for (y, &j) in cb.iter().zip(&ib) {
                    acc[i + j] += x * y;
                }
            }
            for &i in &live {
                acc[i] %= p;
            }
        }
        residues.push(live.iter().map(|&i| acc[i]).collect());
    }
    // Garner: x = v0 + v1·p0 + v2·p0·p1 + …
    let ps = &ps[..k];
    let mut inv = vec![vec![0u64; k]; k];
    for i in 0..k {
        for j in 0..i {
            inv[j][i] = inv_mod(ps[j] % ps[i], ps[i]);
        }
    }
    let modulus: BigInt = ps.iter().fold(BigInt::from(1), |m, &p| m * p);
    let half = &modulus >> 1;
    let mut out = Vec::new();
    let mut v = vec![0u64; k];
    for (slot, &cell) in live.iter().enumerate() {
        if residues.iter().all(|r| r[slot] == 0) {
            continue;
        }
        for i in 0..k {
            let mut t = residues[i][slot];
            for j in 0..i {
                t = (t + ps[i] - v[j] % ps[i]) % ps[i] * inv[j][i] % ps[i];
            }
            v[i] = t;
        }
        let mut c = BigInt::from(v[k - 1]);
        for i in (0..k - 1).rev() {
            c = c * ps[i] + v[i];
        }
        if c > half {
            c -= &modulus;
        }
        if c.is_zero() {
            continue;
        }
        debug_assert!(c.sign() != Sign::NoSign);
        let ex = cell % dims[0];
        let ey = (cell / strides[1]) % dims[1];
        let ez = cell / strides[2];
        out.push((Mono::new(ex as u32, ey as u32, ez as u32), c));
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::MPoly;

    #[test]
    fn matches_schoolbook() {
        let a = &(&MPoly::linear(3, -7, 11, 5).pow(9) * &MPoly::constant(crate::arith::rat(1 << 40))) - &MPoly::var(Var::Z);
        let b = &MPoly::linear(-2, 5, 1, -9).pow(8) + &MPoly::var(Var::Y);
        let int = |p: &MPoly| p.terms().iter().map(|(m, c)| (*m, c.numer().clone())).collect::<Vec<_>>();
        let mut fast: Vec<(Mono, BigInt)> = mul_dense(&int(&a), &int(&b)).unwrap();
        fast.sort_by(|x, y| y.0.cmp(&x.0));
        let mut slow = std::collections::BTreeMap::new();
        for (ma, ca) in int(&a) {
            for (mb, cb) in int(&b) {
                *slow.entry(ma.mul(mb)).or_insert_with(BigInt::zero) += &ca * &cb;
            }
        }
        let slow: Vec<(Mono, BigInt)> = slow.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        assert_eq!(fast, slow);
    }
}
