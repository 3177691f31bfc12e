//! Images in F_p[x] under fixed y, z values, used to rule out
//! divisibility cheaply.
//!
//! If `d | n` in Q[x,y,z] and every coefficient denominator of `n` and `d`
//! is invertible mod p, then `n̄ = d̄ · q̄` in F_p[x]. A nonzero remainder of
//! `n̄` by `d̄ ≠ 0` therefore proves `d ∤ n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::mpoly::{MPoly, Rat};
use super::mono::Var;

const P: u64 = (1 << 61) - 1;
const Y0: u64 = 1_000_003;
const Z0: u64 = 7_919_111;

fn mulm(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn addm(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

fn subm(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

fn powm(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a);
        }
        a = mulm(a, a);
        e >>= 1;
    }
    r
}

fn invm(a: u64) -> u64 {
    powm(a, P - 2)
}

fn int_mod(n: &BigInt) -> u64 {
    n.mod_floor(&BigInt::from(P)).to_u64().expect("reduced")
}

fn rat_mod(c: &Rat) -> Option<u64> {
    let d = int_mod(c.denom());
    (d != 0).then(|| mulm(int_mod(c.numer()), invm(d)))
}

fn powers(base: u64, n: u32) -> Vec<u64> {
    let mut v = Vec::with_capacity(n as usize + 1);
    let mut acc = 1;
    for _ in 0..=n {
        v.push(acc);
        acc = mulm(acc, base);
    }
    v
}

/// Dense image in x, lowest degree first, trailing zeros trimmed; `None`
/// when a denominator vanishes mod p.
pub fn image(p: &MPoly) -> Option<Vec<u64>> {
    let ys = powers(Y0, p.deg(Var::Y));
    let zs = powers(Z0, p.deg(Var::Z));
    let mut out = vec![0u64; p.deg(Var::X) as usize + 1];
    for (m, c) in p.terms() {
        let v = mulm(rat_mod(c)?, mulm(ys[m.exp(Var::Y) as usize], zs[m.exp(Var::Z) as usize]));
        let slot = &mut out[m.exp(Var::X) as usize];
        *slot = addm(*slot, v);
    }
    trim(&mut out);
    Some(out)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// `Some(q)` with `n = d·q` in F_p[x], `None` when `d` does not divide `n`.
/// `d` must be nonzero.
pub fn divide(n: &[u64], d: &[u64]) -> Option<Vec<u64>> {
    debug_assert!(!d.is_empty());
    if n.is_empty() {
        return Some(Vec::new());
    }
    if n.len() < d.len() {
        return None;
    }
    let mut r = n.to_vec();
    let dl = d.len() - 1;
    let inv = invm(d[dl]);
    let mut q = vec![0u64; n.len() - dl];
    for k in (0..q.len()).rev() {
        let c = mulm(r[k + dl], inv);
        q[k] = c;
        if c != 0 {
            for (i, di) in d.iter().enumerate() {
                r[k + i] = subm(r[k + i], mulm(c, *di));
            }
        }
    }
    r[..dl].iter().all(|&c| c == 0).then_some(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn images_respect_division() {
        let a = MPoly::linear(1, 2, -1, 3);
        let b = &MPoly::linear(0, 1, 1, 1).pow(2) + &MPoly::var(Var::X);
        let ab = &a * &b;
        let (ia, iab) = (image(&a).unwrap(), image(&ab).unwrap());
        assert!(divide(&iab, &ia).is_some());
        let c = MPoly::linear(1, 1, 0, 0);
        assert!(divide(&iab, &image(&c).unwrap()).is_none());
    }
}
