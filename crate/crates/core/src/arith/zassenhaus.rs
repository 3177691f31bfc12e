//! Factorization of square-free primitive polynomials in Z[t]:
//! Cantor-Zassenhaus modulo a word-sized prime, linear Hensel lifting and
//! exhaustive recombination.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Integer polynomial, lowest coefficient first, no trailing zeros.
pub type ZPoly = Vec<BigInt>;

type Fp = Vec<u64>;

fn trim(v: &mut Fp) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn fp_sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    let mut out: Fp = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

fn fp_mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

fn fp_divrem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    assert!(!b.is_empty());
    if a.len() < b.len() {
        return (Vec::new(), a.clone());
    }
    let inv = inv_mod(*b.last().unwrap(), p);
    let mut r = a.clone();
    let mut q = vec![0u64; a.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let top = r[k + b.len() - 1];
        if top == 0 {
            continue;
        }
        let t = top * inv % p;
        q[k] = t;
        for (i, &bi) in b.iter().enumerate() {
            r[k + i] = (r[k + i] + p - t * bi % p) % p;
        }
    }
    r.truncate(b.len() - 1);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

fn fp_monic(a: &Fp, p: u64) -> Fp {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let inv = inv_mod(l, p);
            a.iter().map(|&c| c * inv % p).collect()
        }
    }
}

fn fp_gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = fp_divrem(&a, &b, p).1;
        a = b;
        b = r;
    }
    fp_monic(&a, p)
}

/// `(g, s)` with `s*a = g (mod m)`.
fn fp_inv_mod(a: &Fp, m: &Fp, p: u64) -> Fp {
    let (mut r0, mut r1) = (m.clone(), fp_divrem(a, m, p).1);
    let (mut s0, mut s1): (Fp, Fp) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let s = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        s0 = std::mem::replace(&mut s1, s);
    }
    assert_eq!(r0.len(), 1, "not invertible");
    let inv = inv_mod(r0[0], p);
    let s: Fp = s0.iter().map(|&c| c * inv % p).collect();
    fp_divrem(&s, m, p).1
}

fn fp_powmod(base: &Fp, e: &BigUint, m: &Fp, p: u64) -> Fp {
    let mut acc: Fp = vec![1];
    let b = fp_divrem(base, m, p).1;
    for i in (0..e.bits()).rev() {
        acc = fp_divrem(&fp_mul(&acc, &acc, p), m, p).1;
        if e.bit(i) {
            acc = fp_divrem(&fp_mul(&acc, &b, p), m, p).1;
        }
    }
    acc
}

fn fp_derivative(a: &Fp, p: u64) -> Fp {
    let mut out: Fp = a.iter().enumerate().skip(1).map(|(k, &c)| (k as u64 % p) * c % p).collect();
    trim(&mut out);
    out
}

/// Distinct-degree factorization of a monic square-free polynomial.
fn ddf(f: &Fp, p: u64) -> Vec<(Fp, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let pe = BigUint::from(p);
    let mut d = 1;
    while f.len() > 2 * d {
        h = fp_powmod(&h, &pe, &f, p);
        let g = fp_gcd(&fp_sub(&h, &x, p), &f, p);
        if g.len() > 1 {
            f = fp_divrem(&f, &g, p).0;
            h = fp_divrem(&h, &f, p).1;
            out.push((g, d));
        }
        d += 1;
    }
    if f.len() > 1 {
        let deg = f.len() - 1;
        out.push((f, deg));
    }
    out
}

/// Equal-degree splitting of a product of irreducibles of degree `d`.
fn edf(f: &Fp, d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<Fp>) {
    let n = f.len() - 1;
    if n == d {
        out.push(f.clone());
        return;
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let mut a: Fp = (0..n).map(|_| rng.gen_range(0..p)).collect();
        trim(&mut a);
        if a.len() < 2 {
            continue;
        }
        let b = fp_sub(&fp_powmod(&a, &e, f, p), &vec![1], p);
        let g = fp_gcd(&b, f, p);
        if g.len() > 1 && g.len() < f.len() {
            let q = fp_monic(&fp_divrem(f, &g, p).0, p);
            edf(&g, d, p, rng, out);
            edf(&q, d, p, rng, out);
            return;
        }
    }
}

fn factor_mod_p(f: &Fp, p: u64) -> Vec<Fp> {
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    let mut out = Vec::new();
    for (g, d) in ddf(&fp_monic(f, p), p) {
        edf(&g, d, p, &mut rng, &mut out);
    }
    out.sort();
    out
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

fn reduce(f: &ZPoly, p: u64) -> Fp {
    let pb = BigInt::from(p);
    let mut out: Fp = f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
    trim(&mut out);
    out
}

fn lift(f: &Fp) -> ZPoly {
    f.iter().map(|&c| BigInt::from(c)).collect()
}

fn zp_trim(v: &mut ZPoly) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn zp_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zp_trim(&mut out);
    out
}

fn zp_mod(a: &ZPoly, m: &BigInt) -> ZPoly {
    let mut out: ZPoly = a.iter().map(|c| c.mod_floor(m)).collect();
    zp_trim(&mut out);
    out
}

fn zp_symmetric(a: &ZPoly, m: &BigInt) -> ZPoly {
    let half: BigInt = m >> 1;
    let mut out: ZPoly = a
        .iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    zp_trim(&mut out);
    out
}

pub fn content(a: &ZPoly) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

pub fn primitive(a: &ZPoly) -> ZPoly {
    let c = content(a);
    if c.is_zero() {
        return a.clone();
    }
    let mut out: ZPoly = a.iter().map(|x| x / &c).collect();
    if out.last().is_some_and(|l| l.is_negative()) {
        for x in out.iter_mut() {
            *x = -x.clone();
        }
    }
    out
}

/// Exact quotient `a / b` in Z[t], if it exists.
pub fn zp_div_exact(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    if b.is_empty() {
        return None;
    }
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let lb = b.last().unwrap();
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let top = &r[k + b.len() - 1];
        if top.is_zero() {
            continue;
        }
        let (t, rem) = top.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (i, bi) in b.iter().enumerate() {
            r[k + i] -= &t * bi;
        }
        q[k] = t;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    zp_trim(&mut q);
    Some(q)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "not invertible");
    e.x.mod_floor(m)
}

/// Lifts `f = lc * prod g_i (mod p)` to a factorization modulo `p^k`,
/// with every `g_i` monic.
fn hensel_lift(f: &ZPoly, gs: &[Fp], p: u64, k: u32) -> (Vec<ZPoly>, BigInt) {
    let pb = BigInt::from(p);
    let pk = pb.pow(k);
    let lc = f.last().unwrap().clone();
    let lc_inv = mod_inverse(&lc, &pk);
    let fm: ZPoly = zp_mod(&f.iter().map(|c| c * &lc_inv).collect(), &pk);
    let r = gs.len();
    let mut s: Vec<Fp> = Vec::with_capacity(r);
    for i in 0..r {
        let mut cof: Fp = vec![1];
        for (j, g) in gs.iter().enumerate() {
            if j != i {
                cof = fp_mul(&cof, g, p);
            }
        }
        s.push(fp_inv_mod(&cof, &gs[i], p));
    }
    let mut g: Vec<ZPoly> = gs.iter().map(lift).collect();
    let mut pj = pb.clone();
    for _ in 1..k {
        let next = &pj * &pb;
        let mut prod: ZPoly = vec![BigInt::one()];
        for gi in &g {
            prod = zp_mod(&zp_mul(&prod, gi), &next);
        }
        let n = fm.len().max(prod.len());
        let diff: ZPoly = (0..n)
            .map(|i| {
                let a = fm.get(i).cloned().unwrap_or_default();
                let b = prod.get(i).cloned().unwrap_or_default();
                (a - b).mod_floor(&next) / &pj
            })
            .collect();
        let e = reduce(&diff, p);
        if !e.is_empty() {
            for i in 0..r {
                let delta = fp_divrem(&fp_mul(&e, &s[i], p), &gs[i], p).1;
                let dz = lift(&delta);
                let gi = &mut g[i];
                for (idx, c) in dz.iter().enumerate() {
                    gi[idx] += c * &pj;
                }
            }
        }
        pj = next;
    }
    (g, pk)
}

fn norm_bound(f: &ZPoly) -> BigInt {
    let n = f.len() as u32;
    let sq: BigInt = f.iter().map(|c| c * c).sum();
    let root = sq.sqrt() + BigInt::one();
    let lc = f.last().unwrap().abs();
    (root * lc * BigInt::from(2u32).pow(n)) * BigInt::from(2u32)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
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
    rec(0, n, k, &mut cur, &mut out);
    out
}

const PRIME_BASE: u64 = 1 << 20;

/// Number of modular factors `f` has modulo a few good primes; used to pick
/// evaluation points. `None` if no good prime is found.
pub fn modular_factor_count(f: &ZPoly) -> Option<usize> {
    choose_prime(f).map(|(_, fs)| fs.len())
}

fn choose_prime(f: &ZPoly) -> Option<(u64, Vec<Fp>)> {
    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut tried = 0;
    let mut cand = PRIME_BASE + 1;
    while tried < 4 && cand < PRIME_BASE + 200_000 {
        if is_prime(cand) {
            let fp = reduce(f, cand);
            if fp.len() == f.len() {
                let fd = fp_derivative(&fp, cand);
                if fp_gcd(&fp, &fd, cand).len() == 1 {
                    tried += 1;
                    let fs = factor_mod_p(&fp, cand);
                    if best.as_ref().is_none_or(|b| fs.len() < b.1.len()) {
                        best = Some((cand, fs));
                    }
                    if best.as_ref().unwrap().1.len() == 1 {
                        break;
                    }
                }
            }
        }
        cand += 2;
    }
    best
}

/// Irreducible factors of a square-free primitive `f` with positive leading
/// coefficient and degree at least one.
pub fn factor_squarefree(f: &ZPoly) -> Vec<ZPoly> {
    if f.len() <= 2 {
        return vec![f.clone()];
    }
    let (p, gs) = match choose_prime(f) {
        Some(x) => x,
        None => return vec![f.clone()],
    };
    if gs.len() == 1 {
        return vec![f.clone()];
    }
    let bound = norm_bound(f);
    let mut k = 1;
    let pb = BigInt::from(p);
    while pb.pow(k) <= bound {
        k += 1;
    }
    let (lifted, pk) = hensel_lift(f, &gs, p, k);
    let mut remaining: Vec<ZPoly> = lifted;
    let mut cur = f.clone();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut found = false;
        for sub in subsets(remaining.len(), size) {
            let lc = cur.last().unwrap().clone();
            let mut cand: ZPoly = vec![lc];
            for &i in &sub {
                cand = zp_mod(&zp_mul(&cand, &remaining[i]), &pk);
            }
            let cand = primitive(&zp_symmetric(&cand, &pk));
            if let Some(q) = zp_div_exact(&cur, &cand) {
                out.push(cand);
                cur = q;
                let keep: Vec<ZPoly> = remaining
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !sub.contains(i))
                    .map(|(_, g)| g.clone())
                    .collect();
                remaining = keep;
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    if cur.len() > 1 {
        out.push(primitive(&cur));
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

pub fn sign_positive(a: &BigInt) -> bool {
    a.sign() == Sign::Plus
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(v: &[i64]) -> ZPoly {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn splits_products() {
        // (t^2+1)(t-3)(2t+5)
        let f = zp_mul(&zp_mul(&zp(&[1, 0, 1]), &zp(&[-3, 1])), &zp(&[5, 2]));
        let fs = factor_squarefree(&f);
        assert_eq!(fs.len(), 3);
        let prod = fs.iter().fold(zp(&[1]), |a, b| zp_mul(&a, b));
        assert_eq!(prod, f);
    }

    #[test]
    fn irreducible_quartic() {
        // t^4 + 1 splits modulo every prime but is irreducible over Z
        let fs = factor_squarefree(&zp(&[1, 0, 0, 0, 1]));
        assert_eq!(fs, vec![zp(&[1, 0, 0, 0, 1])]);
    }

    #[test]
    fn swinnerton_dyer_like() {
        // (t^2-2)(t^2-3)
        let f = zp_mul(&zp(&[-2, 0, 1]), &zp(&[-3, 0, 1]));
        let fs = factor_squarefree(&f);
        assert_eq!(fs, vec![zp(&[-3, 0, 1]), zp(&[-2, 0, 1])]);
    }
}
