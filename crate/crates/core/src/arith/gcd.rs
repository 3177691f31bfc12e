//! Multivariate gcd over Q: heuristic evaluation gcd first, recursive
//! primitive remainder sequences when it gives up.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::mono::{Mono, Var};
use super::mpoly::{rat, MPoly, Rat};

fn top_var(p: &MPoly, q: &MPoly) -> Option<Var> {
    [Var::Z, Var::Y, Var::X].into_iter().find(|&v| p.has_var(v) || q.has_var(v))
}

/// Gcd normalized to a primitive integer polynomial with positive leading
/// coefficient. `gcd(0, 0) = 0`.
pub fn gcd(p: &MPoly, q: &MPoly) -> MPoly {
    if p.is_zero() {
        return q.canonical();
    }
    if q.is_zero() {
        return p.canonical();
    }
    if p.is_constant() || q.is_constant() {
        return MPoly::one();
    }
    let v = match top_var(p, q) {
        Some(v) => v,
        None => return MPoly::one(),
    };
    if let Some(g) = heuristic_gcd(&p.canonical(), &q.canonical()) {
        return g.canonical();
    }
    if !p.has_var(v) {
        return gcd(p, &content_in(q, v));
    }
    if !q.has_var(v) {
        return gcd(&content_in(p, v), q);
    }
    let (cp, pp) = primitive_in(p, v);
    let (cq, qq) = primitive_in(q, v);
    let c = gcd(&cp, &cq);
    let g = if pp == qq {
        pp
    } else if pp.deg(v) <= qq.deg(v) && qq.div_exact(&pp).is_some() {
        pp
    } else if qq.deg(v) < pp.deg(v) && pp.div_exact(&qq).is_some() {
        qq
    } else if image_coprime(&pp, &qq, v) {
        MPoly::one()
    } else {
        prs(pp, qq, v)
    };
    (&c * &g).canonical()
}

pub fn gcd_many<'a>(ps: impl IntoIterator<Item = &'a MPoly>) -> MPoly {
    let mut g = MPoly::zero();
    for p in ps {
        g = gcd(&g, p);
        if g.is_one() {
            break;
        }
    }
    g
}

pub fn lcm(p: &MPoly, q: &MPoly) -> MPoly {
    if p.is_zero() || q.is_zero() {
        return MPoly::zero();
    }
    let g = gcd(p, q);
    (&p.div_exact(&g).expect("gcd divides") * q).canonical()
}

/// Gcd of the coefficients of `p` viewed in `K[v]`, canonical.
pub fn content_in(p: &MPoly, v: Var) -> MPoly {
    if p.is_zero() {
        return MPoly::zero();
    }
    let mut cs = p.coeffs_in(v);
    cs.retain(|c| !c.is_zero());
    cs.sort_by_key(|c| c.len());
    gcd_many(cs.iter())
}

/// `(content, primitive part)` in `v`; the primitive part is canonical.
pub fn primitive_in(p: &MPoly, v: Var) -> (MPoly, MPoly) {
    let c = content_in(p, v);
    let pp = p.div_exact(&c).expect("content divides");
    let (s, pp) = pp.integer_normalize();
    (c.scale(&s), pp)
}

fn prs(a: MPoly, b: MPoly, v: Var) -> MPoly {
    let (mut a, mut b) = if a.deg(v) >= b.deg(v) { (a, b) } else { (b, a) };
    loop {
        let r = a.prem(&b, v);
        if r.is_zero() {
            return b;
        }
        if r.deg(v) == 0 {
            return MPoly::one();
        }
        a = b;
        b = primitive_in(&r, v).1;
    }
}

const PROBES: [[i64; 3]; 4] = [[3, 5, 7], [-4, 11, 2], [13, -6, 17], [23, 19, -29]];

/// Certifies `gcd(p, q)` has degree 0 in `v` from one good evaluation.
fn image_coprime(p: &MPoly, q: &MPoly, v: Var) -> bool {
    let lp = p.lead_coeff_in(v);
    let lq = q.lead_coeff_in(v);
    for probe in PROBES {
        let pt: [Rat; 3] = [rat(probe[0]), rat(probe[1]), rat(probe[2])];
        if lp.eval_all(&pt).is_zero() || lq.eval_all(&pt).is_zero() {
            continue;
        }
        let mut imgs = [
            MPoly::constant(pt[0].clone()),
            MPoly::constant(pt[1].clone()),
            MPoly::constant(pt[2].clone()),
        ];
        imgs[v.index()] = MPoly::var(v);
        let pi = p.substitute(&imgs);
        let qi = q.substitute(&imgs);
        return prs(pi.canonical(), qi.canonical(), v).deg(v) == 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let y = MPoly::var(Var::Y);
        let z = MPoly::var(Var::Z);
        let p = &(&y * &y) - &(&z * &z);
        assert_eq!(gcd(&p, &(&y - &z)), MPoly::linear(0, 1, -1, 0).canonical());
        let a = MPoly::linear(1, 1, 0, 0);
        let p = &a * &MPoly::linear(1, 0, 1, 0);
        let q = &a * &MPoly::linear(1, 0, -1, 0);
        assert_eq!(gcd(&p, &q), a);
        assert_eq!(gcd(&p.scale(&rat(-3)), &MPoly::zero()), p);
    }

    #[test]
    fn coprime_and_content() {
        let d1 = &(&MPoly::linear(1, 1, 0, 0) * &MPoly::linear(1, 0, 1, 0).pow(2)) + &MPoly::one();
        let s = d1.shift(1, 0, 0);
        assert!(gcd(&d1, &s).is_one());
        let xp = MPoly::linear(1, 0, 0, 1);
        let p = &xp * &MPoly::linear(0, 1, 1, 0);
        let q = &xp * &MPoly::linear(0, 1, 0, 2);
        assert_eq!(gcd(&p, &q), xp);
    }
}

/// Images whose evaluation point exceeds this many bits are not attempted.
const HEU_MAX_BITS: u64 = 6000;
const HEU_TRIES: usize = 6;

fn int_terms(p: &MPoly) -> Vec<(Mono, BigInt)> {
    p.terms().iter().map(|(m, c)| (*m, c.numer().clone())).collect()
}

fn from_int_terms(map: BTreeMap<Mono, BigInt>) -> MPoly {
    MPoly::from_terms(map.into_iter().filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m, Rat::from_integer(c))).collect())
}

fn eval_int(p: &[(Mono, BigInt)], v: Var, xi: &BigInt) -> Vec<(Mono, BigInt)> {
    let mut out: BTreeMap<Mono, BigInt> = BTreeMap::new();
    for (m, c) in p {
        let k = c * xi.pow(m.exp(v));
        *out.entry(m.with_exp(v, 0)).or_insert_with(BigInt::zero) += k;
    }
    out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn int_content(p: &[(Mono, BigInt)]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, (_, c)| g.gcd(c))
}

fn max_norm(p: &[(Mono, BigInt)]) -> BigInt {
    p.iter().map(|(_, c)| c.abs()).max().unwrap_or_else(BigInt::zero)
}

/// Symmetric remainder in `(-ξ/2, ξ/2]`.
fn smod(c: &BigInt, xi: &BigInt) -> BigInt {
    let r = c.mod_floor(xi);
    if &r * 2 > *xi {
        r - xi
    } else {
        r
    }
}

/// `Σ_i g_i v^i` from the ξ-adic digits of `h`.
fn reconstruct(h: &[(Mono, BigInt)], v: Var, xi: &BigInt) -> Vec<(Mono, BigInt)> {
    let mut out = BTreeMap::new();
    for (m, c) in h {
        let mut c = c.clone();
        let mut i = 0;
        while !c.is_zero() {
            let d = smod(&c, xi);
            c = (&c - &d) / xi;
            if !d.is_zero() {
                out.insert(m.with_exp(v, i), d);
            }
            i += 1;
        }
    }
    out.into_iter().collect()
}

fn divides(d: &[(Mono, BigInt)], p: &MPoly) -> bool {
    let dp = from_int_terms(d.iter().cloned().collect());
    p.div_exact(&dp).is_some()
}

/// Gcd over Z of integer polynomials, content included; `None` when the
/// evaluation heuristic fails.
fn heu_int(a: &[(Mono, BigInt)], b: &[(Mono, BigInt)]) -> Option<Vec<(Mono, BigInt)>> {
    if a.is_empty() {
        return Some(b.to_vec());
    }
    if b.is_empty() {
        return Some(a.to_vec());
    }
    let (ca, cb) = (int_content(a), int_content(b));
    let c = ca.gcd(&cb);
    let is_const = |p: &[(Mono, BigInt)]| p.len() == 1 && p[0].0 == Mono::ONE;
    if is_const(a) || is_const(b) {
        return Some(vec![(Mono::ONE, c)]);
    }
    let pa: Vec<(Mono, BigInt)> = a.iter().map(|(m, k)| (*m, k / &ca)).collect();
    let pb: Vec<(Mono, BigInt)> = b.iter().map(|(m, k)| (*m, k / &cb)).collect();
    let has = |p: &[(Mono, BigInt)], v: Var| p.iter().any(|(m, _)| m.exp(v) > 0);
    let v = [Var::Z, Var::Y, Var::X].into_iter().find(|&v| has(&pa, v) || has(&pb, v))?;
    let (ma, mb) = (from_int_terms(pa.iter().cloned().collect()), from_int_terms(pb.iter().cloned().collect()));
    let mut xi: BigInt = max_norm(&pa).min(max_norm(&pb)) * 2u32 + 29u32;
    for _ in 0..HEU_TRIES {
        if xi.bits() > HEU_MAX_BITS {
            return None;
        }
        let (ea, eb) = (eval_int(&pa, v, &xi), eval_int(&pb, v, &xi));
        if !ea.is_empty() && !eb.is_empty() {
            let h = heu_int(&ea, &eb)?;
            let g = reconstruct(&h, v, &xi);
            let gc = int_content(&g);
            if !gc.is_zero() {
                let g: Vec<(Mono, BigInt)> = g.into_iter().map(|(m, k)| (m, k / &gc)).collect();
                if divides(&g, &ma) && divides(&g, &mb) {
                    return Some(g.into_iter().map(|(m, k)| (m, k * &c)).collect());
                }
            }
        }
        xi = (&xi * 73794u32) / 27011u32;
    }
    None
}

/// Heuristic gcd of two primitive integer polynomials.
fn heuristic_gcd(a: &MPoly, b: &MPoly) -> Option<MPoly> {
    let g = heu_int(&int_terms(a), &int_terms(b))?;
    Some(from_int_terms(g.into_iter().collect()))
}
