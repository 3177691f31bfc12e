//! Factorization in Q[x, y, z].
//!
//! Square-free decomposition (Yun) and content splitting are followed by an
//! irreducibility certificate when one is cheap (a variable of degree one, or
//! an irreducible univariate image). Otherwise the polynomial is made monic in
//! a main variable, a univariate image is factored over Z and the factors are
//! lifted by linear Hensel lifting in the ideal of the remaining variables,
//! with exhaustive recombination.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::gcd::{content_in, gcd};
use super::mono::{Mono, Var};
use super::mpoly::{rat, MPoly, Rat};
use super::upoly::UPoly;
use super::zassenhaus::{self, ZPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    /// Canonical (primitive integer, positive leading coefficient).
    pub base: MPoly,
    pub mult: u32,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Rat,
    pub factors: Vec<Factor>,
}

impl Factorization {
    pub fn expand(&self) -> MPoly {
        let mut acc = MPoly::constant(self.unit.clone());
        for f in &self.factors {
            acc = &acc * &f.base.pow(f.mult);
        }
        acc
    }

    pub fn all_certified(&self) -> bool {
        self.factors.iter().all(|f| f.certified)
    }
}

/// Full factorization of a nonzero polynomial.
pub fn factor(p: &MPoly) -> Factorization {
    assert!(!p.is_zero(), "factor of zero");
    let (unit, q) = p.integer_normalize();
    let mut raw = Vec::new();
    if !q.is_constant() {
        factor_rec(&q, 1, &mut raw);
    }
    let mut merged: BTreeMap<MPoly, (u32, bool)> = BTreeMap::new();
    for (b, m, c) in raw {
        let e = merged.entry(b).or_insert((0, true));
        e.0 += m;
        e.1 &= c;
    }
    let mut factors: Vec<Factor> =
        merged.into_iter().map(|(base, (mult, certified))| Factor { base, mult, certified }).collect();
    factors.sort_by(|a, b| sort_key(&a.base).cmp(&sort_key(&b.base)));
    // canonical factors multiply to q up to a sign
    let prod = factors.iter().fold(MPoly::one(), |acc, f| &acc * &f.base.pow(f.mult));
    let unit = if prod == q { unit } else { -unit };
    Factorization { unit, factors }
}

fn sort_key(p: &MPoly) -> (u32, u32, u32, MPoly) {
    (p.deg(Var::Z), p.deg(Var::Y), p.total_degree(), p.clone())
}

fn top_var(p: &MPoly) -> Option<Var> {
    [Var::Z, Var::Y, Var::X].into_iter().find(|&v| p.has_var(v))
}

fn factor_rec(p: &MPoly, mult: u32, out: &mut Vec<(MPoly, u32, bool)>) {
    let v = match top_var(p) {
        Some(v) => v,
        None => return,
    };
    let cont = content_in(p, v);
    let prim = if cont.is_constant() {
        p.canonical()
    } else {
        factor_rec(&cont, mult, out);
        p.div_exact(&cont).expect("content divides").canonical()
    };
    for (q, i) in yun(&prim, v) {
        if q.is_constant() {
            continue;
        }
        for (f, cert) in factor_squarefree(&q) {
            out.push((f, mult * i, cert));
        }
    }
}

/// Square-free decomposition of a polynomial primitive in `v`.
pub fn yun(p: &MPoly, v: Var) -> Vec<(MPoly, u32)> {
    let dp = p.derivative(v);
    let a0 = gcd(p, &dp);
    let mut b = p.div_exact(&a0).expect("gcd divides");
    let mut c = dp.div_exact(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative(v);
    let mut out = Vec::new();
    let mut i = 1;
    while !b.is_constant() {
        let a = gcd(&b, &d);
        b = b.div_exact(&a).expect("gcd divides");
        c = d.div_exact(&a).expect("gcd divides");
        d = &c - &b.derivative(v);
        if !a.is_constant() {
            out.push((a.canonical(), i));
        }
        i += 1;
    }
    out
}

fn vars_of(p: &MPoly) -> Vec<Var> {
    Var::ALL.into_iter().filter(|&v| p.has_var(v)).collect()
}

fn to_zpoly(p: &MPoly, v: Var) -> ZPoly {
    let mut out: ZPoly = vec![BigInt::zero(); p.deg(v) as usize + 1];
    for (m, c) in p.terms() {
        debug_assert!(c.is_integer());
        out[m.exp(v) as usize] = c.to_integer();
    }
    out
}

fn from_zpoly(z: &ZPoly, v: Var) -> MPoly {
    MPoly::from_terms(
        z.iter().enumerate().map(|(k, c)| (Mono::var(v, k as u32), Rat::from_integer(c.clone()))).collect(),
    )
}

fn to_upoly(p: &MPoly, v: Var) -> UPoly<Rat> {
    UPoly::new(p.coeffs_in(v).into_iter().map(|c| c.constant_value().expect("univariate")).collect())
}

fn from_upoly(u: &UPoly<Rat>, v: Var) -> MPoly {
    MPoly::from_terms(u.coeffs().iter().enumerate().map(|(k, c)| (Mono::var(v, k as u32), c.clone())).collect())
}

/// Irreducible factors of a square-free canonical polynomial without
/// content in its top variable, each with a certification flag.
fn factor_squarefree(q: &MPoly) -> Vec<(MPoly, bool)> {
    let vars = vars_of(q);
    if vars.len() == 1 {
        let v = vars[0];
        return zassenhaus::factor_squarefree(&to_zpoly(q, v))
            .iter()
            .map(|f| (from_zpoly(f, v).canonical(), true))
            .collect();
    }
    let primitive_vars: Vec<Var> = vars.iter().copied().filter(|&v| content_in(q, v).is_constant()).collect();
    for &v in &primitive_vars {
        if q.deg(v) == 1 {
            return vec![(q.clone(), true)];
        }
    }
    let w = match primitive_vars.iter().copied().min_by_key(|&v| (q.deg(v), std::cmp::Reverse(v))) {
        Some(w) => w,
        None => return vec![(q.clone(), false)],
    };
    let others: Vec<Var> = vars.iter().copied().filter(|&v| v != w).collect();
    let lcw = q.lead_coeff_in(w);
    let mut best: Option<(usize, Vec<i64>)> = None;
    let mut good = 0;
    for pt in eval_points(others.len()).into_iter().take(60) {
        let mut full = [rat(0), rat(0), rat(0)];
        for (v, a) in others.iter().zip(&pt) {
            full[v.index()] = rat(*a);
        }
        if lcw.eval_all(&full).is_zero() {
            continue;
        }
        let img = eval_others(q, &others, &pt);
        if !gcd(&img, &img.derivative(w)).is_constant() {
            continue;
        }
        let count = zassenhaus::factor_squarefree(&zassenhaus::primitive(&to_zpoly(&img, w))).len();
        if count == 1 {
            return vec![(q.clone(), true)];
        }
        if best.as_ref().is_none_or(|b| count < b.0) {
            best = Some((count, pt));
        }
        good += 1;
        if good >= 6 {
            break;
        }
    }
    let pt = match best {
        Some((_, pt)) => pt,
        None => return vec![(q.clone(), false)],
    };
    match hensel_factor(q, w, &others, &pt) {
        Some(fs) => fs.into_iter().map(|f| (f, true)).collect(),
        None => vec![(q.clone(), false)],
    }
}

fn eval_points(n: usize) -> Vec<Vec<i64>> {
    let vals: Vec<i64> = vec![0, 1, -1, 2, -2, 3, -3, 5, -4, 7, 4, -5, 6, -7];
    let mut pts = Vec::new();
    if n == 1 {
        for &a in &vals {
            pts.push(vec![a]);
        }
    } else {
        for s in 0..vals.len() * 2 {
            for i in 0..=s {
                let j = s - i;
                if i < vals.len() && j < vals.len() {
                    pts.push(vec![vals[i], vals[j]]);
                }
            }
        }
    }
    pts
}

fn eval_others(q: &MPoly, others: &[Var], pt: &[i64]) -> MPoly {
    let mut imgs = [MPoly::var(Var::X), MPoly::var(Var::Y), MPoly::var(Var::Z)];
    for (v, a) in others.iter().zip(pt) {
        imgs[v.index()] = MPoly::int(*a);
    }
    q.substitute(&imgs)
}

fn other_degree(m: Mono, others: &[Var]) -> u32 {
    others.iter().map(|&v| m.exp(v)).sum()
}

fn truncate(p: &MPoly, others: &[Var], deg: u32) -> MPoly {
    MPoly::from_terms(p.terms().iter().filter(|(m, _)| other_degree(*m, others) <= deg).cloned().collect())
}

fn hensel_factor(q: &MPoly, w: Var, others: &[Var], pt: &[i64]) -> Option<Vec<MPoly>> {
    let n = q.deg(w);
    let c = q.lead_coeff_in(w);
    // G(W) = c^(n-1) q(W / c) is monic in W
    let coeffs = q.coeffs_in(w);
    let mut parts = Vec::with_capacity(coeffs.len());
    for (k, qk) in coeffs.iter().enumerate() {
        if k as u32 == n {
            parts.push(MPoly::one());
        } else {
            parts.push(qk * &c.pow(n - 1 - k as u32));
        }
    }
    let g = MPoly::from_coeffs_in(w, &parts);
    let mut shift = [0i64; 3];
    for (v, a) in others.iter().zip(pt) {
        shift[v.index()] = *a;
    }
    let gs = g.shift(shift[0], shift[1], shift[2]);
    let zero_pt = vec![0i64; others.len()];
    let img = eval_others(&gs, others, &zero_pt);
    let uni: Vec<MPoly> =
        zassenhaus::factor_squarefree(&to_zpoly(&img, w)).iter().map(|f| from_zpoly(f, w)).collect();
    if uni.len() == 1 {
        return Some(vec![q.clone()]);
    }
    let base: Vec<UPoly<Rat>> = uni.iter().map(|f| to_upoly(&f.canonical(), w)).collect();
    let r = base.len();
    let mut bez = Vec::with_capacity(r);
    for i in 0..r {
        let mut cof = UPoly::one();
        for (j, b) in base.iter().enumerate() {
            if j != i {
                cof = cof.mul(b);
            }
        }
        bez.push(cof.inv_mod(&base[i])?);
    }
    let dmax = gs.terms().iter().map(|(m, _)| other_degree(*m, others)).max().unwrap_or(0);
    let mut lifted: Vec<MPoly> = base.iter().map(|b| from_upoly(b, w)).collect();
    for k in 1..=dmax {
        let prod = lifted.iter().fold(MPoly::one(), |a, b| truncate(&(&a * b), others, dmax));
        let err = &gs - &prod;
        if err.is_zero() {
            break;
        }
        let mut by_mono: BTreeMap<Mono, Vec<(Mono, Rat)>> = BTreeMap::new();
        for (m, a) in err.terms() {
            if other_degree(*m, others) == k {
                let key = m.with_exp(w, 0);
                by_mono.entry(key).or_default().push((Mono::var(w, m.exp(w)), a.clone()));
            }
        }
        for (i, li) in lifted.iter_mut().enumerate() {
            let mut delta = Vec::new();
            for (mu, ts) in &by_mono {
                let e = to_upoly(&MPoly::from_terms(ts.clone()), w);
                let d = e.mul(&bez[i]).rem(&base[i]);
                for (m, a) in from_upoly(&d, w).terms() {
                    delta.push((m.mul(*mu), a.clone()));
                }
            }
            *li = &*li + &MPoly::from_terms(delta);
        }
    }
    // recombination
    let mut cur = gs.clone();
    let mut remaining = lifted;
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut hit = None;
        for sub in subsets(remaining.len(), size) {
            let cand = sub.iter().fold(MPoly::one(), |a, &i| truncate(&(&a * &remaining[i]), others, dmax));
            if let Some(quo) = cur.div_exact(&cand) {
                hit = Some((sub, cand, quo));
                break;
            }
        }
        match hit {
            Some((sub, cand, quo)) => {
                found.push(cand);
                cur = quo;
                remaining = remaining.into_iter().enumerate().filter(|(i, _)| !sub.contains(i)).map(|x| x.1).collect();
            }
            None => size += 1,
        }
    }
    if !cur.is_constant() {
        found.push(cur);
    }
    let mut out = Vec::new();
    for h in found {
        let back = h.shift(-shift[0], -shift[1], -shift[2]);
        let hc = back.coeffs_in(w);
        let scaled: Vec<MPoly> = hc.iter().enumerate().map(|(k, a)| a * &c.pow(k as u32)).collect();
        let full = MPoly::from_coeffs_in(w, &scaled);
        let cont = content_in(&full, w);
        out.push(full.div_exact(&cont)?.canonical());
    }
    let prod = out.iter().fold(MPoly::one(), |a, b| &a * b);
    if prod.canonical() != *q {
        return None;
    }
    out.sort_by(|a, b| sort_key(a).cmp(&sort_key(b)));
    Some(out)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
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

/// Whether `p` is irreducible with a certificate.
pub fn is_certified_irreducible(p: &MPoly) -> bool {
    let f = factor(p);
    f.factors.len() == 1 && f.factors[0].mult == 1 && f.factors[0].certified
}

impl One for Factorization {
    fn one() -> Self {
        Factorization { unit: Rat::one(), factors: Vec::new() }
    }
}

impl std::ops::Mul for Factorization {
    type Output = Factorization;
    fn mul(self, rhs: Factorization) -> Factorization {
        let mut merged: BTreeMap<MPoly, (u32, bool)> = BTreeMap::new();
        for f in self.factors.into_iter().chain(rhs.factors) {
            let e = merged.entry(f.base).or_insert((0, true));
            e.0 += f.mult;
            e.1 &= f.certified;
        }
        let mut factors: Vec<Factor> =
            merged.into_iter().map(|(base, (mult, certified))| Factor { base, mult, certified }).collect();
        factors.sort_by(|a, b| sort_key(&a.base).cmp(&sort_key(&b.base)));
        Factorization { unit: self.unit * rhs.unit, factors }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lin(a: i64, b: i64, c: i64, d: i64) -> MPoly {
        MPoly::linear(a, b, c, d)
    }

    fn check(p: &MPoly, expect: usize) -> Factorization {
        let f = factor(p);
        assert_eq!(f.expand(), *p, "{f:?}");
        assert!(f.all_certified(), "{f:?}");
        assert_eq!(f.factors.len(), expect, "{f:?}");
        f
    }

    #[test]
    fn repeated_linear_factors() {
        let p = &lin(1, 1, 0, 0).pow(2) * &lin(1, 0, 1, 0);
        let f = check(&p, 2);
        assert_eq!(f.factors.iter().map(|f| f.mult).sum::<u32>(), 3);
    }

    #[test]
    fn irreducible_inputs() {
        let d1 = &(&lin(1, 1, 0, 0) * &lin(1, 0, 1, 0).pow(2)) + &MPoly::one();
        check(&d1, 1);
        let d2 = &lin(1, 2, 3, 0).pow(2) + &MPoly::one();
        check(&d2, 1);
        check(&(&d2 * &lin(1, -1, 1, 0)), 2);
    }

    #[test]
    fn needs_lifting() {
        // every univariate image of (x^2 + y^2 z)(x + y + z^2) splits somewhere,
        // but the product of two nonlinear bivariate factors must be found by lifting
        let a = &(&MPoly::var(Var::Z).pow(2) * &lin(1, 0, 0, 0)) + &lin(0, 1, 0, 3);
        let b = &(&MPoly::var(Var::Z).pow(2) * &lin(0, 1, 0, 0)) + &lin(1, 0, 0, -1);
        check(&(&a * &b), 2);
        let c = &MPoly::var(Var::X).pow(2) - &MPoly::var(Var::Y).pow(2).scale(&rat(4));
        check(&c, 2);
        let e = &(&lin(1, 3, 0, 0) * &lin(1, 3, 0, 3)) * &lin(2, 1, 0, 1);
        check(&e, 3);
    }
}
