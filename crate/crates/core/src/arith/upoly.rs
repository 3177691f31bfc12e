//! Dense univariate polynomials over an exact field.

use num_traits::{One, Zero};

use super::mono::{Mono, Var};
use super::mpoly::{rat, MPoly, Rat};
use super::ratfun::RatFun;

pub trait Field: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rat(r: Rat) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Field for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_rat(r: Rat) -> Self {
        r
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
}

impl Field for RatFun {
    fn zero() -> Self {
        RatFun::zero()
    }
    fn one() -> Self {
        RatFun::one()
    }
    fn from_rat(r: Rat) -> Self {
        RatFun::constant(r)
    }
    fn is_zero(&self) -> bool {
        RatFun::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// `sum c[k] * t^k`, trimmed so the last entry is nonzero.
#[derive(Clone, PartialEq, Debug)]
pub struct UPoly<F: Field> {
    c: Vec<F>,
}

impl<F: Field> UPoly<F> {
    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        UPoly::constant(F::one())
    }

    pub fn constant(a: F) -> Self {
        UPoly::new(vec![a])
    }

    /// The variable `t` itself.
    pub fn t() -> Self {
        UPoly::new(vec![F::zero(), F::one()])
    }

    pub fn new(mut c: Vec<F>) -> Self {
        while c.last().is_some_and(|a| a.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> F {
        self.c.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn deg(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn lc(&self) -> F {
        self.c.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        UPoly::new((0..n).map(|k| self.coeff(k).add(&o.coeff(k))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        UPoly::new((0..n).map(|k| self.coeff(k).sub(&o.coeff(k))).collect())
    }

    pub fn neg(&self) -> Self {
        UPoly { c: self.c.iter().map(|a| a.neg()).collect() }
    }

    pub fn scale(&self, a: &F) -> Self {
        if a.is_zero() {
            return UPoly::zero();
        }
        UPoly::new(self.c.iter().map(|b| b.mul(a)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![F::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        UPoly::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = UPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.deg() < d.deg() {
            return (UPoly::zero(), self.clone());
        }
        let dl = d.lc();
        let dn = d.c.len();
        let mut r = self.c.clone();
        let mut q = vec![F::zero(); r.len() - dn + 1];
        for k in (0..q.len()).rev() {
            let top = r[k + dn - 1].clone();
            if top.is_zero() {
                continue;
            }
            let t = top.div(&dl);
            for (i, di) in d.c.iter().enumerate() {
                if !di.is_zero() {
                    r[k + i] = r[k + i].sub(&t.mul(di));
                }
            }
            q[k] = t;
        }
        r.truncate(dn - 1);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return UPoly::zero();
        }
        let l = self.lc();
        UPoly::new(self.c.iter().map(|a| a.div(&l)).collect())
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*o = g`, `g` monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (UPoly::one(), UPoly::zero());
        let (mut t0, mut t1) = (UPoly::zero(), UPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let l = r0.lc();
        let inv = F::one().div(&l);
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Inverse of `self` modulo `m`; `None` if they are not coprime.
    pub fn inv_mod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = self.rem(m).ext_gcd(m);
        if g.deg() != 0 {
            return None;
        }
        Some(s.rem(m))
    }

    /// `p(t + a)`.
    pub fn shift(&self, a: &F) -> Self {
        let lin = UPoly::new(vec![a.clone(), F::one()]);
        let mut acc = UPoly::zero();
        for c in self.c.iter().rev() {
            acc = acc.mul(&lin).add(&UPoly::constant(c.clone()));
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        UPoly::new(
            self.c.iter().enumerate().skip(1).map(|(k, a)| a.mul(&F::from_rat(rat(k as i64)))).collect(),
        )
    }

    /// `G` with `G(t+1) - G(t) = self` and `G(0) = 0`.
    pub fn antidifference(&self) -> Self {
        if self.is_zero() {
            return UPoly::zero();
        }
        let n = self.c.len();
        let binom = binomials(n + 1);
        let mut g = vec![F::zero(); n + 1];
        for k in (0..n).rev() {
            // coefficient of t^k in G(t+1)-G(t) is sum_{i>k} g_i C(i,k)
            let mut acc = self.c[k].clone();
            for (i, gi) in g.iter().enumerate().skip(k + 2) {
                if !gi.is_zero() {
                    acc = acc.sub(&gi.mul(&F::from_rat(binom[i][k].clone())));
                }
            }
            g[k + 1] = acc.div(&F::from_rat(rat((k + 1) as i64)));
        }
        UPoly::new(g)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> UPoly<G> {
        UPoly::new(self.c.iter().map(f).collect())
    }
}

fn binomials(n: usize) -> Vec<Vec<Rat>> {
    let mut b = vec![vec![<Rat as Zero>::zero(); n + 1]; n + 1];
    for i in 0..=n {
        b[i][0] = <Rat as One>::one();
        for k in 1..=i {
            b[i][k] = &b[i - 1][k - 1] + &b[i - 1].get(k).cloned().unwrap_or_else(<Rat as Zero>::zero);
        }
    }
    b
}

/// Coefficients of `p` in `v` as elements of the field of fractions of the
/// remaining variables.
pub fn mpoly_to_upoly(p: &MPoly, v: Var) -> UPoly<RatFun> {
    UPoly::new(p.coeffs_in(v).into_iter().map(RatFun::from_poly).collect())
}

/// `f` as a polynomial in `v`; requires the denominator to be free of `v`.
pub fn ratfun_to_upoly(f: &RatFun, v: Var) -> UPoly<RatFun> {
    assert!(!f.den().has_var(v), "denominator depends on the main variable");
    let den = RatFun::from_poly(f.den().clone());
    UPoly::new(f.num().coeffs_in(v).into_iter().map(|c| &RatFun::from_poly(c) / &den).collect())
}

/// Reassembles `sum c_k v^k`.
pub fn upoly_to_ratfun(p: &UPoly<RatFun>, v: Var) -> RatFun {
    let mut l = MPoly::one();
    for c in p.coeffs() {
        if !c.is_zero() && !c.den().is_one() {
            l = super::gcd::lcm(&l, c.den());
        }
    }
    let mut terms = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let cof = l.div_exact(c.den()).expect("lcm divisible");
        let n = c.num() * &cof;
        for (m, a) in n.terms() {
            terms.push((m.mul(Mono::var(v, k as u32)), a.clone()));
        }
    }
    RatFun::from_coprime(MPoly::from_terms(terms), l)
}

/// Numerator over a common v-free denominator: `p = num / den`.
pub fn upoly_to_parts(p: &UPoly<RatFun>, v: Var) -> (MPoly, MPoly) {
    let f = upoly_to_ratfun(p, v);
    let (n, d) = f.into_parts();
    (n, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rat {
        rat(n)
    }

    #[test]
    fn euclid() {
        // (t-1)(t+2) and (t-1)(t+3)
        let a = UPoly::new(vec![q(-2), q(1), q(1)]);
        let b = UPoly::new(vec![q(-3), q(2), q(1)]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(g, UPoly::new(vec![q(-1), q(1)]));
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn antidifference_inverts() {
        let p = UPoly::new(vec![q(3), q(0), q(-2), q(5)]);
        let g = p.antidifference();
        assert_eq!(g.shift(&q(1)).sub(&g), p);
    }

    #[test]
    fn ratfun_roundtrip() {
        let f = RatFun::new(
            MPoly::from_terms(vec![(Mono::new(1, 0, 2), q(1)), (Mono::new(0, 1, 0), q(3))]),
            MPoly::linear(1, 1, 0, 0),
        );
        let u = ratfun_to_upoly(&f, Var::Z);
        assert_eq!(upoly_to_ratfun(&u, Var::Z), f);
    }
}
