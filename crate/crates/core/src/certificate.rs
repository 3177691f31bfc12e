//! Certificates `g`, `h` kept as sums of fractions with factored
//! denominators.
//!
//! A term is `num / (zfree · Π base^e)` where `zfree` is free of z and each
//! base is a canonical irreducible polynomial of positive z-degree. Shifts
//! act factorwise, so denominators stay factored without refactoring.

use std::str::FromStr;

use crate::arith::factor::factor;
use crate::arith::modp;
use crate::arith::partial::{decompose, KPoly};
use crate::arith::{MPoly, RatFun, Var};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum CertMode {
    /// One reduced fraction per part, formed when a result is returned.
    #[default]
    Normalized,
    /// Unevaluated sum; identical denominators are merged.
    Deferred,
    /// No certificate work.
    None,
}

impl CertMode {
    pub fn tracks(self) -> bool {
        self != CertMode::None
    }
}

impl FromStr for CertMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "normalized" => Ok(CertMode::Normalized),
            "deferred" => Ok(CertMode::Deferred),
            "none" => Ok(CertMode::None),
            _ => Err(Error::InvalidArgument(format!("unknown certificate mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FracTerm {
    pub num: MPoly,
    /// Canonical pairwise coprime bases, sorted, with positive exponents;
    /// no base divides `num`.
    pub den: Vec<(MPoly, u32)>,
}

fn merge_bases(mut v: Vec<(MPoly, u32)>) -> Vec<(MPoly, u32)> {
    v.retain(|(_, e)| *e > 0);
    v.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Vec<(MPoly, u32)> = Vec::with_capacity(v.len());
    for (b, e) in v {
        match out.last_mut() {
            Some(last) if last.0 == b => last.1 += e,
            _ => out.push((b, e)),
        }
    }
    out
}

impl FracTerm {
    /// `f / Π base^e` where `f` has a z-free denominator and each base is
    /// canonical irreducible with positive z-degree.
    pub fn new(f: &RatFun, zfac: Vec<(MPoly, u32)>) -> FracTerm {
        debug_assert!(!f.den().has_var(Var::Z));
        let mut num = f.num().clone();
        let mut den = zfac;
        if !f.den().is_one() {
            let fd = factor(f.den());
            num = num.scale(&fd.unit.recip());
            den.extend(fd.factors.into_iter().map(|x| (x.base, x.mult)));
        }
        let mut t = FracTerm { num, den: merge_bases(den) };
        t.cancel();
        t
    }

    pub fn from_poly_over_zfree(f: &RatFun) -> FracTerm {
        FracTerm::new(f, Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn cancel(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let mut img = modp::image(&self.num);
        for (b, e) in self.den.iter_mut() {
            let bimg = modp::image(b).filter(|v| !v.is_empty());
            while *e > 0 {
                // a failed modular division proves that b does not divide num
                let qimg = match (&img, &bimg) {
                    (Some(n), Some(d)) => match modp::divide(n, d) {
                        Some(q) => Some(q),
                        None => break,
                    },
                    _ => None,
                };
                match self.num.div_exact(b) {
                    Some(q) => {
                        self.num = q;
                        img = qimg.or_else(|| modp::image(&self.num));
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|(_, e)| *e > 0);
    }

    /// Product of the z-free bases.
    pub fn zfree(&self) -> MPoly {
        self.den.iter().filter(|(b, _)| !b.has_var(Var::Z)).fold(MPoly::one(), |acc, (b, e)| &acc * &b.pow(*e))
    }

    /// Bases of positive z-degree.
    pub fn zfac(&self) -> Vec<(MPoly, u32)> {
        self.den.iter().filter(|(b, _)| b.has_var(Var::Z)).cloned().collect()
    }

    pub fn denominator(&self) -> MPoly {
        self.den.iter().fold(MPoly::one(), |acc, (b, e)| &acc * &b.pow(*e))
    }

    pub fn to_ratfun(&self) -> RatFun {
        RatFun::from_coprime(self.num.clone(), self.denominator())
    }

    pub fn shift(&self, dx: i64, dy: i64, dz: i64) -> FracTerm {
        let mut den: Vec<(MPoly, u32)> = self.den.iter().map(|(b, e)| (b.shift(dx, dy, dz), *e)).collect();
        den.sort_by(|a, b| a.0.cmp(&b.0));
        FracTerm { num: self.num.shift(dx, dy, dz), den }
    }

    /// Multiplication by a function with z-free denominator.
    pub fn mul_zfree(&self, c: &RatFun) -> FracTerm {
        let o = FracTerm::new(&RatFun::from_coprime(MPoly::one(), c.den().clone()), Vec::new());
        let mut den = self.den.clone();
        den.extend(o.den);
        let mut t = FracTerm { num: &(&self.num * c.num()) * &o.num, den: merge_bases(den) };
        t.cancel();
        t
    }

    pub fn neg(&self) -> FracTerm {
        FracTerm { num: -&self.num, den: self.den.clone() }
    }

    fn same_den(&self, o: &FracTerm) -> bool {
        self.den == o.den
    }

    /// Exact sum over the lcm of the factored denominators.
    pub fn add(&self, o: &FracTerm) -> FracTerm {
        let mut t = self.add_uncancelled(o);
        t.cancel();
        t
    }

    /// Sum over the lcm of the denominators, without removing common
    /// factors.
    fn add_uncancelled(&self, o: &FracTerm) -> FracTerm {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.same_den(o) {
            return FracTerm { num: &self.num + &o.num, den: self.den.clone() };
        }
        let mut den: Vec<(MPoly, u32)> = self.den.clone();
        for (b, e) in &o.den {
            match den.iter_mut().find(|(c, _)| c == b) {
                Some(entry) => entry.1 = entry.1.max(*e),
                None => den.push((b.clone(), *e)),
            }
        }
        den.sort_by(|a, b| a.0.cmp(&b.0));
        let cof = |t: &FracTerm| {
            let mut c = MPoly::one();
            for (b, e) in &den {
                let have = t.den.iter().find(|(c, _)| c == b).map(|p| p.1).unwrap_or(0);
                if *e > have {
                    c = &c * &b.pow(e - have);
                }
            }
            c
        };
        let num = &(&self.num * &cof(self)) + &(&o.num * &cof(o));
        FracTerm { num, den }
    }
}

/// Numerator size above which zero tests use a common denominator.
const LARGE_TERM: usize = 4000;

/// Sum of fraction terms, combined according to a [`CertMode`].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FracSum {
    pub terms: Vec<FracTerm>,
}

impl FracSum {
    pub fn zero() -> FracSum {
        FracSum { terms: Vec::new() }
    }

    pub fn from_term(t: FracTerm) -> FracSum {
        let mut s = FracSum::zero();
        s.push(t, CertMode::Deferred);
        s
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn push(&mut self, t: FracTerm, mode: CertMode) {
        if t.is_zero() {
            return;
        }
        match mode {
            CertMode::None => {}
            // normalized sums collapse once, in `Cert::finish`
            CertMode::Normalized | CertMode::Deferred => match self.terms.iter().position(|s| s.same_den(&t)) {
                Some(i) => {
                    let s = self.terms[i].add(&t);
                    if s.is_zero() {
                        self.terms.swap_remove(i);
                    } else {
                        self.terms[i] = s;
                    }
                }
                None => self.terms.push(t),
            },
        }
    }

    pub fn add(&mut self, o: &FracSum, mode: CertMode) {
        for t in &o.terms {
            self.push(t.clone(), mode);
        }
    }

    pub fn shift(&self, dx: i64, dy: i64, dz: i64) -> FracSum {
        FracSum { terms: self.terms.iter().map(|t| t.shift(dx, dy, dz)).collect() }
    }

    pub fn mul_zfree(&self, c: &RatFun, mode: CertMode) -> FracSum {
        let mut s = FracSum::zero();
        if c.is_zero() {
            return s;
        }
        for t in &self.terms {
            s.push(t.mul_zfree(c), mode);
        }
        s
    }

    pub fn neg(&self) -> FracSum {
        FracSum { terms: self.terms.iter().map(FracTerm::neg).collect() }
    }

    /// One fraction over the lcm of all factored denominators, merged
    /// pairwise so that intermediate denominators stay small.
    pub fn collapse(&self) -> FracTerm {
        let mut t = self.collapse_uncancelled();
        t.cancel();
        t
    }

    fn collapse_uncancelled(&self) -> FracTerm {
        let mut level: Vec<FracTerm> = self.terms.clone();
        if level.is_empty() {
            return FracTerm { num: MPoly::zero(), den: Vec::new() };
        }
        while level.len() > 1 {
            let mut next = Vec::with_capacity(level.len().div_ceil(2));
            let mut it = level.into_iter();
            while let Some(a) = it.next() {
                next.push(match it.next() {
                    Some(b) => a.add_uncancelled(&b),
                    None => a,
                });
            }
            level = next;
        }
        level.pop().expect("nonempty")
    }

    pub fn normalize(&mut self) {
        if self.terms.len() > 1 {
            let t = self.collapse();
            self.terms.clear();
            if !t.is_zero() {
                self.terms.push(t);
            }
        }
    }

    pub fn to_ratfun(&self) -> RatFun {
        match self.terms.len() {
            0 => RatFun::zero(),
            1 => self.terms[0].to_ratfun(),
            _ => self.collapse().to_ratfun(),
        }
    }

    /// Exact zero test by accumulating partial fractions in z per
    /// `(base, power)`.
    pub fn is_zero_exact(&self) -> bool {
        if self.terms.iter().any(|t| t.num.len() > LARGE_TERM) {
            // one large numerator makes partial fractions over Q(x, y)
            // costlier than a common denominator
            return self.collapse_uncancelled().num.is_zero();
        }
        let mut poly = KPoly::zero();
        let mut parts: Vec<(MPoly, u32, KPoly)> = Vec::new();
        for t in &self.terms {
            let zfac = t.zfac();
            let pf = decompose(&t.num, &t.zfree(), &zfac);
            poly = poly.add(&pf.poly);
            for p in pf.terms {
                let base = &zfac[p.base].0;
                match parts.iter_mut().find(|(b, e, _)| b == base && *e == p.power) {
                    Some(entry) => entry.2 = entry.2.add(&p.numer),
                    None => parts.push((base.clone(), p.power, p.numer)),
                }
            }
        }
        poly.is_zero() && parts.iter().all(|(_, _, n)| n.is_zero())
    }
}

impl std::fmt::Display for FracSum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})", t.to_ratfun())?;
        }
        Ok(())
    }
}

/// Pushes `sign · T_m t` where `σ_v^m(t) − t = Δ_v(T_m t)`.
pub fn push_tsum(sum: &mut FracSum, t: &FracTerm, v: Var, m: i64, sign: i64, mode: CertMode) {
    if !mode.tracks() || m == 0 {
        return;
    }
    let sh = |i: i64| match v {
        Var::X => t.shift(i, 0, 0),
        Var::Y => t.shift(0, i, 0),
        Var::Z => t.shift(0, 0, i),
    };
    let (range, s): (Vec<i64>, i64) = if m > 0 { ((0..m).collect(), sign) } else { ((m..0).collect(), -sign) };
    for i in range {
        let u = sh(i);
        sum.push(if s > 0 { u } else { u.neg() }, mode);
    }
}

/// The pair `(g, h)` of a reduction `f = Δ_y(g) + Δ_z(h) + r`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Cert {
    pub mode: CertMode,
    pub g: FracSum,
    pub h: FracSum,
}

impl Cert {
    pub fn new(mode: CertMode) -> Cert {
        Cert { mode, g: FracSum::zero(), h: FracSum::zero() }
    }

    pub fn push_g(&mut self, t: FracTerm) {
        self.g.push(t, self.mode);
    }

    pub fn push_h(&mut self, t: FracTerm) {
        self.h.push(t, self.mode);
    }

    /// Brings a normalized certificate to one reduced fraction per part.
    pub fn finish(&mut self) {
        if self.mode == CertMode::Normalized {
            self.g.normalize();
            self.h.normalize();
        }
    }

    pub fn add(&mut self, o: &Cert) {
        self.g.add(&o.g, self.mode);
        self.h.add(&o.h, self.mode);
    }

    pub fn shift_x(&self, k: i64) -> Cert {
        Cert { mode: self.mode, g: self.g.shift(k, 0, 0), h: self.h.shift(k, 0, 0) }
    }

    pub fn mul_x(&self, c: &RatFun) -> Cert {
        Cert { mode: self.mode, g: self.g.mul_zfree(c, self.mode), h: self.h.mul_zfree(c, self.mode) }
    }

    /// `Δ_y(g) + Δ_z(h)` as a sum of fraction terms.
    pub fn difference(&self) -> FracSum {
        let mut s = FracSum::zero();
        s.add(&self.g.shift(0, 1, 0), CertMode::Deferred);
        s.add(&self.g.neg(), CertMode::Deferred);
        s.add(&self.h.shift(0, 0, 1), CertMode::Deferred);
        s.add(&self.h.neg(), CertMode::Deferred);
        s
    }

    /// `Δ_y(g) + Δ_z(h)` as one rational function.
    pub fn difference_ratfun(&self) -> RatFun {
        let g = self.g.to_ratfun();
        let h = self.h.to_ratfun();
        &(&g.shift(0, 1, 0) - &g) + &(&h.shift(0, 0, 1) - &h)
    }
}
