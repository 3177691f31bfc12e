use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::mono::{Mono, Var};

pub type Rat = BigRational;

/// Term-pair count above which products use the dense modular kernel.
const DENSE_THRESHOLD: usize = 1 << 16;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat2(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Sparse polynomial in Q[x, y, z].
///
/// Terms are kept sorted in strictly descending lexicographic order
/// (z > y > x) with no zero coefficients, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MPoly {
    terms: Vec<(Mono, Rat)>,
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly { terms: Vec::new() }
    }

    pub fn one() -> MPoly {
        MPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> MPoly {
        if c.is_zero() {
            MPoly::zero()
        } else {
            MPoly { terms: vec![(Mono::ONE, c)] }
        }
    }

    pub fn int(n: i64) -> MPoly {
        MPoly::constant(rat(n))
    }

    pub fn var(v: Var) -> MPoly {
        MPoly { terms: vec![(Mono::var(v, 1), Rat::one())] }
    }

    pub fn monomial(m: Mono, c: Rat) -> MPoly {
        if c.is_zero() {
            MPoly::zero()
        } else {
            MPoly { terms: vec![(m, c)] }
        }
    }

    /// Linear polynomial `cx*x + cy*y + cz*z + c0`.
    pub fn linear(cx: i64, cy: i64, cz: i64, c0: i64) -> MPoly {
        MPoly::from_terms(vec![
            (Mono::var(Var::X, 1), rat(cx)),
            (Mono::var(Var::Y, 1), rat(cy)),
            (Mono::var(Var::Z, 1), rat(cz)),
            (Mono::ONE, rat(c0)),
        ])
    }

    pub fn from_terms(mut terms: Vec<(Mono, Rat)>) -> MPoly {
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Mono, Rat)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        MPoly { terms: out }
    }

    pub fn terms(&self) -> &[(Mono, Rat)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Mono, Rat)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Mono::ONE && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == Mono::ONE)
    }

    pub fn constant_value(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 if self.terms[0].0 == Mono::ONE => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Mono, Rat)> {
        self.terms.first()
    }

    pub fn lc(&self) -> Rat {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(Rat::zero)
    }

    /// Degree in `v`; zero for the zero polynomial (callers check `is_zero`).
    pub fn deg(&self, v: Var) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.total()).max().unwrap_or(0)
    }

    pub fn has_var(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(v) > 0)
    }

    pub fn is_free_of(&self, v: Var) -> bool {
        !self.has_var(v)
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    pub fn mul_term(&self, mono: Mono, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(m, a)| (m.mul(mono), a * c)).collect() }
    }

    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coefficients with respect to `v`: `self = sum_k out[k] * v^k`.
    pub fn coeffs_in(&self, v: Var) -> Vec<MPoly> {
        if self.is_zero() {
            return Vec::new();
        }
        let n = self.deg(v) as usize;
        let mut buckets: Vec<Vec<(Mono, Rat)>> = vec![Vec::new(); n + 1];
        for (m, c) in &self.terms {
            buckets[m.exp(v) as usize].push((m.with_exp(v, 0), c.clone()));
        }
        buckets
            .into_iter()
            .map(|b| {
                if v == Var::Z {
                    // removing the top variable keeps the relative order
                    MPoly { terms: b }
                } else {
                    MPoly::from_terms(b)
                }
            })
            .collect()
    }

    pub fn from_coeffs_in(v: Var, coeffs: &[MPoly]) -> MPoly {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                terms.push((m.mul(Mono::var(v, k as u32)), a.clone()));
            }
        }
        MPoly::from_terms(terms)
    }

    pub fn coeff_in(&self, v: Var, k: u32) -> MPoly {
        MPoly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.exp(v) == k)
                .map(|(m, c)| (m.with_exp(v, 0), c.clone()))
                .collect(),
        )
    }

    pub fn lead_coeff_in(&self, v: Var) -> MPoly {
        self.coeff_in(v, self.deg(v))
    }

    pub fn derivative(&self, v: Var) -> MPoly {
        MPoly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.exp(v) > 0)
                .map(|(m, c)| {
                    let e = m.exp(v);
                    (m.with_exp(v, e - 1), c * rat(e as i64))
                })
                .collect(),
        )
    }

    /// Simultaneous substitution `x -> imgs[0], y -> imgs[1], z -> imgs[2]`.
    pub fn substitute(&self, imgs: &[MPoly; 3]) -> MPoly {
        self.subst_level(2, imgs)
    }

    fn subst_level(&self, level: usize, imgs: &[MPoly; 3]) -> MPoly {
        if self.is_zero() {
            return MPoly::zero();
        }
        let v = Var::ALL[level];
        if !self.has_var(v) {
            return if level == 0 { self.clone() } else { self.subst_level(level - 1, imgs) };
        }
        let coeffs = self.coeffs_in(v);
        let sub = |c: &MPoly| if level == 0 { c.clone() } else { c.subst_level(level - 1, imgs) };
        let img = &imgs[level];
        if *img == MPoly::var(v) {
            let parts: Vec<MPoly> = coeffs.iter().map(sub).collect();
            return MPoly::from_coeffs_in(v, &parts);
        }
        let mut acc = MPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * img) + &sub(c);
        }
        acc
    }

    /// `p(x + dx, y + dy, z + dz)`.
    pub fn shift(&self, dx: i64, dy: i64, dz: i64) -> MPoly {
        if dx == 0 && dy == 0 && dz == 0 {
            return self.clone();
        }
        let imgs = [
            MPoly::linear(1, 0, 0, dx),
            MPoly::linear(0, 1, 0, dy),
            MPoly::linear(0, 0, 1, dz),
        ];
        self.substitute(&imgs)
    }

    pub fn shift_var(&self, v: Var, by: i64) -> MPoly {
        let mut s = [0i64; 3];
        s[v.index()] = by;
        self.shift(s[0], s[1], s[2])
    }

    /// Substitute the rational value `val` for `v`.
    pub fn eval_var(&self, v: Var, val: &Rat) -> MPoly {
        let mut imgs = [MPoly::var(Var::X), MPoly::var(Var::Y), MPoly::var(Var::Z)];
        imgs[v.index()] = MPoly::constant(val.clone());
        self.substitute(&imgs)
    }

    pub fn eval_all(&self, pt: &[Rat; 3]) -> Rat {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in Var::ALL {
                let e = m.exp(v);
                if e > 0 {
                    t *= num_traits::pow(pt[v.index()].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(MPoly::zero());
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        for v in Var::ALL {
            if self.deg(v) < d.deg(v) {
                return None;
            }
        }
        // over primitive integer polynomials the quotient is integral, so a
        // leading coefficient not divisible by lc(d) proves non-divisibility
        let (ss, sp) = self.integer_normalize();
        let (ds, dp) = d.integer_normalize();
        let (dm, dc) = (dp.terms[0].0, dp.terms[0].1.numer().clone());
        let dint: Vec<(Mono, BigInt)> = dp.terms[1..].iter().map(|(m, c)| (*m, c.numer().clone())).collect();
        let mut r: std::collections::BTreeMap<Mono, BigInt> = sp.terms.iter().map(|(m, c)| (*m, c.numer().clone())).collect();
        let mut q = Vec::new();
        while let Some((rm, rc)) = r.pop_last() {
            if !dm.divides(rm) {
                return None;
            }
            let (tc, rem) = rc.div_rem(&dc);
            if !rem.is_zero() {
                return None;
            }
            let tm = Mono::quo(rm, dm);
            for (m, c) in &dint {
                let p = c * &tc;
                match r.entry(m.mul(tm)) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= p;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-p);
                    }
                }
            }
            q.push((tm, tc));
        }
        let k = ss / ds;
        Some(MPoly { terms: q.into_iter().map(|(m, c)| (m, &k * Rat::from_integer(c))).collect() })
    }

    /// Pseudo-remainder of `self` by `d` with respect to `v`.
    pub fn prem(&self, d: &MPoly, v: Var) -> MPoly {
        let n = d.deg(v);
        let lcd = d.lead_coeff_in(v);
        let mut r = self.clone();
        while !r.is_zero() && r.deg(v) >= n {
            let k = r.deg(v);
            let lcr = r.lead_coeff_in(v);
            let t = lcr.mul_term(Mono::var(v, k - n), &Rat::one());
            r = &(&r * &lcd) - &(&t * d);
        }
        r
    }

    /// Writes `self = scale * prim` where `prim` has coprime integer
    /// coefficients and a positive leading coefficient.
    pub fn integer_normalize(&self) -> (Rat, MPoly) {
        if self.is_zero() {
            return (Rat::one(), MPoly::zero());
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for (_, c) in &self.terms {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        let mut scale = Rat::new(num, den);
        if self.terms[0].1.is_negative() {
            scale = -scale;
        }
        let inv = scale.recip();
        (scale, self.scale(&inv))
    }

    /// Primitive integer associate with positive leading coefficient.
    pub fn canonical(&self) -> MPoly {
        self.integer_normalize().1
    }

    pub fn map_coeffs(&self, f: impl Fn(&Rat) -> Rat) -> MPoly {
        MPoly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))).collect())
    }

    /// Whether every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    pub fn max_abs_coeff(&self) -> Rat {
        self.terms.iter().map(|(_, c)| c.abs()).max().unwrap_or_else(Rat::zero)
    }

    fn merge(&self, other: &MPoly, negate: bool) -> MPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -b[j].1.clone() } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate { -t.1.clone() } else { t.1.clone() };
            out.push((t.0, c));
        }
        MPoly { terms: out }
    }

    /// `(D, [(m, D·c)])` with `D` the lcm of the coefficient denominators.
    fn integer_terms(&self) -> (BigInt, Vec<(Mono, BigInt)>) {
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            if !c.denom().is_one() {
                den = den.lcm(c.denom());
            }
        }
        let ts = self.terms.iter().map(|(m, c)| (*m, c.numer() * (&den / c.denom()))).collect();
        (den, ts)
    }

    fn mul_impl(&self, other: &MPoly) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(*m, c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(*m, c);
        }
        // integer products over a common denominator, one reduction per term
        let (da, ia) = self.integer_terms();
        let (db, ib) = other.integer_terms();
        let den = da * db;
        if ia.len() * ib.len() >= DENSE_THRESHOLD {
            if let Some(ts) = super::kernel::mul_dense(&ia, &ib) {
                let mut terms: Vec<(Mono, Rat)> = ts.into_iter().map(|(m, c)| (m, Rat::new(c, den.clone()))).collect();
                terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                return MPoly { terms };
            }
        }
        let mut acc: std::collections::HashMap<Mono, BigInt> = std::collections::HashMap::with_capacity(ia.len() * 2);
        for (ma, ca) in &ia {
            for (mb, cb) in &ib {
                let p = ca * cb;
                acc.entry(ma.mul(*mb)).and_modify(|c| *c += &p).or_insert(p);
            }
        }
        let mut terms: Vec<(Mono, Rat)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m, Rat::new(c, den.clone()))).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MPoly { terms }
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !a.is_one() || *m == Mono::ONE {
                parts.push(a.to_string());
            }
            for v in Var::ALL {
                match m.exp(v) {
                    0 => {}
                    1 => parts.push(v.name().to_string()),
                    e => parts.push(format!("{}^{}", v.name(), e)),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&MPoly> for &MPoly {
            type Output = MPoly;
            fn $m(self, rhs: &MPoly) -> MPoly {
                let f: fn(&MPoly, &MPoly) -> MPoly = $body;
                f(self, rhs)
            }
        }
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: &MPoly) -> MPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<MPoly> for &MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.merge(b, false));
binop!(Sub, sub, |a, b| a.merge(b, true));
binop!(Mul, mul, |a, b| a.mul_impl(b));

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl AddAssign<&MPoly> for MPoly {
    fn add_assign(&mut self, rhs: &MPoly) {
        *self = self.merge(rhs, false);
    }
}

impl SubAssign<&MPoly> for MPoly {
    fn sub_assign(&mut self, rhs: &MPoly) {
        *self = self.merge(rhs, true);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> MPoly {
        MPoly::var(Var::X)
    }
    fn y() -> MPoly {
        MPoly::var(Var::Y)
    }
    fn z() -> MPoly {
        MPoly::var(Var::Z)
    }

    #[test]
    fn arithmetic_and_order() {
        let p = &(&x() + &y()) * &(&x() - &y());
        assert_eq!(p, &(&x() * &x()) - &(&y() * &y()));
        assert_eq!(p.leading().unwrap().0, Mono::var(Var::Y, 2));
        assert_eq!((&p - &p), MPoly::zero());
    }

    #[test]
    fn exact_division() {
        let a = &x() + &z();
        let b = &y() - &MPoly::int(3);
        let p = &a * &b;
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!((&p + &MPoly::one()).div_exact(&a), None);
    }

    #[test]
    fn shift_composes() {
        let p = &(&x() * &y()) + &z().pow(2);
        let s = p.shift(1, -2, 3).shift(-1, 2, -3);
        assert_eq!(s, p);
        assert_eq!((&(&x() + &y()) + &z()).shift(1, 1, 1), MPoly::linear(1, 1, 1, 3));
    }

    #[test]
    fn coefficient_roundtrip() {
        let p = &(&x() * &z().pow(2)) + &(&y() * &z()) + MPoly::int(7);
        let cs = p.coeffs_in(Var::Z);
        assert_eq!(cs.len(), 3);
        assert_eq!(MPoly::from_coeffs_in(Var::Z, &cs), p);
        let cy = p.coeffs_in(Var::Y);
        assert_eq!(MPoly::from_coeffs_in(Var::Y, &cy), p);
    }

    #[test]
    fn normalization() {
        let p = MPoly::from_terms(vec![(Mono::var(Var::Z, 1), rat2(-2, 3)), (Mono::ONE, rat2(4, 9))]);
        let (s, q) = p.integer_normalize();
        assert_eq!(q, MPoly::linear(0, 0, 3, -2));
        assert_eq!(q.scale(&s), p);
    }
}
