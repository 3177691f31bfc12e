//! Operators `Σ c_i S_x^i` with coefficients in Q(x).

use std::fmt;

use crate::arith::linalg::{nullspace, primitive_vector};
use crate::arith::{MPoly, RatFun, Var};
use crate::certificate::Cert;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OreOp {
    /// `coeffs[i]` multiplies `S_x^i`; the last entry is nonzero.
    pub coeffs: Vec<RatFun>,
}

impl OreOp {
    pub fn new(mut coeffs: Vec<RatFun>) -> OreOp {
        debug_assert!(coeffs.iter().all(|c| !c.has_var(Var::Y) && !c.has_var(Var::Z)));
        while coeffs.last().is_some_and(RatFun::is_zero) {
            coeffs.pop();
        }
        OreOp { coeffs }
    }

    pub fn one() -> OreOp {
        OreOp { coeffs: vec![RatFun::one()] }
    }

    /// `S_x^k`
    pub fn shift_power(k: usize) -> OreOp {
        let mut c = vec![RatFun::zero(); k + 1];
        c[k] = RatFun::one();
        OreOp { coeffs: c }
    }

    pub fn from_polys(p: &[MPoly]) -> OreOp {
        OreOp::new(p.iter().cloned().map(RatFun::from_poly).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> &RatFun {
        self.coeffs.last().expect("nonzero operator")
    }

    pub fn apply(&self, f: &RatFun) -> RatFun {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(RatFun::zero(), |acc, (i, c)| &acc + &(c * &f.shift(i as i64, 0, 0)))
    }

    /// `Σ c_i σ_x^i` applied to a certificate.
    pub fn apply_cert(&self, c: &Cert) -> Cert {
        let mut out = Cert::new(c.mode);
        if !c.mode.tracks() {
            return out;
        }
        for (i, k) in self.coeffs.iter().enumerate() {
            if !k.is_zero() {
                out.add(&c.shift_x(i as i64).mul_x(k));
            }
        }
        out
    }

    /// Composition `self · o`, using `S_x · c = σ_x(c) · S_x`.
    pub fn mul(&self, o: &OreOp) -> OreOp {
        if self.is_zero() || o.is_zero() {
            return OreOp { coeffs: Vec::new() };
        }
        let mut c = vec![RatFun::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] = &c[i + j] + &(a * &b.shift(i as i64, 0, 0));
                }
            }
        }
        OreOp::new(c)
    }

    pub fn add(&self, o: &OreOp) -> OreOp {
        let n = self.coeffs.len().max(o.coeffs.len());
        let get = |v: &[RatFun], i: usize| v.get(i).cloned().unwrap_or_else(RatFun::zero);
        OreOp::new((0..n).map(|i| &get(&self.coeffs, i) + &get(&o.coeffs, i)).collect())
    }

    pub fn scale(&self, c: &RatFun) -> OreOp {
        OreOp::new(self.coeffs.iter().map(|k| c * k).collect())
    }

    pub fn monic(&self) -> OreOp {
        let inv = self.lc().inv();
        self.scale(&inv)
    }

    /// Content-free integer polynomial coefficients, positive leading
    /// coefficient; returns the scalar `κ` with `canonical = κ·self`.
    pub fn canonical_with_scale(&self) -> (OreOp, RatFun) {
        if self.is_zero() {
            return (self.clone(), RatFun::one());
        }
        let prim = primitive_vector(&self.coeffs);
        let k = prim.iter().zip(&self.coeffs).find(|(_, c)| !c.is_zero()).map(|(p, c)| &RatFun::from_poly(p.clone()) / c).unwrap();
        (OreOp::from_polys(&prim), k)
    }

    pub fn canonical(&self) -> OreOp {
        self.canonical_with_scale().0
    }

    /// Equality up to a nonzero Q(x) factor.
    pub fn equal_up_to_scalar(&self, o: &OreOp) -> bool {
        !self.is_zero() && !o.is_zero() && self.canonical() == o.canonical()
    }

    /// Canonical coefficient strings, lowest power first.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.canonical().coeffs.iter().map(|c| c.num().to_string()).collect()
    }

    /// `(q, r)` with `self = q·d + r` and `order(r) < order(d)`.
    pub fn right_divrem(&self, d: &OreOp) -> Result<(OreOp, OreOp)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = d.order();
        let mut r = self.clone();
        let mut q = OreOp { coeffs: Vec::new() };
        while !r.is_zero() && r.order() >= n {
            let m = r.order();
            let k = m - n;
            let c = r.lc() / &d.lc().shift(k as i64, 0, 0);
            let mut t = vec![RatFun::zero(); k + 1];
            t[k] = c;
            let term = OreOp::new(t);
            r = r.add(&term.mul(d).scale(&-&RatFun::one()));
            // the leading term cancels exactly
            debug_assert!(r.is_zero() || r.order() < m);
            q = q.add(&term);
        }
        Ok((q, r))
    }
}

impl fmt::Display for OreOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*S")?,
                _ => write!(f, "({c})*S^{i}")?,
            }
        }
        Ok(())
    }
}

/// Remainder of `S^k` modulo the left ideal of a monic operator, updated
/// from `S^{k−1}` by `S·Σ c_j S^j = Σ σ_x(c_j) S^{j+1}`.
fn next_remainder(prev: &[RatFun], monic: &OreOp) -> Vec<RatFun> {
    let n = monic.order();
    let mut out = vec![RatFun::zero(); n];
    let mut top = RatFun::zero();
    for (j, c) in prev.iter().enumerate() {
        let s = c.shift(1, 0, 0);
        if j + 1 == n {
            top = s;
        } else {
            out[j + 1] = s;
        }
    }
    if !top.is_zero() {
        for (j, l) in monic.coeffs[..n].iter().enumerate() {
            out[j] = &out[j] - &(&top * l);
        }
    }
    out
}

/// Least common left multiple in canonical form, with cofactors `L′_i`
/// such that `L = L′_i · ops[i]`.
pub fn op_lclm(ops: &[OreOp]) -> Result<(OreOp, Vec<OreOp>)> {
    if ops.is_empty() {
        return Err(Error::InvalidArgument("lclm of an empty list".into()));
    }
    if ops.iter().any(OreOp::is_zero) {
        return Err(Error::InvalidArgument("lclm of the zero operator".into()));
    }
    let monics: Vec<OreOp> = ops.iter().map(OreOp::monic).collect();
    let total: usize = monics.iter().map(OreOp::order).sum();
    let mut rems: Vec<Vec<Vec<RatFun>>> = monics
        .iter()
        .map(|m| {
            let n = m.order();
            let mut v = vec![RatFun::zero(); n];
            if n > 0 {
                v[0] = RatFun::one();
            }
            vec![v]
        })
        .collect();
    let mut lclm = None;
    for k in 0..=total {
        if k > 0 {
            for (i, m) in monics.iter().enumerate() {
                let next = next_remainder(rems[i].last().unwrap(), m);
                rems[i].push(next);
            }
        }
        // columns are S^0..S^k, rows the stacked remainder coordinates
        let nrows: usize = monics.iter().map(OreOp::order).sum();
        let mut rows = Vec::with_capacity(nrows);
        for (i, m) in monics.iter().enumerate() {
            for c in 0..m.order() {
                rows.push((0..=k).map(|col| rems[i][col][c].clone()).collect::<Vec<_>>());
            }
        }
        let ns = if rows.is_empty() { vec![vec![MPoly::one()]] } else { nullspace(&rows, k + 1) };
        if let Some(v) = ns.into_iter().find(|v| !v[k].is_zero()) {
            lclm = Some(OreOp::from_polys(&v).canonical());
            break;
        }
    }
    let l = lclm.ok_or_else(|| Error::InvalidArgument("lclm search exhausted".into()))?;
    let mut cof = Vec::with_capacity(ops.len());
    for o in ops {
        let (q, r) = l.right_divrem(o)?;
        if !r.is_zero() {
            return Err(Error::InvalidArgument("lclm is not a left multiple".into()));
        }
        cof.push(q);
    }
    Ok((l, cof))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(p: MPoly) -> RatFun {
        RatFun::from_poly(p)
    }

    #[test]
    fn application() {
        let x = MPoly::var(Var::X);
        assert_eq!(OreOp::one().apply(&c(x.clone())), c(x.clone()));
        let d = OreOp::new(vec![c(MPoly::int(-1)), RatFun::one()]);
        assert_eq!(d.apply(&c(x.clone())), RatFun::one());
    }

    #[test]
    fn lclm_small() {
        let x = MPoly::var(Var::X);
        let a = OreOp::new(vec![c(-&x), RatFun::one()]);
        let (l, cof) = op_lclm(&[a.clone(), OreOp::one()]).unwrap();
        assert!(l.equal_up_to_scalar(&a));
        assert_eq!(cof[1], l);
        let (l, _) = op_lclm(&[a.clone(), a.clone()]).unwrap();
        assert!(l.equal_up_to_scalar(&a));
        let b = OreOp::new(vec![c(MPoly::int(-1)), RatFun::one()]);
        let (l, cof) = op_lclm(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(l.order(), 2);
        assert_eq!(cof[0].mul(&a), l);
        assert_eq!(cof[1].mul(&b), l);
        assert!(op_lclm(&[]).is_err());
    }
}
