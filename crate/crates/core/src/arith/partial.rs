//! Partial fractions with respect to z over K = Q(x, y).

use super::factor::Factorization;
use super::mono::Var;
use super::mpoly::MPoly;
use super::ratfun::RatFun;
use super::upoly::{mpoly_to_upoly, UPoly};
use crate::error::{Error, Result};

pub type KPoly = UPoly<RatFun>;

#[derive(Clone, Debug, PartialEq)]
pub struct PfTerm {
    /// Index into the factor list passed in.
    pub base: usize,
    pub power: u32,
    /// `deg_z(numer) < deg_z(base)`.
    pub numer: KPoly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartialFractions {
    pub poly: KPoly,
    pub terms: Vec<PfTerm>,
}

/// Decomposes `num / (zfree * prod base_i^e_i)`; every base must have
/// positive z-degree, bases pairwise coprime, and `zfree` free of z.
pub fn decompose(num: &MPoly, zfree: &MPoly, factors: &[(MPoly, u32)]) -> PartialFractions {
    decompose_in(Var::Z, num, zfree, factors)
}

/// Same as [`decompose`] with respect to an arbitrary variable `v`.
pub fn decompose_in(v: Var, num: &MPoly, free: &MPoly, factors: &[(MPoly, u32)]) -> PartialFractions {
    debug_assert!(!free.has_var(v));
    let scale = RatFun::from_poly(free.clone()).inv();
    let n = mpoly_to_upoly(num, v).scale(&scale);
    if factors.is_empty() {
        return PartialFractions { poly: n, terms: Vec::new() };
    }
    let bases: Vec<KPoly> = factors.iter().map(|(b, _)| mpoly_to_upoly(b, v)).collect();
    let powers: Vec<KPoly> = bases.iter().zip(factors).map(|(b, (_, e))| b.pow(*e)).collect();
    let full = powers.iter().fold(KPoly::one(), |a, b| a.mul(b));
    let (poly, rem) = n.divrem(&full);
    let mut terms = Vec::new();
    for (i, (b, (_, e))) in bases.iter().zip(factors).enumerate() {
        let mut c = if powers.len() == 1 {
            rem.clone()
        } else {
            let mut cof = KPoly::one();
            for (k, p) in powers.iter().enumerate() {
                if k != i {
                    cof = cof.mul(&p.rem(&powers[i]));
                }
            }
            let inv = cof.inv_mod(&powers[i]).expect("bases must be pairwise coprime");
            rem.rem(&powers[i]).mul(&inv).rem(&powers[i])
        };
        for k in 0..*e {
            let (q, r) = c.divrem(b);
            if !r.is_zero() {
                terms.push(PfTerm { base: i, power: e - k, numer: r });
            }
            c = q;
        }
    }
    PartialFractions { poly, terms }
}

/// Partial fractions of `f` against a claimed factorization of its
/// denominator. Factors free of z are absorbed into the coefficient field.
pub fn partial_fractions_z(f: &RatFun, den: &Factorization) -> Result<(PartialFractions, Vec<(MPoly, u32)>)> {
    check_factorization(f.den(), den)?;
    let mut zfree = MPoly::constant(den.unit.clone());
    let mut zf = Vec::new();
    for fa in &den.factors {
        if fa.base.has_var(Var::Z) {
            zf.push((fa.base.clone(), fa.mult));
        } else {
            zfree = &zfree * &fa.base.pow(fa.mult);
        }
    }
    // f = num/den with den = unit * prod; rescale so that the product matches
    Ok((decompose(f.num(), &zfree, &zf), zf))
}

/// Checks that `fd` multiplies out to `den` and has pairwise distinct bases.
pub fn check_factorization(den: &MPoly, fd: &Factorization) -> Result<()> {
    if fd.expand() != *den {
        return Err(Error::InvalidFactorization(format!("product of factors differs from denominator {den}")));
    }
    for (i, a) in fd.factors.iter().enumerate() {
        if a.base.is_constant() {
            return Err(Error::InvalidFactorization("constant factor".into()));
        }
        for b in &fd.factors[i + 1..] {
            if !super::gcd::gcd(&a.base, &b.base).is_constant() {
                return Err(Error::InvalidFactorization(format!("factors {} and {} are not coprime", a.base, b.base)));
            }
        }
    }
    Ok(())
}

/// `sum numer/base^power + poly` as a single fraction.
pub fn reassemble(pf: &PartialFractions, factors: &[(MPoly, u32)]) -> RatFun {
    let mut acc = super::upoly::upoly_to_ratfun(&pf.poly, Var::Z);
    for t in &pf.terms {
        let n = super::upoly::upoly_to_ratfun(&t.numer, Var::Z);
        acc = &acc + &n.div_poly(&factors[t.base].0.pow(t.power));
    }
    acc
}
