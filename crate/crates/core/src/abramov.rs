//! Abramov reduction in y, with x and z as parameters, and its conjugate
//! for the operator τ = σ_y^β σ_z^{−α}.
//!
//! Every y-factor of the denominator is moved onto the canonical member of
//! its σ_y-orbit (see [`y_orbit_rep`]); the identity
//! `σ_y^m(w) − w = Δ_y(T_m w)` supplies the certificate. Because the target
//! depends only on the orbit, the remainder is unchanged by adding
//! σ_y-summable terms.

use num_integer::Integer;

use crate::arith::factor::factor;
use crate::arith::partial::decompose_in;
use crate::arith::upoly::upoly_to_ratfun;
use crate::arith::{MPoly, Rat, RatFun, Var};
use crate::error::{Error, Result};
use crate::shift::{phi_inverse, phi_map, phi_poly, y_orbit_rep};

/// `f = σ_y(g) − g + a/b` with `b` σ_y-free and `deg_y a < deg_y b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbramovResult {
    pub g: RatFun,
    pub a: MPoly,
    pub b: MPoly,
}

impl AbramovResult {
    pub fn remainder(&self) -> RatFun {
        RatFun::new(self.a.clone(), self.b.clone())
    }
}

/// `f = τ(g) − g + a/b`, `τ = σ_y^β σ_z^{−α}`, `a = Σ a_coeffs[i]·(αy + βz)^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauResult {
    pub alpha: i64,
    pub beta: i64,
    pub g: RatFun,
    pub a: MPoly,
    pub b: MPoly,
    pub a_coeffs: Vec<MPoly>,
}

impl TauResult {
    pub fn remainder(&self) -> RatFun {
        RatFun::new(self.a.clone(), self.b.clone())
    }
}

/// `T_m w` with `σ_y^m(w) − w = Δ_y(T_m w)`.
pub fn telescoping_sum_y(w: &RatFun, m: i64) -> RatFun {
    let mut acc = RatFun::zero();
    if m > 0 {
        for i in 0..m {
            acc = &acc + &w.shift(0, i, 0);
        }
    } else {
        for i in m..0 {
            acc = &acc - &w.shift(0, i, 0);
        }
    }
    acc
}

pub fn abramov_reduce_y(f: &RatFun) -> Result<AbramovResult> {
    if f.is_zero() {
        return Ok(AbramovResult { g: RatFun::zero(), a: MPoly::zero(), b: MPoly::one() });
    }
    let fd = factor(f.den());
    if !fd.all_certified() {
        return Err(Error::UncertifiedFactor(f.den().to_string()));
    }
    let mut free = MPoly::constant(fd.unit.clone());
    let mut yf = Vec::new();
    for fa in &fd.factors {
        if fa.base.has_var(Var::Y) {
            yf.push((fa.base.clone(), fa.mult));
        } else {
            free = &free * &fa.base.pow(fa.mult);
        }
    }
    let pf = decompose_in(Var::Y, f.num(), &free, &yf);
    let mut g = upoly_to_ratfun(&pf.poly.antidifference(), Var::Y);
    let mut r = RatFun::zero();
    for t in &pf.terms {
        let (base, _) = &yf[t.base];
        let n = upoly_to_ratfun(&t.numer, Var::Y);
        let (rep, k) = y_orbit_rep(base);
        let w = n.shift(0, k, 0).div_poly(&rep.pow(t.power));
        if k != 0 {
            g = &g + &telescoping_sum_y(&w, -k);
        }
        r = &r + &w;
    }
    let (a, b) = r.into_parts();
    Ok(AbramovResult { g, a, b })
}

/// Reduction modulo τ-differences for `f` polynomial in z over F(y).
pub fn tau_decompose(f: &RatFun, alpha: i64, beta: i64) -> Result<TauResult> {
    if beta <= 0 || alpha.gcd(&beta) != 1 {
        return Err(Error::InvalidArgument(format!("need beta > 0 and gcd(alpha, beta) = 1, got ({alpha}, {beta})")));
    }
    if f.den().has_var(Var::Z) {
        return Err(Error::Precondition("denominator must be free of z".into()));
    }
    let res = abramov_reduce_y(&phi_map(alpha, beta, f)?)?;
    let g = phi_inverse(alpha, beta, &res.g)?;
    let r = phi_inverse(alpha, beta, &res.remainder())?;
    let (a, b) = r.into_parts();
    Ok(TauResult { alpha, beta, g, a_coeffs: z_coefficients(&a, alpha, beta), a, b })
}

/// Coefficients `â_i(y)` with `a = Σ â_i·(αy + βz)^i`.
pub fn z_coefficients(a: &MPoly, alpha: i64, beta: i64) -> Vec<MPoly> {
    let unscale = [MPoly::var(Var::X), MPoly::var(Var::Y).scale(&Rat::new(1.into(), beta.into())), MPoly::zero()];
    phi_poly(alpha, beta, a).coeffs_in(Var::Z).iter().map(|p| p.substitute(&unscale)).collect()
}
