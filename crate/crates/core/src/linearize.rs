//! Rewriting one remainder so that its linear combinations with a
//! reference remainder stay remainders.
//!
//! Each group of `s` whose `d` is `(y,z)`-shift equivalent to a reference
//! `d*` is moved onto `d*`. For integer-linear `d*` the `b` parts are then
//! moved along τ-orbits onto the factors of the reference `b*`, which keeps
//! the merged denominators σ_y^β-free.

use crate::arith::factor::factor;
use crate::arith::partial::decompose_in;
use crate::arith::upoly::upoly_to_ratfun;
use crate::arith::{MPoly, RatFun, Var};
use crate::abramov::telescoping_sum_y;
use crate::bireduce::{push_relocation, push_tau_difference, RemainderForm};
use crate::certificate::{Cert, CertMode, FracTerm};
use crate::error::{Error, Result};
use crate::shift::{is_shift_free, phi_inverse, phi_map, phi_poly, shift_equiv_yz, y_shift_distance, IntLinType};

/// `c = τ(q) − q + c′` with `τ = σ_y^β σ_z^{−α}`, so that the denominator of
/// `c′` has no factor in the τ-orbit of a factor of `b_star` other than that
/// factor itself.
pub fn shift_coprime_reduce(c: &RatFun, alpha: i64, beta: i64, b_star: &MPoly) -> Result<(RatFun, RatFun)> {
    if beta <= 0 {
        return Err(Error::InvalidArgument("beta must be positive".into()));
    }
    if c.den().has_var(Var::Z) || b_star.has_var(Var::Z) {
        return Err(Error::Precondition("denominators must be free of z".into()));
    }
    if !is_shift_free(c.den(), beta) || !is_shift_free(b_star, beta) {
        return Err(Error::Precondition("denominators must be σ_y^β-free".into()));
    }
    if c.is_zero() {
        return Ok((RatFun::zero(), RatFun::zero()));
    }
    let pc = phi_map(alpha, beta, c)?;
    let targets: Vec<MPoly> =
        factor(&phi_poly(alpha, beta, b_star)).factors.into_iter().filter(|f| f.base.has_var(Var::Y)).map(|f| f.base).collect();
    let fd = factor(pc.den());
    if !fd.all_certified() {
        return Err(Error::UncertifiedFactor(pc.den().to_string()));
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
    let moves: Vec<Option<(MPoly, i64)>> = yf
        .iter()
        .map(|(p, _)| targets.iter().find_map(|t| y_shift_distance(p, t).filter(|&m| m != 0).map(|m| (t.clone(), m))))
        .collect();
    if moves.iter().all(Option::is_none) {
        return Ok((RatFun::zero(), c.clone()));
    }
    let pf = decompose_in(Var::Y, pc.num(), &free, &yf);
    let mut q = RatFun::zero();
    let mut rest = upoly_to_ratfun(&pf.poly, Var::Y);
    for t in &pf.terms {
        let n = upoly_to_ratfun(&t.numer, Var::Y);
        match &moves[t.base] {
            None => rest = &rest + &n.div_poly(&yf[t.base].0.pow(t.power)),
            Some((target, m)) => {
                // p = σ_y^m(target): n/p^e = σ_y^m(w)
                let w = n.shift(0, -m, 0).div_poly(&target.pow(t.power));
                q = &q + &telescoping_sum_y(&w, *m);
                rest = &rest + &w;
            }
        }
    }
    Ok((phi_inverse(alpha, beta, &q)?, phi_inverse(alpha, beta, &rest)?))
}

/// Moves `c/d_s^j` onto `d_r = σ_y^λ σ_z^μ(d_s)`; returns the new numerator
/// over `d_r^j` and records the certificate parts.
#[allow(clippy::too_many_arguments)]
pub fn relocate_fraction(
    cert: &mut Cert,
    c: &RatFun,
    d_r: &MPoly,
    j: u32,
    lambda: i64,
    mu: i64,
    lin: Option<&IntLinType>,
    b_star: Option<&MPoly>,
) -> Result<RatFun> {
    let cw = c.shift(0, lambda, mu);
    if (lambda, mu) != (0, 0) && cert.mode.tracks() {
        push_relocation(cert, &FracTerm::new(&cw, vec![(d_r.clone(), j)]), -lambda, -mu, 1);
    }
    match (lin, b_star) {
        (Some(l), Some(bs)) => {
            let (q, rest) = shift_coprime_reduce(&cw, l.alpha, l.beta, bs)?;
            if !q.is_zero() && cert.mode.tracks() {
                push_tau_difference(cert, &FracTerm::new(&q, vec![(d_r.clone(), j)]), l.alpha, l.beta);
            }
            Ok(rest)
        }
        _ => Ok(cw),
    }
}

/// `s = Δ_y(g) + Δ_z(h) + t` where every group of `t` either uses a `d` of
/// `reference` or is shift inequivalent to all of them.
pub fn linearize_remainder(reference: &RemainderForm, s: &RemainderForm, mode: CertMode) -> Result<(Cert, RemainderForm)> {
    let mut cert = Cert::new(mode);
    let mut t = RemainderForm::zero();
    for g in &s.groups {
        let target = reference.groups.iter().find_map(|r| shift_equiv_yz(&r.d, &g.d).map(|(l, m)| (r, l, m)));
        let Some((rg, lambda, mu)) = target else {
            t.groups.push(g.clone());
            continue;
        };
        for term in &g.terms {
            let bs = rg.lin.as_ref().map(|_| rg.term(term.j).map(|x| x.b().clone()).unwrap_or_else(MPoly::one));
            let c = relocate_fraction(&mut cert, &term.c, &rg.d, term.j, lambda, mu, rg.lin.as_ref(), bs.as_ref())?;
            t.add(&rg.d, term.j, c);
        }
    }
    t.sort();
    Ok((cert, t))
}
