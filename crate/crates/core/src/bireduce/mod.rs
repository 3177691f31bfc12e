//! Primary reduction and the bivariate Abramov reduction with respect to
//! `(σ_y, σ_z)`.

pub mod form;

pub use form::{class_key, validate_combination, validate_remainder_form, Group, RemTerm, RemainderForm};

use crate::abramov::tau_decompose;
use crate::arith::factor::Factorization;
use crate::arith::partial::partial_fractions_z;
use crate::arith::upoly::upoly_to_ratfun;
use crate::arith::{MPoly, RatFun, Var};
use crate::certificate::{push_tsum, Cert, CertMode, FracSum, FracTerm};
use crate::error::{Error, Result};
use crate::shift::shift_equiv_yz;

/// `f = Δ_y(g) + Δ_z(h) + r`.
#[derive(Clone, Debug)]
pub struct BiReduceResult {
    pub cert: Cert,
    pub r: RemainderForm,
}

/// Records `u = σ_y^m σ_z^n(w) ` as `u = w + Δ_y(T^y_m σ_z^n w) + Δ_z(T^z_n w)`
/// with the given sign on the certificate.
pub fn push_relocation(cert: &mut Cert, w: &FracTerm, m: i64, n: i64, sign: i64) {
    if !cert.mode.tracks() {
        return;
    }
    let mode = cert.mode;
    push_tsum(&mut cert.g, &w.shift(0, 0, n), Var::Y, m, sign, mode);
    push_tsum(&mut cert.h, w, Var::Z, n, sign, mode);
}

/// `(τ(Q) − Q)` with `Q = q/d^j`, `τ = σ_y^β σ_z^{−α}`, pushed as `Δ_y`/`Δ_z` parts.
pub fn push_tau_difference(cert: &mut Cert, q: &FracTerm, alpha: i64, beta: i64) {
    if !cert.mode.tracks() || q.is_zero() {
        return;
    }
    let mode = cert.mode;
    let qa = q.shift(0, 0, -alpha);
    for k in 0..beta {
        cert.g.push(qa.shift(0, k, 0), mode);
    }
    if alpha > 0 {
        for k in 1..=alpha {
            cert.h.push(q.shift(0, 0, -k).neg(), mode);
        }
    } else {
        for k in 0..-alpha {
            cert.h.push(q.shift(0, 0, k), mode);
        }
    }
}

/// `(σ_y^β σ_z^{−α}(q) − q)/d^j = Δ_y(g) + Δ_z(h)` for `d` of type `(α, β)`.
pub fn split_tau_difference(q: &RatFun, d: &MPoly, j: u32, alpha: i64, beta: i64) -> Result<(RatFun, RatFun)> {
    if beta <= 0 {
        return Err(Error::InvalidArgument("beta must be positive".into()));
    }
    if q.den().has_var(Var::Z) {
        return Err(Error::Precondition("q must have a z-free denominator".into()));
    }
    let mut cert = Cert::new(CertMode::Normalized);
    push_tau_difference(&mut cert, &FracTerm::new(q, vec![(d.clone(), j)]), alpha, beta);
    Ok((cert.g.to_ratfun(), cert.h.to_ratfun()))
}

fn certified(den: &Factorization) -> Result<()> {
    match den.factors.iter().find(|f| !f.certified) {
        Some(f) => Err(Error::UncertifiedFactor(f.base.to_string())),
        None => Ok(()),
    }
}

/// Partial fractions in z, polynomial part sent to `Δ_z`, and every
/// `(y,z)`-shift class of z-factors merged onto its smallest member.
pub fn primary_reduce(f: &RatFun, den: &Factorization, mode: CertMode) -> Result<BiReduceResult> {
    let mut cert = Cert::new(mode);
    if f.is_zero() {
        return Ok(BiReduceResult { cert, r: RemainderForm::zero() });
    }
    certified(den)?;
    let (pf, zf) = partial_fractions_z(f, den)?;
    if mode.tracks() && !pf.poly.is_zero() {
        let h = upoly_to_ratfun(&pf.poly.antidifference(), Var::Z);
        cert.push_h(FracTerm::from_poly_over_zfree(&h));
    }
    // class representatives, smallest key first
    let mut order: Vec<usize> = (0..zf.len()).collect();
    order.sort_by(|&a, &b| class_key(&zf[a].0).cmp(&class_key(&zf[b].0)));
    let mut reps: Vec<usize> = Vec::new();
    let mut placement: Vec<(usize, i64, i64)> = vec![(0, 0, 0); zf.len()];
    for &i in &order {
        let found = reps.iter().find_map(|&r| shift_equiv_yz(&zf[i].0, &zf[r].0).map(|(m, n)| (r, m, n)));
        match found {
            Some(p) => placement[i] = p,
            None => {
                reps.push(i);
                placement[i] = (i, 0, 0);
            }
        }
    }
    let mut r = RemainderForm::zero();
    for t in &pf.terms {
        let (rep, m, n) = placement[t.base];
        let c = upoly_to_ratfun(&t.numer, Var::Z);
        // base = σ_y^m σ_z^n(rep), so the term is σ_y^m σ_z^n of w
        let wc = c.shift(0, -m, -n);
        if (m, n) != (0, 0) {
            let w = FracTerm::new(&wc, vec![(zf[rep].0.clone(), t.power)]);
            push_relocation(&mut cert, &w, m, n, 1);
        }
        r.add(&zf[rep].0, t.power, wc);
    }
    r.sort();
    Ok(BiReduceResult { cert, r })
}

/// Full reduction: primary reduction, then each integer-linear group is
/// reduced modulo τ-differences.
pub fn bivariate_abramov(f: &RatFun, den: &Factorization, mode: CertMode) -> Result<BiReduceResult> {
    let pre = primary_reduce(f, den, mode)?;
    let mut cert = pre.cert;
    let mut r = RemainderForm::zero();
    for g in &pre.r.groups {
        let Some(l) = &g.lin else {
            r.groups.push(g.clone());
            continue;
        };
        for t in &g.terms {
            let res = tau_decompose(&t.c, l.alpha, l.beta)?;
            if cert.mode.tracks() && !res.g.is_zero() {
                push_tau_difference(&mut cert, &FracTerm::new(&res.g, vec![(g.d.clone(), t.j)]), l.alpha, l.beta);
            }
            r.add(&g.d, t.j, res.remainder());
        }
    }
    r.sort();
    Ok(BiReduceResult { cert, r })
}

/// Reduction of an already grouped form, used on remainders and their
/// combinations.
pub fn reduce_form(form: &RemainderForm, mode: CertMode) -> Result<BiReduceResult> {
    let mut cert = Cert::new(mode);
    let mut r = RemainderForm::zero();
    for g in &form.groups {
        for t in &g.terms {
            match &g.lin {
                None => r.add(&g.d, t.j, t.c.clone()),
                Some(l) => {
                    let res = tau_decompose(&t.c, l.alpha, l.beta)?;
                    if cert.mode.tracks() && !res.g.is_zero() {
                        push_tau_difference(&mut cert, &FracTerm::new(&res.g, vec![(g.d.clone(), t.j)]), l.alpha, l.beta);
                    }
                    r.add(&g.d, t.j, res.remainder());
                }
            }
        }
    }
    r.sort();
    Ok(BiReduceResult { cert, r })
}

/// Decides `(σ_y, σ_z)`-summability; the certificate is returned when it is.
pub fn is_summable_yz(f: &RatFun, den: &Factorization) -> Result<(bool, Option<Cert>)> {
    let res = bivariate_abramov(f, den, CertMode::Normalized)?;
    if res.r.is_zero() {
        let mut cert = res.cert;
        cert.finish();
        Ok((true, Some(cert)))
    } else {
        Ok((false, None))
    }
}

/// Sum `Δ_y(g) + Δ_z(h)` of a certificate expressed as fraction terms.
pub fn cert_difference(cert: &Cert) -> FracSum {
    cert.difference()
}
