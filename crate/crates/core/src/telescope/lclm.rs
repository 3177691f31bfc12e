//! Telescoping class by class, combined by a least common left multiple.

use crate::arith::factor::Factorization;
use crate::arith::RatFun;
use crate::bireduce::{bivariate_abramov, RemainderForm};
use crate::certificate::{Cert, CertMode};
use crate::error::Result;
use crate::shift::shift_equiv_xyz;

use super::ct::ct_from_remainder;
use super::{op_lclm, CtOptions, OreOp, Status, TelescopeResult};

/// Splits a remainder into parts whose `d` lie in distinct
/// `(x,y,z)`-shift classes.
pub fn split_classes(r: &RemainderForm) -> Vec<RemainderForm> {
    let mut parts: Vec<RemainderForm> = Vec::new();
    for g in &r.groups {
        match parts.iter_mut().find(|p| p.groups.iter().any(|h| shift_equiv_xyz(&h.d, &g.d).is_some())) {
            Some(p) => p.groups.push(g.clone()),
            None => parts.push(RemainderForm { groups: vec![g.clone()] }),
        }
    }
    parts
}

pub fn telescope_by_lclm(f: &RatFun, den: &Factorization, opts: &CtOptions) -> Result<TelescopeResult> {
    let start = bivariate_abramov(f, den, opts.mode)?;
    if start.r.is_zero() {
        return ct_from_remainder(start.r, start.cert, opts);
    }
    let mut ops = Vec::new();
    let mut certs = Vec::new();
    let mut iterations = 0;
    let mut remainders = vec![start.r.clone()];
    // classes keep unevaluated certificates until the final combination
    let mode = if opts.mode == CertMode::Normalized { CertMode::Deferred } else { opts.mode };
    let inner = CtOptions { mode, ..opts.clone() };
    for part in split_classes(&start.r) {
        let res = ct_from_remainder(part, Cert::new(mode), &inner)?;
        iterations += res.iterations;
        if res.status == Status::NoTelescoper {
            return Ok(TelescopeResult { remainders, iterations, ..res });
        }
        remainders.extend(res.remainders.into_iter().skip(1));
        ops.push(res.op);
        certs.push(res.cert);
    }
    let (op, cof) = op_lclm(&ops)?;
    let cert = opts.mode.tracks().then(|| {
        let mut acc = op.apply_cert(&start.cert);
        for (l, c) in cof.iter().zip(&certs) {
            if let Some(c) = c {
                acc.add(&l.apply_cert(c));
            }
        }
        acc.finish();
        acc
    });
    let status = if op == OreOp::one() { Status::Summable } else { Status::Ok };
    Ok(TelescopeResult { status, order: op.order(), op, cert, iterations, remainders, existence: None })
}
