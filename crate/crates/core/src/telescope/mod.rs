//! Telescopers in Q(x)[S_x] for rational functions of x, y, z.

pub mod ct;
pub mod lclm;
pub mod ore;

pub use ct::{existence_check, reduction_ct, ExistenceReport, GroupExistence};
pub use lclm::telescope_by_lclm;
pub use ore::{op_lclm, OreOp};

use crate::arith::factor::Factorization;
use crate::arith::{MPoly, RatFun, Var};
use crate::bireduce::{is_summable_yz, RemainderForm};
use crate::certificate::{Cert, CertMode, FracSum, FracTerm};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Summable,
    Ok,
    NoTelescoper,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Summable => "summable",
            Status::Ok => "ok",
            Status::NoTelescoper => "no_telescoper",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CtOptions {
    pub mode: CertMode,
    pub enhancements: bool,
    /// Overrides the default safety bound on the order.
    pub max_order: Option<usize>,
}

impl Default for CtOptions {
    fn default() -> Self {
        CtOptions { mode: CertMode::Normalized, enhancements: true, max_order: None }
    }
}

impl CtOptions {
    /// Reads the `TRISUM_MAX_ORDER` override when no bound is set.
    pub fn with_env(mut self) -> Self {
        if self.max_order.is_none() {
            self.max_order = std::env::var("TRISUM_MAX_ORDER").ok().and_then(|v| v.trim().parse().ok());
        }
        self
    }
}

#[derive(Clone, Debug)]
pub struct TelescopeResult {
    pub status: Status,
    /// `1` when summable; zero operator when no telescoper exists.
    pub op: OreOp,
    pub cert: Option<Cert>,
    pub order: usize,
    pub iterations: usize,
    /// `r_0, r_1, …` of the reduction loop.
    pub remainders: Vec<RemainderForm>,
    pub existence: Option<ExistenceReport>,
}

/// Sum of `σ_x^i(f)` terms with factored denominators.
fn applied_terms(l: &OreOp, f: &RatFun, den: &Factorization) -> FracSum {
    let mut zfree = MPoly::constant(den.unit.clone());
    let mut zfac = Vec::new();
    for fa in &den.factors {
        if fa.base.has_var(Var::Z) {
            zfac.push((fa.base.clone(), fa.mult));
        } else {
            zfree = &zfree * &fa.base.pow(fa.mult);
        }
    }
    let base = FracTerm::new(&RatFun::new(f.num().clone(), zfree), zfac);
    let mut s = FracSum::zero();
    for (i, c) in l.coeffs.iter().enumerate() {
        if !c.is_zero() {
            s.push(base.shift(i as i64, 0, 0).mul_zfree(c), CertMode::Deferred);
        }
    }
    s
}

/// `L(f) = Δ_y(g) + Δ_z(h)` exactly when a certificate is given, otherwise
/// summability of `L(f)`.
pub fn verify_telescoper(l: &OreOp, f: &RatFun, den: &Factorization, cert: Option<&Cert>) -> Result<bool> {
    if l.is_zero() {
        return Ok(false);
    }
    match cert {
        Some(c) if c.mode.tracks() => {
            let mut s = applied_terms(l, f, den);
            s.add(&c.difference().neg(), CertMode::Deferred);
            Ok(s.is_zero_exact())
        }
        _ => {
            let lf = l.apply(f);
            let fd = crate::arith::factor::factor(lf.den());
            Ok(is_summable_yz(&lf, &fd)?.0)
        }
    }
}

/// Chooses the direct or the LCLM route.
pub fn telescope(f: &RatFun, den: &Factorization, opts: &CtOptions, use_lclm: bool) -> Result<TelescopeResult> {
    if use_lclm {
        telescope_by_lclm(f, den, opts)
    } else {
        reduction_ct(f, den, opts)
    }
}
