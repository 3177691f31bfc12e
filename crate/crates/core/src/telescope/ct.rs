//! The existence test and the reduction-based telescoping loop.

use std::collections::BTreeMap;

use crate::arith::factor::Factorization;
use crate::arith::gcd::lcm;
use crate::arith::linalg::nullspace;
use crate::arith::{MPoly, Mono, RatFun, Var};
use crate::bireduce::{bivariate_abramov, RemainderForm};
use crate::certificate::Cert;
use crate::error::{Error, Result};
use crate::linearize::linearize_remainder;
use crate::shift::{integer_linear_xy, is_shift_free, min_x_period, phi_poly, shift_equiv_yz, xy_shift_compatible, IntLinType};

use super::{CtOptions, OreOp, Status, TelescopeResult};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupExistence {
    pub d: MPoly,
    /// `(ξ, ζ, η)` with `σ_x^ξ(d) = σ_y^ζ σ_z^η(d)`.
    pub period: Option<(i64, i64, i64)>,
    /// One verdict per term of the group, in term order.
    pub b_ok: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExistenceReport {
    pub exists: bool,
    pub groups: Vec<GroupExistence>,
}

pub fn existence_check(r0: &RemainderForm) -> Result<ExistenceReport> {
    let mut groups = Vec::new();
    let mut exists = true;
    for g in &r0.groups {
        let period = min_x_period(&g.d);
        let mut b_ok = Vec::new();
        for t in &g.terms {
            let ok = match period {
                None => false,
                Some((xi, zeta, _)) => {
                    integer_linear_xy(t.b())?.linear && (g.lin.is_some() || xy_shift_compatible(t.b(), xi, zeta)?)
                }
            };
            b_ok.push(ok);
        }
        exists &= period.is_some() && b_ok.iter().all(|&b| b);
        groups.push(GroupExistence { d: g.d.clone(), period, b_ok });
    }
    Ok(ExistenceReport { exists, groups })
}

/// Safety bound on the loop length when no override is given.
pub fn default_max_order(r0: &RemainderForm, rep: &ExistenceReport) -> usize {
    let mut total = 0usize;
    for (g, e) in r0.groups.iter().zip(&rep.groups) {
        let xi = e.period.map(|p| p.0.unsigned_abs() as usize).unwrap_or(1);
        let beta = g.lin.as_ref().map(|l| l.beta as usize).unwrap_or(1);
        let degb = g.terms.iter().map(|t| t.b().deg(Var::Y) as usize).max().unwrap_or(0);
        total += xi * beta * g.multiplicity() as usize * (1 + degb);
    }
    (4 * total).max(8)
}

/// Per `(d, j)`: the lcm of all `b` seen so far.
#[derive(Clone, Debug, Default)]
struct Merged {
    groups: Vec<(MPoly, Option<IntLinType>, BTreeMap<u32, MPoly>)>,
}

impl Merged {
    fn absorb(&mut self, r: &RemainderForm) {
        for g in &r.groups {
            let idx = match self.groups.iter().position(|(d, _, _)| *d == g.d) {
                Some(i) => i,
                None => {
                    self.groups.push((g.d.clone(), g.lin.clone(), BTreeMap::new()));
                    self.groups.len() - 1
                }
            };
            let map = &mut self.groups[idx].2;
            for t in &g.terms {
                let e = map.entry(t.j).or_insert_with(MPoly::one);
                *e = lcm(e, t.b());
            }
        }
    }

    /// Reference remainder carrying only `d` and the merged `b`.
    fn reference(&self) -> RemainderForm {
        let mut r = RemainderForm::zero();
        for (d, _, map) in &self.groups {
            for (j, b) in map {
                r.add(d, *j, RatFun::new(MPoly::one(), b.clone()));
            }
        }
        r
    }

    /// Whether adding `t` keeps every combination a remainder form.
    fn compatible(&self, t: &RemainderForm) -> bool {
        for g in &t.groups {
            match self.groups.iter().find(|(d, _, _)| *d == g.d) {
                Some((_, lin, map)) => {
                    let Some(l) = lin else { continue };
                    for term in &g.terms {
                        let b = match map.get(&term.j) {
                            Some(b) => lcm(b, term.b()),
                            None => continue,
                        };
                        if !is_shift_free(&b, l.beta) {
                            return false;
                        }
                    }
                }
                None => {
                    if self.groups.iter().any(|(d, _, _)| shift_equiv_yz(d, &g.d).is_some()) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Coefficients (polynomials in x) of `p` grouped by its (y, z)-monomial.
fn yz_coefficients(p: &MPoly) -> BTreeMap<(u32, u32), MPoly> {
    let mut out: BTreeMap<(u32, u32), Vec<(Mono, crate::arith::Rat)>> = BTreeMap::new();
    for (m, c) in p.terms() {
        out.entry((m.exp(Var::Y), m.exp(Var::Z))).or_default().push((Mono::var(Var::X, m.exp(Var::X)), c.clone()));
    }
    out.into_iter().map(|(k, v)| (k, MPoly::from_terms(v))).collect()
}

/// Null vector of `Σ c_i r_i = 0` with `c_last ≠ 0`.
fn find_dependency(rs: &[RemainderForm], z_coords: bool) -> Option<Vec<MPoly>> {
    let n = rs.len();
    let mut keys: Vec<(MPoly, Option<IntLinType>, u32)> = Vec::new();
    for r in rs {
        for g in &r.groups {
            for t in &g.terms {
                if !keys.iter().any(|(d, _, j)| *d == g.d && *j == t.j) {
                    keys.push((g.d.clone(), g.lin.clone(), t.j));
                }
            }
        }
    }
    let mut rows: Vec<Vec<RatFun>> = Vec::new();
    for (d, lin, j) in &keys {
        let terms: Vec<Option<&crate::bireduce::RemTerm>> = rs.iter().map(|r| r.group(d).and_then(|g| g.term(*j))).collect();
        let bstar = terms.iter().flatten().fold(MPoly::one(), |acc, t| lcm(&acc, t.b()));
        let cols: Vec<BTreeMap<(u32, u32), MPoly>> = terms
            .iter()
            .map(|t| match t {
                None => BTreeMap::new(),
                Some(t) => {
                    let mut a = t.a() * &bstar.div_exact(t.b()).expect("lcm");
                    if let (true, Some(l)) = (z_coords, lin) {
                        a = phi_poly(l.alpha, l.beta, &a);
                    }
                    yz_coefficients(&a)
                }
            })
            .collect();
        let mut monos: Vec<(u32, u32)> = cols.iter().flat_map(|c| c.keys().copied()).collect();
        monos.sort();
        monos.dedup();
        for m in monos {
            rows.push(cols.iter().map(|c| c.get(&m).cloned().map(RatFun::from_poly).unwrap_or_else(RatFun::zero)).collect());
        }
    }
    nullspace(&rows, n).into_iter().find(|v| !v[n - 1].is_zero())
}

pub fn reduction_ct(f: &RatFun, den: &Factorization, opts: &CtOptions) -> Result<TelescopeResult> {
    let start = bivariate_abramov(f, den, opts.mode)?;
    ct_from_remainder(start.r, start.cert, opts)
}

/// The loop of the reduction-based method started from `f = Δ(g_0) + r_0`.
pub fn ct_from_remainder(r0: RemainderForm, cert0: Cert, opts: &CtOptions) -> Result<TelescopeResult> {
    let mode = opts.mode;
    if r0.is_zero() {
        return Ok(TelescopeResult {
            status: Status::Summable,
            op: OreOp::one(),
            cert: mode.tracks().then(|| {
                let mut c = cert0;
                c.finish();
                c
            }),
            order: 0,
            iterations: 0,
            remainders: vec![r0],
            existence: None,
        });
    }
    let report = existence_check(&r0)?;
    if !report.exists {
        return Ok(TelescopeResult {
            status: Status::NoTelescoper,
            op: OreOp { coeffs: Vec::new() },
            cert: None,
            order: 0,
            iterations: 0,
            remainders: vec![r0],
            existence: Some(report),
        });
    }
    let max = opts.max_order.unwrap_or_else(|| default_max_order(&r0, &report));
    let mut merged = Merged::default();
    merged.absorb(&r0);
    let mut base = Merged::default();
    base.absorb(&r0);
    let base_ref = base.reference();
    let mut rs = vec![r0];
    let mut certs = vec![cert0];
    for ell in 1..=max {
        let s = rs[ell - 1].shift_x(1);
        let (c, t) = if opts.enhancements {
            let (c, t) = linearize_remainder(&base_ref, &s, mode)?;
            if merged.compatible(&t) {
                (c, t)
            } else {
                linearize_remainder(&merged.reference(), &s, mode)?
            }
        } else {
            linearize_remainder(&merged.reference(), &s, mode)?
        };
        debug_assert!(merged.compatible(&t));
        let mut cert = c;
        cert.add(&certs[ell - 1].shift_x(1));
        merged.absorb(&t);
        rs.push(t);
        certs.push(cert);
        if let Some(v) = find_dependency(&rs, opts.enhancements) {
            let op = OreOp::from_polys(&v).canonical();
            let cert = mode.tracks().then(|| {
                let mut acc = Cert::new(mode);
                for (ci, gi) in op.coeffs.iter().zip(&certs) {
                    if !ci.is_zero() {
                        acc.add(&gi.mul_x(ci));
                    }
                }
                acc.finish();
                acc
            });
            return Ok(TelescopeResult {
                status: Status::Ok,
                order: op.order(),
                op,
                cert,
                iterations: ell,
                remainders: rs,
                existence: Some(report),
            });
        }
    }
    Err(Error::MaxOrderExceeded(max))
}
