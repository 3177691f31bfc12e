//! Random instances `a / (d_1 d_2)` with `d_i = p_i · σ_x^ξ(p_i)`, where
//! `p_1 = P_1(ξy − ζx, ξz + ζx)` and `p_2 = P_2(ζx + ξy + 2ξz)`, and runs of
//! the six algorithm variants on them.

use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::factor::{factor, Factor, Factorization};
use crate::arith::gcd::gcd;
use crate::arith::{MPoly, Mono, Rat, RatFun, Var};
use crate::certificate::CertMode;
use crate::error::{Error, Result};
use crate::telescope::{telescope, CtOptions, TelescopeResult};

/// Largest absolute value of a generated coefficient.
pub const MAX_NORM: i64 = 5;
const MAX_DRAWS: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BenchParams {
    /// Total degree of the numerator.
    pub m: u32,
    /// Total degree of `P_1` and `P_2`.
    pub n: u32,
    pub xi: i64,
    pub zeta: i64,
    pub seed: u64,
}

impl BenchParams {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        if self.xi == 0 || self.zeta == 0 {
            return Err(Error::InvalidArgument("xi and zeta must be nonzero".into()));
        }
        Ok(())
    }
}

/// `rct1..3` run the direct loop, `rctlm1..3` the class-wise LCLM route;
/// the digit selects normalized, deferred or no certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Variant {
    pub lclm: bool,
    pub mode: CertMode,
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (lclm, digit) = if let Some(d) = s.strip_prefix("rctlm") {
            (true, d)
        } else if let Some(d) = s.strip_prefix("rct") {
            (false, d)
        } else {
            return Err(Error::InvalidArgument(format!("unknown variant {s:?}")));
        };
        let mode = match digit {
            "1" => CertMode::Normalized,
            "2" => CertMode::Deferred,
            "3" => CertMode::None,
            _ => return Err(Error::InvalidArgument(format!("unknown variant {s:?}"))),
        };
        Ok(Variant { lclm, mode })
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let d = match self.mode {
            CertMode::Normalized => 1,
            CertMode::Deferred => 2,
            CertMode::None => 3,
        };
        write!(f, "{}{d}", if self.lclm { "rctlm" } else { "rct" })
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub f: RatFun,
    pub den: Factorization,
    pub a: MPoly,
    pub p1: MPoly,
    pub p2: MPoly,
    /// Draws rejected as degenerate before this one.
    pub rejected: usize,
}

/// Dense random polynomial in `vars` of total degree exactly `d`.
fn random_poly(rng: &mut ChaCha8Rng, vars: &[Var], d: u32) -> MPoly {
    let mut monos = vec![Mono::ONE];
    for &v in vars {
        let mut next = Vec::new();
        for m in &monos {
            for e in 0..=d - m.total() {
                next.push(m.with_exp(v, e));
            }
        }
        monos = next;
    }
    loop {
        let terms: Vec<(Mono, Rat)> =
            monos.iter().map(|m| (*m, Rat::from_integer(BigInt::from(rng.gen_range(-MAX_NORM..=MAX_NORM))))).collect();
        let p = MPoly::from_terms(terms);
        if p.total_degree() == d && !p.is_zero() {
            return p;
        }
    }
}

fn push_factors(out: &mut Vec<(MPoly, u32, bool)>, fz: &Factorization, dx: i64) {
    for f in &fz.factors {
        let b = f.base.shift(dx, 0, 0);
        match out.iter_mut().find(|(c, _, _)| *c == b) {
            Some(e) => e.1 += f.mult,
            None => out.push((b, f.mult, f.certified)),
        }
    }
}

/// One draw, or `None` when it is degenerate.
fn draw(p: &BenchParams, rng: &mut ChaCha8Rng) -> Option<Instance> {
    let (xi, zeta) = (p.xi, p.zeta);
    let x = MPoly::var(Var::X);
    let big_p1 = random_poly(rng, &[Var::Y, Var::Z], p.n);
    let big_p2 = random_poly(rng, &[Var::Z], p.n);
    let a = random_poly(rng, &[Var::X, Var::Y, Var::Z], p.m);
    let p1 = big_p1.substitute(&[x.clone(), MPoly::linear(-zeta, xi, 0, 0), MPoly::linear(zeta, 0, xi, 0)]);
    let p2 = big_p2.substitute(&[x.clone(), x.clone(), MPoly::linear(zeta, xi, 2 * xi, 0)]);
    let d1 = &p1 * &p1.shift(xi, 0, 0);
    let d2 = &p2 * &p2.shift(xi, 0, 0);
    if !gcd(&d1, &d2).is_constant() {
        return None;
    }
    let den = &d1 * &d2;
    let f = RatFun::new(a.clone(), den.clone());
    if f.is_zero() || f.den().total_degree() != den.total_degree() {
        return None;
    }
    let (f1, f2) = (factor(&p1), factor(&p2));
    let mut fs = Vec::new();
    push_factors(&mut fs, &f1, 0);
    push_factors(&mut fs, &f1, xi);
    push_factors(&mut fs, &f2, 0);
    push_factors(&mut fs, &f2, xi);
    let mut fz = Factorization {
        unit: Rat::from_integer(1.into()),
        factors: fs.into_iter().map(|(base, mult, certified)| Factor { base, mult, certified }).collect(),
    };
    let prod = fz.expand();
    fz.unit = f.den().lc() / prod.lc();
    debug_assert_eq!(fz.expand(), *f.den());
    Some(Instance { f, den: fz, a, p1, p2, rejected: 0 })
}

/// Deterministic in `params.seed`; degenerate draws are regenerated.
pub fn generate(params: &BenchParams) -> Result<Instance> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    for rejected in 0..MAX_DRAWS {
        if let Some(mut inst) = draw(params, &mut rng) {
            inst.rejected = rejected;
            return Ok(inst);
        }
    }
    Err(Error::InvalidArgument("no nondegenerate instance found".into()))
}

#[derive(Clone, Debug)]
pub struct BenchRun {
    pub result: TelescopeResult,
    pub elapsed: Duration,
}

pub fn run_variant(inst: &Instance, variant: Variant, max_order: Option<usize>) -> Result<BenchRun> {
    let opts = CtOptions { mode: variant.mode, enhancements: true, max_order };
    let start = Instant::now();
    let result = telescope(&inst.f, &inst.den, &opts, variant.lclm)?;
    Ok(BenchRun { result, elapsed: start.elapsed() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shift::min_x_period;

    #[test]
    fn variants_parse() {
        for s in ["rct1", "rct2", "rct3", "rctlm1", "rctlm2", "rctlm3"] {
            assert_eq!(s.parse::<Variant>().unwrap().to_string(), s);
        }
        assert!("rct4".parse::<Variant>().is_err());
        assert!("lm1".parse::<Variant>().is_err());
    }

    #[test]
    fn instances_have_the_shape() {
        let p = BenchParams { m: 2, n: 2, xi: 2, zeta: 3, seed: 7 };
        let inst = generate(&p).unwrap();
        assert_eq!(inst.den.expand(), *inst.f.den());
        assert!(inst.a.max_abs_coeff() <= Rat::from_integer(MAX_NORM.into()));
        assert_eq!(inst.p1.total_degree(), 2);
        // p_2 depends on ζx + ξy + 2ξz only
        assert_eq!(inst.p2.shift(2, -3, 0), inst.p2);
        assert!(min_x_period(&inst.p1.canonical()).is_some());
        let again = generate(&p).unwrap();
        assert_eq!(again.f, inst.f);
        assert!(generate(&BenchParams { xi: 0, ..p }).is_err());
    }
}
