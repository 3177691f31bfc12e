//! Random inputs and the property suites shared by the test targets.
#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use trisum::abramov::abramov_reduce_y;
use trisum::arith::factor::factor;
use trisum::arith::{MPoly, Mono, Rat, RatFun};
use trisum::bench::{generate, BenchParams};
use trisum::bireduce::{bivariate_abramov, is_summable_yz, validate_combination, validate_remainder_form, RemainderForm};
use trisum::certificate::CertMode;
use trisum::expr::parse_expression;
use trisum::linearize::linearize_remainder;
use trisum::shift::{phi_inverse, phi_map};
use trisum::telescope::{reduction_ct, CtOptions};

pub fn rf(s: &str) -> RatFun {
    parse_expression(s).unwrap()
}

fn poly_from(terms: Vec<(u32, u32, u32, i64)>) -> MPoly {
    MPoly::from_terms(terms.into_iter().map(|(a, b, c, k)| (Mono::new(a, b, c), Rat::from_integer(k.into()))).collect())
}

/// Polynomial in x, y, z of total degree at most `deg`.
pub fn poly(deg: u32, max_terms: usize) -> impl Strategy<Value = MPoly> {
    prop::collection::vec((0..=deg, 0..=deg, 0..=deg, -3i64..=3), 1..=max_terms)
        .prop_map(move |ts| poly_from(ts.into_iter().filter(|t| t.0 + t.1 + t.2 <= deg).collect()))
}

/// Nonconstant linear form in x, y, z.
pub fn linear() -> impl Strategy<Value = MPoly> {
    (-2i64..=2, -2i64..=2, -2i64..=2, -3i64..=3)
        .prop_filter("y or z present", |(_, b, c, _)| *b != 0 || *c != 0)
        .prop_map(|(a, b, c, d)| MPoly::linear(a, b, c, d))
}

/// Denominator of degree at most 3 built from one to three small factors.
pub fn denominator() -> impl Strategy<Value = MPoly> {
    let quad = || (linear(), -2i64..=2).prop_map(|(l, c)| &(&l * &l) + &MPoly::int(c));
    prop_oneof![
        linear(),
        (linear(), linear()).prop_map(|(a, b)| &a * &b),
        quad(),
        (quad(), linear()).prop_map(|(q, l)| &q * &l),
        (linear(), linear(), linear()).prop_map(|(a, b, c)| &(&a * &b) * &c),
    ]
}

/// Rational function with numerator and denominator of degree at most 3.
pub fn ratfun() -> impl Strategy<Value = RatFun> {
    (poly(3, 5), denominator()).prop_filter_map("nonzero", |(n, d)| (!n.is_zero()).then(|| RatFun::new(n, d)))
}

/// Rational function whose denominator is `(y, z)`-integer linear.
pub fn integer_linear_ratfun() -> impl Strategy<Value = RatFun> {
    let pairs = prop_oneof![Just((2i64, 3i64)), Just((1, 1)), Just((1, 2)), Just((-1, 2)), Just((3, 1))];
    (pairs, -2i64..=2, 1i64..=3, poly(2, 4), -2i64..=2, -2i64..=2).prop_filter_map("nonzero", |((a, b), cx, c, num, s, t)| {
        let d = &MPoly::linear(cx, a, b, 0).pow(2) + &MPoly::int(c);
        let bfac = &MPoly::linear(1, 1, 0, s) * &MPoly::linear(1, 1, 0, t + 3);
        (!num.is_zero()).then(|| RatFun::new(num, &d * &bfac))
    })
}

pub fn delta_y(g: &RatFun) -> RatFun {
    &g.shift(0, 1, 0) - g
}

pub fn delta_z(h: &RatFun) -> RatFun {
    &h.shift(0, 0, 1) - h
}

pub fn remainder_of(f: &RatFun) -> RemainderForm {
    bivariate_abramov(f, &factor(f.den()), CertMode::None).unwrap().r
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() })
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if ok {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

fn report<T: std::fmt::Debug>(r: Result<(), proptest::test_runner::TestError<T>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

/// Every `Δ_y(g) + Δ_z(h)` reduces to zero with a certificate for itself.
pub fn summability_oracle(cases: u32) -> Result<(), String> {
    report(runner(cases).run(&(ratfun(), ratfun()), |(g, h)| {
        let f = &delta_y(&g) + &delta_z(&h);
        prop_assume!(!f.is_zero());
        let res = bivariate_abramov(&f, &factor(f.den()), CertMode::Normalized).unwrap();
        check(res.r.is_zero(), || format!("remainder {} for {f}", res.r))?;
        check(res.cert.difference_ratfun() == f, || format!("certificate off for {f}"))
    }))
}

/// Nonzero remainders and each of their fractions are not summable.
pub fn remainders_not_summable(cases: u32) -> Result<(), String> {
    report(runner(cases).run(&prop_oneof![ratfun(), integer_linear_ratfun()], |f| {
        let res = bivariate_abramov(&f, &factor(f.den()), CertMode::Normalized).unwrap();
        check(validate_remainder_form(&res.r), || format!("malformed remainder of {f}"))?;
        check(&res.cert.difference_ratfun() + &res.r.to_ratfun() == f, || format!("decomposition off for {f}"))?;
        if res.r.is_zero() {
            return Ok(());
        }
        let mut parts = vec![res.r.to_ratfun()];
        for g in &res.r.groups {
            for t in &g.terms {
                parts.push(RatFun::new(t.a().clone(), &t.b().clone() * &g.d.pow(t.j)));
            }
        }
        for p in parts {
            let (s, _) = is_summable_yz(&p, &factor(p.den())).unwrap();
            check(!s, || format!("remainder fraction {p} of {f} is summable"))?;
        }
        Ok(())
    }))
}

/// `φ ∘ σ_y^β σ_z^{−α} = σ_y ∘ φ` and `φ^{-1} ∘ φ = id`.
pub fn phi_diagram(cases: u32) -> Result<(), String> {
    report(runner(cases).run(&(ratfun(), -3i64..=3, prop_oneof![1i64..=3, -3i64..=-1]), |(f, a, b)| {
        let lhs = phi_map(a, b, &f.shift(0, b, -a)).unwrap();
        let rhs = phi_map(a, b, &f).unwrap().shift(0, 1, 0);
        check(lhs == rhs, || format!("diagram fails for {f}, ({a}, {b})"))?;
        check(phi_inverse(a, b, &phi_map(a, b, &f).unwrap()).unwrap() == f, || format!("inverse fails for {f}"))
    }))
}

fn closure_holds(r: &RemainderForm, s: &RemainderForm) -> Result<(), String> {
    let (cert, t) = linearize_remainder(r, s, CertMode::Normalized).map_err(|e| e.to_string())?;
    if &cert.difference_ratfun() + &t.to_ratfun() != s.to_ratfun() {
        return Err("s - t is not the certified difference".into());
    }
    if !validate_combination(&[r, &t]) {
        return Err(format!("{r} and {t} do not combine"));
    }
    Ok(())
}

/// Linearization makes `c₁r + c₂t` a remainder form; the shown pairs first.
pub fn linearization_closure(cases: u32) -> Result<(), String> {
    let f1 = "(x^2*z+1)/((x+y)*(x+z)^2+1)";
    let r = "(x/3*(2*y+3*z)+2/3*x^2+1)/((x+y)*((x+2*y+3*z)^2+1))";
    let s = "((x/3+1)*(2*y+3*z)+2/3*(x+1)^2+2*x+13/3)/((x+y+5)*((x+2*y+3*z+1)^2+1))";
    let f1r = remainder_of(&rf(f1));
    closure_holds(&f1r, &f1r.shift_x(1))?;
    closure_holds(&remainder_of(&rf(r)), &remainder_of(&rf(s)))?;
    let t = linearize_remainder(&remainder_of(&rf(r)), &remainder_of(&rf(s)), CertMode::None).unwrap().1;
    if t.to_ratfun() != rf("((x/3+1)*(2*y+3*z)+2/3*x^2+3*x+4)/((x+y)*((x+2*y+3*z)^2+1))") {
        return Err(format!("unexpected t = {t}"));
    }
    let pair = prop_oneof![ratfun(), integer_linear_ratfun()];
    report(runner(cases).run(&(pair.clone(), pair, 0i64..=3), |(a, b, k)| {
        let r = remainder_of(&a);
        // shifted copies share denominators up to (y, z)-shifts with r
        let s = remainder_of(&(&b + &a.shift(k, 1, -1)));
        closure_holds(&r, &s).map_err(TestCaseError::fail)
    }))
}

/// Small benchmark instances, deterministic in the index.
pub fn bench_instance(i: u64) -> trisum::bench::Instance {
    let shapes = [(0u32, 1u32, 1i64, 1i64), (1, 1, 1, 1), (1, 1, 1, 2), (0, 1, 2, 1), (1, 1, 1, -1)];
    let (m, n, xi, zeta) = shapes[(i as usize) % shapes.len()];
    generate(&BenchParams { m, n, xi, zeta, seed: 1000 + i }).unwrap()
}

/// Orders agree with enhancements on and off.
pub fn enhancement_consistency(instances: u64) -> Result<(), String> {
    for i in 0..instances {
        let inst = bench_instance(i);
        let on = reduction_ct(&inst.f, &inst.den, &CtOptions { mode: CertMode::None, ..CtOptions::default() }).map_err(|e| e.to_string())?;
        let off = reduction_ct(&inst.f, &inst.den, &CtOptions { mode: CertMode::None, enhancements: false, max_order: None })
            .map_err(|e| e.to_string())?;
        if on.order != off.order || on.status != off.status {
            return Err(format!("instance {i}: order {} with enhancements, {} without", on.order, off.order));
        }
        if !on.op.equal_up_to_scalar(&off.op) {
            return Err(format!("instance {i}: operators differ"));
        }
    }
    Ok(())
}

/// The Abramov remainder is unchanged by adding `Δ_y(w)`.
pub fn abramov_invariance(cases: u32) -> Result<(), String> {
    report(runner(cases).run(&(ratfun(), ratfun()), |(f, w)| {
        let base = abramov_reduce_y(&f).unwrap();
        let pert = abramov_reduce_y(&(&f + &delta_y(&w))).unwrap();
        check(base.remainder() == pert.remainder(), || format!("{} vs {} for f = {f}, w = {w}", base.remainder(), pert.remainder()))?;
        check(&delta_y(&base.g) + &base.remainder() == f, || format!("decomposition off for {f}"))
    }))
}
