//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::rf;
use trisum::arith::factor::{factor, Factorization};
use trisum::arith::RatFun;
use trisum::bench::{generate, run_variant, BenchParams, Variant};
use trisum::certificate::CertMode;
use trisum::telescope::{reduction_ct, telescope, telescope_by_lclm, verify_telescoper, CtOptions, OreOp, Status, TelescopeResult};

const F1: &str = "(x^2*z+1)/((x+y)*(x+z)^2+1)";
const F2: &str = "((x^2+x*y+3*x-3)*z-x-y+3)/((x+y)*(x+y+3)*((x+2*y+3*z)^2+1))";
const F3: &str = "1/(x-y+z)";

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn op(coeffs: &[&str]) -> OreOp {
    OreOp::new(coeffs.iter().map(|c| rf(c)).collect())
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

struct Run {
    f: RatFun,
    den: Factorization,
    res: TelescopeResult,
    elapsed: Duration,
}

fn run(expr: &str, lclm: bool) -> Run {
    let f = rf(expr);
    let den = factor(f.den());
    let (res, elapsed) = timed(|| telescope(&f, &den, &CtOptions::default(), lclm).unwrap());
    Run { f, den, res, elapsed }
}

fn criterion_1(r: &Run) -> Outcome {
    let l1 = op(&["x^4+6*x^3+13*x^2+14*x+7", "-2*(x^4+4*x^3+4*x^2+2*x+2)", "x^4+2*x^3+x^2+2*x+1"]);
    ensure(r.res.order == 2, || format!("order {}", r.res.order))?;
    ensure(r.res.op.equal_up_to_scalar(&l1), || format!("operator {}", r.res.op))?;
    ensure(r.elapsed < Duration::from_secs(10), || format!("took {:?}", r.elapsed))?;
    Ok(format!("order 2, L1 up to scalar, {:.2} s", r.elapsed.as_secs_f64()))
}

fn criterion_2(r: &Run) -> Outcome {
    let l2 = op(&["x^2+9*x+15", "0", "0", "-2*(x^2+6*x-3)", "0", "0", "x^2+3*x-3"]);
    ensure(r.res.order == 6, || format!("order {}", r.res.order))?;
    ensure(r.res.op.equal_up_to_scalar(&l2), || format!("operator {}", r.res.op))?;
    ensure(r.elapsed < Duration::from_secs(30), || format!("took {:?}", r.elapsed))?;
    let (u, d2) = ("(2*y+3*z)", "((x+2*y+3*z)^2+1)");
    // the fractions exactly as displayed
    let shown = [
        format!("((x/3+1)*{u}+2/3*x^2+x+4/3)/((x+y+2)*{d2})"),
        format!("((x/3+2/3)*{u}+2/3*x^2+2*x+7/3)/((x+y+4)*{d2})"),
        format!("((x/3+1)*{u}+2/3*x^2+4)/((x+y)*{d2})"),
        format!("((x/3+4/3)*{u}+2/3*x^2+4*x+19/3)/((x+y+2)*{d2})"),
        format!("((x/3+5/3)*{u}+2/3*x^2+5*x+28/3)/((x+y+4)*{d2})"),
        format!("((x/3+2)*{u}+2/3*x^2+6*x+13)/((x+y)*{d2})"),
    ];
    ensure(r.res.remainders.len() == 7, || format!("{} remainders", r.res.remainders.len()))?;
    let off: Vec<String> = shown
        .iter()
        .enumerate()
        .filter(|(i, s)| r.res.remainders[i + 1].to_ratfun() != rf(s))
        .map(|(i, _)| format!("r_{} = {}", i + 1, r.res.remainders[i + 1].to_ratfun()))
        .collect();
    ensure(off.is_empty(), || format!("order 6 and L2 match; displayed remainders differ: {}", off.join("; ")))?;
    Ok(format!("order 6, L2 up to scalar, r_1..r_6 exact, {:.2} s", r.elapsed.as_secs_f64()))
}

fn criterion_3(r: &Run) -> Outcome {
    ensure(r.res.status == Status::Summable, || format!("status {}", r.res.status.as_str()))?;
    let ok = verify_telescoper(&r.res.op, &r.f, &r.den, r.res.cert.as_ref()).map_err(|e| e.to_string())?;
    ensure(ok, || "certificate does not verify".into())?;
    Ok("summable, certificate verifies".into())
}

fn criterion_4(direct: &Run, lclm: &Run) -> Outcome {
    let d = "((x^2+7*x+7)*(3*x^2+21*x+19))";
    let expected = op(&[
        &format!("(x^2+9*x+15)*(3*x^2+27*x+43)/{d}"),
        &format!("-2*(x^2+11*x+25)*(3*x^2+24*x+31)/{d}"),
        "(x^2+13*x+37)/(x^2+7*x+7)",
        &format!("-2*(x^2+6*x-3)*(3*x^2+27*x+43)/{d}"),
        &format!("4*(3*x^2+24*x+31)*(x^2+8*x+4)/{d}"),
        "-2*(x^2+10*x+13)/(x^2+7*x+7)",
        &format!("(x^2+3*x-3)*(3*x^2+27*x+43)/{d}"),
        &format!("-2*(x^2+5*x+1)*(3*x^2+24*x+31)/{d}"),
        "1",
    ]);
    ensure(direct.res.order == 8, || format!("direct order {}", direct.res.order))?;
    ensure(lclm.res.op.equal_up_to_scalar(&direct.res.op), || "routes disagree".into())?;
    ensure(direct.res.op.monic() == expected, || format!("monic operator {}", direct.res.op.monic()))?;
    for r in [direct, lclm] {
        ensure(r.elapsed < Duration::from_secs(60), || format!("took {:?}", r.elapsed))?;
    }
    Ok(format!(
        "order 8 on both routes, monic L matches, {:.1} s direct, {:.1} s lclm",
        direct.elapsed.as_secs_f64(),
        lclm.elapsed.as_secs_f64()
    ))
}

fn criterion_5() -> Outcome {
    let f = rf("1/(x*y+z)");
    let res = reduction_ct(&f, &factor(f.den()), &CtOptions::default()).map_err(|e| e.to_string())?;
    ensure(res.status == Status::NoTelescoper, || format!("status {}", res.status.as_str()))?;
    let rep = res.existence.ok_or("no existence report")?;
    ensure(rep.groups.iter().any(|g| g.period.is_none()), || "no group lacks an x-period".into())?;
    Ok("no_telescoper, no x-period".into())
}

fn criterion_6(golden: &[&Run]) -> Outcome {
    let mut checked = 0;
    for r in golden {
        let ok = verify_telescoper(&r.res.op, &r.f, &r.den, r.res.cert.as_ref()).map_err(|e| e.to_string())?;
        ensure(ok, || format!("certificate fails for {}", r.f))?;
        checked += 1;
    }
    for i in 0..25u64 {
        let inst = common::bench_instance(i);
        let variant = Variant { lclm: i % 2 == 1, mode: if i % 3 == 0 { CertMode::Deferred } else { CertMode::Normalized } };
        let res = run_variant(&inst, variant, None).map_err(|e| e.to_string())?.result;
        if res.status == Status::NoTelescoper {
            return Err(format!("bench instance {i} has no telescoper"));
        }
        let ok = verify_telescoper(&res.op, &inst.f, &inst.den, res.cert.as_ref()).map_err(|e| e.to_string())?;
        ensure(ok, || format!("certificate fails for bench instance {i} ({variant})"))?;
        checked += 1;
    }
    Ok(format!("L(f) = Δ_y(g) + Δ_z(h) exactly for {checked} results"))
}

fn criterion_7() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for (m, n, xi, zeta, want) in [(1u32, 1u32, 1i64, 1i64, 1usize), (3, 2, 2, 3, 6)] {
        let mut orders = Vec::new();
        let mut slowest = Duration::ZERO;
        for seed in 1..=10u64 {
            let inst = generate(&BenchParams { m, n, xi, zeta, seed }).map_err(|e| e.to_string())?;
            let run = run_variant(&inst, "rct3".parse().unwrap(), None).map_err(|e| e.to_string())?;
            slowest = slowest.max(run.elapsed);
            orders.push(run.result.order);
        }
        let hits = orders.iter().filter(|&&o| o == want).count();
        ok &= hits >= 9 && slowest < Duration::from_secs(120);
        lines.push(format!("({m},{n},{xi},{zeta}) orders {orders:?}, {hits}/10 equal {want}, slowest {:.1} s", slowest.as_secs_f64()));
    }
    let msg = lines.join("; ");
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn criterion_8() -> Outcome {
    let suites: [(&str, Box<dyn Fn() -> Result<(), String>>); 6] = [
        ("summability oracle x100", Box::new(|| common::summability_oracle(100))),
        ("remainders not summable x100", Box::new(|| common::remainders_not_summable(100))),
        ("phi diagram x100", Box::new(|| common::phi_diagram(100))),
        ("linearization closure x50", Box::new(|| common::linearization_closure(50))),
        ("enhancement consistency x25", Box::new(|| common::enhancement_consistency(25))),
        ("abramov invariance x50", Box::new(|| common::abramov_invariance(50))),
    ];
    let mut failed = Vec::new();
    for (name, suite) in &suites {
        if let Err(e) = suite() {
            failed.push(format!("{name}: {e}"));
        }
    }
    if failed.is_empty() {
        Ok(suites.iter().map(|s| s.0).collect::<Vec<_>>().join(", "))
    } else {
        Err(failed.join("; "))
    }
}

fn guarded(f: impl FnOnce() -> Outcome) -> Outcome {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
        Err(format!("panicked: {}", msg.unwrap_or_default()))
    })
}

fn main() {
    let only: Option<u32> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let f1 = run(F1, false);
    let f2 = run(F2, false);
    let f3 = run(F3, false);
    let all = format!("{F1} + {F2} + {F3}");
    let direct = run(&all, false);
    let f = direct.f.clone();
    let den = direct.den.clone();
    let (res, elapsed) = timed(|| telescope_by_lclm(&f, &den, &CtOptions::default()).unwrap());
    let lclm = Run { f, den, res, elapsed };

    let criteria: Vec<(u32, &str, Box<dyn FnOnce() -> Outcome + '_>)> = vec![
        (1, "golden telescoper f1", Box::new(|| criterion_1(&f1))),
        (2, "golden telescoper f2", Box::new(|| criterion_2(&f2))),
        (3, "summable f3", Box::new(|| criterion_3(&f3))),
        (4, "combined input", Box::new(|| criterion_4(&direct, &lclm))),
        (5, "nonexistence", Box::new(criterion_5)),
        (6, "certificate identity", Box::new(|| criterion_6(&[&f1, &f2, &f3, &direct, &lclm]))),
        (7, "benchmark orders", Box::new(criterion_7)),
        (8, "property suites", Box::new(criterion_8)),
    ];
    let mut failures = 0;
    for (n, name, check) in criteria {
        if only.is_some_and(|o| o != n) {
            continue;
        }
        let (outcome, t) = timed(|| guarded(check));
        let secs = t.as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {n} ({name}): PASS [{secs:.1} s] {msg}"),
            Err(msg) => {
                failures += 1;
                println!("criterion {n} ({name}): FAIL [{secs:.1} s] {msg}");
            }
        }
    }
    if failures > 0 {
        println!("{failures} criterion(s) failed");
        std::process::exit(1);
    }
}
