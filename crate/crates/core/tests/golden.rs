use std::time::{Duration, Instant};

use trisum::arith::factor::factor;
use trisum::arith::RatFun;
use trisum::bireduce::is_summable_yz;
use trisum::expr::parse_expression;
use trisum::telescope::{reduction_ct, telescope, telescope_by_lclm, verify_telescoper, CtOptions, OreOp, Status};

const F1: &str = "(x^2*z+1)/((x+y)*(x+z)^2+1)";
const F2: &str = "((x^2+x*y+3*x-3)*z-x-y+3)/((x+y)*(x+y+3)*((x+2*y+3*z)^2+1))";
const F3: &str = "1/(x-y+z)";

fn rf(s: &str) -> RatFun {
    parse_expression(s).unwrap()
}

/// Operator from coefficient strings, lowest power first.
fn op(coeffs: &[&str]) -> OreOp {
    OreOp::new(coeffs.iter().map(|c| rf(c)).collect())
}

fn l1() -> OreOp {
    op(&["x^4+6*x^3+13*x^2+14*x+7", "-2*(x^4+4*x^3+4*x^2+2*x+2)", "x^4+2*x^3+x^2+2*x+1"])
}

fn l2() -> OreOp {
    op(&["x^2+9*x+15", "0", "0", "-2*(x^2+6*x-3)", "0", "0", "x^2+3*x-3"])
}

fn l_combined() -> OreOp {
    let d = "((x^2+7*x+7)*(3*x^2+21*x+19))";
    op(&[
        &format!("(x^2+9*x+15)*(3*x^2+27*x+43)/{d}"),
        &format!("-2*(x^2+11*x+25)*(3*x^2+24*x+31)/{d}"),
        "(x^2+13*x+37)/(x^2+7*x+7)",
        &format!("-2*(x^2+6*x-3)*(3*x^2+27*x+43)/{d}"),
        &format!("4*(3*x^2+24*x+31)*(x^2+8*x+4)/{d}"),
        "-2*(x^2+10*x+13)/(x^2+7*x+7)",
        &format!("(x^2+3*x-3)*(3*x^2+27*x+43)/{d}"),
        &format!("-2*(x^2+5*x+1)*(3*x^2+24*x+31)/{d}"),
        "1",
    ])
}

#[test]
fn telescoper_of_f1() {
    let f = rf(F1);
    let start = Instant::now();
    let res = reduction_ct(&f, &factor(f.den()), &CtOptions::default()).unwrap();
    assert!(start.elapsed() < Duration::from_secs(10));
    assert_eq!(res.status, Status::Ok);
    assert_eq!(res.order, 2);
    assert!(res.op.equal_up_to_scalar(&l1()), "{}", res.op);
    let shown = [F1, "((x+1)^2*(z-1)+1)/((x+y)*(x+z)^2+1)", "((x+2)^2*(z-2)+1)/((x+y)*(x+z)^2+1)"];
    for (r, s) in res.remainders.iter().zip(shown) {
        assert_eq!(r.to_ratfun(), rf(s));
    }
    assert!(verify_telescoper(&res.op, &f, &factor(f.den()), res.cert.as_ref()).unwrap());
}

#[test]
fn telescoper_of_f2() {
    let f = rf(F2);
    let den = factor(f.den());
    let start = Instant::now();
    let res = reduction_ct(&f, &den, &CtOptions::default()).unwrap();
    assert!(start.elapsed() < Duration::from_secs(30));
    assert_eq!(res.order, 6);
    assert!(res.op.equal_up_to_scalar(&l2()), "{}", res.op);
    let u = "(2*y+3*z)";
    let d2 = "((x+2*y+3*z)^2+1)";
    let shown = [
        format!("(x/3*{u}+2/3*x^2+1)/((x+y)*{d2})"),
        format!("((x/3+1/3)*{u}+2/3*x^2+x+4/3)/((x+y+2)*{d2})"),
        format!("((x/3+2/3)*{u}+2/3*x^2+2*x+7/3)/((x+y+4)*{d2})"),
        format!("((x/3+1)*{u}+2/3*x^2+3*x+4)/((x+y)*{d2})"),
        format!("((x/3+4/3)*{u}+2/3*x^2+4*x+19/3)/((x+y+2)*{d2})"),
        format!("((x/3+5/3)*{u}+2/3*x^2+5*x+28/3)/((x+y+4)*{d2})"),
        format!("((x/3+2)*{u}+2/3*x^2+6*x+13)/((x+y)*{d2})"),
    ];
    assert_eq!(res.remainders.len(), shown.len());
    for (l, (r, s)) in res.remainders.iter().zip(&shown).enumerate() {
        assert_eq!(r.to_ratfun(), rf(s), "r_{l}");
    }
    assert!(verify_telescoper(&res.op, &f, &den, res.cert.as_ref()).unwrap());
    // nearby misprints of r_1 and r_3 are not congruent to σ_x^ℓ(f)
    for (l, wrong) in [(1, format!("((x/3+1)*{u}+2/3*x^2+x+4/3)/((x+y+2)*{d2})")), (3, format!("((x/3+1)*{u}+2/3*x^2+4)/((x+y)*{d2})"))] {
        let off = &f.shift(l, 0, 0) - &rf(&wrong);
        assert!(!is_summable_yz(&off, &factor(off.den())).unwrap().0, "r_{l}");
        let ok = &f.shift(l, 0, 0) - &rf(&shown[l as usize]);
        assert!(is_summable_yz(&ok, &factor(ok.den())).unwrap().0, "r_{l}");
    }
}

#[test]
fn f3_is_summable() {
    let f = rf(F3);
    let den = factor(f.den());
    let res = telescope(&f, &den, &CtOptions::default(), false).unwrap();
    assert_eq!(res.status, Status::Summable);
    assert_eq!(res.order, 0);
    let cert = res.cert.as_ref().unwrap();
    assert_eq!(cert.difference_ratfun(), f);
    assert!(verify_telescoper(&res.op, &f, &den, Some(cert)).unwrap());
    // the decomposition shown for f_3 is one valid certificate
    let g = rf("y/(x-y+z+1)");
    let h = rf("y/(x-y+z)");
    assert_eq!(&(&g.shift(0, 1, 0) - &g) + &(&h.shift(0, 0, 1) - &h), f);
}

#[test]
fn combined_input_both_routes() {
    let f = rf(&format!("{F1} + {F2} + {F3}"));
    let den = factor(f.den());
    let expected = l_combined();
    for lclm in [false, true] {
        let start = Instant::now();
        let res = if lclm { telescope_by_lclm(&f, &den, &CtOptions::default()) } else { reduction_ct(&f, &den, &CtOptions::default()) }.unwrap();
        assert!(start.elapsed() < Duration::from_secs(60), "lclm={lclm}");
        assert_eq!(res.order, 8, "lclm={lclm}");
        let monic = res.op.monic();
        for (i, (got, want)) in monic.coeffs.iter().zip(&expected.coeffs).enumerate() {
            assert_eq!(got, want, "lclm={lclm}, coefficient of S^{i}");
        }
    }
}

#[test]
fn no_telescoper_without_x_period() {
    let f = rf("1/(x*y+z)");
    let res = telescope(&f, &factor(f.den()), &CtOptions::default(), false).unwrap();
    assert_eq!(res.status, Status::NoTelescoper);
    let rep = res.existence.unwrap();
    assert!(!rep.exists);
    assert_eq!(rep.groups[0].period, None);
    assert!(res.cert.is_none());
}
