mod common;

use proptest::prelude::*;

use common::{delta_y, poly, ratfun};
use trisum::abramov::abramov_reduce_y;
use trisum::arith::factor::factor;
use trisum::arith::gcd::{gcd, lcm};
use trisum::arith::{rat, MPoly, RatFun, Var};
use trisum::certificate::{CertMode, FracSum, FracTerm};
use trisum::expr::parse_expression;
use trisum::shift::{is_shift_free, min_x_period, shift_equiv_yz};
use trisum::telescope::{op_lclm, reduction_ct, telescope_by_lclm, verify_telescoper, CtOptions, OreOp};

fn nonzero_poly(deg: u32) -> impl Strategy<Value = MPoly> {
    poly(deg, 5).prop_filter("nonzero", |p| !p.is_zero())
}

fn x_ratfun() -> impl Strategy<Value = RatFun> {
    (prop::collection::vec(-3i64..=3, 1..=3), prop::collection::vec(-3i64..=3, 1..=3)).prop_filter_map("nonzero", |(n, d)| {
        let to_poly = |cs: &[i64]| cs.iter().enumerate().fold(MPoly::zero(), |acc, (i, &c)| &acc + &MPoly::var(Var::X).pow(i as u32).scale(&rat(c)));
        let (n, d) = (to_poly(&n), to_poly(&d));
        (!n.is_zero() && !d.is_zero()).then(|| RatFun::new(n, d))
    })
}

fn ore_op() -> impl Strategy<Value = OreOp> {
    prop::collection::vec(x_ratfun(), 1..=3).prop_map(OreOp::new)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn product_divides_back(a in nonzero_poly(3), b in nonzero_poly(3)) {
        let p = &a * &b;
        prop_assert_eq!(p.div_exact(&b), Some(a.clone()));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn gcd_is_common_and_maximal(a in nonzero_poly(2), b in nonzero_poly(2), c in nonzero_poly(2)) {
        let g = gcd(&(&a * &c), &(&b * &c));
        prop_assert!(g.div_exact(&c.canonical()).is_some());
        prop_assert!((&a * &c).div_exact(&g).is_some());
        prop_assert!((&b * &c).div_exact(&g).is_some());
        let l = lcm(&a, &b);
        prop_assert!(l.div_exact(&a).is_some() && l.div_exact(&b).is_some());
    }

    #[test]
    fn factorization_expands(a in nonzero_poly(2), b in nonzero_poly(2)) {
        let p = &a * &b;
        let fz = factor(&p);
        prop_assert_eq!(fz.expand(), p);
        for f in &fz.factors {
            prop_assert!(!f.base.is_constant());
        }
    }

    #[test]
    fn display_round_trips(f in ratfun()) {
        prop_assert_eq!(parse_expression(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn shift_equivalence_witness(p in nonzero_poly(3), m in -4i64..=4, n in -4i64..=4) {
        let q = p.shift(0, m, n);
        let (m2, n2) = shift_equiv_yz(&q, &p).expect("shifted copies are equivalent");
        prop_assert_eq!(p.shift(0, m2, n2), q);
    }

    #[test]
    fn x_period_is_a_period(c in prop::collection::vec(-3i64..=3, 2..=4), lx in -3i64..=3, ly in 1i64..=3, lz in -3i64..=3) {
        // univariate pattern in a linear form has an x-period
        let l = MPoly::linear(lx, ly, lz, 0);
        let d = c.iter().enumerate().fold(MPoly::zero(), |acc, (i, &k)| &acc + &l.pow(i as u32).scale(&rat(k)));
        prop_assume!(d.has_var(Var::Y));
        let (xi, zeta, eta) = min_x_period(&d).expect("linear pattern has a period");
        prop_assert!(xi >= 1);
        prop_assert_eq!(d.shift(xi, 0, 0), d.shift(0, zeta, eta));
    }

    #[test]
    fn abramov_remainder_shape(f in ratfun()) {
        let res = abramov_reduce_y(&f).unwrap();
        prop_assert_eq!(&delta_y(&res.g) + &res.remainder(), f);
        if !res.a.is_zero() {
            prop_assert!(res.a.deg(Var::Y) < res.b.deg(Var::Y));
            prop_assert!(is_shift_free(&res.b, 1));
        }
    }

    #[test]
    fn frac_sum_collapse_is_the_sum(fs in prop::collection::vec(ratfun(), 1..=4)) {
        let mut s = FracSum::zero();
        let mut total = RatFun::zero();
        for f in &fs {
            let fd = factor(f.den());
            let (zs, rest): (Vec<_>, Vec<_>) = fd.factors.into_iter().map(|x| (x.base, x.mult)).partition(|(b, _)| b.has_var(Var::Z));
            let zfree = rest.iter().fold(MPoly::one(), |acc, (b, e)| &acc * &b.pow(*e)).scale(&fd.unit);
            s.push(FracTerm::new(&RatFun::new(f.num().clone(), zfree), zs), CertMode::Deferred);
            total = &total + f;
        }
        prop_assert_eq!(s.to_ratfun(), total.clone());
        prop_assert_eq!(s.collapse().to_ratfun(), total);
    }

    #[test]
    fn right_division_identity(a in ore_op(), d in ore_op()) {
        let (q, r) = a.right_divrem(&d).unwrap();
        prop_assert!(r.is_zero() || r.order() < d.order());
        prop_assert_eq!(q.mul(&d).add(&r).canonical(), a.canonical());
    }

    #[test]
    fn lclm_is_a_common_left_multiple(a in ore_op(), b in ore_op()) {
        let (l, cof) = op_lclm(&[a.clone(), b.clone()]).unwrap();
        prop_assert!(l.order() <= a.order() + b.order());
        prop_assert!(cof[0].mul(&a).equal_up_to_scalar(&l));
        prop_assert!(cof[1].mul(&b).equal_up_to_scalar(&l));
        prop_assert!(l.right_divrem(&a).unwrap().1.is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 10, failure_persistence: None, ..ProptestConfig::default() })]

    /// Modes change only the certificate; routes agree; left multiples of a
    /// telescoper are telescopers.
    #[test]
    fn telescoper_invariants(i in 0u64..40, c in x_ratfun()) {
        let inst = common::bench_instance(i);
        let base = reduction_ct(&inst.f, &inst.den, &CtOptions::default()).unwrap();
        for mode in [CertMode::Deferred, CertMode::None] {
            let other = reduction_ct(&inst.f, &inst.den, &CtOptions { mode, ..CtOptions::default() }).unwrap();
            prop_assert_eq!(&other.op.canonical(), &base.op.canonical());
        }
        let lm = telescope_by_lclm(&inst.f, &inst.den, &CtOptions { mode: CertMode::None, ..CtOptions::default() }).unwrap();
        prop_assert!(lm.op.equal_up_to_scalar(&base.op));
        let left = OreOp::new(vec![c.clone(), RatFun::one()]).mul(&base.op);
        prop_assert!(verify_telescoper(&left, &inst.f, &inst.den, None).unwrap());
        if base.order > 0 {
            let lower = OreOp::new(base.op.coeffs[..base.order].to_vec());
            prop_assume!(!lower.is_zero());
            prop_assert!(!verify_telescoper(&lower, &inst.f, &inst.den, None).unwrap());
        }
    }
}
