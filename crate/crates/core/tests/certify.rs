use kleinian_core::certify::{certify_params, check_conjugates, check_field_conditions, check_univariate, Evidence, Verdict};
use kleinian_core::harness::builtin_catalog;
use kleinian_core::params::{GammaPoly, GroupParams};
use kleinian_core::polyalg::roots::match_root;
use kleinian_core::polyalg::{isolate_roots, BivarIntPoly, IntPoly};
use kleinian_core::Error;
use proptest::prelude::*;

fn p(c: &[i64]) -> IntPoly {
    IntPoly::from_i64(c)
}

fn uni(poly: &[i64], n: u32, gamma: (f64, f64)) -> Verdict {
    let p = p(poly);
    let roots = isolate_roots(&p, 128).unwrap();
    let idx = match_root(&roots, gamma.0, gamma.1, 1e-3).unwrap();
    check_univariate(&p, &roots[idx], n).unwrap().verdict
}

fn bi(rows: &[&[i64]], n: u32, gamma: (f64, f64), real: bool) -> Verdict {
    let b = BivarIntPoly::from_nested(rows);
    let g = GroupParams::new(n, GammaPoly::Bivariate(b.clone()), gamma, 128).unwrap().gamma();
    check_conjugates(&b, &g, real, n, 128).unwrap().verdict
}

#[test]
fn univariate_examples() {
    assert_eq!(uni(&[1, 9, 12, 6, 1], 3, (-1.5, 0.6066)), Verdict::SubgroupOfArithmetic);
    assert_eq!(uni(&[1, 0, 1], 4, (0.0, 1.0)), Verdict::SubgroupOfArithmetic);
    assert_eq!(uni(&[-1, 1], 6, (1.0, 0.0)), Verdict::SubgroupOfArithmetic);
}

#[test]
fn univariate_rejects_bad_inputs() {
    let q = p(&[3, 3, 1]);
    let roots = isolate_roots(&q, 128).unwrap();
    assert!(matches!(check_univariate(&p(&[3, 3, 2]), &roots[0], 3), Err(Error::NotMonic(_))));
    assert!(check_univariate(&p(&[1, 3, 1]), &roots[0], 3).is_err());
    let b = p(&[3, 1]);
    let roots = isolate_roots(&b, 128).unwrap();
    assert_eq!(check_univariate(&b, &roots[0], 3), Err(Error::GammaEqualsBeta));
}

#[test]
fn endpoint_root_is_inconclusive() {
    let q = p(&[3, 3, 1]).mul(&p(&[3, 1]));
    let roots = isolate_roots(&q, 128).unwrap();
    let idx = match_root(&roots, -1.5, 0.866, 1e-3).unwrap();
    let c = check_univariate(&q, &roots[idx], 3).unwrap();
    assert_eq!(c.verdict, Verdict::Inconclusive);
    assert!(c.conditions.iter().any(|c| matches!(c.evidence, Evidence::EndpointRoot { .. })));
}

#[test]
fn conjugate_examples() {
    assert_eq!(bi(&[&[1], &[0, -1], &[1]], 5, (-0.6909, 0.7228), false), Verdict::SubgroupOfArithmetic);
    assert_eq!(bi(&[&[-1, -1], &[1]], 5, (-0.3819, 0.0), true), Verdict::SubgroupOfArithmetic);
    assert_eq!(bi(&[&[-2, -1], &[1]], 7, (1.2469, 0.0), true), Verdict::SubgroupOfArithmetic);
}

#[test]
fn worked_example_roots() {
    let q = p(&[1, 9, 12, 6, 1]);
    let reals: Vec<f64> = isolate_roots(&q, 128).unwrap().iter().filter(|r| r.is_real).map(|r| r.center.re.to_f64()).collect();
    assert_eq!(reals.len(), 2);
    assert!((reals[0] + 2.86676).abs() < 5e-5 && (reals[1] + 0.13324).abs() < 5e-5);
    let b = BivarIntPoly::from_nested(&[&[1], &[0, -1], &[1]]);
    let g = GroupParams::new(5, GammaPoly::Bivariate(b.clone()), (-0.6909, 0.7228), 128).unwrap().gamma();
    let c = check_conjugates(&b, &g, false, 5, 128).unwrap();
    let ev = c.conditions.iter().find(|c| c.id == "roots_at_beta_2").unwrap();
    match &ev.evidence {
        Evidence::ConjugateRoots { real_roots, .. } => {
            assert_eq!(real_roots.len(), 2);
            let mids: Vec<f64> = real_roots.iter().map(|(a, b)| (a + b) / 2.0).collect();
            assert!((mids[0] + 3.31651).abs() < 5e-6);
            assert!((mids[1] + 0.301522).abs() < 5e-6);
        }
        e => panic!("unexpected evidence {:?}", e),
    }
}

#[test]
fn field_conditions_examples() {
    let gp = GroupParams::new(3, GammaPoly::Univariate(p(&[5, 8, 5, 1])), (-1.1225, 0.7448), 128).unwrap();
    assert!(check_field_conditions(&gp.trace_field().unwrap()).unwrap().passed());
    let gp = GroupParams::new(6, GammaPoly::Univariate(p(&[2, 1, 1])), (-0.5, 1.3228), 128).unwrap();
    assert!(check_field_conditions(&gp.trace_field().unwrap()).unwrap().passed());
    assert_eq!(
        GroupParams::new(3, GammaPoly::Univariate(p(&[3, 1])), (-3.0, 0.0), 128).unwrap_err(),
        Error::GammaEqualsBeta
    );
}

#[test]
fn field_conditions_fail_off_the_interval() {
    let gp = GroupParams::new(3, GammaPoly::Univariate(p(&[-1, 1])), (1.0, 0.0), 128).unwrap();
    let tf = gp.trace_field().unwrap();
    assert!(check_field_conditions(&tf).unwrap().passed());
    let gp = GroupParams::new(3, GammaPoly::Univariate(p(&[1, -3, 1])), (2.618034, 0.0), 128).unwrap();
    let c = check_field_conditions(&gp.trace_field().unwrap()).unwrap();
    assert_eq!(c.verdict, Verdict::Inconclusive);
}

#[test]
fn every_catalog_row_is_certified() {
    for row in builtin_catalog() {
        let gp = GroupParams::new(row.n, row.gamma_poly().unwrap(), row.gamma_approx, 128).unwrap();
        let c = certify_params(&gp).unwrap();
        assert!(c.passed(), "{}: {:?}", row.id(), c);
        let f = check_field_conditions(&gp.trace_field().unwrap()).unwrap();
        assert!(f.passed(), "{}: {:?}", row.id(), f);
    }
}

#[test]
fn non_integral_gamma_fails_field_conditions() {
    let k = kleinian_core::numfield::NumberField::new(p(&[3, 3, 1]), 128).unwrap();
    let g = kleinian_core::numfield::gen(&k).scale(&rug::Rational::from((1, 2)));
    let tf = kleinian_core::params::TraceField {
        field: k.clone(),
        gamma: g,
        beta: kleinian_core::numfield::FieldElem::from_int(&k, -3),
        identity: 0,
    };
    let c = check_field_conditions(&tf).unwrap();
    assert_eq!(c.verdict, Verdict::Inconclusive);
    assert!(!c.conditions.iter().find(|c| c.id == "gamma_integral").unwrap().passed);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn extra_root_outside_interval_flips_verdict(row_idx in 0usize..50, c in 1i64..6, below in any::<bool>()) {
        let rows = builtin_catalog();
        let row = &rows[row_idx];
        let gp = GroupParams::new(row.n, row.gamma_poly().unwrap(), row.gamma_approx, 128).unwrap();
        let root = if below { -4 - c } else { c };
        let lin = p(&[-root, 1]);
        prop_assume!(gp.q.eval_int(&rug::Integer::from(root)) != 0);
        let perturbed = match row.gamma_poly().unwrap() {
            GammaPoly::Univariate(q) => GammaPoly::Univariate(q.mul(&lin)),
            GammaPoly::Bivariate(b) => GammaPoly::Bivariate(b.mul(&BivarIntPoly::from_univariate(&lin))),
        };
        let gp2 = GroupParams::new(row.n, perturbed, row.gamma_approx, 128).unwrap();
        prop_assert!(certify_params(&gp).unwrap().passed());
        prop_assert_eq!(certify_params(&gp2).unwrap().verdict, Verdict::Inconclusive, "{} root {}", row.id(), root);
    }
}
