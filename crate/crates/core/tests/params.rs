use kleinian_core::harness::builtin_catalog;
use kleinian_core::numeric::Cpx;
use kleinian_core::numfield::one_complex_place;
use kleinian_core::params::{beta_min_poly, galois_conjugates_beta, normalize_symmetry, GammaPoly, GroupParams};
use kleinian_core::polyalg::{count_real_roots, BivarIntPoly, IntPoly};
use proptest::prelude::*;
use rug::Float;

fn p(c: &[i64]) -> IntPoly {
    IntPoly::from_i64(c)
}

#[test]
fn beta_polynomials_vanish_at_designated_value() {
    for n in 3..=7u32 {
        let m = beta_min_poly(n).unwrap();
        let b = -4.0 * (std::f64::consts::PI / n as f64).sin().powi(2);
        let v = m.eval_cpx(&Cpx::from_f64(b, 0.0, 128)).abs().to_f64();
        assert!(v < 1e-12, "n = {}", n);
        assert_eq!(count_real_roots(&m), m.degree());
    }
    assert!(beta_min_poly(8).is_err());
}

#[test]
fn conjugates_of_beta() {
    let c5 = galois_conjugates_beta(5, 128).unwrap();
    let s5 = 5f64.sqrt();
    assert_eq!(c5.len(), 2);
    assert!((c5[0].to_f64() - (s5 - 5.0) / 2.0).abs() < 1e-15);
    assert!((c5[1].to_f64() - (-s5 - 5.0) / 2.0).abs() < 1e-15);
    let c3 = galois_conjugates_beta(3, 128).unwrap();
    assert_eq!(c3.len(), 1);
    assert_eq!(c3[0].to_f64(), -3.0);
    let c7: Vec<f64> = galois_conjugates_beta(7, 128).unwrap().iter().map(|b| b.to_f64()).collect();
    let oracle: Vec<f64> = (1..=3).map(|k| -4.0 * (k as f64 * std::f64::consts::PI / 7.0).sin().powi(2)).collect();
    for (a, b) in c7.iter().zip(&oracle) {
        assert!((a - b).abs() < 1e-14);
    }
    assert!((c7[0] + 0.7530).abs() < 1e-4 && (c7[1] + 2.4450).abs() < 1e-4 && (c7[2] + 3.8019).abs() < 1e-4);
}

fn cpx(re: f64, im: f64) -> Cpx {
    Cpx::from_f64(re, im, 128)
}

#[test]
fn symmetry_normalization_examples() {
    let b = Float::with_val(128, -3);
    let (c, _) = normalize_symmetry(&cpx(-1.5, -0.8660), &b);
    assert!(c.dist(&cpx(-1.5, 0.8660)).to_f64() < 1e-12);
    let (c, _) = normalize_symmetry(&cpx(-2.6180, 0.0), &b);
    assert!(c.dist(&cpx(-0.3820, 0.0)).to_f64() < 1e-12);
    let (c, orbit) = normalize_symmetry(&cpx(-1.5, 0.6066), &b);
    assert!(c.dist(&cpx(-1.5, 0.6066)).to_f64() < 1e-12);
    assert_eq!(orbit.len(), 2);
}

proptest! {
    #[test]
    fn normalization_is_constant_on_orbits(re in -4.0f64..2.0, im in -2.0f64..2.0, bi in 0usize..5) {
        let beta = [-3.0, -2.0, -1.0, -1.381966011250105, -0.7530203962825331][bi];
        let b = Float::with_val(128, beta);
        let g = cpx(re, im);
        let (c, orbit) = normalize_symmetry(&g, &b);
        prop_assert!(orbit.len() <= 4);
        prop_assert!(c.re.to_f64() >= beta / 2.0 - 1e-12 && c.im.to_f64() >= -1e-12);
        for o in &orbit {
            let (c2, _) = normalize_symmetry(o, &b);
            prop_assert!(c2.dist(&c).to_f64() < 1e-12);
        }
        let (c3, _) = normalize_symmetry(&c, &b);
        prop_assert!(c3.dist(&c).to_f64() < 1e-12);
    }
}

#[test]
fn catalog_rows_select_gamma_and_minimal_polynomial() {
    for row in builtin_catalog() {
        let gp = GroupParams::new(row.n, row.gamma_poly().unwrap(), row.gamma_approx, 128)
            .unwrap_or_else(|e| panic!("{}: {}", row.id(), e));
        let (re, im) = gp.gamma().to_f64();
        assert!((re - row.gamma_approx.0).abs() < 1e-3 && (im - row.gamma_approx.1.abs()).abs() < 1e-3, "{}", row.id());
        if let Some(q) = &row.expected.q {
            assert_eq!(&gp.min_poly, q, "{}", row.id());
        }
    }
}

#[test]
fn trace_field_contains_beta() {
    for row in builtin_catalog() {
        let gp = GroupParams::new(row.n, row.gamma_poly().unwrap(), row.gamma_approx, 128).unwrap();
        let tf = gp.trace_field().unwrap_or_else(|e| panic!("{}: {}", row.id(), e));
        let m = gp.beta_min_poly();
        let mut acc = kleinian_core::numfield::FieldElem::from_int(&tf.field, 0);
        for c in m.coeffs().iter().rev() {
            acc = acc.mul(&tf.beta).add(&kleinian_core::numfield::FieldElem::from_rational(&tf.field, c.into()));
        }
        assert!(acc.is_zero(), "{}", row.id());
        let b = tf.beta.embed(tf.identity, 128).re.to_f64();
        assert!((b - gp.beta_f64()).abs() < 1e-20, "{}", row.id());
    }
}

#[test]
fn one_complex_place_examples() {
    let m5 = p(&[5, 5, 1]);
    let r = one_complex_place(&m5, &BivarIntPoly::from_nested(&[&[1], &[0, -1], &[1]]), (-0.6909, 0.7228), 128).unwrap();
    assert!(r.holds);
    let r = one_complex_place(&p(&[3, 1]), &BivarIntPoly::from_univariate(&p(&[3, 3, 1])), (-1.5, 0.8660), 128).unwrap();
    assert!(r.holds);
    let r = one_complex_place(&p(&[2, 1]), &BivarIntPoly::from_univariate(&p(&[-1, 1, 1])), (0.6180, 0.0), 128).unwrap();
    assert!(!r.holds);
    assert_eq!(r.signature, (2, 0));
}

#[test]
fn rejects_unmatched_gamma_and_elementary_groups() {
    let poly = GammaPoly::Univariate(p(&[3, 3, 1]));
    assert!(GroupParams::new(3, poly, (0.3, 0.3), 128).is_err());
    let poly = GammaPoly::Univariate(p(&[3, 1]));
    assert!(GroupParams::new(3, poly, (-3.0, 0.0), 128).is_err());
}
