use kleinian_core::harness::builtin_catalog;
use kleinian_core::numfield::NumberField;
use kleinian_core::params::GroupParams;
use kleinian_core::polyalg::IntPoly;
use kleinian_core::volume::{cubic_covolume, quartic_covolume, zeta2};
use proptest::prelude::*;
use rug::ops::Pow;
use rug::{Float, Integer};
use std::sync::Arc;

fn field(p: &[i64]) -> Arc<NumberField> {
    NumberField::new(IntPoly::from_i64(p), 128).unwrap()
}

fn within(x: f64, target: f64, rel: f64) -> bool {
    (x - target).abs() <= rel * target
}

#[test]
fn rational_field_gives_riemann_zeta() {
    let z = zeta2(&field(&[0, 1]), 100_000, 128).unwrap();
    let exact = std::f64::consts::PI.powi(2) / 6.0;
    assert!((z.value.to_f64() - exact).abs() < 1e-5);
    assert!(z.value.to_f64() <= exact && exact <= z.value.to_f64() + z.tail_bound.to_f64());
}

#[test]
fn quartic_volumes() {
    for (p, d, target) in [
        (&[1i64, 9, 12, 6, 1][..], -275, 0.03905),
        (&[1, 3, 7, 5, 1][..], -283, 0.0408),
        (&[1, 0, 6, 5, 1][..], -491, 0.1028),
        (&[1, 6, 8, 5, 1][..], -563, 0.1274),
    ] {
        let k = field(p);
        let disc = k.discriminant().unwrap().value;
        assert_eq!(disc, d);
        let z = zeta2(&k, 100_000, 128).unwrap();
        let v = quartic_covolume(&disc, &z.value).unwrap().to_f64();
        assert!(within(v, target, 0.01), "{}: {}", d, v);
    }
}

#[test]
fn cubic_volumes() {
    for (p, d, np, target) in [
        (&[5i64, 8, 5, 1][..], -23, 5, 0.07859),
        (&[3, 5, 4, 1][..], -31, 3, 0.06596),
        (&[2, 4, 4, 1][..], -44, 2, 0.066194),
    ] {
        let k = field(p);
        let disc = k.discriminant().unwrap().value;
        assert_eq!(disc, d);
        let z = zeta2(&k, 100_000, 128).unwrap();
        let v = cubic_covolume(&disc, &z.value, np).unwrap().to_f64();
        assert!(within(v, target, 0.01), "{}: {}", d, v);
    }
}

#[test]
fn back_solved_zeta_values() {
    let z = zeta2(&field(&[1, 9, 12, 6, 1]), 100_000, 128).unwrap().value.to_f64();
    assert!((z - 1.0537).abs() < 5e-4);
    let z = zeta2(&field(&[5, 8, 5, 1]), 100_000, 128).unwrap().value.to_f64();
    assert!((z - 1.1105).abs() < 1e-3);
}

#[test]
fn formulas_against_direct_arithmetic() {
    let z = Float::with_val(128, 1.25);
    let pi = std::f64::consts::PI;
    let v = quartic_covolume(&Integer::from(-300), &z).unwrap().to_f64();
    assert!((v - 300f64.powf(1.5) * 1.25 / (128.0 * pi.powi(6))).abs() < 1e-15);
    let v = cubic_covolume(&Integer::from(-50), &z, 7).unwrap().to_f64();
    assert!((v - 50f64.powf(1.5) * 1.25 * 6.0 / (64.0 * pi.powi(4))).abs() < 1e-15);
    assert!(quartic_covolume(&Integer::from(5), &z).is_err());
    assert!(cubic_covolume(&Integer::from(-23), &z, 1).is_err());
}

#[test]
fn index_prime_uses_maximal_order() {
    // 2 splits completely in this field but divides every index [O_K : Z[theta]].
    let k = field(&[-8, -2, -1, 1]);
    let z = zeta2(&k, 2, 128).unwrap();
    assert_eq!(z.index_primes, vec![2]);
    assert!((z.value.to_f64() - (4.0f64 / 3.0).powi(3)).abs() < 1e-15);
}

#[test]
fn catalog_index_primes_are_consistent() {
    let mut with_index = Vec::new();
    for row in builtin_catalog() {
        let p = GroupParams::new(row.n, row.gamma_poly().unwrap(), row.gamma_approx, 128).unwrap();
        let tf = p.trace_field().unwrap();
        if tf.field.degree() > 4 {
            continue;
        }
        let d = tf.field.discriminant().unwrap();
        let mut index_sq = Integer::from(1);
        for (q, v) in &d.index_primes {
            index_sq *= Integer::from(*q).pow(2 * v);
        }
        assert_eq!(d.polynomial_discriminant, Integer::from(&d.value * &index_sq), "{}", row.id());
        if !d.index_primes.is_empty() {
            let z = zeta2(&tf.field, 50, 128).unwrap();
            let qs: Vec<u64> = d.index_primes.iter().map(|(q, _)| *q).collect();
            assert_eq!(z.index_primes, qs);
            with_index.push(row.id());
        }
    }
    assert!(!with_index.is_empty());
}

#[test]
fn result_is_independent_of_thread_count() {
    let k = field(&[1, 3, 7, 5, 1]);
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let a = single.install(|| zeta2(&k, 20_000, 128).unwrap());
    let b = zeta2(&k, 20_000, 128).unwrap();
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn partial_products_are_monotone_and_above_one(b1 in 2u64..3000, extra in 1u64..3000, which in 0usize..3) {
        let polys: [&[i64]; 3] = [&[1, 9, 12, 6, 1], &[5, 8, 5, 1], &[1, 0, 1]];
        let k = field(polys[which]);
        let lo = zeta2(&k, b1, 128).unwrap();
        let hi = zeta2(&k, b1 + extra, 128).unwrap();
        prop_assert!(lo.value > 1);
        prop_assert!(lo.value <= hi.value);
        let upper = Float::with_val(128, &lo.value + &lo.tail_bound);
        prop_assert!(hi.value <= upper);
    }
}
