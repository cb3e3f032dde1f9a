use kleinian_core::geometry::{
    axial_distance, classify_simple, conj_axis_distance, conj_map, conj_map_exact, enumerate_words, explore_csv,
    gamma_of_word, realize, search_words, simple_axis_search, word_map_iterate, Grid, Letter, Mat2C, SimpleVerdict,
    Verdict, WitnessKind, WordMap, WordSpec,
};
use kleinian_core::harness::builtin_catalog;
use kleinian_core::numeric::Cpx;
use kleinian_core::params::{normalize_symmetry, GroupParams};
use kleinian_core::quatalg::{ramification_report, SymbolForm};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Float;

const PREC: u32 = 128;

fn cpx(re: f64, im: f64) -> Cpx {
    Cpx::from_f64(re, im, PREC)
}

fn row_params(n: u32, i: u32) -> GroupParams {
    let row = builtin_catalog().into_iter().find(|r| r.n == n && r.i == i).unwrap();
    GroupParams::new(n, row.gamma_poly().unwrap(), row.gamma_approx, PREC).unwrap()
}

fn close(a: &Cpx, b: &Cpx, tol: f64) -> bool {
    a.dist(b).to_f64() < tol
}

#[test]
fn realize_examples() {
    let (_, g) = realize(&cpx(-3.0, 0.0), &cpx(-3.0, 0.0)).unwrap();
    let expected = Mat2C::from_f64([(0.0, 0.0), (1.0, 0.0), (-1.0, 0.0), (0.0, 0.0)], PREC);
    assert!(g.max_abs_diff(&expected).to_f64() < 1e-30);

    let gamma = cpx(-1.5, 0.8660);
    let beta = cpx(-3.0, 0.0);
    let (f, g) = realize(&gamma, &beta).unwrap();
    assert!(close(&f.commutator_parameter(&g), &gamma, 1e-30));
    assert!(close(&f.beta(), &beta, 1e-30));
    assert!(close(&g.beta(), &cpx(-4.0, 0.0), 1e-30));
    assert!(close(&f.det(), &cpx(1.0, 0.0), 1e-30) && close(&g.det(), &cpx(1.0, 0.0), 1e-30));

    let (f, g) = realize(&Cpx::i(PREC), &cpx(-2.0, 0.0)).unwrap();
    assert!(close(&f.trace(), &cpx(2f64.sqrt(), 0.0), 1e-15));
    let k = f.mul(&g).mul(&f.adjugate()).mul(&g.adjugate());
    assert!(close(&k.trace(), &cpx(2.0, 1.0), 1e-30));

    assert!(realize(&cpx(-1.0, 0.0), &cpx(0.0, 0.0)).is_err());
    assert!(realize(&cpx(-1.0, 0.0), &cpx(-4.0, 0.0)).is_err());
}

#[test]
fn word_parsing_and_reduction() {
    let w = WordSpec::parse("gfgf^-1g", 3).unwrap();
    assert_eq!(w.to_string(), "gfgf^-1g");
    assert_eq!(WordSpec::parse("gf^2g", 3).unwrap().to_string(), "gf^-1g");
    assert_eq!(WordSpec::parse("gfg^-1fg", 6).unwrap().to_string(), "gfgfg");
    assert_eq!(WordSpec::parse("gg", 3).unwrap().to_string(), "1");
    assert_eq!(WordSpec::parse("gf^3g", 3).unwrap().to_string(), "1");
    assert_eq!(WordSpec::parse("gffg", 4).unwrap().letters(), &[Letter::G, Letter::F(2), Letter::G]);
    assert_eq!(w.inverse(3).to_string(), "gfgf^-1g");
    assert_eq!(WordSpec::parse("gfgfg", 5).unwrap().inverse(5).to_string(), "gf^-1gf^-1g");
    assert!(WordSpec::parse("gxg", 3).is_err());
    for pair in w.letters().windows(2) {
        assert!(matches!(pair, [Letter::G, Letter::F(_)] | [Letter::F(_), Letter::G]));
    }
}

#[test]
fn enumeration_is_canonical_and_free_of_inverse_pairs() {
    let words = enumerate_words(3, 9);
    let strings: Vec<String> = words.iter().map(|w| w.to_string()).collect();
    assert_eq!(&strings[..4], &["g", "gfg", "gfgfg", "gfgf^-1g"]);
    for (k, w) in words.iter().enumerate() {
        assert!(w.len() <= 9 && w.len() % 2 == 1);
        assert!(!words[..k].contains(&w.inverse(3)), "{}", w);
    }
    assert!(words.windows(2).all(|p| p[0].len() <= p[1].len()));
    // (2^k + self-inverse sequences) / 2 words with k powers of f.
    assert_eq!(words.len(), 1 + 1 + 3 + 4 + 10);
    assert_eq!(enumerate_words(3, 9), words);
}

#[test]
fn gamma_of_word_examples() {
    let gamma = cpx(0.3, -0.7);
    let beta = cpx(-2.0, 0.0);
    let (f, g) = realize(&gamma, &beta).unwrap();
    assert!(close(&gamma_of_word(&f, &g, &WordSpec::parse("g", 4).unwrap()), &gamma, 1e-30));

    let gamma = cpx(0.41, 0.37);
    let beta = cpx(-1.0, 0.0);
    let (f, g) = realize(&gamma, &beta).unwrap();
    let w = WordSpec::parse("gfg^-1fg", 6).unwrap();
    assert!(close(&gamma_of_word(&f, &g, &w), &gamma.pow_u(3), 1e-30));

    let p = row_params(3, 9);
    let (f, g) = realize(&p.gamma(), &Cpx::real(p.beta().clone())).unwrap();
    assert!(close(&gamma_of_word(&f, &g, &WordSpec::parse("gfg", 3).unwrap()), &cpx(-3.0, 0.0), 1e-30));
}

#[test]
fn long_witness_for_order_three_row_thirteen() {
    let p = row_params(3, 13);
    let (f, g) = realize(&p.gamma(), &Cpx::real(p.beta().clone())).unwrap();
    let k = "gfgfg";
    let k_inv = "gf^-1gf^-1g";
    let h = WordSpec::parse(&format!("{}f{}f{}", k, k_inv, k), 3).unwrap();
    assert_eq!(h.len(), 17);
    assert!(close(&gamma_of_word(&f, &g, &h), &cpx(-1.0, 0.0), 1e-25));
}

fn random_unimodular(rng: &mut ChaCha8Rng) -> Mat2C {
    loop {
        let mut e = || cpx(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let (a, b, c) = (e(), e(), e());
        if a.abs().to_f64() < 0.25 {
            continue;
        }
        let d = Cpx::one(PREC).add(&b.mul(&c)).div(&a);
        return Mat2C::new(a, b, c, d);
    }
}

#[test]
fn trace_identities_hold_for_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    let id = Mat2C::identity(PREC);
    let mut worst = 0f64;
    for _ in 0..10_000 {
        let f = random_unimodular(&mut rng);
        let g = random_unimodular(&mut rng);
        let (tf, tg, tfg) = (f.trace(), g.trace(), f.mul(&g).trace());
        let lhs = f.mul(&f);
        let rhs = f.scale(&tf).sub(&id);
        worst = worst.max(lhs.max_abs_diff(&rhs).to_f64());
        let lhs = f.mul(&g).mul(&f);
        let rhs = id.scale(&tg.neg()).add(&f.scale(&tfg)).add(&g);
        worst = worst.max(lhs.max_abs_diff(&rhs).to_f64());
        let lhs = g.mul(&f).add(&f.mul(&g));
        let rhs = id.scale(&tfg.sub(&tf.mul(&tg))).add(&f.scale(&tg)).add(&g.scale(&tf));
        worst = worst.max(lhs.max_abs_diff(&rhs).to_f64());
    }
    assert!(worst < 1e-25, "worst residual {}", worst);
}

#[test]
fn axial_distance_examples() {
    let d = axial_distance(&Cpx::i(PREC), &cpx(-1.0, 0.0), &cpx(-4.0, 0.0)).unwrap();
    assert!((d.to_f64() - 0.7642).abs() < 5e-4);
    let d = axial_distance(&cpx(-1.0, 0.0), &cpx(-3.0, 0.0), &cpx(-4.0, 0.0)).unwrap();
    assert_eq!(d.to_f64(), 0.0);
    let d = axial_distance(&cpx(-1.5, 0.6066), &cpx(-3.0, 0.0), &cpx(-4.0, 0.0)).unwrap();
    assert!((d.to_f64() - 0.1970).abs() < 5e-4);
    assert!(axial_distance(&Cpx::i(PREC), &cpx(0.0, 0.0), &cpx(-4.0, 0.0)).is_err());
}

#[test]
fn conj_axis_distance_examples() {
    assert_eq!(conj_axis_distance(&cpx(-1.2, 0.0), &cpx(-3.0, 0.0)).unwrap().to_f64(), 0.0);
    assert_eq!(conj_axis_distance(&cpx(-3.0, 0.0), &cpx(-3.0, 0.0)).unwrap().to_f64(), 0.0);
    let d = conj_axis_distance(&Cpx::i(PREC), &cpx(-1.0, 0.0)).unwrap().to_f64();
    assert!((d - (1.0 + 2f64.sqrt()).acosh()).abs() < 1e-14);
    assert!((d - 1.5286).abs() < 5e-5);
}

#[test]
fn conj_map_examples() {
    assert!(conj_map(&cpx(-3.0, 0.0), &cpx(-3.0, 0.0)).is_zero());
    assert!(close(&conj_map(&cpx(-1.0, 0.0), &cpx(-3.0, 0.0)), &cpx(-2.0, 0.0), 1e-30));
    let p = row_params(3, 3);
    let tf = p.trace_field().unwrap();
    let exact = conj_map_exact(&tf.gamma, &tf.beta);
    let numeric = conj_map(&p.gamma(), &Cpx::real(p.beta().clone()));
    assert!(close(&exact.embed(tf.identity, PREC), &numeric, 1e-25));
}

fn arb_params() -> impl Strategy<Value = (f64, f64, f64)> {
    (-3.0f64..3.0, -3.0f64..3.0, 0.05f64..3.9).prop_filter("gamma away from 0", |(re, im, _)| re.abs() + im.abs() > 1e-3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn word_maps_agree_with_matrices((re, im, s) in arb_params()) {
        let gamma = cpx(re, im);
        let beta = cpx(-s, 0.0);
        let (f, g) = realize(&gamma, &beta).unwrap();
        for map in [WordMap::Conjugation, WordMap::Cubic] {
            let w = WordSpec::parse(map.word(), 7).unwrap();
            let by_matrix = gamma_of_word(&f, &g, &w);
            let by_map = map.apply(&gamma, &beta);
            let scale = 1.0 + by_map.abs().to_f64();
            prop_assert!(by_matrix.dist(&by_map).to_f64() < 1e-25 * scale, "{} at ({}, {}, {})", map, re, im, s);
        }
    }
}

proptest! {
    #[test]
    fn conj_distance_matches_axial_formula((re, im, s) in arb_params()) {
        let gamma = cpx(re, im);
        let beta = cpx(-s, 0.0);
        let a = conj_axis_distance(&gamma, &beta).unwrap().to_f64();
        let b = axial_distance(&conj_map(&gamma, &beta), &beta, &beta).unwrap().to_f64();
        prop_assert!((a - b).abs() < 1e-9 * (1.0 + a), "{} vs {}", a, b);
    }

    #[test]
    fn axial_distance_is_constant_on_symmetry_orbits((re, im, s) in arb_params()) {
        let gamma = cpx(re, im);
        let beta = Float::with_val(PREC, -s);
        let b = Cpx::real(beta.clone());
        let four = cpx(-4.0, 0.0);
        let d0 = axial_distance(&gamma, &b, &four).unwrap().to_f64();
        let (_, orbit) = normalize_symmetry(&gamma, &beta);
        for g in orbit {
            let d = axial_distance(&g, &b, &four).unwrap().to_f64();
            prop_assert!((d - d0).abs() < 1e-12 * (1.0 + d0));
        }
    }
}

#[test]
fn delta_columns_match_catalog() {
    let four = cpx(-4.0, 0.0);
    for row in builtin_catalog() {
        let p = GroupParams::new(row.n, row.gamma_poly().unwrap(), row.gamma_approx, PREC).unwrap();
        let d = axial_distance(&p.gamma(), &Cpx::real(p.beta().clone()), &four).unwrap().to_f64();
        let expected = row.expected.delta.unwrap();
        assert!((d - expected).abs() < 5e-4, "{}: {} vs {}", row.id(), d, expected);
    }
}

#[test]
fn search_examples() {
    let w = simple_axis_search(&row_params(3, 9), 9).unwrap();
    let w = w.witness().unwrap();
    assert_eq!(w.word.to_string(), "gfg");
    assert_eq!(w.kind, WitnessKind::EqualsBeta);
    assert!((w.gamma.0 + 3.0).abs() < 1e-10 && (w.beta_h.0 + 3.0).abs() < 1e-10);

    let w = simple_axis_search(&row_params(4, 3), 9).unwrap();
    let w = w.witness().unwrap();
    assert_eq!(w.word.to_string(), "gfgfg");
    assert_eq!(w.kind, WitnessKind::Interval);
    assert_eq!(w.exact.as_deref(), Some("-1"));

    assert!(simple_axis_search(&row_params(3, 6), 9).unwrap().witness().is_none());
    assert!(simple_axis_search(&row_params(3, 6), 0).is_err());
}

#[test]
fn search_is_independent_of_thread_count() {
    let p = row_params(4, 12);
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let a = single.install(|| simple_axis_search(&p, 9).unwrap());
    let b = simple_axis_search(&p, 9).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.witness().unwrap().word.to_string(), "gfgfgf^-1gf^-1g");
}

#[test]
fn search_without_witness_reports_size() {
    let r = search_words(&cpx(0.3, 2.0), &cpx(-3.0, 0.0), 3, 5).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["result"], "none_found");
    assert_eq!(v["words_checked"], 5);
}

#[test]
fn classify_simple_examples() {
    let verdict = |n, i| {
        let p = row_params(n, i);
        let tf = p.trace_field().unwrap();
        let r = ramification_report(n, &tf, SymbolForm::TraceSquares).unwrap();
        let s = simple_axis_search(&p, 9).unwrap();
        classify_simple(n, &tf, &r, &s).unwrap()
    };
    assert!(matches!(verdict(3, 6), SimpleVerdict::Simple { .. }));
    assert!(matches!(verdict(5, 7), SimpleVerdict::Simple { .. }));
    match verdict(3, 3) {
        SimpleVerdict::NonSimple { witness } => {
            assert_eq!(witness.word.to_string(), "gfg");
            assert!((witness.gamma.0 + (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-10);
        }
        v => panic!("unexpected {:?}", v),
    }
    assert!(matches!(verdict(4, 7), SimpleVerdict::Unknown { .. }));
}

#[test]
fn cubic_map_converges_at_order_six() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let beta = cpx(-1.0, 0.0);
    for _ in 0..100 {
        let r: f64 = rng.gen_range(0.01..0.99);
        let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let traj = word_map_iterate(&cpx(r * t.cos(), r * t.sin()), &beta, WordMap::Cubic, 30);
        assert_eq!(traj.verdict, Verdict::ConvergesToZero);
        assert_eq!(traj.enters_unit_disc, Some(0));
        assert!(traj.points.len() <= 31);
    }
    let traj = word_map_iterate(&cpx(0.5, 0.0), &beta, WordMap::Cubic, 30);
    assert!((traj.points[1].0 - 0.125).abs() < 1e-15);
}

#[test]
fn cubic_map_preserves_unit_circle_at_order_six() {
    let beta = cpx(-1.0, 0.0);
    let t = Float::with_val(PREC, 0.7);
    let start = Cpx::new(t.clone().cos(), t.sin());
    let traj = word_map_iterate(&start, &beta, WordMap::Cubic, 20);
    for (re, im) in &traj.points {
        assert!((re.hypot(*im) - 1.0).abs() < 1e-12);
    }
    assert!(traj.enters_unit_disc.is_none());
}

#[test]
fn cubic_map_avoids_unit_disc_for_discrete_group() {
    let p = row_params(3, 9);
    let traj = word_map_iterate(&p.gamma(), &cpx(-3.0, 0.0), WordMap::Cubic, 50);
    assert_ne!(traj.verdict, Verdict::ConvergesToZero);
    assert!(traj.enters_unit_disc.is_none());
    assert!(traj.min_modulus >= 1.0);
}

#[test]
fn explore_grid_csv() {
    let grid: Grid = "-1:1:-1:1:3".parse().unwrap();
    let csv = explore_csv(&cpx(-1.0, 0.0), WordMap::Cubic, &grid, 30);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "re,im,verdict,enters_unit_disc,min_modulus");
    assert_eq!(lines.len(), 10);
    assert!(lines.iter().any(|l| l.starts_with("0,0,converges_to_zero")));
    assert!("1:2:3".parse::<Grid>().is_err());
}
