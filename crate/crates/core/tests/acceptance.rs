//! End-to-end acceptance criteria, one printed pass/fail line each.

use kleinian_core::certify::{certify_params, check_conjugates, Evidence};
use kleinian_core::geometry::{
    axial_distance, classify_simple, gamma_of_word, realize, simple_axis_search, word_map_iterate, Mat2C, SimpleVerdict,
    Verdict, WordMap, WordSpec,
};
use kleinian_core::harness::{builtin_catalog, emit_tables, run_row, CatalogRow, Cell, RamCell, Report, RunOptions, TableFormat};
use kleinian_core::numeric::Cpx;
use kleinian_core::numfield::NumberField;
use kleinian_core::params::{normalize_symmetry, GammaPoly, GroupParams};
use kleinian_core::polyalg::{count_real_roots, isolate_roots, resultant, BivarIntPoly, IntPoly};
use kleinian_core::quatalg::{ramification_report, SymbolForm};
use kleinian_core::volume::{cubic_covolume, quartic_covolume, zeta2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::{Float, Integer, Rational};
use std::time::{Duration, Instant};

const PREC: u32 = 128;

type Outcome = Result<String, String>;

fn cpx(re: f64, im: f64) -> Cpx {
    Cpx::from_f64(re, im, PREC)
}

fn params(row: &CatalogRow) -> Result<GroupParams, String> {
    GroupParams::new(row.n, row.gamma_poly().map_err(|e| e.to_string())?, row.gamma_approx, PREC)
        .map_err(|e| format!("{}: {}", row.id(), e))
}

fn is_kleinian(p: &GroupParams) -> bool {
    !p.gamma_is_real()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn discreteness_suite() -> Outcome {
    let rows = builtin_catalog();
    let start = Instant::now();
    for row in &rows {
        let p = params(row)?;
        let c = certify_params(&p).map_err(|e| format!("{}: {}", row.id(), e))?;
        ensure(c.passed(), || format!("{} not certified: {:?}", row.id(), c.verdict))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || format!("took {:?}", elapsed))?;
    Ok(format!("{} rows certified in {:.2?}", rows.len(), elapsed))
}

fn worked_example_roots() -> Outcome {
    let q = IntPoly::from_i64(&[1, 9, 12, 6, 1]);
    let roots = isolate_roots(&q, PREC).map_err(|e| e.to_string())?;
    let mut reals: Vec<f64> = roots.iter().filter(|r| r.is_real).map(|r| r.center.re.to_f64()).collect();
    reals.sort_by(f64::total_cmp);
    ensure(reals.len() == 2, || format!("expected two real roots, got {:?}", reals))?;
    ensure((reals[0] + 2.86676).abs() < 5e-5 && (reals[1] + 0.13324).abs() < 5e-5, || format!("{:?}", reals))?;

    let b = BivarIntPoly::from_nested(&[&[1], &[0, -1], &[1]]);
    let g = GroupParams::new(5, GammaPoly::Bivariate(b.clone()), (-0.6909, 0.7228), PREC).map_err(|e| e.to_string())?;
    let c = check_conjugates(&b, &g.gamma(), false, 5, PREC).map_err(|e| e.to_string())?;
    let cond = c.conditions.iter().find(|c| c.id == "roots_at_beta_2").ok_or("no condition for the second conjugate")?;
    let Evidence::ConjugateRoots { real_roots, .. } = &cond.evidence else {
        return Err(format!("unexpected evidence {:?}", cond.evidence));
    };
    let mut mids: Vec<f64> = real_roots.iter().map(|(a, b)| (a + b) / 2.0).collect();
    mids.sort_by(f64::total_cmp);
    ensure(mids.len() == 2, || format!("{:?}", mids))?;
    ensure((mids[0] + 3.31651).abs() < 5e-6 && (mids[1] + 0.301522).abs() < 5e-6, || format!("{:?}", mids))?;
    Ok(format!("quartic real roots {:.5}, {:.5}; order-5 conjugate roots {:.6}, {:.6}", reals[0], reals[1], mids[0], mids[1]))
}

fn distance_columns() -> Outcome {
    let four = cpx(-4.0, 0.0);
    let mut worst = 0f64;
    let rows = builtin_catalog();
    for row in &rows {
        let p = params(row)?;
        let d = axial_distance(&p.gamma(), &Cpx::real(p.beta().clone()), &four).map_err(|e| e.to_string())?.to_f64();
        let e = row.expected.delta.ok_or_else(|| format!("{} has no printed distance", row.id()))?;
        ensure((d - e).abs() < 5e-4, || format!("{}: {} vs {}", row.id(), d, e))?;
        worst = worst.max((d - e).abs());
    }
    Ok(format!("{} rows, worst deviation {:.1e}", rows.len(), worst))
}

fn discriminants() -> Outcome {
    let mut checked = 0;
    for row in builtin_catalog() {
        let Some(expected) = row.expected.disc.as_ref().and_then(Cell::number) else { continue };
        let p = params(&row)?;
        let d = p.trace_field().and_then(|tf| tf.field.discriminant()).map_err(|e| format!("{}: {}", row.id(), e))?;
        ensure(d.value == expected as i64, || format!("{}: {} vs {}", row.id(), d.value, expected))?;
        checked += 1;
    }
    Ok(format!("{} printed discriminants reproduced exactly", checked))
}

fn ramification() -> Outcome {
    let (mut matched, mut skipped) = (0, Vec::new());
    for row in builtin_catalog() {
        let Some(RamCell::Norms(expected)) = &row.expected.ramf else { continue };
        let p = params(&row)?;
        if !is_kleinian(&p) {
            continue;
        }
        let tf = p.trace_field().map_err(|e| e.to_string())?;
        let r = ramification_report(row.n, &tf, SymbolForm::TraceSquares).map_err(|e| format!("{}: {}", row.id(), e))?;
        match r.finite_status.norms() {
            Some(mut got) => {
                let mut want = expected.clone();
                got.sort_unstable();
                want.sort_unstable();
                ensure(got == want, || format!("{}: {:?} vs {:?}", row.id(), got, want))?;
                matched += 1;
            }
            None => {
                ensure(row.n != 3, || format!("{} undetermined", row.id()))?;
                skipped.push(row.id());
            }
        }
    }
    Ok(format!("{} rows match, skipped as undetermined: {:?}", matched, skipped))
}

fn volumes() -> Outcome {
    let quartic = [(&[1i64, 9, 12, 6, 1][..], 0.03905), (&[1, 3, 7, 5, 1], 0.0408), (&[1, 0, 6, 5, 1], 0.1028), (&[1, 6, 8, 5, 1], 0.1274)];
    let cubic = [(&[5i64, 8, 5, 1][..], 5, 0.07859), (&[3, 5, 4, 1], 3, 0.06596), (&[2, 4, 4, 1], 2, 0.066194)];
    let mut worst = 0f64;
    let mut check = |poly: &[i64], np: Option<u64>, target: f64| -> Result<(), String> {
        let k = NumberField::new(IntPoly::from_i64(poly), PREC).map_err(|e| e.to_string())?;
        let d = k.discriminant().map_err(|e| e.to_string())?.value;
        let z = zeta2(&k, 100_000, PREC).map_err(|e| e.to_string())?.value;
        let v = match np {
            None => quartic_covolume(&d, &z),
            Some(q) => cubic_covolume(&d, &z, q),
        }
        .map_err(|e| e.to_string())?
        .to_f64();
        let rel = (v - target).abs() / target;
        worst = worst.max(rel);
        ensure(rel <= 0.01, || format!("{:?}: {} vs {}", poly, v, target))
    };
    for (p, t) in quartic {
        check(p, None, t)?;
    }
    for (p, q, t) in cubic {
        check(p, Some(q), t)?;
    }

    let row = builtin_catalog().into_iter().find(|r| r.n == 3 && r.i == 14).ok_or("row (3,14) missing")?;
    let rep = run_row(&row, &RunOptions::default()).map_err(|e| e.to_string())?;
    let v = rep.volume.ok_or("no volume for (3,14)")?;
    ensure([0.1654, 0.1642].iter().any(|x| (v - x).abs() <= 0.01 * x), || format!("(3,14) volume {}", v))?;
    let cell = rep.cell("volume").ok_or("no volume cell")?;
    ensure(cell.flag.is_some(), || "(3,14) discrepancy not flagged".into())?;
    let md = emit_tables(&Report::new(vec![rep.clone()]), TableFormat::Markdown).map_err(|e| e.to_string())?;
    ensure(md.contains("[flag:"), || "flag missing from the emitted table".into())?;
    Ok(format!("7 volumes within {:.2}%, conflicting row computes {:.4} and is flagged", worst * 100.0, v))
}

/// A listed witness: row, word, value of `gamma(f, h)` and, when given, `beta(h)`.
struct Listed {
    n: u32,
    i: u32,
    word: &'static str,
    gamma: (f64, f64),
    beta_h: Option<(f64, f64)>,
}

fn listed_witnesses() -> Vec<Listed> {
    let golden = (3.0 + 5f64.sqrt()) / 2.0;
    let small = (5f64.sqrt() - 3.0) / 2.0;
    let l = |n, i, word, g: f64| Listed { n, i, word, gamma: (g, 0.0), beta_h: None };
    let lb = |n, i, word, g: f64, b: (f64, f64)| Listed { n, i, word, gamma: (g, 0.0), beta_h: Some(b) };
    vec![
        l(3, 1, "g", -1.0),
        l(3, 2, "g", small),
        l(3, 3, "gfg", -golden),
        l(3, 4, "gfgfgfg", -1.0),
        l(3, 5, "gfgfg", -2.0),
        l(3, 8, "gfgfgf^-1gf^-1g", -2.0),
        lb(3, 9, "gfg", -3.0, (-3.0, 0.0)),
        l(3, 11, "gfgfgfgfg", -1.0),
        l(3, 13, "gfgfgfgf^-1gf^-1gfgfgfg", -1.0),
        l(3, 14, "gfgfgfg", -2.0),
        l(4, 1, "g", -1.0),
        l(4, 3, "gfgfg", -1.0),
        lb(4, 4, "gfg", -2.0, (-2.0, 0.0)),
        l(4, 8, "gfgfgfg", -1.0),
        lb(4, 9, "gfgfg", -2.0, (0.0, 2.0)),
        l(4, 12, "gfgfgf^-1gf^-1g", -1.0),
        l(4, 13, "gfgfgfgfg", -1.0),
        l(5, 1, "g", small),
        l(5, 2, "gfg", -1.0),
        l(5, 3, "gfgfg", small),
        l(5, 6, "gfgfg", -1.0),
        l(5, 10, "gfgfgf^-1gf^-1g", small),
        l(5, 12, "gfgfgfg", -1.0),
        lb(6, 1, "gfg", -1.0, (-1.0, 0.0)),
        lb(6, 3, "gfgfg", -1.0, (0.5, 1.5 * 3f64.sqrt())),
    ]
}

fn simple_axis() -> Outcome {
    const MAX: usize = 9;
    let catalog = builtin_catalog();
    let find = |n: u32, i: u32| catalog.iter().find(|r| r.n == n && r.i == i).ok_or(format!("({},{}) missing", n, i));
    let (mut reachable, mut found) = (0, 0);
    for w in listed_witnesses() {
        let p = params(find(w.n, w.i)?)?;
        let gamma = p.gamma();
        let beta = Cpx::real(p.beta().clone());
        let (f, g) = realize(&gamma, &beta).map_err(|e| e.to_string())?;
        let word = WordSpec::parse(w.word, w.n).map_err(|e| e.to_string())?;
        let value = gamma_of_word(&f, &g, &word).to_f64();
        let id = format!("({},{}) {}", w.n, w.i, w.word);
        ensure((value.0 - w.gamma.0).abs() < 1e-10 && value.1.abs() < 1e-10, || format!("{}: {:?}", id, value))?;
        if let Some(bh) = w.beta_h {
            let t = word.evaluate(&f, &g).trace();
            let b = t.mul(&t).sub(&cpx(4.0, 0.0)).to_f64();
            ensure((b.0 - bh.0).abs() < 1e-10 && (b.1 - bh.1).abs() < 1e-10, || format!("{}: beta(h) {:?}", id, b))?;
        }
        let search = simple_axis_search(&p, MAX).map_err(|e| e.to_string())?;
        let hit = search.witness().ok_or_else(|| format!("{}: no witness within {} letters", id, MAX))?;
        found += 1;
        if word.len() <= MAX {
            reachable += 1;
            ensure(hit.word == word, || format!("{}: search found {}", id, hit.word))?;
            ensure((hit.gamma.0 - w.gamma.0).abs() < 1e-10 && hit.gamma.1.abs() < 1e-10, || format!("{}: {:?}", id, hit.gamma))?;
        }
    }

    let simple_rows = [(3, 6), (3, 7), (3, 10), (4, 2), (4, 5), (4, 6), (5, 7), (6, 2), (6, 4), (6, 5), (6, 6), (6, 8)];
    let mut no_rows = 0;
    for row in &catalog {
        let p = params(row)?;
        let printed = row.expected.simple.as_ref().and_then(Cell::label);
        let must_be_simple = simple_rows.contains(&(row.n, row.i));
        if printed != Some("No") && !must_be_simple {
            continue;
        }
        let tf = p.trace_field().map_err(|e| e.to_string())?;
        let r = ramification_report(row.n, &tf, SymbolForm::TraceSquares).map_err(|e| e.to_string())?;
        let s = simple_axis_search(&p, MAX).map_err(|e| e.to_string())?;
        let v = classify_simple(row.n, &tf, &r, &s).map_err(|e| e.to_string())?;
        if printed == Some("No") {
            no_rows += 1;
            ensure(matches!(v, SimpleVerdict::NonSimple { .. }), || format!("{} printed No, classified {}", row.id(), v.label()))?;
        }
        if must_be_simple {
            ensure(matches!(v, SimpleVerdict::Simple { .. }), || format!("{} classified {}", row.id(), v.label()))?;
        }
    }
    Ok(format!(
        "{} listed words verified, {} reachable found verbatim, {} rows with a witness, {} rows simple by the algebra, {} printed No rows never simple",
        listed_witnesses().len(),
        reachable,
        found,
        simple_rows.len(),
        no_rows
    ))
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

fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> IntPoly {
    let deg = rng.gen_range(1..=max_deg);
    let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-6..=6)).collect();
    c.push(if rng.gen() { 1 } else { -1 } * rng.gen_range(1..=3));
    IntPoly::from_i64(&c)
}

/// Determinant of the Sylvester matrix by exact Gaussian elimination.
fn sylvester_resultant(a: &IntPoly, b: &IntPoly) -> Integer {
    let (m, n) = (a.degree(), b.degree());
    let size = m + n;
    let mut rows = vec![vec![Rational::new(); size]; size];
    for r in 0..n {
        for (k, c) in a.coeffs().iter().rev().enumerate() {
            rows[r][r + k] = Rational::from(c);
        }
    }
    for r in 0..m {
        for (k, c) in b.coeffs().iter().rev().enumerate() {
            rows[n + r][r + k] = Rational::from(c);
        }
    }
    let mut det = Rational::from(1);
    for col in 0..size {
        let Some(piv) = (col..size).find(|&r| rows[r][col] != 0) else { return Integer::new() };
        if piv != col {
            rows.swap(piv, col);
            det = -det;
        }
        let p = rows[col][col].clone();
        det *= &p;
        for r in col + 1..size {
            let factor = Rational::from(&rows[r][col] / &p);
            for k in col..size {
                let t = Rational::from(&factor * &rows[col][k]);
                rows[r][k] -= t;
            }
        }
    }
    det.numer().clone()
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let id = Mat2C::identity(PREC);
    let mut worst = 0f64;
    for _ in 0..10_000 {
        let f = random_unimodular(&mut rng);
        let g = random_unimodular(&mut rng);
        let (tf, tg, tfg) = (f.trace(), g.trace(), f.mul(&g).trace());
        worst = worst.max(f.mul(&f).max_abs_diff(&f.scale(&tf).sub(&id)).to_f64());
        let rhs = id.scale(&tg.neg()).add(&f.scale(&tfg)).add(&g);
        worst = worst.max(f.mul(&g).mul(&f).max_abs_diff(&rhs).to_f64());
        let rhs = id.scale(&tfg.sub(&tf.mul(&tg))).add(&f.scale(&tg)).add(&g.scale(&tf));
        worst = worst.max(g.mul(&f).add(&f.mul(&g)).max_abs_diff(&rhs).to_f64());
    }
    ensure(worst < 1e-25, || format!("trace identity residual {:e}", worst))?;

    let four = cpx(-4.0, 0.0);
    for _ in 0..1_000 {
        let (re, im, s) = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(0.05..3.9));
        let gamma = cpx(re, im);
        let beta_f = Float::with_val(PREC, -s);
        let beta = Cpx::real(beta_f.clone());
        let (f, g) = realize(&gamma, &beta).map_err(|e| e.to_string())?;
        for map in [WordMap::Conjugation, WordMap::Cubic] {
            let w = WordSpec::parse(map.word(), 7).map_err(|e| e.to_string())?;
            let by_matrix = gamma_of_word(&f, &g, &w);
            let by_map = map.apply(&gamma, &beta);
            let scale = 1.0 + by_map.abs().to_f64();
            ensure(by_matrix.dist(&by_map).to_f64() < 1e-25 * scale, || format!("{} at ({}, {}, {})", map, re, im, s))?;
        }
        let d0 = axial_distance(&gamma, &beta, &four).map_err(|e| e.to_string())?.to_f64();
        for member in normalize_symmetry(&gamma, &beta_f).1 {
            let d = axial_distance(&member, &beta, &four).map_err(|e| e.to_string())?.to_f64();
            ensure((d - d0).abs() < 1e-12 * (1.0 + d0), || format!("orbit distance {} vs {}", d, d0))?;
        }
    }

    for _ in 0..200 {
        let a = random_poly(&mut rng, 4);
        let b = random_poly(&mut rng, 3);
        let c = random_poly(&mut rng, 3);
        ensure(resultant(&a, &b.mul(&c)) == resultant(&a, &b) * resultant(&a, &c), || format!("multiplicativity at {} / {} / {}", a, b, c))?;
        ensure(resultant(&a, &b) == sylvester_resultant(&a, &b), || format!("Sylvester determinant at {} / {}", a, b))?;
        let f = random_poly(&mut rng, 6);
        let roots = isolate_roots(&f, 96).map_err(|e| e.to_string())?;
        let real = roots.iter().filter(|r| r.is_real).count();
        ensure(real == count_real_roots(&f), || format!("Sturm vs isolation at {}", f))?;
        let total: u32 = roots.iter().map(|r| r.multiplicity).sum();
        ensure(total as usize == f.degree(), || format!("root count at {}", f))?;
    }
    Ok(format!("10^4 trace-identity pairs (worst {:.1e}), 10^3 map/matrix and orbit samples, 200 resultant and root-count samples", worst))
}

fn word_map_iteration() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let beta = cpx(-1.0, 0.0);
    let mut longest = 0;
    for _ in 0..100 {
        let r: f64 = rng.gen_range(0.01..0.99);
        let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let traj = word_map_iterate(&cpx(r * t.cos(), r * t.sin()), &beta, WordMap::Cubic, 30);
        ensure(traj.verdict == Verdict::ConvergesToZero, || format!("seed radius {} gave {:?}", r, traj.verdict))?;
        let last = traj.points.last().copied().unwrap_or((1.0, 0.0));
        ensure(last.0.hypot(last.1) < 1e-10, || format!("final modulus {:e}", last.0.hypot(last.1)))?;
        longest = longest.max(traj.points.len() - 1);
    }
    Ok(format!("100 seeds converge, at most {} iterations", longest))
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("discreteness certificates", discreteness_suite),
        ("worked-example roots", worked_example_roots),
        ("axial distance columns", distance_columns),
        ("field discriminants", discriminants),
        ("finite ramification", ramification),
        ("containing co-volumes", volumes),
        ("simple-axis witnesses and classification", simple_axis),
        ("property suites", property_suites),
        ("word-map iteration at order six", word_map_iteration),
    ];
    let mut failures = Vec::new();
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} ({}): PASS - {}", k + 1, name, detail),
            Err(why) => {
                println!("criterion {} ({}): FAIL - {}", k + 1, name, why);
                failures.push(k + 1);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {:?}", failures);
}
