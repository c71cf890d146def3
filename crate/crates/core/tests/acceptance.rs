//! One test per acceptance criterion. Each prints a single
//! `criterion N: PASS|FAIL ...` line with its elapsed time and limit, then
//! asserts both the values and the time limit.

mod common;

use std::sync::{Mutex, MutexGuard};
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config as RunnerConfig, TestRunner};

use common::*;
use kgamma::chern::whitney_check;
use kgamma::compute::{compute, Computation};
use kgamma::filtration::IndexIdentityStatus;
use kgamma::intlattice::{quotient_torsion, IntegerLattice};
use kgamma::kmodel::{Config, IndexFunction, KGenerator, QuadricCase, QuadricConfig};
use kgamma::scenarios::{
    chern_displays, coefficient_sequences, conic_bound_n, four_conics_configs, generic_sb, keysb_sweep,
    three_quadric_sample, two_quadric_configs, two_quadric_flag, FourConics, QuadricFlag,
};
use kgamma::truncring::RingSpec;

/// The criteria run one at a time so their wall-clock limits are not
/// distorted by each other.
static SERIAL: Mutex<()> = Mutex::new(());

fn start() -> (MutexGuard<'static, ()>, Instant) {
    let guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    (guard, Instant::now())
}

fn verdict(n: u32, pass: bool, detail: &str, started: Instant, limit: Option<Duration>) {
    let elapsed = started.elapsed();
    let in_time = limit.map_or(true, |l| elapsed < l);
    let limit_text = limit.map_or("no limit".to_string(), |l| format!("limit {:.0?}", l));
    let ok = pass && in_time;
    println!(
        "criterion {n}: {} {detail} ({:.2?}, {limit_text})",
        if ok { "PASS" } else { "FAIL" },
        elapsed
    );
    assert!(pass, "criterion {n}: {detail}");
    assert!(in_time, "criterion {n}: took {elapsed:.2?}, {limit_text}");
}

fn run(config: Config) -> Computation {
    compute(&config).expect("scenario computes")
}

fn torsion(c: &Computation, d: u32) -> Vec<u64> {
    c.report.torsion_only(d).divisors_u64()
}

fn all_trivial(c: &Computation) -> bool {
    c.report.per_codim.iter().all(|t| t.torsion.is_torsion_free())
}

fn two_conic_tables() -> Vec<IndexFunction> {
    let mut out = Vec::new();
    for a in [1, 2] {
        for b in [1, 2] {
            for c in [1, 2, 4] {
                let idx = IndexFunction::conics(2, |t| match (t[0], t[1]) {
                    (0, 0) => 1,
                    (1, 0) => a,
                    (0, 1) => b,
                    _ => c,
                })
                .expect("complete table");
                if idx.admissibility().is_ok() {
                    out.push(idx);
                }
            }
        }
    }
    out
}

#[test]
fn criterion_01_two_conics() {
    let (_serial, t) = start();
    let tables = two_conic_tables();
    let bad: Vec<String> =
        tables.iter().filter(|i| !all_trivial(&run(Config::Split((*i).clone())))).map(|i| format!("{:?}", i.table())).collect();
    let pass = !tables.is_empty() && bad.is_empty();
    verdict(1, pass, &format!("{} admissible tables, nontrivial: {bad:?}", tables.len()), t, Some(Duration::from_secs(1)));
}

#[test]
fn criterion_02_three_conics() {
    let (_serial, t) = start();
    let c = run(Config::Split(IndexFunction::generic_conics(3)));
    let got = torsion(&c, 2);
    verdict(2, got == [2], &format!("Gamma^2/3 torsion {got:?}"), t, Some(Duration::from_secs(1)));
}

#[test]
fn criterion_03_four_conics() {
    let mut three_eight = FourConics::uniform(4, 8, 4);
    three_eight.h[3] = 4;
    let cases: [(&str, FourConics, Vec<u64>, Vec<u64>); 5] = [
        ("generic", FourConics::uniform(2, 2, 2), vec![2; 5], vec![]),
        ("h4-d4", FourConics::uniform(4, 4, 4), vec![2; 5], vec![]),
        ("h4-d8", FourConics::uniform(4, 4, 8), vec![2; 4], vec![2]),
        ("h8-d8", FourConics::uniform(4, 8, 8), vec![2], vec![]),
        ("three-h8-d4", three_eight, vec![2; 2], vec![]),
    ];
    let (_serial, started) = start();
    let mut failures = Vec::new();
    let mut slowest = Duration::ZERO;
    for (name, cfg, d2, d3) in cases {
        let t = Instant::now();
        let c = run(Config::Split(cfg.index_function().expect("valid table")));
        let (g2, g3) = (torsion(&c, 2), torsion(&c, 3));
        let elapsed = t.elapsed();
        slowest = slowest.max(elapsed);
        if g2 != d2 || (!d3.is_empty() && g3 != d3) || elapsed >= Duration::from_secs(10) {
            failures.push(format!("{name}: d=2 {g2:?}, d=3 {g3:?} in {elapsed:.2?}"));
        }
    }
    verdict(
        3,
        failures.is_empty(),
        &format!("5 configurations, slowest {slowest:.2?}, failures {failures:?}"),
        started,
        Some(Duration::from_secs(50)),
    );
}

#[test]
fn criterion_04_five_conics() {
    let (_serial, t) = start();
    let c = run(Config::Split(IndexFunction::generic_conics(5)));
    let got = torsion(&c, 2);
    let bound = conic_bound_n(5).expect("bound defined");
    let pass = bound == 16 && got.len() as u64 == bound && got.iter().all(|&x| x == 2);
    verdict(4, pass, &format!("rank {} against bound {bound}", got.len()), t, Some(Duration::from_secs(120)));
}

#[test]
fn criterion_05_two_sb() {
    let (_serial, t) = start();
    let c = run(Config::Split(generic_sb(2)));
    let got = torsion(&c, 2);
    verdict(5, got == [3], &format!("Gamma^2/3 torsion {got:?}"), t, Some(Duration::from_secs(5)));
}

#[test]
fn criterion_06_three_sb() {
    let (_serial, t) = start();
    let c = run(Config::Split(generic_sb(3)));
    let (g2, g3) = (torsion(&c, 2), torsion(&c, 3));
    let pass = g2 == [3; 8] && g3 == [3; 2];
    verdict(
        6,
        pass,
        &format!("expected (Z/3)^8 and (Z/3)^2, computed d=2 {g2:?} and d=3 {g3:?}"),
        t,
        Some(Duration::from_secs(600)),
    );
}

#[test]
fn criterion_07_two_quadrics() {
    let (_serial, t) = start();
    let lower = run(Config::Quadric(QuadricConfig::two(QuadricCase::TwoQuadricsBiquadratic, 2, 2, 2, 4)));
    let lower_ok = torsion(&lower, 2) == [2];
    let (configs, _) = two_quadric_configs();
    let mut checked = 0;
    let mut bad = Vec::new();
    for cfg in configs {
        if two_quadric_flag(&cfg).0 != QuadricFlag::Trivial {
            continue;
        }
        checked += 1;
        let got = torsion(&run(Config::Quadric(cfg.clone())), 2);
        if !got.is_empty() {
            bad.push(format!("{}-{}{}{}-d{}: {got:?}", cfg.case.name(), cfg.e[0], cfg.e[1], cfg.f[0], cfg.d));
        }
    }
    verdict(
        7,
        lower_ok && bad.is_empty(),
        &format!("lower bound Z/2: {lower_ok}; {checked} flagged trivial, nontrivial among them: {bad:?}"),
        t,
        Some(Duration::from_secs(60)),
    );
}

#[test]
fn criterion_08_three_quadrics() {
    let (_serial, t) = start();
    let sample = three_quadric_sample(24);
    let mut bad = Vec::new();
    for cfg in &sample {
        let got = torsion(&run(Config::Quadric(cfg.clone())), 2);
        if got.len() > 7 || got.iter().any(|&x| x != 2) {
            bad.push(format!("e={:?} f={:?} g={:?} d={}: {got:?}", cfg.e, cfg.f, cfg.g, cfg.d));
        }
    }
    let pass = sample.len() >= 20 && bad.is_empty();
    verdict(8, pass, &format!("{} configurations, violations {bad:?}", sample.len()), t, Some(Duration::from_secs(600)));
}

#[test]
fn criterion_09_keysb() {
    let (_serial, t) = start();
    let mut rows = 0;
    let mut bad = Vec::new();
    for p in [3, 5] {
        for n in [2, 3] {
            for (inst, r) in keysb_sweep(p, n).expect("valid sweep") {
                rows += 1;
                if !r.divisible {
                    bad.push(format!("p={p} m={:?}", inst.m()));
                }
            }
        }
    }
    verdict(9, rows > 0 && bad.is_empty(), &format!("{rows} vectors, not divisible: {bad:?}"), t, Some(Duration::from_secs(60)));
}

#[test]
fn criterion_10_chern_regression() {
    let (_serial, t) = start();
    let displays = chern_displays();
    let wrong: Vec<String> = displays.iter().filter(|d| !d.matches).map(|d| d.label.clone()).collect();
    let mut seq_ok = true;
    for with_z in [false, true] {
        let (prime, plain) = coefficient_sequences(with_z);
        let as_i = |v: Vec<num_bigint::BigInt>| v.into_iter().map(|x| i64::try_from(x).unwrap()).collect::<Vec<_>>();
        seq_ok &= as_i(prime) == [66, 30, 30, 132, 132, 60, 264, 15];
        seq_ok &= as_i(plain) == [12, 12, 12, 24, 24, 24, 48, 6];
    }
    verdict(
        10,
        wrong.is_empty() && seq_ok,
        &format!("{} displays, mismatched {wrong:?}, coefficient tables {seq_ok}", displays.len()),
        t,
        None,
    );
}

/// Every scenario the criteria above touch, plus the four-conic enumeration.
fn all_scenarios() -> Vec<(String, Config)> {
    let mut out: Vec<(String, Config)> = two_conic_tables()
        .into_iter()
        .enumerate()
        .map(|(k, i)| (format!("two-conics-{k}"), Config::Split(i)))
        .collect();
    for n in 3..=5 {
        out.push((format!("conics-{n}"), Config::Split(IndexFunction::generic_conics(n))));
    }
    for n in 2..=3 {
        out.push((format!("sb-{n}"), Config::Split(generic_sb(n))));
    }
    for cfg in four_conics_configs().0 {
        out.push((cfg.to_string(), Config::Split(cfg.index_function().expect("admissible"))));
    }
    for cfg in two_quadric_configs().0 {
        out.push((format!("{cfg:?}"), Config::Quadric(cfg)));
    }
    for cfg in three_quadric_sample(24) {
        out.push((format!("{cfg:?}"), Config::Quadric(cfg)));
    }
    out
}

#[test]
fn criterion_11_structural_identities() {
    let (_serial, t) = start();
    let scenarios = all_scenarios();
    let mut bad = Vec::new();
    let mut identity_checked = 0;
    for (name, cfg) in &scenarios {
        let c = run(cfg.clone());
        if let Err(e) = &c.gamma_two {
            bad.push(format!("{name}: gamma-two {e}"));
        }
        match &c.report.index_identity {
            IndexIdentityStatus::Verified => identity_checked += 1,
            IndexIdentityStatus::Skipped(_) if !c.report.split_side_torsion_free => {}
            other => bad.push(format!("{name}: index identity {other}")),
        }
        if let Some((fx, fe)) = &c.filtrations {
            if !fx.is_nested() || !fe.is_nested() {
                bad.push(format!("{name}: not nested"));
            }
            if !fx.level(fx.dim() + 1).is_zero() {
                bad.push(format!("{name}: top level nonzero"));
            }
        }
    }
    verdict(
        11,
        bad.is_empty(),
        &format!("{} scenarios, index identity verified on {identity_checked}, failures {bad:?}", scenarios.len()),
        t,
        None,
    );
}

fn oracle_runs() -> Result<(), String> {
    let mut runner = TestRunner::new(RunnerConfig { cases: 256, ..RunnerConfig::default() });
    let ring = prop::collection::vec(2u32..=3, 1..=4).prop_flat_map(|t| {
        let term = prop::collection::btree_map(t.iter().map(|&r| 0..r).collect::<Vec<_>>(), -5i64..=5, 0..8);
        (Just(t), term.clone(), term)
    });
    runner
        .run(&ring, |(t, a, b)| {
            let spec = RingSpec::new(t.clone()).unwrap();
            let (a, b): (Dense, Dense) =
                (a.into_iter().filter(|(_, c)| *c != 0).collect(), b.into_iter().filter(|(_, c)| *c != 0).collect());
            prop_assert_eq!(from_poly(&(&to_poly(&spec, &a) * &to_poly(&spec, &b))), dense_mul(&t, &a, &b));
            Ok(())
        })
        .map_err(|e| format!("ring: {e}"))?;

    let lattice = (1usize..=4).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec(prop::collection::vec(-4i64..=4, n), 1..=4),
            prop::collection::vec(-4i64..=4, n),
        )
    });
    runner
        .run(&lattice, |(n, rows, v)| {
            let l = IntegerLattice::from_i64(n, &rows).unwrap();
            let q = quotient_torsion(&l, &IntegerLattice::standard(n)).unwrap();
            let (factors, free) = quotient_by_minors(n, &rows);
            prop_assert_eq!(q.divisors, factors);
            prop_assert_eq!(q.free_rank, free);
            let v: Vec<num_bigint::BigInt> = v.iter().map(|&x| x.into()).collect();
            let vi: Vec<i64> = v.iter().map(|x| i64::try_from(x).unwrap()).collect();
            prop_assert_eq!(l.contains(&v), member_by_minors(&rows, &vi));
            Ok(())
        })
        .map_err(|e| format!("lattice: {e}"))?;

    let orbits = prop::collection::vec(2u32..=3, 1..=3).prop_flat_map(|t| {
        let exps = || t.iter().map(|&r| 0..r).collect::<Vec<_>>();
        let gen = move |e: Vec<std::ops::Range<u32>>| {
            (1u64..=3, prop::collection::vec(e, 1..=3)).prop_map(|(m, o)| KGenerator::new(m, o))
        };
        (Just(t.clone()), gen(exps()), gen(exps()))
    });
    runner
        .run(&orbits, |(t, g1, g2)| {
            let spec = RingSpec::new(t).unwrap();
            prop_assert!(whitney_check(&g1, &g2, &spec));
            Ok(())
        })
        .map_err(|e| format!("whitney: {e}"))?;
    Ok(())
}

#[test]
fn criterion_12_oracle_equivalence() {
    let (_serial, t) = start();
    let outcome = oracle_runs();
    verdict(
        12,
        outcome.is_ok(),
        &format!("ring, lattice and Whitney oracles over 256 cases each: {}", outcome.err().unwrap_or_else(|| "agree".into())),
        t,
        None,
    );
}
