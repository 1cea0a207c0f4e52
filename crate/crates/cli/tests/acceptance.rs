//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero on any failure.

mod common;

use std::f64::consts::PI;
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use entangle_core::bipartite::{bipartite_determinant, scaled_determinant, schmidt_decompose, Cut};
use entangle_core::classify::{classify, DETERMINANT_NORMALIZATION_WARNING};
use entangle_core::hyperdet::cayley_hyperdeterminant;
use entangle_core::io::read_state;
use entangle_core::majorana::{
    classify_dicke, classify_symmetric, coherent_state, state_from_stars, DickeExpansion, SpherePoint,
};
use entangle_core::qutrit::{
    hyperdeterminant_333, phi_family, qutrit_invariants, NormalFormCoefficients, QutritInvariantReport,
};
use entangle_core::sampling::{invariance_suite, GroupSpec, NamedInvariant};
use entangle_core::state::{bell_state, gates, ghz_state, w_state, BellState, LocalUnitary};
use entangle_core::{Complex64, StateVector64};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use tempfile::TempDir;

type Q = BigRational;
type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

fn gaussian(r: &mut ChaCha20Rng) -> Complex64 {
    Complex64::new(r.sample(StandardNormal), r.sample(StandardNormal))
}

fn random_vector(len: usize, r: &mut ChaCha20Rng) -> Vec<Complex64> {
    (0..len).map(|_| gaussian(r)).collect()
}

fn random_state(dims: &[usize], r: &mut ChaCha20Rng) -> StateVector64 {
    StateVector64::from_amplitudes(dims, random_vector(dims.iter().product(), r)).unwrap()
}

fn chordal(a: &SpherePoint<f64>, b: &SpherePoint<f64>) -> f64 {
    let v = |p: &SpherePoint<f64>| [p.theta.sin() * p.phi.cos(), p.theta.sin() * p.phi.sin(), p.theta.cos()];
    let (x, y) = (v(a), v(b));
    ((x[0] - y[0]).powi(2) + (x[1] - y[1]).powi(2) + (x[2] - y[2]).powi(2)).sqrt()
}

fn random_point(r: &mut ChaCha20Rng) -> SpherePoint<f64> {
    let cos: f64 = r.random_range(-1.0..=1.0);
    SpherePoint::new(cos.acos(), r.random_range(0.0..2.0 * PI))
}

fn named_constants() -> Check {
    let ghz = cayley_hyperdeterminant(&ghz_state::<f64>(3).unwrap()).unwrap();
    ensure((ghz - 0.25).norm() < 1e-12, || format!("Det(GHZ3) = {ghz}"))?;
    let w = cayley_hyperdeterminant(&w_state::<f64>()).unwrap();
    ensure(w.norm() < 1e-12, || format!("Det(W) = {w}"))?;

    let target = 4096.0 / 27.0;
    let phi = phi_family(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)).unwrap();
    let closed = phi.delta_closed_form;
    ensure((closed - target).norm() / target < 1e-9, || format!("closed-form Δ = {closed}"))?;
    let zero = Complex64::new(0.0, 0.0);
    let report = QutritInvariantReport {
        i6: Complex64::new(-8.0, 0.0),
        i9: zero,
        i12: zero,
        j12: entangle_core::qutrit::bremner_j12(&Complex64::new(-8.0, 0.0), &zero),
        delta: zero,
    };
    let pipeline = hyperdeterminant_333(&report).unwrap();
    ensure((pipeline - target).norm() / target < 1e-9, || format!("pipeline Δ = {pipeline}"))?;
    ensure((phi.delta - target).norm() / target < 1e-9, || format!("phi_family Δ = {}", phi.delta))?;

    let phi_plus = bell_state::<f64>(BellState::PhiPlus);
    let zx = gates::pauli_z::<f64>() * gates::pauli_x::<f64>();
    let mut worst: f64 = 0.0;
    for (op, target) in
        [(gates::pauli_z(), BellState::PhiMinus), (gates::pauli_x(), BellState::PsiPlus), (zx, BellState::PsiMinus)]
    {
        let u = LocalUnitary::single(&[2, 2], 0, op).unwrap();
        let f = phi_plus.apply_local_unitary(&u).unwrap().fidelity(&bell_state(target)).unwrap();
        worst = worst.max((f - 1.0).abs());
    }
    ensure(worst < 1e-12, || format!("Bell fidelity off by {worst:e}"))?;
    Ok(format!(
        "Det(GHZ3) = {}, |Det(W)| = {:.1e}, Δ(1,1) = {}, Bell fidelity error {worst:.1e}",
        ghz.re,
        w.norm(),
        pipeline.re
    ))
}

fn schmidt_suite() -> Check {
    let h = 1.0 / 2f64.sqrt();
    for b in [BellState::PhiPlus, BellState::PhiMinus, BellState::PsiPlus, BellState::PsiMinus] {
        let sd = schmidt_decompose(&bell_state::<f64>(b), &Cut::single(0), 1e-9).unwrap();
        ensure(sd.rank == 2, || format!("{b:?} rank {}", sd.rank))?;
        ensure(sd.lambdas.iter().all(|l| (l - h).abs() < 1e-12), || format!("{b:?} lambdas {:?}", sd.lambdas))?;
    }
    let mut r = rng(1002);
    for _ in 0..100 {
        let (d1, d2) = (r.random_range(2..=7), r.random_range(2..=7));
        let p = StateVector64::product(&[random_vector(d1, &mut r), random_vector(d2, &mut r)]).unwrap();
        let rank = schmidt_decompose(&p, &Cut::single(0), 1e-9).unwrap().rank;
        ensure(rank == 1, || format!("product [{d1}, {d2}] has rank {rank}"))?;
    }
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let dims = [r.random_range(2..=7), r.random_range(2..=7)];
        let s = random_state(&dims, &mut r);
        let back = schmidt_decompose(&s, &Cut::single(0), 1e-9).unwrap().reconstruct().unwrap();
        worst = worst.max(back.max_abs_diff(&s).unwrap());
    }
    ensure(worst < 1e-8, || format!("reconstruction residual {worst:e}"))?;
    Ok(format!("Bell λ exact to 1e-12, 100 products rank 1, max reconstruction residual {worst:.1e}"))
}

fn invariance() -> Check {
    let mut r = rng(1003);
    let det = invariance_suite(
        &random_state(&[2, 2], &mut r),
        &NamedInvariant::BipartiteDeterminant,
        &GroupSpec::special(&[2, 2]),
        1000,
        31,
    )
    .unwrap();
    ensure(det.max_abs_drift < 1e-9, || format!("det drift {:e}", det.max_abs_drift))?;
    let hyper = invariance_suite(
        &random_state(&[2, 2, 2], &mut r),
        &NamedInvariant::CayleyHyperdeterminant,
        &GroupSpec::special(&[2, 2, 2]),
        1000,
        32,
    )
    .unwrap();
    ensure(hyper.max_abs_drift < 1e-9, || format!("hyperdet drift {:e}", hyper.max_abs_drift))?;
    // A rank-2 state in 3 x 4, so rank preservation is not trivially full rank.
    let rank2 = StateVector64::from_amplitudes(
        &[3, 4],
        (0..12)
            .map(|k| {
                let (i, j) = (k / 4, k % 4);
                Complex64::new((i + 1) as f64 * (j as f64 - 1.5), 0.0)
                    + Complex64::new(0.0, (i as f64 - 1.0) * (j * j) as f64)
            })
            .collect(),
    )
    .unwrap();
    let cut = Cut::single(0);
    let base_rank = schmidt_decompose(&rank2, &cut, 1e-9).unwrap().rank;
    ensure(base_rank == 2, || format!("control state has rank {base_rank}"))?;
    let mut rank_drift: f64 = 0.0;
    for (s, seed) in [(rank2, 33), (random_state(&[3, 4], &mut r), 34)] {
        let rep =
            invariance_suite(&s, &NamedInvariant::SchmidtRank(cut.clone()), &GroupSpec::unitary(&[3, 4]), 1000, seed)
                .unwrap();
        rank_drift = rank_drift.max(rep.max_abs_drift);
    }
    ensure(rank_drift < 1e-9, || format!("Schmidt rank drift {rank_drift}"))?;
    let control = invariance_suite(
        &bell_state::<f64>(BellState::PhiPlus),
        &NamedInvariant::Amplitude(vec![0, 0]),
        &GroupSpec::special(&[2, 2]),
        1000,
        35,
    )
    .unwrap();
    ensure(control.max_abs_drift > 0.01, || format!("negative control drift only {:e}", control.max_abs_drift))?;
    Ok(format!(
        "max drift det {:.1e}, hyperdet {:.1e}, Schmidt rank {rank_drift}; control {:.3}",
        det.max_abs_drift, hyper.max_abs_drift, control.max_abs_drift
    ))
}

fn majorana_suite() -> Check {
    let ghz = classify_symmetric(&ghz_state::<f64>(3).unwrap()).unwrap().constellation;
    ensure(ghz.partition == vec![1, 1, 1], || format!("GHZ partition {:?}", ghz.partition))?;
    for k in 0..3 {
        let expect = SpherePoint::new(PI / 2.0, 2.0 * PI * k as f64 / 3.0);
        let d = ghz.stars.iter().map(|s| chordal(s, &expect)).fold(f64::INFINITY, f64::min);
        ensure(d < 1e-8, || format!("GHZ cube root {k} off by {d:e}"))?;
    }
    let w = classify_symmetric(&w_state::<f64>()).unwrap().constellation;
    ensure(w.partition == vec![2, 1], || format!("W partition {:?}", w.partition))?;
    let bell = classify_symmetric(&bell_state::<f64>(BellState::PhiPlus)).unwrap().constellation;
    ensure(bell.partition == vec![1, 1], || format!("Bell partition {:?}", bell.partition))?;
    let gap = chordal(&bell.stars[0], &bell.stars[1]);
    ensure((gap - 2.0).abs() < 1e-8, || format!("Bell stars {gap} apart"))?;

    let mut r = rng(1004);
    let mut worst_dir: f64 = 0.0;
    for i in 0..60 {
        let n = 1 + i % 8;
        let dir = match i {
            0 => SpherePoint::north(),
            1 => SpherePoint::south(),
            _ => random_point(&mut r),
        };
        let c = classify_dicke(coherent_state(&dir, n).unwrap(), 1e-6).unwrap().constellation;
        ensure(c.partition == vec![n], || format!("coherent n = {n} partition {:?}", c.partition))?;
        worst_dir = worst_dir.max(chordal(&c.stars[0], &dir));
    }
    ensure(worst_dir < 1e-8, || format!("coherent direction off by {worst_dir:e}"))?;

    let mut degenerate = 0;
    for i in 0..500 {
        let n = r.random_range(2..=6);
        let dicke = if i % 2 == 0 {
            DickeExpansion::new(random_vector(n + 1, &mut r)).unwrap()
        } else {
            let mut left = n;
            let mut pts = Vec::new();
            while left > 0 {
                let mut p = random_point(&mut r);
                p.multiplicity = r.random_range(1..=left);
                left -= p.multiplicity;
                pts.push(p);
            }
            state_from_stars(&pts).unwrap()
        };
        let c = classify_dicke(dicke, 1e-6).unwrap().constellation;
        let nontrivial = c.partition.iter().any(|&m| m > 1);
        ensure(c.discriminant_vanishes(1e-8) == nontrivial, || {
            format!("case {i}: partition {:?}, |disc| = {:e}", c.partition, c.discriminant.norm())
        })?;
        degenerate += nontrivial as usize;
    }
    Ok(format!(
        "named constellations match, coherent direction error {worst_dir:.1e}, discriminant test 500/500 ({degenerate} degenerate)"
    ))
}

fn resultant_form(s: &StateVector64) -> Complex64 {
    let c = |i: usize, j: usize, k: usize| s.amplitudes()[4 * i + 2 * j + k];
    let det = |m: [[Complex64; 2]; 2]| m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let slice = |i: usize| [[c(i, 0, 0), c(i, 0, 1)], [c(i, 1, 0), c(i, 1, 1)]];
    let (a0, a1) = (slice(0), slice(1));
    let (a, cc) = (det(a0), det(a1));
    let sum = [[a0[0][0] + a1[0][0], a0[0][1] + a1[0][1]], [a0[1][0] + a1[1][0], a0[1][1] + a1[1][1]]];
    let b = det(sum) - a - cc;
    b * b - a * cc * 4.0
}

/// Exact invariants of the qutrit normal form from the power sums of the cubes.
fn qutrit_oracle(a: &[Q; 3]) -> [Q; 5] {
    let int = |n: i64| Q::from_integer(BigInt::from(n));
    let cube = |v: &Q| v * v * v;
    let (x, y, z) = (cube(&a[0]), cube(&a[1]), cube(&a[2]));
    let p = &x + &y + &z;
    let e2 = &x * &y + &y * &z + &z * &x;
    let e3 = &x * &y * &z;
    let i6 = &p * &p - int(12) * &e2;
    let i9 = -((&x - &y) * (&x - &z) * (&y - &z));
    let i12 = -(&p * (&p * &p * &p + int(216) * &e3));
    let j12 = (-(&i12) - &i6 * &i6) / int(24);
    let i9sq = &i9 * &i9;
    let c0 = &i6 * &i6 * &i6 * &i9sq + int(108) * &i9sq * &i9sq;
    let c1 = int(36) * &i6 * &i9sq;
    let c2 = -(&i6 * &i6);
    let delta = ((int(-32) * &j12 + c2) * &j12 + c1) * &j12 + c0;
    [i6, i9, i12, j12, delta]
}

fn consistency_oracles() -> Check {
    let mut r = rng(1005);
    let mut worst_hyper: f64 = 0.0;
    for _ in 0..1000 {
        let s = random_state(&[2, 2, 2], &mut r);
        worst_hyper = worst_hyper.max((cayley_hyperdeterminant(&s).unwrap() - resultant_form(&s)).norm());
    }
    ensure(worst_hyper < 1e-12, || format!("hyperdet vs resultant form {worst_hyper:e}"))?;

    let mut worst_rel: f64 = 0.0;
    let mut worst_zero: f64 = 0.0;
    let mut zeros = 0;
    let mut triples = 0;
    while triples < 200 {
        let a: [Q; 3] = std::array::from_fn(|_| {
            Q::new(BigInt::from(r.random_range(-20..=20)), BigInt::from(r.random_range(1..=12)))
        });
        if a.iter().all(Zero::is_zero) {
            continue;
        }
        triples += 1;
        let exact = qutrit_oracle(&a);
        let f = |v: &Q| v.to_f64().unwrap();
        let c = |v: &Q| Complex64::new(f(v), 0.0);
        let rep = qutrit_invariants(&NormalFormCoefficients::new(c(&a[0]), c(&a[1]), c(&a[2])).unwrap()).unwrap();
        let got = [rep.i6, rep.i9, rep.i12, rep.j12, rep.delta];
        for (k, (g, w)) in got.iter().zip(&exact).enumerate() {
            let w = f(w);
            if w != 0.0 {
                worst_rel = worst_rel.max((g - w).norm() / w.abs());
            } else if k < 4 {
                worst_rel = worst_rel.max(g.norm());
            } else {
                // Δ vanishes exactly: judge the computed value against the size of its terms.
                zeros += 1;
                let (i6, i9, j) = (f(&exact[0]).abs(), f(&exact[1]).abs(), f(&exact[3]).abs());
                let scale = i6.powi(3) * i9 * i9
                    + i6 * i6 * j * j
                    + 36.0 * i6 * i9 * i9 * j
                    + 108.0 * i9.powi(4)
                    + 32.0 * j.powi(3);
                worst_zero = worst_zero.max(g.norm() / scale);
            }
        }
    }
    ensure(worst_rel < 1e-9, || format!("qutrit pipeline relative error {worst_rel:e}"))?;
    ensure(worst_zero < 1e-20, || format!("vanishing Δ off by {worst_zero:e} of its term scale"))?;
    Ok(format!(
        "hyperdet max error {worst_hyper:.1e}; qutrit max relative error {worst_rel:.1e} on 200 triples ({zeros} with Δ = 0, worst {worst_zero:.1e} of term scale)"
    ))
}

fn determinant_discrepancy() -> Check {
    let phi = bell_state::<f64>(BellState::PhiPlus);
    let det = bipartite_determinant(&phi).unwrap();
    let scaled = scaled_determinant(&phi).unwrap();
    ensure((det - 0.5).norm() < 1e-12, || format!("det(Φ+) = {det}"))?;
    ensure((scaled - 1.0).norm() < 1e-12, || format!("2·det(Φ+) = {scaled}"))?;
    let report = classify("phi_plus", &phi).unwrap();
    ensure(report.warnings.iter().any(|w| w == DETERMINANT_NORMALIZATION_WARNING), || {
        format!("warnings {:?}", report.warnings)
    })?;
    Ok(format!("det = {}, 2·det = {}, normalization warning present", det.re, scaled.re))
}

fn cli() -> Check {
    let dir = TempDir::new().unwrap();
    let mut worst: f64 = 0.0;
    for e in common::CORPUS {
        let path = common::generate(&dir, e);
        let p = path.to_str().unwrap();
        common::compare_golden(&format!("{}.classify.json", e.name), &common::ok(&["classify", p, "--json"]))?;
        let loaded = read_state::<f64, _>(fs::File::open(&path).unwrap()).unwrap();
        worst = worst.max(loaded.state.max_abs_diff(&common::expected_state(e.name)).unwrap());
    }
    ensure(worst < 1e-12, || format!("file round trip off by {worst:e}"))?;

    let ghz = common::generate(&dir, common::by_name("ghz3"));
    let psi = common::generate(&dir, common::by_name("bell_psi_minus"));
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{").unwrap();
    let cases: [(&[&str], i32); 6] = [
        (&["classify", ghz.to_str().unwrap()], 0),
        (&["classify", bad.to_str().unwrap()], 2),
        (&["det", ghz.to_str().unwrap()], 2),
        (&["majorana", psi.to_str().unwrap()], 2),
        (&["bogus"], 2),
        (&["qutrit-inv", "--a1", "1e20", "--a2", "3e19", "--a3", "1"], 3),
    ];
    for (args, want) in cases {
        let got = common::code(args);
        ensure(got == want, || format!("{args:?} exited {got}, expected {want}"))?;
    }
    Ok(format!(
        "{} corpus states match golden JSON, round trip error {worst:.1e}, exit codes 0/2/3",
        common::CORPUS.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("1 named constants", Duration::from_secs(1), named_constants),
        ("2 Schmidt suite", Duration::from_secs(5), schmidt_suite),
        ("3 invariance suite", Duration::from_secs(30), invariance),
        ("4 Majorana suite", Duration::from_secs(10), majorana_suite),
        ("5 consistency oracles", Duration::MAX, consistency_oracles),
        ("6 determinant normalization", Duration::MAX, determinant_discrepancy),
        ("7 CLI round trip", Duration::MAX, cli),
    ];
    let mut failed = 0;
    for (name, limit, f) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            o => o,
        };
        let time =
            if limit == Duration::MAX { format!("{elapsed:.2?}") } else { format!("{elapsed:.2?} of {limit:?}") };
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail} [{time}]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail} [{time}]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
