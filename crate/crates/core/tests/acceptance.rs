//! Acceptance criteria, one `[PASS]`/`[FAIL]` line each. Exits non-zero if
//! any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use liefol::families::{assemble, classify, constraint_residuals, FamilyId, FamilyInstance};
use liefol::foliation::{analyze, normal_form_predicates, Split};
use liefol::geometry::ricci;
use liefol::hermitian::{adapted_structures, integrability_closed_form, is_integrable};
use liefol::sample::{
    draw_conformal_minimal_3d, draw_family, draw_params, draw_sol_alphas, draw_solution, rng_for,
};
use liefol::scalar::{rat, Rational};
use liefol::series::{horizontal_ricci_defect, horizontal_ricci_gap, NilSpec, SolSpec};

const SEED: u64 = 20_240_601;
const FAMILY_DRAWS: u64 = 100;

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn family_draws() -> Vec<FamilyInstance<Rational>> {
    FamilyId::ALL
        .iter()
        .flat_map(|&id| (0..FAMILY_DRAWS).map(move |i| (id, i)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(id, i)| {
            draw_family(id, &mut rng_for(SEED, id.number() as u64, i)).expect("admissible draw")
        })
        .collect()
}

fn family_validity(draws: &[FamilyInstance<Rational>], limit: Duration) -> Outcome {
    let start = Instant::now();
    let split = Split::standard_4d();
    let bad: Vec<String> = draws
        .par_iter()
        .filter_map(|inst| {
            let a = assemble(&inst.params4d().ok()?);
            let ok =
                a.validate().valid && analyze(&a, &split).is_ok_and(|r| r.is_conformal_minimal());
            (!ok).then(|| format!("{} {:?}", inst.id, inst.params))
        })
        .collect();
    let elapsed = start.elapsed();
    outcome(
        bad.is_empty() && elapsed < limit,
        format!(
            "{} draws over 20 families, {} failures, {:.2?} (limit {:?}){}",
            draws.len(),
            bad.len(),
            elapsed,
            limit,
            bad.first()
                .map(|b| format!("; first: {b}"))
                .unwrap_or_default()
        ),
    )
}

fn round_trip(draws: &[FamilyInstance<Rational>]) -> Outcome {
    let bad: Vec<String> = draws
        .par_iter()
        .filter_map(|inst| match classify(&inst.params4d().ok()?) {
            Ok(c) if c.family == *inst => None,
            Ok(c) => Some(format!("{} {:?} -> {}", inst.id, inst.params, c.family.id)),
            Err(e) => Some(format!("{} {:?}: {e}", inst.id, inst.params)),
        })
        .collect();
    let swapped = draws.iter().filter(|d| d.swapped).count();
    outcome(
        bad.is_empty(),
        format!(
            "{}/{} recovered ({swapped} mirror draws){}",
            draws.len() - bad.len(),
            draws.len(),
            bad.first()
                .map(|b| format!("; first: {b}"))
                .unwrap_or_default()
        ),
    )
}

fn predicates(n: u64) -> Outcome {
    let split = Split::standard_4d();
    let mismatches = (0..n)
        .into_par_iter()
        .filter(|&i| {
            let p = draw_solution(&mut rng_for(SEED, 3, i));
            assert!(constraint_residuals(&p).is_zero(0.0));
            let r = analyze(&assemble(&p), &split).expect("4-d split");
            let q = normal_form_predicates(&p);
            q.totally_geodesic != r.totally_geodesic
                || q.riemannian != r.riemannian
                || q.horizontal_integrable != r.horizontal_integrable
        })
        .count();
    outcome(
        mismatches == 0,
        format!("{n} residual-free draws, {mismatches} mismatches"),
    )
}

fn hermitian(draws: &[FamilyInstance<Rational>]) -> Outcome {
    let (j1, j2) = adapted_structures::<Rational>(&Split::standard_4d()).expect("4-d split");
    let results: Vec<(bool, (bool, bool))> = draws
        .par_iter()
        .map(|inst| {
            let p = inst.params4d().expect("admissible");
            let a = assemble(&p);
            let tensor = (
                is_integrable(&a, &j1).expect("valid algebra"),
                is_integrable(&a, &j2).expect("valid algebra"),
            );
            (tensor == integrability_closed_form(&p), tensor)
        })
        .collect();
    let mismatches = results.iter().filter(|r| !r.0).count();
    let j1 = results.iter().filter(|r| r.1 .0).count();
    let j2 = results.iter().filter(|r| r.1 .1).count();
    outcome(
        mismatches == 0,
        format!(
            "{} family draws, {mismatches} mismatches (J1 integrable in {j1}, J2 in {j2})",
            draws.len()
        ),
    )
}

fn nil_ricci() -> Outcome {
    let bad: Vec<usize> = (1..=10)
        .filter(|&n| {
            let spec = NilSpec::new(n).expect("n ≥ 1");
            let computed = ricci(&spec.algebra::<Rational>()).expect("valid");
            let mut expected = vec![rat(0, 1); n + 2];
            expected[0] = rat(-(n as i64), 2);
            expected[1] = rat(-1, 2);
            expected[n + 1] = rat(1, 2);
            !(computed.is_diagonal(0.0) && computed.diagonal() == expected)
        })
        .collect();
    outcome(bad.is_empty(), format!("n = 1..10, mismatches at {bad:?}"))
}

fn sol_ricci(count: u64) -> Outcome {
    let bad = (0..count)
        .into_par_iter()
        .filter(|&i| {
            let mut rng = rng_for(SEED, 6, i);
            let n = 1 + (i as usize % 8);
            let alphas = draw_sol_alphas(&mut rng, n);
            let sum: Rational = alphas.iter().sum();
            let norm2: Rational = alphas.iter().map(|a| a * a).sum();
            let mut expected = vec![-norm2];
            expected.extend(alphas.iter().map(|a| -(a * &sum)));
            let computed = ricci(&SolSpec::new(alphas).expect("n ≥ 1").algebra()).expect("valid");
            !(computed.is_diagonal(0.0) && computed.diagonal() == expected)
        })
        .count();
    outcome(
        bad == 0,
        format!("{count} random α with n ≤ 8, {bad} mismatches"),
    )
}

fn dichotomy(count: u64) -> Outcome {
    let split3 = Split::new(3, [2]).expect("3-d split");
    let nonzero = (0..count)
        .into_par_iter()
        .filter(|&i| {
            let a = draw_conformal_minimal_3d(&mut rng_for(SEED, 7, i));
            let d = horizontal_ricci_defect(&a, &split3).expect("conformal minimal draw");
            d.diagonal_gap != rat(0, 1) || d.off_diagonal != rat(0, 1)
        })
        .count();
    let nil_bad: Vec<usize> = (2..=10)
        .filter(|&n| {
            let spec = NilSpec::new(n).expect("n ≥ 1");
            let gap =
                horizontal_ricci_gap(&spec.algebra::<Rational>(), &spec.split(1).expect("k = 1"));
            gap.ok() != Some(rat(n as i64 - 1, 2))
        })
        .collect();
    outcome(
        nonzero == 0 && nil_bad.is_empty(),
        format!(
            "{count} 3-d draws with {nonzero} nonzero gaps; Nil gap (n−1)/2 for n = 2..10, mismatches at {nil_bad:?}"
        ),
    )
}

fn residual_jacobi(count: u64, limit: Duration) -> Outcome {
    let start = Instant::now();
    let results: Vec<(bool, bool)> = (0..count)
        .into_par_iter()
        .map(|i| {
            let p = draw_params(&mut rng_for(SEED, 8, i));
            (
                constraint_residuals(&p).is_zero(0.0),
                assemble(&p).validate().valid,
            )
        })
        .collect();
    let elapsed = start.elapsed();
    let mismatches = results.iter().filter(|(r, j)| r != j).count();
    let solutions = results.iter().filter(|(_, j)| *j).count();
    outcome(
        mismatches == 0 && elapsed < limit,
        format!(
            "{count} draws ({solutions} solutions, {} non-solutions), {mismatches} mismatches, {elapsed:.2?} (limit {limit:?})",
            count as usize - solutions
        ),
    )
}

fn sweep_determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_liefol"))
            .args([
                "sweep",
                "--family",
                "all",
                "--samples",
                "100",
                "--seed",
                "7",
            ])
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    let ok =
        a.status.success() && b.status.success() && !a.stdout.is_empty() && a.stdout == b.stdout;
    outcome(
        ok,
        format!(
            "exit codes {:?}/{:?}, {} bytes, identical: {}",
            a.status.code(),
            b.status.code(),
            a.stdout.len(),
            a.stdout == b.stdout
        ),
    )
}

fn main() {
    let draws = family_draws();
    let criteria: Vec<Criterion> = vec![
        (
            "family validity",
            Box::new(|| family_validity(&draws, Duration::from_secs(60))),
        ),
        ("classification round trip", Box::new(|| round_trip(&draws))),
        (
            "closed-form foliation predicates",
            Box::new(|| predicates(10_000)),
        ),
        ("Hermitian integrability", Box::new(|| hermitian(&draws))),
        ("Nil Ricci closed form", Box::new(nil_ricci)),
        ("Sol Ricci closed form", Box::new(|| sol_ricci(200))),
        ("horizontal Ricci dichotomy", Box::new(|| dichotomy(1_000))),
        (
            "residuals versus Jacobi",
            Box::new(|| residual_jacobi(100_000, Duration::from_secs(120))),
        ),
        ("sweep determinism", Box::new(sweep_determinism)),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        if !o.passed {
            failed += 1;
        }
        println!(
            "[{}] AC{} {name}: {}",
            if o.passed { "PASS" } else { "FAIL" },
            k + 1,
            o.detail
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
