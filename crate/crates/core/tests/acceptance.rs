//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::panic;
use std::time::{Duration, Instant};

use bilaurent::laws::{self, random_poly};
use bilaurent::{
    format_poly, parse_poly, scalar_product, shift_apply, Field, FiniteSeq, Floats, LaurentPoly,
    PeriodicSeq, PolyMatrix, PrimeField, QSeq, Rationals, SeqVector, Sequence, System,
};
use common::{enumerate_members, exact_log, is_member, raw_entries};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_611;

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

fn within(elapsed: Duration, limit_secs: u64) -> bool {
    elapsed <= Duration::from_secs(limit_secs)
}

fn gf7() -> PrimeField {
    PrimeField::new(7).unwrap()
}

fn scalar_golden_values() -> Outcome {
    let start = Instant::now();
    let d = parse_poly("X^-1 + 2*X^2", 1, &Rationals).unwrap();
    let w = QSeq::from_ints(Rationals, 1, [([-1], 3), ([2], 4)]).unwrap();
    let first = scalar_product(&d, &w).unwrap();
    let d = parse_poly("X^-1 + X", 1, &Rationals).unwrap();
    let w = QSeq::from_ints(Rationals, 1, [([-1], 1), ([1], 2)]).unwrap();
    let second = scalar_product(&d, &w).unwrap();
    let ok = first == BigRational::from_integer(11.into())
        && second == BigRational::from_integer(3.into())
        && within(start.elapsed(), 1);
    outcome(
        ok,
        format!("values {first} and {second}, expected 11 and 3"),
    )
}

fn table_reproduction() -> Outcome {
    let start = Instant::now();
    let input = [(-2, 0), (-1, 1), (0, 2), (1, 3), (2, 0)];
    let expected = [0, 1, 2, 1, 0];

    let q = Rationals;
    let kernel = parse_poly("1/2*X^-1 + 1/2*X", 1, &q).unwrap();
    let w = FiniteSeq::from_ints(q, 1, input.map(|(k, v)| ([k], v))).unwrap();
    let out = shift_apply(&kernel, &w).unwrap();
    let exact: Vec<BigRational> = (-2..=2).map(|k| out.coeff(&[k].into()).unwrap()).collect();
    let exact_ok = exact
        .iter()
        .zip(expected)
        .all(|(v, e)| *v == BigRational::from_integer(e.into()));

    let f = Floats::default();
    let kernel = parse_poly("0.5*X^-1 + 0.5*X", 1, &f).unwrap();
    let w = FiniteSeq::from_ints(f, 1, input.map(|(k, v)| ([k], v))).unwrap();
    let out = shift_apply(&kernel, &w).unwrap();
    let float: Vec<f64> = (-2..=2).map(|k| out.coeff(&[k].into()).unwrap()).collect();
    let float_ok = float
        .iter()
        .zip(expected)
        .all(|(v, e)| (v - e as f64).abs() <= 1e-9);

    let shown: Vec<String> = exact.iter().map(ToString::to_string).collect();
    outcome(
        exact_ok && float_ok && within(start.elapsed(), 1),
        format!(
            "output over k=-2..2 is ({}) rational, {float:?} float; expected {expected:?}",
            shown.join(", ")
        ),
    )
}

/// Runs `suite` over {GF(7), Q} × r ∈ {1,2,3} × {finite, periodic}.
fn law_grid(
    trials: usize,
    gf: impl Fn(&PrimeField, usize, bool) -> laws::SuiteReport,
    q: impl Fn(&Rationals, usize, bool) -> laws::SuiteReport,
) -> (usize, usize, Option<String>) {
    let mut reports = Vec::new();
    for rank in 1..=3 {
        for periodic in [false, true] {
            reports.push(gf(&gf7(), rank, periodic));
            reports.push(q(&Rationals, rank, periodic));
        }
    }
    let total = reports.iter().map(|r| r.trials).sum();
    let failures = reports.iter().map(|r| r.failures).sum();
    let first = reports.into_iter().find_map(|r| r.first_failure);
    assert!(total >= trials * 12);
    (total, failures, first)
}

fn grid_outcome(
    start: Instant,
    limit: u64,
    (total, failures, first): (usize, usize, Option<String>),
) -> Outcome {
    let elapsed = start.elapsed();
    let mut detail = format!(
        "{total} trials, {failures} failures, {:.1}s",
        elapsed.as_secs_f64()
    );
    if let Some(f) = first {
        detail.push_str(&format!("; first failure: {f}"));
    }
    outcome(failures == 0 && within(elapsed, limit), detail)
}

fn adjoint_suite() -> Outcome {
    let start = Instant::now();
    let n = 1000;
    let grid = law_grid(
        n,
        |f, r, p| {
            if p {
                laws::adjoint_suite::<_, PeriodicSeq<_>>(f, r, n, SEED).unwrap()
            } else {
                laws::adjoint_suite::<_, FiniteSeq<_>>(f, r, n, SEED).unwrap()
            }
        },
        |f, r, p| {
            if p {
                laws::adjoint_suite::<_, PeriodicSeq<_>>(f, r, n, SEED).unwrap()
            } else {
                laws::adjoint_suite::<_, FiniteSeq<_>>(f, r, n, SEED).unwrap()
            }
        },
    );
    grid_outcome(start, 30, grid)
}

fn module_action_suite() -> Outcome {
    let start = Instant::now();
    let n = 1000;
    let grid = law_grid(
        n,
        |f, r, p| {
            if p {
                laws::module_action_suite::<_, PeriodicSeq<_>>(f, r, n, SEED).unwrap()
            } else {
                laws::module_action_suite::<_, FiniteSeq<_>>(f, r, n, SEED).unwrap()
            }
        },
        |f, r, p| {
            if p {
                laws::module_action_suite::<_, PeriodicSeq<_>>(f, r, n, SEED).unwrap()
            } else {
                laws::module_action_suite::<_, FiniteSeq<_>>(f, r, n, SEED).unwrap()
            }
        },
    );
    grid_outcome(start, 30, grid)
}

fn duality_extraction() -> Outcome {
    let n = 500;
    let mut reports = Vec::new();
    for rank in 1..=3 {
        reports.push(laws::extraction_suite::<_, FiniteSeq<_>>(&Rationals, rank, n, SEED).unwrap());
        reports
            .push(laws::extraction_suite::<_, PeriodicSeq<_>>(&Rationals, rank, n, SEED).unwrap());
        reports.push(laws::delta_extraction_suite(&Rationals, rank, n, SEED).unwrap());
        reports.push(laws::delta_extraction_suite(&gf7(), rank, n, SEED).unwrap());
    }
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(ToString::to_string)
        .collect();
    let total: usize = reports.iter().map(|r| r.trials).sum();
    outcome(
        failed.is_empty(),
        format!(
            "{total} cases, {} failing suites {}",
            failed.len(),
            failed.join("; ")
        ),
    )
}

fn random_system(q: u64, rng: &mut ChaCha8Rng) -> (PolyMatrix<PrimeField>, usize) {
    let f = PrimeField::new(q).unwrap();
    let k = rng.gen_range(1..=2);
    let l = rng.gen_range(1..=2);
    // keep q^(l·D) small enough to enumerate
    let mut d = rng.gen_range(1..=8usize);
    while (q as f64).powi((l * d) as i32) > 65_536.0 {
        d -= 1;
    }
    let grid = (0..k)
        .map(|_| {
            (0..l)
                .map(|_| {
                    let terms: Vec<_> = (0..rng.gen_range(0..=3))
                        .map(|_| ([rng.gen_range(-2..=2i64)], rng.gen_range(0..q)))
                        .collect();
                    LaurentPoly::from_terms(f, 1, terms.into_iter().map(|(e, c)| (e.into(), c)))
                        .unwrap()
                })
                .collect()
        })
        .collect();
    (PolyMatrix::new(grid).unwrap(), d)
}

fn kernel_vs_brute_force() -> Outcome {
    let start = Instant::now();
    let gf2 = PrimeField::new(2).unwrap();
    let diff =
        System::new(PolyMatrix::new(vec![vec![parse_poly("X - X^-1", 1, &gf2).unwrap()]]).unwrap());
    let mut problems = Vec::new();
    for n in [2usize, 4] {
        let dim = diff.kernel_dimension(&[n]).unwrap();
        let members = enumerate_members(&raw_entries(diff.matrix()), &[n], 2).len();
        if dim != 2 || members != 4 {
            problems.push(format!(
                "difference system at ({n}): dimension {dim}, {members} members"
            ));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for case in 0..50 {
        let q = if case % 2 == 0 { 2 } else { 3 };
        let (m, d) = random_system(q, &mut rng);
        let system = System::new(m);
        let dim = system.kernel_dimension(&[d]).unwrap();
        let members = enumerate_members(&raw_entries(system.matrix()), &[d], q).len();
        if exact_log(members, q) != Some(dim) {
            problems.push(format!(
                "random case {case} over GF({q}) at ({d}): dimension {dim}, {members} members"
            ));
        }
    }
    let elapsed = start.elapsed();
    outcome(
        problems.is_empty() && within(elapsed, 60),
        format!(
            "2 golden + 50 random systems, {} mismatches, {:.1}s {}",
            problems.len(),
            elapsed.as_secs_f64(),
            problems.join("; ")
        ),
    )
}

fn two_variable_system() -> Outcome {
    let gf3 = PrimeField::new(3).unwrap();
    let p = |s: &str| parse_poly(s, 1, &gf3).unwrap();
    let system = System::new(
        PolyMatrix::new(vec![
            vec![p("X + X^-1"), p("1")],
            vec![p("0"), p("X^-1 - 1")],
        ])
        .unwrap(),
    );
    let raw = raw_entries(system.matrix());
    let members = enumerate_members(&raw, &[4], 3);
    let dim = system.kernel_dimension(&[4]).unwrap();
    let constant_second = members.iter().all(|w| w[4..].iter().all(|&v| v == w[4]));
    // W_1 solving the first equation against a non-constant W_2 is rejected
    let w1 = [0i64, 0, 0, 0];
    let w2 = [0i64, 1, 0, 0];
    let candidate = SeqVector::periodic(vec![
        PeriodicSeq::from_ints(gf3, vec![4], &w1).unwrap(),
        PeriodicSeq::from_ints(gf3, vec![4], &w2).unwrap(),
    ])
    .unwrap();
    let rejected = !system.contains(&candidate).unwrap()
        && !is_member(&raw, &[4], 3, &[0, 0, 0, 0, 0, 1, 0, 0]);
    let basis_ok = system
        .periodic_kernel(&[4])
        .unwrap()
        .basis
        .iter()
        .all(|b| system.contains(b).unwrap());
    let ok = exact_log(members.len(), 3) == Some(dim)
        && dim == 3
        && constant_second
        && rejected
        && basis_ok;
    outcome(
        ok,
        format!(
            "dimension {dim}, {} enumerated members, second component constant: {constant_second}, non-constant rejected: {rejected}",
            members.len()
        ),
    )
}

const FUZZ_ALPHABET: &[u8] = b"X0123456789^*+-/.() \t1X2eE_xa#";

fn parser_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut mismatches = Vec::new();
    fn check<K: Field>(f: &K, rng: &mut ChaCha8Rng, bad: &mut Vec<String>) {
        for _ in 0..500 {
            let rank = rng.gen_range(1..=3);
            let d = random_poly(f, rank, rng);
            let text = format_poly(&d);
            match parse_poly(&text, rank, f) {
                Ok(back) if back == d => {}
                other => bad.push(format!("{text:?} -> {other:?}")),
            }
        }
    }
    check(&Rationals, &mut rng, &mut mismatches);
    check(&gf7(), &mut rng, &mut mismatches);
    check(&PrimeField::new(2).unwrap(), &mut rng, &mut mismatches);

    let mut panics = 0;
    let mut accepted = 0;
    let hook = panic::take_hook();
    panic::set_hook(Box::new(|_| {}));
    for i in 0..10_000 {
        let len = rng.gen_range(0..24);
        let bytes: Vec<u8> = (0..len)
            .map(|_| FUZZ_ALPHABET[rng.gen_range(0..FUZZ_ALPHABET.len())])
            .collect();
        let text = String::from_utf8(bytes).unwrap();
        let rank = 1 + i % 3;
        match panic::catch_unwind(|| {
            (
                parse_poly(&text, rank, &Rationals).is_ok(),
                parse_poly(&text, rank, &Floats::default()).is_ok(),
            )
        }) {
            Ok((a, b)) => accepted += usize::from(a || b),
            Err(_) => panics += 1,
        }
    }
    panic::set_hook(hook);
    outcome(
        mismatches.is_empty() && panics == 0,
        format!(
            "1500 round trips, {} mismatches; 10000 fuzz inputs, {accepted} parsed, {panics} panics {}",
            mismatches.len(),
            mismatches.first().cloned().unwrap_or_default()
        ),
    )
}

fn isomorphism_round_trips() -> Outcome {
    let mut reports = Vec::new();
    for rank in 1..=3 {
        reports.push(laws::isomorphism_suite(&Rationals, rank, 500, SEED).unwrap());
        reports.push(laws::isomorphism_suite(&gf7(), rank, 500, SEED).unwrap());
    }
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(ToString::to_string)
        .collect();
    outcome(
        failed.is_empty(),
        format!(
            "{} instances, {} failing suites {}",
            reports.iter().map(|r| r.trials).sum::<usize>(),
            failed.len(),
            failed.join("; ")
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("scalar product golden values", scalar_golden_values),
        ("smoothing table reproduction", table_reproduction),
        ("adjoint identity suite", adjoint_suite),
        ("module action suite", module_action_suite),
        ("duality extraction", duality_extraction),
        ("kernel solver vs brute force", kernel_vs_brute_force),
        ("two-variable system", two_variable_system),
        ("parser round trip and fuzz", parser_round_trip),
        ("isomorphism round trips", isomorphism_round_trips),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.passed {
            failed += 1;
        }
        println!(
            "criterion {}: {} {name}: {}",
            i + 1,
            if o.passed { "PASS" } else { "FAIL" },
            o.detail.trim_end()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
