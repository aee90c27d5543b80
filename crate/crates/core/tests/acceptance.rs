//! The acceptance suite. Every criterion is an exact equality check; each
//! prints one PASS/FAIL line. The process exits nonzero if any fails.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use num_rational::BigRational;
use rand::Rng;

use braidties::algebra::{basis_labels, BtElement};
use braidties::braidio::{bundled_table, markov_test, random_braid, MarkovConfig};
use braidties::invariants::{
    delta_bar, gamma_bar, homflypt_oracle, homflypt_specialize, sb_relation_suite, BraidWord,
    SingularBraidWord,
};
use braidties::partitions::bell;
use braidties::relations::{associativity_check, check_relations, closure_check};
use braidties::report::{CheckResult, Report};
use braidties::sampling;
use braidties::scalars::{d_const, l_const, RatFunc, ScalarError, SqrtExt};
use braidties::trace::{
    conjugation_check, factorization_check, markov_trace, trace_axiom_suite, RelativeTrace,
    Sampling,
};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn from_reports(reports: &[Report]) -> Outcome {
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.to_string())
        .collect();
    let cases: usize = reports.iter().map(Report::total_cases).sum();
    Outcome {
        ok: failed.is_empty(),
        detail: if failed.is_empty() {
            format!("{cases} cases")
        } else {
            failed.join("\n")
        },
    }
}

fn from_checks(title: &str, checks: Vec<CheckResult>) -> Report {
    let mut r = Report::new(title);
    r.checks = checks;
    r
}

fn criterion_1() -> Outcome {
    let reports: Vec<Report> = (2..=5).map(|n| check_relations(n).unwrap()).collect();
    from_reports(&reports)
}

fn criterion_2() -> Outcome {
    let expected = [(3, 30), (4, 360), (5, 6240)];
    let mut dims = CheckResult::new("dimension");
    for (n, want) in expected {
        let fact: u64 = (1..=n as u64).product();
        let labels = basis_labels(n).len() as u64;
        dims.record(labels == want && bell(n) * fact == want, || {
            format!("n={n}: {labels} labels")
        });
    }
    let mut reports = vec![from_checks("dimensions", vec![dims])];
    for n in 3..=5 {
        reports.push(from_checks(
            &format!("closure and associativity at n = {n}"),
            vec![
                closure_check(n, 500, 100 + n as u64),
                associativity_check(n, 200, 200 + n as u64),
            ],
        ));
    }
    from_reports(&reports)
}

fn criterion_3() -> Outcome {
    let tr = RelativeTrace::default();
    let mut reports = vec![trace_axiom_suite(3, Sampling::Exhaustive, &tr).unwrap()];
    for n in [4, 5] {
        let s = Sampling::Random {
            count: 500,
            seed: 300 + n as u64,
        };
        reports.push(trace_axiom_suite(n, s, &tr).unwrap());
    }
    let conj = conjugation_check(4, &basis_labels(3), &tr).unwrap();
    reports.push(from_checks("conjugation property at n = 4", vec![conj]));
    from_reports(&reports)
}

fn criterion_4() -> Outcome {
    let (u, a, b) = (RatFunc::u(), RatFunc::a(), RatFunc::b());
    let one = RatFunc::one();
    let mut c = CheckResult::new("printed values");

    let hopf = BraidWord::new(2, vec![1, 1]).unwrap();
    let hopf_rho = &one + &(&(&a + &b) * &(&u - &one));
    let got = markov_trace(&BtElement::gen_t(1, 2).unwrap().pow(2)).unwrap();
    c.record(got == hopf_rho, || format!("Hopf trace {got}"));
    let want = SqrtExt::with_l(RatFunc::zero(), &hopf_rho / &a);
    let got = delta_bar(&hopf).unwrap();
    c.record(got == want, || format!("Hopf invariant {got}"));

    let tref = BraidWord::new(2, vec![-1, -1, -1]).unwrap();
    let u2 = &u * &u;
    let u3 = &u2 * &u;
    let rho = &(&(&b * &(&(&(&one - &u) + &u2) - &u3)) + &(&a * &(&(&one - &u) + &u2))) / &u3;
    let got = markov_trace(&BtElement::gen_t_inv(1, 2).unwrap().pow(3)).unwrap();
    c.record(got == rho, || format!("trefoil trace {got}"));
    let poly = &(&(&(&(&(&(&-&(&u3 * &b) + &(&u2 * &b)) - &(&u * &b)) + &b) + &(&u2 * &a))
        - &(&u * &a))
        + &a);
    let base = &(&a + &b) - &(&u * &b);
    let want = SqrtExt::with_l(&(&a * poly) / &(&u * &(&base * &base)), RatFunc::zero());
    let got = delta_bar(&tref).unwrap();
    c.record(got == want, || format!("trefoil invariant {got}"));
    from_reports(&[from_checks("printed values", vec![c])])
}

fn criterion_5() -> Outcome {
    let report = markov_test(&MarkovConfig::new(5, 200, 500)).unwrap();
    from_reports(&[report])
}

/// A random rational with small numerator and denominator.
fn small_rational<R: Rng>(rng: &mut R) -> BigRational {
    let num: i64 = rng.gen_range(-9..=9);
    let den: i64 = rng.gen_range(1..=7);
    BigRational::new(num.into(), den.into())
}

fn compare_homflypt<R: Rng>(w: &BraidWord, rng: &mut R, c: &mut CheckResult) {
    let specialized = homflypt_specialize(&delta_bar(w).unwrap()).unwrap();
    let oracle = homflypt_oracle(w).unwrap();
    c.record(specialized == oracle, || format!("n={} word={w}", w.n()));
    let mut points = 0;
    while points < 5 {
        let pt = [
            small_rational(rng),
            small_rational(rng),
            small_rational(rng),
        ];
        let lhs = specialized.eval(&pt);
        let rhs = oracle.eval(&pt);
        match (lhs, rhs) {
            (Err(ScalarError::PoleAtPoint), _) | (_, Err(ScalarError::PoleAtPoint)) => continue,
            (l, r) => {
                points += 1;
                c.record(l.is_ok() && l == r, || format!("word={w} at {pt:?}"));
            }
        }
    }
}

fn criterion_6() -> Outcome {
    let mut rng = sampling::rng(600);
    let mut table = CheckResult::new("bundled table");
    for e in bundled_table() {
        compare_homflypt(&e.braid, &mut rng, &mut table);
    }
    let mut random = CheckResult::new("random words");
    for _ in 0..50 {
        let n = rng.gen_range(1..=4);
        let len = rng.gen_range(0..=8);
        let w = random_braid(n, len, &mut rng);
        compare_homflypt(&w, &mut rng, &mut random);
    }
    from_reports(&[from_checks("Homflypt recovery", vec![table, random])])
}

fn criterion_7() -> Outcome {
    let mut norm = CheckResult::new("normalization");
    let sqrt_l = SqrtExt::sqrt(Arc::new(l_const()));
    let prod = (sqrt_l * d_const()).scale(&RatFunc::a());
    norm.record(prod.is_one(), || format!("got {prod}"));
    let mut rng = sampling::rng(700);
    let mut checks = vec![norm];
    for n in 1..=4 {
        checks.push(factorization_check(n, 25, &mut rng).unwrap());
    }
    from_reports(&[from_checks("normalization and factorization", checks)])
}

fn criterion_8() -> Outcome {
    let mut reports: Vec<Report> = (2..=5).map(|n| sb_relation_suite(n).unwrap()).collect();
    let mut rng = sampling::rng(800);
    let mut same = CheckResult::new("gamma_equals_delta");
    for _ in 0..50 {
        let n = rng.gen_range(1..=4);
        let len = rng.gen_range(0..=8);
        let w = random_braid(n, len, &mut rng);
        let g = gamma_bar(&SingularBraidWord::from_classical(&w)).unwrap();
        same.record(g == delta_bar(&w).unwrap(), || format!("word={w}"));
    }
    reports.push(from_checks("classical words", vec![same]));
    from_reports(&reports)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 relation suite", criterion_1),
        ("2 basis, closure, associativity", criterion_2),
        ("3 trace axioms", criterion_3),
        ("4 printed values", criterion_4),
        ("5 Markov invariance", criterion_5),
        ("6 Homflypt recovery", criterion_6),
        ("7 normalization and factorization", criterion_7),
        ("8 singular representation", criterion_8),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut all_ok = true;
    for (name, run) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let out = run();
        let verdict = if out.ok { "PASS" } else { "FAIL" };
        println!(
            "{verdict} criterion {name} ({}, {:.1}s)",
            out.detail.lines().next().unwrap_or(""),
            start.elapsed().as_secs_f64()
        );
        if !out.ok {
            println!("{}", out.detail);
            all_ok = false;
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
