use std::time::{Duration, Instant};

use conics::algebra::matrix::rref;
use conics::algebra::{upoly, Field, FiniteField, GaloisField, GradedPiece, MultiPoly, PrimeField};
use conics::curves::{divisor_on_curve, sample_points, vanishing_order, CurveModel, Order};
use conics::suite::{run_scenario, Settings};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

struct Outcome {
    pass: bool,
    detail: String,
}

fn scenarios(names: &[&str]) -> Outcome {
    let s = Settings::default();
    let mut total = 0;
    let mut failed = vec![];
    for n in names {
        match run_scenario(n, &s) {
            Ok(claims) => {
                total += claims.len();
                failed.extend(claims.iter().filter(|c| !c.pass).map(|c| format!("{}: {} ({})", c.scenario, c.name, c.detail)));
            }
            Err(e) => failed.push(format!("{n}: {e}")),
        }
    }
    let pass = failed.is_empty() && total > 0;
    let detail = if pass { format!("{total} claims") } else { failed.join("; ") };
    Outcome { pass, detail }
}

const CASES: u32 = 128;

fn run<S: Strategy>(name: &str, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases: CASES, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn form(f: &PrimeField, k: u32, v: &[u64]) -> MultiPoly<u64> {
    MultiPoly::from_dense(f, 4, k, v)
}

fn properties() -> Outcome {
    let f = PrimeField::new(101).unwrap();
    let g = GaloisField::galois(7, 3).unwrap();
    let ell = CurveModel::weierstrass(f, 2, 3).unwrap();
    let pts = sample_points(&ell, 60);
    let forms = |max: u32| {
        (1..=max).prop_flat_map(|k| prop::collection::vec(0..101u64, GradedPiece::get(4, k).dim()).prop_map(move |v| (k, v)))
    };
    let results = [
        run("field axioms", (0u128..343, 0u128..343, 0u128..343), |(a, b, c)| {
            let (a, b, c) = (g.element(a), g.element(b), g.element(c));
            prop_assert_eq!(g.mul(&a, &g.add(&b, &c)), g.add(&g.mul(&a, &b), &g.mul(&a, &c)));
            prop_assert_eq!(g.mul(&g.mul(&a, &b), &c), g.mul(&a, &g.mul(&b, &c)));
            if let Some(i) = g.inv(&a) {
                prop_assert!(g.is_one(&g.mul(&a, &i)));
            }
            Ok(())
        }),
        run("rref idempotence", prop::collection::vec(prop::collection::vec(0..101u64, 7), 1..9), |rows| {
            let (r, _) = rref(&f, &rows, 7);
            prop_assert_eq!(rref(&f, &r, 7).0, r);
            Ok(())
        }),
        run("Euler relation", forms(5), |(k, v)| {
            let p = form(&f, k, &v);
            let lhs = (0..4).fold(MultiPoly::zero(4, k), |acc, i| acc.add(&f, &p.derivative(&f, i).mul(&f, &MultiPoly::var(&f, 4, i))));
            prop_assert_eq!(lhs, p.scale(&f, &(k as u64)));
            Ok(())
        }),
        run("Taylor shift", (prop::collection::vec(0..101u64, 0..10), 0..101u64), |(a, c)| {
            let a = upoly::trim(&f, a);
            let s = upoly::shift(&f, &a, &c);
            for x in 0..101 {
                prop_assert_eq!(upoly::eval(&f, &s, &x), upoly::eval(&f, &a, &f.add(&x, &c)));
            }
            Ok(())
        }),
        run("nu additivity", (0..pts.len(), forms(2), forms(2)), |(i, (k1, v1), (k2, v2))| {
            let q = &pts[i];
            let (a, b) = (form(&f, k1, &v1), form(&f, k2, &v2));
            // push each factor through q
            let shift = |p: MultiPoly<u64>| {
                let j = q.iter().position(|x| *x != 0).unwrap();
                let c = f.div(&p.eval(&f, q), &f.pow(&q[j], p.degree() as u128)).unwrap();
                p.sub(&f, &MultiPoly::var(&f, 4, j).pow(&f, p.degree()).scale(&f, &c))
            };
            let (a, b) = (shift(a), shift(b));
            if a.is_zero() || b.is_zero() || ell.in_ideal(&a) || ell.in_ideal(&b) {
                return Ok(());
            }
            let (Order::Finite(na), Order::Finite(nb)) = (vanishing_order(&ell, &a, q, None).unwrap(), vanishing_order(&ell, &b, q, None).unwrap()) else {
                return Err(TestCaseError::fail("infinite order"));
            };
            prop_assert!(na >= 1 && nb >= 1);
            prop_assert_eq!(vanishing_order(&ell, &a.mul(&f, &b), q, None).unwrap(), Order::Finite(na + nb));
            Ok(())
        }),
        run("divisor degree", forms(2), |(k, v)| {
            let p = form(&f, k, &v);
            if p.is_zero() || ell.in_ideal(&p) {
                return Ok(());
            }
            prop_assert_eq!(divisor_on_curve(&ell, &p, 8).unwrap().total_degree(), 4 * k);
            Ok(())
        }),
    ];
    let failed: Vec<String> = results.into_iter().filter_map(Result::err).collect();
    Outcome {
        pass: failed.is_empty(),
        detail: if failed.is_empty() { format!("6 suites x {CASES} cases") } else { failed.join("; ") },
    }
}

fn main() {
    let criteria: [(u32, &str, u64, Box<dyn Fn() -> Outcome>); 9] = [
        (1, "dimension ledger", 5, Box::new(|| scenarios(&["conic-system", "classify"]))),
        (2, "limit-cone factorization", 60, Box::new(|| scenarios(&["limit-cone"]))),
        (3, "limit-system structure", 60, Box::new(|| scenarios(&["limit-system"]))),
        (4, "twisted-cubic 3:1", 1, Box::new(|| scenarios(&["twisted-cubic-3to1"]))),
        (5, "rank diagnostics", 60, Box::new(|| scenarios(&["gamma", "dphi-corank"]))),
        (6, "blow-up numbers and geometric counts", 10, Box::new(|| scenarios(&["blowup-numbers", "node-count", "ramification-count"]))),
        (7, "torsion certificate", 60, Box::new(|| scenarios(&["find-torsion"]))),
        (8, "pencil pipeline", 600, Box::new(|| scenarios(&["certify-pencil"]))),
        (9, "property suites", 60, Box::new(properties)),
    ];
    let mut failures = vec![];
    for (n, name, budget, check) in criteria {
        let start = Instant::now();
        let out = check();
        let elapsed = start.elapsed();
        // time budgets apply to optimized builds
        let in_time = cfg!(debug_assertions) || elapsed <= Duration::from_secs(budget);
        let pass = out.pass && in_time;
        println!(
            "criterion {n} [{}] {name}: {} ({:.2}s)",
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64()
        );
        if !pass {
            failures.push(n);
        }
    }
    if !failures.is_empty() {
        eprintln!("failed criteria: {failures:?}");
        std::process::exit(1);
    }
}
