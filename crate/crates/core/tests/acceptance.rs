//! Acceptance run: prints one PASS/FAIL line per criterion and exits non-zero if any
//! criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use ybe_core::braces::{self, FiniteRing, SkewBrace};
use ybe_core::canon::CanonicalForm;
use ybe_core::catalog;
use ybe_core::enumerate::{self, EnumerationResult, EnumerationTask, Mode};
use ybe_core::format;
use ybe_core::solutions::{self, MultipermutationLevel};
use ybe_core::structgroup::{self, AffineElement, GroupElement, GroupWord, RationalMatrix};
use ybe_core::Perm;

type Outcome = Result<String, String>;

fn check(cond: bool, failures: &mut Vec<String>, what: impl Into<String>) {
    if !cond {
        failures.push(what.into());
    }
}

fn finish(failures: Vec<String>, ok: impl Into<String>) -> Outcome {
    if failures.is_empty() {
        Ok(ok.into())
    } else {
        Err(failures.join("; "))
    }
}

fn run(n: usize, mode: Mode, jobs: usize) -> (EnumerationResult, Duration) {
    let mut task = EnumerationTask::new(n, mode);
    task.jobs = jobs;
    let start = Instant::now();
    let r = enumerate::enumerate_solutions(&task).expect("enumeration runs");
    (r, start.elapsed())
}

fn braces_up_to_eight() -> Vec<SkewBrace> {
    (1..=8)
        .flat_map(|n| enumerate::enumerate_braces(n).expect("brace enumeration runs"))
        .map(|(_, b)| b)
        .collect()
}

fn word(s: &str) -> GroupWord {
    s.parse().expect("word parses")
}

fn table_one() -> Outcome {
    let mut failures = Vec::new();
    let mut details = Vec::new();
    for (n, expected) in [(2, 2), (3, 5), (4, 23), (5, 88)] {
        let (r, t) = run(n, Mode::Involutive, 8);
        let limit = if n <= 4 {
            Duration::from_secs(60)
        } else {
            Duration::from_secs(15 * 60)
        };
        check(
            r.involutive == expected,
            &mut failures,
            format!("n={n}: {} classes, expected {expected}", r.involutive),
        );
        check(t <= limit, &mut failures, format!("n={n}: took {t:?}"));
        details.push(format!("n={n}: {} in {:.2?}", r.involutive, t));
    }
    finish(failures, details.join(", "))
}

fn table_two() -> Outcome {
    let mut failures = Vec::new();
    let mut details = Vec::new();
    for (n, expected, limit) in [(2, 2, 60), (3, 21, 60), (4, 253, 30 * 60)] {
        let (r, t) = run(n, Mode::All, 8);
        let (inv, _) = run(n, Mode::Involutive, 8);
        let all_minus_inv = r.total() - inv.involutive;
        check(
            r.non_involutive == expected,
            &mut failures,
            format!(
                "n={n}: {} non-involutive classes, expected {expected}",
                r.non_involutive
            ),
        );
        check(
            r.non_involutive == all_minus_inv,
            &mut failures,
            format!(
                "n={n}: non-involutive {} differs from all minus involutive {all_minus_inv}",
                r.non_involutive
            ),
        );
        check(
            t <= Duration::from_secs(limit),
            &mut failures,
            format!("n={n}: took {t:?}"),
        );
        for note in r.table_discrepancies() {
            details.push(format!("n={n} reported: {note}"));
        }
        details.push(format!(
            "n={n}: non-involutive {} (involutive {}, total {}) in {:.2?}",
            r.non_involutive,
            r.involutive,
            r.total(),
            t
        ));
    }
    if failures.is_empty() {
        Ok(details.join(", "))
    } else {
        Err(format!("{} [{}]", failures.join("; "), details.join(", ")))
    }
}

fn oracle() -> Outcome {
    let mut failures = Vec::new();
    for n in [2, 3] {
        for mode in [Mode::Involutive, Mode::All] {
            let (r, _) = run(n, mode, 1);
            let brute = enumerate::brute_force_solutions(n, mode).expect("brute force runs");
            let mut fast: Vec<CanonicalForm> = r.forms.clone();
            fast.sort();
            check(
                fast == brute,
                &mut failures,
                format!(
                    "n={n} {mode:?}: engine {} classes, brute force {}",
                    fast.len(),
                    brute.len()
                ),
            );
        }
    }
    finish(failures, "identical canonical class sets at n=2,3 in both modes")
}

fn golden_vectors() -> Outcome {
    let mut failures = Vec::new();
    let ex = catalog::four_point_indecomposable();
    let rec = format::SolutionRecord::from_solution(&ex);
    check(
        rec.to_solution().is_ok(),
        &mut failures,
        "the four-point solution does not verify",
    );
    check(
        solutions::is_involutive(&ex),
        &mut failures,
        "the four-point solution not involutive",
    );
    check(
        solutions::is_indecomposable(&ex),
        &mut failures,
        "the four-point solution decomposable",
    );
    let ret = solutions::retract(&ex).expect("the four-point solution retracts");
    check(
        solutions::is_isomorphic(&ret, &ex).is_some(),
        &mut failures,
        "the retraction not isomorphic to the four-point solution",
    );
    check(
        solutions::multipermutation_level(&ex).ok() == Some(MultipermutationLevel::None),
        &mut failures,
        "the four-point solution level is not none",
    );

    let five = catalog::five_point_level_three();
    check(
        solutions::multipermutation_level(&five).ok() == Some(MultipermutationLevel::Finite(3)),
        &mut failures,
        "five-point solution level is not 3",
    );
    let sizes = solutions::retraction_sizes(&five).unwrap_or_default();
    check(
        sizes == [5, 3, 2, 1],
        &mut failures,
        format!("five-point solution retraction sizes {sizes:?}"),
    );

    let cand = catalog::eight_point_candidate();
    let rec = format::SolutionRecord::from_solution(&cand);
    check(rec.to_solution().is_ok(), &mut failures, "candidate does not verify");
    match solutions::retract(&cand) {
        Ok(r) => check(
            solutions::is_isomorphic(&r, &ex).is_some(),
            &mut failures,
            format!(
                "Ret(candidate) has {} points, level {}, and is not isomorphic to the four-point solution",
                r.size(),
                solutions::multipermutation_level(&r).map_or_else(|e| e.to_string(), |l| l.to_string())
            ),
        ),
        Err(e) => failures.push(format!("candidate does not retract: {e}")),
    }

    let sigma = Perm::parse_cycles(4, "(12)").expect("cycle parses");
    let tau = Perm::parse_cycles(4, "(34)").expect("cycle parses");
    let perm = solutions::make_permutation(&sigma, &tau).expect("commuting permutations");
    let blocks = structgroup::generator_collapse(&structgroup::presentation_of(&perm));
    check(
        blocks.iter().any(|b| b.contains(&0) && b.contains(&1)),
        &mut failures,
        format!("x1 and x2 not collapsed: {blocks:?}"),
    );
    finish(
        failures,
        "the four- and five-point examples and the permutation solution match; candidate verifies",
    )
}

fn ints(rows: &[[i64; 5]]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect()
}

fn representation() -> Outcome {
    let mut failures = Vec::new();
    let ex = catalog::four_point_indecomposable();
    let gens = structgroup::affine_rep(&ex).expect("involutive");
    let printed = [
        ints(&[
            [0, 1, 0, 0, 1],
            [1, 0, 0, 0, 0],
            [0, 0, 1, 0, 0],
            [0, 0, 0, 1, 0],
            [0, 0, 0, 0, 1],
        ]),
        ints(&[
            [0, 0, 0, 1, 0],
            [0, 0, 1, 0, 1],
            [1, 0, 0, 0, 0],
            [0, 1, 0, 0, 0],
            [0, 0, 0, 0, 1],
        ]),
        ints(&[
            [1, 0, 0, 0, 0],
            [0, 1, 0, 0, 0],
            [0, 0, 0, 1, 1],
            [0, 0, 1, 0, 0],
            [0, 0, 0, 0, 1],
        ]),
        ints(&[
            [0, 0, 1, 0, 0],
            [0, 0, 0, 1, 0],
            [0, 1, 0, 0, 0],
            [1, 0, 0, 0, 1],
            [0, 0, 0, 0, 1],
        ]),
    ];
    for (i, (g, m)) in gens.iter().zip(&printed).enumerate() {
        check(
            &g.to_matrix() == m,
            &mut failures,
            format!("x{} differs from the printed matrix", i + 1),
        );
    }
    let mats: Vec<RationalMatrix> = gens
        .iter()
        .map(|g| RationalMatrix::from_integers(&g.to_matrix()).expect("square"))
        .collect();
    let mut holds = 0;
    for i in 0..4 {
        for j in 0..4 {
            let (u, v) = ex.r(i, j);
            let affine = gens[i].op(&gens[j]) == gens[u].op(&gens[v]);
            let matrix = mats[i].op(&mats[j]) == mats[u].op(&mats[v]);
            if affine && matrix {
                holds += 1;
            } else {
                failures.push(format!("relation x{}x{} = x{}x{} fails", i + 1, j + 1, u + 1, v + 1));
            }
        }
    }
    finish(failures, format!("four matrices match; {holds}/16 relations hold"))
}

fn promislow() -> Outcome {
    let mut failures = Vec::new();
    let (x, y) = structgroup::promislow_matrices();
    check(
        structgroup::check_promislow_relations(&x, &y),
        &mut failures,
        "matrix relations fail",
    );
    let report = structgroup::upp_falsify(&structgroup::promislow_set(&x, &y));
    check(
        report.set_size == 14,
        &mut failures,
        format!("matrix set has {} elements", report.set_size),
    );
    check(report.falsified(), &mut failures, format!("matrix model: {report}"));

    let gens = structgroup::affine_rep(&catalog::four_point_indecomposable()).expect("involutive");
    let ex: AffineElement = structgroup::eval_affine(&gens, &word("1 2'")).expect("word");
    let ey = structgroup::eval_affine(&gens, &word("1 3'")).expect("word");
    let report = structgroup::upp_falsify(&structgroup::promislow_set(&ex, &ey));
    check(
        report.falsified(),
        &mut failures,
        format!("the four-point solution: {report}"),
    );

    let cand = structgroup::affine_rep(&catalog::eight_point_candidate()).expect("involutive");
    let cx = structgroup::eval_affine(&cand, &word("1 2'")).expect("word");
    let cy = structgroup::eval_affine(&cand, &word("1 3'")).expect("word");
    let report = structgroup::upp_falsify(&structgroup::promislow_set(&cx, &cy));
    let verdict = report.to_string();
    check(
        verdict.starts_with("not falsified by this set"),
        &mut failures,
        format!("candidate: {}", verdict.lines().next().unwrap_or("")),
    );
    finish(
        failures,
        format!(
            "matrix model and the four-point solution falsified; candidate: {}",
            verdict.lines().next().unwrap_or("")
        ),
    )
}

fn r_order() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for b in braces_up_to_eight().iter().filter(|b| b.size() >= 2) {
        match braces::r_order_check(b) {
            Ok((measured, predicted)) => {
                checked += 1;
                check(
                    measured == predicted,
                    &mut failures,
                    format!("order {} brace: measured {measured}, predicted {predicted}", b.size()),
                );
            }
            Err(e) => failures.push(format!("order {} brace: {e}", b.size())),
        }
    }
    finish(failures, format!("{checked} braces of order 2..8"))
}

fn identity_suite() -> Outcome {
    let all = braces_up_to_eight();
    let violations: Vec<String> = all
        .iter()
        .flat_map(|b| {
            braces::identity_violations(b)
                .into_iter()
                .map(move |v| format!("order {}: {v}", b.size()))
        })
        .collect();
    if violations.is_empty() {
        Ok(format!("{} braces, zero violations", all.len()))
    } else {
        Err(format!(
            "{} violations: {}",
            violations.len(),
            violations.iter().take(5).cloned().collect::<Vec<_>>().join("; ")
        ))
    }
}

fn ring_round_trips() -> Outcome {
    let mut failures = Vec::new();
    let z4 = FiniteRing::scaled_integers(4, 2).expect("ring axioms");
    match braces::brace_from_radical_ring(&z4).and_then(|b| braces::ring_from_two_sided(&b)) {
        Ok(back) => check(back == z4, &mut failures, "Z/4 round trip changed the tables"),
        Err(e) => failures.push(format!("Z/4: {e}")),
    }
    let (mut two_sided, mut star) = (0, 0);
    for b in braces_up_to_eight().iter().filter(|b| b.is_abelian_type()) {
        if braces::is_two_sided(b) {
            two_sided += 1;
            let ok = braces::ring_from_two_sided(b)
                .and_then(|ring| {
                    let radical = ring.is_radical();
                    braces::brace_from_radical_ring(&ring).map(|back| radical && &back == b)
                })
                .unwrap_or(false);
            check(
                ok,
                &mut failures,
                format!("order {} two-sided brace does not round-trip", b.size()),
            );
        }
        if braces::is_star_associative(b) {
            star += 1;
            check(
                braces::lau_check(b).unwrap_or(false),
                &mut failures,
                format!("order {} star-associative brace fails lau_check", b.size()),
            );
        }
    }
    finish(
        failures,
        format!("Z/4 identical; {two_sided} two-sided and {star} star-associative abelian-type braces"),
    )
}

fn gi_cross_check() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for b in braces_up_to_eight().iter().filter(|b| b.is_abelian_type()) {
        checked += 1;
        let nilpotent = braces::right_nilpotency(b).is_some();
        let s = braces::solution_of(b);
        let multiperm = solutions::multipermutation_level(&s).map(|l| l.is_finite());
        if multiperm.as_ref().ok() != Some(&nilpotent) {
            failures.push(format!(
                "counterexample: add={:?} mul={:?} right_nilpotency={:?} level={:?}",
                b.add_table(),
                b.mul_table(),
                braces::right_nilpotency(b),
                solutions::multipermutation_level(&s)
            ));
        }
    }
    finish(failures, format!("{checked} abelian-type braces agree"))
}

fn growth() -> Outcome {
    let mut failures = Vec::new();
    let radius = 8;
    let one = structgroup::ball_sizes(&solutions::make_trivial(1).expect("n=1"), radius, 1 << 22, 1).expect("bfs");
    let expect_one: Vec<u64> = (0..=radius as u64).map(|k| 2 * k + 1).collect();
    check(
        one.gamma == expect_one,
        &mut failures,
        format!("n=1 gamma {:?}", one.gamma),
    );
    let two = structgroup::ball_sizes(&solutions::make_trivial(2).expect("n=2"), radius, 1 << 22, 2).expect("bfs");
    let expect_two: Vec<u64> = (0..=radius as u64).map(|k| 2 * k * k + 2 * k + 1).collect();
    check(
        two.gamma == expect_two,
        &mut failures,
        format!("n=2 gamma {:?}", two.gamma),
    );
    for gamma in [&one.gamma, &two.gamma] {
        let values: Vec<BigInt> = gamma.iter().map(|&v| BigInt::from(v)).collect();
        match structgroup::guess_rational_series(&values) {
            Some(s) => check(
                s.expand(values.len()) == values,
                &mut failures,
                format!("{s} does not re-expand"),
            ),
            None => failures.push(format!("no series guessed for {gamma:?}")),
        }
    }
    let ex = catalog::four_point_indecomposable();
    let a = structgroup::ball_sizes(&ex, 6, 1 << 22, 1).expect("bfs");
    let b = structgroup::ball_sizes(&ex, 6, 1 << 22, 8).expect("bfs");
    let c = structgroup::ball_sizes_matrix(&ex, 6, 1 << 22).expect("bfs");
    check(
        a == b && a == c,
        &mut failures,
        format!("the four-point solution: {:?} / {:?} / {:?}", a.gamma, b.gamma, c.gamma),
    );
    finish(
        failures,
        format!("closed forms hold; the four-point solution gamma {:?}", a.gamma),
    )
}

fn cli_output(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_ybe"))
        .args(args)
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "ybe {args:?} failed");
    out.stdout
}

fn determinism() -> Outcome {
    let mut failures = Vec::new();
    let mut runs = 0;
    let cases = [
        (2, Mode::Involutive),
        (3, Mode::Involutive),
        (4, Mode::Involutive),
        (5, Mode::Involutive),
    ]
    .into_iter()
    .chain([(2, Mode::All), (3, Mode::All), (4, Mode::All)]);
    for (n, mode) in cases {
        let one = format::solution_stream(&run(n, mode, 1).0, 0);
        let eight = format::solution_stream(&run(n, mode, 8).0, 0);
        runs += 1;
        check(one == eight, &mut failures, format!("n={n} {mode:?} streams differ"));
    }
    for extra in [["--involutive"].as_slice(), &[]] {
        for size in ["2", "3", "4"] {
            let mut base = vec!["enumerate", "--size", size];
            base.extend_from_slice(extra);
            for tail in [&["--count-only"][..], &[]] {
                let mut a = base.clone();
                a.extend_from_slice(tail);
                let mut b = a.clone();
                a.extend(["--jobs", "1"]);
                b.extend(["--jobs", "8"]);
                runs += 1;
                check(
                    cli_output(&a) == cli_output(&b),
                    &mut failures,
                    format!("ybe {a:?} differs at --jobs 8"),
                );
            }
        }
    }
    finish(failures, format!("{runs} runs byte-identical at 1 and 8 jobs"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("involutive counts", table_one),
        ("non-involutive counts", table_two),
        ("brute-force oracle", oracle),
        ("golden vectors", golden_vectors),
        ("affine representation", representation),
        ("Promislow suite", promislow),
        ("order of r_A", r_order),
        ("brace identities", identity_suite),
        ("ring round trips", ring_round_trips),
        ("nilpotency cross-check", gi_cross_check),
        ("growth", growth),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
