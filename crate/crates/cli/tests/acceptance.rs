//! The nine acceptance criteria, one line each.
//!
//! Criterion 4 cannot pass: its "accepted" seed has `d_{3,3} = d_{k−1,k−1} = −1`,
//! and exact evaluation shows the top-diagonal product vanishing at `(6,1)`.
//! It is listed in `KNOWN_UNATTAINABLE`, still reported as FAIL, and any other
//! failure makes this target exit non-zero.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use gcdiagram::{seed_index_set, segment_point, Cell, GcPoint, Shape};
use lift::{certify_fl3, certify_from_slt, gradient_terms, verify_certificate, CheckKind};
use novikov::{q, qf, sign_pow, Series, Q};
use num_traits::Zero;
use potential::{
    apply_bulk, build_potential, normalized_gradient, render_symbolic, Assignment, BulkParameter,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use sltsolve::{
    find_generic_seed, generate, is_generic, solve_slt, symmetric_inner_solution, Mode, Seed,
    SltSolution,
};

const KNOWN_UNATTAINABLE: &[u32] = &[4];

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn draw<S: Strategy>(runner: &mut TestRunner, s: &S) -> S::Value {
    use proptest::strategy::ValueTree;
    s.new_tree(runner)
        .expect("strategy draws a value")
        .current()
}

fn nonzero_rational() -> impl Strategy<Value = Q> {
    (1i64..40, 1i64..12, any::<bool>())
        .prop_map(|(a, b, neg)| if neg { -qf(a, b) } else { qf(a, b) })
}

fn shapes() -> Vec<(usize, usize)> {
    (4..=9)
        .flat_map(|n| (2..=n / 2).map(move |m| (n, m)))
        .collect()
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gcflag"))
}

// ---- 1 ----

fn fl3_golden() -> Verdict {
    for t in [qf(1, 4), qf(1, 2), qf(3, 4)] {
        let cap = q(3);
        let cert = certify_fl3(&t, &cap).map_err(|e| e.to_string())?;
        let two_t = &t * q(2);
        let deformation = Series::from_terms([(q(0), q(1)), (two_t.clone(), q(1))], cap.clone());
        ensure(cert.bulk.c_ver[&1] == deformation, || {
            format!("t={t}: c^ver_{{2,1}} differs")
        })?;
        let y11 = &cert.point[&Cell::new(1, 1)];
        let below: Vec<(Q, Q)> = y11
            .terms()
            .iter()
            .filter(|(e, _)| **e <= two_t)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        ensure(
            below == vec![(q(0), q(-1)), (two_t.clone(), qf(-1, 2))],
            || format!("t={t}: y_{{1,1}} starts {below:?}"),
        )?;
        ensure(cert.bulk.c_ver[&2].constant_term() == qf(-1, 2), || {
            format!("t={t}: c^ver_{{3,2}}")
        })?;
        ensure(cert.bulk.c_hor[&2].constant_term() == qf(1, 2), || {
            format!("t={t}: c^hor_{{2,3}}")
        })?;
        let report = verify_certificate(&cert);
        ensure(report.all_pass(), || format!("t={t}: {report}"))?;
        let wb = apply_bulk(
            &build_potential(&segment_point(3, 2, &t).unwrap()),
            &cert.bulk,
        )
        .unwrap();
        for c in [Cell::new(1, 1), Cell::new(1, 2), Cell::new(2, 1)] {
            let g = normalized_gradient(&wb, c, &cert.point, &cap).unwrap();
            ensure(g.value.is_zero_mod(&(&cap - &g.spread)), || {
                format!("t={t}: residual at {c}")
            })?;
        }
    }
    Ok("t = 1/4, 1/2, 3/4 at N = 3".into())
}

// ---- 2 ----

const FL3_DISPLAY: &str =
    "(y_{1,2}/y_{1,1} + y_{1,1}/y_{2,1} + y_{1,2} + 1/y_{2,1})T^{1-t} + (1/y_{1,2} + y_{2,1})T^{1+t}";

fn potential_regeneration() -> Verdict {
    for t in [qf(1, 4), qf(1, 3), qf(1, 2)] {
        let w = build_potential(&segment_point(3, 2, &t).unwrap());
        let shown = render_symbolic(&w);
        ensure(shown == FL3_DISPLAY, || format!("t={t}: {shown}"))?;
    }
    Ok("Fl(3) display at t = 1/4, 1/3, 1/2".into())
}

// ---- 3 ----

/// Four-term logarithmic derivative at `(i,j)` with unit bulk; `None` drops a term.
fn four_term(i: usize, j: usize, val: &dyn Fn(usize, usize) -> Option<Q>) -> Q {
    let yij = val(i, j).unwrap();
    let mut s = Q::zero();
    if let Some(r) = val(i, j + 1) {
        s -= r / &yij;
    }
    if let Some(u) = val(i.wrapping_sub(1), j) {
        s -= u / &yij;
    }
    if let Some(d) = val(i + 1, j) {
        s += &yij / d;
    }
    if let Some(l) = val(i, j.wrapping_sub(1)) {
        s += &yij / l;
    }
    s
}

fn symmetric_inner() -> Verdict {
    let mut rng = runner(1);
    let mut count = 0;
    for m in 2..=8 {
        for _ in 0..5 {
            let c = draw(&mut rng, &nonzero_rational());
            let y = symmetric_inner_solution(m, &c).map_err(|e| e.to_string())?;
            let val = |a: usize, b: usize| -> Option<Q> {
                (a >= 1 && b >= 1 && a <= m && b <= m).then(|| y[&Cell::new(a, b)].clone())
            };
            let c2 = &c * &c;
            for i in 1..=m {
                let d = &y[&Cell::new(i, i)];
                ensure(*d == c || *d == -c.clone(), || {
                    format!("m={m} c={c}: y_{i}{i} = {d}")
                })?;
                for j in 1..=m {
                    ensure(four_term(i, j, &val).is_zero(), || {
                        format!("m={m} c={c}: equation ({i},{j})")
                    })?;
                    ensure(&y[&Cell::new(i, j)] * &y[&Cell::new(j, i)] == c2, || {
                        format!("m={m} c={c}: transpose product at ({i},{j})")
                    })?;
                }
            }
            count += 1;
        }
    }
    Ok(format!("{count} inner solutions, m = 2..8"))
}

// ---- 4 ----

fn seed_example() -> Verdict {
    let shape = Shape::new(7, 2).unwrap();
    let as_map = |v: &[i64]| -> BTreeMap<Cell, Q> {
        let values: Vec<Q> = v.iter().map(|&x| q(x)).collect();
        Seed::from_values(7, 2, &values).unwrap().values
    };
    let rejected = is_generic(shape, &as_map(&[-1, 1, 1, 1, 1]));
    let reject_ok = matches!(&rejected, Err(f) if f.component == Some(Cell::new(1, 5)));
    let accepted = is_generic(shape, &as_map(&[-1, 1, 1, -1, 1]));
    let reject_note = match &rejected {
        Err(f) => format!("(-1,1,1,1,1) rejected: {f}"),
        Ok(()) => "(-1,1,1,1,1) accepted".into(),
    };
    match (accepted, reject_ok) {
        (Ok(()), true) => Ok(format!("(-1,1,1,-1,1) accepted; {reject_note}")),
        (Err(f), _) => Err(format!("(-1,1,1,-1,1) is not generic: {f}; {reject_note}")),
        (Ok(()), false) => Err(reject_note),
    }
}

// ---- 5 ----

fn solved_sweep() -> Result<Vec<SltSolution>, String> {
    shapes()
        .into_iter()
        .map(|(n, m)| {
            let found = find_generic_seed(n, m).map_err(|e| format!("({n},{m}): {e}"))?;
            solve_slt(&found.seed).map_err(|e| format!("({n},{m}): {e}"))
        })
        .collect()
}

fn slt_sweep() -> Verdict {
    let solutions = solved_sweep()?;
    for s in &solutions {
        let report = s.verify();
        ensure(report.all_zero(), || {
            format!("({},{}): {report}", s.n(), s.m())
        })?;
        let zero =
            s.y.values()
                .chain(s.inner_y.values())
                .chain(s.c_hor.values())
                .chain(s.c_ver.values())
                .any(Zero::is_zero);
        ensure(!zero, || format!("({},{}): zero component", s.n(), s.m()))?;
        ensure(
            s.y.len() + s.inner_y.len() >= s.n() * (s.n() - 1) / 2,
            || format!("({},{}): incomplete solution", s.n(), s.m()),
        )?;
    }
    Ok(format!("{} shapes, 4 ≤ n ≤ 9", solutions.len()))
}

// ---- 6 ----

fn end_to_end() -> Verdict {
    let mut count = 0;
    for (n, m) in [(4, 2), (5, 2), (6, 2), (6, 3), (7, 2), (7, 3)] {
        let found = find_generic_seed(n, m).map_err(|e| e.to_string())?;
        let slt = solve_slt(&found.seed).map_err(|e| e.to_string())?;
        for t in [qf(1, 4), qf(1, 2)] {
            let cert =
                certify_from_slt(&slt, &t, &q(2)).map_err(|e| format!("({n},{m},{t}): {e}"))?;
            let report = verify_certificate(&cert);
            ensure(report.all_pass(), || format!("({n},{m},{t}): {report}"))?;
            let kinds = [CheckKind::Unit, CheckKind::Gradient, CheckKind::Leading];
            ensure(
                kinds
                    .iter()
                    .all(|k| report.entries.iter().any(|e| e.kind == *k)),
                || format!("({n},{m},{t}): a check family is missing"),
            )?;
            count += 1;
        }
    }
    Ok(format!("{count} certificates at N = 2"))
}

// ---- 7 ----

fn recurrence_vs_direct() -> Result<usize, String> {
    let mut rng = runner(1);
    let all = shapes();
    let (mut generic, mut draws) = (0, 0);
    while generic < 100 {
        draws += 1;
        if draws > 5000 {
            return Err(format!("only {generic} generic draws out of 5000"));
        }
        let (n, m) = all[draw(&mut rng, &(0..all.len()))];
        let shape = Shape::new(n, m).unwrap();
        let idx = seed_index_set(n, m).unwrap();
        let seed: BTreeMap<Cell, Q> = idx
            .seeds
            .iter()
            .map(|&c| {
                (
                    c,
                    if idx.pinned.contains(&c) {
                        q(1)
                    } else {
                        draw(&mut rng, &nonzero_rational())
                    },
                )
            })
            .collect();
        let a = generate(shape, &seed, None, Mode::Recurrence);
        let b = generate(shape, &seed, None, Mode::Direct);
        ensure(a == b, || format!("({n},{m}) seed {seed:?}: modes differ"))?;
        if a.is_ok() {
            generic += 1;
        }
    }
    Ok(generic)
}

/// `u_{i,j}` on the segment, anti-diagonal included.
fn u(n: usize, m: usize, t: &Q, i: usize, j: usize) -> Q {
    if i + j == n + 1 {
        return q(n as i64 - 2 * i as i64 + 1);
    }
    let d = q(j as i64 - i as i64);
    if i.max(j) <= m {
        &d - &d * t
    } else {
        d
    }
}

/// The bulk-deformed gradient written out by hand at `(i,j)`.
fn hand_gradient(
    n: usize,
    m: usize,
    t: &Q,
    y: &Assignment,
    bulk: &BulkParameter,
    at: Cell,
    cap: &Q,
) -> Series {
    let (i, j) = (at.i, at.j);
    let yv = |a: usize, b: usize| {
        if a + b == n + 1 {
            Series::one(cap.clone())
        } else {
            y[&Cell::new(a, b)].clone()
        }
    };
    let inv = |s: Series| s.invert_unit().unwrap();
    let c_of = |map: &BTreeMap<usize, Series>, k: usize| {
        map.get(&k)
            .cloned()
            .unwrap_or_else(|| Series::one(cap.clone()))
    };
    let e = |a, b, c, d| u(n, m, t, a, b) - u(n, m, t, c, d);
    let mut acc = Series::zero(cap.clone());
    acc = &acc
        - &(&c_of(&bulk.c_ver, j) * &(&yv(i, j + 1) * &inv(yv(i, j)))).shift(&e(i, j + 1, i, j));
    if i > 1 {
        acc = &acc
            - &(&c_of(&bulk.c_hor, i - 1) * &(&yv(i - 1, j) * &inv(yv(i, j)))).shift(&e(
                i - 1,
                j,
                i,
                j,
            ));
    }
    acc = &acc
        + &(&c_of(&bulk.c_hor, i) * &(&yv(i, j) * &inv(yv(i + 1, j)))).shift(&e(i, j, i + 1, j));
    if j > 1 {
        acc = &acc
            + &(&c_of(&bulk.c_ver, j - 1) * &(&yv(i, j) * &inv(yv(i, j - 1)))).shift(&e(
                i,
                j,
                i,
                j - 1,
            ));
    }
    acc
}

fn term_list_value(
    point: &GcPoint,
    y: &Assignment,
    bulk: &BulkParameter,
    at: Cell,
    cap: &Q,
) -> Series {
    let n = point.n;
    let yv = |c: Cell| {
        if c.diag() == n + 1 {
            Series::one(cap.clone())
        } else {
            y[&c].clone()
        }
    };
    let mut acc = Series::zero(cap.clone());
    for term in gradient_terms(point, at) {
        let c = bulk
            .get(term.bulk.0, term.bulk.1)
            .cloned()
            .unwrap_or_else(|| Series::one(cap.clone()));
        let v = &(&c * &yv(term.num)) * &yv(term.den).invert_unit().unwrap();
        acc = &acc + &v.scale(&q(term.sign)).shift(&term.shift);
    }
    acc
}

fn gradient_oracle() -> Result<usize, String> {
    let mut rng = runner(1);
    let cap = q(3);
    let unit = (
        prop_oneof![Just(1i64), Just(-1), Just(2), Just(-3)],
        1i64..4,
        -3i64..=3,
    )
        .prop_map(move |(a, e, b)| Series::from_terms([(q(0), q(a)), (qf(e, 4), q(b))], q(3)));
    let mut checked = 0;
    for n in 3..=6 {
        let ms: Vec<usize> = if n == 3 {
            vec![2]
        } else {
            (2..=n / 2).collect()
        };
        for m in ms {
            for t in [qf(1, 4), qf(1, 3), qf(1, 2)] {
                let point = segment_point(n, m, &t).unwrap();
                let y: Assignment = gcdiagram::gamma(n)
                    .unwrap()
                    .into_iter()
                    .map(|c| (c, draw(&mut rng, &unit)))
                    .collect();
                let k = n.div_ceil(2);
                let bulk = BulkParameter {
                    c_hor: (k..n).map(|i| (i, draw(&mut rng, &unit))).collect(),
                    c_ver: (1..n).map(|j| (j, draw(&mut rng, &unit))).collect(),
                };
                let wb = apply_bulk(&build_potential(&point), &bulk).map_err(|e| e.to_string())?;
                for at in gcdiagram::gamma(n).unwrap() {
                    let g = normalized_gradient(&wb, at, &y, &cap).map_err(|e| e.to_string())?;
                    let nu = g.nu.clone().unwrap_or_else(Q::zero);
                    let hand = hand_gradient(n, m, &t, &y, &bulk, at, &(&cap + &nu)).shift(&-&nu);
                    let listed = term_list_value(&point, &y, &bulk, at, &cap);
                    let order = &cap - &g.spread;
                    ensure(g.value.equals_mod(&hand, &order), || {
                        format!("({n},{m},{t}) at {at}: potential vs hand")
                    })?;
                    ensure(listed.equals_mod(&hand, &order), || {
                        format!("({n},{m},{t}) at {at}: term list vs hand")
                    })?;
                    checked += 1;
                }
            }
        }
    }
    Ok(checked)
}

fn transpose_relation() -> Result<usize, String> {
    let mut checked = 0;
    for s in solved_sweep()? {
        let (n, m) = (s.n(), s.m());
        let d2 = s.seed.d_mm() * s.seed.d_mm();
        let limit = (2 * m + 1).min(n);
        for (c, z) in &s.z {
            let (a, b) = (c.i, c.j);
            if a >= b || a + b > limit || (a <= m && b <= m) {
                continue;
            }
            let Some(w) = s.z.get(&Cell::new(b, a)) else {
                return Err(format!("({n},{m}): z_{{{b},{a}}} missing"));
            };
            let expected = &d2 * sign_pow((a + b - 1) as i64);
            ensure(z * w == expected, || {
                format!("({n},{m}): z_{{{a},{b}}} z_{{{b},{a}}} = {}", z * w)
            })?;
            checked += 1;
        }
    }
    Ok(checked)
}

fn oracles() -> Verdict {
    let generic = recurrence_vs_direct()?;
    let gradients = gradient_oracle()?;
    let pairs = transpose_relation()?;
    Ok(format!(
        "(a) {generic} generic instances, (b) {gradients} gradients, (c) {pairs} transpose pairs"
    ))
}

// ---- 8 ----

const DEN: i64 = 4;
const CAP_STEPS: i64 = 12;

fn series(min_exp: i64) -> impl Strategy<Value = Series> {
    prop::collection::vec((min_exp..CAP_STEPS, -6i64..=6, 1i64..=4), 0..6).prop_map(|raw| {
        Series::from_terms(
            raw.into_iter().map(|(e, n, d)| (qf(e, DEN), qf(n, d))),
            qf(CAP_STEPS, DEN),
        )
    })
}

fn unit_series() -> impl Strategy<Value = Series> {
    (
        prop_oneof![Just(1i64), Just(-1), Just(2), Just(-3)],
        series(1),
    )
        .prop_map(|(a0, rest)| &Series::constant(q(a0), qf(CAP_STEPS, DEN)) + &rest)
}

fn min_cap(a: &Series, b: &Series) -> Q {
    a.cap().min(b.cap()).clone()
}

fn novikov_suite() -> Verdict {
    let cases = 1000;
    let cap = qf(CAP_STEPS, DEN);
    runner(cases)
        .run(&(series(0), series(0), series(0)), |(a, b, c)| {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&(&a * &b) * &c).equals_mod(&(&a * &(&b * &c)), &cap));
            let (lhs, rhs) = (&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!(lhs.equals_mod(&rhs, &min_cap(&lhs, &rhs)));
            let negated = -&a;
            prop_assert!((&a + &negated).is_zero());
            prop_assert_eq!(&a * &Series::one(cap.clone()), a.clone());
            Ok(())
        })
        .map_err(|e| format!("ring axioms: {e}"))?;
    runner(cases)
        .run(&(series(0), series(0)), |(a, b)| {
            let (Some(va), Some(vb)) = (
                a.valuation().finite().cloned(),
                b.valuation().finite().cloned(),
            ) else {
                return Ok(());
            };
            let p = &a * &b;
            if &va + &vb < *p.cap() {
                prop_assert_eq!(p.valuation().finite().cloned(), Some(va + vb));
            }
            Ok(())
        })
        .map_err(|e| format!("valuation: {e}"))?;
    runner(cases)
        .run(&unit_series(), |x| {
            let inv = x.invert_unit().unwrap();
            let prod = &x * &inv;
            prop_assert!(prod.equals_mod(&Series::one(cap.clone()), prod.cap()));
            let sq = &x * &x;
            let sign = if x.constant_term() > Q::zero() { 1 } else { -1 };
            let root = sq.sqrt_unit(sign).unwrap();
            prop_assert!(root.equals_mod(&x, &min_cap(&root, &x)));
            prop_assert!((&root * &root).equals_mod(&sq, &min_cap(&sq, &root)));
            Ok(())
        })
        .map_err(|e| format!("invert/sqrt: {e}"))?;
    Ok(format!("{} randomized cases", 3 * cases))
}

// ---- 9 ----

fn figure() -> Verdict {
    let render = || -> Result<String, String> {
        let out = binary()
            .args(["diagram", "--n", "7", "--format", "svg"])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.success(), || {
            format!("exit {:?}", out.status.code())
        })?;
        String::from_utf8(out.stdout).map_err(|e| e.to_string())
    };
    let first = render()?;
    ensure(render()? == first, || "output differs between runs".into())?;
    let doc = roxmltree::Document::parse(&first).map_err(|e| e.to_string())?;
    let labels: Vec<String> = doc
        .descendants()
        .filter(|n| n.has_tag_name("g") && n.attribute("class") == Some("segment-marker"))
        .map(|g| {
            g.descendants()
                .filter(|n| n.has_tag_name("text"))
                .filter_map(|n| n.text())
                .collect::<String>()
        })
        .collect();
    ensure(labels == ["I_2", "I_3"], || {
        format!("segment markers {labels:?}")
    })?;
    Ok("two markers I_2, I_3; byte-identical reruns".into())
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    check: fn() -> Verdict,
}

fn main() {
    let criteria = [
        Criterion {
            id: 1,
            name: "Fl(3) golden reproduction",
            budget: Duration::from_secs(1),
            check: fl3_golden,
        },
        Criterion {
            id: 2,
            name: "potential regeneration",
            budget: Duration::from_secs(1),
            check: potential_regeneration,
        },
        Criterion {
            id: 3,
            name: "symmetric inner solutions",
            budget: Duration::from_secs(2),
            check: symmetric_inner,
        },
        Criterion {
            id: 4,
            name: "seed example for Gamma(7)/B(2)",
            budget: Duration::from_secs(1),
            check: seed_example,
        },
        Criterion {
            id: 5,
            name: "SLT solvability sweep",
            budget: Duration::from_secs(30),
            check: slt_sweep,
        },
        Criterion {
            id: 6,
            name: "end-to-end certificates",
            budget: Duration::from_secs(300),
            check: end_to_end,
        },
        Criterion {
            id: 7,
            name: "oracle equivalences",
            budget: Duration::from_secs(10),
            check: oracles,
        },
        Criterion {
            id: 8,
            name: "Novikov arithmetic suite",
            budget: Duration::from_secs(5),
            check: novikov_suite,
        },
        Criterion {
            id: 9,
            name: "figure emission",
            budget: Duration::from_secs(1),
            check: figure,
        },
    ];
    let mut unexpected = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let verdict = (c.check)();
        let elapsed = start.elapsed();
        let verdict = verdict.and_then(|msg| {
            if elapsed > c.budget {
                Err(format!("{msg}; took {elapsed:.2?}, budget {:?}", c.budget))
            } else {
                Ok(msg)
            }
        });
        match verdict {
            Ok(msg) => println!(
                "PASS criterion {}: {} ({msg}) [{elapsed:.2?}]",
                c.id, c.name
            ),
            Err(msg) => {
                let known = KNOWN_UNATTAINABLE.contains(&c.id);
                let tag = if known { " [known unattainable]" } else { "" };
                println!(
                    "FAIL criterion {}: {} ({msg}) [{elapsed:.2?}]{tag}",
                    c.id, c.name
                );
                if !known {
                    unexpected.push(c.id);
                }
            }
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
