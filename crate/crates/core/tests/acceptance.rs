//! Acceptance suite: one pass/fail line per criterion, non-zero exit on any
//! failure. Runs without the libtest harness.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use common::*;
use proptest::test_runner::{Config, TestRunner};

use status_logic::cli::main_with_args;
use status_logic::dsl::{parse_str, pretty_print, BinaryOp, StatusExpr};
use status_logic::engine::{
    reference_selector, reference_sequence, tick_stateless, Bindings, Ctx, NullSink, StatefulNode,
    Task,
};
use status_logic::sim::{
    coffee_scenario, coffee_state_count, coffee_world_init, run, scenario, CoffeeConfig,
    CoffeeProfile, CoffeeTree, Outcome,
};
use status_logic::status::{
    apply_unary, conj, deferred, disj, disregard, lenient, strict, Deferred, Status, Unary,
};

/// Worst-case ticks for the stateless coffee selector over all consistent
/// starting states, found by exhaustive simulation.
const COFFEE_BOUND: u64 = 8;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn apply(op: BinaryOp, x: Status, y: Status) -> Status {
    match op {
        BinaryOp::Conj => conj(x, &mut deferred(y)),
        BinaryOp::Disj => disj(x, &mut deferred(y)),
        BinaryOp::Lenient => lenient(x, y),
        BinaryOp::Strict => strict(x, y),
        BinaryOp::Disregard => disregard(x, y),
    }
}

fn pairs() -> impl Iterator<Item = (Status, Status)> {
    Status::ALL
        .into_iter()
        .flat_map(|x| Status::ALL.into_iter().map(move |y| (x, y)))
}

fn truth_tables() -> Check {
    let mut cases = 0;
    for op in BinaryOp::ALL {
        for (x, y) in pairs() {
            let got = apply(op, x, y);
            ensure(got == table(op, x, y), || {
                format!("{x} {} {y} = {got}", op.symbol())
            })?;
            cases += 1;
        }
    }
    for op in Unary::ALL {
        for x in Status::ALL {
            let got = apply_unary(op, x);
            ensure(got == unary_table(op, x), || {
                format!("{}{x} = {got}", op.symbol())
            })?;
            cases += 1;
        }
    }
    ensure(cases == 57, || format!("{cases} cases"))
}

fn algebraic_laws() -> Check {
    for op in [
        BinaryOp::Conj,
        BinaryOp::Disj,
        BinaryOp::Lenient,
        BinaryOp::Strict,
    ] {
        for (x, y) in pairs() {
            for z in Status::ALL {
                let l = apply(op, apply(op, x, y), z);
                let r = apply(op, x, apply(op, y, z));
                ensure(l == r, || {
                    format!("{} not associative at {x}{y}{z}", op.name())
                })?;
            }
        }
    }
    for (x, y) in pairs() {
        ensure(lenient(x, y) == lenient(y, x), || format!("lenient {x}{y}"))?;
        ensure(strict(x, y) == strict(y, x), || format!("strict {x}{y}"))?;
    }
    ensure(
        apply(BinaryOp::Conj, U, F) != apply(BinaryOp::Conj, F, U),
        || "conj commutes".into(),
    )?;
    ensure(
        apply(BinaryOp::Disj, U, T) != apply(BinaryOp::Disj, T, U),
        || "disj commutes".into(),
    )
}

fn kleene_divergence() -> Check {
    let and = conj(U, &mut deferred(F));
    let or = disj(U, &mut deferred(T));
    ensure(and == U && or == U, || {
        format!("conj(U,F)={and} disj(U,T)={or}")
    })?;
    ensure(kleene_and(U, F) == F && kleene_or(U, T) == T, || {
        "kleene oracle".into()
    })
}

fn short_circuit() -> Check {
    for (x, y) in pairs() {
        let mut d = deferred(y);
        conj(x, &mut d);
        ensure(d.forced_count() == usize::from(x == T), || {
            format!("conj({x},_) forced {}", d.forced_count())
        })?;
        let mut d = deferred(y);
        disj(x, &mut d);
        ensure(d.forced_count() == usize::from(x == F), || {
            format!("disj({x},_) forced {}", d.forced_count())
        })?;
    }
    Ok(())
}

fn de_morgan_and_extrema() -> Check {
    for (x, y) in pairs() {
        let lhs = conj(x, &mut deferred(y)).negate();
        let rhs = disj(x.negate(), &mut Deferred::new(|| y.negate()));
        ensure(lhs == rhs, || format!("!({x} && {y})"))?;
        let lhs = disj(x, &mut deferred(y)).negate();
        let rhs = conj(x.negate(), &mut Deferred::new(|| y.negate()));
        ensure(lhs == rhs, || format!("!({x} || {y})"))?;
        ensure(lenient(x, y) == x.max(y), || format!("{x} + {y}"))?;
        ensure(strict(x, y) == x.min(y), || format!("{x} * {y}"))?;
    }
    Ok(())
}

fn oracle_equivalence() -> Check {
    let all = assignments(4);
    ensure(all.len() == 81, || format!("{} assignments", all.len()))?;
    for (op, identity) in [(BinaryOp::Conj, T), (BinaryOp::Disj, F)] {
        for statuses in &all {
            let (ref_counts, mut tasks): (Vec<_>, Vec<Box<dyn Task<()>>>) = statuses
                .iter()
                .map(|&s| {
                    let (c, t) = counted::<()>(s);
                    (c, Box::new(t) as Box<dyn Task<()>>)
                })
                .unzip();
            let (mut world, mut sink) = ((), NullSink);
            let mut cx = Ctx::new(&mut world, 1, &mut sink);
            let expected = match op {
                BinaryOp::Conj => reference_sequence(&mut tasks, &mut cx),
                _ => reference_selector(&mut tasks, &mut cx),
            };

            let mut counts = Vec::new();
            let mut b = Bindings::new();
            for (i, &s) in statuses.iter().enumerate() {
                let (c, t) = counted::<()>(s);
                counts.push(c);
                b = b.task(format!("c{i}"), t);
            }
            let expr = StatusExpr::fold(op, (0..4).map(|i| StatusExpr::ident(format!("c{i}"))))
                .unwrap_or(StatusExpr::lit(identity));
            let (got, _) = tick_stateless(&expr, &mut b, &mut (), 1).map_err(|e| e.to_string())?;

            let ticked = |cs: &[std::rc::Rc<std::cell::Cell<usize>>]| {
                cs.iter().map(|c| c.get()).collect::<Vec<_>>()
            };
            ensure(got == expected, || {
                format!("{} {statuses:?}: {got} vs {expected}", op.name())
            })?;
            ensure(ticked(&counts) == ticked(&ref_counts), || {
                format!("{} {statuses:?}: ticked sets differ", op.name())
            })?;
        }
    }
    Ok(())
}

fn stateful_latching() -> Check {
    let (c0, t0) = counted::<()>(T);
    let (c1, t1) = counted::<()>(F);
    let mut node = StatefulNode::sequence("root").child("a", t0).child("b", t1);
    let mut tick = 0;
    let mut step = |node: &mut StatefulNode<()>| {
        tick += 1;
        let mut events = Vec::new();
        let s = node.tick(&mut Ctx::new(&mut (), tick, &mut events));
        (s, events.len())
    };
    ensure(step(&mut node).0 == U, || "first tick should run".into())?;
    ensure(step(&mut node).0 == F, || {
        "second child should fail the sequence".into()
    })?;
    let before = (c0.get(), c1.get());
    for _ in 0..3 {
        let (s, events) = step(&mut node);
        ensure(s == F && events == 0, || {
            format!("latched tick gave {s} with {events} events")
        })?;
    }
    ensure((c0.get(), c1.get()) == before, || {
        "children ticked while latched".into()
    })?;
    node.reset();
    ensure(node.latched().is_none(), || "reset kept the latch".into())?;
    ensure(step(&mut node).0 == U && c0.get() == before.0 + 1, || {
        "reset did not restart at the first child".into()
    })
}

fn coffee_convergence() -> Check {
    let config = CoffeeConfig::default();
    let mut worst = 0;
    for i in 0..coffee_state_count(&config) {
        let world =
            coffee_world_init(CoffeeProfile::Enumerated(i), &config).map_err(|e| e.to_string())?;
        let report = run(
            coffee_scenario(CoffeeTree::Stateless, world, config),
            200,
            &[],
        );
        match report.outcome {
            Outcome::GoalReached(t) if t <= COFFEE_BOUND && report.world.flag("cupFull") => {
                worst = worst.max(t)
            }
            other => return Err(format!("state {i}: {other}")),
        }
    }
    ensure(worst == COFFEE_BOUND, || {
        format!("bound {COFFEE_BOUND} but worst case {worst}")
    })?;

    let outcome = |name: &str| {
        let sc = scenario(name).unwrap();
        let i = sc.interference(5, "empty-kettle").unwrap();
        run(sc, 200, &[i]).outcome
    };
    let (stateless, stateful) = (outcome("coffee-stateless"), outcome("coffee-stateful"));
    ensure(
        matches!(stateless, Outcome::GoalReached(_))
            && matches!(stateful, Outcome::LatchedFailure(_)),
        || format!("stateless {stateless}, stateful {stateful}"),
    )
}

fn invoke(args: &[&str]) -> (i32, Vec<u8>) {
    let mut argv = vec!["status-logic"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = main_with_args(argv, &mut out, &mut err);
    (code, out)
}

fn determinism() -> Check {
    let cases: [(&[&str], &str); 3] = [
        (
            &["run", "coffee-stateless"],
            include_str!("golden/coffee-stateless.trace"),
        ),
        (
            &["run", "coffee-stateful"],
            include_str!("golden/coffee-stateful.trace"),
        ),
        (
            &["run", "coffee-stateful", "--interfere", "5:empty-kettle"],
            include_str!("golden/coffee-stateful-interfered.trace"),
        ),
    ];
    for (args, golden) in cases {
        let first = invoke(args);
        let second = invoke(args);
        ensure(first == second, || format!("{args:?} differs between runs"))?;
        ensure(first.1 == golden.as_bytes(), || {
            format!("{args:?} differs from golden")
        })?;
    }
    Ok(())
}

fn parser() -> Check {
    let id = StatusExpr::ident;
    let goldens = [
        (
            "a || b && c",
            StatusExpr::disj(id("a"), StatusExpr::conj(id("b"), id("c"))),
        ),
        (
            "x * y + z",
            StatusExpr::binary(
                BinaryOp::Lenient,
                StatusExpr::binary(BinaryOp::Strict, id("x"), id("y")),
                id("z"),
            ),
        ),
        (
            "a && b || c || d",
            StatusExpr::disj(
                StatusExpr::disj(StatusExpr::conj(id("a"), id("b")), id("c")),
                id("d"),
            ),
        ),
    ];
    for (src, expected) in goldens {
        let got = parse_str(src).map_err(|e| e.to_string())?;
        ensure(got == expected, || format!("{src} parsed as {got:?}"))?;
    }

    let mut runner = TestRunner::new(Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&arb_expr(6), |e| {
            proptest::prop_assert!(e.depth() <= 6);
            let printed = pretty_print(&e);
            let reparsed = parse_str(&printed).map_err(|err| {
                proptest::test_runner::TestCaseError::fail(format!("{printed}: {err}"))
            })?;
            proptest::prop_assert_eq!(reparsed, e);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("truth tables: 45 binary and 12 unary cases", truth_tables),
        (
            "associativity, commutativity and non-commutativity witnesses",
            algebraic_laws,
        ),
        (
            "divergence from Kleene on undetermined left operands",
            kleene_divergence,
        ),
        ("short-circuit forcing contract", short_circuit),
        (
            "De Morgan duality and min/max equivalences",
            de_morgan_and_extrema,
        ),
        (
            "folds match reference sequence/selector on 81 assignments",
            oracle_equivalence,
        ),
        ("stateful latching and reset", stateful_latching),
        (
            "coffee convergence within the frozen bound; stateful/stateless contrast",
            coffee_convergence,
        ),
        ("deterministic runs matching golden traces", determinism),
        ("parser precedence goldens and 1000-case round trip", parser),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let result =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(()) => println!("[PASS] {} {name}", n + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {} {name}: {why}", n + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.2?}",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
