//! A forager that hunts and gathers by day and sleeps at home by night.
//!
//! There is no spatial model: prey and food appear on a fixed schedule and
//! leaving or entering home takes one tick.

use super::world::World;
use super::{Root, Scenario};
use crate::dsl::{parse_str, StatusExpr};
use crate::engine::Bindings;
use crate::status::Status;

/// Day and night branches selected by the `isDay` condition.
pub const FORAGER_SOURCE: &str = "\
# by day: leave home, then hunt, gather, or roam
isDay && (exit_home && (hunt || gather || roam))
# by night: go home and sleep
|| !isDay && (enter_home && sleep)
";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ForagerConfig {
    /// Ticks per day and per night.
    pub half_day: u64,
    /// Prey shows up on day ticks divisible by this.
    pub prey_every: u64,
    /// Food shows up on day ticks divisible by this.
    pub food_every: u64,
    /// Goal: this many catches and this much food, then a night's rest.
    pub hunted_goal: i64,
    pub gathered_goal: i64,
}

impl Default for ForagerConfig {
    fn default() -> Self {
        ForagerConfig {
            half_day: 10,
            prey_every: 6,
            food_every: 4,
            hunted_goal: 2,
            gathered_goal: 3,
        }
    }
}

fn initial_world() -> World {
    World::new()
        .with_bool("isDay", true)
        .with_bool("indoors", true)
        .with_bool("preyPresent", false)
        .with_bool("foodPresent", false)
        .with_int("hunted", 0, 0, 1000)
        .with_int("gathered", 0, 0, 1000)
        .with_int("restTicks", 0, 0, 1000)
}

fn dynamics(w: &mut World, config: &ForagerConfig) {
    let t = w.tick;
    let day = ((t - 1) / config.half_day).is_multiple_of(2);
    w.put_flag("isDay", day);
    if day && t.is_multiple_of(config.prey_every) {
        w.put_flag("preyPresent", true);
    }
    if day && t.is_multiple_of(config.food_every) {
        w.put_flag("foodPresent", true);
    }
}

fn bump(w: &mut World, counter: &str) {
    let n = w.int(counter);
    w.put_int(counter, n + 1);
}

/// Takes whatever `present` flags, counting it in `counter`.
fn take(w: &mut World, present: &str, counter: &str) -> Status {
    if !w.flag(present) {
        return Status::FAILING;
    }
    w.put_flag(present, false);
    bump(w, counter);
    Status::COMPLETE
}

/// Moves through the door if needed; the move itself takes the tick.
fn go(w: &mut World, indoors: bool) -> Status {
    if w.flag("indoors") == indoors {
        Status::COMPLETE
    } else {
        w.put_flag("indoors", indoors);
        Status::RUNNING
    }
}

pub fn forager_root() -> (StatusExpr, Bindings<World>) {
    let expr = parse_str(FORAGER_SOURCE).expect("built-in source parses");
    let bindings = Bindings::new()
        .flag("isDay", "isDay")
        .task("exit_home", |w: &mut World| go(w, false))
        .task("enter_home", |w: &mut World| go(w, true))
        .task("hunt", |w: &mut World| take(w, "preyPresent", "hunted"))
        .task("gather", |w: &mut World| take(w, "foodPresent", "gathered"))
        .task("roam", |_: &mut World| Status::RUNNING)
        .task("sleep", |w: &mut World| {
            bump(w, "restTicks");
            Status::RUNNING
        });
    (expr, bindings)
}

fn scare_prey(w: &mut World) {
    w.put_flag("preyPresent", false);
}

fn spoil_food(w: &mut World) {
    w.put_flag("foodPresent", false);
}

pub fn forager_scenario(config: ForagerConfig) -> Scenario {
    let (expr, bindings) = forager_root();
    Scenario {
        name: "forager".to_string(),
        world: initial_world(),
        root: Root::Expr { expr, bindings },
        goal: Box::new(move |w| {
            w.int("hunted") >= config.hunted_goal
                && w.int("gathered") >= config.gathered_goal
                && w.int("restTicks") > 0
        }),
        dynamics: Box::new(move |w| dynamics(w, &config)),
        mutations: vec![
            ("scare-prey", scare_prey as fn(&mut World)),
            ("spoil-food", spoil_food),
        ],
    }
}
