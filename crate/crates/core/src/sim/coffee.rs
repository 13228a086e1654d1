//! Brewing a cup of coffee, three ways.
//!
//! World variables:
//!
//! | name              | values                     |
//! |-------------------|----------------------------|
//! | `kettleWater`     | `empty` / `cold` / `hot`   |
//! | `kettleOn`        | bool                       |
//! | `kettleHeat`      | ticks of heating so far    |
//! | `potGround`       | bool                       |
//! | `potWater`        | bool                       |
//! | `infuseRemaining` | ticks until brewed         |
//! | `coffeeReady`     | bool                       |
//! | `cupFull`         | bool (the goal)            |
//!
//! A kettle that is on with cold water heats for `heat_ticks` ticks, then
//! the water is hot and the kettle switches itself off. Hot water poured
//! onto ground coffee (or ground coffee added to hot water) infuses for
//! `infuse_ticks` ticks.

use super::world::World;
use super::{Root, Scenario, SimError};
use crate::dsl::{parse_str, StatusExpr};
use crate::engine::{Bindings, StatefulNode};
use crate::status::Status;

const WATER: &[&str] = &["empty", "cold", "hot"];

/// Fallback chain: every step runs only if all earlier steps fail.
pub const COFFEE_STATELESS_SOURCE: &str = "\
# making coffee, stateless
pour_cup           # coffee is ready: pour it into the cup
|| wait_infusion   # wait while the coffee infuses
|| pour_hot_water  # kettle off and water hot: pour into the pot
|| pour_ground     # put ground coffee in the pot
|| heat_kettle     # cold water in the kettle: turn it on
|| fill_kettle     # empty kettle: fill it from the tap
";

/// The ordered recipe re-evaluated from scratch every tick.
pub const COFFEE_NAIVE_SOURCE: &str = "\
# the stateful recipe, evaluated as a stateless sequence
fill_kettle && kettle_on && pour_ground && wait_kettle_off
  && pour_hot_water && wait_infusion && pour_cup
";

const RECIPE: [&str; 7] = [
    "fill_kettle",
    "kettle_on",
    "pour_ground",
    "wait_kettle_off",
    "pour_hot_water",
    "wait_infusion",
    "pour_cup",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoffeeConfig {
    pub heat_ticks: i64,
    pub infuse_ticks: i64,
}

impl Default for CoffeeConfig {
    fn default() -> Self {
        CoffeeConfig {
            heat_ticks: 3,
            infuse_ticks: 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoffeeProfile {
    /// Kettle and pot empty, nothing on, cup empty.
    Canonical,
    /// The n-th consistent state of the full enumeration.
    Enumerated(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoffeeTree {
    /// Six-step fallback chain.
    Stateless,
    /// Seven-step recipe as a latched sequence.
    Stateful,
    /// Seven-step recipe as a stateless sequence.
    Naive,
}

fn canonical(config: &CoffeeConfig) -> World {
    World::new()
        .with_label("kettleWater", "empty", WATER)
        .with_bool("kettleOn", false)
        .with_int("kettleHeat", 0, 0, config.heat_ticks)
        .with_bool("potGround", false)
        .with_bool("potWater", false)
        .with_int("infuseRemaining", 0, 0, config.infuse_ticks)
        .with_bool("coffeeReady", false)
        .with_bool("cupFull", false)
}

fn consistent(w: &World) -> bool {
    let water = w.label("kettleWater");
    let infusing = w.int("infuseRemaining") > 0;
    (!w.flag("kettleOn") || water != "empty")
        && (!infusing || (w.flag("potWater") && w.flag("potGround")))
        && (!w.flag("coffeeReady") || !infusing)
        // partial heating only happens to cold water in a kettle that is on
        && (w.int("kettleHeat") == 0 || (water == "cold" && w.flag("kettleOn")))
}

fn enumerate(config: &CoffeeConfig) -> Vec<World> {
    let base = canonical(config);
    let mut out = Vec::new();
    for water in WATER {
        for on in [false, true] {
            for heat in 0..config.heat_ticks {
                for ground in [false, true] {
                    for pot_water in [false, true] {
                        for infuse in 0..=config.infuse_ticks {
                            for ready in [false, true] {
                                for cup in [false, true] {
                                    let mut w = base.clone();
                                    w.put_label("kettleWater", water);
                                    w.put_flag("kettleOn", on);
                                    w.put_int("kettleHeat", heat);
                                    w.put_flag("potGround", ground);
                                    w.put_flag("potWater", pot_water);
                                    w.put_int("infuseRemaining", infuse);
                                    w.put_flag("coffeeReady", ready);
                                    w.put_flag("cupFull", cup);
                                    if consistent(&w) {
                                        out.push(w);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Number of consistent starting states.
pub fn coffee_state_count(config: &CoffeeConfig) -> usize {
    enumerate(config).len()
}

pub fn coffee_world_init(profile: CoffeeProfile, config: &CoffeeConfig) -> Result<World, SimError> {
    match profile {
        CoffeeProfile::Canonical => Ok(canonical(config)),
        CoffeeProfile::Enumerated(index) => {
            let mut all = enumerate(config);
            let count = all.len();
            if index < count {
                Ok(all.swap_remove(index))
            } else {
                Err(SimError::IndexOutOfRange { index, count })
            }
        }
    }
}

fn start_infusion(w: &mut World, config: &CoffeeConfig) {
    if config.infuse_ticks == 0 {
        w.put_flag("coffeeReady", true);
    } else {
        w.put_int("infuseRemaining", config.infuse_ticks);
        w.put_flag("coffeeReady", false);
    }
}

fn dynamics(w: &mut World, config: &CoffeeConfig) {
    if w.flag("kettleOn") {
        match w.label("kettleWater") {
            "cold" => {
                let heat = w.int("kettleHeat") + 1;
                if heat >= config.heat_ticks {
                    w.put_label("kettleWater", "hot");
                    w.put_int("kettleHeat", 0);
                    w.put_flag("kettleOn", false);
                } else {
                    w.put_int("kettleHeat", heat);
                }
            }
            // boiled, or boiling dry: the kettle switches off
            _ => w.put_flag("kettleOn", false),
        }
    }
    let remaining = w.int("infuseRemaining");
    if remaining > 0 {
        w.put_int("infuseRemaining", remaining - 1);
        if remaining == 1 {
            w.put_flag("coffeeReady", true);
        }
    }
}

fn pour_into_cup(w: &mut World) {
    w.put_flag("cupFull", true);
    w.put_flag("coffeeReady", false);
    w.put_flag("potWater", false);
    w.put_flag("potGround", false);
}

fn pour_kettle_into_pot(w: &mut World, config: &CoffeeConfig) {
    w.put_flag("potWater", true);
    w.put_label("kettleWater", "empty");
    if w.flag("potGround") {
        start_infusion(w, config);
    }
}

fn kettle_hot_and_off(w: &World) -> bool {
    w.label("kettleWater") == "hot" && !w.flag("kettleOn")
}

/// The stateless fallback chain with its step bindings.
pub fn coffee_stateless_root(config: CoffeeConfig) -> (StatusExpr, Bindings<World>) {
    let expr = parse_str(COFFEE_STATELESS_SOURCE).expect("built-in source parses");
    let bindings = Bindings::new()
        .task("pour_cup", |w: &mut World| {
            if !w.flag("coffeeReady") {
                return Status::FAILING;
            }
            pour_into_cup(w);
            Status::COMPLETE
        })
        .task("wait_infusion", |w: &mut World| {
            if w.int("infuseRemaining") > 0 {
                Status::RUNNING
            } else {
                Status::FAILING
            }
        })
        .task("pour_hot_water", move |w: &mut World| {
            if !kettle_hot_and_off(w) {
                return Status::FAILING;
            }
            pour_kettle_into_pot(w, &config);
            Status::COMPLETE
        })
        .task("pour_ground", move |w: &mut World| {
            if w.flag("potGround") {
                return Status::FAILING;
            }
            w.put_flag("potGround", true);
            if w.flag("potWater") {
                start_infusion(w, &config);
            }
            Status::COMPLETE
        })
        .task("heat_kettle", |w: &mut World| {
            if w.label("kettleWater") != "cold" {
                Status::FAILING
            } else if w.flag("kettleOn") {
                Status::RUNNING
            } else {
                w.put_flag("kettleOn", true);
                Status::COMPLETE
            }
        })
        .task("fill_kettle", |w: &mut World| {
            if w.label("kettleWater") != "empty" {
                return Status::FAILING;
            }
            w.put_label("kettleWater", "cold");
            w.put_int("kettleHeat", 0);
            Status::COMPLETE
        });
    (expr, bindings)
}

/// One step of the ordered recipe. Actions whose effect already holds
/// succeed without doing anything.
fn recipe_step(step: &str, w: &mut World, config: &CoffeeConfig) -> Status {
    let water = w.label("kettleWater");
    match step {
        "fill_kettle" => {
            if water == "empty" {
                w.put_label("kettleWater", "cold");
                w.put_int("kettleHeat", 0);
            }
            Status::COMPLETE
        }
        "kettle_on" => match water {
            "empty" => Status::FAILING,
            "cold" => {
                w.put_flag("kettleOn", true);
                Status::COMPLETE
            }
            _ => Status::COMPLETE,
        },
        "pour_ground" => {
            let infusing = w.int("infuseRemaining") > 0 || w.flag("coffeeReady");
            if !w.flag("potGround") {
                w.put_flag("potGround", true);
                if w.flag("potWater") && !infusing {
                    start_infusion(w, config);
                }
            }
            Status::COMPLETE
        }
        "wait_kettle_off" => match (water, w.flag("kettleOn")) {
            ("empty", _) => Status::FAILING,
            (_, true) => Status::RUNNING,
            ("hot", false) => Status::COMPLETE,
            _ => Status::FAILING,
        },
        "pour_hot_water" => {
            if !kettle_hot_and_off(w) {
                return Status::FAILING;
            }
            pour_kettle_into_pot(w, config);
            Status::COMPLETE
        }
        "wait_infusion" => {
            if w.int("infuseRemaining") > 0 {
                Status::RUNNING
            } else {
                Status::from_bool(w.flag("coffeeReady"))
            }
        }
        "pour_cup" => {
            if !w.flag("coffeeReady") {
                return Status::FAILING;
            }
            pour_into_cup(w);
            Status::COMPLETE
        }
        other => unreachable!("unknown recipe step {other}"),
    }
}

/// The seven-step recipe as a latched sequence.
pub fn coffee_stateful_root(config: CoffeeConfig) -> StatefulNode<World> {
    RECIPE
        .iter()
        .fold(StatefulNode::sequence("root"), |node, &step| {
            node.child(step, move |w: &mut World| recipe_step(step, w, &config))
        })
}

/// The seven-step recipe as a stateless sequence, which can cycle.
pub fn coffee_naive_root(config: CoffeeConfig) -> (StatusExpr, Bindings<World>) {
    let expr = parse_str(COFFEE_NAIVE_SOURCE).expect("built-in source parses");
    let bindings = RECIPE.iter().fold(Bindings::new(), |b, &step| {
        b.task(step, move |w: &mut World| recipe_step(step, w, &config))
    });
    (expr, bindings)
}

fn empty_kettle(w: &mut World) {
    w.put_label("kettleWater", "empty");
    w.put_flag("kettleOn", false);
    w.put_int("kettleHeat", 0);
}

fn empty_pot(w: &mut World) {
    w.put_flag("potGround", false);
    w.put_flag("potWater", false);
    w.put_int("infuseRemaining", 0);
    w.put_flag("coffeeReady", false);
}

fn cool_kettle(w: &mut World) {
    if w.label("kettleWater") == "hot" {
        w.put_label("kettleWater", "cold");
        w.put_int("kettleHeat", 0);
    }
}

pub fn coffee_scenario(tree: CoffeeTree, world: World, config: CoffeeConfig) -> Scenario {
    let (name, root) = match tree {
        CoffeeTree::Stateless => {
            let (expr, bindings) = coffee_stateless_root(config);
            ("coffee-stateless", Root::Expr { expr, bindings })
        }
        CoffeeTree::Stateful => (
            "coffee-stateful",
            Root::Stateful(coffee_stateful_root(config)),
        ),
        CoffeeTree::Naive => {
            let (expr, bindings) = coffee_naive_root(config);
            ("coffee-naive", Root::Expr { expr, bindings })
        }
    };
    Scenario {
        name: name.to_string(),
        world,
        root,
        goal: Box::new(|w| w.flag("cupFull")),
        dynamics: Box::new(move |w| dynamics(w, &config)),
        mutations: vec![
            ("empty-kettle", empty_kettle as fn(&mut World)),
            ("empty-pot", empty_pot),
            ("cool-kettle", cool_kettle),
        ],
    }
}
