//! Deterministic tick-based world simulation.
//!
//! Each tick applies the scenario's passive dynamics, then any interference
//! due at that tick, then ticks the root once and finally tests the goal.

mod coffee;
mod forager;
mod world;

use std::fmt;

pub use coffee::{
    coffee_naive_root, coffee_scenario, coffee_state_count, coffee_stateful_root,
    coffee_stateless_root, coffee_world_init, CoffeeConfig, CoffeeProfile, CoffeeTree,
    COFFEE_NAIVE_SOURCE, COFFEE_STATELESS_SOURCE,
};
pub use forager::{forager_root, forager_scenario, ForagerConfig, FORAGER_SOURCE};
pub use world::{Value, World, WorldError};

use crate::dsl::StatusExpr;
use crate::engine::{tick_expr, Bindings, Ctx, StatefulNode, TraceEvent, TraceSink};
use crate::status::Status;

/// Known scenario names, in the order they are listed to users.
pub const SCENARIOS: [&str; 4] = [
    "coffee-stateless",
    "coffee-stateful",
    "coffee-naive",
    "forager",
];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimError {
    #[error("unknown scenario `{name}` (known: {})", SCENARIOS.join(", "))]
    UnknownScenario { name: String },
    #[error("scenario `{scenario}` has no mutation `{name}` (known: {})", known.join(", "))]
    UnknownMutation {
        scenario: String,
        name: String,
        known: Vec<&'static str>,
    },
    #[error("initial state index {index} out of range (0..{count})")]
    IndexOutOfRange { index: usize, count: usize },
}

pub type Mutation = fn(&mut World);

/// The tree a scenario ticks.
pub enum Root {
    /// Stateless: re-evaluated from scratch every tick.
    Expr {
        expr: StatusExpr,
        bindings: Bindings<World>,
    },
    Stateful(StatefulNode<World>),
}

impl Root {
    fn tick(&mut self, cx: &mut Ctx<'_, World>) -> Status {
        match self {
            Root::Expr { expr, bindings } => {
                // scenario bindings cover every identifier and declared flag
                tick_expr(expr, bindings, cx).unwrap_or_else(|e| panic!("scenario tree: {e}"))
            }
            Root::Stateful(node) => {
                let status = node.tick(cx);
                let id = node.id().to_string();
                cx.record(&id, status);
                status
            }
        }
    }

    fn latched(&self) -> Option<Status> {
        match self {
            Root::Expr { .. } => None,
            Root::Stateful(node) => node.latched(),
        }
    }
}

pub struct Scenario {
    pub name: String,
    pub world: World,
    pub root: Root,
    pub goal: Box<dyn Fn(&World) -> bool>,
    pub dynamics: Box<dyn FnMut(&mut World)>,
    pub mutations: Vec<(&'static str, Mutation)>,
}

impl Scenario {
    /// Schedules the named mutation at `at_tick`.
    pub fn interference(&self, at_tick: u64, name: &str) -> Result<Interference, SimError> {
        self.mutations
            .iter()
            .find(|(n, _)| *n == name)
            .map(|&(name, apply)| Interference {
                at_tick,
                name,
                apply,
            })
            .ok_or_else(|| SimError::UnknownMutation {
                scenario: self.name.clone(),
                name: name.to_string(),
                known: self.mutations.iter().map(|(n, _)| *n).collect(),
            })
    }
}

/// A world edit applied once, after passive dynamics and before the tree
/// ticks.
#[derive(Clone, Copy)]
pub struct Interference {
    pub at_tick: u64,
    pub name: &'static str,
    apply: Mutation,
}

impl fmt::Debug for Interference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Interference({}:{})", self.at_tick, self.name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    GoalReached(u64),
    Timeout(u64),
    LatchedFailure(u64),
}

impl Outcome {
    pub fn tick(self) -> u64 {
        match self {
            Outcome::GoalReached(t) | Outcome::Timeout(t) | Outcome::LatchedFailure(t) => t,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Outcome::GoalReached(_) => "goal-reached",
            Outcome::Timeout(_) => "timeout",
            Outcome::LatchedFailure(_) => "latched-failure",
        }
    }

    pub fn is_goal(self) -> bool {
        matches!(self, Outcome::GoalReached(_))
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "outcome={} tick={}", self.name(), self.tick())
    }
}

/// A scenario being stepped one tick at a time.
pub struct Simulation {
    scenario: Scenario,
    interferences: Vec<Interference>,
}

impl Simulation {
    pub fn new(scenario: Scenario, interferences: &[Interference]) -> Self {
        Simulation {
            scenario,
            interferences: interferences.to_vec(),
        }
    }

    pub fn world(&self) -> &World {
        &self.scenario.world
    }

    pub fn tick(&self) -> u64 {
        self.scenario.world.tick
    }

    /// Advances one tick and returns the root status plus, if the run is
    /// over, how it ended.
    pub fn step(&mut self, sink: &mut dyn TraceSink) -> (Status, Option<Outcome>) {
        let sc = &mut self.scenario;
        sc.world.tick += 1;
        let tick = sc.world.tick;
        (sc.dynamics)(&mut sc.world);
        for i in self.interferences.iter().filter(|i| i.at_tick == tick) {
            (i.apply)(&mut sc.world);
        }
        let status = sc.root.tick(&mut Ctx::new(&mut sc.world, tick, sink));
        let outcome = if (sc.goal)(&sc.world) {
            Some(Outcome::GoalReached(tick))
        } else if sc.root.latched() == Some(Status::FAILING) {
            Some(Outcome::LatchedFailure(tick))
        } else {
            None
        };
        (status, outcome)
    }

    pub fn into_world(self) -> World {
        self.scenario.world
    }
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub outcome: Outcome,
    pub trace: Vec<TraceEvent>,
    pub world: World,
}

/// Runs until the goal holds, the root latches failure, or `max_ticks`
/// ticks have elapsed, streaming trace events into `sink`.
pub fn run_with_sink(
    scenario: Scenario,
    max_ticks: u64,
    interferences: &[Interference],
    sink: &mut dyn TraceSink,
) -> (Outcome, World) {
    assert!(max_ticks > 0, "max_ticks must be positive");
    let mut sim = Simulation::new(scenario, interferences);
    while sim.tick() < max_ticks {
        if let (_, Some(outcome)) = sim.step(sink) {
            return (outcome, sim.into_world());
        }
    }
    let tick = sim.tick();
    (Outcome::Timeout(tick), sim.into_world())
}

pub fn run(scenario: Scenario, max_ticks: u64, interferences: &[Interference]) -> RunReport {
    let mut trace = Vec::new();
    let (outcome, world) = run_with_sink(scenario, max_ticks, interferences, &mut trace);
    RunReport {
        outcome,
        trace,
        world,
    }
}

/// Builds a named scenario from its default starting world.
pub fn scenario(name: &str) -> Result<Scenario, SimError> {
    let config = CoffeeConfig::default();
    let canonical = || coffee_world_init(CoffeeProfile::Canonical, &config);
    match name {
        "coffee-stateless" => Ok(coffee_scenario(CoffeeTree::Stateless, canonical()?, config)),
        "coffee-stateful" => Ok(coffee_scenario(CoffeeTree::Stateful, canonical()?, config)),
        "coffee-naive" => Ok(coffee_scenario(CoffeeTree::Naive, canonical()?, config)),
        "forager" => Ok(forager_scenario(ForagerConfig::default())),
        _ => Err(SimError::UnknownScenario {
            name: name.to_string(),
        }),
    }
}
