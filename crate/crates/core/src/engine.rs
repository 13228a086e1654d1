//! Tick-driven evaluation of behavior trees.
//!
//! Two models live here. Stateless trees are status expressions re-evaluated
//! from scratch on every tick ([`tick_stateless`], [`tick_expr`]); their
//! leaves are resolved through [`Bindings`]. Stateful composites
//! ([`StatefulNode`]) keep a child cursor and latch their final status until
//! [`StatefulNode::reset`] is called.
//!
//! Every evaluated node emits a [`TraceEvent`]; short-circuited subtrees emit
//! nothing.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::dsl::{BinaryOp, Pos, SourceError, StatusExpr};
use crate::status::{apply_unary, conj, disj, disregard, lenient, strict, Deferred, Status};

/// Read access to boolean world variables, used by condition bindings.
pub trait WorldView {
    fn flag(&self, name: &str) -> Option<bool>;
}

impl WorldView for () {
    fn flag(&self, _name: &str) -> Option<bool> {
        None
    }
}

impl WorldView for BTreeMap<String, bool> {
    fn flag(&self, name: &str) -> Option<bool> {
        self.get(name).copied()
    }
}

/// One node evaluation: which node, at which tick, with what result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEvent {
    pub tick: u64,
    pub node: String,
    pub status: Status,
}

impl TraceEvent {
    /// `tick<TAB>node<TAB>F|U|T`
    pub fn to_text(&self) -> String {
        format!("{}\t{}\t{}", self.tick, self.node, self.status)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("trace events always serialize")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TraceFormat {
    #[default]
    Text,
    Jsonl,
}

impl TraceFormat {
    pub fn write_event(self, out: &mut impl Write, event: &TraceEvent) -> io::Result<()> {
        match self {
            TraceFormat::Text => writeln!(out, "{}", event.to_text()),
            TraceFormat::Jsonl => writeln!(out, "{}", event.to_json()),
        }
    }

    pub fn write_all(self, out: &mut impl Write, events: &[TraceEvent]) -> io::Result<()> {
        events.iter().try_for_each(|e| self.write_event(out, e))
    }
}

pub trait TraceSink {
    fn record(&mut self, event: TraceEvent);
}

impl TraceSink for Vec<TraceEvent> {
    fn record(&mut self, event: TraceEvent) {
        self.push(event);
    }
}

/// Discards every event.
pub struct NullSink;

impl TraceSink for NullSink {
    fn record(&mut self, _event: TraceEvent) {}
}

/// What a task sees while it ticks.
pub struct Ctx<'a, W> {
    pub world: &'a mut W,
    pub tick: u64,
    sink: &'a mut dyn TraceSink,
}

impl<'a, W> Ctx<'a, W> {
    pub fn new(world: &'a mut W, tick: u64, sink: &'a mut dyn TraceSink) -> Self {
        Ctx { world, tick, sink }
    }

    pub fn record(&mut self, node: &str, status: Status) {
        self.sink.record(TraceEvent {
            tick: self.tick,
            node: node.to_string(),
            status,
        });
    }
}

/// Anything that can be ticked for a status.
pub trait Task<W> {
    fn tick(&mut self, cx: &mut Ctx<'_, W>) -> Status;

    /// Returns the task to its initial state. Stateless tasks ignore this.
    fn reset(&mut self) {}
}

impl<W, F: FnMut(&mut W) -> Status> Task<W> for F {
    fn tick(&mut self, cx: &mut Ctx<'_, W>) -> Status {
        self(cx.world)
    }
}

/// What an identifier in a status expression stands for.
pub enum Binding<W> {
    /// A fixed status.
    Value(Status),
    /// A boolean world variable, read as a condition.
    Flag(String),
    /// A task ticked at most once per evaluation.
    Task(Box<dyn Task<W>>),
}

impl<W> fmt::Debug for Binding<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Binding::Value(s) => write!(f, "Value({s})"),
            Binding::Flag(v) => write!(f, "Flag({v:?})"),
            Binding::Task(_) => f.write_str("Task(..)"),
        }
    }
}

struct Slot<W> {
    binding: Binding<W>,
    // (evaluation epoch, result) of the last time this slot was resolved
    memo: Option<(u64, Status)>,
}

/// Name to binding environment for stateless evaluation.
pub struct Bindings<W> {
    slots: BTreeMap<String, Slot<W>>,
    epoch: u64,
}

impl<W> Default for Bindings<W> {
    fn default() -> Self {
        Bindings {
            slots: BTreeMap::new(),
            epoch: 0,
        }
    }
}

impl<W> Bindings<W> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, name: impl Into<String>, binding: Binding<W>) -> &mut Self {
        self.slots.insert(
            name.into(),
            Slot {
                binding,
                memo: None,
            },
        );
        self
    }

    pub fn value(mut self, name: impl Into<String>, status: Status) -> Self {
        self.insert(name, Binding::Value(status));
        self
    }

    pub fn flag(mut self, name: impl Into<String>, variable: impl Into<String>) -> Self {
        self.insert(name, Binding::Flag(variable.into()));
        self
    }

    pub fn task(mut self, name: impl Into<String>, task: impl Task<W> + 'static) -> Self {
        self.insert(name, Binding::Task(Box::new(task)));
        self
    }

    pub fn contains(&self, name: &str) -> bool {
        self.slots.contains_key(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.slots.keys().map(String::as_str)
    }

    /// Resets every bound task.
    pub fn reset(&mut self) {
        for slot in self.slots.values_mut() {
            slot.memo = None;
            if let Binding::Task(task) = &mut slot.binding {
                task.reset();
            }
        }
    }

    fn resolve(&mut self, name: &str, cx: &mut Ctx<'_, W>) -> Status
    where
        W: WorldView,
    {
        let epoch = self.epoch;
        let slot = self
            .slots
            .get_mut(name)
            .expect("identifiers are checked before evaluation");
        if let Some((at, status)) = slot.memo {
            if at == epoch {
                return status;
            }
        }
        let status = match &mut slot.binding {
            Binding::Value(s) => *s,
            Binding::Flag(var) => Status::from_bool(
                cx.world
                    .flag(var)
                    .expect("flag variables are checked before evaluation"),
            ),
            Binding::Task(task) => task.tick(cx),
        };
        slot.memo = Some((epoch, status));
        status
    }

    /// Fails on the first identifier that is unbound, or bound to a world
    /// flag that `world` does not declare.
    pub fn check(&self, expr: &StatusExpr, world: &W) -> Result<(), SourceError>
    where
        W: WorldView,
    {
        for id in expr.idents() {
            let pos = id.pos.unwrap_or(Pos::new(1, 1));
            match self.slots.get(&id.name) {
                None => {
                    return Err(SourceError::unbound(
                        pos,
                        format!("`{}` is not bound", id.name),
                    ))
                }
                Some(Slot {
                    binding: Binding::Flag(var),
                    ..
                }) if world.flag(var).is_none() => {
                    return Err(SourceError::unbound(
                        pos,
                        format!("`{}` reads undeclared world flag `{var}`", id.name),
                    ))
                }
                Some(_) => {}
            }
        }
        Ok(())
    }
}

/// Evaluates `expr` once, streaming trace events into `cx`.
///
/// Conjunction and disjunction skip their right operand exactly when the
/// status algebra says so; `+`, `*` and `%` evaluate both sides left to
/// right. A task referenced several times is ticked once and its status
/// reused.
pub fn tick_expr<W: WorldView>(
    expr: &StatusExpr,
    bindings: &mut Bindings<W>,
    cx: &mut Ctx<'_, W>,
) -> Result<Status, SourceError> {
    bindings.check(expr, cx.world)?;
    bindings.epoch += 1;
    Ok(eval(expr, "root", bindings, cx))
}

/// Evaluates `expr` once at `tick` and returns the status with its trace.
pub fn tick_stateless<W: WorldView>(
    expr: &StatusExpr,
    bindings: &mut Bindings<W>,
    world: &mut W,
    tick: u64,
) -> Result<(Status, Vec<TraceEvent>), SourceError> {
    let mut events = Vec::new();
    let status = tick_expr(expr, bindings, &mut Ctx::new(world, tick, &mut events))?;
    Ok((status, events))
}

fn child_paths(parent: &str, left: &StatusExpr, right: &StatusExpr) -> (String, String) {
    let (l, r) = (left.label(), right.label());
    if l == r {
        (format!("{parent}/{l}#0"), format!("{parent}/{r}#1"))
    } else {
        (format!("{parent}/{l}"), format!("{parent}/{r}"))
    }
}

fn eval<W: WorldView>(
    expr: &StatusExpr,
    path: &str,
    bindings: &mut Bindings<W>,
    cx: &mut Ctx<'_, W>,
) -> Status {
    let status = match expr {
        StatusExpr::Literal(s) => *s,
        StatusExpr::Ident(id) => bindings.resolve(&id.name, cx),
        StatusExpr::Unary(op, operand) => {
            let sub = format!("{path}/{}", operand.label());
            apply_unary(*op, eval(operand, &sub, bindings, cx))
        }
        StatusExpr::Binary(op, left, right) => {
            let (lp, rp) = child_paths(path, left, right);
            let x = eval(left, &lp, bindings, cx);
            match op {
                BinaryOp::Conj => conj(x, &mut Deferred::new(|| eval(right, &rp, bindings, cx))),
                BinaryOp::Disj => disj(x, &mut Deferred::new(|| eval(right, &rp, bindings, cx))),
                BinaryOp::Lenient => lenient(x, eval(right, &rp, bindings, cx)),
                BinaryOp::Strict => strict(x, eval(right, &rp, bindings, cx)),
                BinaryOp::Disregard => disregard(x, eval(right, &rp, bindings, cx)),
            }
        }
    };
    cx.record(path, status);
    status
}

/// Iterates children in order: the first running child makes the sequence
/// running, the first failing child makes it fail, otherwise it succeeds.
/// Later children are not ticked once the result is known.
pub fn reference_sequence<W>(children: &mut [Box<dyn Task<W>>], cx: &mut Ctx<'_, W>) -> Status {
    for child in children.iter_mut() {
        let s = child.tick(cx);
        if s.is_running() {
            return Status::RUNNING;
        } else if s.is_failing() {
            return Status::FAILING;
        }
    }
    Status::COMPLETE
}

/// Selector counterpart of [`reference_sequence`]: the first child that is
/// not failing decides the result; all failing (or none) fails.
pub fn reference_selector<W>(children: &mut [Box<dyn Task<W>>], cx: &mut Ctx<'_, W>) -> Status {
    for child in children.iter_mut() {
        let s = child.tick(cx);
        if s.is_running() {
            return Status::RUNNING;
        } else if s.is_complete() {
            return Status::COMPLETE;
        }
    }
    Status::FAILING
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Composite {
    Sequence,
    Selector,
}

impl Composite {
    /// Status that moves the cursor on to the next child.
    fn advance_on(self) -> Status {
        match self {
            Composite::Sequence => Status::COMPLETE,
            Composite::Selector => Status::FAILING,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Fresh,
    Running,
    Latched(Status),
}

type InitHook<W> = Box<dyn FnMut(&mut W)>;
type EndHook<W> = Box<dyn FnMut(&mut W, Status)>;

/// A sequence or selector that remembers its place.
///
/// Each tick runs only the child under the cursor. Once the composite has
/// succeeded or failed, it keeps returning that status without ticking any
/// child until [`reset`](StatefulNode::reset).
pub struct StatefulNode<W> {
    id: String,
    kind: Composite,
    children: Vec<(String, Box<dyn Task<W>>)>,
    cursor: usize,
    phase: Phase,
    on_init: Option<InitHook<W>>,
    on_end: Option<EndHook<W>>,
}

impl<W> StatefulNode<W> {
    pub fn new(kind: Composite, id: impl Into<String>) -> Self {
        StatefulNode {
            id: id.into(),
            kind,
            children: Vec::new(),
            cursor: 0,
            phase: Phase::Fresh,
            on_init: None,
            on_end: None,
        }
    }

    pub fn sequence(id: impl Into<String>) -> Self {
        Self::new(Composite::Sequence, id)
    }

    pub fn selector(id: impl Into<String>) -> Self {
        Self::new(Composite::Selector, id)
    }

    /// Appends a child whose trace path is `<id>/<name>`.
    pub fn child(mut self, name: &str, task: impl Task<W> + 'static) -> Self {
        self.push(name, Box::new(task));
        self
    }

    pub fn push(&mut self, name: &str, task: Box<dyn Task<W>>) {
        self.children.push((format!("{}/{}", self.id, name), task));
    }

    /// Called on the first tick after construction or reset.
    pub fn on_init(mut self, hook: impl FnMut(&mut W) + 'static) -> Self {
        self.on_init = Some(Box::new(hook));
        self
    }

    /// Called once when the node latches, with the latched status.
    pub fn on_end(mut self, hook: impl FnMut(&mut W, Status) + 'static) -> Self {
        self.on_end = Some(Box::new(hook));
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn kind(&self) -> Composite {
        self.kind
    }

    pub fn cursor(&self) -> usize {
        self.cursor
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn len(&self) -> usize {
        self.children.len()
    }

    pub fn is_empty(&self) -> bool {
        self.children.is_empty()
    }

    /// Child trace paths in order.
    pub fn child_ids(&self) -> impl Iterator<Item = &str> {
        self.children.iter().map(|(id, _)| id.as_str())
    }

    pub fn latched(&self) -> Option<Status> {
        match self.phase {
            Phase::Latched(s) => Some(s),
            _ => None,
        }
    }

    fn latch(&mut self, status: Status, world: &mut W) -> Status {
        self.phase = Phase::Latched(status);
        if let Some(hook) = &mut self.on_end {
            hook(world, status);
        }
        status
    }

    pub fn tick(&mut self, cx: &mut Ctx<'_, W>) -> Status {
        if let Phase::Latched(s) = self.phase {
            return s;
        }
        if self.phase == Phase::Fresh {
            self.phase = Phase::Running;
            if let Some(hook) = &mut self.on_init {
                hook(cx.world);
            }
        }
        let advance = self.kind.advance_on();
        let Some((path, child)) = self.children.get_mut(self.cursor) else {
            // empty composite: the identity of its operator
            return self.latch(advance, cx.world);
        };
        let status = child.tick(cx);
        cx.record(path, status);
        if status.is_running() {
            Status::RUNNING
        } else if status == advance {
            self.cursor += 1;
            if self.cursor == self.children.len() {
                self.latch(status, cx.world)
            } else {
                Status::RUNNING
            }
        } else {
            self.latch(status, cx.world)
        }
    }

    /// Back to cursor 0 and a fresh phase, recursively.
    pub fn reset(&mut self) {
        self.cursor = 0;
        self.phase = Phase::Fresh;
        for (_, child) in &mut self.children {
            child.reset();
        }
    }
}

impl<W> Task<W> for StatefulNode<W> {
    fn tick(&mut self, cx: &mut Ctx<'_, W>) -> Status {
        StatefulNode::tick(self, cx)
    }

    fn reset(&mut self) {
        StatefulNode::reset(self)
    }
}
