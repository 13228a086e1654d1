//! The three-valued task status and its operators.
//!
//! A [`Status`] is one of failing (`F`, rank −1), running (`U`, rank 0) or
//! complete (`T`, rank +1). Sequences and selectors are the short-circuiting
//! [`conj`] and [`disj`]; parallel composition uses the eager [`lenient`],
//! [`strict`] and [`disregard`] combinators; decorators are the four
//! [`Unary`] operators.
//!
//! ```
//! use status_logic::status::{conj, disj, Deferred, Status};
//!
//! let mut tail = Deferred::new(|| Status::COMPLETE);
//! assert_eq!(conj(Status::RUNNING, &mut tail), Status::RUNNING);
//! assert_eq!(tail.forced_count(), 0);
//! assert_eq!(disj(Status::FAILING, &mut tail), Status::COMPLETE);
//! assert_eq!(tail.forced_count(), 1);
//! ```

use std::fmt;
use std::ops::{Add, Mul, Neg, Not, Rem};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// State of a task: failing, running or complete.
///
/// Ordered by rank, so `F < U < T`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Status(i8);

impl Status {
    pub const FAILING: Status = Status(-1);
    pub const RUNNING: Status = Status(0);
    pub const COMPLETE: Status = Status(1);

    /// All three values in rank order.
    pub const ALL: [Status; 3] = [Status::FAILING, Status::RUNNING, Status::COMPLETE];

    pub const fn from_rank(rank: i8) -> Option<Status> {
        match rank {
            -1..=1 => Some(Status(rank)),
            _ => None,
        }
    }

    pub const fn rank(self) -> i8 {
        self.0
    }

    pub const fn is_failing(self) -> bool {
        self.0 == -1
    }

    pub const fn is_running(self) -> bool {
        self.0 == 0
    }

    pub const fn is_complete(self) -> bool {
        self.0 == 1
    }

    /// Conditions: `true` is complete, `false` is failing.
    pub const fn from_bool(b: bool) -> Status {
        if b {
            Status::COMPLETE
        } else {
            Status::FAILING
        }
    }

    /// Canonical single-character form.
    pub const fn symbol(self) -> char {
        match self.0 {
            -1 => 'F',
            0 => 'U',
            _ => 'T',
        }
    }

    pub fn negate(self) -> Status {
        Status(-self.0)
    }

    /// Raises the rank by one step, saturating at complete.
    pub fn promote(self) -> Status {
        Status((self.0 + 1).min(1))
    }

    /// Lowers the rank by one step, saturating at failing.
    pub fn demote(self) -> Status {
        Status((self.0 - 1).max(-1))
    }

    /// Turns failure into success; running and complete pass through.
    pub fn condone(self) -> Status {
        if self.is_failing() {
            Status::COMPLETE
        } else {
            self
        }
    }

    /// Sequence step with a closure as the second operand.
    pub fn and_then(self, next: impl FnOnce() -> Status) -> Status {
        if self.is_complete() {
            next()
        } else {
            self
        }
    }

    /// Selector step with a closure as the second operand.
    pub fn or_else(self, next: impl FnOnce() -> Status) -> Status {
        if self.is_failing() {
            next()
        } else {
            self
        }
    }
}

impl From<bool> for Status {
    fn from(b: bool) -> Self {
        Status::from_bool(b)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl fmt::Debug for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a status: {0:?} (expected F, U or T)")]
pub struct ParseStatusError(pub String);

impl FromStr for Status {
    type Err = ParseStatusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "F" | "failing" => Ok(Status::FAILING),
            "U" | "running" => Ok(Status::RUNNING),
            "T" | "complete" => Ok(Status::COMPLETE),
            other => Err(ParseStatusError(other.to_string())),
        }
    }
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut buf = [0u8; 4];
        serializer.serialize_str(self.symbol().encode_utf8(&mut buf))
    }
}

impl<'de> Deserialize<'de> for Status {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A second operand that is only computed when forced.
///
/// Counts how many times it has been forced so callers can observe
/// short-circuiting.
pub struct Deferred<F> {
    compute: F,
    forced: usize,
}

impl<F: FnMut() -> Status> Deferred<F> {
    pub fn new(compute: F) -> Self {
        Deferred { compute, forced: 0 }
    }

    pub fn force(&mut self) -> Status {
        self.forced += 1;
        (self.compute)()
    }

    pub fn forced_count(&self) -> usize {
        self.forced
    }
}

/// Deferred operand that always yields `s`.
pub fn deferred(s: Status) -> Deferred<impl FnMut() -> Status> {
    Deferred::new(move || s)
}

/// Sequence (`&&`): returns `x` unless it is complete, otherwise forces `y`.
pub fn conj<F: FnMut() -> Status>(x: Status, y: &mut Deferred<F>) -> Status {
    if x.is_complete() {
        y.force()
    } else {
        x
    }
}

/// Selector (`||`): returns `x` unless it is failing, otherwise forces `y`.
pub fn disj<F: FnMut() -> Status>(x: Status, y: &mut Deferred<F>) -> Status {
    if x.is_failing() {
        y.force()
    } else {
        x
    }
}

/// Parallel-any (`+`): the higher-ranked of the two.
pub fn lenient(x: Status, y: Status) -> Status {
    match (x, y) {
        (Status::COMPLETE, _) | (_, Status::COMPLETE) => Status::COMPLETE,
        (Status::RUNNING, _) | (_, Status::RUNNING) => Status::RUNNING,
        _ => Status::FAILING,
    }
}

/// Parallel-all (`*`): the lower-ranked of the two.
pub fn strict(x: Status, y: Status) -> Status {
    match (x, y) {
        (Status::FAILING, _) | (_, Status::FAILING) => Status::FAILING,
        (Status::RUNNING, _) | (_, Status::RUNNING) => Status::RUNNING,
        _ => Status::COMPLETE,
    }
}

/// `%`: both operands ran; only the first one's status is kept.
pub fn disregard(x: Status, _y: Status) -> Status {
    x
}

/// Decorator operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Unary {
    /// `!`
    Negate,
    /// prefix `+`
    Promote,
    /// prefix `-`
    Demote,
    /// `~`
    Condone,
}

impl Unary {
    pub const ALL: [Unary; 4] = [Unary::Negate, Unary::Promote, Unary::Demote, Unary::Condone];

    pub fn symbol(self) -> &'static str {
        match self {
            Unary::Negate => "!",
            Unary::Promote => "+",
            Unary::Demote => "-",
            Unary::Condone => "~",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Unary::Negate => "not",
            Unary::Promote => "promote",
            Unary::Demote => "demote",
            Unary::Condone => "condone",
        }
    }
}

pub fn apply_unary(op: Unary, x: Status) -> Status {
    match op {
        Unary::Negate => x.negate(),
        Unary::Promote => x.promote(),
        Unary::Demote => x.demote(),
        Unary::Condone => x.condone(),
    }
}

impl Not for Status {
    type Output = Status;
    fn not(self) -> Status {
        self.negate()
    }
}

impl Neg for Status {
    type Output = Status;
    fn neg(self) -> Status {
        self.demote()
    }
}

impl Add for Status {
    type Output = Status;
    fn add(self, rhs: Status) -> Status {
        lenient(self, rhs)
    }
}

impl Mul for Status {
    type Output = Status;
    fn mul(self, rhs: Status) -> Status {
        strict(self, rhs)
    }
}

impl Rem for Status {
    type Output = Status;
    fn rem(self, rhs: Status) -> Status {
        disregard(self, rhs)
    }
}
