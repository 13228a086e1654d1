use std::collections::BTreeMap;
use std::fmt;

use crate::engine::WorldView;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WorldError {
    #[error("undeclared world variable `{0}`")]
    Undeclared(String),
    #[error("world variable `{name}` is not a {expected}")]
    WrongType {
        name: String,
        expected: &'static str,
    },
    #[error("{value} is outside {min}..={max} for `{name}`")]
    OutOfRange {
        name: String,
        value: i64,
        min: i64,
        max: i64,
    },
    #[error("`{value}` is not one of {choices:?} for `{name}`")]
    UnknownLabel {
        name: String,
        value: String,
        choices: &'static [&'static str],
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Value {
    Bool(bool),
    Int {
        value: i64,
        min: i64,
        max: i64,
    },
    Label {
        value: &'static str,
        choices: &'static [&'static str],
    },
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Bool(b) => write!(f, "{b}"),
            Value::Int { value, .. } => write!(f, "{value}"),
            Value::Label { value, .. } => f.write_str(value),
        }
    }
}

/// Named variables plus the current tick.
///
/// Every variable is declared up front with its type (and range or label
/// set); reading or writing anything else is an error.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct World {
    vars: BTreeMap<String, Value>,
    pub tick: u64,
}

impl World {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_bool(mut self, name: &str, value: bool) -> Self {
        self.vars.insert(name.to_string(), Value::Bool(value));
        self
    }

    pub fn with_int(mut self, name: &str, value: i64, min: i64, max: i64) -> Self {
        assert!(
            min <= value && value <= max,
            "{name}={value} outside {min}..={max}"
        );
        self.vars
            .insert(name.to_string(), Value::Int { value, min, max });
        self
    }

    pub fn with_label(
        mut self,
        name: &str,
        value: &'static str,
        choices: &'static [&'static str],
    ) -> Self {
        assert!(
            choices.contains(&value),
            "{name}={value} not in {choices:?}"
        );
        self.vars
            .insert(name.to_string(), Value::Label { value, choices });
        self
    }

    pub fn get(&self, name: &str) -> Result<&Value, WorldError> {
        self.vars
            .get(name)
            .ok_or_else(|| WorldError::Undeclared(name.to_string()))
    }

    fn get_mut(&mut self, name: &str) -> Result<&mut Value, WorldError> {
        self.vars
            .get_mut(name)
            .ok_or_else(|| WorldError::Undeclared(name.to_string()))
    }

    fn wrong_type(name: &str, expected: &'static str) -> WorldError {
        WorldError::WrongType {
            name: name.to_string(),
            expected,
        }
    }

    pub fn get_bool(&self, name: &str) -> Result<bool, WorldError> {
        match self.get(name)? {
            Value::Bool(b) => Ok(*b),
            _ => Err(Self::wrong_type(name, "bool")),
        }
    }

    pub fn get_int(&self, name: &str) -> Result<i64, WorldError> {
        match self.get(name)? {
            Value::Int { value, .. } => Ok(*value),
            _ => Err(Self::wrong_type(name, "bounded integer")),
        }
    }

    pub fn get_label(&self, name: &str) -> Result<&'static str, WorldError> {
        match self.get(name)? {
            Value::Label { value, .. } => Ok(value),
            _ => Err(Self::wrong_type(name, "label")),
        }
    }

    pub fn set_bool(&mut self, name: &str, v: bool) -> Result<(), WorldError> {
        match self.get_mut(name)? {
            Value::Bool(b) => {
                *b = v;
                Ok(())
            }
            _ => Err(Self::wrong_type(name, "bool")),
        }
    }

    pub fn set_int(&mut self, name: &str, v: i64) -> Result<(), WorldError> {
        match self.get_mut(name)? {
            Value::Int { value, min, max } => {
                if v < *min || v > *max {
                    return Err(WorldError::OutOfRange {
                        name: name.to_string(),
                        value: v,
                        min: *min,
                        max: *max,
                    });
                }
                *value = v;
                Ok(())
            }
            _ => Err(Self::wrong_type(name, "bounded integer")),
        }
    }

    pub fn set_label(&mut self, name: &str, v: &str) -> Result<(), WorldError> {
        match self.get_mut(name)? {
            Value::Label { value, choices } => match choices.iter().find(|c| **c == v) {
                Some(c) => {
                    *value = c;
                    Ok(())
                }
                None => Err(WorldError::UnknownLabel {
                    name: name.to_string(),
                    value: v.to_string(),
                    choices,
                }),
            },
            _ => Err(Self::wrong_type(name, "label")),
        }
    }

    // Scenario code declares its variables once and then reads them by
    // name; a failure here is a bug in the scenario itself.

    pub fn flag(&self, name: &str) -> bool {
        self.get_bool(name).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn int(&self, name: &str) -> i64 {
        self.get_int(name).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn label(&self, name: &str) -> &'static str {
        self.get_label(name).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn put_flag(&mut self, name: &str, v: bool) {
        self.set_bool(name, v).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn put_int(&mut self, name: &str, v: i64) {
        self.set_int(name, v).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn put_label(&mut self, name: &str, v: &str) {
        self.set_label(name, v).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn vars(&self) -> &BTreeMap<String, Value> {
        &self.vars
    }

    /// `name=value` lines sorted by name.
    pub fn snapshot(&self) -> String {
        let mut out = String::new();
        for (name, value) in &self.vars {
            out.push_str(name);
            out.push('=');
            out.push_str(&value.to_string());
            out.push('\n');
        }
        out
    }
}

impl WorldView for World {
    fn flag(&self, name: &str) -> Option<bool> {
        self.get_bool(name).ok()
    }
}
