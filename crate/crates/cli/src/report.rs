use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
}

impl CliError {
    pub fn invalid(e: impl std::fmt::Display) -> Self {
        CliError::Invalid(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    InvalidInput,
    BudgetExhausted,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::InvalidInput => 2,
            Status::BudgetExhausted => 3,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InputHash {
    pub name: String,
    pub sha256: String,
}

impl InputHash {
    pub fn of(name: impl Into<String>, bytes: &[u8]) -> Self {
        InputHash { name: name.into(), sha256: format!("{:x}", Sha256::digest(bytes)) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub check: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: u128,
}

/// Machine-readable result of one command. Identical inputs give identical
/// bytes unless `timing` is requested.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub version: &'static str,
    pub inputs: Vec<InputHash>,
    pub parameters: BTreeMap<String, Value>,
    pub status: Status,
    pub verdicts: Vec<Verdict>,
    pub witnesses: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION"),
            inputs: Vec::new(),
            parameters: BTreeMap::new(),
            status: Status::Pass,
            verdicts: Vec::new(),
            witnesses: Vec::new(),
            error: None,
            result: Value::Null,
            timing: None,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) {
        self.parameters.insert(key.to_string(), serde_json::to_value(value).expect("parameters serialize"));
    }

    pub fn verdict(&mut self, check: impl Into<String>, passed: bool) {
        if !passed {
            self.status = Status::Fail;
        }
        self.verdicts.push(Verdict { check: check.into(), passed });
    }

    pub fn witness(&mut self, w: impl Serialize) {
        self.witnesses.push(serde_json::to_value(w).expect("witness serializes"));
    }

    pub fn fail_with(&mut self, e: &CliError) {
        self.status = match e {
            CliError::Invalid(_) => Status::InvalidInput,
            CliError::Budget(_) => Status::BudgetExhausted,
        };
        self.error = Some(e.to_string());
    }
}
