//! The report every subcommand produces, and how failures map to exit codes.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use gorkit::frobext::FrobError;
use gorkit::gorenstein::GorensteinError;
use gorkit::io::IoError;
use gorkit::modcat::ModuleError;
use gorkit::oracle::OracleError;
use gorkit::resolve::ResolveError;

pub const SCHEMA: &str = "gorkit/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_FILE: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;
pub const EXIT_CAPPED: i32 = 5;

/// Why a command could not produce its result.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
    /// A capped or otherwise inconclusive outcome rather than an error.
    pub capped: bool,
}

impl Failure {
    pub fn precondition(msg: impl Display) -> Self {
        Failure { code: EXIT_PRECONDITION, message: msg.to_string(), capped: false }
    }
    pub fn internal(msg: impl Display) -> Self {
        Failure { code: EXIT_INTERNAL, message: msg.to_string(), capped: false }
    }
    fn capped(msg: impl Display) -> Self {
        Failure { code: EXIT_CAPPED, message: msg.to_string(), capped: true }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure { code: EXIT_FILE, message: e.to_string(), capped: false }
    }
}

impl From<ResolveError> for Failure {
    fn from(e: ResolveError) -> Self {
        match e {
            ResolveError::Truncated { .. } => Failure::capped(format!("unavailable: {e}")),
            ResolveError::Module(m) => m.into(),
            other => Failure::precondition(other),
        }
    }
}

impl From<ModuleError> for Failure {
    fn from(e: ModuleError) -> Self {
        match e {
            ModuleError::Resolve(r) => (*r).into(),
            other => Failure::precondition(other),
        }
    }
}

impl From<GorensteinError> for Failure {
    fn from(e: GorensteinError) -> Self {
        match e {
            GorensteinError::Inconsistent(_) => Failure::internal(e),
            GorensteinError::Module(m) => m.into(),
            GorensteinError::Resolve(r) => r.into(),
            other => Failure::precondition(other),
        }
    }
}

impl From<FrobError> for Failure {
    fn from(e: FrobError) -> Self {
        match e {
            FrobError::Module(m) => m.into(),
            FrobError::Gorenstein(g) => g.into(),
            other => Failure::precondition(other),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Module(m) => m.into(),
            OracleError::Resolve(r) => r.into(),
            OracleError::Gorenstein(g) => g.into(),
            OracleError::Failed(_) => Failure::internal(e),
            other => Failure::precondition(other),
        }
    }
}

/// Human-readable lines plus the same content as structured results.
#[derive(Debug, Default)]
pub struct Report {
    command: Vec<String>,
    inputs: BTreeMap<String, String>,
    lines: Vec<String>,
    results: Map<String, Value>,
    warnings: Vec<String>,
    failed_checks: bool,
    error: Option<Failure>,
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Report { command, ..Default::default() }
    }

    /// Records the SHA-256 of an input file.
    pub fn input(&mut self, path: &Path) {
        if let Ok(bytes) = std::fs::read(path) {
            let digest = Sha256::digest(&bytes);
            let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
            self.inputs.insert(path.display().to_string(), hex);
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn result(&mut self, key: &str, v: Value) {
        self.results.insert(key.to_string(), v);
    }

    /// A probabilistic or capped qualifier: exit 0, or 5 under `--strict`.
    pub fn warn(&mut self, s: impl Into<String>) {
        self.warnings.push(s.into());
    }

    /// A check that ran and failed.
    pub fn fail_check(&mut self) {
        self.failed_checks = true;
    }

    pub fn fail(&mut self, f: Failure) {
        self.error = Some(f);
    }

    pub fn exit_code(&self, strict: bool) -> i32 {
        match &self.error {
            Some(f) if f.capped => {
                if strict {
                    EXIT_CAPPED
                } else {
                    EXIT_OK
                }
            }
            Some(f) => f.code,
            None if self.failed_checks => EXIT_INTERNAL,
            None if strict && !self.warnings.is_empty() => EXIT_CAPPED,
            None => EXIT_OK,
        }
    }

    pub fn render(&self, as_json: bool, strict: bool) -> String {
        let code = self.exit_code(strict);
        if as_json {
            let mut warnings = self.warnings.clone();
            let mut out = json!({
                "schema": SCHEMA,
                "command": self.command,
                "inputs": self.inputs,
                "results": self.results,
                "exit_code": code,
            });
            if let Some(f) = &self.error {
                if f.capped {
                    warnings.push(f.message.clone());
                } else {
                    out["error"] = json!(f.message);
                }
            }
            out["warnings"] = json!(warnings);
            let mut s = serde_json::to_string_pretty(&out).expect("report serializes");
            s.push('\n');
            s
        } else {
            let mut s = String::new();
            for l in &self.lines {
                s.push_str(l);
                s.push('\n');
            }
            for w in &self.warnings {
                s.push_str(&format!("warning: {w}\n"));
            }
            if let Some(f) = &self.error {
                let tag = if f.capped { "warning" } else { "error" };
                s.push_str(&format!("{tag}: {}\n", f.message));
            }
            s
        }
    }
}
