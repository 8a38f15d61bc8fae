use std::path::Path;

use serde_json::json;
use twistcode::chartab::{compute_table_with_cap, ChartabError};
use twistcode::ctbl_io::{parse_matrep, parse_permgroup, parse_table_with, CtblError};
use twistcode::permgroup::{GroupError, DEFAULT_ENUMERATION_CAP};
use twistcode::twist::TwistError;
use twistcode::verifier::{analyse, VerifyError, DEFAULT_EXPANSION_CAP};
use twistcode::CharacterTable;

/// An error with its process exit code: 2 for size caps, 1 otherwise.
#[derive(Debug)]
pub struct CliError {
    pub kind: &'static str,
    pub message: String,
    pub code: u8,
}

impl CliError {
    pub fn new(kind: &'static str, message: impl Into<String>) -> Self {
        CliError { kind, message: message.into(), code: 1 }
    }

    fn cap(message: String) -> Self {
        CliError { kind: "cap_exceeded", message, code: 2 }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({ "error": { "kind": self.kind, "message": self.message, "exit_code": self.code } })
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::CapExceeded { .. } => CliError::cap(e.to_string()),
            _ => CliError::new("group", e.to_string()),
        }
    }
}

impl From<ChartabError> for CliError {
    fn from(e: ChartabError) -> Self {
        match e {
            ChartabError::Group(g) => g.into(),
            _ => CliError::new("table", e.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::CapExceeded { .. } => CliError::cap(e.to_string()),
            VerifyError::MultiplicityZero { .. } => CliError::new("multiplicity_zero", e.to_string()),
            _ => CliError::new("verify", e.to_string()),
        }
    }
}

impl From<CtblError> for CliError {
    fn from(e: CtblError) -> Self {
        match e {
            CtblError::Group(g) => g.into(),
            CtblError::Rep(r) => r.into(),
            _ => CliError::new("parse", e.to_string()),
        }
    }
}

impl From<TwistError> for CliError {
    fn from(e: TwistError) -> Self {
        CliError::new("twist", e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Table,
    Group,
    Rep,
}

pub fn read(path: &Path) -> Result<(Kind, String), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::new("io", format!("{}: {e}", path.display())))?;
    let header = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#')).unwrap_or("");
    let kind = match header.split_whitespace().next() {
        Some("CTBL") => Kind::Table,
        Some("PERMGROUP") => Kind::Group,
        Some("MATREP") => Kind::Rep,
        _ => {
            return Err(CliError::new(
                "parse",
                format!("{}: expected a CTBL, PERMGROUP or MATREP header", path.display()),
            ))
        }
    };
    Ok((kind, text))
}

/// A character table and, for matrix inputs, the row of the defining
/// representation.
pub struct Loaded {
    pub table: CharacterTable,
    pub f_row: Option<usize>,
}

pub fn load(path: &Path, validate: bool, cap: Option<u64>) -> Result<Loaded, CliError> {
    let (kind, text) = read(path)?;
    match kind {
        Kind::Table => Ok(Loaded { table: parse_table_with(&text, validate)?, f_row: None }),
        Kind::Group => {
            let g = parse_permgroup(&text)?;
            let table = compute_table_with_cap(&g, cap.unwrap_or(DEFAULT_ENUMERATION_CAP))?;
            Ok(Loaded { table, f_row: None })
        }
        Kind::Rep => {
            let rep = parse_matrep(&text)?;
            let cap = cap.map_or(DEFAULT_EXPANSION_CAP, |c| c as usize);
            let a = analyse(&rep, cap)?;
            Ok(Loaded { table: a.table, f_row: Some(a.f_row) })
        }
    }
}
