//! Formula input: command-line formulas and assertion files.

use std::fmt;
use std::fs;
use std::path::Path;

use fourdl::semantics::{parse_model, Model};
use fourdl::syntax::{parse_formula, Formula, SignedFormula};

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Assert,
    Query,
    Deny,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Assert => "assert",
            Role::Query => "query",
            Role::Deny => "deny",
        })
    }
}

#[derive(Debug, Clone)]
pub struct Item {
    pub role: Role,
    pub formula: Formula,
}

impl Item {
    /// Assertions are plain roots; queries and denials are minus roots.
    pub fn root(&self) -> SignedFormula {
        match self.role {
            Role::Assert => SignedFormula::plain(self.formula.clone()),
            Role::Query | Role::Deny => SignedFormula::minus(self.formula.clone()),
        }
    }
}

pub fn formula(text: &str, what: &str) -> Result<Formula, Failure> {
    parse_formula(text).map_err(|e| Failure::Input(format!("{what} `{text}`: {e}")))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::File(format!("{}: {e}", path.display())))
}

pub fn model(path: &Path) -> Result<Model, Failure> {
    parse_model(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Parses `assert:`, `query:` and `deny:` lines; `#` starts a comment.
pub fn assertion_file(path: &Path) -> Result<Vec<Item>, Failure> {
    let text = read(path)?;
    let mut items = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let where_ = format!("{}:{}", path.display(), idx + 1);
        let (key, body) = line
            .split_once(':')
            .ok_or_else(|| Failure::Input(format!("{where_}: expected `assert:`, `query:` or `deny:`")))?;
        let role = match key.trim() {
            "assert" => Role::Assert,
            "query" => Role::Query,
            "deny" => Role::Deny,
            other => return Err(Failure::Input(format!("{where_}: unknown line kind `{other}`"))),
        };
        items.push(Item {
            role,
            formula: formula(body.trim(), &where_)?,
        });
    }
    Ok(items)
}

/// Collects the items of an invocation: the file first, then `--assume`
/// and `--formula`.
pub fn items(file: Option<&Path>, assume: &[String], query: Option<&str>) -> Result<Vec<Item>, Failure> {
    let mut items = match file {
        Some(path) => assertion_file(path)?,
        None => Vec::new(),
    };
    for a in assume {
        items.push(Item {
            role: Role::Assert,
            formula: formula(a, "assumption")?,
        });
    }
    if let Some(q) = query {
        items.push(Item {
            role: Role::Query,
            formula: formula(q, "formula")?,
        });
    }
    Ok(items)
}

/// A consequence problem needs exactly one query.
pub fn problem(items: &[Item]) -> Result<(), Failure> {
    match items.iter().filter(|i| i.role == Role::Query).count() {
        1 => Ok(()),
        0 => Err(Failure::Usage("a query is required: use --formula or a `query:` line".into())),
        n => Err(Failure::Usage(format!("exactly one query is allowed, found {n}"))),
    }
}
