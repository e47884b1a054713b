//! Prefixed tableau calculus with loop checking.

mod arena;
mod branch;
mod engine;
mod extract;
mod rules;

use std::time::Duration;

use thiserror::Error;

use crate::semantics::{globally_satisfies, Model, SemanticsError};
use crate::syntax::{Formula, SignedFormula};
use branch::Dep;
use engine::{Frame, Prover, Stop, Terminal};

#[derive(Debug, Clone)]
pub struct ProverConfig {
    /// Bound on rule applications before giving up.
    pub max_steps: usize,
    pub timeout: Option<Duration>,
    /// Checks the closure, finiteness and single-application invariants on
    /// every insertion.
    pub check_invariants: bool,
    /// Records one line per rule application.
    pub transcript: bool,
    /// Adds the dual of a one-statement left column to the right column of
    /// every split, so the two sides of a split never overlap.
    pub semantic_branching: bool,
    /// Skips the second side of a split when the closure of the first side
    /// did not depend on it.
    pub backjumping: bool,
}

impl Default for ProverConfig {
    fn default() -> Self {
        ProverConfig {
            max_steps: 100_000,
            timeout: None,
            check_invariants: false,
            transcript: false,
            semantic_branching: true,
            backjumping: true,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Stats {
    pub steps: usize,
    pub branches: usize,
    pub closed_branches: usize,
    /// Sides of splits skipped by backjumping.
    pub pruned_branches: usize,
    pub ignorable_branches: usize,
    pub blocked_existentials: usize,
    pub fresh_nominals: usize,
    pub max_branch_statements: usize,
}

/// The star statement whose fulfilment a branch keeps postponing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IgnorableKind {
    /// `@i <a*>φ`
    Diamond,
    /// `(@i !<a*>φ)-`
    NegDiamondMinus,
    /// `(@i [a*]φ)-`
    BoxMinus,
    /// `@i ![a*]φ`
    NegBox,
}

/// How an ignorable branch was recognised.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Detection {
    /// Every occurrence of the star statement is deferred.
    Uniform,
    /// The model read off the branch does not fulfil the star statement.
    Unfulfilled,
    /// The star statement's body does not depend on the world and is
    /// refused at some nominal, so no nominal can fulfil it.
    Refused,
}

#[derive(Debug, Clone, PartialEq)]
pub enum BranchStatus {
    Closed,
    Ignorable {
        kind: IgnorableKind,
        formula: Formula,
        witness: String,
        detection: Detection,
    },
    Open,
    Unfinished,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TableauResult {
    /// Every branch closed or is ignorable.
    Proved,
    /// An open branch, with the model extracted from it.
    Refuted {
        countermodel: Model,
        open_branch: Vec<SignedFormula>,
    },
    ResourceExhausted,
}

impl TableauResult {
    pub fn is_proved(&self) -> bool {
        matches!(self, TableauResult::Proved)
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, TableauResult::Refuted { .. })
    }
}

#[derive(Debug, Clone)]
pub struct Run {
    pub result: TableauResult,
    pub stats: Stats,
    pub transcript: Vec<String>,
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum TableauError {
    #[error("extracted model fails root {0}")]
    CountermodelRejected(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

/// Decides whether the roots can be jointly satisfied: `Proved` means no
/// model makes every plain root hold and every minus root fail.
pub fn prove_roots(roots: &[SignedFormula], config: &ProverConfig) -> Result<Run, TableauError> {
    let mut prover = Prover::new(roots, config);
    let result = search(&mut prover, roots, &mut Vec::new());
    let result = match result {
        Ok(r) => r,
        Err(Stop::Exhausted) => TableauResult::ResourceExhausted,
        Err(Stop::Failed(e)) => return Err(e),
    };
    Ok(Run {
        result,
        stats: prover.stats,
        transcript: prover.transcript,
    })
}

fn search(
    prover: &mut Prover,
    roots: &[SignedFormula],
    statuses: &mut Vec<BranchStatus>,
) -> Result<TableauResult, Stop> {
    let mut current = Some(prover.initialize(roots)?);
    let mut stack: Vec<Frame> = Vec::new();
    while let Some(mut br) = current.take() {
        let mut dep = match prover.run_branch(&mut br, &mut stack)? {
            Terminal::Closed(dep) => {
                statuses.push(BranchStatus::Closed);
                if prover.backjumping() {
                    dep
                } else {
                    Dep::all(br.depth)
                }
            }
            Terminal::Ignorable(status) => {
                statuses.push(status);
                Dep::all(br.depth)
            }
            Terminal::Open(extracted) => {
                statuses.push(BranchStatus::Open);
                let mut model = extracted.model;
                for r in roots {
                    let holds = globally_satisfies(&model, r)
                        .map_err(|e| Stop::Failed(TableauError::Semantics(e)))?;
                    if !holds {
                        return Err(Stop::Failed(TableauError::CountermodelRejected(
                            r.to_string(),
                        )));
                    }
                }
                model.retain_nominals(|n| !n.starts_with(arena::FRESH_PREFIX));
                let open_branch = br.stmts.iter().map(|s| prover.signed(s)).collect();
                return Ok(TableauResult::Refuted {
                    countermodel: model,
                    open_branch,
                });
            }
        };
        // Walk back to the nearest split whose other side still matters.
        while let Some(frame) = stack.last_mut() {
            if let Some(right) = &frame.right {
                if dep.contains(frame.depth) {
                    dep.remove(frame.depth);
                    frame.left = dep;
                    current = frame.right.take();
                    break;
                }
                prover.stats.pruned_branches += 1;
                prover.note_pruned(right.id);
                stack.pop();
            } else {
                dep.remove(frame.depth);
                dep.union_with(&frame.left);
                stack.pop();
            }
        }
    }
    Ok(TableauResult::Proved)
}

/// Decides `premises |= conclusion`.
pub fn prove_consequence(
    premises: &[Formula],
    conclusion: &Formula,
    config: &ProverConfig,
) -> Result<Run, TableauError> {
    let mut roots: Vec<SignedFormula> = premises.iter().cloned().map(SignedFormula::plain).collect();
    roots.push(SignedFormula::minus(conclusion.clone()));
    prove_roots(&roots, config)
}

/// Decides validity of `f`.
pub fn prove_validity(f: &Formula, config: &ProverConfig) -> Result<Run, TableauError> {
    prove_consequence(&[], f, config)
}

/// The status of every terminal branch explored, in order. Stops at the
/// first open branch, like `prove_roots`.
pub fn branch_statuses(
    roots: &[SignedFormula],
    config: &ProverConfig,
) -> Result<Vec<BranchStatus>, TableauError> {
    let mut prover = Prover::new(roots, config);
    let mut out = Vec::new();
    match search(&mut prover, roots, &mut out) {
        Ok(_) => Ok(out),
        Err(Stop::Exhausted) => {
            out.push(BranchStatus::Unfinished);
            Ok(out)
        }
        Err(Stop::Failed(e)) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn cfg() -> ProverConfig {
        ProverConfig {
            check_invariants: true,
            transcript: true,
            ..ProverConfig::default()
        }
    }

    fn valid(s: &str) -> TableauResult {
        prove_validity(&parse_formula(s).unwrap(), &cfg()).unwrap().result
    }

    #[test]
    fn k_axiom_is_proved() {
        assert!(valid("[a](p -> q) -> ([a]p -> [a]q)").is_proved());
    }

    #[test]
    fn excluded_middle_fails() {
        assert!(valid("p | !p").is_refuted());
    }

    #[test]
    fn classical_excluded_middle_holds() {
        assert!(valid("p | ~p").is_proved());
    }

    #[test]
    fn star_induction_is_proved() {
        assert!(valid("p & [a*](p -> [a]p) -> [a*]p").is_proved());
    }

    #[test]
    fn transcript_records_rules() {
        let run = prove_validity(&parse_formula("p -> p").unwrap(), &cfg()).unwrap();
        assert!(run.result.is_proved());
        assert!(run.transcript.iter().any(|l| l.contains("(->-)")), "{:?}", run.transcript);
    }

    #[test]
    fn step_bound_is_reported() {
        let config = ProverConfig {
            max_steps: 2,
            ..ProverConfig::default()
        };
        let run = prove_validity(&parse_formula("[a*]p -> [a][a*]p").unwrap(), &config).unwrap();
        assert_eq!(run.result, TableauResult::ResourceExhausted);
    }
}
