//! Finite two-relation models, program interpretation, satisfaction, the
//! four-valued presentation and diagrams.

mod diagram;
mod eval;
mod format;
mod four;
mod model;
mod sets;

pub use diagram::{diagram, diagram_lines};
pub use eval::{
    interpret_program, satisfies, satisfies_all, truth_set, globally_satisfies, Circuit,
    Evaluator, Interpretation, ProgramDenotation, Symbols, Usage,
};
pub(crate) use eval::Op;
pub use format::{emit_model, parse_model};
pub use four::{from_four_model, to_four_model, value4, FourModel};
pub use model::{ActionRelations, Model, PropValuation};
pub use sets::{Relation, WorldSet};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("a model needs at least one world")]
    EmptyDomain,
    #[error("world `{0}` is declared twice")]
    DuplicateWorld(String),
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("unknown action `{0}`")]
    UnknownAction(String),
    #[error("unknown proposition `{0}`")]
    UnknownProposition(String),
    #[error("nominal `{0}` names no world")]
    UnknownNominal(String),
    #[error("composite program `{0}` has no four-valued reading")]
    CompositeProgram(String),
    #[error("nominal `{0}` must be true at exactly one world and false elsewhere")]
    NominalInvariant(String),
    #[error("world `{0}` is not named by any nominal")]
    UnnamedWorld(String),
    #[error("line {line}: {message}")]
    ModelFile { line: usize, message: String },
}
