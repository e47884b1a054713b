//! Abstract syntax, the ASCII parser and printer, and the Fischer-Ladner
//! closure.

mod ast;
mod closure;
mod parser;
mod printer;

pub use ast::{actions_of, nominals_of, Formula, Program, Signature, SignedFormula};
pub use closure::{closure_of_roots, fischer_ladner_closure};
pub use parser::{parse_formula, parse_program, SyntaxError};
pub use printer::{render, render_program};
