//! Diagrams of named models.

use super::eval::globally_satisfies;
use super::model::Model;
use super::SemanticsError;
use crate::syntax::{render, Formula, Program, SignedFormula};

/// The irreducible statements globally satisfied by a named model, sorted by
/// their rendering.
pub fn diagram(m: &Model) -> Result<Vec<Formula>, SemanticsError> {
    for w in 0..m.size() {
        if m.names_of(w).is_empty() {
            return Err(SemanticsError::UnnamedWorld(m.world_name(w).to_string()));
        }
    }
    let noms: Vec<&str> = m.naming().map(|(i, _)| i).collect();
    let mut candidates = Vec::new();
    for &i in &noms {
        for (p, _) in m.props() {
            candidates.push(Formula::at(i, Formula::prop(p)));
            candidates.push(Formula::at(i, Formula::prop(p).neg()));
        }
        for (a, _) in m.actions() {
            for &j in &noms {
                let step = Formula::diamond(Program::atomic(a), Formula::nom(j));
                candidates.push(Formula::at(i, step.clone()));
                candidates.push(Formula::at(i, step.neg()));
            }
        }
        for &j in &noms {
            candidates.push(Formula::at(i, Formula::nom(j)));
        }
    }
    let mut out = Vec::new();
    for f in candidates {
        if globally_satisfies(m, &SignedFormula::plain(f.clone()))? {
            out.push(f);
        }
    }
    out.sort_by_cached_key(render);
    Ok(out)
}

/// The diagram rendered one statement per line.
pub fn diagram_lines(m: &Model) -> Result<Vec<String>, SemanticsError> {
    Ok(diagram(m)?.iter().map(render).collect())
}
