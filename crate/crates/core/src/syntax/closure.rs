use std::collections::HashSet;

use super::ast::{Formula, Program, SignedFormula};

/// Fischer-Ladner closure of a signed formula, computed as a worklist
/// fixpoint.
///
/// The clauses applied to every member ψ:
/// - ψ not itself a `!`-formula: `!ψ` is a member;
/// - immediate subformulas of `!`, `&`, `|`, `->`, `@`, and the body of
///   `<α>` / `[α]`;
/// - `<α;β>ψ` gives `<α><β>ψ`, `<α+β>ψ` gives `<α>ψ` and `<β>ψ`,
///   `<α*>ψ` gives `<α><α*>ψ`, `<δ?>ψ` gives `δ & ψ`, and likewise for boxes
///   (`[δ?]ψ` gives `δ -> ψ`).
///
/// A minus root contributes its body; a plain root contributes itself.
pub fn fischer_ladner_closure(root: &SignedFormula) -> HashSet<Formula> {
    let mut closure = HashSet::new();
    let mut work = vec![root.formula.clone()];
    while let Some(f) = work.pop() {
        if closure.contains(&f) {
            continue;
        }
        successors(&f, &mut work);
        closure.insert(f);
    }
    closure
}

/// Closure of a set of roots: the union of the individual closures.
pub fn closure_of_roots<'a>(roots: impl IntoIterator<Item = &'a SignedFormula>) -> HashSet<Formula> {
    let mut out = HashSet::new();
    for r in roots {
        out.extend(fischer_ladner_closure(r));
    }
    out
}

fn successors(f: &Formula, work: &mut Vec<Formula>) {
    if !matches!(f, Formula::Neg(_)) {
        work.push(f.clone().neg());
    }
    match f {
        Formula::Prop(_) | Formula::Nom(_) | Formula::Bottom => {}
        Formula::Neg(g) | Formula::At(_, g) => work.push((**g).clone()),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            work.push((**a).clone());
            work.push((**b).clone());
        }
        Formula::Diamond(p, g) => {
            work.push((**g).clone());
            unfold(p, g, true, work);
        }
        Formula::Box(p, g) => {
            work.push((**g).clone());
            unfold(p, g, false, work);
        }
    }
}

fn modal(diamond: bool, p: Program, body: Formula) -> Formula {
    if diamond {
        Formula::diamond(p, body)
    } else {
        Formula::boxed(p, body)
    }
}

fn unfold(p: &Program, body: &Formula, diamond: bool, work: &mut Vec<Formula>) {
    match p {
        Program::Atomic(_) => {}
        Program::Seq(a, b) => {
            let inner = modal(diamond, (**b).clone(), body.clone());
            work.push(modal(diamond, (**a).clone(), inner));
        }
        Program::Choice(a, b) => {
            work.push(modal(diamond, (**a).clone(), body.clone()));
            work.push(modal(diamond, (**b).clone(), body.clone()));
        }
        Program::Star(a) => {
            let again = modal(diamond, p.clone(), body.clone());
            work.push(modal(diamond, (**a).clone(), again));
        }
        Program::Test(cond) => {
            let cond = (**cond).clone();
            work.push(if diamond {
                cond.and(body.clone())
            } else {
                cond.implies(body.clone())
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn set(items: &[&str]) -> HashSet<Formula> {
        items.iter().map(|s| parse_formula(s).unwrap()).collect()
    }

    #[test]
    fn proposition_closure() {
        let cl = fischer_ladner_closure(&SignedFormula::plain(Formula::prop("p")));
        assert_eq!(cl, set(&["p", "!p"]));
    }

    // Hand-computed fixpoints.
    #[test]
    fn minus_star_box() {
        let root = SignedFormula::minus(parse_formula("[a*]p").unwrap());
        let cl = fischer_ladner_closure(&root);
        assert_eq!(
            cl,
            set(&["[a*]p", "![a*]p", "[a][a*]p", "![a][a*]p", "p", "!p"])
        );
    }

    #[test]
    fn diamond_test() {
        let root = SignedFormula::plain(parse_formula("<q?>p").unwrap());
        let cl = fischer_ladner_closure(&root);
        assert_eq!(
            cl,
            set(&["<q?>p", "!<q?>p", "q & p", "!(q & p)", "q", "!q", "p", "!p"])
        );
    }

    #[test]
    fn satisfaction_operator_is_decomposed() {
        let root = SignedFormula::plain(parse_formula("@'i !p").unwrap());
        let cl = fischer_ladner_closure(&root);
        assert_eq!(cl, set(&["@'i !p", "!@'i !p", "!p", "p"]));
    }

    #[test]
    fn choice_and_sequence() {
        let root = SignedFormula::plain(parse_formula("<a;b>p").unwrap());
        let cl = fischer_ladner_closure(&root);
        assert!(cl.contains(&parse_formula("<a><b>p").unwrap()));
        assert!(cl.contains(&parse_formula("<b>p").unwrap()));
        assert!(cl.contains(&parse_formula("!<a><b>p").unwrap()));

        let root = SignedFormula::plain(parse_formula("[a+b]p").unwrap());
        let cl = fischer_ladner_closure(&root);
        assert!(cl.contains(&parse_formula("[a]p").unwrap()));
        assert!(cl.contains(&parse_formula("[b]p").unwrap()));
        assert!(!cl.contains(&parse_formula("[a]p & [b]p").unwrap()));
    }
}
