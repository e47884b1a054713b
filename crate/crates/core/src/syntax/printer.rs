use std::fmt;

use super::ast::{Formula, Program};

// Binding levels; higher binds tighter.
const IMPLIES: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;

const CHOICE: u8 = 1;
const SEQ: u8 = 2;
const POSTFIX: u8 = 3;

/// Renders a formula in the ASCII grammar with the minimal parentheses
/// needed to reparse to the same tree. `φ -> false` is printed as `~φ`.
pub fn render(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(&mut out, f, IMPLIES);
    out
}

pub fn render_program(p: &Program) -> String {
    let mut out = String::new();
    write_program(&mut out, p, CHOICE);
    out
}

fn level(f: &Formula) -> u8 {
    match f {
        Formula::Implies(_, rhs) if **rhs == Formula::Bottom => UNARY,
        Formula::Implies(..) => IMPLIES,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        _ => UNARY,
    }
}

fn write_formula(out: &mut String, f: &Formula, min: u8) {
    let paren = level(f) < min;
    if paren {
        out.push('(');
    }
    match f {
        Formula::Prop(p) => out.push_str(p),
        Formula::Nom(i) => {
            out.push('\'');
            out.push_str(i);
        }
        Formula::Bottom => out.push_str("false"),
        _ if f.is_top() => out.push_str("true"),
        Formula::Implies(body, rhs) if **rhs == Formula::Bottom => {
            out.push('~');
            write_formula(out, body, UNARY);
        }
        Formula::Neg(g) => {
            out.push('!');
            write_formula(out, g, UNARY);
        }
        Formula::And(a, b) => {
            write_formula(out, a, AND);
            out.push_str(" & ");
            write_formula(out, b, UNARY);
        }
        Formula::Or(a, b) => {
            write_formula(out, a, OR);
            out.push_str(" | ");
            write_formula(out, b, AND);
        }
        Formula::Implies(a, b) => {
            write_formula(out, a, OR);
            out.push_str(" -> ");
            write_formula(out, b, IMPLIES);
        }
        Formula::At(i, g) => {
            out.push_str("@'");
            out.push_str(i);
            out.push(' ');
            write_formula(out, g, UNARY);
        }
        Formula::Diamond(p, g) => {
            out.push('<');
            write_program(out, p, CHOICE);
            out.push('>');
            write_formula(out, g, UNARY);
        }
        Formula::Box(p, g) => {
            out.push('[');
            write_program(out, p, CHOICE);
            out.push(']');
            write_formula(out, g, UNARY);
        }
    }
    if paren {
        out.push(')');
    }
}

fn program_level(p: &Program) -> u8 {
    match p {
        Program::Choice(..) => CHOICE,
        Program::Seq(..) => SEQ,
        _ => POSTFIX,
    }
}

fn write_program(out: &mut String, p: &Program, min: u8) {
    let paren = program_level(p) < min;
    if paren {
        out.push('(');
    }
    match p {
        Program::Atomic(a) => out.push_str(a),
        Program::Seq(a, b) => {
            write_program(out, a, SEQ);
            out.push(';');
            write_program(out, b, POSTFIX);
        }
        Program::Choice(a, b) => {
            write_program(out, a, CHOICE);
            out.push('+');
            write_program(out, b, SEQ);
        }
        Program::Star(a) => {
            write_program(out, a, POSTFIX);
            out.push('*');
        }
        Program::Test(f) => {
            let atomic = matches!(**f, Formula::Prop(_) | Formula::Nom(_) | Formula::Bottom)
                || f.is_top();
            if atomic {
                write_formula(out, f, UNARY);
            } else {
                out.push('(');
                write_formula(out, f, IMPLIES);
                out.push(')');
            }
            out.push('?');
        }
    }
    if paren {
        out.push(')');
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_program(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    #[test]
    fn renders_examples() {
        assert_eq!(render(&Formula::Bottom), "false");
        let f = Formula::at(
            "i",
            Formula::boxed(Program::atomic("a").star(), Formula::prop("p")),
        );
        assert_eq!(render(&f), "@'i [a*]p");
        assert_eq!(render(&Formula::prop("p").not_classical()), "~p");
        assert_eq!(render(&Formula::top()), "true");
    }

    #[test]
    fn parenthesises_only_where_needed() {
        for text in [
            "p & q | r",
            "p & (q | r)",
            "(p -> q) -> r",
            "p -> q -> r",
            "!(p & q)",
            "~(p | q)",
            "~~p",
            "!~p",
            "<a;b+c>p",
            "<a;(b+c)>p",
            "[(a;b)*]p",
            "<(p & q)?;a>r",
            "<p?*>q",
            "@'i (p -> q)",
            "~p -> q",
        ] {
            let f = parse_formula(text).unwrap();
            assert_eq!(render(&f), text);
        }
    }
}
