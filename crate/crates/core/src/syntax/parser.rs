//! Recursive-descent parser for the ASCII formula grammar.
//!
//! Binding strength, tightest first: the prefix operators `!`, `~`, `@'i`,
//! `<α>` and `[α]`; then `&`; then `|`; then `->` (right-associative); then
//! `<->` (non-associative, expanded to a conjunction of implications).
//! Programs: postfix `*` and `φ ?`, then `;`, then `+`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use super::ast::{Formula, Program};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nominal(String),
    False,
    True,
    Bang,
    Tilde,
    Amp,
    Bar,
    Arrow,
    Iff,
    At,
    LAngle,
    RAngle,
    LBrack,
    RBrack,
    LParen,
    RParen,
    Semi,
    Plus,
    Star,
    Question,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(_) => "identifier",
            Tok::Nominal(_) => "nominal",
            Tok::False => "`false`",
            Tok::True => "`true`",
            Tok::Bang => "`!`",
            Tok::Tilde => "`~`",
            Tok::Amp => "`&`",
            Tok::Bar => "`|`",
            Tok::Arrow => "`->`",
            Tok::Iff => "`<->`",
            Tok::At => "`@`",
            Tok::LAngle => "`<`",
            Tok::RAngle => "`>`",
            Tok::LBrack => "`[`",
            Tok::RBrack => "`]`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::Semi => "`;`",
            Tok::Plus => "`+`",
            Tok::Star => "`*`",
            Tok::Question => "`?`",
            Tok::End => "end of input",
        };
        f.write_str(s)
    }
}

/// A syntax error: byte offset into the input and the tokens that would
/// have been accepted there.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {position}: expected one of {}", .expected.iter().cloned().collect::<Vec<_>>().join(", "))]
pub struct SyntaxError {
    pub position: usize,
    pub expected: BTreeSet<String>,
}

impl SyntaxError {
    fn new(position: usize, expected: &[&str]) -> Self {
        SyntaxError {
            position,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    /// Keeps the error that got furthest; merges expectations on a tie.
    fn furthest(self, other: SyntaxError) -> SyntaxError {
        match self.position.cmp(&other.position) {
            std::cmp::Ordering::Greater => self,
            std::cmp::Ordering::Less => other,
            std::cmp::Ordering::Equal => {
                let mut merged = self;
                merged.expected.extend(other.expected);
                merged
            }
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_lowercase()
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_'
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, SyntaxError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    let peek = |k: usize| chars.get(k).map(|&(_, c)| c);
    while k < chars.len() {
        let (pos, c) = chars[k];
        if c.is_whitespace() {
            k += 1;
            continue;
        }
        let single = match c {
            '!' => Some(Tok::Bang),
            '~' => Some(Tok::Tilde),
            '&' => Some(Tok::Amp),
            '|' => Some(Tok::Bar),
            '@' => Some(Tok::At),
            '>' => Some(Tok::RAngle),
            '[' => Some(Tok::LBrack),
            ']' => Some(Tok::RBrack),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ';' => Some(Tok::Semi),
            '+' => Some(Tok::Plus),
            '*' => Some(Tok::Star),
            '?' => Some(Tok::Question),
            _ => None,
        };
        if let Some(tok) = single {
            out.push((tok, pos));
            k += 1;
            continue;
        }
        match c {
            '-' => {
                if peek(k + 1) == Some('>') {
                    out.push((Tok::Arrow, pos));
                    k += 2;
                } else {
                    return Err(SyntaxError::new(pos + 1, &["`>`"]));
                }
            }
            '<' => {
                if peek(k + 1) == Some('-') && peek(k + 2) == Some('>') {
                    out.push((Tok::Iff, pos));
                    k += 3;
                } else {
                    out.push((Tok::LAngle, pos));
                    k += 1;
                }
            }
            '\'' => {
                let start = k + 1;
                if !peek(start).is_some_and(is_ident_start) {
                    return Err(SyntaxError::new(pos + 1, &["nominal name"]));
                }
                let mut end = start;
                while peek(end).is_some_and(is_ident_continue) {
                    end += 1;
                }
                let name: String = chars[start..end].iter().map(|&(_, c)| c).collect();
                out.push((Tok::Nominal(name), pos));
                k = end;
            }
            c if is_ident_start(c) => {
                let mut end = k;
                while peek(end).is_some_and(is_ident_continue) {
                    end += 1;
                }
                let name: String = chars[k..end].iter().map(|&(_, c)| c).collect();
                let tok = match name.as_str() {
                    "false" => Tok::False,
                    "true" => Tok::True,
                    _ => Tok::Ident(name),
                };
                out.push((tok, pos));
                k = end;
            }
            _ => {
                return Err(SyntaxError::new(
                    pos,
                    &["formula", "operator", "parenthesis"],
                ))
            }
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

type PResult<T> = Result<T, SyntaxError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(SyntaxError::new(self.offset(), &[&tok.to_string()]))
        }
    }

    fn formula(&mut self) -> PResult<Formula> {
        let lhs = self.implication()?;
        if self.eat(&Tok::Iff) {
            let rhs = self.implication()?;
            Ok(lhs.iff(rhs))
        } else {
            Ok(lhs)
        }
    }

    fn implication(&mut self) -> PResult<Formula> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.implication()?;
            Ok(lhs.implies(rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> PResult<Formula> {
        let mut acc = self.conjunction()?;
        while self.eat(&Tok::Bar) {
            let rhs = self.conjunction()?;
            acc = acc.or(rhs);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> PResult<Formula> {
        let mut acc = self.unary()?;
        while self.eat(&Tok::Amp) {
            let rhs = self.unary()?;
            acc = acc.and(rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> PResult<Formula> {
        match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Tok::Tilde => {
                self.bump();
                Ok(self.unary()?.not_classical())
            }
            Tok::At => {
                self.bump();
                match self.bump() {
                    Tok::Nominal(name) => {
                        let body = self.unary()?;
                        Ok(Formula::At(name, Box::new(body)))
                    }
                    _ => Err(SyntaxError::new(self.toks[self.pos - 1].1, &["nominal"])),
                }
            }
            Tok::LAngle => {
                self.bump();
                let prog = self.program()?;
                self.expect(Tok::RAngle)?;
                let body = self.unary()?;
                Ok(Formula::diamond(prog, body))
            }
            Tok::LBrack => {
                self.bump();
                let prog = self.program()?;
                self.expect(Tok::RBrack)?;
                let body = self.unary()?;
                Ok(Formula::boxed(prog, body))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> PResult<Formula> {
        let at = self.offset();
        match self.bump() {
            Tok::False => Ok(Formula::Bottom),
            Tok::True => Ok(Formula::top()),
            Tok::Ident(name) => Ok(Formula::Prop(name)),
            Tok::Nominal(name) => Ok(Formula::Nom(name)),
            Tok::LParen => {
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            _ => Err(SyntaxError::new(
                at,
                &[
                    "proposition",
                    "nominal",
                    "`false`",
                    "`true`",
                    "`(`",
                    "`!`",
                    "`~`",
                    "`@`",
                    "`<`",
                    "`[`",
                ],
            )),
        }
    }

    fn program(&mut self) -> PResult<Program> {
        let mut acc = self.sequence()?;
        while self.eat(&Tok::Plus) {
            let rhs = self.sequence()?;
            acc = acc.choice(rhs);
        }
        Ok(acc)
    }

    fn sequence(&mut self) -> PResult<Program> {
        let mut acc = self.postfix()?;
        while self.eat(&Tok::Semi) {
            let rhs = self.postfix()?;
            acc = acc.seq(rhs);
        }
        Ok(acc)
    }

    fn postfix(&mut self) -> PResult<Program> {
        let mut acc = self.program_atom()?;
        while self.eat(&Tok::Star) {
            acc = acc.star();
        }
        Ok(acc)
    }

    fn program_atom(&mut self) -> PResult<Program> {
        // A test `φ ?` can only be recognised after the whole formula, so
        // try that reading first and rewind if no `?` follows.
        let mark = self.pos;
        let test_err = match self.formula() {
            Ok(f) if self.eat(&Tok::Question) => return Ok(Program::test(f)),
            Ok(_) => SyntaxError::new(self.offset(), &["`?`"]),
            Err(e) => e,
        };
        self.pos = mark;
        let at = self.offset();
        let direct = match self.bump() {
            Tok::Ident(name) => Ok(Program::Atomic(name)),
            Tok::LParen => self.program().and_then(|p| {
                self.expect(Tok::RParen)?;
                Ok(p)
            }),
            _ => Err(SyntaxError::new(at, &["action", "`(`", "test"])),
        };
        direct.map_err(|e| e.furthest(test_err))
    }
}

/// Parses a complete formula.
pub fn parse_formula(text: &str) -> Result<Formula, SyntaxError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let f = p.formula()?;
    if *p.peek() != Tok::End {
        let mut expected = vec!["end of input", "`&`", "`|`", "`->`"];
        if !matches!(f, Formula::And(..)) {
            expected.push("`<->`");
        }
        return Err(SyntaxError::new(p.offset(), &expected));
    }
    Ok(f)
}

/// Parses a complete program.
pub fn parse_program(text: &str) -> Result<Program, SyntaxError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let prog = p.program()?;
    if *p.peek() != Tok::End {
        return Err(SyntaxError::new(
            p.offset(),
            &["end of input", "`;`", "`+`", "`*`"],
        ));
    }
    Ok(prog)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        Formula::prop(s)
    }

    #[test]
    fn at_diamond_nominal() {
        let f = parse_formula("@'i <a>'j").unwrap();
        assert_eq!(
            f,
            Formula::at("i", Formula::diamond(Program::atomic("a"), Formula::nom("j")))
        );
    }

    #[test]
    fn negated_sequence_diamond() {
        let f = parse_formula("!<a;b>(!p & q)").unwrap();
        let prog = Program::atomic("a").seq(Program::atomic("b"));
        assert_eq!(f, Formula::diamond(prog, p("p").neg().and(p("q"))).neg());
    }

    #[test]
    fn tilde_is_implication_to_bottom() {
        assert_eq!(
            parse_formula("~p").unwrap(),
            Formula::Implies(Box::new(p("p")), Box::new(Formula::Bottom))
        );
        assert_eq!(parse_formula("true").unwrap(), Formula::top());
    }

    #[test]
    fn precedence_and_associativity() {
        let f = parse_formula("p & q | r -> s -> t").unwrap();
        let expected = p("p")
            .and(p("q"))
            .or(p("r"))
            .implies(p("s").implies(p("t")));
        assert_eq!(f, expected);
        assert_eq!(
            parse_formula("!p & q").unwrap(),
            p("p").neg().and(p("q"))
        );
        assert_eq!(
            parse_formula("a & b & c").unwrap(),
            p("a").and(p("b")).and(p("c"))
        );
    }

    #[test]
    fn iff_expands() {
        assert_eq!(
            parse_formula("p <-> q").unwrap(),
            p("p").implies(p("q")).and(p("q").implies(p("p")))
        );
    }

    #[test]
    fn programs_and_tests() {
        let f = parse_formula("[(a;p?)* + b]q").unwrap();
        let prog = Program::atomic("a")
            .seq(Program::test(p("p")))
            .star()
            .choice(Program::atomic("b"));
        assert_eq!(f, Formula::boxed(prog, p("q")));

        let f = parse_formula("<(p & q)?>r").unwrap();
        assert_eq!(
            f,
            Formula::diamond(Program::test(p("p").and(p("q"))), p("r"))
        );

        let f = parse_formula("<<a>p?>q").unwrap();
        let inner = Formula::diamond(Program::atomic("a"), p("p"));
        assert_eq!(f, Formula::diamond(Program::test(inner), p("q")));

        assert_eq!(
            parse_program("a;b;c").unwrap(),
            Program::atomic("a")
                .seq(Program::atomic("b"))
                .seq(Program::atomic("c"))
        );
        assert_eq!(
            parse_program("a**").unwrap(),
            Program::atomic("a").star().star()
        );
    }

    #[test]
    fn errors_carry_position_and_expectations() {
        let err = parse_formula("p & ").unwrap_err();
        assert_eq!(err.position, 4);
        assert!(err.expected.contains("proposition"));

        let err = parse_formula("(p | q").unwrap_err();
        assert_eq!(err.position, 6);
        assert!(err.expected.contains("`)`"));

        let err = parse_formula("<a p").unwrap_err();
        assert!(err.expected.contains("`>`"));

        let err = parse_formula("@i p").unwrap_err();
        assert_eq!(err.position, 1);

        assert!(parse_formula("P").is_err());
        assert!(parse_formula("p q").is_err());
        assert!(parse_formula("").is_err());
        assert!(parse_formula("p - q").is_err());
    }
}
