//! The destructive rules, indexed by the shape of their single premise.

use super::arena::{Arena, FId, NomId, Node, PId, PNode, Sym};

/// A satisfaction statement `@_i φ` or its minus-form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Stmt {
    pub nom: NomId,
    pub body: FId,
    pub minus: bool,
}

impl Stmt {
    pub fn plain(nom: NomId, body: FId) -> Self {
        Stmt {
            nom,
            body,
            minus: false,
        }
    }

    pub fn minus(nom: NomId, body: FId) -> Self {
        Stmt {
            nom,
            body,
            minus: true,
        }
    }

    pub fn with(nom: NomId, body: FId, minus: bool) -> Self {
        Stmt { nom, body, minus }
    }
}

/// How the new nominal `t` of an existential rule is linked to the premise
/// nominal: `<a>t` or `![a]!t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Existential {
    pub action: Sym,
    pub negative: bool,
    pub body: FId,
    pub minus: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Expansion {
    Linear(Vec<Stmt>),
    Split(Vec<Stmt>, Vec<Stmt>),
    Existential(Existential),
}

/// `(a, negative, j)` for the relational literals `<a>j` and `![a]!j`.
pub(crate) fn relational_literal(arena: &Arena, body: FId) -> Option<(Sym, bool, NomId)> {
    match arena.node(body) {
        Node::Dia(p, g) => match (arena.prog(p), arena.node(g)) {
            (PNode::Atom(a), Node::Nom(j)) => Some((a, false, j)),
            _ => None,
        },
        Node::Neg(x) => match arena.node(x) {
            Node::Box(p, g) => match (arena.prog(p), arena.node(g)) {
                (PNode::Atom(a), Node::Neg(y)) => match arena.node(y) {
                    Node::Nom(j) => Some((a, true, j)),
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        },
        _ => None,
    }
}

/// Literals: `p`, `!p`, `j`, `!j`, `<a>j`, `![a]!j`.
pub(crate) fn is_literal(arena: &Arena, body: FId) -> bool {
    match arena.node(body) {
        Node::Prop(_) | Node::Nom(_) => true,
        Node::Neg(x) => {
            matches!(arena.node(x), Node::Prop(_) | Node::Nom(_))
                || relational_literal(arena, body).is_some()
        }
        _ => relational_literal(arena, body).is_some(),
    }
}

fn atomic(arena: &Arena, p: PId) -> Option<Sym> {
    match arena.prog(p) {
        PNode::Atom(a) => Some(a),
        _ => None,
    }
}

/// The destructive rule for `s`, if any, with its name.
pub(crate) fn destructive(arena: &mut Arena, s: Stmt) -> Option<(String, Expansion)> {
    let i = s.nom;
    let plain = |f| Stmt::plain(i, f);
    let minus = |f| Stmt::minus(i, f);
    let linear = |name: &str, v| Some((name.to_string(), Expansion::Linear(v)));
    let split = |name: &str, l, r| Some((name.to_string(), Expansion::Split(l, r)));
    let existential = |name: &str, action, negative, body, minus| {
        Some((
            name.to_string(),
            Expansion::Existential(Existential {
                action,
                negative,
                body,
                minus,
            }),
        ))
    };
    match (arena.node(s.body), s.minus) {
        (Node::Prop(_) | Node::Bot, _) | (Node::Nom(_), false) => None,
        (Node::Nom(_), true) => {
            let n = arena.neg(s.body);
            linear("Id-", vec![plain(n)])
        }
        (Node::And(a, b), false) => linear("and", vec![plain(a), plain(b)]),
        (Node::And(a, b), true) => split("and-", vec![minus(a)], vec![minus(b)]),
        (Node::Or(a, b), false) => split("or", vec![plain(a)], vec![plain(b)]),
        (Node::Or(a, b), true) => linear("or-", vec![minus(a), minus(b)]),
        (Node::Imp(a, b), false) => split("->", vec![minus(a)], vec![plain(b)]),
        (Node::Imp(a, b), true) => linear("->-", vec![plain(a), minus(b)]),
        (Node::At(j, g), m) => linear(if m { "@E-" } else { "@E" }, vec![Stmt::with(j, g, m)]),
        (Node::Dia(p, g), m) => match atomic(arena, p) {
            Some(a) if !m => {
                if matches!(arena.node(g), Node::Nom(_)) {
                    None
                } else {
                    existential("<a>", a, false, g, false)
                }
            }
            Some(_) => None,
            None => composite(arena, i, p, g, true, false, m),
        },
        (Node::Box(p, g), m) => match atomic(arena, p) {
            Some(a) if m => existential("[a]-", a, false, g, true),
            Some(_) => None,
            None => composite(arena, i, p, g, false, false, m),
        },
        (Node::Neg(x), m) => match arena.node(x) {
            Node::Prop(_) | Node::Bot => None,
            Node::Nom(_) if m => {
                let n = arena.neg(s.body);
                linear("Id-", vec![plain(n)])
            }
            Node::Nom(_) => None,
            Node::Neg(y) => linear(if m { "!!-" } else { "!!" }, vec![Stmt::with(i, y, m)]),
            Node::And(a, b) => {
                let (na, nb) = (arena.neg(a), arena.neg(b));
                if m {
                    linear("!and-", vec![minus(na), minus(nb)])
                } else {
                    split("!and", vec![plain(na)], vec![plain(nb)])
                }
            }
            Node::Or(a, b) => {
                let (na, nb) = (arena.neg(a), arena.neg(b));
                if m {
                    split("!or-", vec![minus(na)], vec![minus(nb)])
                } else {
                    linear("!or", vec![plain(na), plain(nb)])
                }
            }
            Node::Imp(a, b) => {
                let (na, nb) = (arena.neg(a), arena.neg(b));
                if m {
                    split("!->-", vec![plain(na)], vec![minus(nb)])
                } else {
                    linear("!->", vec![minus(na), plain(nb)])
                }
            }
            Node::At(j, g) => {
                let ng = arena.neg(g);
                linear(if m { "!@-" } else { "!@" }, vec![Stmt::with(j, ng, m)])
            }
            Node::Dia(p, g) => match atomic(arena, p) {
                Some(a) if m => {
                    let ng = arena.neg(g);
                    existential("!<a>-", a, true, ng, true)
                }
                Some(_) => None,
                None => composite(arena, i, p, g, true, true, m),
            },
            Node::Box(p, g) => match atomic(arena, p) {
                Some(a) if !m => {
                    let is_neg_nominal = matches!(
                        arena.node(g),
                        Node::Neg(y) if matches!(arena.node(y), Node::Nom(_))
                    );
                    if is_neg_nominal {
                        None
                    } else {
                        let ng = arena.neg(g);
                        existential("![a]", a, true, ng, false)
                    }
                }
                Some(_) => None,
                None => composite(arena, i, p, g, false, true, m),
            },
        },
    }
}

/// Rules for modalities over composite programs. `diamond` selects `<α>`
/// over `[α]`, `neg` a `!` in front of the modality, `m` the minus marker.
fn composite(
    arena: &mut Arena,
    i: NomId,
    p: PId,
    g: FId,
    diamond: bool,
    neg: bool,
    m: bool,
) -> Option<(String, Expansion)> {
    let modal = |arena: &mut Arena, p: PId, g: FId| {
        if diamond {
            arena.mk(Node::Dia(p, g))
        } else {
            arena.mk(Node::Box(p, g))
        }
    };
    let wrap = |arena: &mut Arena, f: FId| if neg { arena.neg(f) } else { f };
    let (open, close) = if diamond { ("<", ">") } else { ("[", "]") };
    let name = |core: &str| {
        format!(
            "{}{open}{core}{close}{}",
            if neg { "!" } else { "" },
            if m { "-" } else { "" }
        )
    };
    let single = |arena: &mut Arena, core: &str, f: FId| {
        let f = wrap(arena, f);
        Some((name(core), Expansion::Linear(vec![Stmt::with(i, f, m)])))
    };
    match arena.prog(p) {
        PNode::Atom(_) => unreachable!("atomic programs have their own rules"),
        PNode::Seq(a, b) => {
            let inner = modal(arena, b, g);
            let f = modal(arena, a, inner);
            single(arena, ";", f)
        }
        PNode::Choice(a, b) => {
            let (fa, fb) = (modal(arena, a, g), modal(arena, b, g));
            let f = if diamond {
                arena.mk(Node::Or(fa, fb))
            } else {
                arena.mk(Node::And(fa, fb))
            };
            single(arena, "+", f)
        }
        PNode::Test(t) => {
            let f = if diamond {
                arena.mk(Node::And(t, g))
            } else {
                arena.mk(Node::Imp(t, g))
            };
            single(arena, "?", f)
        }
        PNode::Star(a) => {
            let inner = modal(arena, p, g);
            let unfold = modal(arena, a, inner);
            let (g, unfold) = (wrap(arena, g), wrap(arena, unfold));
            let here = |minus| Stmt::with(i, g, minus);
            let later = |minus| Stmt::with(i, unfold, minus);
            let expansion = match (diamond, neg, m) {
                // Conjunctive readings: both parts hold (or both fail).
                (false, false, false) | (false, true, true) | (true, true, false)
                | (true, false, true) => Expansion::Linear(vec![here(m), later(m)]),
                // Disjunctive readings: fulfil here, or defer with the dual here.
                _ => Expansion::Split(vec![here(m)], vec![here(!m), later(m)]),
            };
            Some((name("*"), expansion))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn stmt(arena: &mut Arena, text: &str, minus: bool) -> Stmt {
        let f = arena.intern(&parse_formula(text).unwrap());
        let i = arena.nominal("i");
        Stmt::with(i, f, minus)
    }

    fn render(arena: &Arena, s: &Stmt) -> String {
        let f = crate::syntax::Formula::at(arena.nominal_name(s.nom), arena.formula(s.body));
        if s.minus {
            format!("({f})-")
        } else {
            f.to_string()
        }
    }

    fn expand(text: &str, minus: bool) -> (String, Vec<Vec<String>>) {
        let mut arena = Arena::default();
        let s = stmt(&mut arena, text, minus);
        let (name, e) = destructive(&mut arena, s).expect("a destructive rule");
        let cols = match e {
            Expansion::Linear(v) => vec![v],
            Expansion::Split(l, r) => vec![l, r],
            Expansion::Existential(_) => vec![],
        };
        let cols = cols
            .iter()
            .map(|c| c.iter().map(|s| render(&arena, s)).collect())
            .collect();
        (name, cols)
    }

    #[test]
    fn conjunction_and_disjunction() {
        assert_eq!(
            expand("p & q", false),
            ("and".into(), vec![vec!["@'i p".into(), "@'i q".into()]])
        );
        assert_eq!(
            expand("p | q", false),
            ("or".into(), vec![vec!["@'i p".into()], vec!["@'i q".into()]])
        );
        assert_eq!(
            expand("!(p | q)", true),
            (
                "!or-".into(),
                vec![vec!["(@'i !p)-".into()], vec!["(@'i !q)-".into()]]
            )
        );
    }

    #[test]
    fn star_rules_split_with_the_dual() {
        assert_eq!(
            expand("<a*>p", false),
            (
                "<*>".into(),
                vec![
                    vec!["@'i p".into()],
                    vec!["(@'i p)-".into(), "@'i <a><a*>p".into()]
                ]
            )
        );
        assert_eq!(
            expand("!<a*>p", false),
            (
                "!<*>".into(),
                vec![vec!["@'i !p".into(), "@'i !<a><a*>p".into()]]
            )
        );
        assert_eq!(
            expand("[a*]p", true),
            (
                "[*]-".into(),
                vec![
                    vec!["(@'i p)-".into()],
                    vec!["@'i p".into(), "(@'i [a][a*]p)-".into()]
                ]
            )
        );
        assert_eq!(
            expand("![a*]p", true),
            (
                "![*]-".into(),
                vec![vec!["(@'i !p)-".into(), "(@'i ![a][a*]p)-".into()]]
            )
        );
    }

    #[test]
    fn composite_rules_carry_both_markers() {
        assert_eq!(
            expand("![a;b]p", true),
            ("![;]-".into(), vec![vec!["(@'i ![a][b]p)-".into()]])
        );
        assert_eq!(
            expand("<a+b>p", false),
            ("<+>".into(), vec![vec!["@'i (<a>p | <b>p)".into()]])
        );
        assert_eq!(
            expand("[q?]p", false),
            ("[?]".into(), vec![vec!["@'i (q -> p)".into()]])
        );
    }

    #[test]
    fn identity_minus() {
        assert_eq!(
            expand("'j", true),
            ("Id-".into(), vec![vec!["@'i !'j".into()]])
        );
        assert_eq!(
            expand("!'j", true),
            ("Id-".into(), vec![vec!["@'i !!'j".into()]])
        );
    }

    #[test]
    fn literals_have_no_destructive_rule() {
        let mut arena = Arena::default();
        for text in ["p", "!p", "'j", "!'j", "<a>'j", "![a]!'j", "[a]p", "!<a>p"] {
            let s = stmt(&mut arena, text, false);
            assert!(destructive(&mut arena, s).is_none(), "{text}");
        }
        for text in ["<a>'j", "![a]!'j"] {
            let f = arena.intern(&parse_formula(text).unwrap());
            assert!(relational_literal(&arena, f).is_some());
            assert!(is_literal(&arena, f));
        }
    }

    #[test]
    fn existential_rules() {
        let mut arena = Arena::default();
        for (text, minus, negative) in [
            ("<a>p", false, false),
            ("![a]p", false, true),
            ("[a]p", true, false),
            ("!<a>p", true, true),
        ] {
            let s = stmt(&mut arena, text, minus);
            match destructive(&mut arena, s) {
                Some((_, Expansion::Existential(e))) => {
                    assert_eq!(e.negative, negative, "{text}");
                    assert_eq!(e.minus, minus, "{text}");
                }
                other => panic!("{text}: {other:?}"),
            }
        }
    }
}
