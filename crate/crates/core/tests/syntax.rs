mod common;

use proptest::prelude::*;

use fourdl::syntax::{fischer_ladner_closure, parse_formula, parse_program, render, Formula, SignedFormula};

#[test]
fn ascii_forms_of_the_connectives() {
    let f = parse_formula("@'i [a;b*](p -> ~q) & <(p?)+c>!'j").unwrap();
    assert_eq!(render(&f), "@'i [a;b*](p -> ~q) & <p?+c>!'j");
    assert_eq!(parse_formula("true").unwrap(), Formula::top());
    assert_eq!(parse_formula("~p").unwrap(), Formula::prop("p").implies(Formula::Bottom));
    assert_eq!(
        parse_formula("p <-> q").unwrap(),
        Formula::prop("p").iff(Formula::prop("q"))
    );
    assert!(parse_program("(a+b)*;p?").is_ok());
}

#[test]
fn rejects_malformed_input() {
    for bad in ["", "p &", "[a p", "@i p", "<a>", "p q", "'I", "[a*]"] {
        assert!(parse_formula(bad).is_err(), "{bad}");
    }
}

proptest! {
    #[test]
    fn printing_then_parsing_is_identity(f in common::dynamic_formula()) {
        let text = render(&f);
        prop_assert_eq!(parse_formula(&text).unwrap(), f, "{}", text);
    }

    #[test]
    fn closure_contains_the_root_and_is_finite(f in common::dynamic_formula()) {
        let cl = fischer_ladner_closure(&SignedFormula::plain(f.clone()));
        prop_assert!(cl.contains(&f));
        let size = render(&f).len();
        prop_assert!(cl.len() <= 4 * size * size + 8);
    }

    #[test]
    fn closure_is_closed_under_boolean_parts(f in common::hybrid_formula()) {
        let cl = fischer_ladner_closure(&SignedFormula::plain(f));
        for g in &cl {
            match g {
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                    prop_assert!(cl.contains(a) && cl.contains(b), "{}", render(g));
                }
                Formula::At(_, a) | Formula::Diamond(_, a) | Formula::Box(_, a) => {
                    prop_assert!(cl.contains(a), "{}", render(g));
                }
                _ => {}
            }
        }
    }
}
