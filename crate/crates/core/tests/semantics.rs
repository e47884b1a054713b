mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fourdl::fourval::designated;
use fourdl::random::{random_model, small_signature};
use fourdl::selftest::{lemma2_schemes, EXAMPLE1_DIAGRAM, EXAMPLE1_MODEL};
use fourdl::semantics::{
    diagram, diagram_lines, emit_model, from_four_model, globally_satisfies, parse_model, satisfies,
    to_four_model, truth_set, value4, Model,
};
use fourdl::syntax::{parse_formula, Formula, SignedFormula};

fn model(seed: u64, n: usize) -> Model {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_model(&mut rng, n, &small_signature(2, 2, 2))
}

fn f(s: &str) -> Formula {
    parse_formula(s).unwrap()
}

#[test]
fn example_1_diagram_has_thirteen_statements() {
    let m = parse_model(EXAMPLE1_MODEL).unwrap();
    assert_eq!(m.size(), 5);
    assert_eq!(diagram_lines(&m).unwrap(), EXAMPLE1_DIAGRAM);
    for d in diagram(&m).unwrap() {
        assert!(globally_satisfies(&m, &SignedFormula::plain(d)).unwrap());
    }
}

#[test]
fn example_1_excludes_absent_information() {
    let m = parse_model(EXAMPLE1_MODEL).unwrap();
    for absent in ["@'i <a>'k", "@'l !<a>'k", "@'k q", "@'j !p", "@'i 'j"] {
        assert!(!globally_satisfies(&m, &SignedFormula::plain(f(absent))).unwrap(), "{absent}");
    }
}

#[test]
fn diagram_requires_a_named_model() {
    let mut m = parse_model(EXAMPLE1_MODEL).unwrap();
    m.unname("m");
    assert!(diagram(&m).is_err());
}

#[test]
fn positive_and_negative_modalities_read_different_relations() {
    let m = parse_model(EXAMPLE1_MODEL).unwrap();
    let w1 = m.world_index("w1").unwrap();
    assert!(satisfies(&m, w1, &f("<a>p")).unwrap());
    assert!(!satisfies(&m, w1, &f("!<a>p")).unwrap());
    assert!(satisfies(&m, w1, &f("!<a>'j")).unwrap());
    assert!(!satisfies(&m, w1, &f("!<a>'i")).unwrap());
}

proptest! {
    #[test]
    fn two_relation_and_four_valued_semantics_agree(
        seed in any::<u64>(),
        n in 1usize..=4,
        phi in common::hybrid_formula(),
    ) {
        let m = model(seed, n);
        let fm = to_four_model(&m);
        for w in 0..n {
            prop_assert_eq!(
                satisfies(&m, w, &phi).unwrap(),
                designated(value4(&fm, w, &phi).unwrap())
            );
        }
    }

    #[test]
    fn four_valued_presentation_round_trips(seed in any::<u64>(), n in 1usize..=4) {
        let m = model(seed, n);
        prop_assert_eq!(from_four_model(&to_four_model(&m)).unwrap(), m);
    }

    #[test]
    fn model_files_round_trip(seed in any::<u64>(), n in 1usize..=5) {
        let m = model(seed, n);
        let text = emit_model(&m);
        let back = parse_model(&text).unwrap();
        prop_assert_eq!(emit_model(&back), text);
        prop_assert_eq!(back, m);
    }

    #[test]
    fn dynamic_schemes_hold_in_both_polarities(
        seed in any::<u64>(),
        n in 1usize..=4,
        a in common::program_over(common::atom().boxed()),
        b in common::program_over(common::atom().boxed()),
        phi in common::hybrid_formula(),
        psi in common::hybrid_formula(),
    ) {
        let m = model(seed, n);
        for (name, lhs, rhs) in lemma2_schemes(&a, &b, &phi, &psi) {
            prop_assert_eq!(truth_set(&m, &lhs).unwrap(), truth_set(&m, &rhs).unwrap(), "{}", name);
            prop_assert_eq!(
                truth_set(&m, &lhs.clone().neg()).unwrap(),
                truth_set(&m, &rhs.clone().neg()).unwrap(),
                "not {}", name
            );
        }
    }

    #[test]
    fn classical_negation_complements(seed in any::<u64>(), n in 1usize..=4, phi in common::dynamic_formula()) {
        let m = model(seed, n);
        let t = truth_set(&m, &phi).unwrap();
        prop_assert_eq!(truth_set(&m, &phi.clone().not_classical()).unwrap(), t.complement(n));
        let plain = globally_satisfies(&m, &SignedFormula::plain(phi.clone())).unwrap();
        let minus = globally_satisfies(&m, &SignedFormula::minus(phi)).unwrap();
        prop_assert_eq!(plain, !minus);
    }

    #[test]
    fn satisfaction_statements_are_world_independent(
        seed in any::<u64>(),
        n in 1usize..=4,
        phi in common::dynamic_formula(),
    ) {
        let m = model(seed, n);
        let t = truth_set(&m, &Formula::at("i", phi)).unwrap();
        prop_assert!(t.is_empty() || t.len() == n);
    }
}
