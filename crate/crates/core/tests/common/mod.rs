#![allow(dead_code)]

use proptest::prelude::*;
use proptest::sample::select;

use fourdl::syntax::{Formula, Program};

pub fn atom() -> impl Strategy<Value = Formula> + Clone {
    prop_oneof![
        3 => select(vec!["p", "q"]).prop_map(Formula::prop),
        1 => select(vec!["i", "j"]).prop_map(Formula::nom),
        1 => Just(Formula::Bottom),
    ]
}

fn build(inner: BoxedStrategy<Formula>, program: BoxedStrategy<Program>) -> impl Strategy<Value = Formula> {
    prop_oneof![
        inner.clone().prop_map(Formula::neg),
        (inner.clone(), inner.clone()).prop_map(|(a, b)| a.and(b)),
        (inner.clone(), inner.clone()).prop_map(|(a, b)| a.or(b)),
        (inner.clone(), inner.clone()).prop_map(|(a, b)| a.implies(b)),
        (select(vec!["i", "j"]), inner.clone()).prop_map(|(i, f)| Formula::at(i, f)),
        (program.clone(), inner.clone()).prop_map(|(p, f)| Formula::diamond(p, f)),
        (program, inner).prop_map(|(p, f)| Formula::boxed(p, f)),
    ]
}

pub fn action() -> impl Strategy<Value = Program> + Clone {
    select(vec!["a", "b"]).prop_map(Program::atomic)
}

/// Formulas whose modalities are atomic actions.
pub fn hybrid_formula() -> impl Strategy<Value = Formula> {
    atom().prop_recursive(5, 48, 2, |inner| build(inner, action().boxed()))
}

pub fn program_over(f: BoxedStrategy<Formula>) -> impl Strategy<Value = Program> + Clone {
    prop_oneof![3 => action(), 1 => f.prop_map(Program::test)].prop_recursive(2, 8, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.seq(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.choice(b)),
            inner.prop_map(Program::star),
        ]
    })
}

/// Formulas over composite programs whose tests are atoms.
pub fn dynamic_formula() -> impl Strategy<Value = Formula> {
    let programs = program_over(atom().boxed()).boxed();
    atom().prop_recursive(4, 32, 2, move |inner| build(inner, programs.clone()))
}
