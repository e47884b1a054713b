use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fourdl::oracle::{countermodel_search, EnumerationSpec};
use fourdl::random::FormulaShape;
use fourdl::selftest::{corpus_signature, NON_VALIDITIES, VALIDITIES};
use fourdl::semantics::globally_satisfies;
use fourdl::syntax::{parse_formula, Formula, SignedFormula};
use fourdl::tableau::{prove_consequence, prove_validity, ProverConfig, TableauResult};

fn cfg() -> ProverConfig {
    ProverConfig {
        check_invariants: true,
        ..ProverConfig::default()
    }
}

#[test]
fn validity_regression_set_is_proved() {
    for s in VALIDITIES {
        let run = prove_validity(&parse_formula(s).unwrap(), &cfg()).unwrap();
        assert!(run.result.is_proved(), "{s}: {:?}", run.result);
    }
}

#[test]
fn non_validity_regression_set_is_refuted_small() {
    for s in NON_VALIDITIES {
        let f = parse_formula(s).unwrap();
        let run = prove_validity(&f, &cfg()).unwrap();
        match run.result {
            TableauResult::Refuted { countermodel, .. } => {
                assert!(countermodel.size() <= 3, "{s}: {} worlds", countermodel.size());
                assert!(!globally_satisfies(&countermodel, &SignedFormula::plain(f)).unwrap());
            }
            other => panic!("{s}: {other:?}"),
        }
    }
}

#[test]
fn global_consequence_uses_premises_everywhere() {
    let p = parse_formula("p").unwrap();
    let run = prove_consequence(&[p], &parse_formula("[a]p").unwrap(), &cfg()).unwrap();
    assert!(run.result.is_proved());
    let run = prove_consequence(
        &[parse_formula("@'i p").unwrap()],
        &parse_formula("[a]p").unwrap(),
        &cfg(),
    )
    .unwrap();
    assert!(run.result.is_refuted());
}

#[test]
fn star_under_diamond_terminates_by_blocking() {
    let premise = parse_formula("@'i [a*]<a>p").unwrap();
    let run = prove_consequence(&[premise], &parse_formula("@'i q").unwrap(), &cfg()).unwrap();
    assert!(run.result.is_refuted());
    assert!(run.stats.blocked_existentials > 0);
}

#[test]
fn refused_eventualities_end_the_branch() {
    let cases: [(&[&str], &str); 2] = [
        (&["!!<a*>~q", "<a*>@'i (p & q) | ![a*](q -> p)"], "'i"),
        (&["!(<a>p -> p | q) | ~p", "<a*>~!@'i p"], "false"),
    ];
    for (premises, conclusion) in cases {
        let premises: Vec<Formula> = premises.iter().map(|s| parse_formula(s).unwrap()).collect();
        let conclusion = parse_formula(conclusion).unwrap();
        let run = prove_consequence(&premises, &conclusion, &cfg()).unwrap();
        assert!(run.stats.steps < 5_000, "{} steps", run.stats.steps);
        let spec = EnumerationSpec::exhaustive(corpus_signature(), 2);
        let oracle = countermodel_search(&premises, &conclusion, &spec).unwrap();
        match run.result {
            TableauResult::Proved => assert!(oracle.is_none(), "{conclusion}"),
            TableauResult::Refuted { countermodel, .. } => {
                assert!(oracle.is_some() || countermodel.size() > 2, "{conclusion}")
            }
            TableauResult::ResourceExhausted => panic!("exhausted"),
        }
    }
}

fn problem(seed: u64) -> (Vec<Formula>, Formula) {
    let shape = FormulaShape::new(&corpus_signature(), 4).with_programs(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(0..=2);
    let premises = (0..k).map(|_| shape.formula(&mut rng)).collect();
    (premises, shape.formula(&mut rng))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn search_refinements_preserve_verdicts(seed in any::<u64>()) {
        let (premises, conclusion) = problem(seed);
        let full = prove_consequence(&premises, &conclusion, &cfg()).unwrap();
        for (semantic_branching, backjumping) in [(false, false), (true, false), (false, true)] {
            let config = ProverConfig { semantic_branching, backjumping, max_steps: 400_000, ..cfg() };
            let plain = prove_consequence(&premises, &conclusion, &config).unwrap();
            if matches!(plain.result, TableauResult::ResourceExhausted) {
                continue;
            }
            prop_assert_eq!(plain.result.is_proved(), full.result.is_proved());
        }
    }

    #[test]
    fn runs_are_deterministic(seed in any::<u64>()) {
        let (premises, conclusion) = problem(seed);
        let a = prove_consequence(&premises, &conclusion, &cfg()).unwrap();
        let b = prove_consequence(&premises, &conclusion, &cfg()).unwrap();
        prop_assert_eq!(a.result, b.result);
        prop_assert_eq!(a.stats, b.stats);
    }

    #[test]
    fn verdicts_match_the_oracle(seed in any::<u64>()) {
        let (premises, conclusion) = problem(seed);
        let spec = EnumerationSpec::exhaustive(corpus_signature(), 2).with_ceiling(1 << 20);
        let Ok(oracle) = countermodel_search(&premises, &conclusion, &spec) else {
            return Ok(());
        };
        let run = prove_consequence(&premises, &conclusion, &cfg()).unwrap();
        match run.result {
            TableauResult::Proved => prop_assert!(oracle.is_none()),
            TableauResult::Refuted { countermodel, .. } => {
                let mut roots: Vec<SignedFormula> =
                    premises.iter().cloned().map(SignedFormula::plain).collect();
                roots.push(SignedFormula::minus(conclusion.clone()));
                for r in &roots {
                    prop_assert!(globally_satisfies(&countermodel, r).unwrap());
                }
                prop_assert!(oracle.is_some() || countermodel.size() > 2);
            }
            TableauResult::ResourceExhausted => prop_assert!(false, "exhausted"),
        }
    }
}
