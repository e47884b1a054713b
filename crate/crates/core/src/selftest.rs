//! Built-in invariant suites, shared by the command line and the acceptance
//! harness. Each suite reports one `Outcome`.

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fourval::{cneg4, designated, imp4, join_t, leq_k, leq_t, meet_t, neg4, FourValue};
use crate::oracle::{countermodel_search, search_space, EnumerationSpec};
use crate::random::{random_model, small_signature, FormulaShape};
use crate::semantics::{
    diagram_lines, globally_satisfies, parse_model, satisfies, to_four_model, truth_set, value4, Model,
};
use crate::syntax::{parse_formula, Formula, Program, Signature, SignedFormula};
use crate::tableau::{prove_roots, ProverConfig, Run, TableauResult};

/// The model of the diagram example, in the model file format.
pub const EXAMPLE1_MODEL: &str = include_str!("../data/example1.4dl");

/// Its diagram, one statement per line, sorted.
pub const EXAMPLE1_DIAGRAM: [&str; 13] = [
    "@'i !<a>'j",
    "@'i !<a>'k",
    "@'i 'i",
    "@'i <a>'j",
    "@'j 'j",
    "@'j p",
    "@'k !q",
    "@'k 'k",
    "@'l !p",
    "@'l 'l",
    "@'l <a>'k",
    "@'l p",
    "@'m 'm",
];

/// Formulas the prover must prove.
pub const VALIDITIES: [&str; 8] = [
    "[a](p -> q) -> ([a]p -> [a]q)",
    "(p & ~p) -> false",
    "p | ~p",
    "~<a>p <-> [a]~p",
    "<a;b>p <-> <a><b>p",
    "[a+b]p <-> [a]p & [b]p",
    "[q?]p <-> (q -> p)",
    "[a*]p <-> p & [a][a*]p",
];

/// Formulas the prover must refute with a small countermodel.
pub const NON_VALIDITIES: [&str; 6] = [
    "p | !p",
    "(p & !p) -> false",
    "!<a>p <-> [a]!p",
    "~p -> !p",
    "!p -> ~p",
    "!~p <-> p",
];

/// Consequence problems, as premises and conclusion, with a star over a
/// diamond; their tableaux only terminate through blocking.
pub const BLOCKING_CORPUS: [(&[&str], &str); 16] = [
    (&["@'i [a*]<a>p"], "@'i q"),
    (&["[a*]<a>p"], "q"),
    (&["[a*]<a>p"], "<a*>q"),
    (&[], "[a*]<a>p -> <a*>!p"),
    (&["@'i [a*](<a>p & <a>!p)"], "@'i [a]q"),
    (&["@'i [(a;a)*]<a><a>p"], "@'i !p"),
    (&["@'i [a*]<a>p", "@'i [a*]<b>q"], "@'i <b>!q"),
    (&[], "[a*]<a>true -> <a*>(p & !p)"),
    (&["@'i [a*]<a>!p"], "@'i <a*>p"),
    (&["@'i [a*](p & <a>p)"], "@'i [a*]q"),
    (&["@'i [(a+b)*]<a;b>p"], "@'i [a]!p"),
    (&["@'i [a*]<a><a>p"], "@'i [a*]~p"),
    (&["@'i [a*](<a>true & [a]~q)"], "@'i [a][a*]~q"),
    (&["@'i [a*]<a>p"], "@'i [a*]<a><a>p"),
    (&["@'i [a*](<a>p & [a]~q)"], "@'i ~<a*><a>q"),
    (&["@'i [a*]<a>p", "@'i ~<a*>(p & q)"], "@'i [a*]~(p & q)"),
];

/// Parameters of the randomised suites.
#[derive(Debug, Clone)]
pub struct SelftestConfig {
    pub seed: u64,
    pub lemma1_models: usize,
    pub lemma1_formulas: usize,
    pub lemma2_models: usize,
    pub lemma2_instances: usize,
    pub corpus_size: usize,
    pub corpus_worlds: usize,
    pub prover: ProverConfig,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            seed: 4,
            lemma1_models: 500,
            lemma1_formulas: 50,
            lemma2_models: 200,
            lemma2_instances: 10,
            corpus_size: 200,
            corpus_worlds: 3,
            prover: ProverConfig {
                check_invariants: true,
                ..ProverConfig::default()
            },
        }
    }
}

impl SelftestConfig {
    /// A reduced run for quick smoke checks.
    pub fn quick() -> Self {
        SelftestConfig {
            lemma1_models: 50,
            lemma1_formulas: 20,
            lemma2_models: 20,
            corpus_size: 20,
            ..SelftestConfig::default()
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub criterion: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {} {}: {} ({:.2}s) {}",
            self.criterion,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

/// Prover runs recorded across suites, for the model-existence and
/// termination criteria.
#[derive(Debug, Default)]
pub struct Tally {
    pub runs: usize,
    pub refuted: usize,
    pub confirmed: usize,
    pub exhausted: usize,
    pub failures: Vec<String>,
}

impl Tally {
    /// Proves the roots and checks any countermodel against them.
    pub fn prove(&mut self, label: &str, roots: &[SignedFormula], config: &ProverConfig) -> Option<Run> {
        self.runs += 1;
        let run = match prove_roots(roots, config) {
            Ok(run) => run,
            Err(e) => {
                self.failures.push(format!("{label}: {e}"));
                return None;
            }
        };
        match &run.result {
            TableauResult::Refuted { countermodel, .. } => {
                self.refuted += 1;
                match check_roots(countermodel, roots) {
                    Ok(()) => self.confirmed += 1,
                    Err(root) => self.failures.push(format!("{label}: countermodel fails {root}")),
                }
            }
            TableauResult::ResourceExhausted => {
                self.exhausted += 1;
                self.failures.push(format!("{label}: resources exhausted"));
            }
            TableauResult::Proved => {}
        }
        Some(run)
    }

    fn verdict(&mut self, label: &str, roots: &[SignedFormula], config: &ProverConfig) -> Option<TableauResult> {
        self.prove(label, roots, config).map(|run| run.result)
    }
}

/// Checks that a model makes every plain root hold and every minus root
/// fail; returns the first offending root.
pub fn check_roots(m: &Model, roots: &[SignedFormula]) -> Result<(), String> {
    for r in roots {
        if !globally_satisfies(m, r).unwrap_or(false) {
            return Err(r.to_string());
        }
    }
    Ok(())
}

fn consequence_roots(premises: &[Formula], conclusion: &Formula) -> Vec<SignedFormula> {
    let mut roots: Vec<SignedFormula> = premises.iter().cloned().map(SignedFormula::plain).collect();
    roots.push(SignedFormula::minus(conclusion.clone()));
    roots
}

/// Parses a corpus problem.
pub fn parse_problem(premises: &[&str], conclusion: &str) -> (Vec<Formula>, Formula) {
    let parse = |s: &str| parse_formula(s).expect("corpus formula parses");
    (premises.iter().map(|s| parse(s)).collect(), parse(conclusion))
}

fn timed(criterion: usize, title: &'static str, f: impl FnOnce() -> (bool, String)) -> Outcome {
    let start = Instant::now();
    let (passed, detail) = f();
    Outcome {
        criterion,
        title,
        passed,
        detail,
        elapsed: start.elapsed(),
    }
}

fn summary(failures: &[String], ok: String) -> (bool, String) {
    match failures.first() {
        None => (true, ok),
        Some(first) => (false, format!("{} failures, first: {first}", failures.len())),
    }
}

pub fn example1_diagram() -> Outcome {
    timed(1, "Example 1 diagram", || {
        let lines = parse_model(EXAMPLE1_MODEL).and_then(|m| diagram_lines(&m));
        match lines {
            Ok(lines) if lines == EXAMPLE1_DIAGRAM => (true, "13 statements".into()),
            Ok(lines) => (false, format!("got {}: {}", lines.len(), lines.join(", "))),
            Err(e) => (false, e.to_string()),
        }
    })
}

pub fn lemma1_suite(cfg: &SelftestConfig) -> Outcome {
    timed(2, "two-relation and four-valued semantics agree", || {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let sig = small_signature(2, 2, 2);
        let shape = FormulaShape::new(&sig, 5);
        let mut failures = Vec::new();
        let mut checks = 0usize;
        for _ in 0..cfg.lemma1_models {
            let n = rng.gen_range(1..=4);
            let m = random_model(&mut rng, n, &sig);
            let fm = to_four_model(&m);
            for _ in 0..cfg.lemma1_formulas {
                let f = shape.formula(&mut rng);
                for w in 0..n {
                    checks += 1;
                    let two = satisfies(&m, w, &f);
                    let four = value4(&fm, w, &f).map(designated);
                    if two != four {
                        failures.push(format!("{f} at w{w}: {two:?} vs {four:?}"));
                    }
                }
            }
        }
        summary(&failures, format!("{checks} world checks"))
    })
}

/// The schemes of the dynamic axioms, instantiated.
pub fn lemma2_schemes(a: &Program, b: &Program, phi: &Formula, psi: &Formula) -> Vec<(&'static str, Formula, Formula)> {
    let bx = |p: &Program, f: Formula| Formula::boxed(p.clone(), f);
    let dm = |p: &Program, f: Formula| Formula::diamond(p.clone(), f);
    let star = a.clone().star();
    let test = Program::test(phi.clone());
    vec![
        ("[;]", bx(&a.clone().seq(b.clone()), phi.clone()), bx(a, bx(b, phi.clone()))),
        (
            "[+]",
            bx(&a.clone().choice(b.clone()), phi.clone()),
            bx(a, phi.clone()).and(bx(b, phi.clone())),
        ),
        ("[?]", bx(&test, psi.clone()), phi.clone().implies(psi.clone())),
        (
            "[*]",
            bx(&star, phi.clone()),
            phi.clone().and(bx(a, bx(&star, phi.clone()))),
        ),
        ("<;>", dm(&a.clone().seq(b.clone()), phi.clone()), dm(a, dm(b, phi.clone()))),
        (
            "<+>",
            dm(&a.clone().choice(b.clone()), phi.clone()),
            dm(a, phi.clone()).or(dm(b, phi.clone())),
        ),
        ("<?>", dm(&test, psi.clone()), phi.clone().and(psi.clone())),
        (
            "<*>",
            dm(&star, phi.clone()),
            phi.clone().or(dm(a, dm(&star, phi.clone()))),
        ),
    ]
}

pub fn lemma2_suite(cfg: &SelftestConfig) -> Outcome {
    timed(3, "dynamic axiom schemes", || {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed + 1);
        let sig = small_signature(2, 1, 2);
        let shape = FormulaShape::new(&sig, 3).with_programs(2);
        let mut failures = Vec::new();
        let mut checks = 0usize;
        for _ in 0..cfg.lemma2_models {
            let n = rng.gen_range(1..=4);
            let m = random_model(&mut rng, n, &sig);
            for _ in 0..cfg.lemma2_instances {
                let a = shape.program(&mut rng, 2);
                let b = shape.program(&mut rng, 2);
                let phi = shape.formula(&mut rng);
                let psi = shape.formula(&mut rng);
                for (name, lhs, rhs) in lemma2_schemes(&a, &b, &phi, &psi) {
                    for negated in [false, true] {
                        let (l, r) = if negated {
                            (lhs.clone().neg(), rhs.clone().neg())
                        } else {
                            (lhs.clone(), rhs.clone())
                        };
                        checks += 1;
                        let (tl, tr) = (truth_set(&m, &l), truth_set(&m, &r));
                        if tl != tr {
                            failures.push(format!("{name}: {l} vs {r}"));
                        }
                    }
                }
            }
        }
        summary(&failures, format!("{checks} scheme instances"))
    })
}

pub fn validity_suite(cfg: &SelftestConfig, tally: &mut Tally) -> Outcome {
    timed(4, "validity regression set proved", || {
        let mut failures = Vec::new();
        for s in VALIDITIES {
            let f = parse_formula(s).expect("regression formula parses");
            match tally.verdict(s, &[SignedFormula::minus(f)], &cfg.prover) {
                Some(TableauResult::Proved) => {}
                other => failures.push(format!("{s}: {}", verdict(&other))),
            }
        }
        summary(&failures, format!("{} proved", VALIDITIES.len()))
    })
}

pub fn non_validity_suite(cfg: &SelftestConfig, tally: &mut Tally) -> Outcome {
    timed(5, "non-validity regression set refuted", || {
        let mut failures = Vec::new();
        for s in NON_VALIDITIES {
            let f = parse_formula(s).expect("regression formula parses");
            let roots = [SignedFormula::minus(f)];
            match tally.verdict(s, &roots, &cfg.prover) {
                Some(TableauResult::Refuted { countermodel, .. }) => {
                    if countermodel.size() > 3 {
                        failures.push(format!("{s}: {} worlds", countermodel.size()));
                    } else if let Err(r) = check_roots(&countermodel, &roots) {
                        failures.push(format!("{s}: countermodel fails {r}"));
                    }
                }
                other => failures.push(format!("{s}: {}", verdict(&other))),
            }
        }
        summary(&failures, format!("{} refuted", NON_VALIDITIES.len()))
    })
}

fn verdict(r: &Option<TableauResult>) -> &'static str {
    match r {
        None => "error",
        Some(TableauResult::Proved) => "proved",
        Some(TableauResult::Refuted { .. }) => "refuted",
        Some(TableauResult::ResourceExhausted) => "exhausted",
    }
}

/// The signature of the generated consequence corpus.
pub fn corpus_signature() -> Signature {
    small_signature(2, 1, 1)
}

/// Seeded consequence problems with at most two premises of depth at most
/// four, restricted to those the oracle can search exhaustively up to
/// `max_worlds` worlds.
pub fn consequence_corpus(seed: u64, size: usize, max_worlds: usize) -> Vec<(Vec<Formula>, Formula)> {
    let sig = corpus_signature();
    let shape = FormulaShape::new(&sig, 4).with_programs(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(size);
    while out.len() < size {
        let k = rng.gen_range(0..=2);
        let premises: Vec<Formula> = (0..k).map(|_| shape.formula(&mut rng)).collect();
        let conclusion = shape.formula(&mut rng);
        let spec = problem_spec(&premises, &conclusion, max_worlds);
        if search_space(&spec) <= spec.ceiling {
            out.push((premises, conclusion));
        }
    }
    out
}

fn problem_spec(premises: &[Formula], conclusion: &Formula, max_worlds: usize) -> EnumerationSpec {
    let sig = Signature::of_formulas(premises.iter().chain([conclusion]));
    EnumerationSpec::exhaustive(sig, max_worlds)
}

pub fn cross_check_suite(cfg: &SelftestConfig, tally: &mut Tally) -> Outcome {
    timed(6, "tableau agrees with the exhaustive oracle", || {
        let corpus = consequence_corpus(cfg.seed + 2, cfg.corpus_size, cfg.corpus_worlds);
        let mut failures = Vec::new();
        let mut bounded_only = Vec::new();
        let (mut proved, mut refuted) = (0, 0);
        for (k, (premises, conclusion)) in corpus.iter().enumerate() {
            let label = format!("#{k}");
            let roots = consequence_roots(premises, conclusion);
            let result = tally.verdict(&label, &roots, &cfg.prover);
            let spec = problem_spec(premises, conclusion, cfg.corpus_worlds);
            let oracle = match countermodel_search(premises, conclusion, &spec) {
                Ok(found) => found,
                Err(e) => {
                    failures.push(format!("{label}: oracle {e}"));
                    continue;
                }
            };
            match (result, oracle) {
                (Some(TableauResult::Proved), None) => proved += 1,
                (Some(TableauResult::Proved), Some(m)) => {
                    let confirmed = check_roots(&m, &roots).is_ok();
                    failures.push(format!(
                        "{label}: proved but the oracle found a {}-world countermodel (checker {})",
                        m.size(),
                        if confirmed { "confirms" } else { "rejects" }
                    ));
                }
                (Some(TableauResult::Refuted { countermodel, .. }), found) => {
                    refuted += 1;
                    if check_roots(&countermodel, &roots).is_err() {
                        failures.push(format!("{label}: checker rejects the countermodel"));
                    } else if found.is_none() {
                        if countermodel.size() <= cfg.corpus_worlds {
                            failures.push(format!("{label}: oracle misses a small countermodel"));
                        } else {
                            bounded_only.push(format!("{label} ({} worlds)", countermodel.size()));
                        }
                    }
                }
                (other, _) => failures.push(format!("{label}: {}", verdict(&other))),
            }
        }
        let mut detail = format!("{proved} proved, {refuted} refuted");
        if !bounded_only.is_empty() {
            detail.push_str(&format!(", bounded-only: {}", bounded_only.join(" ")));
        }
        summary(&failures, detail)
    })
}

pub fn model_existence(tally: &Tally) -> Outcome {
    timed(7, "every countermodel satisfies its roots", || {
        let passed = tally.refuted > 0 && tally.confirmed == tally.refuted;
        (passed, format!("{}/{} countermodels confirmed", tally.confirmed, tally.refuted))
    })
}

pub fn termination(cfg: &SelftestConfig, tally: &mut Tally) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (lhs, rhs) in BLOCKING_CORPUS {
        let (premises, conclusion) = parse_problem(lhs, rhs);
        let s = format!("{} |- {rhs}", lhs.join(", "));
        let s = s.as_str();
        let roots = consequence_roots(&premises, &conclusion);
        let run = tally.prove(s, &roots, &cfg.prover);
        let blocked = run.as_ref().map_or(0, |r| r.stats.blocked_existentials);
        let result = run.map(|r| r.result);
        if result.is_none() || matches!(result, Some(TableauResult::ResourceExhausted)) {
            failures.push(format!("{s}: {}", verdict(&result)));
        } else if blocked == 0 {
            failures.push(format!("{s}: no blocked existential"));
        }
    }
    failures.extend(tally.failures.iter().filter(|f| f.ends_with("exhausted")).cloned());
    let (passed, detail) = summary(
        &failures,
        format!(
            "{} blocking inputs, {} prover runs, {} exhausted",
            BLOCKING_CORPUS.len(),
            tally.runs,
            tally.exhausted
        ),
    );
    Outcome {
        criterion: 8,
        title: "termination and blocking",
        passed: passed && tally.exhausted == 0,
        detail,
        elapsed: start.elapsed(),
    }
}

pub fn fourval_laws() -> Outcome {
    timed(9, "four-valued algebra laws", || {
        let all = FourValue::ALL;
        let mut failures = Vec::new();
        let mut law = |name: &str, ok: bool| {
            if !ok {
                failures.push(name.to_string());
            }
        };
        for x in all {
            law("neg involution", neg4(neg4(x)) == x);
            law("cneg involution", cneg4(cneg4(x)) == x);
            law("neg bridge", designated(neg4(x)) == x.has_falsity());
            law("cneg bridge", designated(cneg4(x)) == !designated(x));
            law("neg monotone in knowledge", all.iter().all(|&y| !leq_k(x, y) || leq_k(neg4(x), neg4(y))));
            for y in all {
                law("neg de morgan meet", neg4(meet_t(x, y)) == join_t(neg4(x), neg4(y)));
                law("neg de morgan join", neg4(join_t(x, y)) == meet_t(neg4(x), neg4(y)));
                law("cneg de morgan meet", cneg4(meet_t(x, y)) == join_t(cneg4(x), cneg4(y)));
                law("cneg de morgan join", cneg4(join_t(x, y)) == meet_t(cneg4(x), cneg4(y)));
                law("meet bridge", designated(meet_t(x, y)) == (designated(x) && designated(y)));
                law("join bridge", designated(join_t(x, y)) == (designated(x) || designated(y)));
                law("imp bridge", designated(imp4(x, y)) == (!designated(x) || designated(y)));
                law("neg antitone in truth", !leq_t(x, y) || leq_t(neg4(y), neg4(x)));
                for z in all {
                    law(
                        "residuation",
                        designated(imp4(meet_t(x, y), z)) == designated(imp4(x, imp4(y, z))),
                    );
                    law(
                        "designated modus ponens",
                        !(designated(x) && designated(imp4(x, z))) || designated(z),
                    );
                    law("meet associative", meet_t(meet_t(x, y), z) == meet_t(x, meet_t(y, z)));
                    law(
                        "distributive",
                        meet_t(x, join_t(y, z)) == join_t(meet_t(x, y), meet_t(x, z)),
                    );
                }
            }
        }
        summary(&failures, "4/16/64 entries checked".into())
    })
}

/// Runs every suite in criterion order.
pub fn run_all(cfg: &SelftestConfig) -> Vec<Outcome> {
    let mut tally = Tally::default();
    let mut out = vec![
        example1_diagram(),
        lemma1_suite(cfg),
        lemma2_suite(cfg),
        validity_suite(cfg, &mut tally),
        non_validity_suite(cfg, &mut tally),
        cross_check_suite(cfg, &mut tally),
    ];
    let term = termination(cfg, &mut tally);
    out.push(model_existence(&tally));
    out.push(term);
    out.push(fourval_laws());
    out
}
