//! Seeded generators for formulas, programs and models.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::semantics::{Model, Relation, WorldSet};
use crate::syntax::{Formula, Program, Signature};

/// Shape controls for random formulas.
#[derive(Debug, Clone)]
pub struct FormulaShape {
    pub props: Vec<String>,
    pub nominals: Vec<String>,
    pub actions: Vec<String>,
    pub max_depth: usize,
    pub program_depth: usize,
    /// When false, every modality is applied to an atomic action.
    pub composite_programs: bool,
}

impl FormulaShape {
    pub fn new(sig: &Signature, max_depth: usize) -> Self {
        FormulaShape {
            props: sig.propositions.iter().cloned().collect(),
            nominals: sig.nominals.iter().cloned().collect(),
            actions: sig.actions.iter().cloned().collect(),
            max_depth,
            program_depth: 0,
            composite_programs: false,
        }
    }

    pub fn with_programs(mut self, program_depth: usize) -> Self {
        self.program_depth = program_depth;
        self.composite_programs = true;
        self
    }

    fn atom(&self, rng: &mut impl Rng) -> Formula {
        // Propositions are drawn twice as often as the other atoms.
        let props = 2 * self.props.len();
        let noms = usize::from(!self.nominals.is_empty());
        let pick = rng.gen_range(0..1 + props + noms);
        if pick == 0 {
            Formula::Bottom
        } else if pick <= props {
            Formula::prop(&self.props[(pick - 1) / 2])
        } else {
            Formula::nom(self.nominals.choose(rng).unwrap())
        }
    }

    pub fn formula(&self, rng: &mut impl Rng) -> Formula {
        self.formula_at(rng, self.max_depth)
    }

    fn formula_at(&self, rng: &mut impl Rng, depth: usize) -> Formula {
        if depth == 0 || rng.gen_ratio(1, 5) {
            return self.atom(rng);
        }
        let sub = |rng: &mut _| self.formula_at(rng, depth - 1);
        let modal = !self.actions.is_empty();
        let at = !self.nominals.is_empty();
        match rng.gen_range(0..10) {
            0 | 1 => sub(rng).neg(),
            2 => sub(rng).and(sub(rng)),
            3 => sub(rng).or(sub(rng)),
            4 => sub(rng).implies(sub(rng)),
            5 => sub(rng).not_classical(),
            6 if at => Formula::at(self.nominals.choose(rng).unwrap(), sub(rng)),
            7 | 8 if modal => {
                let p = self.program(rng, depth - 1);
                Formula::diamond(p, sub(rng))
            }
            9 if modal => {
                let p = self.program(rng, depth - 1);
                Formula::boxed(p, sub(rng))
            }
            _ => sub(rng).neg(),
        }
    }

    fn atomic(&self, rng: &mut impl Rng) -> Program {
        Program::atomic(self.actions.choose(rng).unwrap())
    }

    /// A program of depth at most `program_depth`; tests use formulas of
    /// depth below `formula_depth`.
    pub fn program(&self, rng: &mut impl Rng, formula_depth: usize) -> Program {
        if !self.composite_programs {
            return self.atomic(rng);
        }
        self.program_at(rng, self.program_depth, formula_depth)
    }

    fn program_at(&self, rng: &mut impl Rng, depth: usize, formula_depth: usize) -> Program {
        if depth == 0 || rng.gen_ratio(1, 3) {
            return self.atomic(rng);
        }
        match rng.gen_range(0..4) {
            0 => self
                .program_at(rng, depth - 1, formula_depth)
                .seq(self.program_at(rng, depth - 1, formula_depth)),
            1 => self
                .program_at(rng, depth - 1, formula_depth)
                .choice(self.program_at(rng, depth - 1, formula_depth)),
            2 => self.program_at(rng, depth - 1, formula_depth).star(),
            _ => Program::test(self.formula_at(rng, formula_depth.min(2))),
        }
    }
}

/// A model over `sig` with `n` worlds; every membership bit is a fair coin
/// and nominals name uniformly chosen worlds.
pub fn random_model(rng: &mut impl Rng, n: usize, sig: &Signature) -> Model {
    let mut m = Model::with_size(n).expect("n > 0");
    for a in &sig.actions {
        let pos = random_relation(rng, n);
        let neg = random_relation(rng, n);
        m.set_relations(a, pos, neg);
    }
    for p in &sig.propositions {
        let pos = random_set(rng, n);
        let neg = random_set(rng, n);
        m.set_valuation(p, pos, neg);
    }
    for i in &sig.nominals {
        m.name(i, rng.gen_range(0..n)).expect("world in range");
    }
    m
}

pub fn random_set(rng: &mut impl Rng, n: usize) -> WorldSet {
    WorldSet::from_iter(n, (0..n).filter(|_| rng.gen_bool(0.5)))
}

pub fn random_relation(rng: &mut impl Rng, n: usize) -> Relation {
    let mut r = Relation::empty(n);
    for a in 0..n {
        for b in 0..n {
            if rng.gen_bool(0.5) {
                r.insert(a, b);
            }
        }
    }
    r
}

/// The signature `{p.., 'i.., a..}` with the given counts.
pub fn small_signature(props: usize, nominals: usize, actions: usize) -> Signature {
    const P: [&str; 4] = ["p", "q", "r", "s"];
    const N: [&str; 4] = ["i", "j", "k", "l"];
    const A: [&str; 4] = ["a", "b", "c", "d"];
    Signature {
        propositions: P[..props].iter().map(|s| s.to_string()).collect(),
        nominals: N[..nominals].iter().map(|s| s.to_string()).collect(),
        actions: A[..actions].iter().map(|s| s.to_string()).collect(),
    }
}
