//! Model checking by compiling a formula into a circuit over world sets.
//!
//! Compilation resolves every negation up front: `!φ` is compiled with the
//! polarity flipped, so that each node of the circuit is one clause of the
//! satisfaction relation. Identical subcircuits are shared, which memoises
//! program denotations within one evaluation.

use std::collections::{BTreeSet, HashMap};

use super::model::Model;
use super::sets::{Relation, WorldSet};
use super::SemanticsError;
use crate::syntax::{Formula, Program, Signature, SignedFormula};

/// Sorted symbol tables; a symbol's id is its position.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Symbols {
    pub actions: Vec<String>,
    pub props: Vec<String>,
    pub nominals: Vec<String>,
}

impl Symbols {
    pub fn from_signature(sig: &Signature) -> Self {
        Symbols {
            actions: sig.actions.iter().cloned().collect(),
            props: sig.propositions.iter().cloned().collect(),
            nominals: sig.nominals.iter().cloned().collect(),
        }
    }

    fn lookup(list: &[String], name: &str) -> Option<usize> {
        list.binary_search_by(|x| x.as_str().cmp(name)).ok()
    }
}

/// Read access to a model through symbol ids.
pub trait Interpretation {
    fn size(&self) -> usize;
    fn pos_rel(&self, a: usize) -> &Relation;
    fn neg_rel(&self, a: usize) -> &Relation;
    fn pos_val(&self, p: usize) -> &WorldSet;
    fn neg_val(&self, p: usize) -> &WorldSet;
    fn named(&self, i: usize) -> usize;
}

/// Which side of a program's interpretation is wanted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Side {
    Pos,
    NegComplement,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) enum Op {
    // World-set valued.
    Empty,
    Full,
    PosVal(usize),
    NegVal(usize),
    Named(usize),
    NotNamed(usize),
    And(usize, usize),
    Or(usize, usize),
    Not(usize),
    Exists(usize, usize),
    Forall(usize, usize),
    At(usize, usize),
    // Relation valued.
    PosRel(usize),
    NegComplementRel(usize),
    Compose(usize, usize),
    Union(usize, usize),
    Closure(usize),
    Diagonal(usize),
}

#[derive(Debug, Clone)]
enum Value {
    Set(WorldSet),
    Rel(Relation),
}

impl Value {
    fn set(&self) -> &WorldSet {
        match self {
            Value::Set(s) => s,
            Value::Rel(_) => unreachable!("circuit node is a relation"),
        }
    }

    fn rel(&self) -> &Relation {
        match self {
            Value::Rel(r) => r,
            Value::Set(_) => unreachable!("circuit node is a set"),
        }
    }
}

/// The model components a circuit reads.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Usage {
    pub pos_rel: BTreeSet<usize>,
    pub neg_rel: BTreeSet<usize>,
    pub pos_val: BTreeSet<usize>,
    pub neg_val: BTreeSet<usize>,
    pub nominals: BTreeSet<usize>,
}

/// A set of formulas and programs compiled against fixed symbol tables.
#[derive(Debug, Clone)]
pub struct Circuit {
    symbols: Symbols,
    ops: Vec<Op>,
    index: HashMap<Op, usize>,
}

impl Circuit {
    pub fn new(symbols: Symbols) -> Self {
        Circuit {
            symbols,
            ops: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn symbols(&self) -> &Symbols {
        &self.symbols
    }

    pub(crate) fn ops(&self) -> &[Op] {
        &self.ops
    }

    fn push(&mut self, op: Op) -> usize {
        if let Some(&id) = self.index.get(&op) {
            return id;
        }
        self.ops.push(op.clone());
        self.index.insert(op, self.ops.len() - 1);
        self.ops.len() - 1
    }

    fn action(&self, a: &str) -> Result<usize, SemanticsError> {
        Symbols::lookup(&self.symbols.actions, a)
            .ok_or_else(|| SemanticsError::UnknownAction(a.to_string()))
    }

    fn prop(&self, p: &str) -> Result<usize, SemanticsError> {
        Symbols::lookup(&self.symbols.props, p)
            .ok_or_else(|| SemanticsError::UnknownProposition(p.to_string()))
    }

    fn nominal(&self, i: &str) -> Result<usize, SemanticsError> {
        Symbols::lookup(&self.symbols.nominals, i)
            .ok_or_else(|| SemanticsError::UnknownNominal(i.to_string()))
    }

    /// Adds `f` (or `!f` when `negated`) and returns the node of its truth set.
    pub fn formula(&mut self, f: &Formula, negated: bool) -> Result<usize, SemanticsError> {
        let op = match (f, negated) {
            (Formula::Prop(p), false) => Op::PosVal(self.prop(p)?),
            (Formula::Prop(p), true) => Op::NegVal(self.prop(p)?),
            (Formula::Nom(i), false) => Op::Named(self.nominal(i)?),
            (Formula::Nom(i), true) => Op::NotNamed(self.nominal(i)?),
            (Formula::Bottom, false) => Op::Empty,
            (Formula::Bottom, true) => Op::Full,
            (Formula::Neg(g), _) => return self.formula(g, !negated),
            (Formula::And(a, b), false) => {
                Op::And(self.formula(a, false)?, self.formula(b, false)?)
            }
            (Formula::And(a, b), true) => Op::Or(self.formula(a, true)?, self.formula(b, true)?),
            (Formula::Or(a, b), false) => Op::Or(self.formula(a, false)?, self.formula(b, false)?),
            (Formula::Or(a, b), true) => Op::And(self.formula(a, true)?, self.formula(b, true)?),
            (Formula::Implies(a, b), false) => {
                let not_a = self.formula(a, false)?;
                let not_a = self.push(Op::Not(not_a));
                Op::Or(not_a, self.formula(b, false)?)
            }
            (Formula::Implies(a, b), true) => {
                let not_neg_a = self.formula(a, true)?;
                let not_neg_a = self.push(Op::Not(not_neg_a));
                Op::And(not_neg_a, self.formula(b, true)?)
            }
            (Formula::At(i, g), _) => Op::At(self.nominal(i)?, self.formula(g, negated)?),
            (Formula::Diamond(p, g), false) => {
                Op::Exists(self.program(p, Side::Pos)?, self.formula(g, false)?)
            }
            (Formula::Diamond(p, g), true) => {
                Op::Forall(self.program(p, Side::NegComplement)?, self.formula(g, true)?)
            }
            (Formula::Box(p, g), false) => {
                Op::Forall(self.program(p, Side::Pos)?, self.formula(g, false)?)
            }
            (Formula::Box(p, g), true) => {
                Op::Exists(self.program(p, Side::NegComplement)?, self.formula(g, true)?)
            }
        };
        Ok(self.push(op))
    }

    fn program(&mut self, p: &Program, side: Side) -> Result<usize, SemanticsError> {
        let op = match p {
            Program::Atomic(a) => match side {
                Side::Pos => Op::PosRel(self.action(a)?),
                Side::NegComplement => Op::NegComplementRel(self.action(a)?),
            },
            Program::Seq(a, b) => Op::Compose(self.program(a, side)?, self.program(b, side)?),
            Program::Choice(a, b) => Op::Union(self.program(a, side)?, self.program(b, side)?),
            Program::Star(a) => Op::Closure(self.program(a, side)?),
            Program::Test(f) => match side {
                Side::Pos => Op::Diagonal(self.formula(f, false)?),
                Side::NegComplement => {
                    let neg = self.formula(f, true)?;
                    Op::Diagonal(self.push(Op::Not(neg)))
                }
            },
        };
        Ok(self.push(op))
    }

    pub fn positive_program(&mut self, p: &Program) -> Result<usize, SemanticsError> {
        self.program(p, Side::Pos)
    }

    pub fn negative_complement_program(&mut self, p: &Program) -> Result<usize, SemanticsError> {
        self.program(p, Side::NegComplement)
    }

    pub fn usage(&self) -> Usage {
        let mut u = Usage::default();
        for op in &self.ops {
            match *op {
                Op::PosVal(p) => {
                    u.pos_val.insert(p);
                }
                Op::NegVal(p) => {
                    u.neg_val.insert(p);
                }
                Op::PosRel(a) => {
                    u.pos_rel.insert(a);
                }
                Op::NegComplementRel(a) => {
                    u.neg_rel.insert(a);
                }
                Op::Named(i) | Op::NotNamed(i) | Op::At(i, _) => {
                    u.nominals.insert(i);
                }
                _ => {}
            }
        }
        u
    }

    pub fn evaluator(&self) -> Evaluator<'_> {
        Evaluator {
            circuit: self,
            values: Vec::with_capacity(self.ops.len()),
        }
    }
}

/// Evaluates a circuit, reusing its value buffer across models.
pub struct Evaluator<'c> {
    circuit: &'c Circuit,
    values: Vec<Value>,
}

impl Evaluator<'_> {
    pub fn run(&mut self, m: &impl Interpretation) {
        let n = m.size();
        self.values.clear();
        for op in &self.circuit.ops {
            let v = &self.values;
            let value = match *op {
                Op::Empty => Value::Set(WorldSet::empty(n)),
                Op::Full => Value::Set(WorldSet::full(n)),
                Op::PosVal(p) => Value::Set(m.pos_val(p).clone()),
                Op::NegVal(p) => Value::Set(m.neg_val(p).clone()),
                Op::Named(i) => Value::Set(WorldSet::singleton(n, m.named(i))),
                Op::NotNamed(i) => Value::Set(WorldSet::singleton(n, m.named(i)).complement(n)),
                Op::And(a, b) => {
                    let mut s = v[a].set().clone();
                    s.intersect_with(v[b].set());
                    Value::Set(s)
                }
                Op::Or(a, b) => {
                    let mut s = v[a].set().clone();
                    s.union_with(v[b].set());
                    Value::Set(s)
                }
                Op::Not(a) => Value::Set(v[a].set().complement(n)),
                Op::Exists(r, s) => Value::Set(v[r].rel().preimage(v[s].set())),
                Op::Forall(r, s) => Value::Set(v[r].rel().universal_preimage(v[s].set())),
                Op::At(i, s) => Value::Set(if v[s].set().contains(m.named(i)) {
                    WorldSet::full(n)
                } else {
                    WorldSet::empty(n)
                }),
                Op::PosRel(a) => Value::Rel(m.pos_rel(a).clone()),
                Op::NegComplementRel(a) => Value::Rel(m.neg_rel(a).complement()),
                Op::Compose(a, b) => Value::Rel(v[a].rel().compose(v[b].rel())),
                Op::Union(a, b) => Value::Rel(v[a].rel().union(v[b].rel())),
                Op::Closure(a) => Value::Rel(v[a].rel().reflexive_transitive_closure()),
                Op::Diagonal(s) => Value::Rel(Relation::diagonal(n, v[s].set())),
            };
            self.values.push(value);
        }
    }

    pub fn set(&self, node: usize) -> &WorldSet {
        self.values[node].set()
    }

    pub fn relation(&self, node: usize) -> &Relation {
        self.values[node].rel()
    }
}

/// A model seen through the ids of a symbol table.
struct View<'m> {
    size: usize,
    pos_rel: Vec<&'m Relation>,
    neg_rel: Vec<&'m Relation>,
    pos_val: Vec<&'m WorldSet>,
    neg_val: Vec<&'m WorldSet>,
    named: Vec<usize>,
}

impl Interpretation for View<'_> {
    fn size(&self) -> usize {
        self.size
    }
    fn pos_rel(&self, a: usize) -> &Relation {
        self.pos_rel[a]
    }
    fn neg_rel(&self, a: usize) -> &Relation {
        self.neg_rel[a]
    }
    fn pos_val(&self, p: usize) -> &WorldSet {
        self.pos_val[p]
    }
    fn neg_val(&self, p: usize) -> &WorldSet {
        self.neg_val[p]
    }
    fn named(&self, i: usize) -> usize {
        self.named[i]
    }
}

fn model_symbols(m: &Model) -> Symbols {
    Symbols::from_signature(&m.signature())
}

fn view(m: &Model) -> View<'_> {
    View {
        size: m.size(),
        pos_rel: m.actions().map(|(_, r)| &r.pos).collect(),
        neg_rel: m.actions().map(|(_, r)| &r.neg).collect(),
        pos_val: m.props().map(|(_, v)| &v.pos).collect(),
        neg_val: m.props().map(|(_, v)| &v.neg).collect(),
        named: m.naming().map(|(_, w)| w).collect(),
    }
}

/// The set of worlds of `m` at which `f` holds.
pub fn truth_set(m: &Model, f: &Formula) -> Result<WorldSet, SemanticsError> {
    let mut c = Circuit::new(model_symbols(m));
    let root = c.formula(f, false)?;
    let mut e = c.evaluator();
    e.run(&view(m));
    Ok(e.set(root).clone())
}

pub fn satisfies(m: &Model, w: usize, f: &Formula) -> Result<bool, SemanticsError> {
    if w >= m.size() {
        return Err(SemanticsError::UnknownWorld(format!("#{w}")));
    }
    Ok(truth_set(m, f)?.contains(w))
}

/// Global satisfaction; a minus-formula holds when its body fails somewhere.
pub fn globally_satisfies(m: &Model, sf: &SignedFormula) -> Result<bool, SemanticsError> {
    let everywhere = truth_set(m, &sf.formula)?.len() == m.size();
    Ok(everywhere != sf.minus)
}

/// The positive relation of a program and the complement of its negative one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProgramDenotation {
    pub pos: Relation,
    pub neg_complement: Relation,
}

pub fn interpret_program(m: &Model, p: &Program) -> Result<ProgramDenotation, SemanticsError> {
    let mut c = Circuit::new(model_symbols(m));
    let pos = c.positive_program(p)?;
    let negc = c.negative_complement_program(p)?;
    let mut e = c.evaluator();
    e.run(&view(m));
    Ok(ProgramDenotation {
        pos: e.relation(pos).clone(),
        neg_complement: e.relation(negc).clone(),
    })
}

/// Checks whether every formula in `roots` holds in `m` as signed.
pub fn satisfies_all(m: &Model, roots: &[SignedFormula]) -> Result<bool, SemanticsError> {
    for r in roots {
        if !globally_satisfies(m, r)? {
            return Ok(false);
        }
    }
    Ok(true)
}
