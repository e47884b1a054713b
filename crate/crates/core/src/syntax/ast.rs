use std::collections::BTreeSet;
use std::fmt;

/// A formula of the dynamic hybrid language.
///
/// `Neg` is the paraconsistent negation. Classical negation `~φ` is not a
/// constructor of its own: it is the abbreviation `φ -> false`, and `true` is
/// `false -> false`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Prop(String),
    Nom(String),
    Bottom,
    Neg(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    At(String, Box<Formula>),
    Diamond(Box<Program>, Box<Formula>),
    Box(Box<Program>, Box<Formula>),
}

/// A program built from atomic actions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Program {
    Atomic(String),
    Seq(Box<Program>, Box<Program>),
    Choice(Box<Program>, Box<Program>),
    Star(Box<Program>),
    Test(Box<Formula>),
}

impl Formula {
    pub fn prop(name: impl Into<String>) -> Self {
        Formula::Prop(name.into())
    }

    pub fn nom(name: impl Into<String>) -> Self {
        Formula::Nom(name.into())
    }

    pub fn top() -> Self {
        Formula::Bottom.not_classical()
    }

    /// Paraconsistent negation `!self`.
    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Self {
        Formula::Neg(Box::new(self))
    }

    /// Classical negation `~self`, i.e. `self -> false`.
    pub fn not_classical(self) -> Self {
        self.implies(Formula::Bottom)
    }

    pub fn and(self, other: Formula) -> Self {
        Formula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Formula) -> Self {
        Formula::Or(Box::new(self), Box::new(other))
    }

    pub fn implies(self, other: Formula) -> Self {
        Formula::Implies(Box::new(self), Box::new(other))
    }

    /// `(self -> other) & (other -> self)`.
    pub fn iff(self, other: Formula) -> Self {
        self.clone()
            .implies(other.clone())
            .and(other.implies(self))
    }

    pub fn at(nominal: impl Into<String>, body: Formula) -> Self {
        Formula::At(nominal.into(), Box::new(body))
    }

    pub fn diamond(program: Program, body: Formula) -> Self {
        Formula::Diamond(Box::new(program), Box::new(body))
    }

    pub fn boxed(program: Program, body: Formula) -> Self {
        Formula::Box(Box::new(program), Box::new(body))
    }

    /// Returns the body of a classical negation `φ -> false`.
    pub fn as_classical_negation(&self) -> Option<&Formula> {
        match self {
            Formula::Implies(body, rhs) if **rhs == Formula::Bottom => Some(body),
            _ => None,
        }
    }

    pub fn is_top(&self) -> bool {
        self.as_classical_negation() == Some(&Formula::Bottom)
    }

    pub fn is_satisfaction_statement(&self) -> bool {
        matches!(self, Formula::At(..))
    }

    /// Nesting depth; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Prop(_) | Formula::Nom(_) | Formula::Bottom => 0,
            Formula::Neg(f) | Formula::At(_, f) => 1 + f.depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.depth().max(b.depth())
            }
            Formula::Diamond(p, f) | Formula::Box(p, f) => 1 + p.depth().max(f.depth()),
        }
    }

    /// True when every modality is applied to an atomic action.
    pub fn is_hybrid(&self) -> bool {
        match self {
            Formula::Prop(_) | Formula::Nom(_) | Formula::Bottom => true,
            Formula::Neg(f) | Formula::At(_, f) => f.is_hybrid(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.is_hybrid() && b.is_hybrid()
            }
            Formula::Diamond(p, f) | Formula::Box(p, f) => {
                matches!(**p, Program::Atomic(_)) && f.is_hybrid()
            }
        }
    }

    pub fn nominals(&self) -> BTreeSet<String> {
        let mut sig = Signature::default();
        sig.collect_formula(self);
        sig.nominals
    }

    pub fn actions(&self) -> BTreeSet<String> {
        let mut sig = Signature::default();
        sig.collect_formula(self);
        sig.actions
    }

    pub fn propositions(&self) -> BTreeSet<String> {
        let mut sig = Signature::default();
        sig.collect_formula(self);
        sig.propositions
    }

    pub fn signature(&self) -> Signature {
        let mut sig = Signature::default();
        sig.collect_formula(self);
        sig
    }
}

impl Program {
    pub fn atomic(name: impl Into<String>) -> Self {
        Program::Atomic(name.into())
    }

    pub fn seq(self, other: Program) -> Self {
        Program::Seq(Box::new(self), Box::new(other))
    }

    pub fn choice(self, other: Program) -> Self {
        Program::Choice(Box::new(self), Box::new(other))
    }

    pub fn star(self) -> Self {
        Program::Star(Box::new(self))
    }

    pub fn test(formula: Formula) -> Self {
        Program::Test(Box::new(formula))
    }

    pub fn depth(&self) -> usize {
        match self {
            Program::Atomic(_) => 0,
            Program::Seq(a, b) | Program::Choice(a, b) => 1 + a.depth().max(b.depth()),
            Program::Star(a) => 1 + a.depth(),
            Program::Test(f) => 1 + f.depth(),
        }
    }
}

/// All nominal names occurring in `f`.
pub fn nominals_of(f: &Formula) -> BTreeSet<String> {
    f.nominals()
}

/// All atomic action names occurring in `f`, including inside tests.
pub fn actions_of(f: &Formula) -> BTreeSet<String> {
    f.actions()
}

/// A formula or its minus-form. The minus marker only ever sits at top level.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedFormula {
    pub formula: Formula,
    pub minus: bool,
}

impl SignedFormula {
    pub fn plain(formula: Formula) -> Self {
        SignedFormula {
            formula,
            minus: false,
        }
    }

    pub fn minus(formula: Formula) -> Self {
        SignedFormula {
            formula,
            minus: true,
        }
    }
}

impl From<Formula> for SignedFormula {
    fn from(formula: Formula) -> Self {
        SignedFormula::plain(formula)
    }
}

impl fmt::Display for SignedFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.minus {
            write!(f, "({})-", self.formula)
        } else {
            write!(f, "{}", self.formula)
        }
    }
}

/// Propositions, nominals and actions in use.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    pub propositions: BTreeSet<String>,
    pub nominals: BTreeSet<String>,
    pub actions: BTreeSet<String>,
}

impl Signature {
    pub fn of_formulas<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> Self {
        let mut sig = Signature::default();
        for f in formulas {
            sig.collect_formula(f);
        }
        sig
    }

    pub fn merge(&mut self, other: &Signature) {
        self.propositions.extend(other.propositions.iter().cloned());
        self.nominals.extend(other.nominals.iter().cloned());
        self.actions.extend(other.actions.iter().cloned());
    }

    pub fn collect_formula(&mut self, f: &Formula) {
        match f {
            Formula::Prop(p) => {
                self.propositions.insert(p.clone());
            }
            Formula::Nom(i) => {
                self.nominals.insert(i.clone());
            }
            Formula::Bottom => {}
            Formula::Neg(g) => self.collect_formula(g),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                self.collect_formula(a);
                self.collect_formula(b);
            }
            Formula::At(i, g) => {
                self.nominals.insert(i.clone());
                self.collect_formula(g);
            }
            Formula::Diamond(p, g) | Formula::Box(p, g) => {
                self.collect_program(p);
                self.collect_formula(g);
            }
        }
    }

    pub fn collect_program(&mut self, p: &Program) {
        match p {
            Program::Atomic(a) => {
                self.actions.insert(a.clone());
            }
            Program::Seq(a, b) | Program::Choice(a, b) => {
                self.collect_program(a);
                self.collect_program(b);
            }
            Program::Star(a) => self.collect_program(a),
            Program::Test(f) => self.collect_formula(f),
        }
    }
}
