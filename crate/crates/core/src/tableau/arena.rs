//! Hash-consed formulas shared by all branches of one tableau.

use std::collections::HashMap;

use crate::syntax::{Formula, Program};

pub(crate) type FId = u32;
pub(crate) type PId = u32;
pub(crate) type NomId = u32;
pub(crate) type Sym = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Node {
    Prop(Sym),
    Nom(NomId),
    Bot,
    Neg(FId),
    And(FId, FId),
    Or(FId, FId),
    Imp(FId, FId),
    At(NomId, FId),
    Dia(PId, FId),
    Box(PId, FId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum PNode {
    Atom(Sym),
    Seq(PId, PId),
    Choice(PId, PId),
    Star(PId),
    Test(FId),
}

pub(crate) const FRESH_PREFIX: &str = "_t";

#[derive(Debug, Clone)]
struct NominalName {
    name: String,
}

/// Interning tables for formulas, programs and names.
#[derive(Debug, Default)]
pub(crate) struct Arena {
    nodes: Vec<Node>,
    node_ids: HashMap<Node, FId>,
    progs: Vec<PNode>,
    prog_ids: HashMap<PNode, PId>,
    props: Vec<String>,
    prop_ids: HashMap<String, Sym>,
    actions: Vec<String>,
    action_ids: HashMap<String, Sym>,
    nominals: Vec<NominalName>,
    nominal_ids: HashMap<String, NomId>,
    fresh_count: usize,
}

fn intern_name(names: &mut Vec<String>, ids: &mut HashMap<String, Sym>, name: &str) -> Sym {
    if let Some(&id) = ids.get(name) {
        return id;
    }
    names.push(name.to_string());
    let id = (names.len() - 1) as Sym;
    ids.insert(name.to_string(), id);
    id
}

impl Arena {
    pub fn node(&self, f: FId) -> Node {
        self.nodes[f as usize]
    }

    pub fn prog(&self, p: PId) -> PNode {
        self.progs[p as usize]
    }

    pub fn mk(&mut self, n: Node) -> FId {
        if let Some(&id) = self.node_ids.get(&n) {
            return id;
        }
        self.nodes.push(n);
        let id = (self.nodes.len() - 1) as FId;
        self.node_ids.insert(n, id);
        id
    }

    pub fn mk_prog(&mut self, p: PNode) -> PId {
        if let Some(&id) = self.prog_ids.get(&p) {
            return id;
        }
        self.progs.push(p);
        let id = (self.progs.len() - 1) as PId;
        self.prog_ids.insert(p, id);
        id
    }

    pub fn neg(&mut self, f: FId) -> FId {
        self.mk(Node::Neg(f))
    }

    pub fn nom(&mut self, i: NomId) -> FId {
        self.mk(Node::Nom(i))
    }

    pub fn nominal(&mut self, name: &str) -> NomId {
        if let Some(&id) = self.nominal_ids.get(name) {
            return id;
        }
        self.nominals.push(NominalName {
            name: name.to_string(),
        });
        let id = (self.nominals.len() - 1) as NomId;
        self.nominal_ids.insert(name.to_string(), id);
        id
    }

    /// A nominal outside the user namespace: user names start with a letter.
    pub fn fresh_nominal(&mut self) -> NomId {
        let name = format!("{FRESH_PREFIX}{}", self.fresh_count);
        self.fresh_count += 1;
        self.nominal(&name)
    }

    pub fn nominal_name(&self, i: NomId) -> &str {
        &self.nominals[i as usize].name
    }

    pub fn action_name(&self, a: Sym) -> &str {
        &self.actions[a as usize]
    }

    pub fn prop_name(&self, p: Sym) -> &str {
        &self.props[p as usize]
    }

    pub fn intern(&mut self, f: &Formula) -> FId {
        let n = match f {
            Formula::Prop(p) => Node::Prop(intern_name(&mut self.props, &mut self.prop_ids, p)),
            Formula::Nom(i) => Node::Nom(self.nominal(i)),
            Formula::Bottom => Node::Bot,
            Formula::Neg(g) => Node::Neg(self.intern(g)),
            Formula::And(a, b) => Node::And(self.intern(a), self.intern(b)),
            Formula::Or(a, b) => Node::Or(self.intern(a), self.intern(b)),
            Formula::Implies(a, b) => Node::Imp(self.intern(a), self.intern(b)),
            Formula::At(i, g) => Node::At(self.nominal(i), self.intern(g)),
            Formula::Diamond(p, g) => Node::Dia(self.intern_program(p), self.intern(g)),
            Formula::Box(p, g) => Node::Box(self.intern_program(p), self.intern(g)),
        };
        self.mk(n)
    }

    pub fn intern_program(&mut self, p: &Program) -> PId {
        let n = match p {
            Program::Atomic(a) => {
                PNode::Atom(intern_name(&mut self.actions, &mut self.action_ids, a))
            }
            Program::Seq(a, b) => PNode::Seq(self.intern_program(a), self.intern_program(b)),
            Program::Choice(a, b) => {
                PNode::Choice(self.intern_program(a), self.intern_program(b))
            }
            Program::Star(a) => PNode::Star(self.intern_program(a)),
            Program::Test(f) => PNode::Test(self.intern(f)),
        };
        self.mk_prog(n)
    }

    pub fn formula(&self, f: FId) -> Formula {
        match self.node(f) {
            Node::Prop(p) => Formula::prop(self.prop_name(p)),
            Node::Nom(i) => Formula::nom(self.nominal_name(i)),
            Node::Bot => Formula::Bottom,
            Node::Neg(g) => self.formula(g).neg(),
            Node::And(a, b) => self.formula(a).and(self.formula(b)),
            Node::Or(a, b) => self.formula(a).or(self.formula(b)),
            Node::Imp(a, b) => self.formula(a).implies(self.formula(b)),
            Node::At(i, g) => Formula::at(self.nominal_name(i), self.formula(g)),
            Node::Dia(p, g) => Formula::diamond(self.program(p), self.formula(g)),
            Node::Box(p, g) => Formula::boxed(self.program(p), self.formula(g)),
        }
    }

    pub fn program(&self, p: PId) -> Program {
        match self.prog(p) {
            PNode::Atom(a) => Program::atomic(self.action_name(a)),
            PNode::Seq(a, b) => self.program(a).seq(self.program(b)),
            PNode::Choice(a, b) => self.program(a).choice(self.program(b)),
            PNode::Star(a) => self.program(a).star(),
            PNode::Test(f) => Program::test(self.formula(f)),
        }
    }

    /// Every nominal occurring in `f`.
    pub fn nominals_in(&self, f: FId, out: &mut Vec<NomId>) {
        match self.node(f) {
            Node::Prop(_) | Node::Bot => {}
            Node::Nom(i) => out.push(i),
            Node::Neg(g) => self.nominals_in(g, out),
            Node::And(a, b) | Node::Or(a, b) | Node::Imp(a, b) => {
                self.nominals_in(a, out);
                self.nominals_in(b, out);
            }
            Node::At(i, g) => {
                out.push(i);
                self.nominals_in(g, out);
            }
            Node::Dia(p, g) | Node::Box(p, g) => {
                self.nominals_in_program(p, out);
                self.nominals_in(g, out);
            }
        }
    }

    fn nominals_in_program(&self, p: PId, out: &mut Vec<NomId>) {
        match self.prog(p) {
            PNode::Atom(_) => {}
            PNode::Seq(a, b) | PNode::Choice(a, b) => {
                self.nominals_in_program(a, out);
                self.nominals_in_program(b, out);
            }
            PNode::Star(a) => self.nominals_in_program(a, out),
            PNode::Test(f) => self.nominals_in(f, out),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    #[test]
    fn interning_is_structural() {
        let mut arena = Arena::default();
        let f = parse_formula("@'i <a*;q?>(p & !'j)").unwrap();
        let a = arena.intern(&f);
        let b = arena.intern(&f.clone());
        assert_eq!(a, b);
        assert_eq!(arena.formula(a), f);
        let mut noms = Vec::new();
        arena.nominals_in(a, &mut noms);
        assert_eq!(noms.len(), 2);
    }

    #[test]
    fn fresh_nominals_are_distinct() {
        let mut arena = Arena::default();
        let i = arena.nominal("i");
        let t = arena.fresh_nominal();
        let u = arena.fresh_nominal();
        assert!(t != u && t != i);
        assert_eq!(arena.nominal_name(t), "_t0");
    }
}
