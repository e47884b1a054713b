//! Systematic tableau construction.

use std::collections::{HashSet, VecDeque};
use std::time::Instant;

use super::arena::{Arena, FId, Node, PNode};
use super::branch::{Branch, Dep, Inclusion, Pending};
use super::extract::{extract, Extracted};
use super::rules::{destructive, is_literal, relational_literal, Expansion, Stmt};
use super::{BranchStatus, Detection, IgnorableKind, ProverConfig, Stats, TableauError};
use crate::semantics::globally_satisfies;
use crate::syntax::{closure_of_roots, Formula, Program, Signature, SignedFormula};

/// Why the construction stopped early.
pub(crate) enum Stop {
    Exhausted,
    Failed(TableauError),
}

/// The premises of a non-destructive rule instance, for the transcript.
#[derive(Clone, Copy)]
struct Origin {
    rule: &'static str,
    premises: [Option<Stmt>; 2],
}

impl Origin {
    fn new(rule: &'static str, a: Option<Stmt>, b: Option<Stmt>) -> Self {
        Origin {
            rule,
            premises: [a, b],
        }
    }
}

pub(crate) enum Terminal {
    /// Closed by a clash that depends on the given decisions.
    Closed(Dep),
    Ignorable(BranchStatus),
    Open(Extracted),
}

/// A split on the current path. While `right` is present the left side is
/// being explored; afterwards `left` holds the decisions its closure used.
pub(crate) struct Frame {
    pub depth: usize,
    pub right: Option<Branch>,
    pub left: Dep,
}

type Work = (Stmt, Option<Origin>, Dep);

pub(crate) struct Prover<'c> {
    pub arena: Arena,
    config: &'c ProverConfig,
    global_roots: Vec<FId>,
    closure: HashSet<FId>,
    signature: Signature,
    pub stats: Stats,
    pub transcript: Vec<String>,
    next_branch: usize,
    started: Instant,
}

impl<'c> Prover<'c> {
    pub fn new(roots: &[SignedFormula], config: &'c ProverConfig) -> Self {
        let mut arena = Arena::default();
        let mut closure = HashSet::new();
        for f in tableau_closure(roots) {
            closure.insert(arena.intern(&f));
        }
        let signature = Signature::of_formulas(roots.iter().map(|r| &r.formula));
        Prover {
            arena,
            config,
            global_roots: Vec::new(),
            closure,
            signature,
            stats: Stats::default(),
            transcript: Vec::new(),
            next_branch: 1,
            started: Instant::now(),
        }
    }

    /// Members of the closure and their `!`-forms.
    pub fn in_clx(&self, f: FId) -> bool {
        self.closure.contains(&f)
            || matches!(self.arena.node(f), Node::Neg(g) if self.closure.contains(&g))
    }

    fn clx_size(&self) -> usize {
        let negs = self
            .closure
            .iter()
            .filter(|&&f| matches!(self.arena.node(f), Node::Neg(_)))
            .count();
        self.closure.len() + negs
    }

    pub fn render(&self, s: &Stmt) -> String {
        let f = Formula::at(self.arena.nominal_name(s.nom), self.arena.formula(s.body));
        if s.minus {
            format!("({f})-")
        } else {
            f.to_string()
        }
    }

    pub fn signed(&self, s: &Stmt) -> SignedFormula {
        SignedFormula {
            formula: Formula::at(self.arena.nominal_name(s.nom), self.arena.formula(s.body)),
            minus: s.minus,
        }
    }

    fn log(&mut self, line: impl FnOnce(&Self) -> String) {
        if self.config.transcript {
            let l = line(self);
            self.transcript.push(l);
        }
    }

    pub fn backjumping(&self) -> bool {
        self.config.backjumping
    }

    pub fn note_pruned(&mut self, id: usize) {
        self.log(|_| format!("b{id} skipped: the closure above does not depend on it"));
    }

    fn step(&mut self) -> Result<(), Stop> {
        self.stats.steps += 1;
        if self.stats.steps > self.config.max_steps {
            return Err(Stop::Exhausted);
        }
        if let Some(limit) = self.config.timeout {
            if self.stats.steps.is_multiple_of(256) && self.started.elapsed() > limit {
                return Err(Stop::Exhausted);
            }
        }
        Ok(())
    }

    /// The initial branch for the given roots.
    pub fn initialize(&mut self, roots: &[SignedFormula]) -> Result<Branch, Stop> {
        let mut br = Branch::new(0);
        self.stats.branches = 1;
        let mut root_noms = Vec::new();
        let mut statements = Vec::new();
        let mut minus_roots = Vec::new();
        for r in roots {
            let f = self.arena.intern(&r.formula);
            self.arena.nominals_in(f, &mut root_noms);
            match (self.arena.node(f), r.minus) {
                (Node::At(i, g), m) => statements.push(Stmt::with(i, g, m)),
                (_, false) => self.global_roots.push(f),
                (_, true) => minus_roots.push(f),
            }
        }
        let mut seen = HashSet::new();
        let mut first: Vec<Work> = Vec::new();
        for n in root_noms {
            if seen.insert(n) {
                let id = self.arena.nom(n);
                first.push((
                    Stmt::plain(n, id),
                    Some(Origin::new("Id", None, None)),
                    Dep::default(),
                ));
            }
        }
        first.extend(statements.into_iter().map(|s| (s, None, Dep::default())));
        self.insert(&mut br, first)?;
        for f in minus_roots {
            let t = self.arena.fresh_nominal();
            self.stats.fresh_nominals += 1;
            let s = Stmt::minus(t, f);
            self.step()?;
            self.log(|p| {
                let body = p.arena.formula(f);
                format!("b0 (@I-) ({body})- => {}", p.render(&s))
            });
            self.insert(&mut br, vec![(s, None, Dep::default())])?;
        }
        if br.nom_order.is_empty() && !self.global_roots.is_empty() {
            let t = self.arena.fresh_nominal();
            self.stats.fresh_nominals += 1;
            let id = self.arena.nom(t);
            self.insert(
                &mut br,
                vec![(
                    Stmt::plain(t, id),
                    Some(Origin::new("Id", None, None)),
                    Dep::default(),
                )],
            )?;
        }
        Ok(br)
    }

    /// The decisions behind a clash involving `s`, if `s` clashes.
    fn clash(&self, br: &Branch, s: &Stmt, dep: &Dep) -> Option<Dep> {
        if let Some(other) = br.dep(&Stmt::with(s.nom, s.body, !s.minus)) {
            return Some(dep.union(other));
        }
        let clashes = match (self.arena.node(s.body), s.minus) {
            (Node::Bot, false) => true,
            (Node::Neg(x), m) => match self.arena.node(x) {
                Node::Nom(j) => !m && j == s.nom,
                Node::Bot => m,
                _ => false,
            },
            _ => false,
        };
        clashes.then(|| dep.clone())
    }

    /// Adds statements and saturates under the non-destructive rules.
    fn insert(&mut self, br: &mut Branch, first: Vec<Work>) -> Result<(), Stop> {
        let mut work: VecDeque<Work> = first.into();
        let mut noms = Vec::new();
        while let Some((s, origin, dep)) = work.pop_front() {
            if br.closed.is_some() {
                return Ok(());
            }
            if br.contains(&s) {
                continue;
            }
            noms.clear();
            noms.push(s.nom);
            self.arena.nominals_in(s.body, &mut noms);
            let mut new_noms = Vec::new();
            for &n in &noms {
                br.register(n, None, &dep);
                if br.introduce(n) {
                    new_noms.push(n);
                }
            }
            let idx = br.push(s, dep.clone());
            self.stats.max_branch_statements = self.stats.max_branch_statements.max(br.stmts.len());
            if let Some(o) = origin {
                self.step()?;
                self.log(|p| {
                    let premises: Vec<String> =
                        o.premises.iter().flatten().map(|q| p.render(q)).collect();
                    let mut line = format!("b{} ({})", br.id, o.rule);
                    if !premises.is_empty() {
                        line = format!("{line} {}", premises.join(", "));
                    }
                    format!("{line} => {}", p.render(&s))
                });
            }
            if let Some(clash) = self.clash(br, &s, &dep) {
                br.closed = Some(idx);
                br.clash = clash;
                self.log(|p| format!("b{} closed at {}", br.id, p.render(&s)));
                return Ok(());
            }
            if self.config.check_invariants {
                self.check_invariants(br, &s).map_err(Stop::Failed)?;
            }
            if br.doomed.is_none() {
                br.doomed = self.refused(br, &s);
            }
            if let Some((rule, expansion)) = destructive(&mut self.arena, s) {
                let pending = Pending {
                    stmt: idx,
                    rule,
                    expansion,
                };
                match pending.expansion {
                    Expansion::Linear(_) => br.linear.push_back(pending),
                    Expansion::Split(..) => br.split.push_back(pending),
                    Expansion::Existential(_) => br.existential.push(pending),
                }
            }
            for n in new_noms {
                let nd = br.nom_deps[&n].clone();
                let id = self.arena.nom(n);
                let id_stmt = Stmt::plain(n, id);
                work.push_back((id_stmt, Some(Origin::new("Id", None, None)), nd.clone()));
                for &g in &self.global_roots {
                    work.push_back((
                        Stmt::plain(n, g),
                        Some(Origin::new("@I", None, None)),
                        nd.clone(),
                    ));
                }
            }
            self.triggers(br, s, &dep, &mut work);
        }
        Ok(())
    }

    /// Instances of the non-destructive two-premise rules that involve `s`.
    fn triggers(&mut self, br: &Branch, s: Stmt, dep: &Dep, work: &mut VecDeque<Work>) {
        let i = s.nom;
        let arena = &mut self.arena;
        let others: Vec<Stmt> = br.at(i).filter(|t| *t != s).collect();
        let both = |t: &Stmt| dep.union(br.dep(t).expect("on the branch"));
        if !s.minus && is_literal(arena, s.body) {
            for t in &others {
                if let (false, Node::Nom(j)) = (t.minus, arena.node(t.body)) {
                    if j != i {
                        work.push_back((
                            Stmt::plain(j, s.body),
                            Some(Origin::new("Nom", Some(*t), Some(s))),
                            both(t),
                        ));
                    }
                }
            }
            if let Node::Nom(j) = arena.node(s.body) {
                if j != i {
                    for t in &others {
                        if !t.minus && is_literal(arena, t.body) {
                            work.push_back((
                                Stmt::plain(j, t.body),
                                Some(Origin::new("Nom", Some(s), Some(*t))),
                                both(t),
                            ));
                        }
                    }
                }
            }
        }
        let atomic = |arena: &Arena, p| match arena.prog(p) {
            PNode::Atom(a) => Some(a),
            _ => None,
        };
        // `s` as the modal premise.
        let modal = match (arena.node(s.body), s.minus) {
            (Node::Box(p, g), false) => atomic(arena, p).map(|a| (a, false, g, false, "[a]")),
            (Node::Dia(p, g), true) => atomic(arena, p).map(|a| (a, false, g, true, "<a>-")),
            (Node::Neg(x), m) => match arena.node(x) {
                Node::Dia(p, g) if !m => atomic(arena, p).map(|a| (a, true, g, false, "!<a>")),
                Node::Box(p, g) if m => atomic(arena, p).map(|a| (a, true, g, true, "![a]-")),
                _ => None,
            },
            _ => None,
        };
        if let Some((a, negative, g, m, rule)) = modal {
            let body = if negative { arena.neg(g) } else { g };
            for t in &others {
                if t.minus {
                    continue;
                }
                if let Some((b, neg_b, j)) = relational_literal(arena, t.body) {
                    if b == a && neg_b == negative {
                        work.push_back((
                            Stmt::with(j, body, m),
                            Some(Origin::new(rule, Some(s), Some(*t))),
                            both(t),
                        ));
                    }
                }
            }
        }
        // `s` as the relational premise.
        if s.minus {
            return;
        }
        let Some((a, negative, j)) = relational_literal(arena, s.body) else {
            return;
        };
        for t in &others {
            let hit = match (arena.node(t.body), t.minus, negative) {
                (Node::Box(p, g), false, false) if atomic(arena, p) == Some(a) => {
                    Some((g, false, "[a]"))
                }
                (Node::Dia(p, g), true, false) if atomic(arena, p) == Some(a) => {
                    Some((g, true, "<a>-"))
                }
                (Node::Neg(x), m, true) => match arena.node(x) {
                    Node::Dia(p, g) if !m && atomic(arena, p) == Some(a) => {
                        Some((arena.neg(g), false, "!<a>"))
                    }
                    Node::Box(p, g) if m && atomic(arena, p) == Some(a) => {
                        Some((arena.neg(g), true, "![a]-"))
                    }
                    _ => None,
                },
                _ => None,
            };
            if let Some((body, m, rule)) = hit {
                work.push_back((
                    Stmt::with(j, body, m),
                    Some(Origin::new(rule, Some(*t), Some(s))),
                    both(t),
                ));
            }
        }
    }

    fn check_invariants(&self, br: &Branch, s: &Stmt) -> Result<(), TableauError> {
        let exempt = !s.minus
            && (matches!(self.arena.node(s.body), Node::Nom(_))
                || relational_literal(&self.arena, s.body).is_some());
        if !exempt && !self.in_clx(s.body) {
            return Err(TableauError::InvariantViolation(format!(
                "{} lies outside the closure",
                self.render(s)
            )));
        }
        let count = br
            .at(s.nom)
            .filter(|t| relational_literal(&self.arena, t.body).is_none())
            .count();
        let bound = 2 * self.clx_size() + 2 * br.nom_order.len();
        if count > bound {
            return Err(TableauError::InvariantViolation(format!(
                "{} statements at {} exceed the bound {bound}",
                count,
                self.arena.nominal_name(s.nom)
            )));
        }
        if br.applied.contains(&usize::MAX) {
            return Err(TableauError::InvariantViolation("corrupt agenda".into()));
        }
        Ok(())
    }

    fn mark_applied(&mut self, br: &mut Branch, idx: usize) -> Result<(), Stop> {
        if !br.applied.insert(idx) && self.config.check_invariants {
            return Err(Stop::Failed(TableauError::InvariantViolation(format!(
                "destructive rule fired twice on {}",
                self.render(&br.stmts[idx])
            ))));
        }
        Ok(())
    }

    fn log_application(&mut self, br_id: usize, rule: &str, premise: Stmt, cols: &[&[Stmt]]) {
        self.log(|p| {
            let cols: Vec<String> = cols
                .iter()
                .map(|c| c.iter().map(|s| p.render(s)).collect::<Vec<_>>().join(", "))
                .collect();
            format!("b{br_id} ({rule}) {} => {}", p.render(&premise), cols.join(" | "))
        });
    }

    /// Runs one branch until it closes or becomes terminal. Right halves of
    /// splits are pushed onto `stack`.
    pub fn run_branch(&mut self, br: &mut Branch, stack: &mut Vec<Frame>) -> Result<Terminal, Stop> {
        loop {
            if br.closed.is_some() {
                self.stats.closed_branches += 1;
                return Ok(Terminal::Closed(br.clash.clone()));
            }
            if let Some(p) = br.linear.pop_front() {
                self.step()?;
                self.mark_applied(br, p.stmt)?;
                let Expansion::Linear(v) = p.expansion else { unreachable!() };
                let premise = br.stmts[p.stmt];
                let dep = br.deps[p.stmt].clone();
                self.log_application(br.id, &p.rule, premise, &[&v]);
                let first = v.into_iter().map(|s| (s, None, dep.clone())).collect();
                self.insert(br, first)?;
                continue;
            }
            if let Some(status) = br.doomed.clone() {
                self.stats.ignorable_branches += 1;
                self.log(|_| format!("b{} ignorable: eventuality refused", br.id));
                return Ok(Terminal::Ignorable(status));
            }
            if let Some(p) = br.split.pop_front() {
                self.step()?;
                self.mark_applied(br, p.stmt)?;
                let Expansion::Split(l, mut r) = p.expansion else { unreachable!() };
                if self.config.semantic_branching && l.len() == 1 {
                    let dual = Stmt::with(l[0].nom, l[0].body, !l[0].minus);
                    if !r.contains(&dual) {
                        r.insert(0, dual);
                    }
                }
                let premise = br.stmts[p.stmt];
                // Explore first the column that opens fewer star eventualities.
                let (l, r) = if self.eventualities(&r) < self.eventualities(&l) {
                    (r, l)
                } else {
                    (l, r)
                };
                let depth = br.depth;
                let mut dep = br.deps[p.stmt].clone();
                dep.insert(depth);
                br.depth += 1;
                let mut right = br.clone();
                right.id = self.next_branch;
                self.next_branch += 1;
                self.stats.branches += 1;
                self.log_application(br.id, &p.rule, premise, &[&l, &r]);
                self.log(|_| format!("b{} splits off b{}", br.id, right.id));
                self.insert(&mut right, r.into_iter().map(|s| (s, None, dep.clone())).collect())?;
                stack.push(Frame {
                    depth,
                    right: Some(right),
                    left: Dep::default(),
                });
                self.insert(br, l.into_iter().map(|s| (s, None, dep.clone())).collect())?;
                continue;
            }
            let inc = Inclusion::new(br, |f| self.in_clx(f));
            let ready = br
                .existential
                .iter()
                .position(|p| !inc.blocked(br.stmts[p.stmt].nom));
            let Some(k) = ready else {
                self.stats.blocked_existentials += br.existential.len();
                if !br.existential.is_empty() {
                    self.log(|p| {
                        let blocked: Vec<String> = br
                            .existential
                            .iter()
                            .map(|e| {
                                let s = br.stmts[e.stmt];
                                let by = inc.blocker(s.nom).expect("blocked");
                                format!("{} by {}", p.render(&s), p.arena.nominal_name(by))
                            })
                            .collect();
                        format!("b{} blocked {}", br.id, blocked.join("; "))
                    });
                }
                return self.classify(br, &inc);
            };
            let p = br.existential.remove(k);
            self.step()?;
            self.mark_applied(br, p.stmt)?;
            let Expansion::Existential(e) = p.expansion else { unreachable!() };
            let premise = br.stmts[p.stmt];
            let dep = br.deps[p.stmt].clone();
            let i = premise.nom;
            let t = self.arena.fresh_nominal();
            self.stats.fresh_nominals += 1;
            br.register(t, Some(i), &dep);
            let a = self.arena.mk_prog(PNode::Atom(e.action));
            let tn = self.arena.nom(t);
            let link = if e.negative {
                let nt = self.arena.neg(tn);
                let bx = self.arena.mk(Node::Box(a, nt));
                self.arena.neg(bx)
            } else {
                self.arena.mk(Node::Dia(a, tn))
            };
            let v = vec![Stmt::plain(i, link), Stmt::with(t, e.body, e.minus)];
            self.log_application(br.id, &p.rule, premise, &[&v]);
            let first = v.into_iter().map(|s| (s, None, dep.clone())).collect();
            self.insert(br, first)?;
        }
    }

    /// Status of a terminal branch that is not closed.
    fn classify(&mut self, br: &Branch, inc: &Inclusion) -> Result<Terminal, Stop> {
        if let Some(status) = self.uniform_ignorable(br) {
            self.stats.ignorable_branches += 1;
            self.log(|_| format!("b{} ignorable", br.id));
            return Ok(Terminal::Ignorable(status));
        }
        let extracted = extract(&self.arena, br, inc, &self.signature);
        for &i in extracted.world_of.keys() {
            for s in br.at(i) {
                let Some((kind, _)) = self.star_shape(&s) else {
                    continue;
                };
                let sf = self.signed(&s);
                let holds = globally_satisfies(&extracted.model, &sf)
                    .map_err(|e| Stop::Failed(TableauError::Semantics(e)))?;
                if !holds {
                    self.stats.ignorable_branches += 1;
                    self.log(|p| format!("b{} ignorable: {} unfulfilled", br.id, p.render(&s)));
                    return Ok(Terminal::Ignorable(BranchStatus::Ignorable {
                        kind,
                        formula: self.arena.formula(s.body),
                        witness: self.arena.nominal_name(i).to_string(),
                        detection: Detection::Unfulfilled,
                    }));
                }
            }
        }
        Ok(Terminal::Open(extracted))
    }

    /// The ignorable kind of a star statement, with the statement required
    /// at the same nominal for it to count as deferred.
    fn star_shape(&mut self, s: &Stmt) -> Option<(IgnorableKind, Stmt)> {
        let arena = &mut self.arena;
        let star = |arena: &Arena, p| matches!(arena.prog(p), PNode::Star(_));
        match (arena.node(s.body), s.minus) {
            (Node::Dia(p, g), false) if star(arena, p) => {
                Some((IgnorableKind::Diamond, Stmt::minus(s.nom, g)))
            }
            (Node::Box(p, g), true) if star(arena, p) => {
                Some((IgnorableKind::BoxMinus, Stmt::plain(s.nom, g)))
            }
            (Node::Neg(x), m) => match arena.node(x) {
                Node::Dia(p, g) if m && star(arena, p) => {
                    let ng = arena.neg(g);
                    Some((IgnorableKind::NegDiamondMinus, Stmt::plain(s.nom, ng)))
                }
                Node::Box(p, g) if !m && star(arena, p) => {
                    let ng = arena.neg(g);
                    Some((IgnorableKind::NegBox, Stmt::minus(s.nom, ng)))
                }
                _ => None,
            },
            _ => None,
        }
    }

    /// A star statement whose world-independent body is refused somewhere:
    /// every later fulfilment contradicts the refusal, so each extension of
    /// the branch closes or is uniformly ignorable.
    fn refused(&mut self, br: &Branch, s: &Stmt) -> Option<BranchStatus> {
        let status = |p: &Self, kind, carrier: &Stmt| BranchStatus::Ignorable {
            kind,
            formula: p.arena.formula(carrier.body),
            witness: p.arena.nominal_name(carrier.nom).to_string(),
            detection: Detection::Refused,
        };
        if let Some((kind, need)) = self.star_shape(s) {
            if !world_independent(&self.arena, need.body) {
                return None;
            }
            let found = br
                .nom_order
                .iter()
                .any(|&k| br.contains(&Stmt::with(k, need.body, need.minus)));
            return found.then(|| status(self, kind, s));
        }
        if !world_independent(&self.arena, s.body) {
            return None;
        }
        for idx in 0..br.stmts.len() {
            let c = br.stmts[idx];
            if let Some((kind, need)) = self.star_shape(&c) {
                if need.body == s.body && need.minus == s.minus {
                    return Some(status(self, kind, &c));
                }
            }
        }
        None
    }

    fn eventualities(&mut self, col: &[Stmt]) -> usize {
        col.iter().filter(|s| self.star_shape(s).is_some()).count()
    }

    /// The four ignorable types: some star statement occurs, and at every
    /// nominal carrying it the immediate fulfilment is refused.
    fn uniform_ignorable(&mut self, br: &Branch) -> Option<BranchStatus> {
        let mut seen = HashSet::new();
        for idx in 0..br.stmts.len() {
            let s = br.stmts[idx];
            if !seen.insert((s.body, s.minus)) {
                continue;
            }
            let Some((kind, _)) = self.star_shape(&s) else {
                continue;
            };
            let carriers: Vec<Stmt> = br
                .stmts
                .iter()
                .filter(|t| t.body == s.body && t.minus == s.minus)
                .copied()
                .collect();
            let all_deferred = carriers.iter().all(|t| {
                let (_, need) = self.star_shape(t).expect("same shape");
                br.contains(&need)
            });
            if all_deferred {
                return Some(BranchStatus::Ignorable {
                    kind,
                    formula: self.arena.formula(s.body),
                    witness: self.arena.nominal_name(s.nom).to_string(),
                    detection: Detection::Uniform,
                });
            }
        }
        None
    }
}

/// Formulas built from satisfaction statements and constants, whose value
/// is the same at every world.
fn world_independent(arena: &Arena, f: FId) -> bool {
    match arena.node(f) {
        Node::At(..) | Node::Bot => true,
        Node::Neg(x) => world_independent(arena, x),
        Node::And(a, b) | Node::Or(a, b) | Node::Imp(a, b) => {
            world_independent(arena, a) && world_independent(arena, b)
        }
        _ => false,
    }
}

/// The Fischer-Ladner closure of the roots, extended with the conjunctions
/// and disjunctions produced by the rules for `+`.
pub(crate) fn tableau_closure(roots: &[SignedFormula]) -> HashSet<Formula> {
    let mut cl = closure_of_roots(roots);
    let mut extra = Vec::new();
    for f in &cl {
        match f {
            Formula::Box(p, g) | Formula::Diamond(p, g) => {
                if let Program::Choice(a, b) = &**p {
                    let diamond = matches!(f, Formula::Diamond(..));
                    let make = |q: &Program| {
                        if diamond {
                            Formula::diamond(q.clone(), (**g).clone())
                        } else {
                            Formula::boxed(q.clone(), (**g).clone())
                        }
                    };
                    let joined = if diamond {
                        make(a).or(make(b))
                    } else {
                        make(a).and(make(b))
                    };
                    extra.push(joined.clone().neg());
                    extra.push(joined);
                }
            }
            _ => {}
        }
    }
    cl.extend(extra);
    cl
}
