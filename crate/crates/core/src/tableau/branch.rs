//! Branch state: statements, nominal bookkeeping and rule agendas.

use std::collections::{HashMap, HashSet, VecDeque};

use smallvec::{smallvec, SmallVec};

use super::arena::{FId, NomId};
use super::rules::{Expansion, Stmt};
use super::BranchStatus;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct NomInfo {
    /// Index of the first statement mentioning the nominal.
    pub first: usize,
    /// The premise nominal of the existential rule that created it.
    pub parent: Option<NomId>,
}

impl NomInfo {
    /// Root nominals and those introduced for minus roots are never blocked.
    pub fn self_generated(&self) -> bool {
        self.parent.is_none()
    }
}

/// The split decisions a statement depends on, as a set of depths along
/// the branch.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub(crate) struct Dep(SmallVec<[u64; 2]>);

impl Dep {
    /// Every decision above depth `depth`.
    pub fn all(depth: usize) -> Self {
        let mut dep = Dep(smallvec![0; depth.div_ceil(64)]);
        for d in 0..depth {
            dep.insert(d);
        }
        dep
    }

    pub fn insert(&mut self, d: usize) {
        if self.0.len() <= d / 64 {
            self.0.resize(d / 64 + 1, 0);
        }
        self.0[d / 64] |= 1 << (d % 64);
    }

    pub fn remove(&mut self, d: usize) {
        if let Some(w) = self.0.get_mut(d / 64) {
            *w &= !(1 << (d % 64));
        }
    }

    pub fn contains(&self, d: usize) -> bool {
        self.0.get(d / 64).is_some_and(|w| w & (1 << (d % 64)) != 0)
    }

    pub fn union_with(&mut self, other: &Dep) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), 0);
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    pub fn union(&self, other: &Dep) -> Dep {
        let mut out = self.clone();
        out.union_with(other);
        out
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Pending {
    pub stmt: usize,
    pub rule: String,
    pub expansion: Expansion,
}

#[derive(Debug, Clone)]
pub(crate) struct Branch {
    pub id: usize,
    pub stmts: Vec<Stmt>,
    pub deps: Vec<Dep>,
    index: HashMap<Stmt, usize>,
    by_nom: HashMap<NomId, Vec<usize>>,
    pub noms: HashMap<NomId, NomInfo>,
    /// The decisions the existence of each nominal depends on.
    pub nom_deps: HashMap<NomId, Dep>,
    pub nom_order: Vec<NomId>,
    introduced: HashSet<NomId>,
    pub applied: HashSet<usize>,
    pub linear: VecDeque<Pending>,
    pub split: VecDeque<Pending>,
    pub existential: Vec<Pending>,
    pub closed: Option<usize>,
    /// The decisions the clash depends on, once closed.
    pub clash: Dep,
    /// Number of splits above this branch.
    pub depth: usize,
    /// Set once some star statement can no longer be fulfilled anywhere.
    pub doomed: Option<BranchStatus>,
}

impl Branch {
    pub fn new(id: usize) -> Self {
        Branch {
            id,
            stmts: Vec::new(),
            deps: Vec::new(),
            index: HashMap::new(),
            by_nom: HashMap::new(),
            noms: HashMap::new(),
            nom_deps: HashMap::new(),
            nom_order: Vec::new(),
            introduced: HashSet::new(),
            applied: HashSet::new(),
            linear: VecDeque::new(),
            split: VecDeque::new(),
            existential: Vec::new(),
            closed: None,
            clash: Dep::default(),
            depth: 0,
            doomed: None,
        }
    }

    pub fn contains(&self, s: &Stmt) -> bool {
        self.index.contains_key(s)
    }

    pub fn dep(&self, s: &Stmt) -> Option<&Dep> {
        self.index.get(s).map(|&idx| &self.deps[idx])
    }

    pub fn register(&mut self, n: NomId, parent: Option<NomId>, dep: &Dep) {
        if self.noms.contains_key(&n) {
            return;
        }
        self.nom_deps.insert(n, dep.clone());
        self.noms.insert(
            n,
            NomInfo {
                first: self.stmts.len(),
                parent,
            },
        );
        self.nom_order.push(n);
    }

    /// Marks `n` as having received its `Id` and `@I` instances; returns
    /// false when that already happened.
    pub fn introduce(&mut self, n: NomId) -> bool {
        self.introduced.insert(n)
    }

    pub fn push(&mut self, s: Stmt, dep: Dep) -> usize {
        let idx = self.stmts.len();
        self.stmts.push(s);
        self.deps.push(dep);
        self.index.insert(s, idx);
        self.by_nom.entry(s.nom).or_default().push(idx);
        idx
    }

    /// Statements prefixed by `n`, in insertion order.
    pub fn at(&self, n: NomId) -> impl Iterator<Item = Stmt> + '_ {
        self.by_nom
            .get(&n)
            .into_iter()
            .flatten()
            .map(move |&idx| self.stmts[idx])
    }

    /// The decorated closure statements at every nominal, in first-occurrence
    /// order.
    pub fn decorations(&self, in_closure: impl Fn(FId) -> bool) -> Vec<(NomId, HashSet<(FId, bool)>)> {
        self.nom_order
            .iter()
            .map(|&n| {
                let set = self
                    .at(n)
                    .filter(|s| in_closure(s.body))
                    .map(|s| (s.body, s.minus))
                    .collect();
                (n, set)
            })
            .collect()
    }
}

/// The inclusion relation between the nominals of a branch at one moment.
pub(crate) struct Inclusion {
    sets: Vec<(NomId, HashSet<(FId, bool)>)>,
    position: HashMap<NomId, usize>,
    self_generated: HashSet<NomId>,
}

impl Inclusion {
    pub fn new(branch: &Branch, in_closure: impl Fn(FId) -> bool) -> Self {
        let sets = branch.decorations(in_closure);
        let position = sets.iter().enumerate().map(|(k, (n, _))| (*n, k)).collect();
        let self_generated = branch
            .noms
            .iter()
            .filter(|(_, info)| info.self_generated())
            .map(|(n, _)| *n)
            .collect();
        Inclusion {
            sets,
            position,
            self_generated,
        }
    }

    /// `i` is included in `j`: every decorated closure statement at `i` is
    /// also at `j`, and `j` occurs first.
    pub fn included(&self, i: NomId, j: NomId) -> bool {
        if self.self_generated.contains(&i) {
            return false;
        }
        let (Some(&pi), Some(&pj)) = (self.position.get(&i), self.position.get(&j)) else {
            return false;
        };
        pj < pi && self.sets[pi].1.is_subset(&self.sets[pj].1)
    }

    /// The earliest nominal that includes `i`, if any.
    pub fn blocker(&self, i: NomId) -> Option<NomId> {
        if self.self_generated.contains(&i) {
            return None;
        }
        let pi = *self.position.get(&i)?;
        self.sets[..pi]
            .iter()
            .find(|(_, set)| self.sets[pi].1.is_subset(set))
            .map(|(n, _)| *n)
    }

    pub fn blocked(&self, i: NomId) -> bool {
        self.blocker(i).is_some()
    }

    /// Nominals included in no other nominal.
    pub fn unblocked(&self) -> Vec<NomId> {
        self.sets
            .iter()
            .map(|(n, _)| *n)
            .filter(|&n| !self.blocked(n))
            .collect()
    }
}
