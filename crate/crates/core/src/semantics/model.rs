use std::collections::BTreeMap;

use super::sets::{Relation, WorldSet};
use super::SemanticsError;
use crate::syntax::Signature;

/// Positive and negative accessibility for one atomic action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionRelations {
    pub pos: Relation,
    pub neg: Relation,
}

/// Positive and negative valuation for one proposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropValuation {
    pub pos: WorldSet,
    pub neg: WorldSet,
}

/// A finite two-relation Kripke model.
///
/// Worlds are addressed by index; `world_names` holds their display names.
/// Names are kept in sorted maps so that iteration order, and hence printed
/// output, is canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    world_names: Vec<String>,
    actions: BTreeMap<String, ActionRelations>,
    props: BTreeMap<String, PropValuation>,
    naming: BTreeMap<String, usize>,
}

impl Model {
    pub fn new(world_names: Vec<String>) -> Result<Self, SemanticsError> {
        if world_names.is_empty() {
            return Err(SemanticsError::EmptyDomain);
        }
        for (i, w) in world_names.iter().enumerate() {
            if world_names[..i].contains(w) {
                return Err(SemanticsError::DuplicateWorld(w.clone()));
            }
        }
        Ok(Model {
            world_names,
            actions: BTreeMap::new(),
            props: BTreeMap::new(),
            naming: BTreeMap::new(),
        })
    }

    /// A model with worlds `w0 .. w{n-1}`.
    pub fn with_size(n: usize) -> Result<Self, SemanticsError> {
        Model::new((0..n).map(|i| format!("w{i}")).collect())
    }

    pub fn size(&self) -> usize {
        self.world_names.len()
    }

    pub fn world_names(&self) -> &[String] {
        &self.world_names
    }

    pub fn world_name(&self, w: usize) -> &str {
        &self.world_names[w]
    }

    pub fn world_index(&self, name: &str) -> Result<usize, SemanticsError> {
        self.world_names
            .iter()
            .position(|w| w == name)
            .ok_or_else(|| SemanticsError::UnknownWorld(name.to_string()))
    }

    pub fn all_worlds(&self) -> WorldSet {
        WorldSet::full(self.size())
    }

    /// Makes every symbol of `sig` known to the model, with empty extensions.
    /// Nominals cannot be declared without a world; they are left alone.
    pub fn declare(&mut self, sig: &Signature) {
        for a in &sig.actions {
            self.declare_action(a);
        }
        for p in &sig.propositions {
            self.declare_prop(p);
        }
    }

    pub fn declare_action(&mut self, a: &str) -> &mut ActionRelations {
        let n = self.size();
        self.actions
            .entry(a.to_string())
            .or_insert_with(|| ActionRelations {
                pos: Relation::empty(n),
                neg: Relation::empty(n),
            })
    }

    pub fn declare_prop(&mut self, p: &str) -> &mut PropValuation {
        let n = self.size();
        self.props.entry(p.to_string()).or_insert_with(|| PropValuation {
            pos: WorldSet::empty(n),
            neg: WorldSet::empty(n),
        })
    }

    pub fn add_pos_edge(&mut self, a: &str, from: usize, to: usize) {
        self.declare_action(a).pos.insert(from, to);
    }

    pub fn add_neg_edge(&mut self, a: &str, from: usize, to: usize) {
        self.declare_action(a).neg.insert(from, to);
    }

    pub fn set_relations(&mut self, a: &str, pos: Relation, neg: Relation) {
        let slot = self.declare_action(a);
        slot.pos = pos;
        slot.neg = neg;
    }

    pub fn add_pos_val(&mut self, p: &str, w: usize) {
        self.declare_prop(p).pos.insert(w);
    }

    pub fn add_neg_val(&mut self, p: &str, w: usize) {
        self.declare_prop(p).neg.insert(w);
    }

    pub fn set_valuation(&mut self, p: &str, pos: WorldSet, neg: WorldSet) {
        let slot = self.declare_prop(p);
        slot.pos = pos;
        slot.neg = neg;
    }

    pub fn name(&mut self, nominal: &str, w: usize) -> Result<(), SemanticsError> {
        if w >= self.size() {
            return Err(SemanticsError::UnknownWorld(format!("#{w}")));
        }
        self.naming.insert(nominal.to_string(), w);
        Ok(())
    }

    pub fn unname(&mut self, nominal: &str) {
        self.naming.remove(nominal);
    }

    pub fn action(&self, a: &str) -> Result<&ActionRelations, SemanticsError> {
        self.actions
            .get(a)
            .ok_or_else(|| SemanticsError::UnknownAction(a.to_string()))
    }

    pub fn prop(&self, p: &str) -> Result<&PropValuation, SemanticsError> {
        self.props
            .get(p)
            .ok_or_else(|| SemanticsError::UnknownProposition(p.to_string()))
    }

    pub fn named(&self, i: &str) -> Result<usize, SemanticsError> {
        self.naming
            .get(i)
            .copied()
            .ok_or_else(|| SemanticsError::UnknownNominal(i.to_string()))
    }

    pub fn actions(&self) -> impl Iterator<Item = (&str, &ActionRelations)> {
        self.actions.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn props(&self) -> impl Iterator<Item = (&str, &PropValuation)> {
        self.props.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn naming(&self) -> impl Iterator<Item = (&str, usize)> {
        self.naming.iter().map(|(k, &v)| (k.as_str(), v))
    }

    /// The nominals naming `w`, in sorted order.
    pub fn names_of(&self, w: usize) -> Vec<&str> {
        self.naming
            .iter()
            .filter(|(_, &v)| v == w)
            .map(|(k, _)| k.as_str())
            .collect()
    }

    pub fn signature(&self) -> Signature {
        Signature {
            propositions: self.props.keys().cloned().collect(),
            nominals: self.naming.keys().cloned().collect(),
            actions: self.actions.keys().cloned().collect(),
        }
    }

    /// True when every world is named by some nominal.
    pub fn is_named(&self) -> bool {
        (0..self.size()).all(|w| self.naming.values().any(|&v| v == w))
    }

    /// Drops every nominal for which `keep` is false.
    pub fn retain_nominals(&mut self, mut keep: impl FnMut(&str) -> bool) {
        self.naming.retain(|k, _| keep(k));
    }
}
