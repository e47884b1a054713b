//! Reading a model off a terminal branch.

use std::collections::HashMap;

use super::arena::{Arena, NomId, Node};
use super::branch::{Branch, Inclusion};
use super::rules::relational_literal;
use crate::semantics::{Model, Relation, WorldSet};
use crate::syntax::Signature;

pub(crate) struct Extracted {
    pub model: Model,
    /// The nominals that survive as worlds, with their world.
    pub world_of: HashMap<NomId, usize>,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

pub(crate) fn extract(arena: &Arena, br: &Branch, inc: &Inclusion, sig: &Signature) -> Extracted {
    let units = inc.unblocked();
    let pos: HashMap<NomId, usize> = units.iter().enumerate().map(|(k, &n)| (n, k)).collect();

    let mut parent: Vec<usize> = (0..units.len()).collect();
    for (k, &i) in units.iter().enumerate() {
        for s in br.at(i) {
            if let (false, Node::Nom(j)) = (s.minus, arena.node(s.body)) {
                if let Some(&kj) = pos.get(&j) {
                    let (a, b) = (find(&mut parent, k), find(&mut parent, kj));
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut class_of_root: HashMap<usize, usize> = HashMap::new();
    let world: Vec<usize> = (0..units.len())
        .map(|k| {
            let r = find(&mut parent, k);
            let next = class_of_root.len();
            *class_of_root.entry(r).or_insert(next)
        })
        .collect();
    let n = class_of_root.len().max(1);

    let mut model = Model::with_size(n).expect("at least one world");
    model.declare(sig);
    let targets = |k: NomId| -> Vec<usize> {
        match pos.get(&k) {
            Some(&kk) => vec![world[kk]],
            None => units
                .iter()
                .enumerate()
                .filter(|&(_, &j)| inc.included(k, j))
                .map(|(kj, _)| world[kj])
                .collect(),
        }
    };
    let mut pos_rel: HashMap<&str, Relation> = HashMap::new();
    let mut negc_rel: HashMap<&str, Relation> = HashMap::new();
    let mut pos_val: HashMap<&str, WorldSet> = HashMap::new();
    let mut neg_val: HashMap<&str, WorldSet> = HashMap::new();
    for a in &sig.actions {
        pos_rel.insert(a, Relation::empty(n));
        negc_rel.insert(a, Relation::empty(n));
    }
    for p in &sig.propositions {
        pos_val.insert(p, WorldSet::empty(n));
        neg_val.insert(p, WorldSet::empty(n));
    }
    for (k, &i) in units.iter().enumerate() {
        let w = world[k];
        for s in br.at(i).filter(|s| !s.minus) {
            if let Some((a, negative, j)) = relational_literal(arena, s.body) {
                let name = arena.action_name(a);
                let table = if negative { &mut negc_rel } else { &mut pos_rel };
                let rel = table.entry(name).or_insert_with(|| Relation::empty(n));
                for v in targets(j) {
                    rel.insert(w, v);
                }
                continue;
            }
            match arena.node(s.body) {
                Node::Prop(p) => {
                    let name = arena.prop_name(p);
                    pos_val.entry(name).or_insert_with(|| WorldSet::empty(n)).insert(w);
                }
                Node::Neg(x) => {
                    if let Node::Prop(p) = arena.node(x) {
                        let name = arena.prop_name(p);
                        neg_val.entry(name).or_insert_with(|| WorldSet::empty(n)).insert(w);
                    }
                }
                _ => {}
            }
        }
    }
    for (a, rel) in pos_rel {
        let neg = negc_rel
            .remove(a)
            .unwrap_or_else(|| Relation::empty(n))
            .complement();
        model.set_relations(a, rel, neg);
    }
    for (a, negc) in negc_rel {
        model.set_relations(a, Relation::empty(n), negc.complement());
    }
    for (p, pos) in pos_val {
        let neg = neg_val.remove(p).unwrap_or_else(|| WorldSet::empty(n));
        model.set_valuation(p, pos, neg);
    }
    for (p, neg) in neg_val {
        model.set_valuation(p, WorldSet::empty(n), neg);
    }
    let mut world_of = HashMap::new();
    for (k, &i) in units.iter().enumerate() {
        model
            .name(arena.nominal_name(i), world[k])
            .expect("world in range");
        world_of.insert(i, world[k]);
    }
    Extracted { model, world_of }
}
