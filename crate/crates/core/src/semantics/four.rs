//! The four-valued presentation of models.

use std::collections::BTreeMap;

use super::model::Model;
use super::sets::{Relation, WorldSet};
use super::SemanticsError;
use crate::fourval::{imp4, join_t, meet_t, neg4, FourValue};
use crate::syntax::{Formula, Program};

/// A 4-model: accessibility and valuation map into Belnap values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourModel {
    pub worlds: Vec<String>,
    /// `relations[a][w][v]` is the value of the `a`-transition from `w` to `v`.
    pub relations: BTreeMap<String, Vec<Vec<FourValue>>>,
    pub props: BTreeMap<String, Vec<FourValue>>,
    pub nominals: BTreeMap<String, Vec<FourValue>>,
}

impl FourModel {
    pub fn size(&self) -> usize {
        self.worlds.len()
    }

    /// The unique world at which `i` is true.
    pub fn named(&self, i: &str) -> Result<usize, SemanticsError> {
        let vals = self
            .nominals
            .get(i)
            .ok_or_else(|| SemanticsError::UnknownNominal(i.to_string()))?;
        let mut found = None;
        for (w, &v) in vals.iter().enumerate() {
            match v {
                FourValue::T if found.is_none() => found = Some(w),
                FourValue::F => {}
                _ => return Err(SemanticsError::NominalInvariant(i.to_string())),
            }
        }
        found.ok_or_else(|| SemanticsError::NominalInvariant(i.to_string()))
    }
}

fn relation_value(rel: &[Vec<FourValue>], w: usize, v: usize) -> FourValue {
    rel[w][v]
}

/// The value of `f` at `w`, for formulas whose modalities are atomic.
pub fn value4(fm: &FourModel, w: usize, f: &Formula) -> Result<FourValue, SemanticsError> {
    if w >= fm.size() {
        return Err(SemanticsError::UnknownWorld(format!("#{w}")));
    }
    Ok(match f {
        Formula::Prop(p) => fm
            .props
            .get(p)
            .ok_or_else(|| SemanticsError::UnknownProposition(p.clone()))?[w],
        Formula::Nom(i) => fm
            .nominals
            .get(i)
            .ok_or_else(|| SemanticsError::UnknownNominal(i.clone()))?[w],
        Formula::Bottom => FourValue::F,
        Formula::Neg(g) => neg4(value4(fm, w, g)?),
        Formula::And(a, b) => meet_t(value4(fm, w, a)?, value4(fm, w, b)?),
        Formula::Or(a, b) => join_t(value4(fm, w, a)?, value4(fm, w, b)?),
        Formula::Implies(a, b) => imp4(value4(fm, w, a)?, value4(fm, w, b)?),
        Formula::At(i, g) => value4(fm, fm.named(i)?, g)?,
        Formula::Diamond(p, g) => {
            let rel = atomic_relation(fm, p)?;
            let mut acc = FourValue::F;
            for v in 0..fm.size() {
                acc = join_t(acc, meet_t(relation_value(rel, w, v), value4(fm, v, g)?));
            }
            acc
        }
        Formula::Box(p, g) => {
            let rel = atomic_relation(fm, p)?;
            let mut acc = FourValue::T;
            for v in 0..fm.size() {
                acc = meet_t(acc, imp4(relation_value(rel, w, v), value4(fm, v, g)?));
            }
            acc
        }
    })
}

fn atomic_relation<'a>(
    fm: &'a FourModel,
    p: &Program,
) -> Result<&'a Vec<Vec<FourValue>>, SemanticsError> {
    match p {
        Program::Atomic(a) => fm
            .relations
            .get(a)
            .ok_or_else(|| SemanticsError::UnknownAction(a.clone())),
        other => Err(SemanticsError::CompositeProgram(other.to_string())),
    }
}

pub fn to_four_model(m: &Model) -> FourModel {
    let n = m.size();
    let relations = m
        .actions()
        .map(|(a, r)| {
            let table = (0..n)
                .map(|w| {
                    (0..n)
                        .map(|v| FourValue::from_evidence(r.pos.contains(w, v), r.neg.contains(w, v)))
                        .collect()
                })
                .collect();
            (a.to_string(), table)
        })
        .collect();
    let props = m
        .props()
        .map(|(p, val)| {
            let row = (0..n)
                .map(|w| FourValue::from_evidence(val.pos.contains(w), val.neg.contains(w)))
                .collect();
            (p.to_string(), row)
        })
        .collect();
    let nominals = m
        .naming()
        .map(|(i, named)| {
            let row = (0..n)
                .map(|w| if w == named { FourValue::T } else { FourValue::F })
                .collect();
            (i.to_string(), row)
        })
        .collect();
    FourModel {
        worlds: m.world_names().to_vec(),
        relations,
        props,
        nominals,
    }
}

pub fn from_four_model(fm: &FourModel) -> Result<Model, SemanticsError> {
    let n = fm.size();
    let mut m = Model::new(fm.worlds.clone())?;
    for (a, table) in &fm.relations {
        let mut pos = Relation::empty(n);
        let mut neg = Relation::empty(n);
        for (w, row) in table.iter().enumerate() {
            for (v, val) in row.iter().enumerate() {
                if val.has_truth() {
                    pos.insert(w, v);
                }
                if val.has_falsity() {
                    neg.insert(w, v);
                }
            }
        }
        m.set_relations(a, pos, neg);
    }
    for (p, row) in &fm.props {
        let pos = WorldSet::from_iter(n, (0..n).filter(|&w| row[w].has_truth()));
        let neg = WorldSet::from_iter(n, (0..n).filter(|&w| row[w].has_falsity()));
        m.set_valuation(p, pos, neg);
    }
    for i in fm.nominals.keys() {
        m.name(i, fm.named(i)?)?;
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourval::cneg4;
    use crate::syntax::parse_formula;

    fn two_worlds() -> Model {
        let mut m = Model::with_size(2).unwrap();
        m.add_pos_edge("a", 0, 1);
        m.add_neg_edge("a", 0, 1);
        m.add_neg_edge("a", 1, 0);
        m.add_pos_val("p", 1);
        m.declare_prop("q");
        m.name("i", 0).unwrap();
        m.name("j", 1).unwrap();
        m
    }

    #[test]
    fn relation_values_follow_evidence() {
        let fm = to_four_model(&two_worlds());
        let a = &fm.relations["a"];
        assert_eq!(a[0][1], FourValue::B);
        assert_eq!(a[1][0], FourValue::F);
        assert_eq!(a[0][0], FourValue::N);
    }

    #[test]
    fn at_diamond_reads_the_relation() {
        let fm = to_four_model(&two_worlds());
        let f = parse_formula("@'i <a>'j").unwrap();
        for w in 0..2 {
            assert_eq!(value4(&fm, w, &f).unwrap(), FourValue::B);
        }
        let g = parse_formula("@'j <a>'i").unwrap();
        assert_eq!(value4(&fm, 0, &g).unwrap(), FourValue::F);
    }

    #[test]
    fn bottom_is_false_and_gaps_propagate() {
        let fm = to_four_model(&two_worlds());
        assert_eq!(value4(&fm, 0, &Formula::Bottom).unwrap(), FourValue::F);
        let f = parse_formula("q | !q").unwrap();
        assert_eq!(value4(&fm, 0, &f).unwrap(), FourValue::N);
        assert_eq!(cneg4(value4(&fm, 0, &Formula::prop("q")).unwrap()), FourValue::B);
    }

    #[test]
    fn rejects_composite_programs() {
        let fm = to_four_model(&two_worlds());
        let f = parse_formula("<a;a>p").unwrap();
        assert!(matches!(
            value4(&fm, 0, &f),
            Err(SemanticsError::CompositeProgram(_))
        ));
    }

    #[test]
    fn round_trips() {
        let m = two_worlds();
        assert_eq!(from_four_model(&to_four_model(&m)).unwrap(), m);
    }

    #[test]
    fn rejects_broken_nominals() {
        let mut fm = to_four_model(&two_worlds());
        fm.nominals.get_mut("i").unwrap()[1] = FourValue::T;
        assert!(matches!(
            from_four_model(&fm),
            Err(SemanticsError::NominalInvariant(_))
        ));
    }
}
