//! Brute-force search over small finite models.

mod bits;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::random::random_model;
use crate::semantics::{satisfies_all, Circuit, Model, Relation, SemanticsError, Symbols, Usage, WorldSet};
use crate::syntax::{Formula, Signature, SignedFormula};
use bits::{set_mask, Packed, MAX_WORLDS};

/// Default bound on the number of models an exhaustive run may visit.
pub const DEFAULT_CEILING: u128 = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplingMode {
    Exhaustive,
    /// `count` independent samples for each world count, every membership
    /// drawn with probability one half.
    Randomized { count: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationSpec {
    pub signature: Signature,
    /// Smallest world count enumerated; 1 unless set otherwise.
    pub min_worlds: usize,
    pub max_worlds: usize,
    pub mode: SamplingMode,
    pub ceiling: u128,
}

impl EnumerationSpec {
    pub fn exhaustive(signature: Signature, max_worlds: usize) -> Self {
        EnumerationSpec {
            signature,
            min_worlds: 1,
            max_worlds,
            mode: SamplingMode::Exhaustive,
            ceiling: DEFAULT_CEILING,
        }
    }

    pub fn randomized(signature: Signature, max_worlds: usize, count: usize, seed: u64) -> Self {
        EnumerationSpec {
            signature,
            min_worlds: 1,
            max_worlds,
            mode: SamplingMode::Randomized { count, seed },
            ceiling: DEFAULT_CEILING,
        }
    }

    /// Restricts the stream to world counts from `n` upwards.
    pub fn from_worlds(mut self, n: usize) -> Self {
        self.min_worlds = n;
        self
    }

    pub fn with_ceiling(mut self, ceiling: u128) -> Self {
        self.ceiling = ceiling;
        self
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum OracleError {
    #[error("search space of {space} models exceeds the ceiling of {ceiling}")]
    CeilingExceeded { space: u128, ceiling: u128 },
    #[error("exhaustive search supports at most {MAX_WORLDS} worlds, not {0}")]
    TooManyWorlds(usize),
    #[error("world count range is empty")]
    NoWorlds,
    #[error("model checker rejects the countermodel found for {0}")]
    CheckerDisagreement(String),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

/// Bit positions of the enumerated components for one world count. The
/// unused components stay empty and unused nominals name the first world.
#[derive(Debug, Clone)]
struct Layout {
    n: usize,
    pos_rel: Vec<Option<u32>>,
    neg_rel: Vec<Option<u32>>,
    pos_val: Vec<Option<u32>>,
    neg_val: Vec<Option<u32>>,
    nominals: Vec<usize>,
    nominal_count: usize,
    bits: u32,
}

impl Layout {
    fn new(n: usize, symbols: &Symbols, usage: &Usage) -> Self {
        let mut bits = 0;
        let mut place = |count: usize, used: &std::collections::BTreeSet<usize>, width: usize| {
            (0..count)
                .map(|k| {
                    used.contains(&k).then(|| {
                        let at = bits;
                        bits += width as u32;
                        at
                    })
                })
                .collect::<Vec<_>>()
        };
        let pos_rel = place(symbols.actions.len(), &usage.pos_rel, n * n);
        let neg_rel = place(symbols.actions.len(), &usage.neg_rel, n * n);
        let pos_val = place(symbols.props.len(), &usage.pos_val, n);
        let neg_val = place(symbols.props.len(), &usage.neg_val, n);
        Layout {
            n,
            pos_rel,
            neg_rel,
            pos_val,
            neg_val,
            nominals: usage.nominals.iter().copied().collect(),
            nominal_count: symbols.nominals.len(),
            bits,
        }
    }

    fn namings(&self) -> u128 {
        (self.n as u128).pow(self.nominals.len() as u32)
    }

    fn space(&self) -> u128 {
        if self.bits >= 100 {
            return u128::MAX;
        }
        (1u128 << self.bits).saturating_mul(self.namings())
    }

    fn decode(&self, naming: u64, code: u64, out: &mut Packed) {
        let n = self.n;
        let field = |at: Option<u32>, width: usize| match at {
            Some(at) => (code >> at) & ((1u64 << width) - 1),
            None => 0,
        };
        let fill = |dst: &mut Vec<u64>, src: &[Option<u32>], width: usize| {
            dst.clear();
            dst.extend(src.iter().map(|&at| {
                if width == 64 {
                    at.map_or(0, |_| code)
                } else {
                    field(at, width)
                }
            }));
        };
        out.n = n;
        fill(&mut out.pos_rel, &self.pos_rel, n * n);
        fill(&mut out.neg_rel, &self.neg_rel, n * n);
        fill(&mut out.pos_val, &self.pos_val, n);
        fill(&mut out.neg_val, &self.neg_val, n);
        out.named.clear();
        out.named.resize(self.nominal_count, 0);
        let mut rest = naming;
        for &i in &self.nominals {
            out.named[i] = (rest % n as u64) as usize;
            rest /= n as u64;
        }
    }
}

fn full_usage(symbols: &Symbols) -> Usage {
    Usage {
        pos_rel: (0..symbols.actions.len()).collect(),
        neg_rel: (0..symbols.actions.len()).collect(),
        pos_val: (0..symbols.props.len()).collect(),
        neg_val: (0..symbols.props.len()).collect(),
        nominals: (0..symbols.nominals.len()).collect(),
    }
}

fn to_model(p: &Packed, symbols: &Symbols) -> Model {
    let n = p.n;
    let mut m = Model::with_size(n).expect("n > 0");
    let set = |w: u64| WorldSet::from_iter(n, (0..n).filter(|&k| w >> k & 1 == 1));
    let rel = |r: u64| {
        Relation::from_pairs(
            n,
            (0..n * n).filter(|&k| r >> k & 1 == 1).map(|k| (k / n, k % n)),
        )
    };
    for (k, a) in symbols.actions.iter().enumerate() {
        m.set_relations(a, rel(p.pos_rel[k]), rel(p.neg_rel[k]));
    }
    for (k, q) in symbols.props.iter().enumerate() {
        m.set_valuation(q, set(p.pos_val[k]), set(p.neg_val[k]));
    }
    for (k, i) in symbols.nominals.iter().enumerate() {
        m.name(i, p.named[k]).expect("world in range");
    }
    m
}

fn layouts(
    spec: &EnumerationSpec,
    symbols: &Symbols,
    usage: &Usage,
) -> Result<Vec<Layout>, OracleError> {
    if spec.min_worlds == 0 || spec.max_worlds < spec.min_worlds {
        return Err(OracleError::NoWorlds);
    }
    if spec.max_worlds > MAX_WORLDS {
        return Err(OracleError::TooManyWorlds(spec.max_worlds));
    }
    let layouts: Vec<Layout> = (spec.min_worlds..=spec.max_worlds)
        .map(|n| Layout::new(n, symbols, usage))
        .collect();
    let space = layouts
        .iter()
        .fold(0u128, |acc, l| acc.saturating_add(l.space()));
    if space > spec.ceiling {
        return Err(OracleError::CeilingExceeded {
            space,
            ceiling: spec.ceiling,
        });
    }
    Ok(layouts)
}

/// The number of models `enumerate_models` yields in exhaustive mode.
pub fn search_space(spec: &EnumerationSpec) -> u128 {
    let symbols = Symbols::from_signature(&spec.signature);
    let usage = full_usage(&symbols);
    (spec.min_worlds.max(1)..=spec.max_worlds)
        .map(|n| Layout::new(n, &symbols, &usage).space())
        .fold(0u128, u128::saturating_add)
}

/// A stream of models in a fixed order: by world count, then by naming, then
/// by the bits of the relations and valuations.
pub struct ModelStream {
    symbols: Symbols,
    signature: Signature,
    inner: StreamState,
}

enum StreamState {
    Exhaustive {
        layouts: Vec<Layout>,
        current: usize,
        naming: u64,
        code: u64,
        packed: Packed,
    },
    Randomized {
        rng: ChaCha8Rng,
        n: usize,
        max_worlds: usize,
        count: usize,
        drawn: usize,
    },
}

impl Iterator for ModelStream {
    type Item = Model;

    fn next(&mut self) -> Option<Model> {
        match &mut self.inner {
            StreamState::Exhaustive {
                layouts,
                current,
                naming,
                code,
                packed,
            } => loop {
                let l = layouts.get(*current)?;
                if (*naming as u128) < l.namings() {
                    if *code < (1u64 << l.bits) || l.bits == 64 && *code != 0 {
                        l.decode(*naming, *code, packed);
                        *code += 1;
                        return Some(to_model(packed, &self.symbols));
                    }
                    *code = 0;
                    *naming += 1;
                    continue;
                }
                *current += 1;
                *naming = 0;
                *code = 0;
            },
            StreamState::Randomized {
                rng,
                n,
                max_worlds,
                count,
                drawn,
            } => {
                while *drawn == *count {
                    if *n == *max_worlds {
                        return None;
                    }
                    *n += 1;
                    *drawn = 0;
                }
                *drawn += 1;
                Some(random_model(rng, *n, &self.signature))
            }
        }
    }
}

/// All models over the signature up to `max_worlds`, or seeded samples of
/// them in randomized mode.
pub fn enumerate_models(spec: &EnumerationSpec) -> Result<ModelStream, OracleError> {
    let symbols = Symbols::from_signature(&spec.signature);
    let inner = match spec.mode {
        SamplingMode::Exhaustive => StreamState::Exhaustive {
            layouts: layouts(spec, &symbols, &full_usage(&symbols))?,
            current: 0,
            naming: 0,
            code: 0,
            packed: Packed::default(),
        },
        SamplingMode::Randomized { count, seed } => {
            if spec.min_worlds == 0 || spec.max_worlds < spec.min_worlds {
                return Err(OracleError::NoWorlds);
            }
            StreamState::Randomized {
                rng: ChaCha8Rng::seed_from_u64(seed),
                n: spec.min_worlds,
                max_worlds: spec.max_worlds,
                count,
                drawn: 0,
            }
        }
    };
    Ok(ModelStream {
        symbols,
        signature: spec.signature.clone(),
        inner,
    })
}

/// The outcome of a countermodel search.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport {
    pub countermodel: Option<Model>,
    /// Models examined before stopping.
    pub examined: u64,
    /// Size of the space an exhaustive run covers, after dropping the model
    /// components the roots never read.
    pub space: u128,
}

/// Searches for a model that globally satisfies the plain roots and fails
/// the minus roots. Exhaustive search only ranges over the relations,
/// valuations and nominals that the roots read; the others are left empty.
pub fn search_roots(roots: &[SignedFormula], spec: &EnumerationSpec) -> Result<SearchReport, OracleError> {
    let mut signature = spec.signature.clone();
    for r in roots {
        signature.collect_formula(&r.formula);
    }
    let symbols = Symbols::from_signature(&signature);
    let mut circuit = Circuit::new(symbols.clone());
    let mut nodes = Vec::with_capacity(roots.len());
    for r in roots {
        nodes.push((circuit.formula(&r.formula, false)?, r.minus));
    }
    let verify = |m: Model| -> Result<Model, OracleError> {
        if satisfies_all(&m, roots)? {
            Ok(m)
        } else {
            let shown: Vec<String> = roots.iter().map(ToString::to_string).collect();
            Err(OracleError::CheckerDisagreement(shown.join(", ")))
        }
    };
    match spec.mode {
        SamplingMode::Exhaustive => {
            let usage = circuit.usage();
            let layouts = layouts(spec, &symbols, &usage)?;
            let space = layouts.iter().map(Layout::space).sum();
            let mut examined = 0u64;
            let mut packed = Packed::default();
            let mut values = Vec::new();
            for l in &layouts {
                let full = set_mask(l.n);
                let codes = 1u64 << l.bits;
                for naming in 0..l.namings() as u64 {
                    for code in 0..codes {
                        examined += 1;
                        l.decode(naming, code, &mut packed);
                        bits::run(&circuit, &packed, &mut values);
                        if nodes.iter().all(|&(k, minus)| (values[k] == full) != minus) {
                            let m = verify(to_model(&packed, &symbols))?;
                            return Ok(SearchReport {
                                countermodel: Some(m),
                                examined,
                                space,
                            });
                        }
                    }
                }
            }
            Ok(SearchReport {
                countermodel: None,
                examined,
                space,
            })
        }
        SamplingMode::Randomized { .. } => {
            let sampling = EnumerationSpec {
                signature,
                ..spec.clone()
            };
            let mut examined = 0u64;
            for m in enumerate_models(&sampling)? {
                examined += 1;
                if satisfies_all(&m, roots)? {
                    return Ok(SearchReport {
                        countermodel: Some(m),
                        examined,
                        space: examined as u128,
                    });
                }
            }
            Ok(SearchReport {
                countermodel: None,
                examined,
                space: examined as u128,
            })
        }
    }
}

/// The first model, in enumeration order, that globally satisfies every
/// premise and fails `conclusion`.
pub fn countermodel_search(
    premises: &[Formula],
    conclusion: &Formula,
    spec: &EnumerationSpec,
) -> Result<Option<Model>, OracleError> {
    let mut roots: Vec<SignedFormula> = premises.iter().cloned().map(SignedFormula::plain).collect();
    roots.push(SignedFormula::minus(conclusion.clone()));
    Ok(search_roots(&roots, spec)?.countermodel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::small_signature;
    use crate::semantics::globally_satisfies;
    use crate::syntax::parse_formula;

    #[test]
    fn counts_match_closed_forms() {
        let count = |spec| enumerate_models(&spec).unwrap().count();
        let spec = |sig, n| EnumerationSpec::exhaustive(sig, n);
        assert_eq!(count(spec(small_signature(1, 1, 0), 1)), 4);
        assert_eq!(count(spec(small_signature(0, 0, 1), 1)), 4);
        // Two worlds: 2 namings, 2^4 per relation, 2^2 per valuation.
        let two = spec(small_signature(1, 1, 1), 2).from_worlds(2);
        assert_eq!(count(two.clone()), 8192);
        assert_eq!(search_space(&two), 8192);
        // One world adds 2^4 models.
        assert_eq!(count(spec(small_signature(1, 1, 1), 2)), 16 + 8192);
    }

    #[test]
    fn ceiling_is_enforced() {
        let spec = EnumerationSpec::exhaustive(small_signature(2, 1, 2), 3).with_ceiling(1000);
        assert!(matches!(
            enumerate_models(&spec),
            Err(OracleError::CeilingExceeded { .. })
        ));
    }

    #[test]
    fn paracompleteness_witness_has_one_world() {
        let spec = EnumerationSpec::exhaustive(Signature::default(), 3);
        let m = countermodel_search(&[], &parse_formula("p | !p").unwrap(), &spec)
            .unwrap()
            .unwrap();
        assert_eq!(m.size(), 1);
        assert!(m.prop("p").unwrap().pos.is_empty());
        assert!(m.prop("p").unwrap().neg.is_empty());
    }

    #[test]
    fn classical_excluded_middle_has_no_countermodel() {
        let spec = EnumerationSpec::exhaustive(Signature::default(), 3);
        let f = parse_formula("p | ~p").unwrap();
        assert_eq!(countermodel_search(&[], &f, &spec).unwrap(), None);
    }

    #[test]
    fn search_agrees_with_the_checker() {
        let spec = EnumerationSpec::exhaustive(Signature::default(), 2);
        let f = parse_formula("!<a>p").unwrap();
        let m = countermodel_search(&[], &f, &spec).unwrap().unwrap();
        assert!(!globally_satisfies(&m, &SignedFormula::plain(f)).unwrap());
    }

    #[test]
    fn randomized_streams_are_deterministic() {
        let spec = EnumerationSpec::randomized(small_signature(1, 1, 1), 3, 5, 7);
        let a: Vec<Model> = enumerate_models(&spec).unwrap().collect();
        let b: Vec<Model> = enumerate_models(&spec).unwrap().collect();
        assert_eq!(a.len(), 15);
        assert_eq!(a, b);
    }

    #[test]
    fn exhaustive_search_returns_the_first_in_stream_order() {
        let sig = small_signature(1, 0, 1);
        let spec = EnumerationSpec::exhaustive(sig, 2);
        let f = parse_formula("<a>p").unwrap();
        let found = countermodel_search(&[], &f, &spec).unwrap().unwrap();
        let first = enumerate_models(&spec)
            .unwrap()
            .find(|m| !globally_satisfies(m, &SignedFormula::plain(f.clone())).unwrap())
            .unwrap();
        assert_eq!(found.size(), first.size());
    }
}
