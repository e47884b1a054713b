use std::fmt;

use smallvec::{smallvec, SmallVec};

/// A set of worlds over a domain `0..n`, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct WorldSet {
    bits: SmallVec<[u64; 1]>,
}

fn words(n: usize) -> usize {
    n.div_ceil(64)
}

impl WorldSet {
    pub fn empty(n: usize) -> Self {
        WorldSet {
            bits: smallvec![0; words(n)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for w in 0..n {
            s.insert(w);
        }
        s
    }

    pub fn singleton(n: usize, w: usize) -> Self {
        let mut s = Self::empty(n);
        s.insert(w);
        s
    }

    pub fn from_iter(n: usize, items: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(n);
        for w in items {
            s.insert(w);
        }
        s
    }

    pub fn insert(&mut self, w: usize) {
        self.bits[w / 64] |= 1 << (w % 64);
    }

    pub fn remove(&mut self, w: usize) {
        self.bits[w / 64] &= !(1 << (w % 64));
    }

    pub fn contains(&self, w: usize) -> bool {
        self.bits
            .get(w / 64)
            .is_some_and(|word| word & (1 << (w % 64)) != 0)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(i, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let bit = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(i * 64 + bit)
            })
        })
    }

    pub fn union_with(&mut self, other: &WorldSet) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &WorldSet) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a &= b;
        }
    }

    /// Complement relative to `0..n`.
    pub fn complement(&self, n: usize) -> WorldSet {
        let mut out = self.clone();
        for (i, word) in out.bits.iter_mut().enumerate() {
            *word = !*word & mask(n, i);
        }
        out
    }

    pub fn intersects(&self, other: &WorldSet) -> bool {
        self.bits.iter().zip(&other.bits).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &WorldSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }
}

fn mask(n: usize, word: usize) -> u64 {
    let lo = word * 64;
    if n >= lo + 64 {
        u64::MAX
    } else if n <= lo {
        0
    } else {
        (1u64 << (n - lo)) - 1
    }
}

impl fmt::Debug for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A binary relation over `0..n`, one successor set per world.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    rows: Vec<WorldSet>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation {
            rows: vec![WorldSet::empty(n); n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut r = Self::empty(n);
        for w in 0..n {
            r.insert(w, w);
        }
        r
    }

    pub fn full(n: usize) -> Self {
        Relation {
            rows: vec![WorldSet::full(n); n],
        }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut r = Self::empty(n);
        for (a, b) in pairs {
            r.insert(a, b);
        }
        r
    }

    /// The diagonal `{(w, w) | w in s}`.
    pub fn diagonal(n: usize, s: &WorldSet) -> Self {
        let mut r = Self::empty(n);
        for w in s.iter() {
            r.insert(w, w);
        }
        r
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        self.rows[a].insert(b);
    }

    pub fn remove(&mut self, a: usize, b: usize) {
        self.rows[a].remove(b);
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.rows[a].contains(b)
    }

    pub fn successors(&self, a: usize) -> &WorldSet {
        &self.rows[a]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.iter().map(move |b| (a, b)))
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(WorldSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(WorldSet::is_empty)
    }

    pub fn complement(&self) -> Relation {
        let n = self.size();
        Relation {
            rows: self.rows.iter().map(|r| r.complement(n)).collect(),
        }
    }

    pub fn union(&self, other: &Relation) -> Relation {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn union_with(&mut self, other: &Relation) {
        for (a, b) in self.rows.iter_mut().zip(&other.rows) {
            a.union_with(b);
        }
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(b))
    }

    /// Relational composition: `a (self;other) c` iff `a self b` and `b other c`.
    pub fn compose(&self, other: &Relation) -> Relation {
        let n = self.size();
        let mut out = Relation::empty(n);
        for (a, row) in self.rows.iter().enumerate() {
            for b in row.iter() {
                out.rows[a].union_with(&other.rows[b]);
            }
        }
        out
    }

    /// Reflexive-transitive closure by iterated squaring to a fixpoint.
    pub fn reflexive_transitive_closure(&self) -> Relation {
        let mut r = self.union(&Relation::identity(self.size()));
        loop {
            let next = r.compose(&r);
            if next == r {
                return r;
            }
            r = next;
        }
    }

    /// Image of a set: all `b` with `a R b` for some `a` in `s`.
    pub fn image(&self, s: &WorldSet) -> WorldSet {
        let mut out = WorldSet::empty(self.size());
        for a in s.iter() {
            out.union_with(&self.rows[a]);
        }
        out
    }

    /// Worlds with some successor in `s`.
    pub fn preimage(&self, s: &WorldSet) -> WorldSet {
        let n = self.size();
        WorldSet::from_iter(n, (0..n).filter(|&a| self.rows[a].intersects(s)))
    }

    /// Worlds all of whose successors lie in `s`.
    pub fn universal_preimage(&self, s: &WorldSet) -> WorldSet {
        let n = self.size();
        WorldSet::from_iter(n, (0..n).filter(|&a| self.rows[a].is_subset(s)))
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_respects_domain() {
        let s = WorldSet::from_iter(3, [1]);
        assert_eq!(s.complement(3).iter().collect::<Vec<_>>(), vec![0, 2]);
        let big = WorldSet::from_iter(70, [0, 69]);
        assert_eq!(big.complement(70).len(), 68);
        assert!(!big.complement(70).contains(69));
    }

    #[test]
    fn composition_and_closure() {
        let r = Relation::from_pairs(4, [(0, 1), (1, 2), (2, 3)]);
        let rr = r.compose(&r);
        assert_eq!(rr.pairs().collect::<Vec<_>>(), vec![(0, 2), (1, 3)]);
        let star = r.reflexive_transitive_closure();
        assert_eq!(star.len(), 4 + 3 + 2 + 1);
        assert!(star.contains(0, 3));
        assert!(!star.contains(3, 0));
        assert_eq!(Relation::empty(2).reflexive_transitive_closure(), Relation::identity(2));
    }

    #[test]
    fn preimages() {
        let r = Relation::from_pairs(3, [(0, 1), (0, 2), (1, 2)]);
        let s = WorldSet::from_iter(3, [2]);
        assert_eq!(r.preimage(&s).iter().collect::<Vec<_>>(), vec![0, 1]);
        // World 2 has no successors, so it vacuously qualifies.
        assert_eq!(r.universal_preimage(&s).iter().collect::<Vec<_>>(), vec![1, 2]);
    }
}
