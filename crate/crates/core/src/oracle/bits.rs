//! Circuit evaluation over models of at most eight worlds, with world sets
//! and relations packed into machine words.

use crate::semantics::{Circuit, Op};

pub(crate) const MAX_WORLDS: usize = 8;

/// A compact interpretation: a set over `0..n` uses the low `n` bits, and
/// row `a` of a relation uses bits `a*n .. a*n+n`.
#[derive(Debug, Clone, Default)]
pub(crate) struct Packed {
    pub n: usize,
    pub pos_rel: Vec<u64>,
    pub neg_rel: Vec<u64>,
    pub pos_val: Vec<u64>,
    pub neg_val: Vec<u64>,
    pub named: Vec<usize>,
}

pub(crate) fn set_mask(n: usize) -> u64 {
    (1u64 << n) - 1
}

pub(crate) fn rel_mask(n: usize) -> u64 {
    if n * n == 64 {
        u64::MAX
    } else {
        (1u64 << (n * n)) - 1
    }
}

fn bits(mut w: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if w == 0 {
            return None;
        }
        let b = w.trailing_zeros() as usize;
        w &= w - 1;
        Some(b)
    })
}

fn row(r: u64, a: usize, n: usize) -> u64 {
    (r >> (a * n)) & set_mask(n)
}

fn compose(x: u64, y: u64, n: usize) -> u64 {
    let mut out = 0;
    for a in 0..n {
        let mut acc = 0;
        for b in bits(row(x, a, n)) {
            acc |= row(y, b, n);
        }
        out |= acc << (a * n);
    }
    out
}

fn identity(n: usize) -> u64 {
    (0..n).fold(0, |acc, a| acc | 1 << (a * n + a))
}

fn closure(r: u64, n: usize) -> u64 {
    let mut c = r | identity(n);
    loop {
        let next = compose(c, c, n);
        if next == c {
            return c;
        }
        c = next;
    }
}

fn exists(r: u64, s: u64, n: usize) -> u64 {
    (0..n).filter(|&a| row(r, a, n) & s != 0).fold(0, |acc, a| acc | 1 << a)
}

fn forall(r: u64, s: u64, n: usize) -> u64 {
    (0..n).filter(|&a| row(r, a, n) & !s == 0).fold(0, |acc, a| acc | 1 << a)
}

/// Evaluates every node of `circuit` on `m` into `values`.
pub(crate) fn run(circuit: &Circuit, m: &Packed, values: &mut Vec<u64>) {
    let n = m.n;
    let full = set_mask(n);
    values.clear();
    for op in circuit.ops() {
        let v = &values;
        let x = match *op {
            Op::Empty => 0,
            Op::Full => full,
            Op::PosVal(p) => m.pos_val[p],
            Op::NegVal(p) => m.neg_val[p],
            Op::Named(i) => 1 << m.named[i],
            Op::NotNamed(i) => full & !(1 << m.named[i]),
            Op::And(a, b) => v[a] & v[b],
            Op::Or(a, b) => v[a] | v[b],
            Op::Not(a) => full & !v[a],
            Op::Exists(r, s) => exists(v[r], v[s], n),
            Op::Forall(r, s) => forall(v[r], v[s], n),
            Op::At(i, s) => {
                if v[s] >> m.named[i] & 1 == 1 {
                    full
                } else {
                    0
                }
            }
            Op::PosRel(a) => m.pos_rel[a],
            Op::NegComplementRel(a) => rel_mask(n) & !m.neg_rel[a],
            Op::Compose(a, b) => compose(v[a], v[b], n),
            Op::Union(a, b) => v[a] | v[b],
            Op::Closure(a) => closure(v[a], n),
            Op::Diagonal(s) => bits(v[s]).fold(0, |acc, w| acc | 1 << (w * n + w)),
        };
        values.push(x);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_of_a_cycle_is_full() {
        // 0 -> 1 -> 2 -> 0
        let n = 3;
        let r = 1 << 1 | 1 << (3 + 2) | 1 << 6;
        assert_eq!(closure(r, n), rel_mask(n));
    }

    #[test]
    fn quantifiers() {
        let n = 2;
        // 0 -> 1 only.
        let r = 1 << 1;
        assert_eq!(exists(r, 0b10, n), 0b01);
        assert_eq!(forall(r, 0b10, n), 0b11);
        assert_eq!(forall(r, 0b01, n), 0b10);
    }
}
