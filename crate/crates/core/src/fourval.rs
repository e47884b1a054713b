//! Belnap's four truth values and the bilattice operations used by 4-models.

use std::fmt;
use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FourValue {
    T,
    F,
    B,
    N,
}

use FourValue::{B, F, N, T};

impl FourValue {
    pub const ALL: [FourValue; 4] = [T, F, B, N];

    fn index(self) -> usize {
        match self {
            T => 0,
            F => 1,
            B => 2,
            N => 3,
        }
    }

    /// Builds a value from evidence for and against.
    pub fn from_evidence(for_: bool, against: bool) -> Self {
        match (for_, against) {
            (true, false) => T,
            (false, true) => F,
            (true, true) => B,
            (false, false) => N,
        }
    }

    pub fn has_truth(self) -> bool {
        matches!(self, T | B)
    }

    pub fn has_falsity(self) -> bool {
        matches!(self, F | B)
    }
}

impl fmt::Display for FourValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            T => "t",
            F => "f",
            B => "b",
            N => "n",
        })
    }
}

/// The truth order: `f` at the bottom, `t` at the top, `b` and `n` incomparable.
pub fn leq_t(x: FourValue, y: FourValue) -> bool {
    x == y || x == F || y == T
}

/// The knowledge order: `n` at the bottom, `b` at the top, `t` and `f` incomparable.
pub fn leq_k(x: FourValue, y: FourValue) -> bool {
    x == y || x == N || y == B
}

struct Tables {
    meet: [[FourValue; 4]; 4],
    join: [[FourValue; 4]; 4],
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut meet = [[F; 4]; 4];
        let mut join = [[T; 4]; 4];
        for x in FourValue::ALL {
            for y in FourValue::ALL {
                meet[x.index()][y.index()] = extremum(x, y, leq_t);
                join[x.index()][y.index()] = extremum(x, y, |a, b| leq_t(b, a));
            }
        }
        Tables { meet, join }
    })
}

// Greatest common lower bound of x and y with respect to `le`.
fn extremum(x: FourValue, y: FourValue, le: impl Fn(FourValue, FourValue) -> bool) -> FourValue {
    let bounds: Vec<FourValue> = FourValue::ALL
        .into_iter()
        .filter(|&z| le(z, x) && le(z, y))
        .collect();
    *bounds
        .iter()
        .find(|&&z| bounds.iter().all(|&w| le(w, z)))
        .expect("the truth order is a lattice")
}

pub fn neg4(v: FourValue) -> FourValue {
    match v {
        T => F,
        F => T,
        B => B,
        N => N,
    }
}

pub fn cneg4(v: FourValue) -> FourValue {
    match v {
        T => F,
        F => T,
        B => N,
        N => B,
    }
}

pub fn meet_t(x: FourValue, y: FourValue) -> FourValue {
    tables().meet[x.index()][y.index()]
}

pub fn join_t(x: FourValue, y: FourValue) -> FourValue {
    tables().join[x.index()][y.index()]
}

pub fn imp4(x: FourValue, y: FourValue) -> FourValue {
    join_t(cneg4(x), y)
}

pub fn designated(v: FourValue) -> bool {
    matches!(v, T | B)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negation_tables() {
        assert_eq!(neg4(B), B);
        assert_eq!(neg4(T), F);
        assert_eq!(cneg4(B), N);
        assert_eq!(cneg4(N), B);
        for v in FourValue::ALL {
            assert_eq!(neg4(neg4(v)), v);
            assert_eq!(cneg4(cneg4(v)), v);
        }
    }

    #[test]
    fn lattice_operations() {
        assert_eq!(meet_t(B, N), F);
        assert_eq!(join_t(B, N), T);
        for x in FourValue::ALL {
            assert_eq!(meet_t(T, x), x);
            assert_eq!(join_t(F, x), x);
            assert_eq!(meet_t(x, x), x);
            for y in FourValue::ALL {
                assert_eq!(meet_t(x, y), meet_t(y, x));
                assert!(leq_t(meet_t(x, y), x));
                assert!(leq_t(x, join_t(x, y)));
            }
        }
    }

    #[test]
    fn implication() {
        assert_eq!(imp4(B, F), N);
        for y in FourValue::ALL {
            assert_eq!(imp4(F, y), T);
            assert_eq!(imp4(T, y), y);
        }
    }

    #[test]
    fn designation() {
        assert!(designated(B));
        assert!(designated(T));
        assert!(!designated(N));
        assert!(!designated(F));
    }

    #[test]
    fn orders_are_partial_orders() {
        for x in FourValue::ALL {
            assert!(leq_t(x, x) && leq_k(x, x));
            for y in FourValue::ALL {
                if x != y {
                    assert!(!(leq_t(x, y) && leq_t(y, x)));
                    assert!(!(leq_k(x, y) && leq_k(y, x)));
                }
            }
        }
        assert!(!leq_t(B, N) && !leq_t(N, B));
        assert!(!leq_k(T, F) && !leq_k(F, T));
    }
}
