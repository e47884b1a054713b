use fourdl::fourval::{cneg4, designated, join_t, leq_k, leq_t, meet_t, neg4, FourValue};
use fourdl::selftest::fourval_laws;

#[test]
fn every_law_holds_on_the_full_tables() {
    let outcome = fourval_laws();
    assert!(outcome.passed, "{}", outcome.detail);
}

#[test]
fn values_are_pairs_of_evidence() {
    for v in FourValue::ALL {
        assert_eq!(FourValue::from_evidence(v.has_truth(), v.has_falsity()), v);
        assert_eq!(designated(v), v.has_truth());
    }
}

#[test]
fn meet_and_join_are_truth_order_bounds() {
    for x in FourValue::ALL {
        for y in FourValue::ALL {
            let (m, j) = (meet_t(x, y), join_t(x, y));
            for z in FourValue::ALL {
                assert_eq!(leq_t(z, x) && leq_t(z, y), leq_t(z, m));
                assert_eq!(leq_t(x, z) && leq_t(y, z), leq_t(j, z));
            }
        }
    }
}

#[test]
fn negations_act_on_the_orders() {
    for x in FourValue::ALL {
        for y in FourValue::ALL {
            // Paraconsistent negation flips truth and keeps knowledge.
            assert_eq!(leq_t(x, y), leq_t(neg4(y), neg4(x)));
            assert_eq!(leq_k(x, y), leq_k(neg4(x), neg4(y)));
            // Classical negation flips both.
            assert_eq!(leq_t(x, y), leq_t(cneg4(y), cneg4(x)));
            assert_eq!(leq_k(x, y), leq_k(cneg4(y), cneg4(x)));
        }
    }
}
