//! Small structures used throughout the tests and the CLI.

use crate::cuntz::{MonoidTable, PreCuntz};
use crate::order::{Carrier, Relation};
use crate::predomain::Predomain;

/// `{0,1,2}` with `0 ≺≺ 0, 1, 2` and `1 ≺≺ 1, 2`; `2` is not self-related.
pub fn chain3() -> Predomain {
    let c = Carrier::numbered(3).expect("nonempty");
    let r = Relation::from_pairs(c, [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2)]).expect("in range");
    Predomain::new(r).expect("chain3 is a predomain")
}

/// Four elements `bot, a, c, b` where `a ≺≺_s b` holds after
/// stratification but `a ≺≺ b` does not.
pub fn p4() -> Predomain {
    let c = Carrier::new(["bot", "a", "c", "b"]).expect("distinct labels");
    let r = Relation::from_labeled_pairs(
        c,
        [
            ("bot", "bot"),
            ("bot", "a"),
            ("bot", "c"),
            ("bot", "b"),
            ("c", "c"),
            ("c", "b"),
        ],
    )
    .expect("known labels");
    Predomain::new(r).expect("p4 is a predomain")
}

fn leq_chain(n: usize) -> Relation {
    Relation::from_fn(Carrier::numbered(n + 1).expect("nonempty"), |a, b| a <= b)
}

/// Truncated naturals `{0..n}` with `a + b = min(a + b, n)` and `≺≺ = ≤`.
pub fn tn(n: usize) -> PreCuntz {
    let k = n + 1;
    let m = MonoidTable::new(
        Carrier::numbered(k).expect("nonempty"),
        0,
        (0..k * k).map(|i| (i / k + i % k).min(n)).collect(),
    )
    .expect("saturating addition is a monoid");
    PreCuntz::new(m, leq_chain(n)).expect("tn is preCuntz")
}

/// `{0..n}` with `a + b = max(a, b)` and `≺≺ = ≤`.
pub fn max_monoid(n: usize) -> PreCuntz {
    let k = n + 1;
    let m = MonoidTable::new(
        Carrier::numbered(k).expect("nonempty"),
        0,
        (0..k * k).map(|i| (i / k).max(i % k)).collect(),
    )
    .expect("max is a monoid");
    PreCuntz::new(m, leq_chain(n)).expect("max monoid is preCuntz")
}

/// Number of commutative monoid tables with zero `bot` that make P4 a
/// preCuntz semigroup.
pub const P4_COMPATIBLE_MONOIDS: usize = 12;
