//! Commutative monoids carrying a predomain relation, preCuntz validation,
//! ideal sums and the completion monoid.

use crate::completion::{Completion, FinitePoset};
use crate::error::{Error, Result};
use crate::order::{Carrier, ElemSet, Relation};
use crate::predomain::{check_continuous_map, validate_predomain, Predomain, PredomainReport};
use crate::topology::PairMap;

/// A commutative monoid given by its addition table, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct MonoidTable {
    carrier: Carrier,
    zero: usize,
    table: Vec<usize>,
}

impl std::fmt::Debug for MonoidTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Monoid(zero={}, {:?})", self.carrier.name(self.zero), self.table)
    }
}

impl MonoidTable {
    pub fn new(carrier: Carrier, zero: usize, table: Vec<usize>) -> Result<Self> {
        let n = carrier.len();
        carrier.check_index(zero)?;
        if table.len() != n * n {
            return Err(Error::LengthMismatch {
                expected: n * n,
                got: table.len(),
            });
        }
        for &c in &table {
            carrier.check_index(c)?;
        }
        let m = MonoidTable { carrier, zero, table };
        if let Some(why) = m.law_failure() {
            return Err(Error::NotMonoid(why));
        }
        Ok(m)
    }

    fn law_failure(&self) -> Option<String> {
        let n = self.len();
        let name = |i: usize| self.carrier.name(i);
        for a in 0..n {
            if self.add(self.zero, a) != a {
                return Some(format!("{} + {} != {}", name(self.zero), name(a), name(a)));
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return Some(format!("{} + {} is not commutative", name(a), name(b)));
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Some(format!("({} + {}) + {} is not associative", name(a), name(b), name(c)));
                    }
                }
            }
        }
        None
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.table[a * self.len() + b]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }
}

/// Flags for the preCuntz axioms on a monoid with a relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreCuntzReport {
    pub predomain: PredomainReport,
    pub zero_below_all: bool,
    /// `a ≺≺ a′` and `b ≺≺ b′` give `a + b ≺≺ a′ + b′`.
    pub additive: bool,
    pub additive_witness: Option<(usize, usize, usize, usize)>,
    /// `c ≺≺ a + b` gives `a′ ≺≺ a`, `b′ ≺≺ b` with `c ≺≺ a′ + b′`.
    pub continuous_addition: bool,
    pub continuity_witness: Option<(usize, usize, usize)>,
    /// Addition is jointly continuous for the c-space topology. Only
    /// computed for predomains.
    pub jointly_continuous: Option<bool>,
    pub separately_continuous: Option<bool>,
}

impl PreCuntzReport {
    pub fn is_precuntz(&self) -> bool {
        self.predomain.is_predomain() && self.zero_below_all && self.additive && self.continuous_addition
    }

    pub fn failure(&self, carrier: &Carrier) -> Option<String> {
        if let Some(why) = self.predomain.failure(carrier) {
            return Some(why);
        }
        let n = |i: usize| carrier.name(i);
        if !self.zero_below_all {
            return Some("zero is not below every element".into());
        }
        if let Some((a, a2, b, b2)) = self.additive_witness {
            return Some(format!(
                "not additive: {} ≺≺ {} and {} ≺≺ {} but the sums are unrelated",
                n(a),
                n(a2),
                n(b),
                n(b2)
            ));
        }
        self.continuity_witness
            .map(|(c, a, b)| format!("addition is not continuous: {} ≺≺ {} + {}", n(c), n(a), n(b)))
    }
}

/// `a ≺≺ a′` implies `a + b ≺≺ a′ + b` for every `b`.
pub fn is_one_sided_additive(m: &MonoidTable, r: &Relation) -> bool {
    r.pairs()
        .all(|(a, a2)| (0..m.len()).all(|b| r.holds(m.add(a, b), m.add(a2, b))))
}

pub fn validate_precuntz(m: &MonoidTable, r: &Relation) -> Result<PreCuntzReport> {
    if m.carrier() != r.carrier() {
        return Err(Error::CarrierMismatch);
    }
    let n = m.len();
    let predomain = validate_predomain(r)?;
    let zero_below_all = r.succ(m.zero()).len() == n;

    let pairs: Vec<(usize, usize)> = r.pairs().collect();
    let additive_witness = pairs.iter().find_map(|&(a, a2)| {
        pairs
            .iter()
            .find(|&&(b, b2)| !r.holds(m.add(a, b), m.add(a2, b2)))
            .map(|&(b, b2)| (a, a2, b, b2))
    });

    let mut continuity_witness = None;
    'outer: for a in 0..n {
        for b in 0..n {
            for c in r.pred(m.add(a, b)).iter() {
                let ok = r
                    .pred(a)
                    .iter()
                    .any(|a2| r.pred(b).iter().any(|b2| r.holds(c, m.add(a2, b2))));
                if !ok {
                    continuity_witness = Some((c, a, b));
                    break 'outer;
                }
            }
        }
    }

    let (mut jointly_continuous, mut separately_continuous) = (None, None);
    if predomain.is_predomain() {
        let t = Predomain::new(r.clone())?.cspace_topology()?;
        let map = PairMap {
            x: &t,
            y: &t,
            z: &t,
            table: m.table(),
        };
        jointly_continuous = Some(map.is_jointly_continuous()?);
        separately_continuous = Some(map.is_separately_continuous()?);
    }

    let report = PreCuntzReport {
        predomain,
        zero_below_all,
        additive: additive_witness.is_none(),
        additive_witness,
        continuous_addition: continuity_witness.is_none(),
        continuity_witness,
        jointly_continuous,
        separately_continuous,
    };
    if report.additive {
        if let Some(joint) = report.jointly_continuous {
            if joint != report.continuous_addition {
                return Err(Error::InternalInconsistency(format!(
                    "joint continuity {joint} disagrees with the interpolation form {}",
                    report.continuous_addition
                )));
            }
        }
    }
    Ok(report)
}

/// A validated preCuntz semigroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreCuntz {
    monoid: MonoidTable,
    pd: Predomain,
}

impl PreCuntz {
    pub fn new(monoid: MonoidTable, rel: Relation) -> Result<Self> {
        let report = validate_precuntz(&monoid, &rel)?;
        if let Some(why) = report.failure(monoid.carrier()) {
            return Err(Error::NotPreCuntz(why));
        }
        Ok(PreCuntz {
            monoid,
            pd: Predomain::new(rel)?,
        })
    }

    pub fn monoid(&self) -> &MonoidTable {
        &self.monoid
    }

    pub fn predomain(&self) -> &Predomain {
        &self.pd
    }

    pub fn carrier(&self) -> &Carrier {
        self.monoid.carrier()
    }

    pub fn len(&self) -> usize {
        self.monoid.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn zero(&self) -> usize {
        self.monoid.zero()
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.monoid.add(a, b)
    }

    /// `I + J = ⋃ ↡(a + b)` over `a ∈ I`, `b ∈ J`.
    pub fn ideal_sum(&self, i: ElemSet, j: ElemSet) -> Result<ElemSet> {
        use crate::completion::is_round_ideal;
        for s in [i, j] {
            if !is_round_ideal(&self.pd, s) {
                return Err(Error::NotRoundIdeal(self.carrier().format_set(s)));
            }
        }
        let sum = i.iter().fold(ElemSet::EMPTY, |acc, a| {
            j.iter().fold(acc, |acc, b| acc.union(self.pd.down_set(self.add(a, b))))
        });
        if !is_round_ideal(&self.pd, sum) {
            return Err(Error::InternalInconsistency(format!(
                "ideal sum {} is not a round ideal",
                self.carrier().format_set(sum)
            )));
        }
        Ok(sum)
    }

    /// The completion with ideal sums, `↡0` and `≪`.
    pub fn completion_monoid(&self) -> Result<(Completion, PreCuntz)> {
        let c = Completion::new(&self.pd)?;
        let k = c.len();
        let mut table = Vec::with_capacity(k * k);
        for &i in c.ideals() {
            for &j in c.ideals() {
                let s = self.ideal_sum(i, j)?;
                table.push(
                    c.index_of(s)
                        .ok_or_else(|| Error::InternalInconsistency("ideal sum missing from the completion".into()))?,
                );
            }
        }
        let zero = c.principal_index(self.zero());
        let m = MonoidTable::new(c.carrier().clone(), zero, table)?;
        let pc = PreCuntz::new(m, c.waybelow().clone())?;
        Ok((c, pc))
    }

    /// `f(0) = 0` and `f(a + b) = f(a) + f(b)` for a map into `target`.
    pub fn hom_witness(&self, target: &PreCuntz, f: &[usize]) -> Result<Option<(usize, usize)>> {
        if f.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: f.len(),
            });
        }
        for &y in f {
            target.carrier().check_index(y)?;
        }
        if f[self.zero()] != target.zero() {
            return Ok(Some((self.zero(), self.zero())));
        }
        let n = self.len();
        Ok((0..n)
            .flat_map(|a| (a..n).map(move |b| (a, b)))
            .find(|&(a, b)| f[self.add(a, b)] != target.add(f[a], f[b])))
    }

    /// Extend a continuous monoid homomorphism into a preCuntz semigroup
    /// whose relation is a partial order; the result is indexed by the
    /// ideals of the completion.
    pub fn extend_monoid_hom(&self, target: &PreCuntz, f: &[usize]) -> Result<(Completion, Vec<usize>)> {
        if let Some((a, b)) = self.hom_witness(target, f)? {
            return Err(Error::NotHomomorphism(format!(
                "f({} + {}) != f({}) + f({})",
                self.carrier().name(a),
                self.carrier().name(b),
                self.carrier().name(a),
                self.carrier().name(b)
            )));
        }
        let poset = FinitePoset::new(target.predomain().rel().clone())?;
        if !check_continuous_map(&self.pd, target.predomain(), f)?.continuous {
            return Err(Error::NotContinuous("monoid homomorphism".into()));
        }
        let (c, pc) = self.completion_monoid()?;
        let ext = c.extend_to_poset(&poset, f)?;
        if ext[pc.zero()] != target.zero() {
            return Err(Error::InternalInconsistency("extension does not fix zero".into()));
        }
        for i in 0..c.len() {
            for j in 0..c.len() {
                if ext[pc.add(i, j)] != target.add(ext[i], ext[j]) {
                    return Err(Error::InternalInconsistency(format!(
                        "extension is not additive at ({}, {})",
                        c.carrier().name(i),
                        c.carrier().name(j)
                    )));
                }
            }
        }
        Ok((c, ext))
    }
}

/// All commutative monoid structures with zero `zero` on `carrier` whose
/// pairing with `rel` is preCuntz. Brute force over symmetric tables.
pub fn compatible_monoids(rel: &Relation, zero: usize) -> Result<Vec<MonoidTable>> {
    let carrier = rel.carrier().clone();
    let n = carrier.len();
    carrier.check_index(zero)?;
    let others: Vec<usize> = (0..n).filter(|&i| i != zero).collect();
    let slots: Vec<(usize, usize)> = others
        .iter()
        .enumerate()
        .flat_map(|(k, &a)| others[k..].iter().map(move |&b| (a, b)))
        .collect();
    let total = (n as u64).checked_pow(slots.len() as u32).filter(|&t| t <= 1 << 24);
    let Some(total) = total else {
        return Err(Error::EnumerationBound { size: n, bound: 4 });
    };
    let mut found = Vec::new();
    for code in 0..total {
        let mut table = vec![0; n * n];
        for i in 0..n {
            table[zero * n + i] = i;
            table[i * n + zero] = i;
        }
        let mut rest = code;
        for &(a, b) in &slots {
            let v = (rest % n as u64) as usize;
            rest /= n as u64;
            table[a * n + b] = v;
            table[b * n + a] = v;
        }
        if let Ok(m) = MonoidTable::new(carrier.clone(), zero, table) {
            if validate_precuntz(&m, rel)?.is_precuntz() {
                found.push(m);
            }
        }
    }
    Ok(found)
}
