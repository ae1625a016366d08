//! Predomains: transitive relations with the finite interpolation
//! property, their natural preorder, stratification, c-space topology and
//! morphisms.

use crate::error::{Error, Result};
use crate::order::{Carrier, ElemSet, Relation};
use crate::topology::{FiniteTopology, SUBSET_FILTER_BOUND};

/// Outcome of checking the predomain axioms on a relation.
///
/// `ip_full` is the interpolation property for every finite `F`, decided
/// by brute force over all subsets below each element. The witnesses name
/// the first failing instance in declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredomainReport {
    pub transitive: bool,
    pub trans_witness: Option<(usize, usize, usize)>,
    /// Every element has something below it.
    pub ip0: bool,
    pub ip0_witness: Option<usize>,
    pub ip1: bool,
    pub ip1_witness: Option<(usize, usize)>,
    pub ip2: bool,
    pub ip2_witness: Option<(usize, usize, usize)>,
    pub ip_full: bool,
    pub ip_witness: Option<(ElemSet, usize)>,
}

impl PredomainReport {
    pub fn is_predomain(&self) -> bool {
        self.transitive && self.ip_full
    }

    /// Human-readable reason for the first failing axiom.
    pub fn failure(&self, carrier: &Carrier) -> Option<String> {
        let n = |i: usize| carrier.name(i).to_string();
        if let Some((a, b, c)) = self.trans_witness {
            return Some(format!("transitivity fails at ({}, {}, {})", n(a), n(b), n(c)));
        }
        if let Some(c) = self.ip0_witness {
            return Some(format!("nothing lies below {}", n(c)));
        }
        if let Some((a1, a2, c)) = self.ip2_witness {
            return Some(format!("no interpolant between {{{}, {}}} and {}", n(a1), n(a2), n(c)));
        }
        self.ip_witness
            .map(|(f, c)| format!("no interpolant between {} and {}", carrier.format_set(f), n(c)))
    }
}

/// Check transitivity and the interpolation axioms.
///
/// For transitive relations the full interpolation property is
/// equivalent to the empty and two-element instances; a disagreement
/// there is reported as [`Error::InternalInconsistency`].
pub fn validate_predomain(r: &Relation) -> Result<PredomainReport> {
    let n = r.len();
    let trans_witness = r.transitivity_witness();
    let ip0_witness = (0..n).find(|&c| r.pred(c).is_empty());

    // Some b with F below b and b below c.
    let interpolates = |f: ElemSet, c: usize| -> bool { r.pred(c).iter().any(|b| f.is_subset(r.pred(b))) };

    let mut ip1_witness = None;
    let mut ip2_witness = None;
    'ip2: for c in 0..n {
        let below: Vec<usize> = r.pred(c).iter().collect();
        for (i, &a1) in below.iter().enumerate() {
            for &a2 in &below[i..] {
                if !interpolates(ElemSet::from_indices([a1, a2]), c) {
                    if a1 == a2 && ip1_witness.is_none() {
                        ip1_witness = Some((a1, c));
                    }
                    if ip2_witness.is_none() {
                        ip2_witness = Some((a1, a2, c));
                    }
                    if ip1_witness.is_some() {
                        break 'ip2;
                    }
                }
            }
        }
    }

    let ip_witness = (0..n).find_map(|c| r.pred(c).subsets().find(|&f| !interpolates(f, c)).map(|f| (f, c)));

    let report = PredomainReport {
        transitive: trans_witness.is_none(),
        trans_witness,
        ip0: ip0_witness.is_none(),
        ip0_witness,
        ip1: ip1_witness.is_none(),
        ip1_witness,
        ip2: ip2_witness.is_none(),
        ip2_witness,
        ip_full: ip_witness.is_none(),
        ip_witness,
    };
    if report.transitive && report.ip_full != (report.ip0 && report.ip2) {
        return Err(Error::InternalInconsistency(format!(
            "interpolation {} but (IP0 and IP2) {} on {r:?}",
            report.ip_full,
            report.ip0 && report.ip2
        )));
    }
    Ok(report)
}

/// A validated predomain.
#[derive(Clone, PartialEq, Eq)]
pub struct Predomain {
    rel: Relation,
}

impl std::fmt::Debug for Predomain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Predomain{:?}", self.rel)
    }
}

/// Flags for a map between predomains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MapReport {
    pub continuous: bool,
    pub rel_preserving: bool,
    pub open_map: bool,
}

impl Predomain {
    pub fn new(rel: Relation) -> Result<Self> {
        let report = validate_predomain(&rel)?;
        match report.failure(rel.carrier()) {
            None => Ok(Predomain { rel }),
            Some(why) => Err(Error::NotPredomain(why)),
        }
    }

    pub fn rel(&self) -> &Relation {
        &self.rel
    }

    pub fn carrier(&self) -> &Carrier {
        self.rel.carrier()
    }

    pub fn len(&self) -> usize {
        self.rel.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn holds(&self, a: usize, b: usize) -> bool {
        self.rel.holds(a, b)
    }

    /// Elements below `c`.
    pub fn down_set(&self, c: usize) -> ElemSet {
        self.rel.pred(c)
    }

    /// Elements above `c`.
    pub fn up_set(&self, c: usize) -> ElemSet {
        self.rel.succ(c)
    }

    pub fn down_set_of(&self, label: &str) -> Result<ElemSet> {
        Ok(self.down_set(self.carrier().index_of(label)?))
    }

    pub fn up_set_of(&self, label: &str) -> Result<ElemSet> {
        Ok(self.up_set(self.carrier().index_of(label)?))
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.carrier().index_of(label)
    }

    /// `a <= b` iff everything below `a` is below `b`.
    pub fn natural_preorder(&self) -> Relation {
        self.rel.downset_inclusion()
    }

    /// The relation `a ≺≺_s b` iff some `c` below `b` has everything below
    /// `a` below it.
    pub fn stratified_relation(&self) -> Relation {
        let rel = &self.rel;
        Relation::from_fn(self.carrier().clone(), |a, b| {
            rel.pred(b).iter().any(|c| rel.pred(a).is_subset(rel.pred(c)))
        })
    }

    /// The stratification, itself a stratified predomain.
    pub fn stratify(&self) -> Result<Predomain> {
        let s = self.stratified_relation();
        if !self.rel.is_subrelation_of(&s) {
            return Err(Error::InternalInconsistency("stratification is not extensive".into()));
        }
        Predomain::new(s)
    }

    /// A pair related after stratification but not before. Off-diagonal
    /// pairs come first, then targets with the fewest successors, then
    /// declaration order.
    pub fn stratification_witness(&self) -> Option<(usize, usize)> {
        let s = self.stratified_relation();
        let found = s
            .pairs()
            .filter(|&(a, b)| !self.rel.holds(a, b))
            .min_by_key(|&(a, b)| (a == b, self.rel.succ(b).len(), a, b));
        found
    }

    pub fn is_stratified(&self) -> bool {
        self.stratification_witness().is_none()
    }

    /// `a ≺≺ c <= b` implies `a ≺≺ b`; holds in every predomain.
    pub fn property_two_witness(&self) -> Option<(usize, usize, usize)> {
        let le = self.natural_preorder();
        self.rel
            .pairs()
            .find_map(|(a, c)| le.succ(c).iter().find(|&b| !self.rel.holds(a, b)).map(|b| (a, c, b)))
    }

    /// `a <= c ≺≺ b` implies `a ≺≺ b`; holds iff stratified.
    pub fn property_three_witness(&self) -> Option<(usize, usize, usize)> {
        let le = self.natural_preorder();
        let found = le.pairs().find_map(|(a, c)| {
            self.rel
                .succ(c)
                .iter()
                .find(|&b| !self.rel.holds(a, b))
                .map(|b| (a, c, b))
        });
        found
    }

    /// `q` is dense if every related pair has an interpolant in `q`.
    pub fn is_dense_subset(&self, q: ElemSet) -> bool {
        self.rel.pairs().all(|(a, c)| {
            !self
                .rel
                .succ(a)
                .intersection(self.rel.pred(c))
                .intersection(q)
                .is_empty()
        })
    }

    /// The relation restricted to `q`, relabelled onto `q`'s labels.
    pub fn restrict(&self, q: ElemSet) -> Result<Predomain> {
        Predomain::new(self.rel.restrict(q)?)
    }

    /// Open sets: closed upwards under the relation, and every member has
    /// a member below it.
    pub fn is_cspace_open(&self, u: ElemSet) -> bool {
        self.rel.succ_of_set(u).is_subset(u) && u.is_subset(self.rel.succ_of_set(u))
    }

    /// The c-space topology, by filtering all subsets.
    pub fn cspace_topology(&self) -> Result<FiniteTopology> {
        if self.len() > SUBSET_FILTER_BOUND {
            return Err(Error::EnumerationBound {
                size: self.len(),
                bound: SUBSET_FILTER_BOUND,
            });
        }
        FiniteTopology::from_filter(self.carrier().clone(), |u| self.is_cspace_open(u))
    }

    /// Build the predomain of a topology's topological way-below relation.
    pub fn from_topology(t: &FiniteTopology) -> Result<Predomain> {
        Predomain::new(t.topological_waybelow())
    }

    /// Classify `f: self → target` given as an index table.
    pub fn check_map(&self, target: &Predomain, f: &[usize]) -> Result<MapReport> {
        check_continuous_map(self, target, f)
    }
}

fn check_table(p: &Predomain, q: &Predomain, f: &[usize]) -> Result<()> {
    if f.len() != p.len() {
        return Err(Error::LengthMismatch {
            expected: p.len(),
            got: f.len(),
        });
    }
    for &y in f {
        q.carrier().check_index(y)?;
    }
    Ok(())
}

/// Continuity, relation preservation and openness of a map between
/// predomains.
pub fn check_continuous_map(p: &Predomain, q: &Predomain, f: &[usize]) -> Result<MapReport> {
    check_table(p, q, f)?;
    Ok(MapReport {
        continuous: is_continuous_map(p, q, f),
        rel_preserving: p.rel().pairs().all(|(a, b)| q.holds(f[a], f[b])),
        open_map: is_open_map(p, q, f)?,
    })
}

/// Continuity for the c-space topologies: every `c ≺≺ f(b)` has some
/// `a ≺≺ b` with `f(↟a) ⊆ ↟c`.
pub fn is_continuous_map(p: &Predomain, q: &Predomain, f: &[usize]) -> bool {
    (0..p.len()).all(|b| {
        q.down_set(f[b]).iter().all(|c| {
            p.down_set(b)
                .iter()
                .any(|a| p.up_set(a).iter().all(|x| q.holds(c, f[x])))
        })
    })
}

/// `c ≺≺ f(b)` implies some `a ≺≺ b` with `c ≺≺ f(a)`. Implied by
/// continuity but strictly weaker: `{1 ≺≺ 0, 1 ≺≺ 1} → {0 ≺≺ 0, 1 ≺≺ 0, 1 ≺≺ 1}`,
/// `0 ↦ 1, 1 ↦ 0` satisfies it without being continuous.
pub fn has_pointwise_approximation(p: &Predomain, q: &Predomain, f: &[usize]) -> bool {
    (0..p.len()).all(|b| {
        q.down_set(f[b])
            .iter()
            .all(|c| p.down_set(b).iter().any(|a| q.holds(c, f[a])))
    })
}

/// The saturation of the image of every open set is open.
pub fn is_open_map(p: &Predomain, q: &Predomain, f: &[usize]) -> Result<bool> {
    let tp = p.cspace_topology()?;
    let tq = q.cspace_topology()?;
    Ok(tp.opens().iter().all(|u| {
        let image: ElemSet = u.iter().map(|x| f[x]).collect();
        tq.is_open(tq.saturation_of_set(image))
    }))
}
