//! Round ideals and the round ideal completion of a finite predomain.

use crate::error::{Error, Result};
use crate::ext::ExtRational;
use crate::funcspace::{FnOverP, FunctionSpace};
use crate::order::{is_directed, Carrier, ElemSet, Relation};
use crate::predomain::{is_continuous_map, Predomain};

/// Default largest carrier whose subsets are filtered for round ideals.
pub const ENUMERATION_BOUND: usize = 14;

/// Largest poset on which [`waybelow_oracle`] walks all subfamilies.
pub const ORACLE_BOUND: usize = 16;

/// A directed, downward closed subset of a predomain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RoundIdeal(ElemSet);

impl RoundIdeal {
    pub fn new(p: &Predomain, members: ElemSet) -> Result<Self> {
        if !members.is_subset(p.carrier().all()) {
            return Err(Error::NotSubset);
        }
        if !is_directed(p.rel(), members) {
            return Err(Error::NotRoundIdeal(format!(
                "{} is not directed",
                p.carrier().format_set(members)
            )));
        }
        if !p.rel().pred_of_set(members).is_subset(members) {
            return Err(Error::NotRoundIdeal(format!(
                "{} is not downward closed",
                p.carrier().format_set(members)
            )));
        }
        Ok(RoundIdeal(members))
    }

    pub fn members(self) -> ElemSet {
        self.0
    }
}

pub fn is_round_ideal(p: &Predomain, s: ElemSet) -> bool {
    is_directed(p.rel(), s) && p.rel().pred_of_set(s).is_subset(s)
}

/// `↡a`, always a round ideal.
pub fn principal_ideal(p: &Predomain, a: usize) -> Result<RoundIdeal> {
    p.carrier().check_index(a)?;
    Ok(RoundIdeal(p.down_set(a)))
}

/// The round ideals of a predomain ordered by inclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Completion {
    pd: Predomain,
    /// Sorted by bit pattern.
    ideals: Vec<ElemSet>,
    carrier: Carrier,
    leq: Relation,
    waybelow: Relation,
}

impl Completion {
    pub fn new(p: &Predomain) -> Result<Self> {
        Completion::with_bound(p, ENUMERATION_BOUND)
    }

    pub fn with_bound(p: &Predomain, bound: usize) -> Result<Self> {
        if p.len() > bound {
            return Err(Error::EnumerationBound { size: p.len(), bound });
        }
        let mut ideals: Vec<ElemSet> = p.carrier().all().subsets().filter(|&s| is_round_ideal(p, s)).collect();
        ideals.sort();
        let carrier = Carrier::new(ideals.iter().map(|&s| p.carrier().format_set(s)))?;
        let leq = Relation::from_fn(carrier.clone(), |i, j| ideals[i].is_subset(ideals[j]));
        let waybelow = Relation::from_fn(carrier.clone(), |i, j| {
            ideals[j].iter().any(|b| ideals[i].is_subset(p.down_set(b)))
        });
        Ok(Completion {
            pd: p.clone(),
            ideals,
            carrier,
            leq,
            waybelow,
        })
    }

    pub fn predomain(&self) -> &Predomain {
        &self.pd
    }

    /// One label per ideal, its member set.
    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn ideals(&self) -> &[ElemSet] {
        &self.ideals
    }

    pub fn ideal(&self, i: usize) -> RoundIdeal {
        RoundIdeal(self.ideals[i])
    }

    pub fn index_of(&self, s: ElemSet) -> Option<usize> {
        self.ideals.binary_search(&s).ok()
    }

    /// Inclusion.
    pub fn leq(&self) -> &Relation {
        &self.leq
    }

    /// `I ≪ J` iff `I ⊆ ↡b` for some `b ∈ J`.
    pub fn waybelow(&self) -> &Relation {
        &self.waybelow
    }

    /// Index of `↡a`.
    pub fn principal_index(&self, a: usize) -> usize {
        self.index_of(self.pd.down_set(a))
            .expect("principal ideals are round ideals")
    }

    /// For each ideal, some `c ∈ J` with `c ≺≺ c` and `J = ↡c`.
    pub fn generators(&self) -> Vec<Option<usize>> {
        self.ideals
            .iter()
            .map(|&j| j.iter().find(|&c| self.pd.holds(c, c) && self.pd.down_set(c) == j))
            .collect()
    }

    /// The completion as a predomain under `≪`.
    pub fn as_predomain(&self) -> Result<Predomain> {
        Predomain::new(self.waybelow.clone())
    }

    /// `sup_{a ∈ J} f(a)` for every ideal `J`.
    pub fn sup_over_ideals(&self, f: &FnOverP) -> Result<Vec<ExtRational>> {
        FunctionSpace::new(&self.pd).check(f)?;
        Ok(self
            .ideals
            .iter()
            .map(|&j| j.iter().map(|a| f[a].clone()).max().unwrap_or_else(ExtRational::zero))
            .collect())
    }

    /// The unique continuous extension of a lower semicontinuous `f`.
    pub fn extend_continuous(&self, f: &FnOverP) -> Result<Vec<ExtRational>> {
        let space = FunctionSpace::new(&self.pd);
        if let Some(x) = space.lsc_witness(f)? {
            return Err(Error::NotContinuous(format!(
                "f is not lower semicontinuous at {}",
                self.pd.carrier().name(x)
            )));
        }
        self.sup_over_ideals(f)
    }

    /// Extension of a continuous map into a finite poset: `J ↦ sup f(J)`.
    pub fn extend_to_poset(&self, target: &FinitePoset, f: &[usize]) -> Result<Vec<usize>> {
        target.check_map(&self.pd, f)?;
        if !target.is_continuous_from(&self.pd, f)? {
            return Err(Error::NotContinuous("some preimage of an up-set is not open".into()));
        }
        self.ideals
            .iter()
            .map(|&j| {
                let image: ElemSet = j.iter().map(|a| f[a]).collect();
                target.maximum(image).ok_or_else(|| {
                    Error::InternalInconsistency(format!(
                        "image of {} has no largest element",
                        self.pd.carrier().format_set(j)
                    ))
                })
            })
            .collect()
    }
}

/// The directed-supremum definition of way-below on a finite poset.
///
/// `x ≪ y` iff every directed family whose least upper bound lies above
/// `y` contains a member above `x`.
pub fn waybelow_oracle(leq: &Relation) -> Result<Relation> {
    let n = leq.len();
    if n > ORACLE_BOUND {
        return Err(Error::EnumerationBound {
            size: n,
            bound: ORACLE_BOUND,
        });
    }
    let directed = |d: ElemSet| {
        !d.is_empty()
            && d.iter().all(|u| {
                d.iter().all(|v| {
                    !leq.common_succ(ElemSet::from_indices([u, v]))
                        .intersection(d)
                        .is_empty()
                })
            })
    };
    let lub = |d: ElemSet| -> Option<usize> {
        let ub = leq.common_succ(d);
        ub.iter().find(|&u| ub.is_subset(leq.succ(u)))
    };
    let families: Vec<(ElemSet, usize)> = ElemSet::full(n)
        .subsets()
        .filter(|&d| directed(d))
        .filter_map(|d| lub(d).map(|s| (d, s)))
        .collect();
    Ok(Relation::from_fn(leq.carrier().clone(), |x, y| {
        families
            .iter()
            .filter(|&&(_, s)| leq.holds(y, s))
            .all(|&(d, _)| !leq.succ(x).intersection(d).is_empty())
    }))
}

/// `RI(f)(J) = ⋃_{a ∈ J} ↡f(a)`, as a map between ideal indices.
pub fn functor_map(cp: &Completion, cq: &Completion, f: &[usize]) -> Result<Vec<usize>> {
    let (p, q) = (cp.predomain(), cq.predomain());
    if f.len() != p.len() {
        return Err(Error::LengthMismatch {
            expected: p.len(),
            got: f.len(),
        });
    }
    for &y in f {
        q.carrier().check_index(y)?;
    }
    if !is_continuous_map(p, q, f) {
        return Err(Error::NotContinuous("map between predomains".into()));
    }
    cp.ideals()
        .iter()
        .map(|&j| {
            let image = j.iter().fold(ElemSet::EMPTY, |acc, a| acc.union(q.down_set(f[a])));
            cq.index_of(image).ok_or_else(|| {
                Error::InternalInconsistency(format!("{} is not a round ideal", q.carrier().format_set(image)))
            })
        })
        .collect()
}

/// A finite partial order, the target of poset-valued extensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    leq: Relation,
}

impl FinitePoset {
    pub fn new(leq: Relation) -> Result<Self> {
        let r = leq.classify();
        if !(r.reflexive && r.transitive && r.antisymmetric) {
            return Err(Error::NotPartialOrder(format!("{leq:?}")));
        }
        Ok(FinitePoset { leq })
    }

    pub fn leq(&self) -> &Relation {
        &self.leq
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The member of `s` above all others, if any.
    pub fn maximum(&self, s: ElemSet) -> Option<usize> {
        s.iter().find(|&m| s.is_subset(self.leq.pred(m)))
    }

    fn check_map(&self, p: &Predomain, f: &[usize]) -> Result<()> {
        if f.len() != p.len() {
            return Err(Error::LengthMismatch {
                expected: p.len(),
                got: f.len(),
            });
        }
        for &y in f {
            self.leq.carrier().check_index(y)?;
        }
        Ok(())
    }

    /// Every up-set pulls back to an open set of the c-space topology.
    pub fn is_continuous_from(&self, p: &Predomain, f: &[usize]) -> Result<bool> {
        self.check_map(p, f)?;
        // Preimages of principal up-sets suffice: every up-set is their union.
        Ok((0..self.len()).all(|y| {
            let pre: ElemSet = (0..p.len()).filter(|&x| self.leq.holds(y, f[x])).collect();
            p.is_cspace_open(pre)
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{chain3, p4};

    fn fnp(vals: &[u64]) -> FnOverP {
        FnOverP::new(vals.iter().map(|&v| ExtRational::from_int(v)).collect())
    }

    #[test]
    fn p4_has_two_ideals() {
        let p = p4();
        let c = Completion::new(&p).unwrap();
        let names: Vec<&str> = c.carrier().names().iter().map(|s| s.as_str()).collect();
        assert_eq!(names, ["{bot}", "{bot,c}"]);
        assert!(c.generators().iter().all(Option::is_some));
    }

    #[test]
    fn chain3_has_two_ideals() {
        let c = Completion::new(&chain3()).unwrap();
        assert_eq!(c.ideals(), [ElemSet::from_indices([0]), ElemSet::from_indices([0, 1])]);
    }

    #[test]
    fn singleton_has_one_ideal() {
        let p = Predomain::new(Relation::full(Carrier::numbered(1).unwrap())).unwrap();
        let c = Completion::new(&p).unwrap();
        assert_eq!(c.len(), 1);
        assert!(c.waybelow().holds(0, 0));
        assert!(waybelow_oracle(c.leq()).unwrap().holds(0, 0));
    }

    #[test]
    fn principal_ideals() {
        let p = p4();
        let b = p.index_of("b").unwrap();
        let a = p.index_of("a").unwrap();
        assert_eq!(
            principal_ideal(&p, b).unwrap().members(),
            p.carrier().subset(["bot", "c"]).unwrap()
        );
        assert_eq!(
            principal_ideal(&p, a).unwrap().members(),
            p.carrier().subset(["bot"]).unwrap()
        );
        assert_eq!(principal_ideal(&chain3(), 0).unwrap().members(), ElemSet::singleton(0));
        assert!(principal_ideal(&p, 7).is_err());
    }

    #[test]
    fn waybelow_collapses_to_inclusion_on_fixtures() {
        for p in [p4(), chain3()] {
            let c = Completion::new(&p).unwrap();
            assert_eq!(c.waybelow(), c.leq());
            assert_eq!(&waybelow_oracle(c.leq()).unwrap(), c.leq());
            assert_eq!(c.leq().pair_count(), 3);
        }
    }

    #[test]
    fn oracle_on_a_non_finite_style_poset() {
        // Two-element antichain: each element is only way below itself.
        let leq = Relation::identity(Carrier::numbered(2).unwrap());
        assert_eq!(waybelow_oracle(&leq).unwrap(), leq);
    }

    #[test]
    fn round_ideal_rejections() {
        let p = chain3();
        assert!(matches!(
            RoundIdeal::new(&p, ElemSet::EMPTY),
            Err(Error::NotRoundIdeal(_))
        ));
        assert!(matches!(
            RoundIdeal::new(&p, ElemSet::from_indices([0, 2])),
            Err(Error::NotRoundIdeal(_))
        ));
        assert!(matches!(
            RoundIdeal::new(&p, ElemSet::from_indices([1])),
            Err(Error::NotRoundIdeal(_))
        ));
        assert!(RoundIdeal::new(&p, ElemSet::from_indices([0, 1])).is_ok());
    }

    #[test]
    fn sup_over_ideal_and_strict_extension() {
        let p = chain3();
        let c = Completion::new(&p).unwrap();
        let f = fnp(&[0, 5, 7]);
        let raw = c.sup_over_ideals(&f).unwrap();
        assert_eq!(
            raw[c.index_of(ElemSet::from_indices([0, 1])).unwrap()],
            ExtRational::from_int(5)
        );
        assert!(matches!(c.extend_continuous(&f), Err(Error::NotContinuous(_))));
        let g = fnp(&[0, 5, 5]);
        let ext = c.extend_continuous(&g).unwrap();
        for a in 0..3 {
            assert_eq!(ext[c.principal_index(a)], g[a]);
        }
        let k = fnp(&[4, 4, 4]);
        assert!(c
            .extend_continuous(&k)
            .unwrap()
            .iter()
            .all(|v| *v == ExtRational::from_int(4)));
    }

    #[test]
    fn extension_into_own_completion_is_identity() {
        let p = p4();
        let c = Completion::new(&p).unwrap();
        let target = FinitePoset::new(c.leq().clone()).unwrap();
        let f: Vec<usize> = (0..p.len()).map(|a| c.principal_index(a)).collect();
        let ext = c.extend_to_poset(&target, &f).unwrap();
        assert_eq!(ext, (0..c.len()).collect::<Vec<_>>());
    }

    #[test]
    fn functor_examples() {
        let p = chain3();
        let c = Completion::new(&p).unwrap();
        assert_eq!(functor_map(&c, &c, &[0, 1, 2]).unwrap(), [0, 1]);
        let top = c.index_of(ElemSet::from_indices([0, 1])).unwrap();
        assert_eq!(functor_map(&c, &c, &[1, 1, 1]).unwrap(), [top, top]);
    }

    #[test]
    fn functor_rejects_discontinuous_maps() {
        let p = chain3();
        let c = Completion::new(&p).unwrap();
        // 1 ≺≺ f(2) = 1, but everything below 2 maps to 0.
        assert!(matches!(functor_map(&c, &c, &[0, 0, 1]), Err(Error::NotContinuous(_))));
    }

    #[test]
    fn enumeration_bound_is_enforced() {
        let p = Predomain::new(Relation::identity(Carrier::numbered(3).unwrap())).unwrap();
        assert!(matches!(
            Completion::with_bound(&p, 2),
            Err(Error::EnumerationBound { size: 3, bound: 2 })
        ));
    }
}
