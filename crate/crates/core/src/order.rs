//! Finite carriers, element subsets and dense binary relations.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest carrier representable by [`ElemSet`].
pub const MAX_CARRIER: usize = 128;

/// A subset of a carrier, one bit per element (declaration order).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ElemSet(u128);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub fn from_bits(bits: u128) -> Self {
        ElemSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 128 {
            ElemSet(u128::MAX)
        } else {
            ElemSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        ElemSet(1u128 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(ElemSet::EMPTY, |s, i| s.with(i))
    }

    pub fn with(self, i: usize) -> Self {
        ElemSet(self.0 | (1u128 << i))
    }

    pub fn without(self, i: usize) -> Self {
        ElemSet(self.0 & !(1u128 << i))
    }

    pub fn contains(self, i: usize) -> bool {
        i < 128 && self.0 >> i & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: ElemSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: ElemSet) -> Self {
        ElemSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ElemSet) -> Self {
        ElemSet(self.0 & other.0)
    }

    pub fn difference(self, other: ElemSet) -> Self {
        ElemSet(self.0 & !other.0)
    }

    /// Lowest member.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> ElemIter {
        ElemIter(self.0)
    }

    /// All subsets of `self`, starting with the empty set.
    pub fn subsets(self) -> SubsetIter {
        SubsetIter {
            mask: self.0,
            next: Some(0),
        }
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        ElemSet::from_indices(iter)
    }
}

pub struct ElemIter(u128);

impl Iterator for ElemIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

pub struct SubsetIter {
    mask: u128,
    next: Option<u128>,
}

impl Iterator for SubsetIter {
    type Item = ElemSet;

    fn next(&mut self) -> Option<ElemSet> {
        let cur = self.next?;
        // Standard submask walk in increasing order.
        let succ = (cur | !self.mask).wrapping_add(1) & self.mask;
        self.next = (succ != 0).then_some(succ);
        Some(ElemSet(cur))
    }
}

/// An ordered list of distinct, nonempty element labels.
#[derive(Clone)]
pub struct Carrier {
    names: Arc<[String]>,
}

impl Carrier {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        if names.len() > MAX_CARRIER {
            return Err(Error::CarrierTooLarge {
                size: names.len(),
                max: MAX_CARRIER,
            });
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(Error::EmptyLabel);
            }
            if names[..i].contains(n) {
                return Err(Error::DuplicateLabel(n.clone()));
            }
        }
        Ok(Carrier { names: names.into() })
    }

    /// Carrier labelled `0, 1, .., n-1`.
    pub fn numbered(n: usize) -> Result<Self> {
        Carrier::new((0..n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn check_index(&self, i: usize) -> Result<usize> {
        if i < self.len() {
            Ok(i)
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                size: self.len(),
            })
        }
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    /// Parse a set of labels into a subset.
    pub fn subset<'a, I: IntoIterator<Item = &'a str>>(&self, labels: I) -> Result<ElemSet> {
        labels
            .into_iter()
            .try_fold(ElemSet::EMPTY, |s, l| Ok(s.with(self.index_of(l)?)))
    }

    /// `{a, b}` style rendering of a subset.
    pub fn format_set(&self, s: ElemSet) -> String {
        let parts: Vec<&str> = s.iter().map(|i| self.name(i)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl PartialEq for Carrier {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for Carrier {}

impl fmt::Debug for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names.iter()).finish()
    }
}

/// A binary relation on a carrier, stored as successor and predecessor
/// bit rows.
#[derive(Clone, PartialEq, Eq)]
pub struct Relation {
    carrier: Carrier,
    succ: Vec<ElemSet>,
    pred: Vec<ElemSet>,
}

/// Which of the basic order properties a relation has.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelationReport {
    pub transitive: bool,
    pub reflexive: bool,
    pub antisymmetric: bool,
}

impl Relation {
    pub fn empty(carrier: Carrier) -> Self {
        let n = carrier.len();
        Relation {
            carrier,
            succ: vec![ElemSet::EMPTY; n],
            pred: vec![ElemSet::EMPTY; n],
        }
    }

    pub fn identity(carrier: Carrier) -> Self {
        Relation::from_fn(carrier, |a, b| a == b)
    }

    pub fn full(carrier: Carrier) -> Self {
        Relation::from_fn(carrier, |_, _| true)
    }

    pub fn from_fn(carrier: Carrier, mut holds: impl FnMut(usize, usize) -> bool) -> Self {
        let n = carrier.len();
        let succ: Vec<ElemSet> = (0..n).map(|a| (0..n).filter(|&b| holds(a, b)).collect()).collect();
        Relation::from_rows(carrier, succ)
    }

    /// Build from successor rows: `rows[a]` is the set of `b` with `a r b`.
    pub fn from_rows(carrier: Carrier, rows: Vec<ElemSet>) -> Self {
        let n = carrier.len();
        assert_eq!(rows.len(), n, "one row per carrier element");
        let full = ElemSet::full(n);
        let mut pred = vec![ElemSet::EMPTY; n];
        for (a, row) in rows.iter().enumerate() {
            debug_assert!(row.is_subset(full));
            for b in row.iter() {
                pred[b] = pred[b].with(a);
            }
        }
        Relation {
            carrier,
            succ: rows,
            pred,
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(carrier: Carrier, pairs: I) -> Result<Self> {
        let mut rows = vec![ElemSet::EMPTY; carrier.len()];
        for (a, b) in pairs {
            carrier.check_index(a)?;
            carrier.check_index(b)?;
            rows[a] = rows[a].with(b);
        }
        Ok(Relation::from_rows(carrier, rows))
    }

    pub fn from_labeled_pairs<'a, I>(carrier: Carrier, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let idx: Result<Vec<(usize, usize)>> = pairs
            .into_iter()
            .map(|(a, b)| Ok((carrier.index_of(a)?, carrier.index_of(b)?)))
            .collect();
        Relation::from_pairs(carrier, idx?)
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.iter().all(|r| r.is_empty())
    }

    pub fn holds(&self, a: usize, b: usize) -> bool {
        self.succ[a].contains(b)
    }

    /// `{b | a r b}`.
    pub fn succ(&self, a: usize) -> ElemSet {
        self.succ[a]
    }

    /// `{a | a r b}`.
    pub fn pred(&self, b: usize) -> ElemSet {
        self.pred[b]
    }

    pub fn rows(&self) -> &[ElemSet] {
        &self.succ
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.iter().map(move |b| (a, b)))
    }

    pub fn pair_count(&self) -> usize {
        self.succ.iter().map(|r| r.len()).sum()
    }

    /// Elements `b` with `x r b` for every `x` in `set`.
    pub fn common_succ(&self, set: ElemSet) -> ElemSet {
        set.iter()
            .fold(self.carrier.all(), |acc, x| acc.intersection(self.succ[x]))
    }

    /// Elements `b` with `b r x` for some `x` in `set`.
    pub fn pred_of_set(&self, set: ElemSet) -> ElemSet {
        set.iter().fold(ElemSet::EMPTY, |acc, x| acc.union(self.pred[x]))
    }

    /// Elements `b` with `x r b` for some `x` in `set`.
    pub fn succ_of_set(&self, set: ElemSet) -> ElemSet {
        set.iter().fold(ElemSet::EMPTY, |acc, x| acc.union(self.succ[x]))
    }

    pub fn is_subrelation_of(&self, other: &Relation) -> bool {
        self.carrier == other.carrier && self.succ.iter().zip(&other.succ).all(|(a, b)| a.is_subset(*b))
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        if self.carrier != other.carrier {
            return Err(Error::CarrierMismatch);
        }
        let rows = self.succ.iter().zip(&other.succ).map(|(a, b)| a.union(*b)).collect();
        Ok(Relation::from_rows(self.carrier.clone(), rows))
    }

    /// Smallest transitive relation containing `self` (Warshall on rows).
    pub fn transitive_closure(&self) -> Relation {
        let n = self.len();
        let mut rows = self.succ.clone();
        for k in 0..n {
            let rk = rows[k];
            for row in rows.iter_mut() {
                if row.contains(k) {
                    *row = row.union(rk);
                }
            }
        }
        Relation::from_rows(self.carrier.clone(), rows)
    }

    pub fn is_transitive(&self) -> bool {
        self.transitivity_witness().is_none()
    }

    /// Some `(a, b, c)` with `a r b r c` but not `a r c`.
    pub fn transitivity_witness(&self) -> Option<(usize, usize, usize)> {
        for (a, row) in self.succ.iter().enumerate() {
            for b in row.iter() {
                let missing = self.succ[b].difference(*row);
                if let Some(c) = missing.first() {
                    return Some((a, b, c));
                }
            }
        }
        None
    }

    pub fn classify(&self) -> RelationReport {
        let n = self.len();
        RelationReport {
            transitive: self.is_transitive(),
            reflexive: (0..n).all(|a| self.holds(a, a)),
            antisymmetric: (0..n).all(|a| self.succ[a].without(a).iter().all(|b| !self.holds(b, a))),
        }
    }

    /// The converse relation.
    pub fn converse(&self) -> Relation {
        Relation {
            carrier: self.carrier.clone(),
            succ: self.pred.clone(),
            pred: self.succ.clone(),
        }
    }

    /// The preorder `a <= b` iff every predecessor of `a` is a predecessor of `b`.
    pub fn downset_inclusion(&self) -> Relation {
        Relation::from_fn(self.carrier.clone(), |a, b| self.pred[a].is_subset(self.pred[b]))
    }

    /// Restriction to a subset, relabelled onto a fresh carrier holding
    /// the subset's labels in declaration order.
    pub fn restrict(&self, keep: ElemSet) -> Result<Relation> {
        let idx: Vec<usize> = keep.iter().filter(|&i| i < self.len()).collect();
        let carrier = Carrier::new(idx.iter().map(|&i| self.carrier.name(i).to_string()))?;
        let pos = |i: usize| idx.iter().position(|&j| j == i);
        let rows = idx
            .iter()
            .map(|&a| self.succ[a].iter().filter_map(pos).collect())
            .collect();
        Ok(Relation::from_rows(carrier, rows))
    }

    /// Same truth table on a carrier of equal size with different labels.
    pub fn relabel(&self, carrier: Carrier) -> Result<Relation> {
        if carrier.len() != self.len() {
            return Err(Error::CarrierMismatch);
        }
        Ok(Relation::from_rows(carrier, self.succ.clone()))
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .pairs()
            .map(|(a, b)| format!("({},{})", self.carrier.name(a), self.carrier.name(b)))
            .collect();
        write!(f, "Relation{{{}}}", pairs.join(","))
    }
}

/// A subset is directed when it is nonempty and some member lies above
/// every member. For finite `d` the witness for `F = d` serves every
/// finite `F` inside `d`.
pub fn is_directed(r: &Relation, d: ElemSet) -> bool {
    !d.is_empty() && !r.common_succ(d).intersection(d).is_empty()
}

/// Every member of `d` is related to some member of `d_sub`.
pub fn is_cofinal(r: &Relation, d: ElemSet, d_sub: ElemSet) -> Result<bool> {
    if !d_sub.is_subset(d) {
        return Err(Error::NotSubset);
    }
    Ok(d.iter().all(|x| !r.succ(x).intersection(d_sub).is_empty()))
}
