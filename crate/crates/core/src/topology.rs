//! Finite topologies given extensionally by their family of open sets.

use crate::error::{Error, Result};
use crate::order::{Carrier, ElemSet, Relation};

/// Largest carrier for which all `2^n` subsets are filtered.
pub const SUBSET_FILTER_BOUND: usize = 16;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteTopology {
    carrier: Carrier,
    /// Sorted by bit pattern, no duplicates.
    opens: Vec<ElemSet>,
}

impl std::fmt::Debug for FiniteTopology {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let opens: Vec<String> = self.opens.iter().map(|&u| self.carrier.format_set(u)).collect();
        write!(f, "Topology[{}]", opens.join(" "))
    }
}

impl FiniteTopology {
    /// Validate a family of opens: it must contain the empty and the full
    /// set and be closed under binary unions and intersections.
    pub fn new(carrier: Carrier, opens: impl IntoIterator<Item = ElemSet>) -> Result<Self> {
        let full = carrier.all();
        let mut opens: Vec<ElemSet> = opens.into_iter().collect();
        opens.sort();
        opens.dedup();
        if let Some(bad) = opens.iter().find(|u| !u.is_subset(full)) {
            return Err(Error::NotTopology(format!("{bad:?} is not a subset of the carrier")));
        }
        let t = FiniteTopology { carrier, opens };
        if !t.is_open(ElemSet::EMPTY) {
            return Err(Error::NotTopology("missing the empty set".into()));
        }
        if !t.is_open(full) {
            return Err(Error::NotTopology("missing the full carrier".into()));
        }
        for (i, &u) in t.opens.iter().enumerate() {
            for &v in &t.opens[i + 1..] {
                if !t.is_open(u.union(v)) {
                    return Err(Error::NotTopology(format!(
                        "union {} is not open",
                        t.carrier.format_set(u.union(v))
                    )));
                }
                if !t.is_open(u.intersection(v)) {
                    return Err(Error::NotTopology(format!(
                        "intersection {} is not open",
                        t.carrier.format_set(u.intersection(v))
                    )));
                }
            }
        }
        Ok(t)
    }

    /// All subsets accepted by `is_open`, without validation.
    pub(crate) fn from_filter(carrier: Carrier, is_open: impl Fn(ElemSet) -> bool) -> Result<Self> {
        if carrier.len() > SUBSET_FILTER_BOUND {
            return Err(Error::EnumerationBound {
                size: carrier.len(),
                bound: SUBSET_FILTER_BOUND,
            });
        }
        let opens = carrier.all().subsets().filter(|&u| is_open(u)).collect();
        Ok(FiniteTopology { carrier, opens })
    }

    pub fn indiscrete(carrier: Carrier) -> Self {
        let full = carrier.all();
        FiniteTopology {
            carrier,
            opens: vec![ElemSet::EMPTY, full],
        }
    }

    pub fn discrete(carrier: Carrier) -> Result<Self> {
        FiniteTopology::from_filter(carrier, |_| true)
    }

    /// Up-sets of a preorder (the Alexandrov topology).
    pub fn of_upsets(preorder: &Relation) -> Result<Self> {
        FiniteTopology::from_filter(preorder.carrier().clone(), |u| preorder.succ_of_set(u).is_subset(u))
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn opens(&self) -> &[ElemSet] {
        &self.opens
    }

    pub fn is_open(&self, u: ElemSet) -> bool {
        self.opens.binary_search(&u).is_ok()
    }

    /// Union of the opens inside `s`.
    pub fn interior(&self, s: ElemSet) -> ElemSet {
        self.opens
            .iter()
            .filter(|u| u.is_subset(s))
            .fold(ElemSet::EMPTY, |acc, &u| acc.union(u))
    }

    /// Saturation of `x`: the intersection of all opens containing it.
    pub fn saturation(&self, x: usize) -> ElemSet {
        self.opens
            .iter()
            .filter(|u| u.contains(x))
            .fold(self.carrier.all(), |acc, &u| acc.intersection(u))
    }

    /// Saturation of a set: union of the saturations of its points.
    pub fn saturation_of_set(&self, s: ElemSet) -> ElemSet {
        s.iter().fold(ElemSet::EMPTY, |acc, x| acc.union(self.saturation(x)))
    }

    /// `x <= y` iff every open containing `x` contains `y`.
    pub fn specialization(&self) -> Relation {
        Relation::from_fn(self.carrier.clone(), |x, y| {
            self.opens.iter().all(|u| !u.contains(x) || u.contains(y))
        })
    }

    /// Every point has a neighbourhood basis of saturations.
    pub fn is_cspace(&self) -> bool {
        let n = self.carrier.len();
        (0..n).all(|b| {
            self.opens.iter().filter(|u| u.contains(b)).all(|&u| {
                (0..n).any(|x| {
                    let up = self.saturation(x);
                    up.is_subset(u) && self.interior(up).contains(b)
                })
            })
        })
    }

    /// `a` relates to `b` iff the saturation of `a` is a neighbourhood of `b`.
    pub fn topological_waybelow(&self) -> Relation {
        let ups: Vec<ElemSet> = (0..self.carrier.len()).map(|a| self.saturation(a)).collect();
        Relation::from_fn(self.carrier.clone(), |a, b| self.interior(ups[a]).contains(b))
    }

    /// Preimages of opens of `target` under `f` are open.
    pub fn is_continuous(&self, target: &FiniteTopology, f: &[usize]) -> bool {
        target.opens.iter().all(|&w| self.is_open(preimage(f, w)))
    }

    /// Every topology on an `n`-point carrier, by filtering all families
    /// of subsets. Only feasible for `n <= 4`.
    pub fn enumerate_all(carrier: &Carrier) -> Result<Vec<FiniteTopology>> {
        let n = carrier.len();
        if n > 4 {
            return Err(Error::EnumerationBound { size: n, bound: 4 });
        }
        let full = carrier.all();
        let middle: Vec<ElemSet> = full.subsets().filter(|&s| !s.is_empty() && s != full).collect();
        let mut out = Vec::new();
        for pick in 0u64..1 << middle.len() {
            let mut opens = vec![ElemSet::EMPTY, full];
            opens.extend(
                middle
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| pick >> i & 1 == 1)
                    .map(|(_, &s)| s),
            );
            if let Ok(t) = FiniteTopology::new(carrier.clone(), opens) {
                out.push(t);
            }
        }
        Ok(out)
    }
}

pub(crate) fn preimage(f: &[usize], w: ElemSet) -> ElemSet {
    f.iter()
        .enumerate()
        .filter(|(_, &y)| w.contains(y))
        .map(|(x, _)| x)
        .collect()
}

/// A map `X × Y → Z` given as a row-major table `f[x * |Y| + y]`.
pub struct PairMap<'a> {
    pub x: &'a FiniteTopology,
    pub y: &'a FiniteTopology,
    pub z: &'a FiniteTopology,
    pub table: &'a [usize],
}

impl PairMap<'_> {
    fn at(&self, x: usize, y: usize) -> usize {
        self.table[x * self.y.carrier.len() + y]
    }

    fn check_shape(&self) -> Result<()> {
        let expected = self.x.carrier.len() * self.y.carrier.len();
        if self.table.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                got: self.table.len(),
            });
        }
        if let Some(&bad) = self.table.iter().find(|&&v| v >= self.z.carrier.len()) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                size: self.z.carrier.len(),
            });
        }
        Ok(())
    }

    /// Continuity in each argument with the other held fixed.
    pub fn is_separately_continuous(&self) -> Result<bool> {
        self.check_shape()?;
        let (nx, ny) = (self.x.carrier.len(), self.y.carrier.len());
        let in_x = (0..ny).all(|y| {
            let slice: Vec<usize> = (0..nx).map(|x| self.at(x, y)).collect();
            self.x.is_continuous(self.z, &slice)
        });
        let in_y = (0..nx).all(|x| {
            let slice: Vec<usize> = (0..ny).map(|y| self.at(x, y)).collect();
            self.y.is_continuous(self.z, &slice)
        });
        Ok(in_x && in_y)
    }

    /// Continuity for the product topology: every point of a preimage has
    /// an open box around it inside the preimage.
    pub fn is_jointly_continuous(&self) -> Result<bool> {
        self.check_shape()?;
        let (nx, ny) = (self.x.carrier.len(), self.y.carrier.len());
        for &w in self.z.opens() {
            let inside = |x: usize, y: usize| w.contains(self.at(x, y));
            for x in 0..nx {
                for y in 0..ny {
                    if !inside(x, y) {
                        continue;
                    }
                    let boxed = self.x.opens().iter().filter(|u| u.contains(x)).any(|u| {
                        self.y
                            .opens()
                            .iter()
                            .filter(|v| v.contains(y))
                            .any(|v| u.iter().all(|x2| v.iter().all(|y2| inside(x2, y2))))
                    });
                    if !boxed {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// Joint continuity of `f: X × Y → Z` for the product topology.
pub fn check_joint_continuity(
    x: &FiniteTopology,
    y: &FiniteTopology,
    z: &FiniteTopology,
    table: &[usize],
) -> Result<bool> {
    PairMap { x, y, z, table }.is_jointly_continuous()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sierpinski() -> FiniteTopology {
        let c = Carrier::new(["0", "1"]).unwrap();
        FiniteTopology::new(c, [ElemSet::EMPTY, ElemSet::singleton(1), ElemSet::full(2)]).unwrap()
    }

    #[test]
    fn validation_rejects_non_topologies() {
        let c = Carrier::numbered(3).unwrap();
        let missing_union = [
            ElemSet::EMPTY,
            ElemSet::singleton(0),
            ElemSet::singleton(1),
            ElemSet::full(3),
        ];
        assert!(matches!(
            FiniteTopology::new(c.clone(), missing_union),
            Err(Error::NotTopology(_))
        ));
        assert!(FiniteTopology::new(c, [ElemSet::EMPTY]).is_err());
    }

    #[test]
    fn topology_counts_on_small_carriers() {
        // Known sequence of labelled topologies: 1, 4, 29, 355.
        let counts: Vec<usize> = (1..=4)
            .map(|n| {
                FiniteTopology::enumerate_all(&Carrier::numbered(n).unwrap())
                    .unwrap()
                    .len()
            })
            .collect();
        assert_eq!(counts, vec![1, 4, 29, 355]);
    }

    #[test]
    fn sierpinski_space_basics() {
        let s = sierpinski();
        let spec = s.specialization();
        assert!(spec.holds(0, 1));
        assert!(!spec.holds(1, 0));
        assert_eq!(s.saturation(0), ElemSet::full(2));
        assert!(s.is_cspace());
        assert_eq!(s.topological_waybelow(), spec);
    }

    #[test]
    fn indiscrete_waybelow_relates_everything() {
        let t = FiniteTopology::indiscrete(Carrier::new(["x", "y"]).unwrap());
        let wb = t.topological_waybelow();
        assert_eq!(wb.pair_count(), 4);
    }

    #[test]
    fn every_small_finite_space_is_a_cspace() {
        for n in 1..=4 {
            for t in FiniteTopology::enumerate_all(&Carrier::numbered(n).unwrap()).unwrap() {
                assert!(t.is_cspace(), "{t:?}");
            }
        }
    }

    #[test]
    fn joint_continuity_into_indiscrete_target() {
        let s = sierpinski();
        let z = FiniteTopology::indiscrete(Carrier::new(["p", "q"]).unwrap());
        for bits in 0u32..16 {
            let table: Vec<usize> = (0..4).map(|i| (bits >> i & 1) as usize).collect();
            assert!(check_joint_continuity(&s, &s, &z, &table).unwrap());
        }
    }

    #[test]
    fn addition_on_sierpinski_is_jointly_continuous() {
        // max on {0 < 1} is monotone, hence continuous in each argument.
        let s = sierpinski();
        let table = [0, 1, 1, 1];
        let m = PairMap {
            x: &s,
            y: &s,
            z: &s,
            table: &table,
        };
        assert!(m.is_separately_continuous().unwrap());
        assert!(m.is_jointly_continuous().unwrap());
        let anti = [1, 0, 0, 0];
        let m = PairMap {
            x: &s,
            y: &s,
            z: &s,
            table: &anti,
        };
        assert!(!m.is_separately_continuous().unwrap());
        assert!(!m.is_jointly_continuous().unwrap());
    }
}
