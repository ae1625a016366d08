//! Extended-rational functions over a finite predomain: monotone and lower
//! semicontinuous functions, the envelope and its right adjoint, subbasic
//! opens, separation, and convergence of eventually constant sequences.

use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};
use crate::ext::{ExtRational, Rational, ScalarMode};
use crate::order::ElemSet;
use crate::predomain::Predomain;

/// A total function from a carrier to `ExtRational`, by element index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FnOverP(Vec<ExtRational>);

impl FnOverP {
    pub fn new(values: Vec<ExtRational>) -> Self {
        FnOverP(values)
    }

    pub fn constant(n: usize, v: ExtRational) -> Self {
        FnOverP(vec![v; n])
    }

    pub fn from_ints(values: &[u64]) -> Self {
        FnOverP(values.iter().map(|&v| ExtRational::from_int(v)).collect())
    }

    pub fn values(&self) -> &[ExtRational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Pointwise `<=`; `false` on a length mismatch.
    pub fn le(&self, other: &FnOverP) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn zip_with(&self, other: &FnOverP, op: impl Fn(&ExtRational, &ExtRational) -> ExtRational) -> Result<FnOverP> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(FnOverP(self.0.iter().zip(&other.0).map(|(a, b)| op(a, b)).collect()))
    }

    pub fn sup(&self, other: &FnOverP) -> Result<FnOverP> {
        self.zip_with(other, |a, b| a.clone().max(b.clone()))
    }

    pub fn inf(&self, other: &FnOverP) -> Result<FnOverP> {
        self.zip_with(other, |a, b| a.clone().min(b.clone()))
    }

    pub fn add(&self, other: &FnOverP) -> Result<FnOverP> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn scale(&self, q: &ExtRational, mode: ScalarMode) -> Result<FnOverP> {
        Ok(FnOverP(self.0.iter().map(|v| v.scale(q, mode)).collect::<Result<_>>()?))
    }

    /// Every function with values drawn from `grid`, in lexicographic order.
    pub fn all_over_grid(n: usize, grid: &[ExtRational]) -> Vec<FnOverP> {
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<ExtRational>| {
                    grid.iter().map(move |v| {
                        let mut p = prefix.clone();
                        p.push(v.clone());
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(FnOverP).collect()
    }
}

impl Index<usize> for FnOverP {
    type Output = ExtRational;

    fn index(&self, i: usize) -> &ExtRational {
        &self.0[i]
    }
}

impl fmt::Display for FnOverP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The grid `{0, 1, 2, inf}`.
pub fn small_grid() -> Vec<ExtRational> {
    vec![
        ExtRational::from_int(0),
        ExtRational::from_int(1),
        ExtRational::from_int(2),
        ExtRational::inf(),
    ]
}

/// An eventually constant sequence of functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailSequence {
    pub prefix: Vec<FnOverP>,
    pub tail: FnOverP,
}

impl TailSequence {
    pub fn constant(f: FnOverP) -> Self {
        TailSequence {
            prefix: Vec::new(),
            tail: f,
        }
    }

    /// Pointwise lim inf, which for these sequences is the tail.
    pub fn liminf(&self) -> &FnOverP {
        &self.tail
    }

    pub fn limsup(&self) -> &FnOverP {
        &self.tail
    }
}

/// Operations that depend on the predomain's relation.
#[derive(Debug, Clone, Copy)]
pub struct FunctionSpace<'a> {
    pd: &'a Predomain,
}

impl<'a> FunctionSpace<'a> {
    pub fn new(pd: &'a Predomain) -> Self {
        FunctionSpace { pd }
    }

    pub fn predomain(&self) -> &'a Predomain {
        self.pd
    }

    pub fn check(&self, f: &FnOverP) -> Result<()> {
        if f.len() != self.pd.len() {
            return Err(Error::LengthMismatch {
                expected: self.pd.len(),
                got: f.len(),
            });
        }
        Ok(())
    }

    /// A pair `x <= y` of the natural preorder with `f(x) > f(y)`.
    pub fn monotone_witness(&self, f: &FnOverP) -> Result<Option<(usize, usize)>> {
        self.check(f)?;
        let le = self.pd.natural_preorder();
        let found = le.pairs().find(|&(x, y)| f[x] > f[y]);
        Ok(found)
    }

    pub fn is_monotone(&self, f: &FnOverP) -> Result<bool> {
        Ok(self.monotone_witness(f)?.is_none())
    }

    fn sup_below(&self, f: &FnOverP, x: usize) -> ExtRational {
        self.pd
            .down_set(x)
            .iter()
            .map(|z| f[z].clone())
            .max()
            .unwrap_or_else(ExtRational::zero)
    }

    /// First element where `f` fails lower semicontinuity: either some
    /// `x ≺≺ y` has `f(x) > f(y)` or `f(x)` exceeds the supremum below `x`.
    pub fn lsc_witness(&self, f: &FnOverP) -> Result<Option<usize>> {
        self.check(f)?;
        let rel = self.pd.rel();
        Ok((0..self.pd.len()).find(|&x| rel.succ(x).iter().any(|y| f[x] > f[y]) || f[x] != self.sup_below(f, x)))
    }

    pub fn is_lsc(&self, f: &FnOverP) -> Result<bool> {
        Ok(self.lsc_witness(f)?.is_none())
    }

    /// Lower semicontinuity by testing that every `f⁻¹(]r, ∞])` is open,
    /// for `r = 0` and each finite value of `f`.
    pub fn is_lsc_by_preimages(&self, f: &FnOverP) -> Result<bool> {
        self.check(f)?;
        let t = self.pd.cspace_topology()?;
        let zero = ExtRational::zero();
        let thresholds = std::iter::once(&zero).chain(f.values().iter().filter(|v| !v.is_infinite()));
        Ok(thresholds.into_iter().all(|r| {
            let pre: ElemSet = (0..f.len()).filter(|&x| f[x] > *r).collect();
            t.is_open(pre)
        }))
    }

    /// `env(g)(x) = sup_{y ≺≺ x} g(y)` for monotone `g`.
    pub fn env(&self, g: &FnOverP) -> Result<FnOverP> {
        if let Some((x, y)) = self.monotone_witness(g)? {
            return Err(Error::NotMonotone {
                lo: self.pd.carrier().name(x).to_string(),
                hi: self.pd.carrier().name(y).to_string(),
            });
        }
        Ok(FnOverP((0..self.pd.len()).map(|x| self.sup_below(g, x)).collect()))
    }

    /// `x ↦ sup_{y ≺≺ x} g(y)` without the monotonicity check; equal to
    /// [`env`](Self::env) on monotone `g`.
    pub fn env_formula(&self, g: &FnOverP) -> Result<FnOverP> {
        self.check(g)?;
        Ok(FnOverP((0..self.pd.len()).map(|x| self.sup_below(g, x)).collect()))
    }

    /// The largest monotone `g` with `env(g) <= f`.
    pub fn alpha(&self, f: &FnOverP) -> Result<FnOverP> {
        if let Some(x) = self.lsc_witness(f)? {
            return Err(Error::NotLsc(self.pd.carrier().name(x).to_string()));
        }
        let n = self.pd.len();
        let h: Vec<ExtRational> = (0..n)
            .map(|y| {
                self.pd
                    .up_set(y)
                    .iter()
                    .map(|z| f[z].clone())
                    .min()
                    .unwrap_or_else(ExtRational::inf)
            })
            .collect();
        let le = self.pd.natural_preorder();
        Ok(FnOverP(
            (0..n)
                .map(|y| le.succ(y).iter().map(|z| h[z].clone()).min().expect("reflexive"))
                .collect(),
        ))
    }

    /// `f ∈ V_{x,r}`: `f(x) > r`.
    pub fn in_v(&self, f: &FnOverP, x: usize, r: &ExtRational) -> bool {
        f[x] > *r
    }

    /// `f ∈ W_{y,r}`: `f(x) < r` for some `x ≻≻ y`.
    pub fn in_w(&self, f: &FnOverP, y: usize, r: &ExtRational) -> bool {
        self.pd.up_set(y).iter().any(|x| f[x] < *r)
    }

    /// A subbasic upper neighbourhood `V_{y,r}` of `f` and a lower one
    /// `W_{y,r}` of `h` that no lower semicontinuous function meets both.
    pub fn separate(&self, f: &FnOverP, h: &FnOverP) -> Result<(usize, Rational)> {
        for (name, g) in [("f", f), ("h", h)] {
            if let Some(x) = self.lsc_witness(g)? {
                return Err(Error::NotLsc(format!("{name} at {}", self.pd.carrier().name(x))));
            }
        }
        let x0 = (0..f.len())
            .find(|&x| f[x] > h[x])
            .ok_or_else(|| Error::Precondition("f <= h pointwise".into()))?;
        let hx = h[x0].as_finite().expect("h(x0) < f(x0)").clone();
        let r = match f[x0].as_finite() {
            Some(fx) => (fx + &hx) / Rational::from_integer(2.into()),
            None => hx + Rational::from_integer(1.into()),
        };
        let rr = ExtRational::Finite(r.clone());
        let y = self
            .pd
            .down_set(x0)
            .iter()
            .find(|&y| f[y] > rr)
            .ok_or_else(|| Error::InternalInconsistency("no predecessor exceeds the midpoint".into()))?;
        if !self.in_v(f, y, &rr) || !self.in_w(h, y, &rr) {
            return Err(Error::InternalInconsistency("separating pair misses f or h".into()));
        }
        Ok((y, r))
    }

    /// `f(x) <= liminf f_i(x)` everywhere.
    pub fn converges_up(&self, seq: &TailSequence, f: &FnOverP) -> Result<bool> {
        self.check(f)?;
        self.check(&seq.tail)?;
        Ok(f.le(seq.liminf()))
    }

    /// `limsup f_i(y) <= f(x)` whenever `y ≺≺ x`.
    pub fn converges_lo(&self, seq: &TailSequence, f: &FnOverP) -> Result<bool> {
        self.check(f)?;
        self.check(&seq.tail)?;
        let ls = seq.limsup();
        Ok(self.pd.rel().pairs().all(|(y, x)| ls[y] <= f[x]))
    }

    /// Convergence in the interval topology.
    pub fn converges_interval(&self, seq: &TailSequence, f: &FnOverP) -> Result<bool> {
        Ok(self.converges_up(seq, f)? && self.converges_lo(seq, f)?)
    }

    /// Grid functions that are lower semicontinuous.
    pub fn lsc_over_grid(&self, grid: &[ExtRational]) -> Vec<FnOverP> {
        FnOverP::all_over_grid(self.pd.len(), grid)
            .into_iter()
            .filter(|f| self.is_lsc(f).unwrap_or(false))
            .collect()
    }

    /// Grid functions monotone for the natural preorder.
    pub fn monotone_over_grid(&self, grid: &[ExtRational]) -> Vec<FnOverP> {
        FnOverP::all_over_grid(self.pd.len(), grid)
            .into_iter()
            .filter(|f| self.is_monotone(f).unwrap_or(false))
            .collect()
    }
}
