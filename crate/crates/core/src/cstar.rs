//! The positive cone of `C₀(X)` for a finite discrete `X`: nonnegative
//! rational vectors with cutdown, the approximation relation, the
//! δ-witnesses of the cutdown inequalities, and traces as weight vectors.
//!
//! In this commutative model Cuntz–Pedersen equivalence is equality and
//! Cuntz subequivalence is the pointwise order.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ext::{format_rational, parse_rational, rat, ExtRational, Rational, ScalarMode};
use crate::order::{Carrier, Relation};

/// Finite discrete space `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinXModel {
    points: Carrier,
}

/// A point of `ℚ₊^X`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PositiveElement(Vec<Rational>);

/// A trace `t(a) = Σ w(x)·a(x)`, evaluated with `∞·0 = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TraceVector(Vec<ExtRational>);

fn half(r: &Rational) -> Rational {
    r / Rational::from_integer(2.into())
}

fn positive_part(r: Rational) -> Rational {
    if r.is_negative() {
        Rational::zero()
    } else {
        r
    }
}

impl PositiveElement {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if let Some(bad) = values.iter().find(|v| v.is_negative()) {
            return Err(Error::InvalidRational(format_rational(bad)));
        }
        Ok(PositiveElement(values))
    }

    pub fn zero(n: usize) -> Self {
        PositiveElement(vec![Rational::zero(); n])
    }

    pub fn constant(n: usize, r: Rational) -> Result<Self> {
        PositiveElement::new(vec![r; n])
    }

    /// Comma separated rationals, e.g. `1/2,0`.
    pub fn parse(text: &str) -> Result<Self> {
        PositiveElement::new(text.split(',').map(parse_rational).collect::<Result<_>>()?)
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn le(&self, other: &PositiveElement) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &PositiveElement) -> PositiveElement {
        PositiveElement(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sup(&self, other: &PositiveElement) -> PositiveElement {
        PositiveElement(self.0.iter().zip(&other.0).map(|(a, b)| a.max(b).clone()).collect())
    }

    /// `(self − other)₊` pointwise.
    pub fn sub_pos(&self, other: &PositiveElement) -> PositiveElement {
        PositiveElement(self.0.iter().zip(&other.0).map(|(a, b)| positive_part(a - b)).collect())
    }

    pub fn scale(&self, q: &Rational) -> Result<PositiveElement> {
        PositiveElement::new(self.0.iter().map(|a| a * q).collect())
    }

    /// `(a − ε)₊`, no check on `ε`.
    fn cut(&self, eps: &Rational) -> PositiveElement {
        PositiveElement(self.0.iter().map(|a| positive_part(a - eps)).collect())
    }
}

impl std::fmt::Display for PositiveElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl TraceVector {
    pub fn new(weights: Vec<ExtRational>) -> Self {
        TraceVector(weights)
    }

    pub fn weights(&self) -> &[ExtRational] {
        &self.0
    }
}

fn check_eps(eps: &Rational) -> Result<()> {
    if eps.is_positive() {
        Ok(())
    } else {
        Err(Error::NonPositiveEpsilon)
    }
}

/// `(a − ε)₊`.
pub fn cutdown(a: &PositiveElement, eps: &Rational) -> Result<PositiveElement> {
    check_eps(eps)?;
    Ok(a.cut(eps))
}

/// `max_x |a(x) − b(x)|`.
pub fn norm_dist(a: &PositiveElement, b: &PositiveElement) -> Rational {
    a.0.iter()
        .zip(&b.0)
        .map(|(x, y)| (x - y).abs())
        .max()
        .unwrap_or_else(Rational::zero)
}

impl FinXModel {
    pub fn new(points: Carrier) -> Self {
        FinXModel { points }
    }

    pub fn numbered(n: usize) -> Result<Self> {
        Ok(FinXModel::new(Carrier::numbered(n)?))
    }

    pub fn points(&self) -> &Carrier {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn check(&self, a: &PositiveElement) -> Result<()> {
        if a.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: a.len(),
            });
        }
        Ok(())
    }

    fn check2(&self, a: &PositiveElement, b: &PositiveElement) -> Result<()> {
        self.check(a)?;
        self.check(b)
    }

    pub fn check_trace(&self, t: &TraceVector) -> Result<()> {
        if t.0.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: t.0.len(),
            });
        }
        Ok(())
    }

    /// Every element with values in `grid`, lexicographically.
    pub fn grid_elements(&self, grid: &[Rational]) -> Vec<PositiveElement> {
        let mut out: Vec<Vec<Rational>> = vec![Vec::new()];
        for _ in 0..self.len() {
            out = out
                .into_iter()
                .flat_map(|p| {
                    grid.iter().map(move |v| {
                        let mut q = p.clone();
                        q.push(v.clone());
                        q
                    })
                })
                .collect();
        }
        out.into_iter().map(PositiveElement).collect()
    }

    /// `a ≺≺ b`: `a ≤ (b − ε)₊` for some `ε > 0`. Returns the largest such
    /// `ε` over the support of `a`, or `1` when `a = 0`.
    pub fn approx_rel(&self, a: &PositiveElement, b: &PositiveElement) -> Result<Option<Rational>> {
        self.check2(a, b)?;
        let mut eps: Option<Rational> = None;
        for (x, y) in a.0.iter().zip(&b.0) {
            if x.is_zero() {
                continue;
            }
            if x >= y {
                return Ok(None);
            }
            let gap = y - x;
            eps = Some(match eps {
                Some(e) if e <= gap => e,
                _ => gap,
            });
        }
        Ok(Some(eps.unwrap_or_else(Rational::one)))
    }

    pub fn approx(&self, a: &PositiveElement, b: &PositiveElement) -> Result<bool> {
        Ok(self.approx_rel(a, b)?.is_some())
    }

    /// Largest `δ` with `(a − ε)₊ + (b − ε)₊ ≤ (a + b − δ)₊`; `ε` when the
    /// left side vanishes.
    pub fn find_delta_add(&self, a: &PositiveElement, b: &PositiveElement, eps: &Rational) -> Result<Rational> {
        self.check2(a, b)?;
        check_eps(eps)?;
        let lhs = a.cut(eps).add(&b.cut(eps));
        let s = a.add(b);
        Ok(lhs
            .0
            .iter()
            .zip(&s.0)
            .filter(|(l, _)| l.is_positive())
            .map(|(l, s)| s - l)
            .min()
            .unwrap_or_else(|| eps.clone()))
    }

    /// Largest `δ` with `(a + b − ε)₊ ≤ (a − δ)₊ + (b − δ)₊`; `ε` when the
    /// left side vanishes.
    pub fn find_delta_split(&self, a: &PositiveElement, b: &PositiveElement, eps: &Rational) -> Result<Rational> {
        self.check2(a, b)?;
        check_eps(eps)?;
        let e2 = half(eps);
        Ok(a.0
            .iter()
            .zip(&b.0)
            .filter(|(x, y)| (*x + *y - eps).is_positive())
            .map(|(x, y)| eps - x.min(y).min(&e2))
            .min()
            .unwrap_or_else(|| eps.clone()))
    }

    /// The cutdown lemma `‖a − b‖ < ε ⟹ (a − ε)₊ ≾ b` and its refinement.
    pub fn kr_check(&self, a: &PositiveElement, b: &PositiveElement, eps: &Rational) -> Result<KrReport> {
        self.check2(a, b)?;
        check_eps(eps)?;
        let d = norm_dist(a, b);
        if d >= *eps {
            return Ok(KrReport {
                hypothesis: false,
                conclusion: None,
                delta: None,
                refined: None,
            });
        }
        let lhs = a.cut(eps);
        let delta = half(&(eps - &d));
        let refined = lhs.le(&b.cut(&delta)) && norm_dist(a, &b.cut(&delta)) < *eps;
        Ok(KrReport {
            hypothesis: true,
            conclusion: Some(lhs.le(b)),
            delta: Some(delta),
            refined: Some(refined),
        })
    }

    /// Compare `≾_CP` (for every `ε > 0` some `δ > 0` has
    /// `(a − ε)₊ ≤ (b − δ)₊`) with the pointwise order.
    pub fn cp_preorder(&self, a: &PositiveElement, b: &PositiveElement) -> Result<CpReport> {
        self.check2(a, b)?;
        // For fixed ε a δ exists iff a(x) ≤ ε or a(x) − ε < b(x) everywhere.
        let admits_delta = |eps: &Rational| a.0.iter().zip(&b.0).all(|(x, y)| x <= eps || x - eps < *y);
        let mut candidates: Vec<Rational> =
            a.0.iter()
                .zip(&b.0)
                .flat_map(|(x, y)| [x - y, half(x)])
                .filter(|e| e.is_positive())
                .collect();
        candidates.sort();
        candidates.dedup();
        let eps_witness = candidates.into_iter().find(|e| !admits_delta(e));
        Ok(CpReport {
            pointwise: a.le(b),
            cp: eps_witness.is_none(),
            eps_witness,
        })
    }

    /// Instantiate the chain `a ≾ b ⟹ a ≾_CP b` for `a = Σ parts ≤ b`.
    pub fn cp_chain(&self, parts: &[PositiveElement], b: &PositiveElement, eps: &Rational) -> Result<ChainReport> {
        check_eps(eps)?;
        self.check(b)?;
        if parts.is_empty() {
            return Err(Error::Precondition("no summands".into()));
        }
        for p in parts {
            self.check(p)?;
        }
        let a = parts.iter().skip(1).fold(parts[0].clone(), |acc, p| acc.add(p));
        if !a.le(b) {
            return Err(Error::Precondition("the sum of the parts exceeds b".into()));
        }
        let n = Rational::from_integer((parts.len() as i64).into());
        let sum_cut = |d: &Rational| {
            parts
                .iter()
                .map(|p| p.cut(d))
                .fold(PositiveElement::zero(self.len()), |acc, p| acc.add(&p))
        };
        let mut steps = Vec::new();

        let kr = self.kr_check(&a, &a, eps)?;
        let delta = kr.delta.expect("distance zero");
        steps.push(ChainStep {
            step: "norm",
            delta: delta.clone(),
            holds: a.cut(eps).le(&a.cut(&delta)),
        });

        let delta1 = &delta / &n;
        steps.push(ChainStep {
            step: "split",
            delta: delta1.clone(),
            holds: a.cut(&delta).le(&sum_cut(&delta1)),
        });

        steps.push(ChainStep {
            step: "swap",
            delta: delta1.clone(),
            holds: true,
        });

        let delta2 = delta1.clone();
        steps.push(ChainStep {
            step: "add",
            delta: delta2.clone(),
            holds: sum_cut(&delta1).le(&a.cut(&delta2)),
        });

        let rest = b.sub_pos(&a);
        let delta3 = self.find_delta_add(&a, &rest, &delta2)?;
        steps.push(ChainStep {
            step: "order",
            delta: delta3.clone(),
            holds: a.cut(&delta2).le(&b.cut(&delta3)),
        });

        let holds = steps.iter().all(|s| s.holds) && a.cut(eps).le(&b.cut(&delta3));
        Ok(ChainReport {
            steps,
            final_delta: delta3,
            holds,
        })
    }

    /// `t(a) = Σ w(x)·a(x)` with `∞·0 = 0`.
    pub fn trace_eval(&self, t: &TraceVector, a: &PositiveElement) -> Result<ExtRational> {
        self.check_trace(t)?;
        self.check(a)?;
        t.0.iter()
            .zip(&a.0)
            .map(|(w, v)| ExtRational::Finite(v.clone()).scale(w, ScalarMode::Upper))
            .sum()
    }

    pub fn point_mass(&self, x: usize) -> Result<TraceVector> {
        self.points.check_index(x)?;
        Ok(TraceVector(
            (0..self.len())
                .map(|y| {
                    if y == x {
                        ExtRational::from_int(1)
                    } else {
                        ExtRational::zero()
                    }
                })
                .collect(),
        ))
    }

    /// A point where `a` exceeds `b`, so that its point mass separates them.
    pub fn separating_point(&self, a: &PositiveElement, b: &PositiveElement) -> Result<Option<usize>> {
        self.check2(a, b)?;
        Ok((0..self.len()).find(|&x| a.0[x] > b.0[x]))
    }

    /// Weight vectors over `weights`, including all point masses.
    pub fn trace_family(&self, weights: &[ExtRational]) -> Vec<TraceVector> {
        let mut out: Vec<Vec<ExtRational>> = vec![Vec::new()];
        for _ in 0..self.len() {
            out = out
                .into_iter()
                .flat_map(|p| {
                    weights.iter().map(move |w| {
                        let mut q = p.clone();
                        q.push(w.clone());
                        q
                    })
                })
                .collect();
        }
        let mut family: Vec<TraceVector> = out.into_iter().map(TraceVector).collect();
        for x in 0..self.len() {
            let pm = self.point_mass(x).expect("in range");
            if !family.contains(&pm) {
                family.push(pm);
            }
        }
        family
    }

    /// Hom law and both lower semicontinuity notions of a functional,
    /// tested on the given sample elements.
    pub fn functional_check(&self, phi: &Functional, samples: &[PositiveElement]) -> Result<FunctionalReport> {
        phi.check(self)?;
        for a in samples {
            self.check(a)?;
        }
        let z = PositiveElement::zero(self.len());
        let mut hom = phi.eval(&z).is_zero();
        for (i, a) in samples.iter().enumerate() {
            for b in &samples[i..] {
                hom &= phi.eval(&a.add(b)) == phi.eval(a) + phi.eval(b);
            }
        }
        let monotone = samples
            .iter()
            .all(|a| samples.iter().all(|b| !b.le(a) || phi.eval(b) <= phi.eval(a)));
        let order_lsc = monotone && samples.iter().all(|a| phi.eval(a) <= phi.cutdown_limit(a));
        let norm_lsc = samples.iter().all(|a| phi.eval(a) <= phi.ball_limit(a));
        Ok(FunctionalReport {
            hom,
            order_lsc,
            norm_lsc,
        })
    }

    /// Represent `Λ = sup_i â_i` by the round ideal below `g = sup_i a_i`
    /// and compare `Ĵ` with `Λ` on a family of traces.
    pub fn bidual_check(&self, family: &[PositiveElement], traces: &[TraceVector]) -> Result<BidualReport> {
        let first = family
            .first()
            .ok_or_else(|| Error::Precondition("a presentation needs at least one element".into()))?;
        for a in family {
            self.check(a)?;
        }
        let g = family.iter().fold(first.clone(), |acc, a| acc.sup(a));
        let directed = family.contains(&g);
        let mut point_masses_match = true;
        let mut all_traces_match = true;
        let mut mismatch = None;
        for (k, t) in traces.iter().enumerate() {
            self.check_trace(t)?;
            let lambda = family
                .iter()
                .map(|a| self.trace_eval(t, a))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .max()
                .expect("nonempty");
            let j_hat = Functional::Trace(t.clone()).cutdown_limit(&g);
            if lambda != j_hat {
                all_traces_match = false;
                mismatch.get_or_insert(k);
                let is_point_mass = (0..self.len()).any(|x| self.point_mass(x).ok().as_ref() == Some(t));
                if is_point_mass {
                    point_masses_match = false;
                }
            }
        }
        for x in 0..self.len() {
            let t = self.point_mass(x)?;
            let lambda = family.iter().map(|a| a.0[x].clone()).max().expect("nonempty");
            if Functional::Trace(t).cutdown_limit(&g) != ExtRational::Finite(lambda) {
                point_masses_match = false;
            }
        }
        Ok(BidualReport {
            generator: g,
            directed,
            point_masses_match,
            all_traces_match,
            mismatch,
        })
    }

    /// Natural preorder `↡a ⊆ ↡b` on `base`, with down-sets taken in
    /// `base` refined by one separating witness per pair.
    pub fn natural_preorder_on_sample(&self, base: &[PositiveElement]) -> Result<Relation> {
        let mut sample: Vec<PositiveElement> = base.to_vec();
        for a in base {
            self.check(a)?;
            for b in base {
                if let Some(x) = self.separating_point(a, b)? {
                    let mut w = vec![Rational::zero(); self.len()];
                    w[x] = half(&(&a.0[x] + &b.0[x]));
                    sample.push(PositiveElement(w));
                }
            }
        }
        let down: Vec<Vec<bool>> = base
            .iter()
            .map(|a| sample.iter().map(|s| self.approx(s, a)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        let carrier = Carrier::numbered(base.len())?;
        Ok(Relation::from_fn(carrier, |i, j| {
            down[i].iter().zip(&down[j]).all(|(x, y)| !x || *y)
        }))
    }

    /// The chain `(f − 1/n)₊`, `n = 1..=16`, is increasing, lies below `f`,
    /// and every sample element below `f` lies under some member.
    pub fn first_countability(&self, f: &PositiveElement, samples: &[PositiveElement]) -> Result<bool> {
        self.check(f)?;
        let chain: Vec<PositiveElement> = (1..=16).map(|n| f.cut(&rat(1, n))).collect();
        for w in chain.windows(2) {
            if !self.approx(&w[0], &w[1])? {
                return Ok(false);
            }
        }
        for c in &chain {
            if !self.approx(c, f)? {
                return Ok(false);
            }
        }
        for g in samples {
            if self.approx(g, f)? && !chain.iter().any(|c| g.le(c)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The preCuntz axioms with constructive witnesses over all elements
    /// with values in `grid`.
    pub fn validate_model_precuntz(&self, grid: &[Rational]) -> Result<ModelReport> {
        let elems = self.grid_elements(grid);
        let k = elems.len();
        let mut rel = vec![vec![false; k]; k];
        for i in 0..k {
            for j in 0..k {
                rel[i][j] = self.approx(&elems[i], &elems[j])?;
            }
        }
        let mut report = ModelReport {
            elements: k,
            transitive: true,
            ip0: true,
            ip2: true,
            additive: true,
            continuous_addition: true,
            first_countable: true,
            failure: None,
        };
        let zero = PositiveElement::zero(self.len());
        let name = |i: usize| elems[i].to_string();

        for i in 0..k {
            if !self.approx(&zero, &elems[i])? {
                report.ip0 = false;
                report.failure.get_or_insert(format!("0 is not below {}", name(i)));
            }
            for j in 0..k {
                if !rel[i][j] {
                    continue;
                }
                for (l, &jl) in rel[j].iter().enumerate() {
                    if jl && !rel[i][l] {
                        report.transitive = false;
                        report
                            .failure
                            .get_or_insert(format!("transitivity at {} {} {}", name(i), name(j), name(l)));
                    }
                }
            }
        }

        for h in 0..k {
            let below: Vec<usize> = (0..k).filter(|&i| rel[i][h]).collect();
            for (p, &f1) in below.iter().enumerate() {
                for &f2 in &below[p..] {
                    let top = elems[f1].sup(&elems[f2]);
                    let z = PositiveElement(
                        top.0
                            .iter()
                            .zip(&elems[h].0)
                            .map(|(m, hv)| {
                                if hv.is_zero() {
                                    Rational::zero()
                                } else {
                                    half(&(m + hv))
                                }
                            })
                            .collect(),
                    );
                    let ok =
                        self.approx(&elems[f1], &z)? && self.approx(&elems[f2], &z)? && self.approx(&z, &elems[h])?;
                    if !ok {
                        report.ip2 = false;
                        report.failure.get_or_insert(format!(
                            "no interpolant between {{{}, {}}} and {}",
                            name(f1),
                            name(f2),
                            name(h)
                        ));
                    }
                }
            }
        }

        let pairs: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| (0..k).map(move |j| (i, j)))
            .filter(|&(i, j)| rel[i][j])
            .collect();
        for &(f, f2) in &pairs {
            for &(g, g2) in &pairs {
                if !self.approx(&elems[f].add(&elems[g]), &elems[f2].add(&elems[g2]))? {
                    report.additive = false;
                    report.failure.get_or_insert(format!(
                        "additivity at {} {} {} {}",
                        name(f),
                        name(f2),
                        name(g),
                        name(g2)
                    ));
                }
            }
        }

        for a in &elems {
            for b in &elems {
                let s = a.add(b);
                for c in &elems {
                    let Some(eps) = self.approx_rel(c, &s)? else {
                        continue;
                    };
                    let d = self.find_delta_split(a, b, &half(&eps))?;
                    let (a2, b2) = (a.cut(&d), b.cut(&d));
                    let ok = self.approx(&a2, a)? && self.approx(&b2, b)? && self.approx(c, &a2.add(&b2))?;
                    if !ok {
                        report.continuous_addition = false;
                        report
                            .failure
                            .get_or_insert(format!("continuity of addition at {c} ≺≺ {a} + {b}"));
                    }
                }
            }
        }

        for f in &elems {
            if !self.first_countability(f, &elems)? {
                report.first_countable = false;
                report.failure.get_or_insert(format!("first countability at {f}"));
            }
        }
        Ok(report)
    }
}

/// The grid `{0, 1/4, 1/2, 3/4, 1}`.
pub fn default_grid() -> Vec<Rational> {
    (0..=4).map(|k| rat(k, 4)).collect()
}

/// `(x − 1/2)₊`, `(x − 1/4)₊` and `x` sampled at `X = {1/8, 1}`: the first
/// is below the second, yet adding the third destroys the relation.
pub fn sampled_one_sided_example() -> (FinXModel, PositiveElement, PositiveElement, PositiveElement) {
    let xs = [rat(1, 8), rat(1, 1)];
    let sample = |shift: Rational| PositiveElement(xs.iter().map(|x| positive_part(x - &shift)).collect());
    let model = FinXModel::new(Carrier::new(["1/8", "1"]).expect("distinct"));
    (model, sample(rat(1, 2)), sample(rat(1, 4)), sample(Rational::zero()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KrReport {
    /// `‖a − b‖ < ε`; nothing else is claimed when false.
    pub hypothesis: bool,
    /// `(a − ε)₊ ≤ b`.
    pub conclusion: Option<bool>,
    /// A `δ` for the refinement.
    pub delta: Option<Rational>,
    /// `(a − ε)₊ ≤ (b − δ)₊` and `‖a − (b − δ)₊‖ < ε`.
    pub refined: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CpReport {
    pub pointwise: bool,
    pub cp: bool,
    /// An `ε` admitting no `δ`.
    pub eps_witness: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainStep {
    pub step: &'static str,
    pub delta: Rational,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainReport {
    pub steps: Vec<ChainStep>,
    pub final_delta: Rational,
    pub holds: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FunctionalReport {
    pub hom: bool,
    pub order_lsc: bool,
    pub norm_lsc: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BidualReport {
    /// Pointwise supremum of the presentation.
    pub generator: PositiveElement,
    /// The presentation contains its own supremum.
    pub directed: bool,
    pub point_masses_match: bool,
    pub all_traces_match: bool,
    /// Index of the first trace where `Ĵ` and `Λ` differ.
    pub mismatch: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelReport {
    pub elements: usize,
    pub transitive: bool,
    pub ip0: bool,
    pub ip2: bool,
    pub additive: bool,
    pub continuous_addition: bool,
    pub first_countable: bool,
    pub failure: Option<String>,
}

impl ModelReport {
    pub fn passes(&self) -> bool {
        self.failure.is_none()
    }
}

/// Functionals on the model cone. Traces are lower semicontinuous
/// homomorphisms; `AtLeast` is not lower semicontinuous, `Above` is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Functional {
    Trace(TraceVector),
    /// `∞·[a(point) ≥ level]`.
    AtLeast {
        point: usize,
        level: Rational,
    },
    /// `∞·[a(point) > level]`.
    Above {
        point: usize,
        level: Rational,
    },
}

impl Functional {
    fn check(&self, m: &FinXModel) -> Result<()> {
        match self {
            Functional::Trace(t) => m.check_trace(t),
            Functional::AtLeast { point, level } | Functional::Above { point, level } => {
                m.points().check_index(*point)?;
                if !level.is_positive() {
                    return Err(Error::Precondition("threshold level must be positive".into()));
                }
                Ok(())
            }
        }
    }

    fn indicator(hit: bool) -> ExtRational {
        if hit {
            ExtRational::inf()
        } else {
            ExtRational::zero()
        }
    }

    pub fn eval(&self, a: &PositiveElement) -> ExtRational {
        match self {
            Functional::Trace(t) => {
                t.0.iter()
                    .zip(&a.0)
                    .map(|(w, v)| {
                        ExtRational::Finite(v.clone())
                            .scale(w, ScalarMode::Upper)
                            .expect("upper mode")
                    })
                    .sum()
            }
            Functional::AtLeast { point, level } => Self::indicator(a.0[*point] >= *level),
            Functional::Above { point, level } => Self::indicator(a.0[*point] > *level),
        }
    }

    /// Below this every term of `φ` is affine or constant in the offset.
    fn breakpoint(&self, a: &PositiveElement) -> Rational {
        let mut cands: Vec<Rational> = a.0.iter().filter(|v| v.is_positive()).cloned().collect();
        if let Functional::AtLeast { point, level } | Functional::Above { point, level } = self {
            let gap = &a.0[*point] - level;
            if gap.is_positive() {
                cands.push(gap);
            }
        }
        cands.into_iter().min().unwrap_or_else(Rational::one)
    }

    /// Two samples of an affine-or-infinite function on `(0, t)`,
    /// extrapolated to `0`.
    fn extrapolate(at: impl Fn(&Rational) -> ExtRational, t: &Rational) -> ExtRational {
        let e1 = half(t);
        let e2 = half(&e1);
        match (at(&e1), at(&e2)) {
            (ExtRational::Finite(v1), ExtRational::Finite(v2)) => {
                let two = Rational::from_integer(2.into());
                ExtRational::Finite(positive_part(two * v2 - v1))
            }
            _ => ExtRational::inf(),
        }
    }

    /// `lim_{ε→0} φ((a − ε)₊)`, the supremum over the cutdowns of `a`.
    pub fn cutdown_limit(&self, a: &PositiveElement) -> ExtRational {
        Self::extrapolate(|e| self.eval(&a.cut(e)), &self.breakpoint(a))
    }

    /// `lim_{η→0} inf { φ(b) | b ≥ 0, ‖b − a‖ < η }`.
    pub fn ball_limit(&self, a: &PositiveElement) -> ExtRational {
        let inf_ball = |eta: &Rational| -> ExtRational {
            match self {
                Functional::Trace(t) => {
                    t.0.iter()
                        .zip(&a.0)
                        .map(|(w, v)| {
                            let low = v - eta;
                            if w.is_infinite() {
                                Self::indicator(!low.is_negative())
                            } else {
                                let w = w.as_finite().expect("finite");
                                ExtRational::Finite(w * positive_part(low))
                            }
                        })
                        .sum()
                }
                Functional::AtLeast { point, level } => Self::indicator(&a.0[*point] - eta >= *level),
                Functional::Above { point, level } => Self::indicator(&a.0[*point] - eta >= *level),
            }
        };
        Self::extrapolate(inf_ball, &self.breakpoint(a))
    }
}
