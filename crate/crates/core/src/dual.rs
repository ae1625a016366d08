//! Monoid homomorphisms into `ExtRational`: the duals `M′` (monotone) and
//! `M*` (lower semicontinuous), point evaluations, and `Ĵ` for round ideals.

use crate::cuntz::PreCuntz;
use crate::error::{Error, Result};
use crate::ext::ExtRational;
use crate::funcspace::{FnOverP, FunctionSpace};
use crate::order::ElemSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomReport {
    pub hom: bool,
    /// `(a, b)` with `f(a + b) != f(a) + f(b)`; `(0, 0)` when `f(0) != 0`.
    pub hom_witness: Option<(usize, usize)>,
    pub monotone: bool,
    pub lsc: bool,
}

pub fn check_hom(c: &PreCuntz, f: &FnOverP) -> Result<HomReport> {
    let space = FunctionSpace::new(c.predomain());
    space.check(f)?;
    let n = c.len();
    let z = c.zero();
    let hom_witness = if !f[z].is_zero() {
        Some((z, z))
    } else {
        (0..n)
            .flat_map(|a| (a..n).map(move |b| (a, b)))
            .find(|&(a, b)| f[c.add(a, b)] != &f[a] + &f[b])
    };
    Ok(HomReport {
        hom: hom_witness.is_none(),
        hom_witness,
        monotone: space.is_monotone(f)?,
        lsc: space.is_lsc(f)?,
    })
}

/// The lower semicontinuous envelope of a monotone homomorphism, again a
/// homomorphism.
pub fn env_hom(c: &PreCuntz, gamma: &FnOverP) -> Result<FnOverP> {
    let r = check_hom(c, gamma)?;
    if let Some((a, b)) = r.hom_witness {
        return Err(Error::NotHomomorphism(format!(
            "at ({}, {})",
            c.carrier().name(a),
            c.carrier().name(b)
        )));
    }
    let space = FunctionSpace::new(c.predomain());
    let e = space.env(gamma)?;
    let out = check_hom(c, &e)?;
    if !(out.hom && out.lsc && e.le(gamma)) {
        return Err(Error::InternalInconsistency(format!(
            "envelope {e} of {gamma} is not an lsc hom below it"
        )));
    }
    Ok(e)
}

/// Homomorphisms with values in `grid`, with their flags.
pub fn homs_over_grid(c: &PreCuntz, grid: &[ExtRational]) -> Result<Vec<(FnOverP, HomReport)>> {
    FnOverP::all_over_grid(c.len(), grid)
        .into_iter()
        .map(|f| check_hom(c, &f).map(|r| (f, r)))
        .filter(|r| !matches!(r, Ok((_, rep)) if !rep.hom))
        .collect()
}

/// The point evaluation `x̂: φ ↦ φ(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Evaluation(usize);

impl Evaluation {
    pub fn point(self) -> usize {
        self.0
    }

    pub fn apply(self, phi: &FnOverP) -> ExtRational {
        phi[self.0].clone()
    }
}

pub fn evaluation(c: &PreCuntz, label: &str) -> Result<Evaluation> {
    Ok(Evaluation(c.carrier().index_of(label)?))
}

pub fn evaluation_at(c: &PreCuntz, x: usize) -> Result<Evaluation> {
    Ok(Evaluation(c.carrier().check_index(x)?))
}

/// `Ĵ(φ) = sup_{x ∈ J} φ(x)`.
pub fn ideal_hat(c: &PreCuntz, j: ElemSet, phi: &FnOverP) -> Result<ExtRational> {
    FunctionSpace::new(c.predomain()).check(phi)?;
    if !crate::completion::is_round_ideal(c.predomain(), j) {
        return Err(Error::NotRoundIdeal(c.carrier().format_set(j)));
    }
    Ok(j.iter().map(|x| phi[x].clone()).max().unwrap_or_else(ExtRational::zero))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HatReport {
    /// `Î <= Ĵ` on every functional of the family.
    pub holds: bool,
    /// Indices of functionals with `Î(φ) < Ĵ(φ)`.
    pub strict: Vec<usize>,
}

/// For `I ≪ J`, compare `Î` and `Ĵ` on a finite family of duals.
pub fn hat_preserves_waybelow_check(c: &PreCuntz, i: ElemSet, j: ElemSet, family: &[FnOverP]) -> Result<HatReport> {
    let pd = c.predomain();
    let below = j.iter().any(|b| i.is_subset(pd.down_set(b)));
    if !below {
        return Err(Error::Precondition(format!(
            "{} is not way below {}",
            c.carrier().format_set(i),
            c.carrier().format_set(j)
        )));
    }
    let mut holds = true;
    let mut strict = Vec::new();
    for (k, phi) in family.iter().enumerate() {
        let (a, b) = (ideal_hat(c, i, phi)?, ideal_hat(c, j, phi)?);
        holds &= a <= b;
        if a < b {
            strict.push(k);
        }
    }
    Ok(HatReport { holds, strict })
}

/// Some `x ≰ y` of the natural preorder that no functional of the family
/// separates with `φ(x) > φ(y)`.
pub fn separation_failure(c: &PreCuntz, family: &[FnOverP]) -> Option<(usize, usize)> {
    let le = c.predomain().natural_preorder();
    let n = c.len();
    (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| !le.holds(x, y))
        .find(|&(x, y)| !family.iter().any(|phi| phi[x] > phi[y]))
}

/// `J ↦ Ĵ` reflects inclusion on the family: a pair of ideals with
/// `Î <= Ĵ` everywhere on it although `I ⊄ J`.
pub fn hat_embedding_failure(
    c: &PreCuntz,
    ideals: &[ElemSet],
    family: &[FnOverP],
) -> Result<Option<(ElemSet, ElemSet)>> {
    for &i in ideals {
        for &j in ideals {
            if i.is_subset(j) {
                continue;
            }
            let mut dominated = true;
            for phi in family {
                if ideal_hat(c, i, phi)? > ideal_hat(c, j, phi)? {
                    dominated = false;
                    break;
                }
            }
            if dominated {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// `∞·[a >= k]` for `k = 1..n` on the max monoid over `{0..n}`.
pub fn threshold_family(n: usize) -> Vec<FnOverP> {
    (1..=n)
        .map(|k| {
            FnOverP::new(
                (0..=n)
                    .map(|a| {
                        if a >= k {
                            ExtRational::inf()
                        } else {
                            ExtRational::zero()
                        }
                    })
                    .collect(),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completion::Completion;
    use crate::fixtures::{max_monoid, tn};

    fn v(s: &str) -> ExtRational {
        s.parse().unwrap()
    }

    fn top_hom() -> FnOverP {
        FnOverP::new(vec![v("0"), v("inf"), v("inf"), v("inf")])
    }

    #[test]
    fn check_hom_examples() {
        let t = tn(3);
        let zero = FnOverP::constant(4, ExtRational::zero());
        let r = check_hom(&t, &zero).unwrap();
        assert!(r.hom && r.monotone && r.lsc);

        let id = FnOverP::from_ints(&[0, 1, 2, 3]);
        let r = check_hom(&t, &id).unwrap();
        assert!(!r.hom);
        let (a, b) = r.hom_witness.unwrap();
        assert_eq!(t.add(a, b), 3);
        assert_ne!(id[t.add(2, 2)], &id[2] + &id[2]);

        let r = check_hom(&t, &top_hom()).unwrap();
        assert!(r.hom && r.monotone && r.lsc);
    }

    #[test]
    fn env_hom_examples() {
        let t = tn(3);
        assert_eq!(env_hom(&t, &top_hom()).unwrap(), top_hom());
        assert!(matches!(
            env_hom(&t, &FnOverP::from_ints(&[0, 1, 2, 3])),
            Err(Error::NotHomomorphism(_))
        ));
    }

    #[test]
    fn evaluations() {
        let t = tn(3);
        let phi = top_hom();
        assert_eq!(evaluation(&t, "0").unwrap().apply(&phi), ExtRational::zero());
        assert_eq!(evaluation(&t, "2").unwrap().apply(&phi), ExtRational::inf());
        assert!(evaluation(&t, "9").is_err());
        for (f, _) in homs_over_grid(&t, &crate::funcspace::small_grid()).unwrap() {
            for x in 0..4 {
                for y in 0..4 {
                    let sum = evaluation_at(&t, t.add(x, y)).unwrap().apply(&f);
                    assert_eq!(sum, &f[x] + &f[y]);
                }
            }
        }
    }

    #[test]
    fn ideal_hat_examples() {
        let t = tn(3);
        let d = |a| t.predomain().down_set(a);
        assert_eq!(ideal_hat(&t, d(0), &top_hom()).unwrap(), ExtRational::zero());
        assert_eq!(ideal_hat(&t, d(2), &top_hom()).unwrap(), ExtRational::inf());
        let r = hat_preserves_waybelow_check(&t, d(1), d(2), &[top_hom()]).unwrap();
        assert!(r.holds && r.strict.is_empty());
        let r = hat_preserves_waybelow_check(&t, d(2), d(2), &[top_hom()]).unwrap();
        assert!(r.holds);
        assert!(matches!(
            hat_preserves_waybelow_check(&t, d(3), d(2), &[top_hom()]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn truncated_naturals_have_no_separating_family() {
        let t = tn(3);
        let duals: Vec<FnOverP> = homs_over_grid(&t, &crate::funcspace::small_grid())
            .unwrap()
            .into_iter()
            .map(|(f, _)| f)
            .collect();
        assert_eq!(duals.len(), 2);
        assert!(separation_failure(&t, &duals).is_some());
    }

    #[test]
    fn thresholds_separate_the_max_monoid() {
        let m = max_monoid(3);
        let family = threshold_family(3);
        for phi in &family {
            let r = check_hom(&m, phi).unwrap();
            assert!(r.hom && r.monotone && r.lsc);
        }
        assert_eq!(separation_failure(&m, &family), None);
        let c = Completion::new(m.predomain()).unwrap();
        assert_eq!(hat_embedding_failure(&m, c.ideals(), &family).unwrap(), None);
    }
}
