use predomain::completion::Completion;
use predomain::cuntz::{compatible_monoids, is_one_sided_additive, validate_precuntz, PreCuntz};
use predomain::enumerate::predomains;
use predomain::fixtures::{p4, tn, P4_COMPATIBLE_MONOIDS};

fn monoid_laws(c: &PreCuntz) {
    let n = c.len();
    for a in 0..n {
        assert_eq!(c.add(a, c.zero()), a);
        for b in 0..n {
            assert_eq!(c.add(a, b), c.add(b, a));
            for d in 0..n {
                assert_eq!(c.add(c.add(a, b), d), c.add(a, c.add(b, d)));
            }
        }
    }
}

#[test]
fn truncated_naturals_complete_to_precuntz_monoids() {
    for n in 0..=4 {
        let t = tn(n);
        let (c, pc) = t.completion_monoid().unwrap();
        monoid_laws(&pc);
        assert_eq!(pc.zero(), c.principal_index(t.zero()));
        // ↡a + ↡b = ↡(a + b).
        for a in 0..t.len() {
            for b in 0..t.len() {
                let s = t
                    .ideal_sum(t.predomain().down_set(a), t.predomain().down_set(b))
                    .unwrap();
                assert_eq!(s, t.predomain().down_set(t.add(a, b)));
                assert_eq!(
                    pc.add(c.principal_index(a), c.principal_index(b)),
                    c.principal_index(t.add(a, b))
                );
            }
        }
        // Way-below on the completion is additive.
        let wb = c.waybelow();
        for (i, i2) in wb.pairs() {
            for (j, j2) in wb.pairs() {
                assert!(wb.holds(pc.add(i, j), pc.add(i2, j2)));
            }
        }
    }
}

fn all_maps(n: usize, m: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..m.pow(n as u32)).map(move |k| (0..n).map(|i| k / m.pow(i as u32) % m).collect())
}

#[test]
fn extensions_of_homomorphisms_are_homomorphisms() {
    let mut extended = 0;
    for n in 1..=3 {
        for m in 1..=3 {
            let (s, t) = (tn(n), tn(m));
            for f in all_maps(s.len(), t.len()) {
                let is_hom = s.hom_witness(&t, &f).unwrap().is_none();
                match s.extend_monoid_hom(&t, &f) {
                    Ok((c, ext)) => {
                        assert!(is_hom);
                        extended += 1;
                        let (_, pc) = s.completion_monoid().unwrap();
                        for a in 0..s.len() {
                            assert_eq!(ext[c.principal_index(a)], f[a]);
                        }
                        assert_eq!(ext[pc.zero()], t.zero());
                        for i in 0..c.len() {
                            for j in 0..c.len() {
                                assert_eq!(ext[pc.add(i, j)], t.add(ext[i], ext[j]));
                            }
                        }
                    }
                    Err(_) => {
                        assert!(!is_hom || !predomain::predomain::is_continuous_map(s.predomain(), t.predomain(), &f))
                    }
                }
            }
        }
    }
    assert!(extended > 0);
}

#[test]
fn one_sided_additivity_is_the_stronger_law() {
    let mut joint_only = Vec::new();
    for n in 1..=3 {
        for p in predomains(n).unwrap() {
            for zero in 0..n {
                if p.rel().succ(zero).len() != n {
                    continue;
                }
                for m in compatible_monoids(p.rel(), zero).unwrap() {
                    let r = validate_precuntz(&m, p.rel()).unwrap();
                    assert!(r.is_precuntz() && r.additive);
                    if !is_one_sided_additive(&m, p.rel()) {
                        joint_only.push((p.rel().pairs().collect::<Vec<_>>(), m.table().to_vec(), zero));
                    }
                }
            }
        }
    }
    // Smallest instance: 1 ≺≺ 0, 1 ≺≺ 1 with zero 1 and 0 absorbing. Every
    // related pair starts at 1 and 1 + 1 = 1 lies below everything, yet
    // 1 ≺≺ 0 with b = 0 gives 0 + 0 = 0, which is not self-related.
    assert_eq!(joint_only.first(), Some(&(vec![(1, 0), (1, 1)], vec![0, 0, 0, 1], 1)));

    let q = p4();
    let ms = compatible_monoids(q.rel(), 0).unwrap();
    assert_eq!(ms.len(), P4_COMPATIBLE_MONOIDS);
    for m in &ms {
        let pc = PreCuntz::new(m.clone(), q.rel().clone()).unwrap();
        monoid_laws(&pc);
        let (c, cm) = pc.completion_monoid().unwrap();
        assert_eq!(c.len(), Completion::new(&q).unwrap().len());
        monoid_laws(&cm);
    }
}

#[test]
fn one_sided_implies_joint_on_every_validated_structure() {
    for n in 1..=3 {
        for p in predomains(n).unwrap() {
            for zero in 0..n {
                for m in compatible_monoids(p.rel(), zero).unwrap_or_default() {
                    if is_one_sided_additive(&m, p.rel()) {
                        assert!(validate_precuntz(&m, p.rel()).unwrap().additive);
                    }
                }
            }
        }
    }
}
