//! Exhaustive and random generation of small relations and predomains.

use rand::Rng;

use crate::error::{Error, Result};
use crate::order::{Carrier, ElemSet, Relation};
use crate::predomain::Predomain;

/// Largest carrier for exhaustive relation enumeration.
pub const EXHAUSTIVE_BOUND: usize = 5;

/// Every relation on `n` points, as successor rows.
pub fn all_relations(n: usize) -> Result<impl Iterator<Item = Relation>> {
    if n > 4 {
        return Err(Error::EnumerationBound { size: n, bound: 4 });
    }
    let carrier = Carrier::numbered(n)?;
    let mask = (1u32 << n) - 1;
    Ok((0u64..1 << (n * n)).map(move |code| {
        let rows = (0..n)
            .map(|a| ElemSet::from_bits(((code >> (a * n)) as u32 & mask) as u128))
            .collect();
        Relation::from_rows(carrier.clone(), rows)
    }))
}

/// Every transitive relation on `n` points, by row-wise backtracking.
pub fn transitive_relations(n: usize) -> Result<Vec<Relation>> {
    if n > EXHAUSTIVE_BOUND {
        return Err(Error::EnumerationBound {
            size: n,
            bound: EXHAUSTIVE_BOUND,
        });
    }
    let carrier = Carrier::numbered(n)?;
    let mut out = Vec::new();
    let mut rows = vec![0u32; n];
    fill(n, 0, &mut rows, &mut |rows| {
        let rows = rows.iter().map(|&r| ElemSet::from_bits(r as u128)).collect();
        out.push(Relation::from_rows(carrier.clone(), rows));
    });
    Ok(out)
}

fn fill(n: usize, k: usize, rows: &mut [u32], emit: &mut impl FnMut(&[u32])) {
    if k == n {
        emit(rows);
        return;
    }
    for r in 0..1u32 << n {
        rows[k] = r;
        // Only pairs among decided rows can be checked.
        let ok = (0..=k).all(|a| (0..=k).all(|b| rows[a] >> b & 1 == 0 || rows[b] & !rows[a] == 0));
        if ok {
            fill(n, k + 1, rows, emit);
        }
    }
}

/// Every predomain on `n` points.
pub fn predomains(n: usize) -> Result<Vec<Predomain>> {
    Ok(transitive_relations(n)?
        .into_iter()
        .filter_map(|r| Predomain::new(r).ok())
        .collect())
}

/// The transitive closure of a relation with each pair present with
/// probability `density`.
pub fn random_transitive<R: Rng>(rng: &mut R, n: usize, density: f64) -> Result<Relation> {
    let carrier = Carrier::numbered(n)?;
    let r = Relation::from_fn(carrier, |_, _| rng.gen_bool(density));
    Ok(r.transitive_closure())
}

/// A random predomain: a random transitive relation with self-loops added
/// on a random subset, falling back to all self-loops.
pub fn random_predomain<R: Rng>(rng: &mut R, n: usize) -> Result<Predomain> {
    let density = rng.gen_range(0.05..0.5);
    let base = random_transitive(rng, n, density)?;
    let loops = Relation::from_fn(base.carrier().clone(), |a, b| a == b && rng.gen_bool(0.5));
    let r = base.union(&loops)?.transitive_closure();
    match Predomain::new(r.clone()) {
        Ok(p) => Ok(p),
        Err(_) => {
            let id = Relation::identity(base.carrier().clone());
            Predomain::new(r.union(&id)?)
        }
    }
}
