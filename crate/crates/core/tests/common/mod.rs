//! Brute-force reference implementations over plain boolean matrices,
//! written directly from the definitions and sharing no code with the
//! library.

#![allow(dead_code)]

use predomain::order::Relation;
use predomain::ExtRational;

pub type Mat = Vec<Vec<bool>>;

pub fn mat(r: &Relation) -> Mat {
    let n = r.len();
    (0..n).map(|a| (0..n).map(|b| r.holds(a, b)).collect()).collect()
}

/// All subsets of `items`, as vectors.
pub fn subsets(items: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &x in items {
        let with: Vec<Vec<usize>> = out
            .iter()
            .map(|s| {
                let mut t = s.clone();
                t.push(x);
                t
            })
            .collect();
        out.extend(with);
    }
    out
}

pub fn below(m: &Mat, c: usize) -> Vec<usize> {
    (0..m.len()).filter(|&x| m[x][c]).collect()
}

pub fn above(m: &Mat, c: usize) -> Vec<usize> {
    (0..m.len()).filter(|&x| m[c][x]).collect()
}

pub fn transitive(m: &Mat) -> bool {
    let n = m.len();
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(m[a][b] && m[b][c]) || m[a][c])))
}

fn interpolates(m: &Mat, f: &[usize], c: usize) -> bool {
    (0..m.len()).any(|b| m[b][c] && f.iter().all(|&x| m[x][b]))
}

/// Interpolation for every finite `F ≺≺ c`.
pub fn ip_full(m: &Mat) -> bool {
    (0..m.len()).all(|c| subsets(&below(m, c)).iter().all(|f| interpolates(m, f, c)))
}

pub fn ip0(m: &Mat) -> bool {
    (0..m.len()).all(|c| interpolates(m, &[], c))
}

pub fn ip2(m: &Mat) -> bool {
    let n = m.len();
    (0..n).all(|c| {
        below(m, c)
            .iter()
            .all(|&a| below(m, c).iter().all(|&b| interpolates(m, &[a, b], c)))
    })
}

pub fn is_predomain(m: &Mat) -> bool {
    transitive(m) && ip_full(m)
}

/// Nonempty, down-closed and directed in the sense that every finite
/// subset has a common strict upper bound inside.
pub fn is_round_ideal(m: &Mat, s: &[usize]) -> bool {
    if s.is_empty() {
        return false;
    }
    let closed = s.iter().all(|&y| (0..m.len()).all(|x| !m[x][y] || s.contains(&x)));
    closed && subsets(s).iter().all(|f| s.iter().any(|&b| f.iter().all(|&x| m[x][b])))
}

/// Round ideals as sorted member lists, ordered by their bitmask.
pub fn round_ideals(m: &Mat) -> Vec<Vec<usize>> {
    let all: Vec<usize> = (0..m.len()).collect();
    let mut out: Vec<Vec<usize>> = subsets(&all)
        .into_iter()
        .map(|mut s| {
            s.sort_unstable();
            s
        })
        .filter(|s| is_round_ideal(m, s))
        .collect();
    out.sort_by_key(|s| s.iter().map(|&i| 1u128 << i).sum::<u128>());
    out
}

pub fn stratified(m: &Mat) -> Mat {
    let n = m.len();
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| (0..n).any(|c| m[c][b] && (0..n).all(|x| !m[x][a] || m[x][c])))
                .collect()
        })
        .collect()
}

/// `U` is open for the c-space topology of `m`: every member has a
/// predecessor inside and `U` is closed upwards.
pub fn cspace_open(m: &Mat, u: &[bool]) -> bool {
    let n = m.len();
    (0..n).all(|x| {
        if u[x] {
            (0..n).any(|y| u[y] && m[y][x]) && (0..n).all(|z| !m[x][z] || u[z])
        } else {
            true
        }
    })
}

/// Lower semicontinuity by open preimages `f⁻¹(]r, ∞])` at `r = 0` and
/// every finite value of `f`.
pub fn lsc_by_preimages(m: &Mat, f: &[ExtRational]) -> bool {
    let mut thresholds: Vec<ExtRational> = f.iter().filter(|v| !v.is_infinite()).cloned().collect();
    thresholds.push(ExtRational::zero());
    thresholds.iter().all(|r| {
        let pre: Vec<bool> = f.iter().map(|v| v > r).collect();
        cspace_open(m, &pre)
    })
}

/// `↡a ⊆ ↡b`.
pub fn natural_le(m: &Mat, a: usize, b: usize) -> bool {
    (0..m.len()).all(|x| !m[x][a] || m[x][b])
}

pub fn monotone(m: &Mat, f: &[ExtRational]) -> bool {
    let n = m.len();
    (0..n).all(|a| (0..n).all(|b| !natural_le(m, a, b) || f[a] <= f[b]))
}
