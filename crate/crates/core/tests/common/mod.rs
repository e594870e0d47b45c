//! Independent reference implementations used only by tests.
#![allow(dead_code)]

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spectra_core::combin::k_subsets;
use spectra_core::spectra::DenseMatrix;
use spectra_core::KFamily;

pub const TOL: f64 = 1e-8;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Each k-subset of [n] kept with probability `p`; at least one facet.
pub fn random_family(rng: &mut ChaCha8Rng, n: u32, k: usize, p: f64) -> KFamily {
    let all = k_subsets(n, k);
    loop {
        let chosen: Vec<Vec<u32>> = all.iter().filter(|_| rng.gen_bool(p)).cloned().collect();
        if !chosen.is_empty() {
            return KFamily::from_facets(n, chosen).unwrap();
        }
    }
}

/// Random family with `n` in `n_range`, `2 <= k < n`, density in [0.2, 0.8].
pub fn random_small_family(rng: &mut ChaCha8Rng, n_lo: u32, n_hi: u32, k_hi: usize) -> KFamily {
    let n = rng.gen_range(n_lo..=n_hi);
    let k = rng.gen_range(2..=k_hi.min(n as usize - 1).max(2));
    let p = rng.gen_range(0.2..0.8);
    random_family(rng, n, k, p)
}

/// Cyclic Jacobi rotations; eigenvalues sorted descending.
#[allow(clippy::needless_range_loop)]
pub fn jacobi_eigenvalues(m: &DenseMatrix) -> Vec<f64> {
    let n = m.dim();
    let mut a: Vec<Vec<f64>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    for _ in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-26 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut vals: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    vals.sort_by(|x, y| y.partial_cmp(x).unwrap());
    vals
}

/// Laplacian assembled entry by entry from the definition: diagonal entry of
/// a ridge is its degree, off-diagonal entry of two ridges in a common facet
/// is the product of their orientation signs.
pub fn naive_laplacian(s: &KFamily) -> DenseMatrix {
    let rows = k_subsets(s.n(), s.k() - 1);
    let sign = |f: &[u32], r: &[u32]| -> f64 {
        let omitted = f.iter().position(|v| !r.contains(v)).unwrap();
        if omitted % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    };
    let inside = |r: &[u32], f: &[u32]| r.iter().all(|v| f.contains(v));
    let mut data = vec![vec![0.0; rows.len()]; rows.len()];
    for f in s.facets() {
        let f = f.vertices();
        for (i, ri) in rows.iter().enumerate() {
            if !inside(ri, f) {
                continue;
            }
            for (j, rj) in rows.iter().enumerate() {
                if inside(rj, f) {
                    data[i][j] += sign(f, ri) * sign(f, rj);
                }
            }
        }
    }
    DenseMatrix::from_rows(&data)
}

/// Every permutation of `0..n`, by recursion.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn ridge_connected(facets: &[Vec<u32>]) -> bool {
    if facets.is_empty() {
        return false;
    }
    let k = facets[0].len();
    let mut seen = vec![false; facets.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..facets.len() {
            let common = facets[i].iter().filter(|v| facets[j].contains(v)).count();
            if !seen[j] && common + 1 == k {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.iter().all(|&x| x)
}

/// Number of isomorphism classes of nonempty k-families on [n], counted by
/// marking whole permutation orbits of facet sets as visited.
pub fn naive_class_count(n: u32, k: usize, connected_only: bool) -> usize {
    let all = k_subsets(n, k);
    let perms = permutations(n as usize);
    let total = all.len();
    let mut visited: HashSet<Vec<Vec<u32>>> = HashSet::new();
    let mut classes = 0;
    for mask in 1u32..(1 << total) {
        let mut family: Vec<Vec<u32>> = (0..total)
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| all[i].clone())
            .collect();
        family.sort();
        if visited.contains(&family) {
            continue;
        }
        for p in &perms {
            let mut image: Vec<Vec<u32>> = family
                .iter()
                .map(|f| {
                    let mut g: Vec<u32> = f.iter().map(|&v| p[v as usize - 1] as u32 + 1).collect();
                    g.sort_unstable();
                    g
                })
                .collect();
            image.sort();
            visited.insert(image);
        }
        if !connected_only || ridge_connected(&family) {
            classes += 1;
        }
    }
    classes
}

/// Largest set of pairwise non-adjacent facets, by trying every subset.
pub fn brute_matching_number(s: &KFamily) -> usize {
    let f = s.facets();
    let k = s.k();
    let adjacent = |a: usize, b: usize| f[a].intersection_size(&f[b]) + 1 == k;
    (0u32..1 << f.len())
        .filter(|&m| {
            (0..f.len()).all(|i| {
                m & (1 << i) == 0 || (i + 1..f.len()).all(|j| m & (1 << j) == 0 || !adjacent(i, j))
            })
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

pub fn assert_close(got: &[f64], want: &[f64], tol: f64) {
    assert_eq!(got.len(), want.len(), "{got:?} vs {want:?}");
    for (i, (g, w)) in got.iter().zip(want).enumerate() {
        assert!(
            (g - w).abs() <= tol,
            "index {i}: {g} vs {w}\n{got:?}\n{want:?}"
        );
    }
}
