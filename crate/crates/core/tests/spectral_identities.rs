mod common;

use common::{assert_close, random_small_family, rng, TOL};
use rand::Rng;
use spectra_core::combin::binomial;
use spectra_core::generators::{complete_family, simplex_family};
use spectra_core::ops::{complement_nonempty, cone, disjoint_union, UnionMode};
use spectra_core::spectra::laplacian;
use spectra_core::{spectrum, KFamily};

const INSTANCES: usize = 100;

/// Splits the facets of `s` into two nonempty facet-disjoint families.
fn split(s: &KFamily, r: &mut impl Rng) -> Option<(KFamily, KFamily)> {
    if s.facet_count() < 2 {
        return None;
    }
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for f in s.facets() {
        if r.gen_bool(0.5) {
            a.push(f.clone());
        } else {
            b.push(f.clone());
        }
    }
    if a.is_empty() || b.is_empty() {
        return None;
    }
    Some((
        KFamily::with_facets(s.n(), s.k(), a).unwrap(),
        KFamily::with_facets(s.n(), s.k(), b).unwrap(),
    ))
}

#[test]
fn complement_reverses_the_nontrivial_block() {
    let mut r = rng(11);
    let mut done = 0;
    while done < INSTANCES {
        let s = random_small_family(&mut r, 3, 8, 4);
        let Ok(c) = complement_nonempty(&s) else {
            continue;
        };
        let n = f64::from(s.n());
        let m = binomial(u64::from(s.n()) - 1, s.k() as u64 - 1) as usize;
        let ls = spectrum(&s).unwrap().values;
        let lc = spectrum(&c).unwrap().values;
        let want: Vec<f64> = (1..=m).map(|i| n - ls[m - i]).collect();
        assert_close(&lc[..m], &want, TOL);
        assert!(lc[m..].iter().all(|&x| x == 0.0));
        assert!(ls[m..].iter().all(|&x| x == 0.0));
        done += 1;
    }
}

#[test]
fn cone_shifts_the_facet_gram_spectrum() {
    let mut r = rng(12);
    for _ in 0..INSTANCES {
        let s = random_small_family(&mut r, 3, 7, 4);
        let f = s.facet_count();
        let mut base = spectrum(&s).unwrap().values;
        // eigenvalues of the f x f matrix ∂ᵀ∂: the nonzero part plus zeros
        base.resize(base.len().max(f), 0.0);
        let want: Vec<f64> = base[..f].iter().map(|x| x + 1.0).collect();
        let got = spectrum(&cone(&s)).unwrap().values;
        assert_eq!(
            got.len(),
            binomial(u64::from(s.n()) + 1, s.k() as u64) as usize
        );
        assert_close(&got[..f], &want, TOL);
        assert!(got[f..].iter().all(|&x| x == 0.0));
    }
}

#[test]
fn cone_of_an_edge_is_not_a_full_shift() {
    // edge spectrum (2, 0); shifting every entry would give (3, 1, 0)
    let edge = simplex_family(2).unwrap();
    let got = spectrum(&cone(&edge)).unwrap().values;
    assert_close(&got, &[3.0, 0.0, 0.0], TOL);
}

#[test]
fn cone_of_a_complete_family() {
    for k in 1..=4 {
        let s = complete_family(k as u32, k).unwrap();
        assert_eq!(cone(&s), complete_family(k as u32 + 1, k + 1).unwrap());
    }
    // on more than k vertices the cone misses every facet avoiding the apex
    let s = complete_family(4, 2).unwrap();
    assert_eq!(cone(&s).facet_count(), 6);
    assert_eq!(complete_family(5, 3).unwrap().facet_count(), 10);
}

#[test]
fn facet_disjoint_laplacians_add() {
    let mut r = rng(13);
    let mut done = 0;
    while done < INSTANCES {
        let s = random_small_family(&mut r, 3, 8, 4);
        let Some((a, b)) = split(&s, &mut r) else {
            continue;
        };
        let whole = disjoint_union(&a, &b, UnionMode::FacetDisjoint).unwrap();
        assert_eq!(whole, s);
        let sum = &laplacian(&a) + &laplacian(&b);
        assert_eq!(laplacian(&s).max_abs_diff(&sum), 0.0);
        done += 1;
    }
}

#[test]
fn partial_sums_are_subadditive() {
    let mut r = rng(14);
    let mut done = 0;
    while done < INSTANCES {
        let s = random_small_family(&mut r, 3, 8, 4);
        let Some((a, b)) = split(&s, &mut r) else {
            continue;
        };
        let (ls, la, lb) = (
            spectrum(&s).unwrap(),
            spectrum(&a).unwrap(),
            spectrum(&b).unwrap(),
        );
        for t in 1..=ls.len() {
            assert!(
                ls.partial_sum(t) <= la.partial_sum(t) + lb.partial_sum(t) + TOL,
                "t = {t}\n{s}"
            );
        }
        done += 1;
    }
}

#[test]
fn vertex_disjoint_union_concatenates_spectra() {
    let mut r = rng(15);
    for _ in 0..30 {
        let a = random_small_family(&mut r, 3, 5, 3);
        let k = a.k();
        let n = r.gen_range(k as u32..=6);
        let b = common::random_family(&mut r, n, k, 0.5);
        let u = disjoint_union(&a, &b, UnionMode::VertexDisjoint).unwrap();
        let mut want: Vec<f64> = spectrum(&a).unwrap().values;
        want.extend(spectrum(&b).unwrap().values);
        want.sort_by(|x, y| y.total_cmp(x));
        let got = spectrum(&u).unwrap().values;
        // the union has extra ridges mixing both vertex sets; all zero
        assert_close(&got[..want.len()], &want, TOL);
        assert!(got[want.len()..].iter().all(|&x| x == 0.0));
    }
}
