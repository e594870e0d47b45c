//! Isomorphism-level predicates: canonical forms, shiftedness, and
//! containment of a subfamily up to relabeling.

use std::collections::HashSet;

use crate::combin::for_each_permutation;
use crate::error::{Error, Result};
use crate::family::{Facet, KFamily};

/// Largest universe for which permutation searches are attempted.
pub const PERMUTATION_GUARD: u32 = 10;

/// Labelings tried by [`find_shifting_labeling`] before giving up.
pub const SHIFT_SEARCH_BUDGET: usize = 3_628_800;

/// Largest subfamily support for [`contains_subfamily`].
pub const SUBFAMILY_SUPPORT_GUARD: usize = 12;

fn check_guard(n: u32) -> Result<()> {
    if n > PERMUTATION_GUARD {
        return Err(Error::size(
            "vertex universe",
            n as usize,
            PERMUTATION_GUARD as usize,
        ));
    }
    Ok(())
}

/// Facet code where vertex `v` sets bit `n - v`: lexicographically smaller
/// facets get numerically larger codes.
fn code_of(n: u32, f: &Facet) -> u64 {
    f.vertices().iter().fold(0, |acc, &v| acc | 1 << (n - v))
}

fn decode(n: u32, code: u64) -> Facet {
    Facet::from_sorted((1..=n).filter(|&v| code & (1 << (n - v)) != 0).collect())
}

/// Depth-first search state for [`canonical_form`]. Labels `1..=depth` are
/// placed on the original vertices in `used`; each facet is a pair (code
/// bits fixed so far, original vertices still unlabeled), sorted descending.
struct CanonSearch {
    n: usize,
    best: Vec<u64>,
    seen: HashSet<(u64, Vec<(u64, u64)>)>,
}

impl CanonSearch {
    /// Each facet's code is at most its prefix plus the highest free labels
    /// for its unlabeled vertices, so the sorted bounds dominate every
    /// completion.
    fn upper_bound(&self, depth: usize, pairs: &[(u64, u64)]) -> Vec<u64> {
        let free = self.n - depth;
        let mut ub: Vec<u64> = pairs
            .iter()
            .map(|&(p, r)| {
                let m = r.count_ones() as usize;
                p | (((1u64 << m) - 1) << (free - m))
            })
            .collect();
        ub.sort_unstable_by(|a, b| b.cmp(a));
        ub
    }

    fn visit(&mut self, depth: usize, used: u64, pairs: Vec<(u64, u64)>) {
        if depth == self.n {
            let codes: Vec<u64> = pairs.iter().map(|&(p, _)| p).collect();
            if codes > self.best {
                self.best = codes;
            }
            return;
        }
        if !self.best.is_empty() && self.upper_bound(depth, &pairs) <= self.best {
            return;
        }
        if !self.seen.insert((used, pairs.clone())) {
            return;
        }
        let bit = 1u64 << (self.n - 1 - depth);
        let mut children: Vec<(u64, Vec<(u64, u64)>)> = (0..self.n)
            .map(|v| 1u64 << v)
            .filter(|vb| used & vb == 0)
            .map(|vb| {
                let mut next: Vec<(u64, u64)> = pairs
                    .iter()
                    .map(|&(p, r)| {
                        if r & vb != 0 {
                            (p | bit, r & !vb)
                        } else {
                            (p, r)
                        }
                    })
                    .collect();
                next.sort_unstable_by(|a, b| b.cmp(a));
                (vb, next)
            })
            .collect();
        // most promising prefix first, so a strong incumbent appears early
        children.sort_by(|a, b| {
            let pa = a.1.iter().map(|&(p, _)| p);
            let pb = b.1.iter().map(|&(p, _)| p);
            pb.cmp(pa)
        });
        for (vb, next) in children {
            self.visit(depth + 1, used | vb, next);
        }
    }
}

/// The lexicographically least facet list over all relabelings of `[1..=n]`.
/// Two families are isomorphic exactly when their canonical forms agree.
pub fn canonical_form(s: &KFamily) -> Result<KFamily> {
    check_guard(s.n())?;
    let mut pairs: Vec<(u64, u64)> = s
        .facets()
        .iter()
        .map(|f| (0, f.vertices().iter().fold(0, |acc, &v| acc | 1 << (v - 1))))
        .collect();
    pairs.sort_unstable_by(|a, b| b.cmp(a));
    let mut search = CanonSearch {
        n: s.n() as usize,
        best: Vec::new(),
        seen: HashSet::new(),
    };
    search.visit(0, 0, pairs);
    let mut out: Vec<Facet> = search.best.iter().map(|&c| decode(s.n(), c)).collect();
    out.sort_unstable();
    Ok(KFamily::from_parts(s.n(), s.k(), out))
}

pub fn is_isomorphic(a: &KFamily, b: &KFamily) -> Result<bool> {
    if a.n() != b.n() || a.k() != b.k() || a.facet_count() != b.facet_count() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

/// Shiftedness under the identity labeling: replacing any vertex of a facet
/// by a smaller label not already in it gives another facet.
fn shifted_identity(s: &KFamily) -> bool {
    let codes: HashSet<u64> = s.facets().iter().map(|f| code_of(s.n(), f)).collect();
    let n = s.n();
    s.facets().iter().all(|f| {
        let c = code_of(n, f);
        f.vertices().iter().all(|&v| {
            (1..v).all(|w| {
                let wbit = 1u64 << (n - w);
                c & wbit != 0 || codes.contains(&((c & !(1 << (n - v))) | wbit))
            })
        })
    })
}

/// `labeling[v - 1]` is the new label of vertex `v`. Without a labeling,
/// reports whether any labeling makes the family shifted.
pub fn is_shifted(s: &KFamily, labeling: Option<&[u32]>) -> Result<bool> {
    match labeling {
        Some(lab) => {
            validate_labeling(s.n(), lab)?;
            if s.n() > 64 {
                return Err(Error::size("vertex universe", s.n() as usize, 64));
            }
            Ok(shifted_identity(&s.relabel(|v| lab[v as usize - 1])))
        }
        None => Ok(find_shifting_labeling(s)?.is_some()),
    }
}

fn validate_labeling(n: u32, lab: &[u32]) -> Result<()> {
    let mut seen = vec![false; n as usize + 1];
    if lab.len() != n as usize {
        return Err(Error::Range(format!(
            "labeling has {} entries, expected {n}",
            lab.len()
        )));
    }
    for &l in lab {
        if l == 0 || l > n || seen[l as usize] {
            return Err(Error::Range(
                "labeling is not a permutation of [1, n]".into(),
            ));
        }
        seen[l as usize] = true;
    }
    Ok(())
}

/// Searches labelings for one under which the family is shifted. Only
/// labelings with degrees non-increasing in the label are tried; every
/// shifting labeling has that property. Fails with a size error once
/// [`SHIFT_SEARCH_BUDGET`] labelings have been rejected.
pub fn find_shifting_labeling(s: &KFamily) -> Result<Option<Vec<u32>>> {
    if s.n() > 64 {
        return Err(Error::size("vertex universe", s.n() as usize, 64));
    }
    let deg = s.degree_sequence();
    let mut order: Vec<u32> = (1..=s.n()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(deg.of(v)));
    // classes of equal positive degree may be permuted freely; zero-degree
    // vertices never occur in a facet
    let mut classes: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    while start < order.len() {
        let d = deg.of(order[start]);
        let end = start
            + order[start..]
                .iter()
                .take_while(|&&v| deg.of(v) == d)
                .count();
        if d > 0 && end - start > 1 {
            classes.push((start, end));
        }
        start = end;
    }
    let mut found = None;
    let mut budget = SHIFT_SEARCH_BUDGET;
    search_classes(s, &mut order, &classes, &mut found, &mut budget);
    if found.is_none() && budget == 0 {
        return Err(Error::size(
            "labelings to try",
            SHIFT_SEARCH_BUDGET + 1,
            SHIFT_SEARCH_BUDGET,
        ));
    }
    Ok(found)
}

fn search_classes(
    s: &KFamily,
    order: &mut Vec<u32>,
    classes: &[(usize, usize)],
    found: &mut Option<Vec<u32>>,
    budget: &mut usize,
) {
    if found.is_some() || *budget == 0 {
        return;
    }
    let Some((&(a, b), rest)) = classes.split_first() else {
        let mut lab = vec![0u32; order.len()];
        for (pos, &v) in order.iter().enumerate() {
            lab[v as usize - 1] = pos as u32 + 1;
        }
        if shifted_identity(&s.relabel(|v| lab[v as usize - 1])) {
            *found = Some(lab);
        } else {
            *budget -= 1;
        }
        return;
    };
    let block: Vec<u32> = order[a..b].to_vec();
    for_each_permutation(b - a, |perm| {
        for (i, &p) in perm.iter().enumerate() {
            order[a + i] = block[p];
        }
        search_classes(s, order, rest, found, budget);
        found.is_none() && *budget > 0
    });
    order[a..b].copy_from_slice(&block);
}

/// Whether some injective relabeling of `h`'s support sends every facet of
/// `h` to a facet of `s`.
pub fn contains_subfamily(s: &KFamily, h: &KFamily) -> Result<bool> {
    if s.k() != h.k() {
        return Err(Error::KMismatch(s.k(), h.k()));
    }
    let support = h.support();
    if support.len() > SUBFAMILY_SUPPORT_GUARD {
        return Err(Error::size(
            "subfamily support",
            support.len(),
            SUBFAMILY_SUPPORT_GUARD,
        ));
    }
    if h.facet_count() > s.facet_count() || support.len() > s.n() as usize {
        return Ok(false);
    }
    if h.is_empty() {
        return Ok(true);
    }
    let hdeg = h.degree_sequence();
    let sdeg = s.degree_sequence();
    let mut order = support.clone();
    order.sort_by_key(|&v| std::cmp::Reverse(hdeg.of(v)));
    let pos_of = |v: u32| order.iter().position(|&x| x == v).unwrap();
    // facets of h that become fully assigned at each step
    let mut closing: Vec<Vec<&Facet>> = vec![Vec::new(); order.len()];
    for f in h.facets() {
        let last = f.vertices().iter().map(|&v| pos_of(v)).max().unwrap();
        closing[last].push(f);
    }
    let targets: HashSet<&Facet> = s.facets().iter().collect();
    let mut map = vec![0u32; h.n() as usize + 1];
    let mut used = vec![false; s.n() as usize + 1];
    let ctx = Embed {
        order: &order,
        closing: &closing,
        targets: &targets,
        hdeg: hdeg.as_slice(),
        sdeg: sdeg.as_slice(),
        n: s.n(),
    };
    Ok(ctx.extend(0, &mut map, &mut used))
}

struct Embed<'a> {
    order: &'a [u32],
    closing: &'a [Vec<&'a Facet>],
    targets: &'a HashSet<&'a Facet>,
    hdeg: &'a [usize],
    sdeg: &'a [usize],
    n: u32,
}

impl Embed<'_> {
    fn extend(&self, step: usize, map: &mut [u32], used: &mut [bool]) -> bool {
        if step == self.order.len() {
            return true;
        }
        let v = self.order[step];
        for w in 1..=self.n {
            if used[w as usize] || self.sdeg[w as usize - 1] < self.hdeg[v as usize - 1] {
                continue;
            }
            map[v as usize] = w;
            let ok = self.closing[step].iter().all(|f| {
                let mut img: Vec<u32> = f.vertices().iter().map(|&x| map[x as usize]).collect();
                img.sort_unstable();
                self.targets.contains(&Facet::from_sorted(img))
            });
            if ok {
                used[w as usize] = true;
                if self.extend(step + 1, map, used) {
                    return true;
                }
                used[w as usize] = false;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: u32, fs: &[&[u32]]) -> KFamily {
        KFamily::from_facets(n, fs.iter().map(|f| f.to_vec())).unwrap()
    }

    #[test]
    fn canonical_form_of_relabeled_star() {
        let star = fam(5, &[&[1, 2, 3], &[1, 2, 4], &[1, 2, 5]]);
        let moved = fam(5, &[&[2, 4, 5], &[1, 4, 5], &[3, 4, 5]]);
        assert_eq!(
            canonical_form(&star).unwrap(),
            canonical_form(&moved).unwrap()
        );
        assert_eq!(canonical_form(&star).unwrap(), star);
    }

    #[test]
    fn same_ridge_graph_different_families() {
        let s = fam(6, &[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]);
        let t = fam(6, &[&[1, 2, 3], &[1, 2, 4], &[1, 2, 5], &[1, 2, 6]]);
        assert_ne!(canonical_form(&s).unwrap(), canonical_form(&t).unwrap());
        assert!(!is_isomorphic(&s, &t).unwrap());
    }

    fn brute_force_form(s: &KFamily) -> KFamily {
        let n = s.n();
        let mut best: Vec<u64> = Vec::new();
        for_each_permutation(n as usize, |perm| {
            let mut image: Vec<u64> = s
                .facets()
                .iter()
                .map(|f| {
                    f.vertices().iter().fold(0, |acc, &v| {
                        acc | 1 << (n as usize - 1 - perm[v as usize - 1])
                    })
                })
                .collect();
            image.sort_unstable_by(|a, b| b.cmp(a));
            if image > best {
                best = image;
            }
            true
        });
        let mut out: Vec<Facet> = best.into_iter().map(|c| decode(n, c)).collect();
        out.sort_unstable();
        KFamily::from_parts(n, s.k(), out)
    }

    #[test]
    fn pruned_search_matches_every_permutation() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..2000 {
            let n = rng.gen_range(1..=7);
            let k = rng.gen_range(1..=n as usize);
            let p = rng.gen_range(0.1..0.9);
            let facets: Vec<Vec<u32>> = crate::combin::k_subsets(n, k)
                .into_iter()
                .filter(|_| rng.gen_bool(p))
                .collect();
            if facets.is_empty() {
                continue;
            }
            let s = KFamily::from_facets(n, facets).unwrap();
            assert_eq!(canonical_form(&s).unwrap(), brute_force_form(&s), "{s}");
        }
        for s in [
            crate::generators::complete_family(7, 3).unwrap(),
            fam(6, &[&[1, 2], &[3, 4], &[5, 6]]),
        ] {
            assert_eq!(canonical_form(&s).unwrap(), brute_force_form(&s));
        }
    }

    #[test]
    fn single_facet_canonical() {
        let f = fam(7, &[&[3, 5, 7]]);
        assert_eq!(canonical_form(&f).unwrap(), fam(7, &[&[1, 2, 3]]));
    }

    #[test]
    fn canonical_guard() {
        let big = fam(11, &[&[1, 2]]);
        assert!(matches!(canonical_form(&big), Err(Error::Size { .. })));
    }

    #[test]
    fn shifted_predicates() {
        let complete = fam(4, &[&[1, 2], &[1, 3], &[1, 4], &[2, 3], &[2, 4], &[3, 4]]);
        let id: Vec<u32> = (1..=4).collect();
        assert!(is_shifted(&complete, Some(&id)).unwrap());
        let bad = fam(3, &[&[1, 3], &[2, 3]]);
        assert!(!is_shifted(&bad, Some(&[1, 2, 3])).unwrap());
        // relabel 3 -> 1 makes it the star {12, 13}
        assert!(is_shifted(&bad, None).unwrap());
        assert_eq!(find_shifting_labeling(&bad).unwrap().unwrap()[2], 1);
        let path4 = fam(4, &[&[1, 2], &[2, 3], &[3, 4]]);
        assert!(!is_shifted(&path4, None).unwrap());
        assert!(is_shifted(&path4, Some(&[1, 1, 2, 3])).is_err());
        // twelve vertices of equal degree: the first labeling already works
        let big: Vec<Vec<u32>> = (1..=12)
            .flat_map(|a| (a + 1..=12).map(move |b| vec![a, b]))
            .collect();
        assert!(is_shifted(&KFamily::from_facets(12, big).unwrap(), None).unwrap());
    }

    #[test]
    fn subfamily_containment() {
        let k4 = fam(4, &[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]);
        let k3 = fam(3, &[&[1, 2, 3]]);
        assert!(contains_subfamily(&k4, &k3).unwrap());
        let star = fam(5, &[&[1, 2, 3], &[1, 2, 4], &[1, 2, 5]]);
        let s22 = fam(8, &[&[1, 2, 3], &[1, 2, 4], &[5, 6, 7], &[5, 6, 8]]);
        assert!(!contains_subfamily(&star, &s22).unwrap());
        let s2 = fam(4, &[&[1, 2, 3], &[1, 2, 4]]);
        assert!(contains_subfamily(&k4, &s2).unwrap());
        assert!(contains_subfamily(&star, &s2).unwrap());
        let two_disjoint = fam(6, &[&[1, 2, 3], &[4, 5, 6]]);
        assert!(!contains_subfamily(&two_disjoint, &s2).unwrap());
        let edge = fam(2, &[&[1, 2]]);
        assert_eq!(contains_subfamily(&k4, &edge), Err(Error::KMismatch(3, 2)));
    }
}
