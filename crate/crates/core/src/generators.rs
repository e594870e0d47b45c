//! Named families: complete, star, simplex, threshold graphs, shifted
//! families, random simplicial trees and cycle families.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::combin::k_subsets;
use crate::error::{Error, Result};
use crate::family::{Facet, KFamily};
use crate::ops::cone;
use crate::structure::subfamily_has_leaf;

/// Seed for the reproducible random generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seed(pub u64);

impl Seed {
    fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }
}

fn check_nk(n: u32, k: usize) -> Result<()> {
    if k == 0 || n == 0 || k > n as usize {
        return Err(Error::Range(format!(
            "need n >= k >= 1, got n = {n}, k = {k}"
        )));
    }
    Ok(())
}

/// Every `k`-subset of `[1..=n]`.
pub fn complete_family(n: u32, k: usize) -> Result<KFamily> {
    check_nk(n, k)?;
    let facets = k_subsets(n, k)
        .into_iter()
        .map(Facet::from_sorted)
        .collect();
    Ok(KFamily::from_parts(n, k, facets))
}

/// Hub `{1..k-1}` joined with each of `k..=n`.
pub fn star_family(n: u32, k: usize) -> Result<KFamily> {
    check_nk(n, k)?;
    let hub: Vec<u32> = (1..k as u32).collect();
    let facets = (k as u32..=n)
        .map(|j| {
            let mut f = hub.clone();
            f.push(j);
            Facet::from_sorted(f)
        })
        .collect();
    Ok(KFamily::from_parts(n, k, facets))
}

/// One facet `{1..k}` on `n = k`.
pub fn simplex_family(k: usize) -> Result<KFamily> {
    check_nk(k as u32, k)?;
    Ok(KFamily::from_parts(
        k as u32,
        k,
        vec![Facet::from_sorted((1..=k as u32).collect())],
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ThresholdStep {
    /// New vertex adjacent to every existing vertex.
    Cone,
    /// New vertex with no edges.
    Isolated,
}

/// Vertex additions applied after an initial single vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThresholdSeq {
    pub steps: Vec<ThresholdStep>,
}

impl ThresholdSeq {
    pub fn new(steps: Vec<ThresholdStep>) -> Self {
        ThresholdSeq { steps }
    }

    pub fn cone_count(&self) -> usize {
        self.steps
            .iter()
            .filter(|&&s| s == ThresholdStep::Cone)
            .count()
    }

    pub fn vertex_count(&self) -> u32 {
        self.steps.len() as u32 + 1
    }

    pub fn random(len: usize, seed: Seed) -> Self {
        let mut rng = seed.rng();
        let steps = (0..len)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    ThresholdStep::Cone
                } else {
                    ThresholdStep::Isolated
                }
            })
            .collect();
        ThresholdSeq { steps }
    }
}

impl FromStr for ThresholdSeq {
    type Err = Error;

    /// `c` for cone, `i` for isolated, e.g. `"ciic"`.
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c.to_ascii_lowercase() {
                'c' => Ok(ThresholdStep::Cone),
                'i' => Ok(ThresholdStep::Isolated),
                other => Err(Error::Range(format!(
                    "threshold step {other:?} is not c or i"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(ThresholdSeq::new)
    }
}

impl fmt::Display for ThresholdSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(match s {
                ThresholdStep::Cone => "c",
                ThresholdStep::Isolated => "i",
            })?;
        }
        Ok(())
    }
}

/// Builds the graph on `1 + steps` vertices; vertex `j + 2` is added by
/// step `j`.
pub fn threshold_graph(seq: &ThresholdSeq) -> Result<KFamily> {
    let mut edges = Vec::new();
    for (j, step) in seq.steps.iter().enumerate() {
        let new = j as u32 + 2;
        if *step == ThresholdStep::Cone {
            edges.extend((1..new).map(|u| Facet::from_sorted(vec![u, new])));
        }
    }
    if edges.is_empty() {
        return Err(Error::EmptyGraph);
    }
    edges.sort_unstable();
    Ok(KFamily::from_parts(seq.vertex_count(), 2, edges))
}

/// Recovers a construction sequence when `s` is a threshold graph, by
/// peeling isolated or dominating vertices.
pub fn threshold_sequence_of(s: &KFamily) -> Option<ThresholdSeq> {
    if s.k() != 2 {
        return None;
    }
    let n = s.n() as usize;
    let mut adj = vec![vec![false; n + 1]; n + 1];
    for f in s.facets() {
        let (a, b) = (f.vertices()[0] as usize, f.vertices()[1] as usize);
        adj[a][b] = true;
        adj[b][a] = true;
    }
    let mut alive: Vec<usize> = (1..=n).collect();
    let mut rev = Vec::new();
    while alive.len() > 1 {
        let deg = |v: usize, alive: &[usize]| alive.iter().filter(|&&u| adj[v][u]).count();
        let pick = alive.iter().position(|&v| {
            let d = deg(v, &alive);
            d == 0 || d + 1 == alive.len()
        })?;
        let v = alive.remove(pick);
        rev.push(if deg(v, &alive) == 0 {
            ThresholdStep::Isolated
        } else {
            ThresholdStep::Cone
        });
    }
    rev.reverse();
    Some(ThresholdSeq::new(rev))
}

/// Generators of a shifted family: its Gale-maximal facets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaleGenerators {
    generators: Vec<Vec<u32>>,
}

impl GaleGenerators {
    pub fn new(generators: Vec<Vec<u32>>) -> Result<Self> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            gens.push(Facet::new(g)?.vertices().to_vec());
        }
        let Some(k) = gens.first().map(Vec::len) else {
            return Err(Error::Range("at least one generator is required".into()));
        };
        if let Some(g) = gens.iter().find(|g| g.len() != k) {
            return Err(Error::Purity {
                expected: k,
                found: g.len(),
            });
        }
        Ok(GaleGenerators { generators: gens })
    }

    pub fn k(&self) -> usize {
        self.generators[0].len()
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }
}

impl FromStr for GaleGenerators {
    type Err = Error;

    /// `"1,2,5;1,3,4"`.
    fn from_str(s: &str) -> Result<Self> {
        let gens = s
            .split(';')
            .filter(|g| !g.trim().is_empty())
            .map(|g| {
                g.split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::Range(format!("bad generator entry {t:?}")))
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        GaleGenerators::new(gens)
    }
}

/// Componentwise order on sorted tuples.
pub fn gale_le(x: &[u32], y: &[u32]) -> bool {
    x.len() == y.len() && x.iter().zip(y).all(|(a, b)| a <= b)
}

/// The Gale order ideal generated by `g`: every `k`-subset of `[1..=n]`
/// lying componentwise below some generator.
pub fn shifted_from_generators(n: u32, g: &GaleGenerators) -> Result<KFamily> {
    check_nk(n, g.k())?;
    if let Some(bad) = g
        .generators()
        .iter()
        .find(|x| x.iter().any(|&v| v == 0 || v > n))
    {
        return Err(Error::Range(format!("generator {bad:?} outside [1, {n}]")));
    }
    let facets = k_subsets(n, g.k())
        .into_iter()
        .filter(|x| g.generators().iter().any(|y| gale_le(x, y)))
        .map(Facet::from_sorted)
        .collect();
    Ok(KFamily::from_parts(n, g.k(), facets))
}

/// Shifted family generated by one to three random `k`-sets, pruned to an
/// antichain.
pub fn random_shifted(n: u32, k: usize, seed: Seed) -> Result<KFamily> {
    check_nk(n, k)?;
    let mut rng = seed.rng();
    let count = rng.gen_range(1..=3);
    let mut gens: Vec<Vec<u32>> = (0..count)
        .map(|_| {
            let mut g: Vec<u32> = sample(&mut rng, n as usize, k)
                .into_iter()
                .map(|i| i as u32 + 1)
                .collect();
            g.sort_unstable();
            g
        })
        .collect();
    gens.sort();
    gens.dedup();
    let maximal: Vec<Vec<u32>> = gens
        .iter()
        .filter(|x| !gens.iter().any(|y| y != *x && gale_le(x, y)))
        .cloned()
        .collect();
    shifted_from_generators(n, &GaleGenerators::new(maximal)?)
}

/// Facet count up to which a non-twin attachment is verified exactly.
const TREE_EXACT_CHECK: usize = 14;
const TREE_ATTEMPTS: usize = 8;

/// Simplicial tree grown by leaf attachment. Each new facet copies an
/// existing facet, drops one vertex and adds a fresh vertex. Dropping a
/// vertex that no other facet uses (a twin attachment) always preserves
/// treeness; other drops are kept only when an exact check confirms the
/// result is still a tree.
pub fn random_tree(n_facets: usize, k: usize, seed: Seed) -> Result<KFamily> {
    if n_facets == 0 || k < 2 {
        return Err(Error::Range(format!(
            "need at least one facet and k >= 2, got {n_facets} facets, k = {k}"
        )));
    }
    let mut rng = seed.rng();
    let mut facets: Vec<Vec<u32>> = vec![(1..=k as u32).collect()];
    let mut masks: Vec<u128> = vec![mask_of(&facets[0])];
    let mut next = k as u32 + 1;
    while facets.len() < n_facets {
        let is_free = |facets: &[Vec<u32>], g: usize, v: u32| {
            facets
                .iter()
                .enumerate()
                .all(|(i, f)| i == g || !f.contains(&v))
        };
        let mut chosen = None;
        for _ in 0..TREE_ATTEMPTS {
            let g = rng.gen_range(0..facets.len());
            let v = facets[g][rng.gen_range(0..k)];
            let cand = attach(&facets[g], v, next);
            if is_free(&facets, g, v) {
                chosen = Some(cand);
                break;
            }
            if facets.len() < TREE_EXACT_CHECK && next <= 128 {
                masks.push(mask_of(&cand));
                let ok = still_tree(&masks);
                masks.pop();
                if ok {
                    chosen = Some(cand);
                    break;
                }
            }
        }
        let cand = chosen.unwrap_or_else(|| {
            // the newest facet's largest vertex is never shared
            let last = facets.last().unwrap();
            attach(last, *last.last().unwrap(), next)
        });
        masks.push(mask_of(&cand));
        facets.push(cand);
        next += 1;
    }
    let n = next - 1;
    KFamily::with_facets(n, k, facets.into_iter().map(Facet::from_sorted).collect())
}

fn attach(g: &[u32], drop: u32, fresh: u32) -> Vec<u32> {
    let mut f: Vec<u32> = g.iter().copied().filter(|&v| v != drop).collect();
    f.push(fresh);
    f
}

fn mask_of(f: &[u32]) -> u128 {
    f.iter()
        .filter(|&&v| v <= 128)
        .fold(0u128, |m, &v| m | 1 << (v - 1))
}

/// Every subfamily containing the newest facet has a leaf (older subsets
/// were checked when they were built).
fn still_tree(masks: &[u128]) -> bool {
    let newest = masks.len() - 1;
    let rest = (1u32 << newest) - 1;
    let mut sub = rest;
    loop {
        let with_new = sub | 1 << newest;
        if with_new.count_ones() >= 3 && !subfamily_has_leaf(masks, with_new) {
            return false;
        }
        if sub == 0 {
            return true;
        }
        sub = (sub - 1) & rest;
    }
}

/// The cycle graph `C_len` coned `k - 2` times; its ridge graph is the
/// `len`-cycle.
pub fn cycle_family(len: usize, k: usize) -> Result<KFamily> {
    if len < 3 || k < 2 {
        return Err(Error::Range(format!(
            "need len >= 3 and k >= 2, got {len}, {k}"
        )));
    }
    let n = len as u32;
    let edges = (1..=n).map(|i| {
        let j = i % n + 1;
        vec![i.min(j), i.max(j)]
    });
    let mut s = KFamily::from_facets(n, edges)?;
    for _ in 2..k {
        s = cone(&s);
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_shifted;
    use crate::structure::{is_simplicial_tree, ridge_graph};

    #[test]
    fn complete_and_star() {
        assert_eq!(complete_family(4, 3).unwrap().facet_count(), 4);
        assert_eq!(complete_family(5, 2).unwrap().facet_count(), 10);
        assert!(complete_family(2, 3).is_err());
        let d = complete_family(6, 3).unwrap().degree_sequence();
        assert!(d.as_slice().iter().all(|&x| x == 10));
        let star = star_family(5, 3).unwrap();
        assert_eq!(star.to_string(), "5 3\n1 2 3\n1 2 4\n1 2 5\n");
        assert_eq!(star_family(4, 2).unwrap().facet_count(), 3);
        assert_eq!(simplex_family(3).unwrap().to_string(), "3 3\n1 2 3\n");
    }

    #[test]
    fn threshold_graphs() {
        let seq: ThresholdSeq = "ciic".parse().unwrap();
        assert_eq!(seq.cone_count(), 2);
        let g = threshold_graph(&seq).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.facet_count(), 5);
        assert_eq!(g.conjugate_partition().0, vec![5, 3, 1, 1, 0]);
        let k5 = threshold_graph(&"cccc".parse().unwrap()).unwrap();
        assert_eq!(k5, complete_family(5, 2).unwrap());
        let star = threshold_graph(&"iiic".parse().unwrap()).unwrap();
        assert_eq!(star.degree_sequence().0, vec![1, 1, 1, 1, 4]);
        assert_eq!(
            threshold_graph(&"iii".parse().unwrap()),
            Err(Error::EmptyGraph)
        );
        assert!("cx".parse::<ThresholdSeq>().is_err());
        assert_eq!(seq.to_string(), "ciic");
    }

    #[test]
    fn threshold_recognition() {
        for text in ["ciic", "c", "iiic", "cicicc", "ccic"] {
            let seq: ThresholdSeq = text.parse().unwrap();
            let g = threshold_graph(&seq).unwrap();
            let back = threshold_sequence_of(&g).unwrap();
            assert_eq!(back.cone_count(), seq.cone_count(), "{text}");
            assert_eq!(
                threshold_graph(&back).unwrap().facet_count(),
                g.facet_count()
            );
        }
        let p4 = KFamily::from_facets(4, [vec![1, 2], vec![2, 3], vec![3, 4]]).unwrap();
        assert_eq!(threshold_sequence_of(&p4), None);
    }

    #[test]
    fn gale_ideals() {
        let all = shifted_from_generators(5, &"3,4,5".parse().unwrap()).unwrap();
        assert_eq!(all, complete_family(5, 3).unwrap());
        let star = shifted_from_generators(5, &"1,2,5".parse().unwrap()).unwrap();
        assert_eq!(star, star_family(5, 3).unwrap());
        let simplex = shifted_from_generators(3, &"1,2,3".parse().unwrap()).unwrap();
        assert_eq!(simplex, simplex_family(3).unwrap());
        let two = shifted_from_generators(6, &"1,2,6;1,3,4".parse().unwrap()).unwrap();
        let id: Vec<u32> = (1..=6).collect();
        assert!(is_shifted(&two, Some(&id)).unwrap());
        assert!(shifted_from_generators(4, &"1,2,5".parse().unwrap()).is_err());
        assert!("1,2;1,2,3".parse::<GaleGenerators>().is_err());
    }

    #[test]
    fn random_shifted_is_shifted_and_reproducible() {
        for seed in 0..20 {
            let s = random_shifted(7, 3, Seed(seed)).unwrap();
            let id: Vec<u32> = (1..=7).collect();
            assert!(is_shifted(&s, Some(&id)).unwrap());
            assert_eq!(s, random_shifted(7, 3, Seed(seed)).unwrap());
        }
    }

    #[test]
    fn random_trees_are_trees() {
        assert_eq!(
            random_tree(1, 3, Seed(9)).unwrap(),
            simplex_family(3).unwrap()
        );
        for seed in 0..30 {
            let k = 2 + (seed as usize % 3);
            let t = random_tree(1 + seed as usize % 12, k, Seed(seed)).unwrap();
            assert!(is_simplicial_tree(&t).unwrap(), "seed {seed}: {t}");
            assert_eq!(
                t,
                random_tree(1 + seed as usize % 12, k, Seed(seed)).unwrap()
            );
        }
        // large trees rely on twin attachments only
        let big = random_tree(60, 4, Seed(1)).unwrap();
        assert_eq!(big.facet_count(), 60);
    }

    #[test]
    fn cycles() {
        let tri = cycle_family(3, 2).unwrap();
        assert_eq!(tri, complete_family(3, 2).unwrap());
        for len in 3..=8 {
            for k in 2..=4 {
                let c = cycle_family(len, k).unwrap();
                let g = ridge_graph(&c);
                assert_eq!(c.facet_count(), len);
                assert!(g.is_connected());
                assert!((0..len).all(|i| g.degree(i) == 2), "len {len} k {k}");
            }
        }
        assert!(cycle_family(2, 3).is_err());
    }

    #[test]
    fn four_cycle_cone_spectrum() {
        // C4 has Laplacian spectrum 2 - 2cos(2 pi j / 4) = (4, 2, 2, 0); each
        // cone over its four edges adds one to all four facet-side values
        let top = |len, k| {
            crate::spectra::spectrum(&cycle_family(len, k).unwrap())
                .unwrap()
                .values
        };
        let c4 = top(4, 2);
        for (got, want) in c4.iter().zip([4.0, 2.0, 2.0, 0.0]) {
            assert!((got - want).abs() < 1e-8);
        }
        let c43 = top(4, 3);
        for (got, want) in c43.iter().zip([5.0, 3.0, 3.0, 1.0, 0.0]) {
            assert!((got - want).abs() < 1e-8, "{c43:?}");
        }
        assert!(c43[4..].iter().all(|&x| x == 0.0));
    }
}
