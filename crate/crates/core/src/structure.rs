//! Ridge-graph machinery: components, matching number, leaves, simplicial
//! trees, and the join decomposition of families with matching number one.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{Facet, KFamily};

/// Largest facet count for [`matching_number`].
pub const MATCHING_GUARD: usize = 40;

/// Largest facet count for [`is_simplicial_tree`].
pub const TREE_GUARD: usize = 20;

/// Facets are nodes; two facets are adjacent when they share `k - 1`
/// vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RidgeGraph {
    adjacency: Vec<Vec<usize>>,
}

impl RidgeGraph {
    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].binary_search(&j).is_ok()
    }

    /// Connected components as sorted node lists, ordered by smallest node.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.node_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adjacency[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// A graph with no nodes counts as disconnected.
    pub fn is_connected(&self) -> bool {
        self.node_count() > 0 && self.components().len() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edge_count() + 1 == self.node_count()
    }

    pub fn is_complete(&self) -> bool {
        let n = self.node_count();
        self.adjacency.iter().all(|a| a.len() + 1 == n)
    }

    /// Length of a shortest cycle, if any.
    pub fn girth(&self) -> Option<usize> {
        let n = self.node_count();
        let mut best: Option<usize> = None;
        for root in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adjacency[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }
}

pub fn ridge_graph(s: &KFamily) -> RidgeGraph {
    let facets = s.facets();
    let ridge = s.k() - 1;
    let mut adjacency = vec![Vec::new(); facets.len()];
    for i in 0..facets.len() {
        for j in i + 1..facets.len() {
            if facets[i].intersection_size(&facets[j]) == ridge {
                adjacency[i].push(j);
                adjacency[j].push(i);
            }
        }
    }
    for a in &mut adjacency {
        a.sort_unstable();
    }
    RidgeGraph { adjacency }
}

/// Facets grouped by ridge-graph component, each group kept on the full
/// universe `[1..=n]`.
pub fn ridge_components(s: &KFamily) -> Vec<KFamily> {
    ridge_graph(s)
        .components()
        .into_iter()
        .map(|nodes| {
            let facets = nodes.iter().map(|&i| s.facets()[i].clone()).collect();
            KFamily::from_parts(s.n(), s.k(), facets)
        })
        .collect()
}

pub fn is_ridge_connected(s: &KFamily) -> bool {
    ridge_graph(s).is_connected()
}

/// Size of a maximum independent set of the ridge graph, computed exactly.
pub fn matching_number(s: &KFamily) -> Result<usize> {
    let f = s.facet_count();
    if f > MATCHING_GUARD {
        return Err(Error::size("facet count", f, MATCHING_GUARD));
    }
    let g = ridge_graph(s);
    let nbr: Vec<u64> = (0..f)
        .map(|i| g.neighbors(i).iter().fold(0u64, |m, &j| m | 1 << j))
        .collect();
    let all = if f == 64 { u64::MAX } else { (1u64 << f) - 1 };
    Ok(max_independent_set(&nbr, all))
}

/// Exact maximum independent set size over the node set `cand`, with
/// adjacency bitmasks `nbr`.
pub fn max_independent_set(nbr: &[u64], cand: u64) -> usize {
    let mut best = greedy_independent(nbr, cand);
    mis_branch(nbr, cand, 0, &mut best);
    best
}

fn greedy_independent(nbr: &[u64], mut cand: u64) -> usize {
    let mut size = 0;
    while cand != 0 {
        let v = bits(cand)
            .min_by_key(|&v| (nbr[v] & cand).count_ones())
            .unwrap();
        size += 1;
        cand &= !(nbr[v] | 1 << v);
    }
    size
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let b = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(b)
    })
}

fn mis_branch(nbr: &[u64], mut cand: u64, mut size: usize, best: &mut usize) {
    // nodes of degree <= 1 inside cand can always be taken
    loop {
        let Some(v) = bits(cand).find(|&v| (nbr[v] & cand).count_ones() <= 1) else {
            break;
        };
        size += 1;
        cand &= !(nbr[v] | 1 << v);
    }
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + cand.count_ones() as usize <= *best {
        return;
    }
    let v = bits(cand)
        .max_by_key(|&v| (nbr[v] & cand).count_ones())
        .unwrap();
    mis_branch(nbr, cand & !(nbr[v] | 1 << v), size + 1, best);
    mis_branch(nbr, cand & !(1 << v), size, best);
}

/// A facet is a leaf when it is the only facet, or when its intersection
/// with the vertices of all other facets lies inside one other facet.
pub fn is_leaf(s: &KFamily, f: &Facet) -> Result<bool> {
    if !s.contains_facet(f) {
        return Err(Error::NotAFacet(f.vertices().to_vec()));
    }
    let others: Vec<&Facet> = s.facets().iter().filter(|g| *g != f).collect();
    if others.is_empty() {
        return Ok(true);
    }
    let shared: Vec<u32> = f
        .vertices()
        .iter()
        .copied()
        .filter(|&v| others.iter().any(|g| g.contains(v)))
        .collect();
    Ok(others.iter().any(|g| shared.iter().all(|&v| g.contains(v))))
}

/// Ridge-connected, and every nonempty subfamily has a leaf.
pub fn is_simplicial_tree(s: &KFamily) -> Result<bool> {
    let f = s.facet_count();
    if f > TREE_GUARD {
        return Err(Error::size("facet count", f, TREE_GUARD));
    }
    if s.n() > 128 {
        return Err(Error::size("vertex universe", s.n() as usize, 128));
    }
    if !is_ridge_connected(s) {
        return Ok(false);
    }
    let masks: Vec<u128> = s
        .facets()
        .iter()
        .map(|g| g.vertices().iter().fold(0u128, |m, &v| m | 1 << (v - 1)))
        .collect();
    // subfamilies of one or two facets always have a leaf
    let full = (1u32 << f) - 1;
    Ok((0..=full)
        .filter(|sub| sub.count_ones() >= 3)
        .all(|sub| subfamily_has_leaf(&masks, sub)))
}

pub(crate) fn subfamily_has_leaf(masks: &[u128], sub: u32) -> bool {
    let members: Vec<usize> = (0..masks.len()).filter(|&i| sub & (1 << i) != 0).collect();
    members.iter().any(|&i| {
        let rest = members
            .iter()
            .filter(|&&j| j != i)
            .fold(0u128, |m, &j| m | masks[j]);
        let shared = masks[i] & rest;
        members.iter().any(|&j| j != i && shared & !masks[j] == 0)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RemainderKind {
    /// Pairwise distinct single vertices.
    OneFamily,
    /// All `k2`-subsets of a `(k2 + 1)`-set.
    Complete,
}

/// `S = simplex(core) ⋆ remainder`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JoinDecomposition {
    pub core: Vec<u32>,
    pub remainder_kind: RemainderKind,
    pub remainder_support: Vec<u32>,
    /// Facet size of the remainder family.
    pub k2: usize,
}

/// Join decomposition of a family whose ridge graph is complete; `None`
/// for empty families or matching number above one.
pub fn decompose_matching_one(s: &KFamily) -> Result<Option<JoinDecomposition>> {
    if s.is_empty() || !ridge_graph(s).is_complete() {
        return Ok(None);
    }
    let facets = s.facets();
    if let [only] = facets {
        let vs = only.vertices();
        let (last, core) = vs.split_last().unwrap();
        return Ok(Some(JoinDecomposition {
            core: core.to_vec(),
            remainder_kind: RemainderKind::OneFamily,
            remainder_support: vec![*last],
            k2: 1,
        }));
    }
    let core: Vec<u32> = facets[0]
        .vertices()
        .iter()
        .copied()
        .filter(|&v| facets.iter().all(|f| f.contains(v)))
        .collect();
    let k2 = s.k() - core.len();
    let mut support: Vec<u32> = facets
        .iter()
        .flat_map(|f| f.vertices().iter().copied())
        .filter(|v| !core.contains(v))
        .collect();
    support.sort_unstable();
    support.dedup();
    let kind = if k2 == 1 {
        RemainderKind::OneFamily
    } else if support.len() == k2 + 1 && facets.len() == k2 + 1 {
        RemainderKind::Complete
    } else {
        return Err(Error::Structure(format!(
            "complete ridge graph but remainder of size {k2} over {} vertices with {} facets \
             is neither a vertex set nor a complete family",
            support.len(),
            facets.len()
        )));
    };
    Ok(Some(JoinDecomposition {
        core,
        remainder_kind: kind,
        remainder_support: support,
        k2,
    }))
}
