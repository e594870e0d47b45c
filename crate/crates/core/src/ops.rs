//! Complex-building operations: complement, disjoint union, join and cone.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::combin::k_subsets;
use crate::error::{Error, Result};
use crate::family::{Facet, KFamily};

/// All `k`-subsets of `[1..=n]` that are not facets of `s`.
pub fn complement(s: &KFamily) -> KFamily {
    let facets = k_subsets(s.n(), s.k())
        .into_iter()
        .map(Facet::from_sorted)
        .filter(|f| !s.contains_facet(f))
        .collect();
    KFamily::from_parts(s.n(), s.k(), facets)
}

/// [`complement`], failing with [`Error::CompleteComplement`] when the result
/// would be empty.
pub fn complement_nonempty(s: &KFamily) -> Result<KFamily> {
    let c = complement(s);
    if c.is_empty() {
        return Err(Error::CompleteComplement);
    }
    Ok(c)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnionMode {
    /// Second family's vertices are shifted past the first universe.
    #[default]
    VertexDisjoint,
    /// Common universe; the facet sets must not meet.
    FacetDisjoint,
}

pub fn disjoint_union(a: &KFamily, b: &KFamily, mode: UnionMode) -> Result<KFamily> {
    if a.k() != b.k() {
        return Err(Error::KMismatch(a.k(), b.k()));
    }
    let (n, shift) = match mode {
        UnionMode::VertexDisjoint => (a.n() + b.n(), a.n()),
        UnionMode::FacetDisjoint => (a.n().max(b.n()), 0),
    };
    let mut facets: BTreeSet<Facet> = a.facets().iter().cloned().collect();
    for f in b.facets() {
        let moved = Facet::from_sorted(f.vertices().iter().map(|v| v + shift).collect());
        if !facets.insert(moved.clone()) {
            return Err(Error::Overlap(moved.vertices().to_vec()));
        }
    }
    Ok(KFamily::from_parts(n, a.k(), facets.into_iter().collect()))
}

/// Facets `F1 ∪ F2'` where `F2'` is `F2` shifted past `a`'s universe.
pub fn simplicial_join(a: &KFamily, b: &KFamily) -> KFamily {
    let shift = a.n();
    let mut facets = Vec::with_capacity(a.facet_count() * b.facet_count());
    for f in a.facets() {
        for g in b.facets() {
            let mut vs = f.vertices().to_vec();
            vs.extend(g.vertices().iter().map(|v| v + shift));
            facets.push(Facet::from_sorted(vs));
        }
    }
    facets.sort_unstable();
    KFamily::from_parts(a.n() + b.n(), a.k() + b.k(), facets)
}

/// Join with a single new vertex `n + 1`.
pub fn cone(s: &KFamily) -> KFamily {
    let apex = KFamily::from_parts(1, 1, vec![Facet::from_sorted(vec![1])]);
    simplicial_join(s, &apex)
}
