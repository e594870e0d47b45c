//! The pure k-family data model and its counting statistics.
//!
//! A [`KFamily`] stores only its facets. Every facet has exactly `k`
//! vertices drawn from the universe `[1..=n]`; lower faces are implied by
//! closure and derived on demand. Dimension is `k - 1`, so graphs are
//! 2-families.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combin::binomial;
use crate::error::{Error, Result};

/// A facet: strictly increasing vertex labels in `[1..=n]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Facet(Vec<u32>);

impl Facet {
    /// Builds a facet from an arbitrary-order vertex list, rejecting repeats.
    pub fn new(mut vertices: Vec<u32>) -> Result<Self> {
        vertices.sort_unstable();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Range(format!("vertex {} repeated in a facet", w[0])));
        }
        Ok(Facet(vertices))
    }

    /// Caller guarantees the slice is strictly increasing.
    pub(crate) fn from_sorted(vertices: Vec<u32>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Facet(vertices)
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Number of shared vertices with `other`.
    pub fn intersection_size(&self, other: &Facet) -> usize {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j, mut c) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    c += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        c
    }
}

impl fmt::Display for Facet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// A pure family of `k`-element facets on the vertex universe `[1..=n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KFamily {
    n: u32,
    k: usize,
    facets: Vec<Facet>,
}

impl KFamily {
    /// Builds a family from a nonempty list of vertex sets; `k` is inferred.
    pub fn from_facets<I, F>(n: u32, facet_list: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: Into<Vec<u32>>,
    {
        let facets = facet_list
            .into_iter()
            .map(|f| Facet::new(f.into()))
            .collect::<Result<Vec<_>>>()?;
        let k = match facets.first() {
            Some(f) => f.len(),
            None => return Err(Error::Range("facet list is empty".into())),
        };
        Self::with_facets(n, k, facets)
    }

    /// Builds a family with an explicit `k`; an empty facet list is allowed.
    pub fn with_facets(n: u32, k: usize, mut facets: Vec<Facet>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Range("vertex universe must be nonempty".into()));
        }
        if k == 0 || k > n as usize {
            return Err(Error::Range(format!("facet size {k} not in [1, {n}]")));
        }
        for f in &facets {
            if f.len() != k {
                return Err(Error::Purity {
                    expected: k,
                    found: f.len(),
                });
            }
            if let Some(&v) = f.0.iter().find(|&&v| v == 0 || v > n) {
                return Err(Error::Range(format!("vertex {v} outside [1, {n}]")));
            }
        }
        facets.sort_unstable();
        facets.dedup();
        Ok(KFamily { n, k, facets })
    }

    /// The family with no facets.
    pub fn empty(n: u32, k: usize) -> Result<Self> {
        Self::with_facets(n, k, Vec::new())
    }

    /// Internal constructor for facets already validated, sorted and unique.
    pub(crate) fn from_parts(n: u32, k: usize, facets: Vec<Facet>) -> Self {
        debug_assert!(facets.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(facets.iter().all(|f| f.len() == k));
        KFamily { n, k, facets }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Dimension of the complex, `k - 1`.
    pub fn dimension(&self) -> isize {
        self.k as isize - 1
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// `f_{k-1}`.
    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn contains_facet(&self, f: &Facet) -> bool {
        self.facets.binary_search(f).is_ok()
    }

    /// Vertices that lie in at least one facet, ascending.
    pub fn support(&self) -> Vec<u32> {
        let mut seen = vec![false; self.n as usize + 1];
        for f in &self.facets {
            for &v in f.vertices() {
                seen[v as usize] = true;
            }
        }
        (1..=self.n).filter(|&v| seen[v as usize]).collect()
    }

    /// Same facets on a larger universe.
    pub fn widen(&self, n: u32) -> Result<Self> {
        if n < self.n {
            return Err(Error::Range(format!(
                "cannot shrink universe {} to {n}",
                self.n
            )));
        }
        Ok(KFamily {
            n,
            k: self.k,
            facets: self.facets.clone(),
        })
    }

    /// Applies `label(v)` to every vertex; `label` must be a bijection of
    /// `[1..=n]`.
    pub fn relabel(&self, label: impl Fn(u32) -> u32) -> Self {
        let mut facets: Vec<Facet> = self
            .facets
            .iter()
            .map(|f| {
                let mut vs: Vec<u32> = f.vertices().iter().map(|&v| label(v)).collect();
                vs.sort_unstable();
                Facet(vs)
            })
            .collect();
        facets.sort_unstable();
        KFamily::from_parts(self.n, self.k, facets)
    }

    /// The face counts `(f_{-1}, f_0, ..., f_{k-1})`.
    pub fn f_vector(&self) -> FVector {
        let mut entries = vec![1u64];
        let mut faces: Vec<HashSet<Vec<u32>>> = vec![HashSet::new(); self.k];
        for f in &self.facets {
            let vs = f.vertices();
            for mask in 1u32..(1 << self.k) {
                let sub: Vec<u32> = (0..self.k)
                    .filter(|&i| mask & (1 << i) != 0)
                    .map(|i| vs[i])
                    .collect();
                faces[sub.len() - 1].insert(sub);
            }
        }
        entries.extend(faces.iter().map(|s| s.len() as u64));
        FVector(entries)
    }

    /// Per-vertex facet counts, index `i` holding vertex `i + 1`.
    pub fn degree_sequence(&self) -> DegreeSequence {
        let mut d = vec![0usize; self.n as usize];
        for f in &self.facets {
            for &v in f.vertices() {
                d[v as usize - 1] += 1;
            }
        }
        DegreeSequence(d)
    }

    /// `d^T_i` = number of vertices of degree at least `i`, for
    /// `i = 1..=C(n-1, k-1) + 1`.
    pub fn conjugate_partition(&self) -> ConjugatePartition {
        let len = binomial(u64::from(self.n) - 1, self.k as u64 - 1) as usize + 1;
        let degrees = self.degree_sequence();
        let mut counts = vec![0usize; len + 1];
        for &d in degrees.as_slice() {
            counts[d.min(len)] += 1;
        }
        // suffix sums: entry i = #{v : deg v >= i}
        let mut out = vec![0usize; len];
        let mut acc = 0;
        for i in (1..=len).rev() {
            acc += counts[i];
            out[i - 1] = acc;
        }
        ConjugatePartition(out)
    }
}

impl fmt::Display for KFamily {
    /// Facet file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n, self.k)?;
        for facet in &self.facets {
            writeln!(f, "{facet}")?;
        }
        Ok(())
    }
}

/// `(f_{-1}, f_0, ..., f_{k-1})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FVector(pub Vec<u64>);

impl FVector {
    /// `f_j` for `j >= -1`; zero beyond the top dimension.
    pub fn get(&self, j: isize) -> u64 {
        usize::try_from(j + 1)
            .ok()
            .and_then(|i| self.0.get(i).copied())
            .unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegreeSequence(pub Vec<usize>);

impl DegreeSequence {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Degree of vertex `v` (1-based).
    pub fn of(&self, v: u32) -> usize {
        self.0[v as usize - 1]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConjugatePartition(pub Vec<usize>);

impl ConjugatePartition {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Sum of the first `t` entries; entries past the stored length are zero.
    pub fn partial_sum(&self, t: usize) -> usize {
        self.0.iter().take(t).sum()
    }
}
