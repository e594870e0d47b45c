//! Exhaustive enumeration of k-families up to isomorphism, and scans of a
//! checker over every enumerated family.
//!
//! The `C(n, k)` candidate facets are indexed in lex order and a family is a
//! bit mask with facet `r` at bit `N - 1 - r`. A mask is kept when no vertex
//! permutation maps it to a numerically larger mask; that maximum is the
//! lexicographically least facet list, so the survivors are exactly the
//! canonical forms.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::checkers::{run_checker, CheckerId, Relation, Severity};
use crate::combin::{for_each_permutation, k_subsets};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::family::{Facet, KFamily};

/// Largest number of candidate facets `C(n, k)`.
pub const SUBSET_GUARD: usize = 24;

/// Largest universe; permutation tables grow as `n!`.
pub const ENUM_VERTEX_GUARD: u32 = 7;

/// Masks handled per work item.
const CHUNK: u32 = 1 << 12;

/// Families reported per `t` in [`ScanReport::tightness_leaders`].
pub const LEADERS_PER_T: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumSpec {
    pub n: u32,
    pub k: usize,
    /// Keep only ridge-connected families.
    pub connected_only: bool,
    /// Keep only families whose facets cover every vertex.
    pub spanning_only: bool,
    pub max_facets: Option<usize>,
}

impl EnumSpec {
    pub fn new(n: u32, k: usize) -> Self {
        EnumSpec {
            n,
            k,
            connected_only: false,
            spanning_only: false,
            max_facets: None,
        }
    }

    pub fn connected(mut self) -> Self {
        self.connected_only = true;
        self
    }

    pub fn spanning(mut self) -> Self {
        self.spanning_only = true;
        self
    }

    pub fn max_facets(mut self, cap: usize) -> Self {
        self.max_facets = Some(cap);
        self
    }

    fn validate(&self) -> Result<()> {
        if self.k == 0 || self.k > self.n as usize {
            return Err(Error::Range(format!(
                "need 1 <= k <= n, got n = {}, k = {}",
                self.n, self.k
            )));
        }
        if self.n > ENUM_VERTEX_GUARD {
            return Err(Error::size(
                "enumeration universe",
                self.n as usize,
                ENUM_VERTEX_GUARD as usize,
            ));
        }
        let cands = crate::combin::binomial(u64::from(self.n), self.k as u64) as usize;
        if cands > SUBSET_GUARD {
            return Err(Error::size("candidate facets", cands, SUBSET_GUARD));
        }
        Ok(())
    }
}

/// Precomputed facet tables for one `(n, k)`.
struct Space {
    n: u32,
    k: usize,
    facets: Vec<Vec<u32>>,
    /// Per permutation, image of each byte of a mask.
    tables: Vec<[[u32; 256]; 3]>,
    ridge: Vec<u32>,
    vertex_masks: Vec<u32>,
}

impl Space {
    fn new(n: u32, k: usize) -> Self {
        let facets = k_subsets(n, k);
        let total = facets.len();
        let bit = |r: usize| 1u32 << (total - 1 - r);
        let index = |f: &[u32]| facets.binary_search_by(|g| g.as_slice().cmp(f)).unwrap();
        let mut tables = Vec::new();
        for_each_permutation(n as usize, |perm| {
            let image: Vec<u32> = facets
                .iter()
                .map(|f| {
                    let mut g: Vec<u32> =
                        f.iter().map(|&v| perm[v as usize - 1] as u32 + 1).collect();
                    g.sort_unstable();
                    bit(index(&g))
                })
                .collect();
            let mut t = [[0u32; 256]; 3];
            for (chunk, table) in t.iter_mut().enumerate() {
                for (byte, slot) in table.iter_mut().enumerate() {
                    *slot = (0..8)
                        .filter(|b| byte & (1 << b) != 0)
                        .map(|b| chunk * 8 + b)
                        .filter(|&pos| pos < total)
                        .fold(0, |acc, pos| acc | image[total - 1 - pos]);
                }
            }
            tables.push(t);
            true
        });
        let ridge = (0..total)
            .map(|r| {
                (0..total)
                    .filter(|&s| s != r && shared(&facets[r], &facets[s]) + 1 == k)
                    .fold(0, |acc, s| acc | bit(s))
            })
            .collect();
        let vertex_masks = facets
            .iter()
            .map(|f| f.iter().fold(0, |acc, &v| acc | 1 << (v - 1)))
            .collect();
        Space {
            n,
            k,
            facets,
            tables,
            ridge,
            vertex_masks,
        }
    }

    fn total(&self) -> usize {
        self.facets.len()
    }

    fn image(&self, t: &[[u32; 256]; 3], mask: u32) -> u32 {
        t[0][(mask & 0xff) as usize]
            | t[1][(mask >> 8 & 0xff) as usize]
            | t[2][(mask >> 16 & 0xff) as usize]
    }

    fn is_canonical(&self, mask: u32) -> bool {
        self.tables.iter().all(|t| self.image(t, mask) <= mask)
    }

    fn members(&self, mask: u32) -> impl Iterator<Item = usize> + '_ {
        let total = self.total();
        (0..total).filter(move |&r| mask & (1 << (total - 1 - r)) != 0)
    }

    fn is_connected(&self, mask: u32) -> bool {
        let start = 1u32 << (31 - mask.leading_zeros());
        let mut seen = start;
        let mut frontier = start;
        while frontier != 0 {
            let mut next = 0;
            for r in self.members(frontier) {
                next |= self.ridge[r];
            }
            frontier = next & mask & !seen;
            seen |= frontier;
        }
        seen == mask
    }

    fn is_spanning(&self, mask: u32) -> bool {
        let cover = self
            .members(mask)
            .fold(0u32, |acc, r| acc | self.vertex_masks[r]);
        cover.count_ones() == self.n
    }

    fn family(&self, mask: u32) -> KFamily {
        let facets = self
            .members(mask)
            .map(|r| Facet::from_sorted(self.facets[r].clone()))
            .collect();
        KFamily::from_parts(self.n, self.k, facets)
    }
}

fn shared(a: &[u32], b: &[u32]) -> usize {
    a.iter().filter(|v| b.contains(v)).count()
}

fn scan_chunk(space: &Space, spec: &EnumSpec, lo: u32, hi: u32) -> Vec<u32> {
    (lo..hi)
        .filter(|&m| {
            spec.max_facets
                .is_none_or(|cap| m.count_ones() as usize <= cap)
        })
        .filter(|&m| !spec.connected_only || space.is_connected(m))
        .filter(|&m| !spec.spanning_only || space.is_spanning(m))
        .filter(|&m| space.is_canonical(m))
        .collect()
}

/// One canonical representative per isomorphism class of nonempty families,
/// ordered by facet count and then by facet list.
pub fn enumerate_families(spec: &EnumSpec, exec: Execution) -> Result<Vec<KFamily>> {
    spec.validate()?;
    let space = Space::new(spec.n, spec.k);
    let end = 1u32 << space.total();
    let ranges: Vec<(u32, u32)> = (0..end.div_ceil(CHUNK))
        .map(|c| (c * CHUNK, ((c + 1) * CHUNK).min(end)))
        .map(|(lo, hi)| (lo.max(1), hi))
        .filter(|(lo, hi)| lo < hi)
        .collect();
    let mut masks: Vec<u32> = exec
        .map(ranges, |(lo, hi)| scan_chunk(&space, spec, lo, hi))
        .into_iter()
        .flatten()
        .collect();
    masks.sort_unstable_by_key(|&m| (m.count_ones(), std::cmp::Reverse(m)));
    Ok(masks.into_iter().map(|m| space.family(m)).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Canonical facet file.
    pub family: String,
    pub checker: CheckerId,
    pub t: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub severity: Severity,
    /// Set when the failure surfaced as an error rather than a report.
    pub message: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TightnessRecord {
    pub t: usize,
    pub slack: f64,
    pub family: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Skipped {
    pub family: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub spec: EnumSpec,
    pub checker: CheckerId,
    pub t_max: Option<usize>,
    pub families_scanned: usize,
    /// Families the checker ran on; the rest failed its precondition.
    pub families_checked: usize,
    pub counterexamples: Vec<Counterexample>,
    pub tightness_leaders: Vec<TightnessRecord>,
    pub skipped: Vec<Skipped>,
    pub verdict: bool,
    /// Wall-clock seconds; excluded from determinism comparisons.
    pub runtime_secs: f64,
}

impl ScanReport {
    pub fn has_theorem_violation(&self) -> bool {
        self.counterexamples
            .iter()
            .any(|c| c.severity == Severity::Theorem)
    }

    /// The report with `runtime_secs` zeroed.
    pub fn without_runtime(&self) -> Self {
        ScanReport {
            runtime_secs: 0.0,
            ..self.clone()
        }
    }
}

enum Outcome {
    Checked(crate::checkers::CheckSuite),
    Skipped(String),
    Violation(Counterexample),
}

fn check_one(id: CheckerId, s: &KFamily, t_max: Option<usize>) -> Result<Outcome> {
    let text = s.to_string();
    match run_checker(id, s, t_max) {
        Ok(suite) => Ok(Outcome::Checked(suite)),
        Err(e @ (Error::NotShifted | Error::NotATree)) => Ok(Outcome::Skipped(e.to_string())),
        Err(e @ Error::Size { .. }) if matches!(id, CheckerId::TreeBound) => {
            Ok(Outcome::Skipped(e.to_string()))
        }
        Err(Error::Range(msg)) => Ok(Outcome::Skipped(msg)),
        Err(Error::TheoremViolation { check, t, lhs, rhs }) => {
            Ok(Outcome::Violation(Counterexample {
                family: text,
                checker: id,
                t,
                lhs,
                rhs,
                severity: Severity::Theorem,
                message: Some(check),
            }))
        }
        Err(Error::Structure(msg)) => Ok(Outcome::Violation(Counterexample {
            family: text,
            checker: id,
            t: 0,
            lhs: f64::NAN,
            rhs: f64::NAN,
            severity: Severity::Theorem,
            message: Some(msg),
        })),
        Err(e) => Err(e),
    }
}

/// Runs `checker` on every family of `spec` for `t = 1..=t_max` (all `t`
/// when `None`). Every violation is collected; the scan does not stop at the
/// first.
pub fn scan(
    spec: &EnumSpec,
    checker: CheckerId,
    t_max: Option<usize>,
    exec: Execution,
) -> Result<ScanReport> {
    let start = Instant::now();
    let families = enumerate_families(spec, exec)?;
    let families_scanned = families.len();
    let outcomes = exec.map(families, |s| {
        check_one(checker, &s, t_max).map(|o| (s.to_string(), o))
    });
    let mut counterexamples = Vec::new();
    let mut skipped = Vec::new();
    let mut leaders: Vec<TightnessRecord> = Vec::new();
    let mut families_checked = 0;
    for outcome in outcomes {
        let (family, outcome) = outcome?;
        match outcome {
            Outcome::Skipped(reason) => skipped.push(Skipped { family, reason }),
            Outcome::Violation(c) => {
                families_checked += 1;
                counterexamples.push(c);
            }
            Outcome::Checked(suite) => {
                families_checked += 1;
                for r in &suite.reports {
                    if !r.holds && r.severity != Severity::Predicate {
                        counterexamples.push(Counterexample {
                            family: family.clone(),
                            checker,
                            t: r.t,
                            lhs: r.lhs,
                            rhs: r.rhs,
                            severity: r.severity,
                            message: None,
                        });
                    }
                    if r.relation == Relation::AtMost {
                        leaders.push(TightnessRecord {
                            t: r.t,
                            slack: r.slack,
                            family: family.clone(),
                        });
                    }
                }
            }
        }
    }
    Ok(ScanReport {
        spec: spec.clone(),
        checker,
        t_max,
        families_scanned,
        families_checked,
        verdict: counterexamples.is_empty(),
        counterexamples,
        tightness_leaders: top_leaders(leaders),
        skipped,
        runtime_secs: start.elapsed().as_secs_f64(),
    })
}

fn top_leaders(mut all: Vec<TightnessRecord>) -> Vec<TightnessRecord> {
    all.sort_by(|a, b| {
        a.t.cmp(&b.t)
            .then(a.slack.total_cmp(&b.slack))
            .then_with(|| a.family.cmp(&b.family))
    });
    let mut out: Vec<TightnessRecord> = Vec::new();
    for rec in all {
        let seen = out.iter().rev().take_while(|r| r.t == rec.t).count();
        if seen < LEADERS_PER_T {
            out.push(rec);
        }
    }
    out
}
