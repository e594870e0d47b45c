//! Evaluates each inequality and equality claim on a family.
//!
//! Claims split into three severities. Violating a proved statement
//! (majorization for graphs, threshold and shifted equalities, the tree
//! bound, the cone-vertex equality, the matching-one structure) is raised
//! as [`Error::TheoremViolation`] or [`Error::Structure`]: it means the
//! implementation is wrong. Violating an open conjecture (generalized
//! Brouwer, majorization for `k > 2`, `λ1 <= n`) is an ordinary report with
//! `holds == false`, a finding. Predicates such as the forbidden-subfamily
//! test are reported without judgement.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::canon::{canonical_form, is_shifted, PERMUTATION_GUARD};
use crate::combin::binomial;
use crate::error::{Error, Result};
use crate::family::KFamily;
use crate::generators::{threshold_graph, ThresholdSeq};
use crate::spectra::{spectrum, Spectrum};
use crate::structure::{
    decompose_matching_one, is_simplicial_tree, matching_number, ridge_graph, JoinDecomposition,
};

/// Absolute tolerance for every comparison.
pub const TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckerId {
    Brouwer,
    Majorization,
    Dr,
    TreeBound,
    ThresholdCone,
    Forbidden,
    SpectralRadius,
    HigherSums,
    JoinLemma,
    TreeRemark,
    Structure,
}

impl CheckerId {
    pub const ALL: [CheckerId; 11] = [
        CheckerId::Brouwer,
        CheckerId::Majorization,
        CheckerId::Dr,
        CheckerId::TreeBound,
        CheckerId::ThresholdCone,
        CheckerId::Forbidden,
        CheckerId::SpectralRadius,
        CheckerId::HigherSums,
        CheckerId::JoinLemma,
        CheckerId::TreeRemark,
        CheckerId::Structure,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckerId::Brouwer => "brouwer",
            CheckerId::Majorization => "majorization",
            CheckerId::Dr => "dr",
            CheckerId::TreeBound => "tree-bound",
            CheckerId::ThresholdCone => "threshold-cone",
            CheckerId::Forbidden => "forbidden",
            CheckerId::SpectralRadius => "spectral-radius",
            CheckerId::HigherSums => "higher-sums",
            CheckerId::JoinLemma => "join-lemma",
            CheckerId::TreeRemark => "tree-remark",
            CheckerId::Structure => "structure",
        }
    }
}

impl fmt::Display for CheckerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckerId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckerId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Range(format!("unknown checker {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// `lhs <= rhs + TOL`.
    AtMost,
    /// `|lhs - rhs| <= TOL`.
    Equal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Severity {
    Theorem,
    Conjecture,
    Predicate,
}

/// One instance of one claim.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    /// Partial-sum index, 0 when not applicable.
    pub t: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub relation: Relation,
    pub severity: Severity,
    pub holds: bool,
    /// `rhs - lhs`.
    pub slack: f64,
    pub tight: bool,
    /// `t` ran past the spectrum length, so `lhs` is the full trace.
    pub saturated: bool,
}

impl CheckReport {
    pub fn new(
        name: impl Into<String>,
        t: usize,
        lhs: f64,
        rhs: f64,
        relation: Relation,
        severity: Severity,
    ) -> Self {
        let slack = rhs - lhs;
        let tight = slack.abs() <= TOL;
        let holds = match relation {
            Relation::AtMost => lhs <= rhs + TOL,
            Relation::Equal => tight,
        };
        CheckReport {
            name: name.into(),
            t,
            lhs,
            rhs,
            relation,
            severity,
            holds,
            slack,
            tight,
            saturated: false,
        }
    }

    fn saturated(mut self, yes: bool) -> Self {
        self.saturated = yes;
        self
    }

    fn into_theorem_result(self) -> Result<Self> {
        if self.holds {
            Ok(self)
        } else {
            Err(Error::TheoremViolation {
                check: self.name,
                t: self.t,
                lhs: self.lhs,
                rhs: self.rhs,
            })
        }
    }
}

/// Reports for one family, with the family's digest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckSuite {
    pub digest: String,
    pub reports: Vec<CheckReport>,
    pub verdict: bool,
}

impl CheckSuite {
    pub fn new(s: &KFamily, reports: Vec<CheckReport>) -> Self {
        let verdict = reports.iter().all(|r| r.holds);
        CheckSuite {
            digest: family_digest(s),
            reports,
            verdict,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckReport> {
        self.reports.iter().filter(|r| !r.holds)
    }
}

/// First 16 hex digits of the SHA-256 of the canonical facet file (or of
/// the family as given, beyond the canonicalization guard).
pub fn family_digest(s: &KFamily) -> String {
    let text = if s.n() <= PERMUTATION_GUARD {
        canonical_form(s).map_or_else(|_| s.to_string(), |c| c.to_string())
    } else {
        s.to_string()
    };
    let digest = Sha256::digest(text.as_bytes());
    hex::encode(&digest[..8])
}

/// `(k - 1) f_{k-1} + C(t + k - 1, k)`.
pub fn brouwer_bound(k: usize, facets: usize, t: usize) -> f64 {
    ((k - 1) * facets) as f64 + binomial((t + k - 1) as u64, k as u64) as f64
}

/// `(k - 1) f_{k-1} + k t - k + 1`.
pub fn tree_bound(k: usize, facets: usize, t: usize) -> f64 {
    ((k - 1) * facets + k * t + 1) as f64 - k as f64
}

fn require_t(t: usize, min: usize) -> Result<()> {
    if t < min {
        return Err(Error::Range(format!("t = {t} must be at least {min}")));
    }
    Ok(())
}

pub(crate) fn brouwer_report(s: &KFamily, sp: &Spectrum, t: usize) -> CheckReport {
    CheckReport::new(
        CheckerId::Brouwer.as_str(),
        t,
        sp.partial_sum(t),
        brouwer_bound(s.k(), s.facet_count(), t),
        Relation::AtMost,
        Severity::Conjecture,
    )
    .saturated(t > sp.len())
}

/// `Σ_{i<=t} λ_i <= (k - 1) f_{k-1} + C(t + k - 1, k)`.
pub fn check_brouwer(s: &KFamily, t: usize) -> Result<CheckReport> {
    require_t(t, 1)?;
    Ok(brouwer_report(s, &spectrum(s)?, t))
}

/// Brouwer reports for every `t` up to the spectrum length.
pub fn check_brouwer_all(s: &KFamily) -> Result<CheckSuite> {
    let sp = spectrum(s)?;
    let reports = (1..=sp.len()).map(|t| brouwer_report(s, &sp, t)).collect();
    Ok(CheckSuite::new(s, reports))
}

pub(crate) fn majorization_reports(
    s: &KFamily,
    sp: &Spectrum,
    ts: impl Iterator<Item = usize>,
) -> Result<Vec<CheckReport>> {
    let dt = s.conjugate_partition();
    let severity = if s.k() <= 2 {
        Severity::Theorem
    } else {
        Severity::Conjecture
    };
    let mut out = Vec::new();
    for t in ts {
        let r = CheckReport::new(
            CheckerId::Majorization.as_str(),
            t,
            sp.partial_sum(t),
            dt.partial_sum(t) as f64,
            Relation::AtMost,
            severity,
        );
        out.push(if severity == Severity::Theorem {
            r.into_theorem_result()?
        } else {
            r
        });
    }
    Ok(out)
}

/// Spectrum majorized by the conjugate partition. Proved for graphs, open
/// for `k > 2`.
pub fn check_majorization(s: &KFamily) -> Result<CheckSuite> {
    let sp = spectrum(s)?;
    let reports = majorization_reports(s, &sp, 1..=sp.len())?;
    Ok(CheckSuite::new(s, reports))
}

pub(crate) fn dr_reports(
    s: &KFamily,
    sp: &Spectrum,
    ts: impl Iterator<Item = usize>,
) -> Result<Vec<CheckReport>> {
    let dt = s.conjugate_partition();
    let reports: Vec<CheckReport> = ts
        .map(|t| {
            CheckReport::new(
                CheckerId::Dr.as_str(),
                t,
                sp.partial_sum(t),
                dt.partial_sum(t) as f64,
                Relation::Equal,
                Severity::Theorem,
            )
        })
        .collect();
    if let Some(worst) = reports
        .iter()
        .filter(|r| !r.holds)
        .max_by(|a, b| a.slack.abs().total_cmp(&b.slack.abs()))
    {
        return Err(Error::TheoremViolation {
            check: worst.name.clone(),
            t: worst.t,
            lhs: worst.lhs,
            rhs: worst.rhs,
        });
    }
    Ok(reports)
}

/// Partial sums of spectrum and conjugate partition agree for shifted
/// families. Unless `assume_shifted`, a shifting labeling is searched first.
pub fn check_dr_equality(s: &KFamily, assume_shifted: bool) -> Result<CheckSuite> {
    if !assume_shifted && !is_shifted(s, None)? {
        return Err(Error::NotShifted);
    }
    let sp = spectrum(s)?;
    let reports = dr_reports(s, &sp, 1..=sp.len())?;
    Ok(CheckSuite::new(s, reports))
}

pub(crate) fn tree_report(s: &KFamily, sp: &Spectrum, t: usize) -> Result<CheckReport> {
    let (k, f) = (s.k(), s.facet_count());
    let rhs = tree_bound(k, f, t);
    let brouwer = brouwer_bound(k, f, t);
    if rhs > brouwer + TOL {
        return Err(Error::TheoremViolation {
            check: "tree-bound-vs-brouwer".into(),
            t,
            lhs: rhs,
            rhs: brouwer,
        });
    }
    CheckReport::new(
        CheckerId::TreeBound.as_str(),
        t,
        sp.partial_sum(t),
        rhs,
        Relation::AtMost,
        Severity::Theorem,
    )
    .saturated(t > sp.len())
    .into_theorem_result()
}

fn require_tree(s: &KFamily) -> Result<()> {
    if s.k() < 2 {
        return Err(Error::Range("the tree bound needs k >= 2".into()));
    }
    if !is_simplicial_tree(s)? {
        return Err(Error::NotATree);
    }
    Ok(())
}

/// `Σ_{i<=t} λ_i <= (k - 1) f_{k-1} + k t - k + 1` on simplicial trees with
/// `k >= 2`.
pub fn check_tree_bound(s: &KFamily, t: usize) -> Result<CheckReport> {
    require_t(t, 1)?;
    require_tree(s)?;
    tree_report(s, &spectrum(s)?, t)
}

pub fn check_tree_bound_all(s: &KFamily) -> Result<CheckSuite> {
    require_tree(s)?;
    let sp = spectrum(s)?;
    let reports = (1..=sp.len())
        .map(|t| tree_report(s, &sp, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(CheckSuite::new(s, reports))
}

/// For a threshold graph with `c` cone steps, `Σ_{i<=c} λ_i = e + C(c+1, 2)`.
pub fn check_threshold_cone_equality(seq: &ThresholdSeq) -> Result<CheckReport> {
    let c = seq.cone_count();
    if c == 0 {
        return Err(Error::Range("sequence has no cone step".into()));
    }
    let g = threshold_graph(seq)?;
    let sp = spectrum(&g)?;
    CheckReport::new(
        CheckerId::ThresholdCone.as_str(),
        c,
        sp.partial_sum(c),
        (g.facet_count() as u64 + binomial(c as u64 + 1, 2)) as f64,
        Relation::Equal,
        Severity::Theorem,
    )
    .into_theorem_result()
}

pub(crate) fn forbidden_report(s: &KFamily, sp: &Spectrum, t: usize) -> CheckReport {
    CheckReport::new(
        CheckerId::Forbidden.as_str(),
        t,
        sp.partial_sum(t),
        ((s.k() - 1) * s.facet_count()) as f64,
        Relation::AtMost,
        Severity::Predicate,
    )
    .saturated(t > sp.len())
}

/// `Σ_{i<=t} λ_i <= (k - 1) f_{k-1}`: a family satisfying this cannot sit
/// inside a minimum-cardinality counterexample at `t`.
pub fn check_forbidden_lemma(s: &KFamily, t: usize) -> Result<CheckReport> {
    require_t(t, 2)?;
    Ok(forbidden_report(s, &spectrum(s)?, t))
}

pub(crate) fn spectral_radius_report(s: &KFamily, sp: &Spectrum) -> CheckReport {
    CheckReport::new(
        CheckerId::SpectralRadius.as_str(),
        1,
        sp.largest(),
        f64::from(s.n()),
        Relation::AtMost,
        Severity::Conjecture,
    )
}

/// `λ_1 <= n`.
pub fn check_spectral_radius(s: &KFamily) -> Result<CheckReport> {
    Ok(spectral_radius_report(s, &spectrum(s)?))
}

pub(crate) fn higher_sums_reports(
    s: &KFamily,
    sp: &Spectrum,
    ts: impl Iterator<Item = usize>,
) -> Result<Vec<CheckReport>> {
    let m = matching_number(s)?;
    let mut out = Vec::new();
    for t in ts.filter(|&t| t < s.k() && m > t) {
        let mut r = brouwer_report(s, sp, t);
        r.name = CheckerId::HigherSums.as_str().into();
        r.severity = Severity::Theorem;
        out.push(r.into_theorem_result()?);
    }
    Ok(out)
}

/// Brouwer at every `t < k` with matching number above `t`.
pub fn check_higher_sums(s: &KFamily) -> Result<CheckSuite> {
    let sp = spectrum(s)?;
    let reports = higher_sums_reports(s, &sp, 1..s.k())?;
    Ok(CheckSuite::new(s, reports))
}

/// Outcome of the structural audit on one family.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureAudit {
    pub matching_number: usize,
    pub decomposition: Option<JoinDecomposition>,
    pub ridge_graph_is_tree: bool,
    pub is_simplicial_tree: Option<bool>,
    pub girth: Option<usize>,
}

/// A family with matching number one must be a join of a simplex with a
/// set of single vertices or with a complete family on `k2 + 1` vertices.
pub fn audit_join_lemma(s: &KFamily) -> Result<Option<JoinDecomposition>> {
    if matching_number(s)? != 1 {
        return Ok(None);
    }
    match decompose_matching_one(s)? {
        Some(d) => Ok(Some(d)),
        None => Err(Error::Structure(format!(
            "matching number 1 without a join decomposition:\n{s}"
        ))),
    }
}

/// A family whose ridge graph is a tree must be a simplicial tree. Returns
/// whether the premise applied.
pub fn audit_tree_remark(s: &KFamily) -> Result<bool> {
    if !ridge_graph(s).is_tree() {
        return Ok(false);
    }
    if !is_simplicial_tree(s)? {
        return Err(Error::Structure(format!(
            "ridge graph is a tree but the family is not a simplicial tree:\n{s}"
        )));
    }
    Ok(true)
}

/// Both structural audits; either failure is an [`Error::Structure`].
pub fn audit_structure(s: &KFamily) -> Result<StructureAudit> {
    let decomposition = audit_join_lemma(s)?;
    let ridge_tree = audit_tree_remark(s)?;
    Ok(StructureAudit {
        matching_number: matching_number(s)?,
        decomposition,
        ridge_graph_is_tree: ridge_tree,
        is_simplicial_tree: ridge_tree.then_some(true),
        girth: ridge_graph(s).girth(),
    })
}

/// Runs one family-level checker over `t = 1..=t_max` (all `t` up to the
/// spectrum length when `t_max` is `None`).
pub fn run_checker(id: CheckerId, s: &KFamily, t_max: Option<usize>) -> Result<CheckSuite> {
    let sp = spectrum(s)?;
    let top = t_max.unwrap_or(sp.len()).max(1);
    let reports = match id {
        CheckerId::Brouwer => (1..=top).map(|t| brouwer_report(s, &sp, t)).collect(),
        CheckerId::Majorization => majorization_reports(s, &sp, 1..=top)?,
        CheckerId::Dr => {
            if !is_shifted(s, None)? {
                return Err(Error::NotShifted);
            }
            dr_reports(s, &sp, 1..=top)?
        }
        CheckerId::TreeBound => {
            require_tree(s)?;
            (1..=top)
                .map(|t| tree_report(s, &sp, t))
                .collect::<Result<Vec<_>>>()?
        }
        CheckerId::ThresholdCone => {
            let seq = crate::generators::threshold_sequence_of(s)
                .ok_or_else(|| Error::Range("threshold-cone needs a threshold graph".into()))?;
            vec![check_threshold_cone_equality(&seq)?]
        }
        CheckerId::Forbidden => (2..=top.max(2))
            .map(|t| forbidden_report(s, &sp, t))
            .collect(),
        CheckerId::SpectralRadius => vec![spectral_radius_report(s, &sp)],
        CheckerId::HigherSums => higher_sums_reports(s, &sp, 1..=top)?,
        CheckerId::JoinLemma => {
            audit_join_lemma(s)?;
            Vec::new()
        }
        CheckerId::TreeRemark => {
            audit_tree_remark(s)?;
            Vec::new()
        }
        CheckerId::Structure => {
            audit_structure(s)?;
            Vec::new()
        }
    };
    Ok(CheckSuite::new(s, reports))
}
