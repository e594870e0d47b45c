use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("facets have mixed cardinalities ({expected} and {found})")]
    Purity { expected: usize, found: usize },

    #[error("value out of range: {0}")]
    Range(String),

    #[error("complement of a complete family has no facets")]
    CompleteComplement,

    #[error("facet-disjoint union: facet {0:?} appears in both families")]
    Overlap(Vec<u32>),

    #[error("facet cardinality mismatch: {0} vs {1}")]
    KMismatch(usize, usize),

    #[error("{what} exceeds the search guard ({size} > {limit})")]
    Size {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("eigensolver did not converge: {0}")]
    Convergence(String),

    #[error("{0:?} is not a facet of the family")]
    NotAFacet(Vec<u32>),

    #[error("structure lemma mismatch: {0}")]
    Structure(String),

    #[error("threshold sequence produces a graph with no edges")]
    EmptyGraph,

    #[error("family is not a simplicial tree")]
    NotATree,

    #[error("family is not shifted under any labeling")]
    NotShifted,

    #[error("theorem violation in {check} at t = {t}: lhs {lhs} vs rhs {rhs}")]
    TheoremViolation {
        check: String,
        t: usize,
        lhs: f64,
        rhs: f64,
    },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn size(what: &'static str, size: usize, limit: usize) -> Self {
        Error::Size { what, size, limit }
    }
}
