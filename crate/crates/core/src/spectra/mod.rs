//! Boundary matrices, the simplicial Laplacian `L = ∂∂ᵀ` and its spectrum.
//!
//! Rows of the top boundary map are indexed by every `(k-1)`-subset of the
//! universe, present in the family or not, so a spectrum always has
//! `C(n, k-1)` entries. Missing ridges only contribute zero eigenvalues.

mod eigen;
mod matrix;

use serde::{Deserialize, Serialize};

pub use eigen::{symmetric_eigen, EigenDecomposition};
pub use matrix::DenseMatrix;

use crate::combin::{binomial, k_subsets, lex_rank};
use crate::error::{Error, Result};
use crate::family::KFamily;

/// Largest Laplacian dimension `C(n, k-1)` accepted by [`spectrum`].
pub const SPECTRUM_SIZE_GUARD: usize = 5000;

/// Relative residual `‖Lv - λv‖ / ‖L‖_F` accepted per eigenpair.
pub const RESIDUAL_BOUND: f64 = 1e-10;

/// Eigenvalues in `[-CLAMP, CLAMP]` are reported as exactly zero; anything
/// below `-CLAMP` is a solver failure.
pub const CLAMP: f64 = 1e-9;

/// Signed incidence between facets (columns) and `(k-1)`-subsets (rows).
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryMatrix {
    rows: Vec<Vec<u32>>,
    columns: Vec<Vec<(usize, i8)>>,
}

impl BoundaryMatrix {
    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.columns.len())
    }

    /// The `(k-1)`-subset labelling row `r`.
    pub fn row_face(&self, r: usize) -> &[u32] {
        &self.rows[r]
    }

    /// Nonzero `(row, sign)` pairs of column `c`.
    pub fn column(&self, c: usize) -> &[(usize, i8)] {
        &self.columns[c]
    }

    pub fn get(&self, r: usize, c: usize) -> i8 {
        self.columns[c]
            .iter()
            .find(|(row, _)| *row == r)
            .map_or(0, |&(_, s)| s)
    }
}

/// Omitting the `j`-th smallest vertex of a facet carries sign `(-1)^j`.
pub fn boundary_matrix(s: &KFamily) -> BoundaryMatrix {
    let n = s.n();
    let rows = k_subsets(n, s.k() - 1);
    let columns = s
        .facets()
        .iter()
        .map(|f| {
            let vs = f.vertices();
            let mut col: Vec<(usize, i8)> = (0..vs.len())
                .map(|j| {
                    let face: Vec<u32> = vs
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != j)
                        .map(|(_, &v)| v)
                        .collect();
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    (lex_rank(n, &face), sign)
                })
                .collect();
            col.sort_unstable();
            col
        })
        .collect();
    BoundaryMatrix { rows, columns }
}

/// Dimension `C(n, k-1)` of the Laplacian.
pub fn laplacian_dim(s: &KFamily) -> usize {
    binomial(u64::from(s.n()), s.k() as u64 - 1) as usize
}

/// `∂∂ᵀ` as a dense symmetric matrix. For `k = 2` this is the graph
/// Laplacian on all `n` vertices.
pub fn laplacian(s: &KFamily) -> DenseMatrix {
    let b = boundary_matrix(s);
    let mut l = DenseMatrix::zeros(b.shape().0);
    for col in &b.columns {
        for &(r1, s1) in col {
            for &(r2, s2) in col {
                l[(r1, r2)] += f64::from(s1 * s2);
            }
        }
    }
    l
}

/// Descending Laplacian eigenvalues with the worst residual observed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub values: Vec<f64>,
    /// Largest `‖Lv - λv‖ / ‖L‖_F` over all eigenpairs.
    pub max_residual: f64,
    /// Bound the residual was held to.
    pub residual_bound: f64,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `λ_1 + ... + λ_t`; saturates at the full sum when `t` exceeds the
    /// length.
    pub fn partial_sum(&self, t: usize) -> f64 {
        self.values.iter().take(t).sum()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn largest(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }
}

pub fn spectrum(s: &KFamily) -> Result<Spectrum> {
    let dim = laplacian_dim(s);
    if dim > SPECTRUM_SIZE_GUARD {
        return Err(Error::size("Laplacian dimension", dim, SPECTRUM_SIZE_GUARD));
    }
    spectrum_of_matrix(&laplacian(s))
}

/// Spectrum of any symmetric PSD matrix, with the same residual and
/// clamping rules as [`spectrum`].
pub fn spectrum_of_matrix(l: &DenseMatrix) -> Result<Spectrum> {
    let eig = symmetric_eigen(l)?;
    let norm = l.frobenius_norm();
    let sparse = l.sparse_rows();
    let dim = l.dim();
    let mut max_residual: f64 = 0.0;
    for (j, &lam) in eig.values.iter().enumerate() {
        let mut acc = 0.0;
        for (i, row) in sparse.iter().enumerate() {
            let lv: f64 = row.iter().map(|&(c, x)| x * eig.vectors[(c, j)]).sum();
            let r = lv - lam * eig.vectors[(i, j)];
            acc += r * r;
        }
        let rel = if norm > 0.0 {
            acc.sqrt() / norm
        } else {
            acc.sqrt()
        };
        max_residual = max_residual.max(rel);
    }
    if max_residual > RESIDUAL_BOUND {
        return Err(Error::Convergence(format!(
            "residual {max_residual:e} exceeds {RESIDUAL_BOUND:e} (dimension {dim})"
        )));
    }
    let mut values = Vec::with_capacity(dim);
    for lam in eig.values {
        if lam < -CLAMP {
            return Err(Error::Convergence(format!(
                "negative eigenvalue {lam:e} for a positive semi-definite matrix"
            )));
        }
        values.push(if lam.abs() <= CLAMP { 0.0 } else { lam });
    }
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(Spectrum {
        values,
        max_residual,
        residual_bound: RESIDUAL_BOUND,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: u32, fs: &[&[u32]]) -> KFamily {
        KFamily::from_facets(n, fs.iter().map(|f| f.to_vec())).unwrap()
    }

    fn assert_close(got: &[f64], want: &[f64]) {
        assert_eq!(got.len(), want.len(), "{got:?} vs {want:?}");
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-8, "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn boundary_sign_rule() {
        let edge = boundary_matrix(&fam(2, &[&[1, 2]]));
        assert_eq!(edge.shape(), (2, 1));
        assert_eq!((edge.get(0, 0), edge.get(1, 0)), (-1, 1));
        let tri = boundary_matrix(&fam(3, &[&[1, 2, 3]]));
        // rows in lex order: {1,2}, {1,3}, {2,3}
        assert_eq!(tri.row_face(0), &[1, 2]);
        assert_eq!((tri.get(2, 0), tri.get(1, 0), tri.get(0, 0)), (1, -1, 1));
        let star = boundary_matrix(&fam(5, &[&[1, 2, 3], &[1, 2, 4], &[1, 2, 5]]));
        assert_eq!(star.shape(), (10, 3));
        for c in 0..3 {
            assert_eq!(star.column(c).len(), 3);
        }
    }

    #[test]
    fn laplacian_of_graph_is_degree_minus_adjacency() {
        let g = fam(4, &[&[1, 2], &[2, 3], &[2, 4]]);
        let l = laplacian(&g);
        let want = DenseMatrix::from_rows(&[
            vec![1.0, -1.0, 0.0, 0.0],
            vec![-1.0, 3.0, -1.0, -1.0],
            vec![0.0, -1.0, 1.0, 0.0],
            vec![0.0, -1.0, 0.0, 1.0],
        ]);
        assert_eq!(l, want);
        assert_eq!(
            laplacian(&fam(2, &[&[1, 2]])),
            DenseMatrix::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]])
        );
        let t = fam(5, &[&[1, 2, 3], &[1, 2, 4], &[2, 4, 5]]);
        let lt = laplacian(&t);
        assert!(lt.is_symmetric());
        assert_eq!(lt.trace(), 9.0);
    }

    #[test]
    fn known_spectra() {
        let fig1 = fam(5, &[&[1, 2], &[1, 5], &[2, 5], &[3, 5], &[4, 5]]);
        assert_close(&spectrum(&fig1).unwrap().values, &[5.0, 3.0, 1.0, 1.0, 0.0]);
        let star = fam(5, &[&[1, 2, 3], &[1, 2, 4], &[1, 2, 5]]);
        let mut want = vec![5.0, 2.0, 2.0];
        want.resize(10, 0.0);
        assert_close(&spectrum(&star).unwrap().values, &want);
        let k4 = fam(4, &[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]);
        let sp = spectrum(&k4).unwrap();
        assert_close(&sp.values[..2], &[4.0, 4.0]);
    }

    #[test]
    fn empty_and_k1() {
        let e = KFamily::empty(4, 2).unwrap();
        assert_eq!(spectrum(&e).unwrap().values, vec![0.0; 4]);
        // k = 1: one row for the empty face
        let pts = fam(4, &[&[1], &[3]]);
        assert_close(&spectrum(&pts).unwrap().values, &[2.0]);
    }
}
