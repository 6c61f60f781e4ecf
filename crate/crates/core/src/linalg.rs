//! Small dense linear-algebra helpers on top of nalgebra.
//!
//! Every instance in this crate is desk-sized (at most a few hundred
//! columns), so everything here is dense and SVD based.

use nalgebra::{DMatrix, DVector};

/// Relative tolerance used for every numerical rank decision.
pub const RANK_TOL: f64 = 1e-10;

/// Singular value decomposition with a full right basis.
///
/// nalgebra only returns the thin factorization, so wide matrices are padded
/// with zero rows until square; the padded rows contribute zero singular
/// values and the right singular vectors then span all of the column space.
pub struct FullSvd {
    /// Singular values, sorted in decreasing order (length = ncols).
    pub singular_values: Vec<f64>,
    /// Right singular vectors as columns, in the same order.
    pub v: DMatrix<f64>,
    nrows: usize,
}

impl FullSvd {
    pub fn new(m: &DMatrix<f64>) -> Self {
        let (r, c) = m.shape();
        let padded = if r < c {
            let mut p = DMatrix::zeros(c, c);
            p.view_mut((0, 0), (r, c)).copy_from(m);
            p
        } else {
            m.clone()
        };
        let svd = padded.svd(false, true);
        let v_t = svd.v_t.expect("requested V^T");
        let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
        order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
        let singular_values: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
        let mut v = DMatrix::zeros(c, order.len());
        for (k, &i) in order.iter().enumerate() {
            v.set_column(k, &v_t.row(i).transpose());
        }
        // `svd` on a tall matrix returns min(r, c) = c vectors, so V is square.
        FullSvd {
            singular_values,
            v,
            nrows: r,
        }
    }

    pub fn largest(&self) -> f64 {
        self.singular_values.first().copied().unwrap_or(0.0)
    }

    /// Number of singular values above `rel_tol` times the largest one.
    pub fn rank(&self, rel_tol: f64) -> usize {
        let cutoff = rel_tol * self.largest();
        if self.largest() == 0.0 {
            return 0;
        }
        self.singular_values
            .iter()
            .take(self.nrows.min(self.singular_values.len()))
            .filter(|&&s| s > cutoff)
            .count()
    }

    /// Orthonormal basis of the kernel, as columns.
    pub fn kernel(&self, rel_tol: f64) -> DMatrix<f64> {
        let r = self.rank(rel_tol);
        self.v.columns(r, self.v.ncols() - r).into_owned()
    }

    /// Orthonormal basis of the row space (orthogonal complement of the kernel).
    pub fn row_space(&self, rel_tol: f64) -> DMatrix<f64> {
        let r = self.rank(rel_tol);
        self.v.columns(0, r).into_owned()
    }
}

pub fn numerical_rank(m: &DMatrix<f64>, rel_tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    FullSvd::new(m).rank(rel_tol)
}

/// Minimum-norm least-squares solution of `m x = b` via the SVD pseudoinverse.
pub fn min_norm_solve(m: &DMatrix<f64>, b: &DVector<f64>, rel_tol: f64) -> DVector<f64> {
    if m.ncols() == 0 {
        return DVector::zeros(0);
    }
    let svd = m.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let eps = (rel_tol * smax).max(f64::MIN_POSITIVE);
    svd.solve(b, eps).expect("U and V^T were computed")
}

/// Greedy selection of linearly independent rows, in the given order.
///
/// A row is kept when it raises the numerical rank (column-pivoted QR on the
/// transposed selection). Returns the kept row indices.
pub fn greedy_independent_rows(m: &DMatrix<f64>, rel_tol: f64) -> Vec<usize> {
    let mut kept: Vec<usize> = Vec::new();
    let scale = m.iter().fold(0.0_f64, |a, &x| a.max(x.abs()));
    if scale == 0.0 {
        return kept;
    }
    for i in 0..m.nrows() {
        let mut trial = kept.clone();
        trial.push(i);
        let sub = DMatrix::from_fn(m.ncols(), trial.len(), |c, k| m[(trial[k], c)]);
        if qr_rank(&sub, rel_tol, scale) == trial.len() {
            kept = trial;
        }
    }
    kept
}

fn qr_rank(m: &DMatrix<f64>, rel_tol: f64, scale: f64) -> usize {
    let qr = m.clone().col_piv_qr();
    let r = qr.r();
    let n = r.nrows().min(r.ncols());
    (0..n).filter(|&i| r[(i, i)].abs() > rel_tol * scale).count()
}

/// Frobenius-free spectral norm estimate (largest singular value).
pub fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    m.clone().singular_values().max()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wide_matrix_kernel_is_complete() {
        let m = DMatrix::from_row_slice(2, 4, &[1.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 1.0]);
        let svd = FullSvd::new(&m);
        assert_eq!(svd.rank(RANK_TOL), 2);
        let k = svd.kernel(RANK_TOL);
        assert_eq!(k.ncols(), 2);
        assert!((&m * &k).norm() < 1e-12);
        assert!((k.transpose() * &k - DMatrix::identity(2, 2)).norm() < 1e-12);
    }

    #[test]
    fn greedy_rows_skip_dependent() {
        let m = DMatrix::from_row_slice(3, 2, &[1.0, -1.0, -1.0, 1.0, 0.0, 1.0]);
        assert_eq!(greedy_independent_rows(&m, RANK_TOL), vec![0, 2]);
    }

    #[test]
    fn min_norm_solution_of_underdetermined_system() {
        let m = DMatrix::from_row_slice(1, 2, &[1.0, 1.0]);
        let x = min_norm_solve(&m, &DVector::from_vec(vec![2.0]), RANK_TOL);
        assert!((x[0] - 1.0).abs() < 1e-12 && (x[1] - 1.0).abs() < 1e-12);
    }
}
