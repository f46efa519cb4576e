//! Small dense linear-algebra helpers on top of nalgebra.

use nalgebra::DMatrix;

use crate::scalar::Scalar;

/// Singular values in nonincreasing order.
pub fn singular_values<T: Scalar>(a: &DMatrix<T>) -> Vec<T> {
    if a.is_empty() {
        return Vec::new();
    }
    let mut s: Vec<T> = a
        .clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .collect();
    s.sort_by(|x, y| y.partial_cmp(x).unwrap_or(std::cmp::Ordering::Equal));
    s
}

/// Rank with singular values at or below `rel_tol · σ_max` counted as zero.
pub fn numerical_rank<T: Scalar>(a: &DMatrix<T>, rel_tol: T) -> usize {
    let s = singular_values(a);
    let Some(&top) = s.first() else { return 0 };
    if top <= T::zero() {
        return 0;
    }
    s.iter().filter(|&&x| x > rel_tol * top).count()
}

/// Orthonormal basis (as columns) of the null space of `a`.
///
/// Singular values at or below `rel_tol · max(σ_max, scale)` are treated as
/// zero, where `scale` lets callers supply an absolute floor.
pub fn null_space<T: Scalar>(a: &DMatrix<T>, rel_tol: T, scale: T) -> DMatrix<T> {
    let (rows, cols) = a.shape();
    if cols == 0 {
        return DMatrix::zeros(0, 0);
    }
    // Pad to at least `cols` rows so the SVD returns a full right basis.
    let padded = if rows < cols {
        let mut p = DMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (rows, cols)).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let top = svd
        .singular_values
        .iter()
        .fold(T::zero(), |m, &x| m.max(x))
        .max(scale);
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&k| svd.singular_values[k] <= rel_tol * top)
        .collect();
    let mut basis = DMatrix::zeros(cols, keep.len());
    for (c, &k) in keep.iter().enumerate() {
        for r in 0..cols {
            basis[(r, c)] = v_t[(k, r)];
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_outer_product() {
        let a = DMatrix::from_row_slice(3, 3, &[1.0, 2.0, 3.0, 2.0, 4.0, 6.0, -1.0, -2.0, -3.0]);
        assert_eq!(numerical_rank(&a, 1e-9), 1);
        let n = null_space(&a, 1e-9, 0.0);
        assert_eq!(n.ncols(), 2);
        assert!((&a * &n).norm() < 1e-12);
    }

    #[test]
    fn wide_matrix_null_space() {
        let a = DMatrix::from_row_slice(1, 3, &[1.0, 1.0, 1.0_f64]);
        let n = null_space(&a, 1e-9, 0.0);
        assert_eq!(n.ncols(), 2);
        assert!((&a * &n).norm() < 1e-12);
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let a = DMatrix::<f64>::zeros(2, 4);
        assert_eq!(numerical_rank(&a, 1e-9), 0);
    }
}
