use itertools::Itertools;
use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{numerical_rank, singular_values};
use crate::scalar::Scalar;

use super::SimplicialMap;

/// Largest number of subsets [`general_position`] will test exhaustively.
pub const GENERAL_POSITION_LIMIT: u128 = 1_000_000;

/// Result of the per-vertex incident-edge independence test.
///
/// When it holds everywhere, the Jacobian of `φ` has full row rank `|E|`.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeIndependence<T> {
    pub per_vertex: Vec<bool>,
    /// Smallest singular value of the incident edge vectors at each vertex;
    /// zero when the degree exceeds the ambient dimension, `None` if isolated.
    pub smallest_singular: Vec<Option<T>>,
    pub all: bool,
}

impl<T: Scalar> EdgeIndependence<T> {
    pub(super) fn of(f: &SimplicialMap<T>, rel_tol: T) -> Self {
        let c = f.complex();
        let n = f.dim();
        let mut per_vertex = Vec::with_capacity(c.vertex_count());
        let mut smallest_singular = Vec::with_capacity(c.vertex_count());
        for v in 0..c.vertex_count() {
            let nbrs = c.neighbors(v);
            if nbrs.is_empty() {
                per_vertex.push(true);
                smallest_singular.push(None);
                continue;
            }
            let base = f.point(v);
            let m = DMatrix::from_fn(nbrs.len(), n, |r, k| f.point(nbrs[r])[k] - base[k]);
            let s = singular_values(&m);
            let top = s.first().copied().unwrap_or_else(T::zero);
            let low = if nbrs.len() > n {
                T::zero()
            } else {
                s.last().copied().unwrap_or_else(T::zero)
            };
            per_vertex.push(top > T::zero() && low > rel_tol * top);
            smallest_singular.push(Some(low));
        }
        let all = per_vertex.iter().all(|&b| b);
        Self {
            per_vertex,
            smallest_singular,
            all,
        }
    }
}

/// Whether every subset of at most `k + 1` points is affinely independent.
///
/// Only subsets of size exactly `min(k + 1, |points|)` are tested, since
/// subsets of affinely independent sets stay independent.
pub fn general_position<T: Scalar>(points: &[Vec<T>], k: usize, rel_tol: T) -> Result<bool> {
    if points.is_empty() {
        return Err(Error::EmptyInput("point set"));
    }
    let size = (k + 1).min(points.len());
    let subsets = binomial(points.len() as u128, size as u128);
    if subsets > GENERAL_POSITION_LIMIT {
        return Err(Error::CombinatorialBlowup { subsets });
    }
    if size <= 1 {
        return Ok(true);
    }
    let points = span_coordinates(points);
    let dim = points[0].len();
    Ok((0..points.len()).combinations(size).all(|subset| {
        let base = &points[subset[0]];
        let m = DMatrix::from_fn(size - 1, dim, |r, c| points[subset[r + 1]][c] - base[c]);
        numerical_rank(&m, rel_tol) == size - 1
    }))
}

/// Coordinates of the points in an orthonormal frame of their affine hull.
///
/// The frame is isometric to the hull, so affine independence and singular
/// values of every subset are unchanged, while each subset test shrinks to
/// at most `|points| − 1` columns.
fn span_coordinates<T: Scalar>(points: &[Vec<T>]) -> Vec<Vec<T>> {
    let (n, dim) = (points.len(), points[0].len());
    if dim < n {
        return points.to_vec();
    }
    let base = &points[0];
    let d = DMatrix::from_fn(dim, n - 1, |r, c| points[c + 1][r] - base[r]);
    let r = d.qr().r();
    let mut out = vec![vec![T::zero(); r.nrows()]];
    out.extend(r.column_iter().map(|col| col.iter().copied().collect()));
    out
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}
