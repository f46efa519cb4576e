//! Independent checks on a candidate map: isometry residual, simplicial
//! embedding, local embedding, and immersion.
//!
//! Injectivity is a property of the coordinates alone, so the geometric
//! checks use ordinary affine geometry of `ℝ^{p+q}` and ignore the sign
//! vector. Nothing here reads solver state.

use itertools::Itertools;
use nalgebra::DMatrix;

use crate::complex::{is_subset, IndefiniteMetric, Simplex};
use crate::error::{Error, Result};
use crate::linalg::{null_space, numerical_rank};
use crate::minkowski::{general_position, SimplicialMap};
use crate::scalar::Scalar;

/// Vertex count up to which the (2n+1)-general-position certificate is tried.
pub const GENERAL_POSITION_VERTEX_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct IsometryCheck<T> {
    /// `‖φ(f) − g²‖_∞`, recomputed from coordinates.
    pub max_edge_residual: T,
    pub worst_edge: Option<usize>,
    /// Absolute bound the residual was compared against.
    pub bound: T,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// The image of this simplex is affinely degenerate.
    Degenerate(Simplex),
    /// These two simplices meet outside the image of their common face.
    Overlap(Simplex, Simplex),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometricCheck {
    pub passed: bool,
    pub witness: Option<Witness>,
    /// Center vertex of the offending star, for the local check.
    pub at_vertex: Option<usize>,
}

impl GeometricCheck {
    fn pass() -> Self {
        Self {
            passed: true,
            witness: None,
            at_vertex: None,
        }
    }

    fn fail(witness: Witness) -> Self {
        Self {
            passed: false,
            witness: Some(witness),
            at_vertex: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport<T> {
    pub isometry: IsometryCheck<T>,
    pub embedding: GeometricCheck,
    pub local_embedding: GeometricCheck,
    pub immersion: GeometricCheck,
    /// `(2n+1)`-general position of the vertex images, when small enough to test.
    pub general_position: Option<bool>,
    pub eps_geo: T,
}

/// Compares `φ(f)` against `g²`; passes iff the residual is at most
/// `tol · max(1, ‖g²‖_∞)`.
pub fn verify_isometry<T: Scalar>(
    f: &SimplicialMap<T>,
    m: &IndefiniteMetric<T>,
    tol: T,
) -> Result<IsometryCheck<T>> {
    if m.len() != f.complex().edge_count() {
        return Err(Error::ComplexMismatch);
    }
    let phi = f.phi();
    let (residual, worst) = phi.max_abs_diff(m.squared());
    let bound = tol * m.sup_norm().max(T::one());
    Ok(IsometryCheck {
        max_edge_residual: residual,
        worst_edge: (!phi.is_empty()).then_some(worst),
        bound,
        passed: residual <= bound,
    })
}

/// Every maximal simplex maps to an affinely independent point set.
pub fn verify_immersion<T: Scalar>(f: &SimplicialMap<T>, eps_geo: T) -> GeometricCheck {
    for s in f.complex().maximal_simplices() {
        if !nondegenerate(f, s, eps_geo) {
            return GeometricCheck::fail(Witness::Degenerate(s.clone()));
        }
    }
    GeometricCheck::pass()
}

/// Global injectivity: every maximal simplex is nondegenerate and every pair
/// of maximal simplices meets exactly in the image of their shared face.
///
/// Checking maximal pairs suffices: any two points lie in maximal simplices,
/// and injectivity on each simplex handles the shared face.
pub fn verify_simplicial_embedding<T: Scalar>(f: &SimplicialMap<T>, eps_geo: T) -> GeometricCheck {
    check_simplices(f, f.complex().maximal_simplices(), eps_geo)
}

/// Injectivity on every closed vertex star.
pub fn verify_local_embedding<T: Scalar>(f: &SimplicialMap<T>, eps_geo: T) -> GeometricCheck {
    let immersion = verify_immersion(f, eps_geo);
    if !immersion.passed {
        return immersion;
    }
    let c = f.complex();
    for v in 0..c.vertex_count() {
        let star: Vec<Simplex> = c
            .maximal_containing(v)
            .iter()
            .map(|&k| c.maximal_simplices()[k].clone())
            .collect();
        let mut check = check_pairs(f, &star, eps_geo);
        if !check.passed {
            check.at_vertex = Some(v);
            return check;
        }
    }
    GeometricCheck::pass()
}

/// Runs every check and bundles the results.
pub fn verify_all<T: Scalar>(
    f: &SimplicialMap<T>,
    m: &IndefiniteMetric<T>,
    tol: T,
    eps_geo: T,
) -> Result<VerificationReport<T>> {
    let isometry = verify_isometry(f, m, tol)?;
    let c = f.complex();
    let general_position = (c.vertex_count() <= GENERAL_POSITION_VERTEX_LIMIT).then(|| {
        let points: Vec<Vec<T>> = f.points().map(<[T]>::to_vec).collect();
        general_position(&points, 2 * c.dimension() + 1, eps_geo).unwrap_or(false)
    });
    Ok(VerificationReport {
        isometry,
        embedding: verify_simplicial_embedding(f, eps_geo),
        local_embedding: verify_local_embedding(f, eps_geo),
        immersion: verify_immersion(f, eps_geo),
        general_position,
        eps_geo,
    })
}

fn check_simplices<T: Scalar>(f: &SimplicialMap<T>, simplices: &[Simplex], eps: T) -> GeometricCheck {
    for s in simplices {
        if !nondegenerate(f, s, eps) {
            return GeometricCheck::fail(Witness::Degenerate(s.clone()));
        }
    }
    check_pairs(f, simplices, eps)
}

fn check_pairs<T: Scalar>(f: &SimplicialMap<T>, simplices: &[Simplex], eps: T) -> GeometricCheck {
    for (a, b) in simplices.iter().tuple_combinations() {
        if is_subset(a, b) || is_subset(b, a) {
            continue;
        }
        if !meet_in_shared_face(f, a, b, eps) {
            return GeometricCheck::fail(Witness::Overlap(a.clone(), b.clone()));
        }
    }
    GeometricCheck::pass()
}

fn difference_matrix<T: Scalar>(f: &SimplicialMap<T>, vertices: &[usize]) -> DMatrix<T> {
    let base = f.point(vertices[0]);
    DMatrix::from_fn(f.dim(), vertices.len() - 1, |r, c| {
        f.point(vertices[c + 1])[r] - base[r]
    })
}

fn nondegenerate<T: Scalar>(f: &SimplicialMap<T>, s: &[usize], eps: T) -> bool {
    if s.len() <= 1 {
        return true;
    }
    numerical_rank(&difference_matrix(f, s), eps) == s.len() - 1
}

/// Whether `f(σ) ∩ f(τ) = f(σ ∩ τ)`, given both images are nondegenerate.
///
/// A point in both images gives barycentric weights `λ` on `σ` and `μ` on
/// `τ` whose difference `w = λ − μ` is an affine dependence of the images of
/// `σ ∪ τ`, with `w ≥ 0` on `σ ∖ τ` and `w ≤ 0` on `τ ∖ σ`. The intersection
/// leaves the shared face iff such a `w` is nonzero off the shared face, which
/// is a cone-feasibility question in the (small) dependence space.
fn meet_in_shared_face<T: Scalar>(f: &SimplicialMap<T>, a: &[usize], b: &[usize], eps: T) -> bool {
    let union: Vec<usize> = a.iter().chain(b).copied().sorted().dedup().collect();
    let dep = null_space(&difference_matrix(f, &union), eps, T::zero());
    if dep.ncols() == 0 {
        return true;
    }
    // Full dependence vectors: w_0 = −Σ_{k≥1} w_k.
    let u = union.len();
    let m = dep.ncols();
    let w = DMatrix::from_fn(u, m, |r, c| {
        if r == 0 {
            -dep.column(c).sum()
        } else {
            dep[(r - 1, c)]
        }
    });
    let mut rows: Vec<(usize, T)> = Vec::new();
    for (k, v) in union.iter().enumerate() {
        let in_a = a.binary_search(v).is_ok();
        let in_b = b.binary_search(v).is_ok();
        match (in_a, in_b) {
            (true, false) => rows.push((k, T::one())),
            (false, true) => rows.push((k, -T::one())),
            _ => {}
        }
    }
    let cone = DMatrix::from_fn(rows.len(), m, |r, c| rows[r].1 * w[(rows[r].0, c)]);
    !pointed_cone_nontrivial(&cone, eps)
}

/// Whether `{c : A c ≥ 0}` contains a `c` with `A c ≠ 0`.
fn pointed_cone_nontrivial<T: Scalar>(a: &DMatrix<T>, eps: T) -> bool {
    if a.nrows() == 0 || a.ncols() == 0 {
        return false;
    }
    // Quotient out ker A, leaving a full-column-rank system.
    let svd = a.clone().svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let top = svd.singular_values.iter().fold(T::zero(), |m, &x| m.max(x));
    if top <= T::zero() {
        return false;
    }
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&k| svd.singular_values[k] > eps * top)
        .collect();
    let rank = keep.len();
    if rank == 0 {
        return false;
    }
    let basis = DMatrix::from_fn(a.ncols(), rank, |r, c| v_t[(keep[c], r)]);
    let b = a * basis;
    let slack = eps * b.amax();
    let feasible = |c: &DMatrix<T>| {
        let bc = &b * c;
        let scale = c.norm();
        bc.iter().all(|&x| x >= -slack * scale)
    };
    if rank == 1 {
        let c = DMatrix::from_element(1, 1, T::one());
        return feasible(&c) || feasible(&(-c));
    }
    // Extreme rays of a pointed cone are cut out by rank − 1 independent rows.
    for subset in (0..b.nrows()).combinations(rank - 1) {
        let sub = DMatrix::from_fn(rank - 1, rank, |r, c| b[(subset[r], c)]);
        let ray = null_space(&sub, eps, T::zero());
        if ray.ncols() != 1 {
            continue;
        }
        let c = ray.column(0).into_owned();
        let c = DMatrix::from_column_slice(rank, 1, c.as_slice());
        if feasible(&c) || feasible(&(-c)) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::complex::SimplicialComplex;
    use crate::minkowski::Signature;

    const EPS: f64 = 1e-9;

    fn map(simplices: &[Vec<usize>], pts: &[Vec<f64>]) -> SimplicialMap<f64> {
        let c = Arc::new(SimplicialComplex::new(pts.len(), simplices).unwrap());
        SimplicialMap::from_points(c, Signature::euclidean(pts[0].len()), pts).unwrap()
    }

    fn wide_triangle() -> (SimplicialMap<f64>, IndefiniteMetric<f64>) {
        let c = Arc::new(SimplicialComplex::from_simplices(&[[0, 1, 2]]).unwrap());
        let y = 7.0 * 51.0_f64.sqrt();
        let f = SimplicialMap::from_points(
            Arc::clone(&c),
            Signature::split(1, 1),
            &[vec![0.0, 0.0], vec![50.0, y], vec![-50.0, y]],
        )
        .unwrap();
        let m = IndefiniteMetric::from_lengths(&c, [(0, 1, 1.0), (0, 2, 1.0), (1, 2, 100.0)]).unwrap();
        (f, m)
    }

    #[test]
    fn wide_triangle_is_isometric_embedding() {
        let (f, m) = wide_triangle();
        let iso = verify_isometry(&f, &m, 1e-12).unwrap();
        assert!(iso.passed, "{iso:?}");
        assert!(verify_simplicial_embedding(&f, EPS).passed);
    }

    #[test]
    fn constant_map_residuals() {
        let (f, m) = wide_triangle();
        let constant = f.scale(0.0).unwrap();
        let zero = IndefiniteMetric::uniform_length(f.complex(), 0.0);
        assert_eq!(
            verify_isometry(&constant, &zero, 1e-12)
                .unwrap()
                .max_edge_residual,
            0.0
        );
        let bad = verify_isometry(&constant, &m, 1e-12).unwrap();
        assert_eq!(bad.max_edge_residual, 10000.0);
        assert_eq!(bad.worst_edge, Some(2));
        assert!(!bad.passed);
    }

    #[test]
    fn metric_on_other_complex_is_rejected() {
        let (f, _) = wide_triangle();
        let c = SimplicialComplex::from_simplices(&[[0, 1]]).unwrap();
        let m = IndefiniteMetric::uniform_length(&c, 1.0);
        assert_eq!(verify_isometry(&f, &m, 1e-9), Err(Error::ComplexMismatch));
    }

    #[test]
    fn collapsed_edge_is_not_an_embedding() {
        let f = map(
            &[vec![0, 1], vec![1, 2]],
            &[vec![0.0, 0.0], vec![0.0, 0.0], vec![1.0, 0.0]],
        );
        let check = verify_simplicial_embedding(&f, EPS);
        assert_eq!(check.witness, Some(Witness::Degenerate(vec![0, 1])));
        assert!(!verify_local_embedding(&f, EPS).passed);
        assert!(!verify_immersion(&f, EPS).passed);
    }

    #[test]
    fn k5_standard_simplex_embeds() {
        let pairs: Vec<Vec<usize>> = (0..5).flat_map(|i| (i + 1..5).map(move |j| vec![i, j])).collect();
        let mut pts = vec![vec![0.0; 4]];
        for k in 0..4 {
            let mut p = vec![0.0; 4];
            p[k] = 1.0;
            pts.push(p);
        }
        assert!(verify_simplicial_embedding(&map(&pairs, &pts), EPS).passed);
    }

    #[test]
    fn crossing_segments_in_the_plane() {
        let crossing = map(
            &[vec![0, 1], vec![2, 3]],
            &[vec![0.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0], vec![1.0, 0.0]],
        );
        assert_eq!(
            verify_simplicial_embedding(&crossing, EPS).witness,
            Some(Witness::Overlap(vec![0, 1], vec![2, 3]))
        );
        let parallel = map(
            &[vec![0, 1], vec![2, 3]],
            &[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]],
        );
        assert!(verify_simplicial_embedding(&parallel, EPS).passed);
    }

    #[test]
    fn folded_triangles_sharing_an_edge() {
        // Two triangles on edge 0-1 with apexes on the same side overlap.
        let folded = map(
            &[vec![0, 1, 2], vec![0, 1, 3]],
            &[vec![0.0, 0.0], vec![2.0, 0.0], vec![1.0, 1.0], vec![1.0, 2.0]],
        );
        assert!(!verify_simplicial_embedding(&folded, EPS).passed);
        let flat = map(
            &[vec![0, 1, 2], vec![0, 1, 3]],
            &[vec![0.0, 0.0], vec![2.0, 0.0], vec![1.0, 1.0], vec![1.0, -1.0]],
        );
        assert!(verify_simplicial_embedding(&flat, EPS).passed);
    }

    #[test]
    fn collinear_edges_sharing_a_vertex() {
        let backtrack = map(&[vec![0, 1], vec![1, 2]], &[vec![0.0], vec![2.0], vec![1.0]]);
        assert!(!verify_simplicial_embedding(&backtrack, EPS).passed);
        let straight = map(&[vec![0, 1], vec![1, 2]], &[vec![0.0], vec![1.0], vec![2.0]]);
        assert!(verify_simplicial_embedding(&straight, EPS).passed);
    }

    #[test]
    fn figure_eight_is_local_but_not_global() {
        // Triangle 0-1-2 in the plane z = 0, triangle 4-5-6 piercing it,
        // joined by the path 2-3-4 so the complex is connected.
        let simplices = vec![vec![0, 1, 2], vec![2, 3], vec![3, 4], vec![4, 5, 6]];
        let pts = vec![
            vec![0.0, 0.0, 0.0],
            vec![4.0, 0.0, 0.0],
            vec![0.0, 4.0, 0.0],
            vec![-3.0, 5.0, 1.0],
            vec![1.0, 1.0, -1.0],
            vec![1.0, 1.0, 1.0],
            vec![1.5, 1.2, 1.0],
        ];
        let f = map(&simplices, &pts);
        assert!(!verify_simplicial_embedding(&f, EPS).passed);
        assert!(verify_local_embedding(&f, EPS).passed);
        assert!(verify_immersion(&f, EPS).passed);
    }

    #[test]
    fn immersion_checks() {
        let good = map(
            &[vec![0, 1, 2]],
            &[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]],
        );
        assert!(verify_immersion(&good, EPS).passed);
        let flat = map(
            &[vec![0, 1, 2]],
            &[vec![0.0, 0.0], vec![1.0, 1.0], vec![3.0, 3.0]],
        );
        assert!(!verify_immersion(&flat, EPS).passed);
    }

    #[test]
    fn report_bundles_everything() {
        let (f, m) = wide_triangle();
        let r = verify_all(&f, &m, 1e-12, EPS).unwrap();
        assert!(r.isometry.passed && r.embedding.passed && r.local_embedding.passed && r.immersion.passed);
        // With fewer points than 2n + 2, the whole set must be independent.
        assert_eq!(r.general_position, Some(true));
    }
}
