//! Generators for test and benchmark complexes.

use itertools::Itertools;
use rand::Rng;

use crate::complex::{IndefiniteMetric, Simplex, SimplicialComplex};
use crate::error::Result;
use crate::scalar::Scalar;

/// The `k`-skeleton of the `N`-simplex on vertices `0..=N`.
pub fn complete_skeleton(simplex_dim: usize, k: usize) -> Result<SimplicialComplex> {
    let k = k.min(simplex_dim);
    let simplices: Vec<Simplex> = (0..=simplex_dim).combinations(k + 1).collect();
    SimplicialComplex::new(simplex_dim + 1, &simplices)
}

/// Path `0 − 1 − … − (len − 1)`.
pub fn path(len: usize) -> Result<SimplicialComplex> {
    if len == 1 {
        return SimplicialComplex::new(1, &[[0]]);
    }
    let edges: Vec<[usize; 2]> = (1..len).map(|i| [i - 1, i]).collect();
    SimplicialComplex::from_simplices(&edges)
}

/// `side × side` vertex grid, each square cut along the same diagonal.
///
/// Vertex `(r, c)` has index `r · side + c`. For `side ≥ 3` the maximum
/// degree is 6 and the dimension 2, whatever the size.
pub fn triangulated_grid(side: usize) -> Result<SimplicialComplex> {
    let id = |r: usize, c: usize| r * side + c;
    let mut triangles = Vec::new();
    for r in 0..side.saturating_sub(1) {
        for c in 0..side - 1 {
            triangles.push(vec![id(r, c), id(r, c + 1), id(r + 1, c + 1)]);
            triangles.push(vec![id(r, c), id(r + 1, c), id(r + 1, c + 1)]);
        }
    }
    if triangles.is_empty() {
        let points: Vec<Vec<usize>> = (0..side * side).map(|v| vec![v]).collect();
        return SimplicialComplex::new(side * side, &points);
    }
    SimplicialComplex::new(side * side, &triangles)
}

/// 1-skeleta of the `N`-simplices for `N = 4, …, 3 + count`, glued at the
/// shared vertex 0. The degree of vertex 0 grows without bound in `count`.
pub fn glued_fan(count: usize) -> Result<SimplicialComplex> {
    let mut edges: Vec<[usize; 2]> = Vec::new();
    let mut next = 1;
    for big_n in 4..4 + count {
        let vertices: Vec<usize> = std::iter::once(0).chain(next..next + big_n).collect();
        next += big_n;
        edges.extend(vertices.iter().tuple_combinations().map(|(&a, &b)| [a, b]));
    }
    if edges.is_empty() {
        return SimplicialComplex::new(1, &[[0]]);
    }
    SimplicialComplex::from_simplices(&edges)
}

/// Random complex with at most `max_vertices` vertices, dimension at most
/// `max_dim`, and maximum degree at most `max_degree`.
///
/// Candidate simplices that would push some degree past the bound are
/// skipped, so the result may have isolated vertices and several components.
pub fn random_complex<R: Rng + ?Sized>(
    rng: &mut R,
    max_vertices: usize,
    max_dim: usize,
    max_degree: usize,
) -> Result<SimplicialComplex> {
    let nv = rng.gen_range(2..=max_vertices.max(2));
    let attempts = rng.gen_range(1..=2 * nv);
    let mut simplices: Vec<Simplex> = Vec::new();
    let mut adjacency = vec![std::collections::BTreeSet::<usize>::new(); nv];
    for _ in 0..attempts {
        let k = rng.gen_range(0..=max_dim.min(nv - 1));
        let s: Simplex = rand::seq::index::sample(rng, nv, k + 1)
            .into_iter()
            .sorted()
            .collect();
        let fits = s.iter().all(|&u| {
            let new = s
                .iter()
                .filter(|&&w| w != u && !adjacency[u].contains(&w))
                .count();
            adjacency[u].len() + new <= max_degree
        });
        if !fits {
            continue;
        }
        for (&a, &b) in s.iter().tuple_combinations() {
            adjacency[a].insert(b);
            adjacency[b].insert(a);
        }
        simplices.push(s);
    }
    if simplices.is_empty() {
        simplices.push(vec![0]);
    }
    SimplicialComplex::new(nv, &simplices)
}

/// Squared lengths i.i.d. uniform in `[lo, hi]`.
pub fn random_metric<T: Scalar, R: Rng + ?Sized>(
    c: &SimplicialComplex,
    rng: &mut R,
    lo: f64,
    hi: f64,
) -> IndefiniteMetric<T> {
    let values = (0..c.edge_count())
        .map(|_| T::lit(rng.gen_range(lo..=hi)))
        .collect();
    IndefiniteMetric::from_squared_vec(c, values).expect("one value per edge")
}

/// A two-dimensional complex with mixed-sign lengths, built so that the
/// auxiliary complex at vertex 0 has apex edges, an apex triangle, and an
/// induced rim edge between two neighbors of vertex 0.
///
/// Vertices: 0 center, 1–4 its neighbors, 5–7 outside the star.
pub fn mixed_star_example() -> (SimplicialComplex, IndefiniteMetric<f64>) {
    let simplices: Vec<Vec<usize>> = vec![
        vec![0, 1, 2],
        vec![0, 3, 4],
        vec![1, 2, 5],
        vec![2, 5, 6],
        vec![2, 3],
        vec![3, 6],
        vec![3, 7],
        vec![6, 7],
    ];
    let c = SimplicialComplex::new(8, &simplices).expect("valid complex");
    let lengths = [
        (0, 1, 2.0),
        (0, 2, 1.0),
        (0, 3, 2.0_f64.sqrt()),
        (0, 4, 3.0),
        (1, 2, -1.0),
        (1, 5, -9.0),
        (2, 3, 11.0),
        (2, 5, 0.0),
        (2, 6, -1.0),
        (3, 4, -3.0),
        (3, 6, 7.0),
        (3, 7, -1.0),
        (5, 6, -4.0),
        (6, 7, 100.0),
    ];
    let m = IndefiniteMetric::from_lengths(&c, lengths).expect("one length per edge");
    (c, m)
}
