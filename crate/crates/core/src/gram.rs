//! Per-simplex Gram forms determined by the metric, their inertia, and the
//! signature lower bounds they impose on any isometric target.
//!
//! For a simplex `(v₀, …, v_k)` the form lives on the span of `v_i − v₀` and
//! has entries `G_ij = ½(g²(e₀ᵢ) + g²(e₀ⱼ) − g²(e_ij))`, so the diagonal is
//! `g²(e₀ᵢ)`.

use std::cmp::Ordering;

use nalgebra::DMatrix;

use crate::complex::{IndefiniteMetric, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::minkowski::{inner, SimplicialMap};
use crate::scalar::Scalar;

/// Gram form of an ordered vertex list; `vertices[0]` is the base vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct GramForm<T> {
    vertices: Simplex,
    matrix: DMatrix<T>,
}

/// Counts of positive, zero, and negative eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct InertiaTriple {
    pub n_plus: usize,
    pub n_zero: usize,
    pub n_minus: usize,
}

impl InertiaTriple {
    pub fn dim(&self) -> usize {
        self.n_plus + self.n_zero + self.n_minus
    }
}

impl<T: Scalar> GramForm<T> {
    /// Form of a face of `c`, with the smallest vertex index as base.
    pub fn of_simplex(c: &SimplicialComplex, m: &IndefiniteMetric<T>, simplex: &[usize]) -> Result<Self> {
        let mut sorted = simplex.to_vec();
        sorted.sort_unstable();
        if sorted.is_empty() || !c.contains_simplex(&sorted) {
            return Err(Error::UnknownSimplex(simplex.to_vec()));
        }
        Self::of_vertices(c, m, &sorted)
    }

    /// Form of any ordered vertex list whose pairs are all edges of `c`.
    pub fn of_vertices(c: &SimplicialComplex, m: &IndefiniteMetric<T>, vertices: &[usize]) -> Result<Self> {
        let sq = |a: usize, b: usize| -> Result<T> {
            if a == b {
                return Ok(T::zero());
            }
            c.edge_index(a, b)
                .map(|e| m.get(e))
                .ok_or(Error::UnknownEdge(a.min(b), a.max(b)))
        };
        let k = vertices.len().saturating_sub(1);
        let base = vertices[0];
        let half = T::lit(0.5);
        let mut matrix = DMatrix::zeros(k, k);
        for i in 0..k {
            let gi = sq(base, vertices[i + 1])?;
            matrix[(i, i)] = gi;
            for j in i + 1..k {
                let gj = sq(base, vertices[j + 1])?;
                let gij = sq(vertices[i + 1], vertices[j + 1])?;
                let x = half * (gi + gj - gij);
                matrix[(i, j)] = x;
                matrix[(j, i)] = x;
            }
        }
        Ok(Self {
            vertices: vertices.to_vec(),
            matrix,
        })
    }

    /// Gram matrix `<f(v_i) − f(v₀), f(v_j) − f(v₀)>` of the images under `f`.
    pub fn of_map(f: &SimplicialMap<T>, vertices: &[usize]) -> Self {
        let k = vertices.len().saturating_sub(1);
        let base = f.point(vertices[0]);
        let diffs: Vec<Vec<T>> = vertices[1..]
            .iter()
            .map(|&v| f.point(v).iter().zip(base).map(|(&a, &b)| a - b).collect())
            .collect();
        let matrix = DMatrix::from_fn(k, k, |i, j| {
            inner(&diffs[i], &diffs[j], f.signature()).expect("points share the map's dimension")
        });
        Self {
            vertices: vertices.to_vec(),
            matrix,
        }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn base_vertex(&self) -> usize {
        self.vertices[0]
    }

    /// Dimension `k` of the form (one less than the vertex count).
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<T> {
        &self.matrix
    }

    /// Eigenvalues in nondecreasing order.
    pub fn eigenvalues(&self) -> Vec<T> {
        if self.dim() == 0 {
            return Vec::new();
        }
        let mut ev: Vec<T> = self
            .matrix
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
        ev
    }

    /// Eigenvalues with `|λ| ≤ tol · max(1, ρ)` count as zero.
    pub fn inertia(&self, tol: T) -> InertiaTriple {
        inertia_of(&self.eigenvalues(), tol)
    }

    /// Energy `vᵀ G v` of the straight segment between two points given in
    /// barycentric coordinates over this form's vertex order.
    pub fn segment_energy(&self, a: &[T], b: &[T]) -> Result<T> {
        let n = self.vertices.len();
        if a.len() != n || b.len() != n {
            return Err(Error::BadBarycentric("length differs from simplex vertex count"));
        }
        let tol = T::lit(1e-9);
        for w in [a, b] {
            let s = w.iter().fold(T::zero(), |acc, &x| acc + x);
            if !s.is_finite() || (s - T::one()).abs() > tol {
                return Err(Error::BadBarycentric("coordinates do not sum to one"));
            }
        }
        let v: Vec<T> = (1..n).map(|i| a[i] - b[i]).collect();
        let mut e = T::zero();
        for i in 0..v.len() {
            for j in 0..v.len() {
                e += v[i] * self.matrix[(i, j)] * v[j];
            }
        }
        Ok(e)
    }
}

fn inertia_of<T: Scalar>(eigenvalues: &[T], tol: T) -> InertiaTriple {
    let rho = eigenvalues.iter().fold(T::zero(), |m, x| m.max(x.abs()));
    let cut = tol * rho.max(T::one());
    let mut t = InertiaTriple {
        n_plus: 0,
        n_zero: 0,
        n_minus: 0,
    };
    for &x in eigenvalues {
        if x.abs() <= cut {
            t.n_zero += 1;
        } else if x > T::zero() {
            t.n_plus += 1;
        } else {
            t.n_minus += 1;
        }
    }
    t
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyhedronKind {
    /// Every simplex form is positive definite.
    Euclidean,
    /// Every simplex form is non-degenerate.
    Minkowski,
    Degenerate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification<T> {
    pub kind: PolyhedronKind,
    /// Smallest `|eigenvalue|` over all forms examined.
    pub margin: T,
    /// Inertia of every face of dimension at least one.
    pub table: Vec<(Simplex, InertiaTriple)>,
}

/// Classifies the polyhedron by the inertia of all its face forms.
///
/// A complex with no edges is vacuously Euclidean.
pub fn classify<T: Scalar>(c: &SimplicialComplex, m: &IndefiniteMetric<T>, tol: T) -> Classification<T> {
    let mut margin: Option<T> = None;
    let mut table = Vec::new();
    let mut euclidean = true;
    let mut nondegenerate = true;
    for face in c.faces().filter(|f| f.len() >= 2) {
        let form = GramForm::of_vertices(c, m, face).expect("faces have all their edges");
        let ev = form.eigenvalues();
        let smallest = ev
            .iter()
            .fold(T::max_value().unwrap_or_else(T::one), |a, x| a.min(x.abs()));
        margin = Some(margin.map_or(smallest, |mm: T| mm.min(smallest)));
        let inertia = inertia_of(&ev, tol);
        euclidean &= inertia.n_plus == form.dim();
        nondegenerate &= inertia.n_zero == 0;
        table.push((face.clone(), inertia));
    }
    let kind = if euclidean {
        PolyhedronKind::Euclidean
    } else if nondegenerate {
        PolyhedronKind::Minkowski
    } else {
        PolyhedronKind::Degenerate
    };
    Classification {
        kind,
        margin: margin.unwrap_or_else(T::zero),
        table,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObstructionOptions<T> {
    /// Largest vertex set examined; must cover every maximal simplex.
    pub clique_cap: usize,
    /// Also examine cliques of the edge graph beyond the faces of the complex.
    pub cliques: bool,
    pub tol: T,
}

impl<T: Scalar> Default for ObstructionOptions<T> {
    fn default() -> Self {
        Self {
            clique_cap: 12,
            cliques: true,
            tol: T::rank_tol(),
        }
    }
}

/// Lower bound `(p_min, q_min)` on the signature of any isometric target.
#[derive(Debug, Clone, PartialEq)]
pub struct Obstruction {
    pub p_min: usize,
    pub q_min: usize,
    /// Vertex sets attaining each bound.
    pub witness_plus: Vec<usize>,
    pub witness_minus: Vec<usize>,
    pub examined: usize,
}

/// Any isometric image of a vertex set whose pairs are all edges has a Gram
/// matrix fixed by the metric, so its positive and negative eigenvalue counts
/// bound `p` and `q` from below.
///
/// Only maximal cliques (or cliques that reach the cap) are evaluated; by
/// interlacing, the inertia counts of a sub-clique never exceed its parent's.
pub fn obstruction<T: Scalar>(
    c: &SimplicialComplex,
    m: &IndefiniteMetric<T>,
    opts: &ObstructionOptions<T>,
) -> Result<Obstruction> {
    let needed = c.dimension() + 1;
    if opts.clique_cap < needed {
        return Err(Error::CliqueCapTooSmall {
            cap: opts.clique_cap,
            needed,
        });
    }
    let mut out = Obstruction {
        p_min: 0,
        q_min: 0,
        witness_plus: Vec::new(),
        witness_minus: Vec::new(),
        examined: 0,
    };
    let mut record = |vertices: &[usize]| {
        let inertia = GramForm::of_vertices(c, m, vertices)
            .expect("clique vertices are pairwise adjacent")
            .inertia(opts.tol);
        out.examined += 1;
        if inertia.n_plus > out.p_min {
            out.p_min = inertia.n_plus;
            out.witness_plus = vertices.to_vec();
        }
        if inertia.n_minus > out.q_min {
            out.q_min = inertia.n_minus;
            out.witness_minus = vertices.to_vec();
        }
    };
    if opts.cliques {
        let mut clique = Vec::new();
        let all: Vec<usize> = (0..c.vertex_count()).collect();
        extend_cliques(c, &mut clique, &all, opts.clique_cap, &mut record);
    } else {
        for s in c.maximal_simplices() {
            record(s);
        }
    }
    Ok(out)
}

fn extend_cliques(
    c: &SimplicialComplex,
    clique: &mut Vec<usize>,
    candidates: &[usize],
    cap: usize,
    record: &mut impl FnMut(&[usize]),
) {
    if !clique.is_empty() && (candidates.is_empty() || clique.len() == cap) {
        let maximal = clique.len() == cap
            || !(0..c.vertex_count())
                .any(|u| !clique.contains(&u) && clique.iter().all(|&w| c.are_adjacent(u, w)));
        if maximal {
            record(clique);
        }
        return;
    }
    for (idx, &v) in candidates.iter().enumerate() {
        let next: Vec<usize> = candidates[idx + 1..]
            .iter()
            .copied()
            .filter(|&u| c.are_adjacent(u, v))
            .collect();
        clique.push(v);
        extend_cliques(c, clique, &next, cap, record);
        clique.pop();
    }
}
