//! Gluing local embeddings for complexes of bounded degree.
//!
//! Vertices are split into `D = d³ − d² + d + 1` classes whose members are
//! at least three stars apart. Each vertex `v` gets a small auxiliary complex
//! `S_v` (its star plus an apex `v*` standing in for everything outside),
//! carrying half the squared length on edges at `v` and zero elsewhere. One
//! Newton solve per `S_v` into `ℝ^q_q`, pinned so that `v*` sits at the origin,
//! then a class-wise assembly `β_i`, gives one block per class. Each edge
//! collects half its value from the class of each endpoint.
//!
//! The target dimension depends only on `(n, d)`, never on `|V|`.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::thread;

use crate::complex::{IndefiniteMetric, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::minkowski::{Signature, SimplicialMap};
use crate::scalar::Scalar;

use super::greene::{solve_greene, GreeneOptions, GreeneReport};
use super::Mode;

/// The gluing solver takes the same knobs as the Newton solver: `tol` is the
/// global tolerance (each star gets `tol / D`), `seed` is shared by all
/// stars with the stream set to `v + 1`, and `dimension` overrides `q`.
pub type GluingOptions<T> = GreeneOptions<T>;

/// Number of classes `d³ − d² + d + 1` for maximum degree `d`.
pub fn class_count(d: usize) -> usize {
    d * d * d - d * d + d + 1
}

/// Vertex classes whose members are pairwise outside each other's `St³`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    /// All `D` classes, in order; some may be empty.
    pub classes: Vec<Vec<usize>>,
    /// Class index (0-based) of each vertex.
    pub class_of: Vec<usize>,
    /// 1-based position of each vertex within its class.
    pub mu: Vec<usize>,
}

/// Greedy assignment in index order: each vertex joins the lowest class with
/// no member in its `St³`. The counting bound guarantees a free class.
pub fn partition_vertices(c: &SimplicialComplex) -> Partition {
    let d = c.max_degree();
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); class_count(d)];
    let mut class_of = vec![usize::MAX; c.vertex_count()];
    let mut mu = vec![0; c.vertex_count()];
    for v in 0..c.vertex_count() {
        let star = c.closed_star(v, 3).expect("vertex in range, radius positive");
        let i = classes
            .iter()
            .position(|class| class.iter().all(|&u| !star.contains_vertex(u)))
            .expect("a class outside St³(v) always exists");
        classes[i].push(v);
        class_of[v] = i;
        mu[v] = classes[i].len();
    }
    Partition {
        classes,
        class_of,
        mu,
    }
}

/// The auxiliary complex `S_v` with its metric `ĝ_v`.
#[derive(Debug, Clone, PartialEq)]
pub struct StarComplex<T> {
    pub center: usize,
    /// Local vertex `k < vertices.len()` is parent vertex `vertices[k]`;
    /// the apex, if any, is the last local vertex.
    pub complex: Arc<SimplicialComplex>,
    pub metric: IndefiniteMetric<T>,
    /// Sorted parent vertices of `St(v)`.
    pub vertices: Vec<usize>,
    pub apex: Option<usize>,
}

impl<T: Scalar> StarComplex<T> {
    /// Local index of the center `v`.
    pub fn local_center(&self) -> usize {
        self.local(self.center).expect("center lies in its own star")
    }

    pub fn local(&self, parent: usize) -> Option<usize> {
        self.vertices.binary_search(&parent).ok()
    }
}

/// Builds `S_v`: the subcomplex induced on the vertices of `St(v)`, plus an
/// apex `v*` coned over `τ ∩ St(v)` for every maximal simplex `τ` that
/// leaves the star. Edges at `v` carry `g²/2`; all others carry zero.
pub fn build_star_complex<T: Scalar>(
    c: &SimplicialComplex,
    m: &IndefiniteMetric<T>,
    v: usize,
) -> Result<StarComplex<T>> {
    if m.len() != c.edge_count() {
        return Err(Error::ComplexMismatch);
    }
    let star = c.closed_star(v, 1)?;
    let vertices = star.vertices;
    let local = |u: usize| vertices.binary_search(&u).ok();
    let apex = vertices.len();
    let mut simplices: BTreeSet<Simplex> = BTreeSet::new();
    let mut has_apex = false;
    for tau in c.maximal_simplices() {
        let inside: Simplex = tau.iter().filter_map(|&u| local(u)).collect();
        if inside.is_empty() {
            continue;
        }
        if inside.len() < tau.len() {
            let mut coned = inside.clone();
            coned.push(apex);
            simplices.insert(coned);
            has_apex = true;
        }
        simplices.insert(inside);
    }
    let count = vertices.len() + usize::from(has_apex);
    let simplices: Vec<Simplex> = simplices.into_iter().collect();
    let complex = Arc::new(SimplicialComplex::new(count, &simplices)?);
    let center = local(v).expect("center lies in its own star");
    let half = T::lit(0.5);
    let squared = complex
        .edges()
        .iter()
        .map(|&(a, b)| {
            if a == center || b == center {
                let e = c
                    .edge_index(vertices[a], vertices[b])
                    .expect("star edge at the center is a parent edge");
                m.get(e) * half
            } else {
                T::zero()
            }
        })
        .collect();
    let metric = IndefiniteMetric::from_squared_vec(&complex, squared)?;
    Ok(StarComplex {
        center: v,
        complex,
        metric,
        vertices,
        apex: has_apex.then_some(apex),
    })
}

/// The linear isometry `ℝ^q_q → ℝ^{2q}_{2q}`,
/// `x ↦ (√(1/μ) x, √(1 − 1/μ) x)`.
pub fn iota<T: Scalar>(x: &[T], mu: usize) -> Result<Vec<T>> {
    if mu == 0 {
        return Err(Error::InvalidOption("iota needs a positive index".into()));
    }
    let inv = T::one() / T::from_count(mu);
    let (a, b) = (inv.sqrt(), (T::one() - inv).sqrt());
    Ok(x.iter().map(|&t| a * t).chain(x.iter().map(|&t| b * t)).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct GluingReport<T> {
    /// Newton solver report for `S_v`, indexed by `v`.
    pub stars: Vec<GreeneReport<T>>,
    /// `‖φ(λ) − g²‖_∞`.
    pub residual: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GluingSolution<T> {
    pub partition: Partition,
    /// Per-star Newton dimension.
    pub q: usize,
    /// Number of classes `D`.
    pub classes: usize,
    /// Coordinates per class block: `4q` in embedding mode, `2q` otherwise.
    pub block_dim: usize,
    /// Output lives in `ℝ^p_p`.
    pub p: usize,
    pub report: GluingReport<T>,
}

impl<T: Scalar> GluingSolution<T> {
    /// The class map `β_i` as a block of the assembled map.
    pub fn class_block(&self, z: &SimplicialMap<T>, i: usize) -> SimplicialMap<T> {
        z.block(i * self.block_dim, self.block_dim)
    }
}

/// Solves `φ(λ) = g²` for `λ` into `ℝ^p_p` with `p` depending only on the
/// dimension and maximum degree.
pub fn solve_gluing<T: Scalar>(
    complex: &Arc<SimplicialComplex>,
    metric: &IndefiniteMetric<T>,
    opts: &GluingOptions<T>,
) -> Result<(SimplicialMap<T>, GluingSolution<T>)> {
    if metric.len() != complex.edge_count() {
        return Err(Error::ComplexMismatch);
    }
    if !opts.tol.is_positive() {
        return Err(Error::InvalidOption("tol must be positive".into()));
    }
    let (n, d) = (complex.dimension(), complex.max_degree());
    let needed = opts.mode.min_dimension(n, d);
    let q = match opts.dimension {
        Some(q) if q < needed => return Err(Error::InsufficientDimension { needed, got: q }),
        Some(q) => q,
        None => needed,
    };
    let classes = class_count(d);
    let block_dim = match opts.mode {
        Mode::Embedding => 4 * q,
        Mode::LocalEmbedding | Mode::Immersion => 2 * q,
    };
    let partition = partition_vertices(complex);

    let star_opts = GreeneOptions {
        tol: opts.tol / T::from_count(classes),
        dimension: Some(q),
        ..opts.clone()
    };
    let solved = solve_stars(complex, metric, &star_opts)?;

    let nv = complex.vertex_count();
    let width = classes * block_dim;
    let mut coords = vec![T::zero(); nv * width];
    let mut written = vec![false; nv * classes];
    for (v, (star, h, _)) in solved.iter().enumerate() {
        let i = partition.class_of[v];
        for (k, &u) in star.vertices.iter().enumerate() {
            let point = match opts.mode {
                Mode::Embedding => iota(h.point(k), partition.mu[v])?,
                _ => h.point(k).to_vec(),
            };
            debug_assert!(!written[u * classes + i], "stars within a class overlap");
            written[u * classes + i] = true;
            let start = u * width + i * block_dim;
            coords[start..start + block_dim].copy_from_slice(&point);
        }
    }
    let block_sig = match opts.mode {
        Mode::Embedding => Signature::split(q, q).concat(&Signature::split(q, q)),
        _ => Signature::split(q, q),
    };
    let signature = (0..classes).fold(Signature::new(Vec::new()), |s, _| s.concat(&block_sig));
    let z = SimplicialMap::new(Arc::clone(complex), signature, coords)?;

    let (residual, _) = z.phi().max_abs_diff(metric.squared());
    let bound = opts.tol * metric.sup_norm().max(T::one());
    if residual > bound {
        return Err(Error::SolverDiverged(format!(
            "assembled residual {residual} exceeds {bound}"
        )));
    }
    if !opts.mode.check(&z, T::rank_tol()).passed {
        return Err(Error::SolverDiverged(format!(
            "assembled map failed the {} check",
            opts.mode.name()
        )));
    }
    let solution = GluingSolution {
        partition,
        q,
        classes,
        block_dim,
        p: classes * block_dim / 2,
        report: GluingReport {
            stars: solved.into_iter().map(|(_, _, r)| r).collect(),
            residual,
        },
    };
    Ok((z, solution))
}

type SolvedStar<T> = (StarComplex<T>, SimplicialMap<T>, GreeneReport<T>);

/// Builds and solves every `S_v`, translating each solution so the apex
/// lands on the origin. Stars are independent and solved in parallel.
fn solve_stars<T: Scalar>(
    complex: &Arc<SimplicialComplex>,
    metric: &IndefiniteMetric<T>,
    opts: &GreeneOptions<T>,
) -> Result<Vec<SolvedStar<T>>> {
    let solve_one = |v: usize| -> Result<SolvedStar<T>> {
        let star = build_star_complex(complex, metric, v)?;
        let star_opts = GreeneOptions {
            stream: v as u64 + 1,
            ..opts.clone()
        };
        let (h, report) = solve_greene(&star.complex, &star.metric, &star_opts)?;
        let h = match star.apex {
            Some(a) => h.centered_at(a),
            None => h,
        };
        Ok((star, h, report))
    };
    let nv = complex.vertex_count();
    let workers = thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(nv.max(1));
    let chunk = nv.div_ceil(workers.max(1)).max(1);
    let results: Vec<Result<SolvedStar<T>>> = thread::scope(|scope| {
        let handles: Vec<_> = (0..nv)
            .step_by(chunk)
            .map(|lo| {
                let solve_one = &solve_one;
                scope.spawn(move || (lo..(lo + chunk).min(nv)).map(solve_one).collect::<Vec<_>>())
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("star solver thread panicked"))
            .collect()
    });
    results.into_iter().collect()
}
