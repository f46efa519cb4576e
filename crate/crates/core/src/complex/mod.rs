//! Finite abstract simplicial complexes and the edge-valued metrics on them.
//!
//! Vertices are `0..vertex_count`. Simplices are stored as strictly
//! increasing vertex lists. Edges are indexed lexicographically on `(i, j)`
//! with `i < j`; every metric vector and Jacobian row in the crate uses this
//! order.

mod metric;
mod star;

use std::collections::{BTreeSet, HashMap};

pub use metric::{IndefiniteMetric, InputMode};
pub use star::Star;

use crate::error::{Error, Result};

/// A sorted, duplicate-free list of vertex indices.
pub type Simplex = Vec<usize>;

/// Edge as an ordered vertex pair `(i, j)` with `i < j`.
pub type Edge = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    labels: Option<Vec<String>>,
    maximal: Vec<Simplex>,
    faces: BTreeSet<Simplex>,
    edges: Vec<Edge>,
    edge_index: HashMap<Edge, usize>,
    neighbors: Vec<Vec<usize>>,
    incident: Vec<Vec<usize>>,
    containing: Vec<Vec<usize>>,
    dimension: usize,
}

impl SimplicialComplex {
    /// Builds a complex from its (not necessarily maximal) simplices, with the
    /// vertex count inferred as one past the largest index.
    pub fn from_simplices<S: AsRef<[usize]>>(simplices: &[S]) -> Result<Self> {
        if simplices.is_empty() {
            return Err(Error::EmptyInput("simplex list"));
        }
        let count = simplices
            .iter()
            .flat_map(|s| s.as_ref().iter().copied())
            .max()
            .map_or(0, |m| m + 1);
        Self::new(count, simplices)
    }

    /// Builds a complex on `vertex_count` vertices. Vertices not covered by any
    /// simplex become isolated 0-simplices.
    pub fn new<S: AsRef<[usize]>>(vertex_count: usize, simplices: &[S]) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::EmptyInput("vertex set"));
        }
        let mut candidates: BTreeSet<Simplex> = BTreeSet::new();
        for s in simplices {
            let s = s.as_ref();
            if s.is_empty() {
                return Err(Error::EmptyInput("simplex"));
            }
            let mut sorted = s.to_vec();
            sorted.sort_unstable();
            for w in sorted.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::DuplicateVertexInSimplex {
                        simplex: s.to_vec(),
                        vertex: w[0],
                    });
                }
            }
            if let Some(&bad) = sorted.iter().find(|&&v| v >= vertex_count) {
                return Err(Error::IndexOutOfRange {
                    index: bad,
                    count: vertex_count,
                });
            }
            candidates.insert(sorted);
        }
        let covered: BTreeSet<usize> = candidates.iter().flatten().copied().collect();
        for v in 0..vertex_count {
            if !covered.contains(&v) {
                candidates.insert(vec![v]);
            }
        }

        // Drop simplices that are faces of larger ones; visiting largest first
        // means every kept simplex is checked against all possible cofaces.
        let mut by_size: Vec<Simplex> = candidates.into_iter().collect();
        by_size.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        let mut maximal: Vec<Simplex> = Vec::new();
        for s in by_size {
            if !maximal.iter().any(|m| is_subset(&s, m)) {
                maximal.push(s);
            }
        }
        maximal.sort();

        let mut faces = BTreeSet::new();
        for m in &maximal {
            for_each_face(m, |f| {
                faces.insert(f);
            });
        }

        let edges: Vec<Edge> = faces
            .iter()
            .filter(|f| f.len() == 2)
            .map(|f| (f[0], f[1]))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let edge_index = edges.iter().enumerate().map(|(k, &e)| (e, k)).collect();

        let mut neighbors = vec![Vec::new(); vertex_count];
        let mut incident = vec![Vec::new(); vertex_count];
        for (k, &(i, j)) in edges.iter().enumerate() {
            neighbors[i].push(j);
            neighbors[j].push(i);
            incident[i].push(k);
            incident[j].push(k);
        }
        for n in &mut neighbors {
            n.sort_unstable();
        }

        let mut containing = vec![Vec::new(); vertex_count];
        for (k, m) in maximal.iter().enumerate() {
            for &v in m {
                containing[v].push(k);
            }
        }
        let dimension = maximal.iter().map(|m| m.len() - 1).max().unwrap_or(0);

        Ok(Self {
            vertex_count,
            labels: None,
            maximal,
            faces,
            edges,
            edge_index,
            neighbors,
            incident,
            containing,
            dimension,
        })
    }

    /// Attaches vertex labels; the label count must equal the vertex count.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.vertex_count {
            return Err(Error::LengthMismatch {
                expected: self.vertex_count,
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn maximal_simplices(&self) -> &[Simplex] {
        &self.maximal
    }

    /// All nonempty faces, closed under taking subsets.
    pub fn faces(&self) -> impl Iterator<Item = &Simplex> {
        self.faces.iter()
    }

    pub fn contains_simplex(&self, s: &[usize]) -> bool {
        let mut sorted = s.to_vec();
        sorted.sort_unstable();
        self.faces.contains(&sorted)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Index of the edge between `i` and `j`, in either order.
    pub fn edge_index(&self, i: usize, j: usize) -> Option<usize> {
        let key = if i < j { (i, j) } else { (j, i) };
        self.edge_index.get(&key).copied()
    }

    /// Largest simplex dimension `n`.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Number of edges at `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    /// Maximum vertex degree `d`.
    pub fn max_degree(&self) -> usize {
        self.neighbors.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    /// Edge indices incident with `v`.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    /// Indices (into [`Self::maximal_simplices`]) of maximal simplices containing `v`.
    pub fn maximal_containing(&self, v: usize) -> &[usize] {
        &self.containing[v]
    }

    pub fn are_adjacent(&self, i: usize, j: usize) -> bool {
        self.edge_index(i, j).is_some()
    }

    /// Iterated closed star `St^k(v)`.
    pub fn closed_star(&self, v: usize, k: usize) -> Result<Star> {
        if v >= self.vertex_count {
            return Err(Error::IndexOutOfRange {
                index: v,
                count: self.vertex_count,
            });
        }
        if k == 0 {
            return Err(Error::InvalidOption("star radius must be at least 1".into()));
        }
        Ok(Star::build(self, v, k))
    }
}

pub(crate) fn is_subset(a: &[usize], b: &[usize]) -> bool {
    // Both sorted.
    let mut it = b.iter();
    a.iter().all(|x| it.any(|y| y == x))
}

/// Calls `f` on every nonempty subset of the sorted simplex `s`.
pub(crate) fn for_each_face(s: &[usize], mut f: impl FnMut(Simplex)) {
    let k = s.len();
    assert!(k < usize::BITS as usize, "simplex too large to enumerate faces");
    for mask in 1usize..(1 << k) {
        f((0..k).filter(|b| mask >> b & 1 == 1).map(|b| s[b]).collect());
    }
}
