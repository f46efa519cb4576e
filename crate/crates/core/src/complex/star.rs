use std::collections::BTreeSet;

use super::{Simplex, SimplicialComplex};

/// Iterated closed star `St^k(v)`.
///
/// `St¹(v)` is every simplex containing `v` together with its faces, and
/// `St^{k+1}(v)` is the union of `St(u)` over the vertices `u` of `St^k(v)`.
/// Boundary vertices are those of `St^k(v)` that are not in `St^{k-1}(v)`
/// (taking `St⁰(v) = {v}`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Star {
    pub center: usize,
    pub radius: usize,
    /// Sorted vertex set.
    pub vertices: Vec<usize>,
    /// Maximal simplices of the parent complex that lie in the star.
    pub simplices: Vec<Simplex>,
    /// Sorted boundary vertices.
    pub boundary: Vec<usize>,
}

impl Star {
    pub(super) fn build(c: &SimplicialComplex, v: usize, k: usize) -> Self {
        let mut inner: BTreeSet<usize> = BTreeSet::from([v]);
        let mut vertices = inner.clone();
        let mut simplex_ids: BTreeSet<usize> = BTreeSet::new();
        for _ in 0..k {
            inner = vertices.clone();
            for &u in &inner {
                simplex_ids.extend(c.maximal_containing(u).iter().copied());
            }
            for &id in &simplex_ids {
                vertices.extend(c.maximal_simplices()[id].iter().copied());
            }
        }
        let boundary = vertices.difference(&inner).copied().collect();
        Star {
            center: v,
            radius: k,
            vertices: vertices.into_iter().collect(),
            simplices: simplex_ids
                .into_iter()
                .map(|id| c.maximal_simplices()[id].clone())
                .collect(),
            boundary,
        }
    }

    pub fn contains_vertex(&self, u: usize) -> bool {
        self.vertices.binary_search(&u).is_ok()
    }
}
