use nalgebra::DMatrix;

use crate::complex::Edge;
use crate::scalar::Scalar;

use super::{Sign, SimplicialMap};

/// Jacobian of `φ` at a map `f`, stored by vertex blocks.
///
/// Row `e = (i, j)` is zero except at block `i`, which holds
/// `2σ ⊙ (f(v_i) − f(v_j))`, and block `j`, which holds its negative.
/// Columns are ordered vertex-major: column `v·N + k` is `∂/∂f_k(v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiJacobian<T> {
    dim: usize,
    vertex_count: usize,
    edges: Vec<Edge>,
    blocks: Vec<T>,
}

impl<T: Scalar> PhiJacobian<T> {
    pub(super) fn at(f: &SimplicialMap<T>) -> Self {
        let dim = f.dim();
        let two = T::lit(2.0);
        let edges = f.complex().edges().to_vec();
        let mut blocks = Vec::with_capacity(edges.len() * dim);
        for &(i, j) in &edges {
            for ((&a, &b), s) in f.point(i).iter().zip(f.point(j)).zip(f.signature().signs()) {
                let d = two * (a - b);
                blocks.push(match s {
                    Sign::Plus => d,
                    Sign::Minus => -d,
                });
            }
        }
        Self {
            dim,
            vertex_count: f.complex().vertex_count(),
            edges,
            blocks,
        }
    }

    pub fn rows(&self) -> usize {
        self.edges.len()
    }

    pub fn cols(&self) -> usize {
        self.dim * self.vertex_count
    }

    /// The block at the lower-index endpoint of edge `e`.
    pub fn block(&self, e: usize) -> &[T] {
        &self.blocks[e * self.dim..(e + 1) * self.dim]
    }

    pub fn to_dense(&self) -> DMatrix<T> {
        let mut m = DMatrix::zeros(self.rows(), self.cols());
        for (e, &(i, j)) in self.edges.iter().enumerate() {
            for (k, &b) in self.block(e).iter().enumerate() {
                m[(e, i * self.dim + k)] = b;
                m[(e, j * self.dim + k)] = -b;
            }
        }
        m
    }

    /// `J x` for a column vector `x` of length `cols()`.
    pub fn mul(&self, x: &[T]) -> Vec<T> {
        debug_assert_eq!(x.len(), self.cols());
        let n = self.dim;
        self.edges
            .iter()
            .enumerate()
            .map(|(e, &(i, j))| {
                self.block(e)
                    .iter()
                    .enumerate()
                    .fold(T::zero(), |acc, (k, &b)| acc + b * (x[i * n + k] - x[j * n + k]))
            })
            .collect()
    }

    /// `Jᵀ y` for a row-space vector `y` of length `rows()`.
    pub fn transpose_mul(&self, y: &[T]) -> Vec<T> {
        debug_assert_eq!(y.len(), self.rows());
        let n = self.dim;
        let mut out = vec![T::zero(); self.cols()];
        for (e, &(i, j)) in self.edges.iter().enumerate() {
            for (k, &b) in self.block(e).iter().enumerate() {
                let w = b * y[e];
                out[i * n + k] += w;
                out[j * n + k] -= w;
            }
        }
        out
    }

    /// `J Jᵀ`, assembled from shared endpoints only.
    pub fn normal_matrix(&self) -> DMatrix<T> {
        let m = self.rows();
        let mut out = DMatrix::zeros(m, m);
        let mut by_vertex: Vec<Vec<(usize, bool)>> = vec![Vec::new(); self.vertex_count];
        for (e, &(i, j)) in self.edges.iter().enumerate() {
            by_vertex[i].push((e, true));
            by_vertex[j].push((e, false));
        }
        for incident in &by_vertex {
            for &(a, a_low) in incident {
                for &(b, b_low) in incident {
                    let dot = self
                        .block(a)
                        .iter()
                        .zip(self.block(b))
                        .fold(T::zero(), |acc, (&x, &y)| acc + x * y);
                    out[(a, b)] += if a_low == b_low { dot } else { -dot };
                }
            }
        }
        out
    }
}
