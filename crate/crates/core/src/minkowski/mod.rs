//! Minkowski space `ℝ^p_q`, simplicial maps into it, and the squared induced
//! metric map `φ` with its Jacobian.

mod freeness;
mod jacobian;
mod sample;

use std::ops::Deref;
use std::sync::Arc;

pub use freeness::{general_position, EdgeIndependence, GENERAL_POSITION_LIMIT};
pub use jacobian::PhiJacobian;
pub use sample::random_map;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    #[inline]
    pub fn value<T: Scalar>(self) -> T {
        match self {
            Sign::Plus => T::one(),
            Sign::Minus => -T::one(),
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// Sign vector `σ ∈ {±1}^N` defining `<x, y> = Σ σ(i) x_i y_i`.
///
/// The plus and minus coordinates need not be contiguous.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Signature {
    signs: Vec<Sign>,
}

impl Signature {
    pub fn new(signs: Vec<Sign>) -> Self {
        Self { signs }
    }

    /// `𝔼^n`: all plus.
    pub fn euclidean(n: usize) -> Self {
        Self::split(n, 0)
    }

    /// `p` plus signs followed by `q` minus signs.
    pub fn split(p: usize, q: usize) -> Self {
        let mut signs = vec![Sign::Plus; p];
        signs.resize(p + q, Sign::Minus);
        Self { signs }
    }

    /// Parses a `±1` vector.
    pub fn from_i8(values: &[i8]) -> Result<Self> {
        values
            .iter()
            .map(|&s| match s {
                1 => Ok(Sign::Plus),
                -1 => Ok(Sign::Minus),
                _ => Err(Error::InvalidOption(format!("sign entry {s} is not ±1"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn to_i8(&self) -> Vec<i8> {
        self.signs.iter().map(|s| s.as_i8()).collect()
    }

    pub fn dim(&self) -> usize {
        self.signs.len()
    }

    pub fn p(&self) -> usize {
        self.signs.iter().filter(|&&s| s == Sign::Plus).count()
    }

    pub fn q(&self) -> usize {
        self.dim() - self.p()
    }

    /// Sign vector of a concatenated space: `self` first.
    pub fn concat(&self, other: &Signature) -> Signature {
        let mut signs = self.signs.clone();
        signs.extend_from_slice(&other.signs);
        Signature { signs }
    }
}

/// Minkowski inner product `Σ σ(i) x_i y_i`.
pub fn inner<T: Scalar>(x: &[T], y: &[T], sig: &Signature) -> Result<T> {
    for len in [x.len(), y.len()] {
        if len != sig.dim() {
            return Err(Error::LengthMismatch {
                expected: sig.dim(),
                got: len,
            });
        }
    }
    Ok(inner_unchecked(x, y, sig))
}

#[inline]
pub(crate) fn inner_unchecked<T: Scalar>(x: &[T], y: &[T], sig: &Signature) -> T {
    x.iter()
        .zip(y)
        .zip(&sig.signs)
        .fold(T::zero(), |acc, ((&a, &b), s)| match s {
            Sign::Plus => acc + a * b,
            Sign::Minus => acc - a * b,
        })
}

/// Minkowski squared norm of `x - y`.
#[inline]
pub(crate) fn diff_square<T: Scalar>(x: &[T], y: &[T], sig: &Signature) -> T {
    x.iter()
        .zip(y)
        .zip(&sig.signs)
        .fold(T::zero(), |acc, ((&a, &b), s)| {
            let d = a - b;
            match s {
                Sign::Plus => acc + d * d,
                Sign::Minus => acc - d * d,
            }
        })
}

/// An element of `Met(X) ≅ ℝ^{|E|}`, indexed like the complex's edges.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricVector<T>(Vec<T>);

impl<T: Scalar> MetricVector<T> {
    pub fn new(values: Vec<T>) -> Self {
        Self(values)
    }

    pub fn into_inner(self) -> Vec<T> {
        self.0
    }

    /// `‖self − other‖_∞` together with the index attaining it.
    pub fn max_abs_diff(&self, other: &[T]) -> (T, usize) {
        self.0
            .iter()
            .zip(other)
            .enumerate()
            .fold((T::zero(), 0), |(best, at), (k, (&a, &b))| {
                let d = (a - b).abs();
                if d > best {
                    (d, k)
                } else {
                    (best, at)
                }
            })
    }
}

impl<T> Deref for MetricVector<T> {
    type Target = [T];

    fn deref(&self) -> &[T] {
        &self.0
    }
}

/// A simplicial map `X → ℝ^p_q`, stored as one coordinate row per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplicialMap<T> {
    complex: Arc<SimplicialComplex>,
    signature: Signature,
    coords: Vec<T>,
}

impl<T: Scalar> SimplicialMap<T> {
    /// `coords` is row-major: vertex `v` occupies `coords[v·N .. (v+1)·N]`.
    pub fn new(complex: Arc<SimplicialComplex>, signature: Signature, coords: Vec<T>) -> Result<Self> {
        let expected = complex.vertex_count() * signature.dim();
        if coords.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                got: coords.len(),
            });
        }
        if let Some(x) = coords.iter().find(|x| !x.is_finite()) {
            return Err(Error::NonFiniteScalar(x.to_f64_lossy()));
        }
        Ok(Self {
            complex,
            signature,
            coords,
        })
    }

    /// Builds a map from per-vertex points.
    pub fn from_points(
        complex: Arc<SimplicialComplex>,
        signature: Signature,
        points: &[Vec<T>],
    ) -> Result<Self> {
        if points.len() != complex.vertex_count() {
            return Err(Error::LengthMismatch {
                expected: complex.vertex_count(),
                got: points.len(),
            });
        }
        let mut coords = Vec::with_capacity(points.len() * signature.dim());
        for p in points {
            if p.len() != signature.dim() {
                return Err(Error::LengthMismatch {
                    expected: signature.dim(),
                    got: p.len(),
                });
            }
            coords.extend_from_slice(p);
        }
        Self::new(complex, signature, coords)
    }

    /// Every vertex sent to the origin.
    pub fn zero(complex: Arc<SimplicialComplex>, signature: Signature) -> Self {
        let coords = vec![T::zero(); complex.vertex_count() * signature.dim()];
        Self {
            complex,
            signature,
            coords,
        }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn complex_arc(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    /// Ambient dimension `p + q`.
    pub fn dim(&self) -> usize {
        self.signature.dim()
    }

    pub fn point(&self, v: usize) -> &[T] {
        let n = self.dim();
        &self.coords[v * n..(v + 1) * n]
    }

    pub fn points(&self) -> impl Iterator<Item = &[T]> {
        (0..self.complex.vertex_count()).map(|v| self.point(v))
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub(crate) fn coords_mut(&mut self) -> &mut [T] {
        &mut self.coords
    }

    pub fn same_complex(&self, other: &SimplicialMap<T>) -> bool {
        Arc::ptr_eq(&self.complex, &other.complex) || self.complex == other.complex
    }

    /// The squared induced metric `φ(f)(e_ij) = <f(v_i) − f(v_j), f(v_i) − f(v_j)>`.
    pub fn phi(&self) -> MetricVector<T> {
        MetricVector(
            self.complex
                .edges()
                .iter()
                .map(|&(i, j)| diff_square(self.point(i), self.point(j), &self.signature))
                .collect(),
        )
    }

    /// Jacobian of `φ` at this map.
    pub fn jacobian(&self) -> PhiJacobian<T> {
        PhiJacobian::at(self)
    }

    /// Concatenation `f ⊕ h`; `φ(f ⊕ h) = φ(f) + φ(h)`.
    pub fn concat(&self, other: &SimplicialMap<T>) -> Result<SimplicialMap<T>> {
        if !self.same_complex(other) {
            return Err(Error::ComplexMismatch);
        }
        let (a, b) = (self.dim(), other.dim());
        let mut coords = Vec::with_capacity(self.complex.vertex_count() * (a + b));
        for v in 0..self.complex.vertex_count() {
            coords.extend_from_slice(self.point(v));
            coords.extend_from_slice(other.point(v));
        }
        Ok(SimplicialMap {
            complex: Arc::clone(&self.complex),
            signature: self.signature.concat(&other.signature),
            coords,
        })
    }

    /// `λ f`; `φ(λ f) = λ² φ(f)`.
    pub fn scale(&self, lambda: T) -> Result<SimplicialMap<T>> {
        if !lambda.is_finite() {
            return Err(Error::NonFiniteScalar(lambda.to_f64_lossy()));
        }
        let mut out = self.clone();
        out.coords.iter_mut().for_each(|x| *x *= lambda);
        Ok(out)
    }

    /// Shifts every vertex so that vertex `v` lands on the origin.
    pub fn centered_at(&self, v: usize) -> SimplicialMap<T> {
        let origin = self.point(v).to_vec();
        let mut out = self.clone();
        let n = self.dim();
        for chunk in out.coords.chunks_mut(n.max(1)) {
            for (x, o) in chunk.iter_mut().zip(&origin) {
                *x -= *o;
            }
        }
        out
    }

    /// Same coordinates read under a different sign vector of equal length.
    pub fn with_signature(&self, signature: Signature) -> Result<SimplicialMap<T>> {
        if signature.dim() != self.dim() {
            return Err(Error::LengthMismatch {
                expected: self.dim(),
                got: signature.dim(),
            });
        }
        Ok(SimplicialMap {
            complex: Arc::clone(&self.complex),
            signature,
            coords: self.coords.clone(),
        })
    }

    /// Restriction to the coordinate range `start..start + len`.
    pub fn block(&self, start: usize, len: usize) -> SimplicialMap<T> {
        let n = self.dim();
        let mut coords = Vec::with_capacity(self.complex.vertex_count() * len);
        for v in 0..self.complex.vertex_count() {
            coords.extend_from_slice(&self.coords[v * n + start..v * n + start + len]);
        }
        SimplicialMap {
            complex: Arc::clone(&self.complex),
            signature: Signature::new(self.signature.signs[start..start + len].to_vec()),
            coords,
        }
    }

    /// Per-vertex test of whether the incident edge vectors are linearly
    /// independent, with singular values below `rel_tol · σ_max` counted as zero.
    pub fn edge_independence(&self, rel_tol: T) -> EdgeIndependence<T> {
        EdgeIndependence::of(self, rel_tol)
    }
}
