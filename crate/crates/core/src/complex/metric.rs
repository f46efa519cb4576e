use crate::error::{Error, Result};
use crate::scalar::{signed_sqrt, signed_square, Scalar};

use super::SimplicialComplex;

/// How the user supplied the edge values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputMode {
    /// Signed lengths `g`; stored after applying the signed square.
    Lengths,
    /// Squared values `g²` stored verbatim.
    Squared,
}

/// An indefinite metric: one arbitrary real per edge.
///
/// Stored canonically as `g² = s(g)` in edge-index order, since every
/// downstream formula consumes the squared values only.
#[derive(Debug, Clone, PartialEq)]
pub struct IndefiniteMetric<T> {
    squared: Vec<T>,
    mode: InputMode,
}

impl<T: Scalar> IndefiniteMetric<T> {
    /// Metric from signed lengths given per edge as `(i, j, length)`.
    pub fn from_lengths(
        c: &SimplicialComplex,
        entries: impl IntoIterator<Item = (usize, usize, T)>,
    ) -> Result<Self> {
        let lengths = collect_entries(c, entries)?;
        Ok(Self {
            squared: lengths.into_iter().map(signed_square).collect(),
            mode: InputMode::Lengths,
        })
    }

    /// Metric from squared values given per edge as `(i, j, g²)`.
    pub fn from_squares(
        c: &SimplicialComplex,
        entries: impl IntoIterator<Item = (usize, usize, T)>,
    ) -> Result<Self> {
        Ok(Self {
            squared: collect_entries(c, entries)?,
            mode: InputMode::Squared,
        })
    }

    /// Squared values listed in edge-index order.
    pub fn from_squared_vec(c: &SimplicialComplex, squared: Vec<T>) -> Result<Self> {
        check_vec(c, &squared)?;
        Ok(Self {
            squared,
            mode: InputMode::Squared,
        })
    }

    /// Signed lengths listed in edge-index order.
    pub fn from_length_vec(c: &SimplicialComplex, lengths: Vec<T>) -> Result<Self> {
        check_vec(c, &lengths)?;
        Ok(Self {
            squared: lengths.into_iter().map(signed_square).collect(),
            mode: InputMode::Lengths,
        })
    }

    /// Every edge gets the same signed length.
    pub fn uniform_length(c: &SimplicialComplex, length: T) -> Self {
        Self {
            squared: vec![signed_square(length); c.edge_count()],
            mode: InputMode::Lengths,
        }
    }

    pub fn squared(&self) -> &[T] {
        &self.squared
    }

    pub fn into_squared(self) -> Vec<T> {
        self.squared
    }

    pub fn get(&self, edge: usize) -> T {
        self.squared[edge]
    }

    pub fn len(&self) -> usize {
        self.squared.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squared.is_empty()
    }

    pub fn input_mode(&self) -> InputMode {
        self.mode
    }

    /// Signed lengths `g` recovered by inverting the signed square.
    pub fn signed_lengths(&self) -> Vec<T> {
        self.squared.iter().copied().map(signed_sqrt).collect()
    }

    /// `‖g²‖_∞`.
    pub fn sup_norm(&self) -> T {
        self.squared.iter().fold(T::zero(), |acc, x| acc.max(x.abs()))
    }
}

fn check_vec<T: Scalar>(c: &SimplicialComplex, values: &[T]) -> Result<()> {
    if values.len() != c.edge_count() {
        return Err(Error::LengthMismatch {
            expected: c.edge_count(),
            got: values.len(),
        });
    }
    for (k, &x) in values.iter().enumerate() {
        if !x.is_finite() {
            let (i, j) = c.edges()[k];
            return Err(Error::NonFiniteValue {
                i,
                j,
                value: x.to_f64_lossy(),
            });
        }
    }
    Ok(())
}

fn collect_entries<T: Scalar>(
    c: &SimplicialComplex,
    entries: impl IntoIterator<Item = (usize, usize, T)>,
) -> Result<Vec<T>> {
    let mut slots: Vec<Option<T>> = vec![None; c.edge_count()];
    for (i, j, x) in entries {
        let e = c.edge_index(i, j).ok_or(Error::UnknownEdge(i, j))?;
        if !x.is_finite() {
            return Err(Error::NonFiniteValue {
                i,
                j,
                value: x.to_f64_lossy(),
            });
        }
        if slots[e].replace(x).is_some() {
            return Err(Error::DuplicateEdgeValue(i.min(j), i.max(j)));
        }
    }
    slots
        .into_iter()
        .enumerate()
        .map(|(e, x)| {
            let (i, j) = c.edges()[e];
            x.ok_or(Error::MissingEdgeValue(i, j))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> SimplicialComplex {
        SimplicialComplex::from_simplices(&[[0, 1, 2]]).unwrap()
    }

    #[test]
    fn negative_length_squares_negative() {
        let c = SimplicialComplex::from_simplices(&[[0, 1]]).unwrap();
        let m = IndefiniteMetric::from_lengths(&c, [(1, 0, -3.0)]).unwrap();
        assert_eq!(m.squared(), &[-9.0]);
        let m = IndefiniteMetric::from_lengths(&c, [(0, 1, 0.0)]).unwrap();
        assert_eq!(m.squared(), &[0.0]);
    }

    #[test]
    fn long_edge_triangle() {
        let m =
            IndefiniteMetric::from_lengths(&triangle(), [(0, 1, 1.0), (0, 2, 1.0), (1, 2, 100.0)]).unwrap();
        assert_eq!(m.squared(), &[1.0, 1.0, 10000.0]);
        assert_eq!(m.input_mode(), InputMode::Lengths);
        assert_eq!(m.sup_norm(), 10000.0);
    }

    #[test]
    fn squares_pass_through() {
        let m =
            IndefiniteMetric::from_squares(&triangle(), [(0, 1, -2.5), (0, 2, 0.0), (1, 2, 7.0)]).unwrap();
        assert_eq!(m.squared(), &[-2.5, 0.0, 7.0]);
    }

    #[test]
    fn entry_errors() {
        let c = triangle();
        assert_eq!(
            IndefiniteMetric::from_lengths(&c, [(0, 1, 1.0), (0, 2, 1.0)]),
            Err(Error::MissingEdgeValue(1, 2))
        );
        assert_eq!(
            IndefiniteMetric::from_lengths(&c, [(0, 3, 1.0)]),
            Err(Error::UnknownEdge(0, 3))
        );
        assert!(matches!(
            IndefiniteMetric::from_lengths(&c, [(0, 1, f64::NAN), (0, 2, 1.0), (1, 2, 1.0)]),
            Err(Error::NonFiniteValue { i: 0, j: 1, .. })
        ));
        assert_eq!(
            IndefiniteMetric::from_squares(&c, [(0, 1, 1.0), (1, 0, 1.0)]),
            Err(Error::DuplicateEdgeValue(0, 1))
        );
        assert!(IndefiniteMetric::<f64>::from_squared_vec(&c, vec![1.0]).is_err());
    }

    #[test]
    fn lengths_round_trip() {
        let c = triangle();
        let lengths = vec![-3.25, 0.0, 12.5];
        let m = IndefiniteMetric::from_length_vec(&c, lengths.clone()).unwrap();
        assert_eq!(m.signed_lengths(), lengths);
    }
}
