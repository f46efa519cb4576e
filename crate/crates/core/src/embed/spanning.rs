//! Spanning metrics: one linear solve instead of a Newton walk.
//!
//! The induced metrics `((x_i − x_j)²)_e` of random one-dimensional maps
//! span `Met(X)`: a relation `Σ c_e (x_i − x_j)² ≡ 0` in the `x` variables
//! forces every `c_e` to vanish. So `|E|` such maps `h_k` form a basis, and
//! `g² − φ(f) = Σ α_k φ(h_k)` has a unique solution. Each `h_k` is then
//! scaled by `√|α_k|` and placed on a `+` or `−` coordinate by the sign of
//! `α_k`.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{IndefiniteMetric, SimplicialComplex};
use crate::error::{Error, Result};
use crate::minkowski::{random_map, Sign, Signature, SimplicialMap};
use crate::scalar::Scalar;
use crate::verify::verify_simplicial_embedding;

/// Families whose induced matrix has a larger condition number are redrawn.
pub const CONDITION_LIMIT: f64 = 1e12;

/// One-dimensional maps whose induced metrics form a basis of `Met(X)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpanningFamily<T> {
    pub maps: Vec<SimplicialMap<T>>,
    /// `|E| × |E|`, column `k` is `φ(h_k)`.
    pub induced: DMatrix<T>,
    /// Ratio of extreme singular values of `induced`.
    pub condition: T,
    /// Candidates sampled, including rejected ones.
    pub draws: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpanningOptions<T> {
    pub seed: u64,
    /// Signs of the `2n + 1` base coordinates; all `+` when `None`.
    pub base_signs: Option<Vec<Sign>>,
    /// Omit blocks whose coefficient is exactly zero.
    pub drop_zero_blocks: bool,
    pub box_half_width: T,
    pub start_retries: usize,
    /// How many times an ill-conditioned family may be redrawn.
    pub family_retries: usize,
}

impl<T: Scalar> Default for SpanningOptions<T> {
    fn default() -> Self {
        Self {
            seed: 0,
            base_signs: None,
            drop_zero_blocks: false,
            box_half_width: T::one(),
            start_retries: 100,
            family_retries: 10,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpanningSolution<T> {
    /// Embedding into `𝔼^{2n+1}` (or the user's base signature).
    pub base_map: SimplicialMap<T>,
    pub family: SpanningFamily<T>,
    /// Coefficients with `g² − φ(f) = Σ α_k φ(h_k)`.
    pub alphas: Vec<T>,
    /// Family indices in output block order: `α ≥ 0` first, then `α < 0`.
    pub block_order: Vec<usize>,
    pub p: usize,
    pub q: usize,
    /// `‖φ(z) − g²‖_∞`.
    pub residual: T,
}

/// Greedily accumulates one-dimensional maps until their induced metrics
/// have rank `|E|`.
pub fn spanning_family<T: Scalar, R: Rng + ?Sized>(
    complex: &Arc<SimplicialComplex>,
    rng: &mut R,
) -> Result<SpanningFamily<T>> {
    let e = complex.edge_count();
    if e == 0 {
        return Err(Error::EmptyInput("edges"));
    }
    let budget = 100 * e;
    let accept = T::rank_tol().sqrt();
    let mut basis: Vec<DVector<T>> = Vec::with_capacity(e);
    let mut maps = Vec::with_capacity(e);
    let mut draws = 0;
    while maps.len() < e {
        if draws == budget {
            return Err(Error::RetriesExhausted(budget));
        }
        draws += 1;
        let h = random_map(Arc::clone(complex), Signature::euclidean(1), rng, T::one());
        let phi = DVector::from_vec(h.phi().into_inner());
        let norm = phi.norm();
        if norm == T::zero() {
            continue;
        }
        // Two passes of Gram–Schmidt against the accepted directions.
        let mut res = phi;
        for _ in 0..2 {
            for b in &basis {
                let c = b.dot(&res);
                res.axpy(-c, b, T::one());
            }
        }
        let rn = res.norm();
        if rn > accept * norm {
            basis.push(res / rn);
            maps.push(h);
        }
    }
    let induced = DMatrix::from_fn(e, e, |r, k| maps[k].phi()[r]);
    let sv = crate::linalg::singular_values(&induced);
    let low = sv.last().copied().unwrap_or_else(T::zero);
    let condition = if low > T::zero() {
        sv[0] / low
    } else {
        T::max_value().unwrap_or_else(T::one)
    };
    Ok(SpanningFamily {
        maps,
        induced,
        condition,
        draws,
    })
}

/// Solves `φ(z) = g²` for `z` into `ℝ^p_q` with `p + q = 2n + 1 + |E|`.
pub fn solve_spanning<T: Scalar>(
    complex: &Arc<SimplicialComplex>,
    metric: &IndefiniteMetric<T>,
    opts: &SpanningOptions<T>,
) -> Result<(SimplicialMap<T>, SpanningSolution<T>)> {
    if metric.len() != complex.edge_count() {
        return Err(Error::ComplexMismatch);
    }
    if !opts.box_half_width.is_positive() {
        return Err(Error::InvalidOption("box half-width must be positive".into()));
    }
    let base_dim = 2 * complex.dimension() + 1;
    let base_sig = match &opts.base_signs {
        Some(signs) if signs.len() != base_dim => {
            return Err(Error::InvalidOption(format!(
                "base signature needs {base_dim} signs, got {}",
                signs.len()
            )))
        }
        Some(signs) => Signature::new(signs.clone()),
        None => Signature::euclidean(base_dim),
    };

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let f = base_embedding(complex, &base_sig, &mut rng, opts)?;
    let rhs: Vec<T> = metric
        .squared()
        .iter()
        .zip(f.phi().iter())
        .map(|(&g, &p)| g - p)
        .collect();

    if complex.edge_count() == 0 {
        let p = base_sig.p();
        let q = base_sig.q();
        let solution = SpanningSolution {
            base_map: f.clone(),
            family: SpanningFamily {
                maps: Vec::new(),
                induced: DMatrix::zeros(0, 0),
                condition: T::one(),
                draws: 0,
            },
            alphas: Vec::new(),
            block_order: Vec::new(),
            p,
            q,
            residual: T::zero(),
        };
        return Ok((f, solution));
    }

    let family = draw_family(complex, &mut rng, opts.family_retries)?;
    let alphas = family
        .induced
        .clone()
        .svd(true, true)
        .solve(&DVector::from_vec(rhs), T::zero())
        .map_err(|e| Error::SolverDiverged(e.to_string()))?
        .as_slice()
        .to_vec();

    let keep = |a: T| !(opts.drop_zero_blocks && a == T::zero());
    let plus: Vec<usize> = (0..alphas.len())
        .filter(|&k| alphas[k] >= T::zero() && keep(alphas[k]))
        .collect();
    let minus: Vec<usize> = (0..alphas.len()).filter(|&k| alphas[k] < T::zero()).collect();
    let block_order: Vec<usize> = plus.iter().chain(&minus).copied().collect();

    let mut z = f.clone();
    for &k in &block_order {
        let sign = if alphas[k] < T::zero() {
            Signature::split(0, 1)
        } else {
            Signature::euclidean(1)
        };
        let block = family.maps[k]
            .scale(alphas[k].abs().sqrt())?
            .with_signature(sign)?;
        z = z.concat(&block)?;
    }
    let (residual, _) = z.phi().max_abs_diff(metric.squared());
    let p = base_sig.p() + plus.len();
    let q = base_sig.q() + minus.len();
    let solution = SpanningSolution {
        base_map: f,
        family,
        alphas,
        block_order,
        p,
        q,
        residual,
    };
    Ok((z, solution))
}

fn base_embedding<T: Scalar>(
    complex: &Arc<SimplicialComplex>,
    sig: &Signature,
    rng: &mut ChaCha8Rng,
    opts: &SpanningOptions<T>,
) -> Result<SimplicialMap<T>> {
    for _ in 0..=opts.start_retries {
        let f = random_map(Arc::clone(complex), sig.clone(), rng, opts.box_half_width);
        if verify_simplicial_embedding(&f, T::rank_tol()).passed {
            return Ok(f);
        }
    }
    Err(Error::RetriesExhausted(opts.start_retries))
}

fn draw_family<T: Scalar>(
    complex: &Arc<SimplicialComplex>,
    rng: &mut ChaCha8Rng,
    retries: usize,
) -> Result<SpanningFamily<T>> {
    let mut last = 0.0;
    for _ in 0..=retries {
        let family = spanning_family::<T, _>(complex, rng)?;
        last = family.condition.to_f64_lossy();
        if last <= CONDITION_LIMIT {
            return Ok(family);
        }
    }
    Err(Error::SingularFamily(last))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::numerical_rank;
    use crate::verify::verify_isometry;

    fn complete_graph(n: usize) -> Arc<SimplicialComplex> {
        let pairs: Vec<[usize; 2]> = (0..n).flat_map(|i| (i + 1..n).map(move |j| [i, j])).collect();
        Arc::new(SimplicialComplex::from_simplices(&pairs).unwrap())
    }

    #[test]
    fn family_ranks() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let edge = complete_graph(2);
        let fam = spanning_family::<f64, _>(&edge, &mut rng).unwrap();
        assert_eq!(fam.maps.len(), 1);
        assert_ne!(fam.maps[0].point(0), fam.maps[0].point(1));
        for n in [3, 5] {
            let c = complete_graph(n);
            let fam = spanning_family::<f64, _>(&c, &mut rng).unwrap();
            let e = c.edge_count();
            assert_eq!(fam.maps.len(), e);
            assert_eq!(numerical_rank(&fam.induced, 1e-9), e);
            for (k, h) in fam.maps.iter().enumerate() {
                assert_eq!(fam.induced.column(k).as_slice(), h.phi().as_ref());
            }
        }
    }

    #[test]
    fn edgeless_family_is_rejected() {
        let c = Arc::new(SimplicialComplex::new(2, &[[0], [1]]).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(
            spanning_family::<f64, _>(&c, &mut rng).unwrap_err(),
            Error::EmptyInput("edges")
        );
    }

    #[test]
    fn wide_triangle() {
        let c = complete_graph(3);
        let m = IndefiniteMetric::from_lengths(&c, [(0, 1, 1.0), (0, 2, 1.0), (1, 2, 100.0)]).unwrap();
        let (z, sol) = solve_spanning(&c, &m, &SpanningOptions::default()).unwrap();
        assert_eq!(sol.p + sol.q, 6);
        assert!(sol.p >= 3);
        assert_eq!(z.signature().p(), sol.p);
        assert!(verify_isometry(&z, &m, 1e-8).unwrap().passed);
        assert!(verify_simplicial_embedding(&z, 1e-9).passed);
    }

    #[test]
    fn k5_unit_edges() {
        let c = complete_graph(5);
        let m = IndefiniteMetric::uniform_length(&c, 1.0);
        let (z, sol) = solve_spanning(&c, &m, &SpanningOptions::default()).unwrap();
        assert_eq!(z.dim(), 13);
        assert!(sol.residual <= 1e-8);
    }

    #[test]
    fn decomposition_identity() {
        let c = complete_graph(4);
        let m = IndefiniteMetric::from_squared_vec(&c, vec![3.0, -1.0, 0.5, 7.0, -9.0, 2.0]).unwrap();
        let (z, sol) = solve_spanning(&c, &m, &SpanningOptions::default()).unwrap();
        let base = sol.base_map.phi();
        let phi_z = z.phi();
        for e in 0..c.edge_count() {
            let sum: f64 = (0..c.edge_count())
                .map(|k| sol.alphas[k] * sol.family.induced[(e, k)])
                .sum();
            let expected = base[e] + sum;
            assert!((phi_z[e] - expected).abs() <= 1e-9 * expected.abs().max(1.0));
            assert!((m.get(e) - expected).abs() <= 1e-8 * m.sup_norm());
        }
    }

    #[test]
    fn self_consistent_metric_has_zero_alphas() {
        let c = complete_graph(3);
        let probe = IndefiniteMetric::uniform_length(&c, 1.0);
        let opts = SpanningOptions {
            seed: 9,
            ..SpanningOptions::default()
        };
        let (_, first) = solve_spanning(&c, &probe, &opts).unwrap();
        let own = IndefiniteMetric::from_squared_vec(&c, first.base_map.phi().into_inner()).unwrap();
        let (z, sol) = solve_spanning(&c, &own, &opts).unwrap();
        assert!(sol.alphas.iter().all(|&a| a == 0.0));
        assert_eq!((sol.p, sol.q), (6, 0));
        assert_eq!(z.dim(), 6);

        let dropping = SpanningOptions {
            drop_zero_blocks: true,
            ..opts
        };
        let (z, sol) = solve_spanning(&c, &own, &dropping).unwrap();
        assert_eq!((sol.p, sol.q, z.dim()), (3, 0, 3));
    }

    #[test]
    fn user_base_signs() {
        let c = complete_graph(3);
        let m = IndefiniteMetric::uniform_length(&c, -2.0);
        let opts = SpanningOptions {
            base_signs: Some(vec![Sign::Plus, Sign::Minus, Sign::Minus]),
            ..SpanningOptions::default()
        };
        let (z, sol) = solve_spanning(&c, &m, &opts).unwrap();
        assert_eq!(
            &z.signature().signs()[..3],
            &[Sign::Plus, Sign::Minus, Sign::Minus]
        );
        assert_eq!(sol.p + sol.q, 6);
        assert!(sol.residual <= 1e-8);
        let bad = SpanningOptions {
            base_signs: Some(vec![Sign::Plus]),
            ..SpanningOptions::default()
        };
        assert!(matches!(
            solve_spanning(&c, &m, &bad),
            Err(Error::InvalidOption(_))
        ));
    }

    #[test]
    fn edgeless_complex() {
        let c = Arc::new(SimplicialComplex::new(3, &[[0], [1], [2]]).unwrap());
        let m = IndefiniteMetric::<f64>::from_squared_vec(&c, vec![]).unwrap();
        let (z, sol) = solve_spanning(&c, &m, &SpanningOptions::default()).unwrap();
        assert_eq!((sol.p, sol.q, z.dim()), (1, 0, 1));
        assert!(verify_simplicial_embedding(&z, 1e-9).passed);
    }
}
