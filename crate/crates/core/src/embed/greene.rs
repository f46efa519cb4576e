//! Scaling plus Newton: isometric embeddings into `ℝ^q_q`.
//!
//! Start from a free Euclidean map `f`, so that `f ⊕ f` under the sign
//! vector `(+^q, −^q)` induces the zero metric and `dφ` is surjective there.
//! Shrink the target to `g²/λ²`, walk to it with minimum-norm Newton steps,
//! and scale the result back up by `λ`. When a walk fails, `λ` doubles,
//! which pulls the target closer to zero.

use std::sync::Arc;

use nalgebra::DVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::{IndefiniteMetric, SimplicialComplex};
use crate::error::{Error, Result};
use crate::minkowski::{random_map, Signature, SimplicialMap};
use crate::scalar::Scalar;

use super::Mode;

/// Sufficient-decrease constant for the backtracking line search.
const ARMIJO: f64 = 1e-4;
/// Smallest step fraction tried before a walk is declared stalled.
const MIN_STEP: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct GreeneOptions<T> {
    /// Relative residual tolerance: success means
    /// `‖φ(h) − g²‖_∞ ≤ tol · max(1, ‖g²‖_∞)`.
    pub tol: T,
    pub max_newton_iters: usize,
    pub max_lambda_doublings: usize,
    pub seed: u64,
    /// ChaCha stream selected after seeding, so that related solves can
    /// share a seed without sharing random draws.
    pub stream: u64,
    /// Half-width of the sampling box for the free start.
    pub box_half_width: T,
    pub mode: Mode,
    /// Overrides `q`; must be at least the mode's minimum.
    pub dimension: Option<usize>,
    /// Resampling budget for the free start.
    pub start_retries: usize,
}

impl<T: Scalar> Default for GreeneOptions<T> {
    fn default() -> Self {
        Self {
            tol: T::solver_tol(),
            max_newton_iters: 200,
            max_lambda_doublings: 60,
            seed: 0,
            stream: 0,
            box_half_width: T::one(),
            mode: Mode::Embedding,
            dimension: None,
            start_retries: 100,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GreeneReport<T> {
    pub q: usize,
    /// Final scale `λ`.
    pub lambda: T,
    /// Newton steps taken across all attempts.
    pub newton_iters: usize,
    /// Newton steps taken in the successful attempt.
    pub final_attempt_iters: usize,
    pub lambda_doublings: usize,
    /// Free-start samples rejected before one was accepted.
    pub start_retries: usize,
    /// `‖φ(h) − g²‖_∞` of the returned map.
    pub residual: T,
    /// Scaled residual `‖φ(x) − g²/λ²‖_∞` after each accepted step of the
    /// successful attempt, starting from the initial point.
    pub residual_history: Vec<T>,
}

/// Samples a map into `𝔼^q` whose incident edge vectors are independent at
/// every vertex and which passes the geometric check for `mode`.
///
/// Returns the map and the number of rejected samples.
pub fn free_euclidean_start<T: Scalar>(
    complex: &Arc<SimplicialComplex>,
    q: usize,
    mode: Mode,
    rng: &mut ChaCha8Rng,
    box_half_width: T,
    retries: usize,
) -> Result<(SimplicialMap<T>, usize)> {
    let needed = mode.min_dimension(complex.dimension(), complex.max_degree());
    if q < needed {
        return Err(Error::InsufficientDimension { needed, got: q });
    }
    for attempt in 0..=retries {
        let f = random_map(Arc::clone(complex), Signature::euclidean(q), rng, box_half_width);
        if f.edge_independence(T::rank_tol()).all && mode.check(&f, T::rank_tol()).passed {
            return Ok((f, attempt));
        }
    }
    Err(Error::RetriesExhausted(retries))
}

/// Solves `φ(h) = g²` for `h` into `ℝ^q_q`.
pub fn solve_greene<T: Scalar>(
    complex: &Arc<SimplicialComplex>,
    metric: &IndefiniteMetric<T>,
    opts: &GreeneOptions<T>,
) -> Result<(SimplicialMap<T>, GreeneReport<T>)> {
    validate(complex, metric, opts)?;
    let needed = opts.mode.min_dimension(complex.dimension(), complex.max_degree());
    let q = opts.dimension.unwrap_or(needed);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    rng.set_stream(opts.stream);
    let (f, start_retries) = free_euclidean_start(
        complex,
        q,
        opts.mode,
        &mut rng,
        opts.box_half_width,
        opts.start_retries,
    )?;
    let start = f.concat(&f)?.with_signature(Signature::split(q, q))?;

    let target = metric.squared();
    let scale = metric.sup_norm().max(T::one());
    let bound = opts.tol * scale;
    let mut lambda = metric.sup_norm().sqrt().max(T::one());
    let mut total_iters = 0;

    for doubling in 0..=opts.max_lambda_doublings {
        let lambda2 = lambda * lambda;
        let scaled: Vec<T> = target.iter().map(|&g| g / lambda2).collect();
        // Aim below the bound so that rescaling cannot push us over it.
        let inner_tol = bound / lambda2 * T::lit(0.5);
        let walk = newton_walk(&start, &scaled, inner_tol, opts.max_newton_iters);
        total_iters += walk.iters;
        if let Some(h) = walk.solution {
            let out = h.scale(lambda)?;
            let (residual, _) = out.phi().max_abs_diff(target);
            if residual <= bound && opts.mode.check(&out, T::rank_tol()).passed {
                let report = GreeneReport {
                    q,
                    lambda,
                    newton_iters: total_iters,
                    final_attempt_iters: walk.iters,
                    lambda_doublings: doubling,
                    start_retries,
                    residual,
                    residual_history: walk.history,
                };
                return Ok((out, report));
            }
        }
        lambda *= T::lit(2.0);
    }
    Err(Error::SolverDiverged(format!(
        "no convergence after {} doublings of the scale (final scale {})",
        opts.max_lambda_doublings, lambda
    )))
}

fn validate<T: Scalar>(
    complex: &SimplicialComplex,
    metric: &IndefiniteMetric<T>,
    opts: &GreeneOptions<T>,
) -> Result<()> {
    if metric.len() != complex.edge_count() {
        return Err(Error::ComplexMismatch);
    }
    if !opts.tol.is_positive() {
        return Err(Error::InvalidOption("tol must be positive".into()));
    }
    if opts.max_newton_iters == 0 {
        return Err(Error::InvalidOption("max_newton_iters must be positive".into()));
    }
    if !opts.box_half_width.is_positive() {
        return Err(Error::InvalidOption("box half-width must be positive".into()));
    }
    let needed = opts.mode.min_dimension(complex.dimension(), complex.max_degree());
    match opts.dimension {
        Some(q) if q < needed => Err(Error::InsufficientDimension { needed, got: q }),
        _ => Ok(()),
    }
}

struct Walk<T> {
    solution: Option<SimplicialMap<T>>,
    iters: usize,
    history: Vec<T>,
}

fn sup<T: Scalar>(r: &[T]) -> T {
    r.iter().fold(T::zero(), |m, &x| m.max(x.abs()))
}

fn residual<T: Scalar>(x: &SimplicialMap<T>, target: &[T]) -> Vec<T> {
    x.phi().iter().zip(target).map(|(&p, &t)| p - t).collect()
}

/// Damped minimum-norm Newton iteration from `start` towards `φ = target`.
fn newton_walk<T: Scalar>(start: &SimplicialMap<T>, target: &[T], tol: T, max_iters: usize) -> Walk<T> {
    let mut x = start.clone();
    let mut r = residual(&x, target);
    let mut history = vec![sup(&r)];
    let mut iters = 0;
    let failed = |iters, history| Walk {
        solution: None,
        iters,
        history,
    };
    loop {
        if sup(&r) <= tol {
            return Walk {
                solution: Some(x),
                iters,
                history,
            };
        }
        if iters == max_iters {
            return failed(iters, history);
        }
        let jac = x.jacobian();
        let Some(chol) = jac.normal_matrix().cholesky() else {
            return failed(iters, history);
        };
        let rhs = DVector::from_iterator(r.len(), r.iter().map(|&v| -v));
        let y = chol.solve(&rhs);
        let step = jac.transpose_mul(y.as_slice());

        let norm2 = r.iter().fold(T::zero(), |s, &v| s + v * v);
        let mut t = T::one();
        let accepted = loop {
            let mut trial = x.clone();
            for (c, d) in trial.coords_mut().iter_mut().zip(&step) {
                *c += t * *d;
            }
            let r_trial = residual(&trial, target);
            let trial2 = r_trial.iter().fold(T::zero(), |s, &v| s + v * v);
            // Along the Newton direction the squared residual falls at rate 2‖r‖².
            if trial2 <= (T::one() - T::lit(2.0 * ARMIJO) * t) * norm2 {
                break Some((trial, r_trial));
            }
            t *= T::lit(0.5);
            if t < T::lit(MIN_STEP) {
                break None;
            }
        };
        let Some((next, r_next)) = accepted else {
            return failed(iters, history);
        };
        iters += 1;
        x = next;
        r = r_next;
        history.push(sup(&r));
        if !x.edge_independence(T::rank_tol()).all {
            return failed(iters, history);
        }
    }
}
