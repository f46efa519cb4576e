use std::sync::Arc;

use rand::Rng;

use crate::complex::SimplicialComplex;
use crate::scalar::Scalar;

use super::{Signature, SimplicialMap};

/// Samples every vertex coordinate i.i.d. uniform in `[−half_width, half_width]`.
///
/// Draws are taken in `f64` so a given RNG state yields the same map for
/// every scalar type. `half_width = 0` gives the zero map.
pub fn random_map<T: Scalar, R: Rng + ?Sized>(
    complex: Arc<SimplicialComplex>,
    signature: Signature,
    rng: &mut R,
    half_width: T,
) -> SimplicialMap<T> {
    let n = complex.vertex_count() * signature.dim();
    let w = half_width.abs();
    let coords = (0..n).map(|_| T::lit(rng.gen_range(-1.0..=1.0)) * w).collect();
    SimplicialMap::new(complex, signature, coords).expect("sampled coordinates are finite")
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn k5() -> Arc<SimplicialComplex> {
        let pairs: Vec<[usize; 2]> = (0..5).flat_map(|i| (i + 1..5).map(move |j| [i, j])).collect();
        Arc::new(SimplicialComplex::from_simplices(&pairs).unwrap())
    }

    #[test]
    fn deterministic_per_seed() {
        let a = random_map(
            k5(),
            Signature::euclidean(4),
            &mut ChaCha8Rng::seed_from_u64(9),
            1.0,
        );
        let b = random_map(
            k5(),
            Signature::euclidean(4),
            &mut ChaCha8Rng::seed_from_u64(9),
            1.0,
        );
        assert_eq!(a, b);
        let c = random_map(
            k5(),
            Signature::euclidean(4),
            &mut ChaCha8Rng::seed_from_u64(10),
            1.0,
        );
        assert_ne!(a, c);
    }

    #[test]
    fn within_box() {
        let f = random_map(
            k5(),
            Signature::split(2, 2),
            &mut ChaCha8Rng::seed_from_u64(1),
            0.25_f64,
        );
        assert!(f.coords().iter().all(|x| x.abs() <= 0.25));
    }

    #[test]
    fn zero_box_is_zero_map() {
        let f = random_map(
            k5(),
            Signature::euclidean(3),
            &mut ChaCha8Rng::seed_from_u64(1),
            0.0,
        );
        assert!(f.coords().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn k5_samples_are_edge_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..50 {
            let f = random_map(k5(), Signature::euclidean(4), &mut rng, 1.0);
            assert!(f.edge_independence(1e-9).all);
        }
    }
}
