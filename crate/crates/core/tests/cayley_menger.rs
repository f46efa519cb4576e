//! Euclidean classification against Cayley–Menger determinants.
//!
//! A simplex with positive edge lengths sits nondegenerately in `𝔼^k` iff
//! `(−1)^{j+1} CM(v_0, …, v_j) > 0` for each leading face, `j = 1, …, k`.

use indef_core::{classify, IndefiniteMetric, PolyhedronKind, SimplicialComplex};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cayley_menger(squared: &dyn Fn(usize, usize) -> f64, j: usize) -> f64 {
    let n = j + 2;
    DMatrix::from_fn(n, n, |r, c| match (r, c) {
        (0, 0) => 0.0,
        (0, _) | (_, 0) => 1.0,
        (r, c) if r == c => 0.0,
        (r, c) => squared(r - 1, c - 1),
    })
    .determinant()
}

fn embeddable(squared: &dyn Fn(usize, usize) -> f64, k: usize) -> bool {
    (1..=k).all(|j| {
        let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
        sign * cayley_menger(squared, j) > 0.0
    })
}

#[test]
fn classification_agrees_with_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut euclidean = 0;
    for _ in 0..500 {
        let k = rng.gen_range(1..=3);
        let simplex: Vec<usize> = (0..=k).collect();
        let c = SimplicialComplex::from_simplices(&[simplex]).unwrap();
        let lengths: Vec<f64> = (0..c.edge_count()).map(|_| rng.gen_range(0.1..2.0)).collect();
        let m = IndefiniteMetric::from_length_vec(&c, lengths).unwrap();
        let sq = |a: usize, b: usize| m.get(c.edge_index(a.min(b), a.max(b)).unwrap());
        let expected = embeddable(&sq, k);
        let got = classify(&c, &m, 1e-9).kind == PolyhedronKind::Euclidean;
        assert_eq!(got, expected, "lengths {:?}", m.signed_lengths());
        euclidean += usize::from(expected);
    }
    // Both outcomes occur, so the comparison is not vacuous.
    assert!(euclidean > 50 && euclidean < 450, "{euclidean}");
}
