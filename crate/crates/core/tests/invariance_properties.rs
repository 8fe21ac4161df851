mod common;

use common::*;
use ltv_core::classifier::{Config, Field};
use ltv_core::dependence::{factor_through_projection, invariance_subspace, suspend};
use ltv_core::linalg::rank;
use ltv_core::{LinearMap, PolyMap, Polynomial, Ring};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> LinearMap {
    loop {
        let rows: Vec<Vec<_>> = (0..n).map(|_| (0..n).map(|_| r(rng.random_range(-2..=2))).collect()).collect();
        if rank(&rows, n) == n {
            return LinearMap::from_rows(n, &rows).unwrap();
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn directions_annihilate_the_map(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = Ring::numbered("x", 3);
        let comps = (0..2).map(|_| random_poly(&mut rng, &ring, 3, 4, 4)).collect();
        let f = PolyMap::new(&ring, comps).unwrap();
        let v = invariance_subspace(&f).unwrap();
        for b in v.basis() {
            let d = f.directional_derivative(b).unwrap();
            prop_assert!(d.components().iter().all(Polynomial::is_zero));
        }
        let res = factor_through_projection(&f).unwrap();
        prop_assert_eq!(res.m + v.dim(), 3);
        prop_assert!(res.verify(&f).unwrap());
        prop_assert!(invariance_subspace(&res.g).unwrap().is_zero());
    }

    #[test]
    fn hidden_projection_is_recovered(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_reduced_map(&mut rng);
        let m = g.domain_dim();
        let k = rng.random_range(1..=2usize);
        let n = m + k;
        let a = random_invertible(&mut rng, n);
        // f(x) = g(first m coordinates of A x).
        let ring = Ring::numbered("y", n);
        let rows: Vec<Vec<_>> = (0..m).map(|i| a.row(i).to_vec()).collect();
        let pi = LinearMap::from_rows(n, &rows).unwrap();
        let f = g.compose_linear(&pi, &ring).unwrap();
        let v = invariance_subspace(&f).unwrap();
        prop_assert_eq!(v.dim(), k);
        let res = factor_through_projection(&f).unwrap();
        prop_assert_eq!(res.m, m);
        prop_assert!(res.verify(&f).unwrap());
    }

    #[test]
    fn suspension_adds_exactly_k_directions(seed in any::<u64>(), k in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_reduced_map(&mut rng);
        let f = suspend(&g, k).unwrap();
        prop_assert_eq!(invariance_subspace(&f).unwrap().dim(), k);
        let res = factor_through_projection(&f).unwrap();
        prop_assert_eq!(res.m, g.domain_dim());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn suspension_preserves_complex_classification(seed in any::<u64>(), k in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_reduced_map(&mut rng);
        let config = Config { samples: 2, ..Config::default() };
        let diffs = suspension_differences(&g, k, Field::Complex, &config);
        prop_assert!(diffs.is_empty(), "{:?}: {:?}", g, diffs);
    }
}
