mod common;

use common::*;
use gkz_core::geom::{regular_triangulation, total_volume};
use gkz_core::intlin::{hermite_normal_form, smith_normal_form, IntMatrix, Rat};
use gkz_core::series::{gamma_choices, gamma_series};
use gkz_core::weyl::annihilation_residuals;
use gkz_core::GkzError;
use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..4, 1usize..5)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..7, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hermite_form_is_unimodular_transform(rows in small_matrix()) {
        let m = IntMatrix::from_rows(&rows).unwrap();
        let (h, u) = hermite_normal_form(&m);
        prop_assert_eq!(u.det().abs(), BigInt::from(1));
        prop_assert_eq!(u.mul(&m), h);
    }

    #[test]
    fn smith_form_diagonal_divides(rows in small_matrix()) {
        let m = IntMatrix::from_rows(&rows).unwrap();
        let (d, u, v) = smith_normal_form(&m);
        prop_assert_eq!(u.mul(&m).mul(&v), d.clone());
        let diag: Vec<BigInt> = (0..d.rows().min(d.cols()))
            .map(|i| d.row(i)[i].clone())
            .take_while(|x| !x.is_zero())
            .collect();
        for w in diag.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert_eq!(diag.len(), m.rank());
    }

    #[test]
    fn regular_triangulations_cover_the_volume(seed in 0u64..1000, hs in prop::collection::vec(0i64..50, 6)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cfg = random_config(&mut rng);
        let h: Vec<Rat> = hs[..cfg.len()].iter().map(|&x| rat(x, 1)).collect();
        match regular_triangulation(&cfg, &h) {
            Ok(t) => prop_assert_eq!(t.volume(&cfg), total_volume(&cfg)),
            Err(GkzError::NonGeneric { .. }) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn every_gamma_series_is_annihilated(seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cfg = random_config(&mut rng);
        let s = random_nonresonant(&mut rng, &cfg);
        let n = cfg.len();
        let j = (0..n)
            .combinations(cfg.dim())
            .find(|j| !cfg.simplex_det(j).is_zero())
            .unwrap();
        let simplex = gkz_core::geom::Simplex::new(j);
        let choices = gamma_choices(&s, &simplex).unwrap();
        let det = cfg.simplex_det(simplex.indices()).abs().to_usize().unwrap();
        prop_assert_eq!(choices.len(), det);
        for g in &choices {
            let phi = match gamma_series(&s, g, 5) {
                Ok(phi) => phi,
                Err(GkzError::DegenerateGamma) => continue,
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            };
            for r in annihilation_residuals(&s, &phi.to_log_series()) {
                prop_assert_eq!(r.nonzero, 0, "{}", r.operator);
            }
        }
    }
}
