#![allow(dead_code)]

use gkz_core::geom::PointConfig;
use gkz_core::intlin::{IntMatrix, Rat};
use gkz_core::system::{build_system, is_nonresonant, GkzSystem};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn rats(xs: &[(i64, i64)]) -> Vec<Rat> {
    xs.iter().map(|&(p, q)| rat(p, q)).collect()
}

pub fn sys(rows: &[Vec<i64>], alpha: &[(i64, i64)]) -> GkzSystem {
    build_system(IntMatrix::from_rows(rows).unwrap(), rats(alpha)).unwrap()
}

pub fn e1_rows() -> Vec<Vec<i64>> {
    vec![vec![1, 1, 1, 1], vec![0, 1, 0, 1], vec![0, 0, 1, 1]]
}

pub fn e2_rows() -> Vec<Vec<i64>> {
    vec![vec![1, 1, 1, 1], vec![0, 1, 2, 3]]
}

pub fn e3_rows() -> Vec<Vec<i64>> {
    vec![vec![1, 1, 1, 1], vec![0, 1, 2, 0], vec![0, 0, 0, 1]]
}

/// A valid configuration with r <= 3 and N <= 6: points `(1, k)` on a line
/// or `(1, x, y)` on the 3 x 3 grid.
pub fn random_config(rng: &mut ChaCha8Rng) -> PointConfig {
    loop {
        let rows: Vec<Vec<i64>> = if rng.gen_bool(0.5) {
            let n = rng.gen_range(3..=6);
            let mut ks: Vec<i64> = (0..=6).collect();
            ks.shuffle(rng);
            let mut ks = ks[..n].to_vec();
            ks.sort();
            vec![vec![1; n], ks]
        } else {
            let n = rng.gen_range(4..=6);
            let mut grid: Vec<(i64, i64)> =
                (0..3).flat_map(|x| (0..3).map(move |y| (x, y))).collect();
            grid.shuffle(rng);
            let mut pts = grid[..n].to_vec();
            pts.sort();
            vec![
                vec![1; n],
                pts.iter().map(|p| p.0).collect(),
                pts.iter().map(|p| p.1).collect(),
            ]
        };
        if let Ok(cfg) = PointConfig::from_rows(&rows) {
            return cfg;
        }
    }
}

/// A parameter with small denominators at which no facet form is integral.
pub fn random_nonresonant(rng: &mut ChaCha8Rng, cfg: &PointConfig) -> GkzSystem {
    loop {
        let alpha: Vec<Rat> = (0..cfg.dim())
            .map(|_| rat(rng.gen_range(-20..=20), rng.gen_range(2..=13)))
            .collect();
        let s = GkzSystem::new(cfg.clone(), alpha).unwrap();
        if is_nonresonant(&s).nonresonant {
            return s;
        }
    }
}
