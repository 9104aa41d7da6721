//! Brute-force polyhedral cone routines over the rationals.
//!
//! Dimensions here never exceed four or five, so enumerating subsets of
//! generators (or inequalities) and keeping the consistent ones is both the
//! simplest and the most reliable approach.

use itertools::Itertools;
use num_traits::{Signed, Zero};

use crate::intlin::{dot_rat, primitive_integer, rat_kernel, rat_rank, rat_solve, Rat};

/// Canonical representative of the ray through `v` (primitive integer entries).
pub(crate) fn ray_key(v: &[Rat]) -> Vec<Rat> {
    primitive_integer(v)
        .into_iter()
        .map(Rat::from_integer)
        .collect()
}

/// Inequalities `n . x >= 0` cutting out the cone spanned by `gens` in `Q^dim`.
///
/// The cone must be full-dimensional. An empty result means the cone is the
/// whole space.
pub(crate) fn facets_of_span(gens: &[Vec<Rat>], dim: usize) -> Vec<Vec<Rat>> {
    if dim == 0 {
        return Vec::new();
    }
    let mut out: Vec<Vec<Rat>> = Vec::new();
    for subset in (0..gens.len()).combinations(dim - 1) {
        let rows: Vec<Vec<Rat>> = subset.iter().map(|&i| gens[i].clone()).collect();
        let kernel = rat_kernel(&rows, dim);
        if kernel.len() != 1 {
            continue;
        }
        let normal = &kernel[0];
        let values: Vec<Rat> = gens.iter().map(|g| dot_rat(normal, g)).collect();
        let oriented = if values.iter().all(|v| !v.is_negative()) {
            ray_key(normal)
        } else if values.iter().all(|v| !v.is_positive()) {
            ray_key(&normal.iter().map(|x| -x).collect::<Vec<_>>())
        } else {
            continue;
        };
        if !out.contains(&oriented) {
            out.push(oriented);
        }
    }
    out.sort();
    out
}

/// Extreme rays of the pointed cone `{x : n . x >= 0 for all n in ineqs}`.
pub(crate) fn extreme_rays(ineqs: &[Vec<Rat>], dim: usize) -> Vec<Vec<Rat>> {
    if dim == 0 {
        return Vec::new();
    }
    let mut out: Vec<Vec<Rat>> = Vec::new();
    for subset in (0..ineqs.len()).combinations(dim - 1) {
        let rows: Vec<Vec<Rat>> = subset.iter().map(|&i| ineqs[i].clone()).collect();
        let kernel = rat_kernel(&rows, dim);
        if kernel.len() != 1 {
            continue;
        }
        let d = &kernel[0];
        let neg: Vec<Rat> = d.iter().map(|x| -x).collect();
        for cand in [d.clone(), neg] {
            let ok = ineqs.iter().all(|n| !dot_rat(n, &cand).is_negative());
            let tight_everywhere = ineqs.iter().all(|n| dot_rat(n, &cand).is_zero());
            if ok && !tight_everywhere {
                let key = ray_key(&cand);
                if !out.contains(&key) {
                    out.push(key);
                }
            }
        }
    }
    out.sort();
    out
}

/// A convex combination of `points` equal to zero, if one exists.
///
/// By Caratheodory it suffices to look at affinely independent subsets of at
/// most `dim + 1` points, for which the combination is unique.
pub(crate) fn zero_in_hull(points: &[Vec<Rat>], dim: usize) -> Option<Vec<Rat>> {
    for size in 1..=(dim + 1).min(points.len()) {
        for subset in (0..points.len()).combinations(size) {
            // rows: coordinates, then the affine row of ones
            let mut m: Vec<Vec<Rat>> = (0..dim)
                .map(|k| subset.iter().map(|&i| points[i][k].clone()).collect())
                .collect();
            m.push(vec![Rat::from_integer(1.into()); size]);
            if rat_rank(&m) < size {
                continue;
            }
            let mut rhs = vec![Rat::zero(); dim];
            rhs.push(Rat::from_integer(1.into()));
            let Some(lambda) = rat_solve(&m, &rhs, size) else {
                continue;
            };
            if lambda.iter().all(|x| !x.is_negative()) {
                let mut full = vec![Rat::zero(); points.len()];
                for (k, &i) in subset.iter().enumerate() {
                    full[i] = lambda[k].clone();
                }
                return Some(full);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlin::rat;

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn quadrant_facets_and_rays() {
        let gens = vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1])];
        let f = facets_of_span(&gens, 2);
        assert_eq!(f, vec![v(&[0, 1]), v(&[1, 0])]);
        let rays = extreme_rays(&f, 2);
        assert_eq!(rays, vec![v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn line_cone() {
        assert_eq!(facets_of_span(&[v(&[-2])], 1), vec![v(&[-1])]);
        assert!(facets_of_span(&[v(&[-2]), v(&[3])], 1).is_empty());
        assert_eq!(extreme_rays(&[v(&[-1]), v(&[-3])], 1), vec![v(&[-1])]);
    }

    #[test]
    fn hull_membership() {
        let pts = vec![v(&[1, 0]), v(&[-1, 1]), v(&[-1, -1])];
        let lambda = zero_in_hull(&pts, 2).unwrap();
        assert_eq!(lambda, vec![rat(1, 2), rat(1, 4), rat(1, 4)]);
        assert!(zero_in_hull(&[v(&[1, 0]), v(&[0, 1])], 2).is_none());
        assert!(zero_in_hull(&[v(&[-1]), v(&[-2])], 1).is_none());
        assert!(zero_in_hull(&[v(&[-1]), v(&[2])], 1).is_some());
    }
}
