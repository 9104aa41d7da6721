use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{facets_of_span, FacetForm, PointConfig};
use crate::error::{GkzError, Result};
use crate::intlin::{
    dot_int_rat, primitive_integer, rat_inverse, rat_mat_vec, rat_solve, to_rat_vec, Rat,
};

/// A set of `r` column indices whose columns form a basis of `Q^r`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(pub Vec<usize>);

impl Simplex {
    pub fn new(mut idx: Vec<usize>) -> Self {
        idx.sort_unstable();
        idx.dedup();
        Simplex(idx)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(&i)
    }

    /// The indices outside the simplex, i.e. the sector set `I = J^c`.
    pub fn complement(&self, n: usize) -> Vec<usize> {
        (0..n).filter(|i| !self.0.contains(i)).collect()
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().map(|i| i + 1).join(","))
    }
}

/// A regular triangulation of the configuration (maximal simplices only).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    pub simplices: Vec<Simplex>,
    /// Heights that induce it, when known.
    pub heights: Option<Vec<Rat>>,
}

impl Triangulation {
    pub fn contains(&self, s: &Simplex) -> bool {
        self.simplices.contains(s)
    }

    /// Sum of the normalized volumes of the cells.
    pub fn volume(&self, cfg: &PointConfig) -> BigInt {
        self.simplices
            .iter()
            .map(|s| cfg.simplex_det(s.indices()).abs())
            .sum()
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }
}

/// A weight vector `rho` on `R^N`; it selects a sector when it is strictly
/// positive on that sector's rays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceDirection(pub Vec<Rat>);

/// Lower cells of the lifted point set `{(a_i, w_i)}`, as sorted index sets.
///
/// A basis `J` is a cell exactly when the affine function agreeing with the
/// heights on `J` lies strictly below every other lifted point. A tie means
/// some lower face has more than `r` vertices.
pub(crate) fn lower_cells(
    cols: &[Vec<BigInt>],
    r: usize,
    heights: &[Rat],
) -> Result<Vec<Vec<usize>>> {
    let n = cols.len();
    let mut cells = Vec::new();
    for j in (0..n).combinations(r) {
        // phi with phi(a_k) = w_k for k in J
        let rows: Vec<Vec<Rat>> = j.iter().map(|&k| to_rat_vec(&cols[k])).collect();
        let rhs: Vec<Rat> = j.iter().map(|&k| heights[k].clone()).collect();
        if rat_inverse(&rows).is_none() {
            continue;
        }
        let phi = rat_solve(&rows, &rhs, r).expect("invertible");
        let mut tight = Vec::new();
        let mut below = false;
        for i in (0..n).filter(|i| !j.contains(i)) {
            let slack = &heights[i] - dot_int_rat(&cols[i], &phi);
            if slack.is_negative() {
                below = true;
                break;
            }
            if slack.is_zero() {
                tight.push(i);
            }
        }
        if below {
            continue;
        }
        if !tight.is_empty() {
            let mut cell = j.clone();
            cell.extend(tight);
            cell.sort_unstable();
            return Err(GkzError::NonGeneric { cell });
        }
        cells.push(j);
    }
    Ok(cells)
}

/// Cells of a regular triangulation from seeded random heights, retrying on ties.
pub(crate) fn generic_cells(cols: &[Vec<BigInt>], r: usize, seed: u64) -> Result<Vec<Vec<usize>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = None;
    for _ in 0..64 {
        let heights: Vec<Rat> = (0..cols.len())
            .map(|_| Rat::from_integer(BigInt::from(rng.gen_range(0..1_000_000i64))))
            .collect();
        match lower_cells(cols, r, &heights) {
            Ok(cells) => return Ok(cells),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

/// The regular triangulation induced by `heights`; fails with
/// [`GkzError::NonGeneric`] when the induced subdivision is not a triangulation.
pub fn regular_triangulation(cfg: &PointConfig, heights: &[Rat]) -> Result<Triangulation> {
    if heights.len() != cfg.len() {
        return Err(GkzError::Dimension(format!(
            "{} heights for {} points",
            heights.len(),
            cfg.len()
        )));
    }
    let cells = lower_cells(cfg.columns(), cfg.dim(), heights)?;
    Ok(Triangulation {
        simplices: cells.into_iter().map(Simplex::new).collect(),
        heights: Some(heights.to_vec()),
    })
}

/// A regular triangulation from heights drawn by a seeded generator.
pub fn generic_triangulation(cfg: &PointConfig, seed: u64) -> Result<Triangulation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = None;
    for _ in 0..64 {
        let heights: Vec<Rat> = (0..cfg.len())
            .map(|_| Rat::from_integer(BigInt::from(rng.gen_range(0..1_000_000i64))))
            .collect();
        match regular_triangulation(cfg, &heights) {
            Ok(t) => return Ok(t),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

fn check_sector(cfg: &PointConfig, sector: &[usize]) -> Result<Vec<usize>> {
    let n = cfg.len();
    let mut sorted = sector.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != sector.len() || sorted.iter().any(|&i| i >= n) {
        return Err(GkzError::Dimension(format!(
            "sector indices {sector:?} must be distinct and below {n}"
        )));
    }
    if sorted.len() + cfg.dim() != n {
        return Err(GkzError::Dimension(format!(
            "a sector needs N - r = {} indices, got {}",
            n - cfg.dim(),
            sorted.len()
        )));
    }
    let j: Vec<usize> = (0..n).filter(|i| !sorted.contains(i)).collect();
    if cfg.simplex_det(&j).is_zero() {
        return Err(GkzError::DegenerateSector(format!(
            "complementary columns {j:?} are linearly dependent"
        )));
    }
    Ok(j)
}

/// Generators of the sector cone of `I = sector`: for each `k` in `I`, the
/// vector `e_k - A_J^{-1} a_k` placed in `R^N`.
///
/// The projection of `L ⊗ R` onto the `I` coordinates is an isomorphism
/// (because `A_J` is invertible) and the sector is the preimage of the
/// orthant, so these are exactly its extreme rays.
pub fn sector_rays(cfg: &PointConfig, sector: &[usize]) -> Result<Vec<Vec<Rat>>> {
    let j = check_sector(cfg, sector)?;
    let inv = cfg.simplex_inverse(&j)?;
    let mut rays = Vec::with_capacity(sector.len());
    for &k in sector {
        let coeffs = rat_mat_vec(&inv, &to_rat_vec(cfg.column(k)));
        let mut ray = vec![Rat::zero(); cfg.len()];
        ray[k] = Rat::from_integer(1.into());
        for (t, &jt) in j.iter().enumerate() {
            ray[jt] = -coeffs[t].clone();
        }
        rays.push(ray);
    }
    Ok(rays)
}

/// True when `rho` is strictly positive on every ray of the sector.
pub fn is_convergence_direction(
    cfg: &PointConfig,
    rho: &ConvergenceDirection,
    sector: &[usize],
) -> Result<bool> {
    if rho.0.len() != cfg.len() {
        return Err(GkzError::Dimension("rho must have N entries".into()));
    }
    let rays = sector_rays(cfg, sector)?;
    Ok(rays.iter().all(|ray| {
        ray.iter()
            .zip(&rho.0)
            .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
            .is_positive()
    }))
}

/// The triangulation whose simplices `J` have `rho` as a convergence direction
/// of `J^c`; this is the regular triangulation with heights `rho`.
pub fn triangulation_from_direction(
    cfg: &PointConfig,
    rho: &ConvergenceDirection,
) -> Result<Triangulation> {
    if rho.0.len() != cfg.len() {
        return Err(GkzError::Dimension("rho must have N entries".into()));
    }
    let mut simplices = Vec::new();
    for j in (0..cfg.len()).combinations(cfg.dim()) {
        if cfg.simplex_det(&j).is_zero() {
            continue;
        }
        let s = Simplex::new(j);
        if is_convergence_direction(cfg, rho, &s.complement(cfg.len()))? {
            simplices.push(s);
        }
    }
    let t = Triangulation {
        simplices,
        heights: Some(rho.0.clone()),
    };
    let total = super::total_volume(cfg);
    if t.volume(cfg) != total {
        return Err(GkzError::NonGeneric {
            cell: t
                .simplices
                .iter()
                .flat_map(|s| s.0.clone())
                .sorted()
                .dedup()
                .collect(),
        });
    }
    Ok(t)
}

/// Primitive integral forms dual to the simplex: the `k`-th vanishes on every
/// column of `J` except the `k`-th, where it is positive.
pub fn simplex_facet_forms(cfg: &PointConfig, simplex: &Simplex) -> Result<Vec<FacetForm>> {
    let inv = cfg.simplex_inverse(simplex.indices())?;
    Ok(inv
        .iter()
        .map(|row| FacetForm {
            coeffs: primitive_integer(row),
        })
        .collect())
}

/// Whether the lattice point `l` lies in the support cone `supp(T)`, the
/// union of the sector cones of the simplices of `T` inside `L ⊗ R`.
///
/// The cone is computed in lattice coordinates from all sector rays and its
/// facets are found by brute force.
pub fn supp_membership(cfg: &PointConfig, t: &Triangulation, l: &[BigInt]) -> Result<bool> {
    if l.len() != cfg.len() {
        return Err(GkzError::Dimension("l must have N entries".into()));
    }
    if !cfg.matrix().mul_vec(l).iter().all(Zero::is_zero) {
        return Ok(false);
    }
    let lattice = cfg.lattice();
    let d = lattice.rank();
    if d == 0 {
        return Ok(l.iter().all(Zero::is_zero));
    }
    let mut gens = Vec::new();
    for s in &t.simplices {
        for ray in sector_rays(cfg, &s.complement(cfg.len()))? {
            let c = lattice
                .rational_coordinates(&ray)
                .ok_or_else(|| GkzError::Internal("sector ray outside L ⊗ Q".into()))?;
            gens.push(c);
        }
    }
    let facets = facets_of_span(&gens, d);
    let coords = lattice
        .rational_coordinates(&to_rat_vec(l))
        .ok_or_else(|| GkzError::Internal("relation outside L ⊗ Q".into()))?;
    Ok(facets.iter().all(|f| {
        !f.iter()
            .zip(&coords)
            .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
            .is_negative()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::tests::{pyramid, twisted_cubic, unit_square};
    use crate::geom::total_volume;
    use crate::intlin::{rat, rat_int};

    fn heights(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat_int(x)).collect()
    }

    fn simplices(t: &Triangulation) -> Vec<Vec<usize>> {
        t.simplices.iter().map(|s| s.0.clone()).collect()
    }

    #[test]
    fn square_triangulations() {
        let cfg = unit_square();
        let t = regular_triangulation(&cfg, &heights(&[0, 1, 1, 0])).unwrap();
        assert_eq!(simplices(&t), vec![vec![0, 1, 3], vec![0, 2, 3]]);
        let t = regular_triangulation(&cfg, &heights(&[1, 0, 0, 1])).unwrap();
        assert_eq!(simplices(&t), vec![vec![0, 1, 2], vec![1, 2, 3]]);
        let err = regular_triangulation(&cfg, &heights(&[0, 0, 0, 0])).unwrap_err();
        assert_eq!(
            err,
            GkzError::NonGeneric {
                cell: vec![0, 1, 2, 3]
            }
        );
    }

    #[test]
    fn line_triangulations() {
        let cfg = twisted_cubic();
        let t = regular_triangulation(&cfg, &heights(&[0, 1, 1, 0])).unwrap();
        assert_eq!(simplices(&t), vec![vec![0, 3]]);
        let t = regular_triangulation(&cfg, &heights(&[0, -1, -1, 0])).unwrap();
        assert_eq!(simplices(&t), vec![vec![0, 1], vec![1, 2], vec![2, 3]]);
        assert_eq!(t.volume(&cfg), BigInt::from(3));
    }

    #[test]
    fn generic_triangulations_cover_volume() {
        for cfg in [unit_square(), twisted_cubic(), pyramid()] {
            for seed in 0..10 {
                let t = generic_triangulation(&cfg, seed).unwrap();
                assert_eq!(t.volume(&cfg), total_volume(&cfg));
                let apex = 3;
                if cfg == pyramid() {
                    assert!(t.simplices.iter().all(|s| s.contains(apex)));
                }
            }
        }
    }

    #[test]
    fn sectors() {
        let cfg = unit_square();
        let rays = sector_rays(&cfg, &[3]).unwrap();
        assert_eq!(
            rays,
            vec![vec![rat(1, 1), rat(-1, 1), rat(-1, 1), rat(1, 1)]]
        );
        let rays = sector_rays(&cfg, &[0]).unwrap();
        assert_eq!(
            rays,
            vec![vec![rat(1, 1), rat(-1, 1), rat(-1, 1), rat(1, 1)]]
        );
        let rays = sector_rays(&cfg, &[1]).unwrap();
        assert_eq!(
            rays,
            vec![vec![rat(-1, 1), rat(1, 1), rat(1, 1), rat(-1, 1)]]
        );
        assert!(matches!(
            sector_rays(&cfg, &[1, 2]),
            Err(GkzError::Dimension(_))
        ));
        let line = twisted_cubic();
        assert!(matches!(
            sector_rays(&line, &[1, 2]).map(|r| r.len()),
            Ok(2)
        ));
    }

    #[test]
    fn directions() {
        let cfg = unit_square();
        let rho = ConvergenceDirection(heights(&[0, 1, 1, 0]));
        assert!(is_convergence_direction(&cfg, &rho, &[1]).unwrap());
        assert!(is_convergence_direction(&cfg, &rho, &[2]).unwrap());
        assert!(!is_convergence_direction(&cfg, &rho, &[0]).unwrap());
        let t = triangulation_from_direction(&cfg, &rho).unwrap();
        assert_eq!(simplices(&t), vec![vec![0, 1, 3], vec![0, 2, 3]]);
        let line = twisted_cubic();
        for seed in 0..5 {
            let t = generic_triangulation(&line, seed).unwrap();
            let rho = ConvergenceDirection(t.heights.clone().unwrap());
            let t2 = triangulation_from_direction(&line, &rho).unwrap();
            assert_eq!(t.simplices, t2.simplices);
        }
    }

    #[test]
    fn dual_forms() {
        let cfg = unit_square();
        let forms = simplex_facet_forms(&cfg, &Simplex::new(vec![0, 1, 3])).unwrap();
        for (k, f) in forms.iter().enumerate() {
            for (m, &j) in [0, 1, 3].iter().enumerate() {
                let v = f.eval(cfg.column(j));
                assert_eq!(v.is_zero(), k != m);
                assert!(!v.is_negative());
            }
        }
        assert!(matches!(
            simplex_facet_forms(&cfg, &Simplex::new(vec![0, 1])),
            Err(GkzError::SingularSimplex(_))
        ));
    }

    #[test]
    fn support_cone() {
        let cfg = unit_square();
        let t = regular_triangulation(&cfg, &heights(&[0, 1, 1, 0])).unwrap();
        let pos: Vec<BigInt> = [-1, 1, 1, -1].iter().map(|&x| BigInt::from(x)).collect();
        let neg: Vec<BigInt> = pos.iter().map(|x| -x).collect();
        assert!(supp_membership(&cfg, &t, &pos).unwrap());
        assert!(!supp_membership(&cfg, &t, &neg).unwrap());
        let not_relation: Vec<BigInt> = [1, 0, 0, 0].iter().map(|&x| BigInt::from(x)).collect();
        assert!(!supp_membership(&cfg, &t, &not_relation).unwrap());
    }
}
