//! Polyhedral geometry of a point configuration: the cone `C(A)`, its facet
//! forms, normalized volumes, pyramids, regular triangulations, convergence
//! directions and the saturation point used by the contiguity rewriting.

mod cone;
mod triangulation;

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{GkzError, Result};
use crate::intlin::{
    elementary_divisors, integer_kernel, rat_inverse, rat_mat_vec, solve_rational, to_rat_vec,
    IntMatrix, LatticeBasis, Rat,
};

pub(crate) use cone::{extreme_rays, facets_of_span, zero_in_hull};
pub use triangulation::{
    generic_triangulation, is_convergence_direction, regular_triangulation, sector_rays,
    simplex_facet_forms, supp_membership, triangulation_from_direction, ConvergenceDirection,
    Simplex, Triangulation,
};

/// The matrix `A` with its homogeneity form `h` and relation lattice `L`.
///
/// Construction checks that the columns span `Z^r` and lie on a hyperplane
/// `h = 1`. Configurations with `N = r` are accepted (their lattice is zero);
/// they arise as face restrictions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfig {
    matrix: IntMatrix,
    columns: Vec<Vec<BigInt>>,
    h: Vec<BigInt>,
    lattice: LatticeBasis,
    relations: Vec<Vec<i64>>,
}

impl PointConfig {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        let (r, n) = (matrix.rows(), matrix.cols());
        if r == 0 || n == 0 {
            return Err(GkzError::ConfigInvalid("empty matrix".into()));
        }
        let ones = vec![Rat::one(); n];
        let h = solve_rational(&matrix.transpose(), &ones).ok_or_else(|| {
            GkzError::ConfigInvalid(
                "not homogeneous: no linear form h with h(a_i) = 1 for all columns".into(),
            )
        })?;
        let divisors = elementary_divisors(&matrix);
        if divisors.len() < r || divisors.iter().any(|d| !d.is_one()) {
            let shown: Vec<String> = divisors.iter().map(ToString::to_string).collect();
            return Err(GkzError::ConfigInvalid(format!(
                "not spanning: the columns do not span Z^{r} (elementary divisors [{}])",
                shown.join(", ")
            )));
        }
        if h.iter().any(|x| !x.is_integer()) {
            return Err(GkzError::Internal(
                "homogeneity form is not integral".into(),
            ));
        }
        let h: Vec<BigInt> = h.iter().map(|x| x.to_integer()).collect();
        let lattice = integer_kernel(&matrix)?;
        let relations = lattice
            .vectors
            .iter()
            .map(|v| to_i64_vec(v))
            .collect::<Result<Vec<_>>>()?;
        let columns = (0..n).map(|j| matrix.col(j)).collect();
        Ok(PointConfig {
            matrix,
            columns,
            h,
            lattice,
            relations,
        })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(IntMatrix::from_rows(rows)?)
    }

    /// Dimension `r` of the ambient lattice.
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Number of points `N`.
    pub fn len(&self) -> usize {
        self.matrix.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn column(&self, i: usize) -> &[BigInt] {
        &self.columns[i]
    }

    pub fn columns(&self) -> &[Vec<BigInt>] {
        &self.columns
    }

    pub fn homogeneity(&self) -> &[BigInt] {
        &self.h
    }

    pub fn lattice(&self) -> &LatticeBasis {
        &self.lattice
    }

    /// Lattice basis as machine integers.
    pub fn relations(&self) -> &[Vec<i64>] {
        &self.relations
    }

    pub fn lattice_rank(&self) -> usize {
        self.lattice.rank()
    }

    /// `A x` for a rational N-vector.
    pub fn apply_rat(&self, x: &[Rat]) -> Vec<Rat> {
        self.matrix.mul_rat_vec(x)
    }

    /// `A l` for an integer N-vector.
    pub fn apply_i64(&self, l: &[i64]) -> Vec<BigInt> {
        let v: Vec<BigInt> = l.iter().map(|&x| BigInt::from(x)).collect();
        self.matrix.mul_vec(&v)
    }

    pub fn is_relation(&self, l: &[i64]) -> bool {
        l.len() == self.len() && self.apply_i64(l).iter().all(Zero::is_zero)
    }

    /// Square submatrix on the columns `idx`, with its determinant.
    pub fn simplex_det(&self, idx: &[usize]) -> BigInt {
        if idx.len() != self.dim() {
            return BigInt::zero();
        }
        self.matrix.select_columns(idx).det()
    }

    /// Rational inverse of the columns `idx` (which must form a basis).
    pub(crate) fn simplex_inverse(&self, idx: &[usize]) -> Result<Vec<Vec<Rat>>> {
        let m = self.matrix.select_columns(idx);
        if idx.len() != self.dim() {
            return Err(GkzError::SingularSimplex(idx.to_vec()));
        }
        rat_inverse(&m.to_rat_rows()).ok_or_else(|| GkzError::SingularSimplex(idx.to_vec()))
    }
}

pub(crate) fn to_i64_vec(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| x.to_i64().ok_or_else(|| GkzError::Overflow(x.to_string())))
        .collect()
}

/// A primitive integral linear form on `Z^r`, nonnegative on the cone.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FacetForm {
    pub coeffs: Vec<BigInt>,
}

impl FacetForm {
    pub fn eval(&self, x: &[BigInt]) -> BigInt {
        self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn eval_rat(&self, x: &[Rat]) -> Rat {
        self.coeffs
            .iter()
            .zip(x)
            .fold(Rat::zero(), |acc, (a, b)| acc + b * a)
    }
}

impl fmt::Display for FacetForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let coef = if mag.is_one() {
                String::new()
            } else {
                mag.to_string()
            };
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-{coef}x{}", i + 1)?,
                (true, false) => write!(f, "{coef}x{}", i + 1)?,
                (false, true) => write!(f, " - {coef}x{}", i + 1)?,
                (false, false) => write!(f, " + {coef}x{}", i + 1)?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Facet forms of `C(A)`, sorted, primitive, one per facet.
pub fn facet_forms(cfg: &PointConfig) -> Vec<FacetForm> {
    let gens: Vec<Vec<Rat>> = cfg.columns().iter().map(|c| to_rat_vec(c)).collect();
    facets_of_span(&gens, cfg.dim())
        .into_iter()
        .map(|n| FacetForm {
            coeffs: n.iter().map(|x| x.to_integer()).collect(),
        })
        .sorted()
        .collect()
}

/// Normalized volume of the convex hull of the points `pts` (a unimodular
/// simplex has volume 1). Lower-dimensional sets have volume 0.
pub fn normalized_volume(cfg: &PointConfig, pts: &[usize]) -> BigInt {
    let r = cfg.dim();
    if pts.len() == r {
        return cfg.simplex_det(pts).abs();
    }
    let cols: Vec<Vec<BigInt>> = pts.iter().map(|&i| cfg.column(i).to_vec()).collect();
    if IntMatrix::from_columns(r, &cols).rank() < r {
        return BigInt::zero();
    }
    let cells = triangulation::generic_cells(&cols, r, 0x5eed)
        .expect("seeded random heights are generic with overwhelming probability");
    cells
        .iter()
        .map(|cell| {
            let idx: Vec<usize> = cell.iter().map(|&k| pts[k]).collect();
            cfg.simplex_det(&idx).abs()
        })
        .sum()
}

/// `Vol(Q(A))` for the whole configuration.
pub fn total_volume(cfg: &PointConfig) -> BigInt {
    let all: Vec<usize> = (0..cfg.len()).collect();
    normalized_volume(cfg, &all)
}

/// Indices `i` with `l_i = 0` for every relation: the possible apexes of a pyramid.
pub fn pyramid_apexes(cfg: &PointConfig) -> Vec<usize> {
    (0..cfg.len())
        .filter(|&i| cfg.relations().iter().all(|l| l[i] == 0))
        .collect()
}

/// The apex of `Q(A)` when it is a pyramid (first one if several).
pub fn is_pyramid(cfg: &PointConfig) -> Option<usize> {
    pyramid_apexes(cfg).first().copied()
}

/// A point `p = delta (a_1 + ... + a_N)` with `(p + C(A)) ∩ Z^r` inside the
/// nonnegative integer span of the columns.
///
/// `delta` is the covering radius bound `max_i ceil(sum_j |b_{j,i}| / 2)` for
/// the stored lattice basis: rounding real coordinates to the nearest integer
/// moves each entry by at most that much.
pub fn saturation_point(cfg: &PointConfig) -> (Vec<BigInt>, BigInt) {
    let two = BigInt::from(2);
    let delta = (0..cfg.len())
        .map(|i| {
            let s: BigInt = cfg.lattice().vectors.iter().map(|b| b[i].abs()).sum();
            s.div_ceil(&two)
        })
        .max()
        .unwrap_or_else(BigInt::one)
        .max(BigInt::one());
    let mut p = vec![BigInt::zero(); cfg.dim()];
    for c in cfg.columns() {
        for (pi, ci) in p.iter_mut().zip(c) {
            *pi += ci;
        }
    }
    let p = p.into_iter().map(|x| x * &delta).collect();
    (p, delta)
}

/// Outcome of the search for `x >= 0` integral with `A x = n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Representation {
    Found(Vec<BigInt>),
    NotRepresentable,
    /// The candidate budget ran out before the search space was exhausted.
    Inconclusive,
}

/// Default number of candidates examined by [`nonneg_representation`].
pub const REPRESENTATION_BUDGET: usize = 2_000_000;

/// Searches for a nonnegative integer representation of `n` by the columns.
///
/// Since `h(a_i) = 1`, any representation has `sum x_i = h(n)`, so the search
/// space is finite: the non-basic coordinates range over compositions of at
/// most `h(n)` and the basic ones are solved for.
pub fn nonneg_representation(cfg: &PointConfig, n: &[BigInt], budget: usize) -> Representation {
    let degree: BigInt = cfg.homogeneity().iter().zip(n).map(|(a, b)| a * b).sum();
    if degree.is_negative() {
        return Representation::NotRepresentable;
    }
    let Some(degree) = degree.to_i64() else {
        return Representation::Inconclusive;
    };
    let r = cfg.dim();
    let Some(basic) = (0..cfg.len())
        .combinations(r)
        .find(|j| !cfg.simplex_det(j).is_zero())
    else {
        return Representation::NotRepresentable;
    };
    let free: Vec<usize> = (0..cfg.len()).filter(|i| !basic.contains(i)).collect();
    let inv = cfg.simplex_inverse(&basic).expect("basis columns");
    let base = rat_mat_vec(&inv, &to_rat_vec(n));
    let shifts: Vec<Vec<Rat>> = free
        .iter()
        .map(|&i| rat_mat_vec(&inv, &to_rat_vec(cfg.column(i))))
        .collect();

    let mut visited = 0usize;
    let mut x_free = vec![0i64; free.len()];
    loop {
        visited += 1;
        if visited > budget {
            return Representation::Inconclusive;
        }
        let mut x_basic = base.clone();
        for (k, &xf) in x_free.iter().enumerate() {
            if xf != 0 {
                let f = Rat::from_integer(BigInt::from(xf));
                for (xb, s) in x_basic.iter_mut().zip(&shifts[k]) {
                    *xb -= &f * s;
                }
            }
        }
        if x_basic.iter().all(|v| v.is_integer() && !v.is_negative()) {
            let mut x = vec![BigInt::zero(); cfg.len()];
            for (k, &i) in basic.iter().enumerate() {
                x[i] = x_basic[k].to_integer();
            }
            for (k, &i) in free.iter().enumerate() {
                x[i] = BigInt::from(x_free[k]);
            }
            return Representation::Found(x);
        }
        // next composition with total <= degree, lexicographic from the right
        let mut k = free.len();
        loop {
            if k == 0 {
                return Representation::NotRepresentable;
            }
            k -= 1;
            let total: i64 = x_free.iter().sum();
            if total < degree {
                x_free[k] += 1;
                break;
            }
            x_free[k] = 0;
        }
    }
}
