//! Exact integer and rational linear algebra.
//!
//! Everything here works over arbitrary precision integers ([`BigInt`]) and
//! rationals ([`Rat`]). Matrices are small (desk scale), so the algorithms are
//! the textbook ones: row-style Hermite normal form by extended-gcd row
//! operations, Smith normal form by alternating row and column elimination,
//! and Gauss-Jordan elimination over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{GkzError, Result};

pub type Rat = BigRational;

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(GkzError::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers. Ragged input is rejected.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(GkzError::Dimension("ragged rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|r| r.iter().cloned().map(Into::into))
            .collect();
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds an `r x n` matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..rows {
                m[(i, j)] = c[i].clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, idx.len());
        for (k, &j) in idx.iter().enumerate() {
            for i in 0..self.rows {
                m[(i, k)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn mul_rat_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Rat::zero(), |acc, (a, b)| acc + b * a)
            })
            .collect()
    }

    pub fn to_rat_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().cloned().map(Rat::from_integer).collect())
            .collect()
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(Zero::is_zero)
    }

    pub fn rank(&self) -> usize {
        rat_rank(&self.to_rat_rows())
    }

    /// Determinant of a square matrix (fraction-free Bareiss elimination).
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.row_vecs();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    /// row[dst] += q * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = q * &self[(src, j)];
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = q * &self[(i, src)];
            self[(i, dst)] += v;
        }
    }

    /// Replaces rows (p, q) by (x p + y q, s p + t q).
    fn combine_rows(&mut self, p: usize, q: usize, x: &BigInt, y: &BigInt, s: &BigInt, t: &BigInt) {
        for j in 0..self.cols {
            let a = self[(p, j)].clone();
            let b = self[(q, j)].clone();
            self[(p, j)] = x * &a + y * &b;
            self[(q, j)] = s * &a + t * &b;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Returns (g, x, y) with x a + y b = g >= 0.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = r0.div_floor(&r1);
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Row-style Hermite normal form: returns `(H, U)` with `U` unimodular and
/// `U * M = H`. Pivots of `H` are positive and the entries above each pivot
/// lie in `[0, pivot)`; zero rows come last.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut pivot_row = 0;
    for col in 0..h.cols() {
        if pivot_row == h.rows() {
            break;
        }
        for i in pivot_row + 1..h.rows() {
            if h[(i, col)].is_zero() {
                continue;
            }
            let a = h[(pivot_row, col)].clone();
            let b = h[(i, col)].clone();
            let (g, x, y) = ext_gcd(&a, &b);
            let s = -(&b / &g);
            let t = &a / &g;
            h.combine_rows(pivot_row, i, &x, &y, &s, &t);
            u.combine_rows(pivot_row, i, &x, &y, &s, &t);
        }
        if h[(pivot_row, col)].is_zero() {
            continue;
        }
        if h[(pivot_row, col)].is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        let pivot = h[(pivot_row, col)].clone();
        for i in 0..pivot_row {
            let q = h[(i, col)].div_floor(&pivot);
            let nq = -q;
            h.add_row_multiple(i, pivot_row, &nq);
            u.add_row_multiple(i, pivot_row, &nq);
        }
        pivot_row += 1;
    }
    (h, u)
}

/// Smith normal form: returns `(S, U, V)` with `U`, `V` unimodular,
/// `U * M * V = S` diagonal, nonnegative, and `d_1 | d_2 | ...`.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut s = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut v = IntMatrix::identity(m.cols());
    let (rows, cols) = (s.rows(), s.cols());
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if s[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| s[(i, j)].abs() < s[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return (s, u, v);
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&s[(i, t)] / &s[(t, t)]);
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= s[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&s[(t, j)] / &s[(t, t)]);
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= s[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !(&s[(i, j)] % &s[(t, t)]).is_zero()));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    (s, u, v)
}

/// Diagonal of a Smith form, up to the rank.
pub fn elementary_divisors(m: &IntMatrix) -> Vec<BigInt> {
    let (s, _, _) = smith_normal_form(m);
    (0..s.rows().min(s.cols()))
        .map(|i| s[(i, i)].clone())
        .filter(|d| !d.is_zero())
        .collect()
}

/// Basis of a sublattice of `Z^ambient_dim`, one vector per entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeBasis {
    pub ambient_dim: usize,
    pub vectors: Vec<Vec<BigInt>>,
}

impl LatticeBasis {
    pub fn new(ambient_dim: usize, vectors: Vec<Vec<BigInt>>) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != ambient_dim) {
            return Err(GkzError::Dimension("lattice vector length".into()));
        }
        let basis = LatticeBasis {
            ambient_dim,
            vectors,
        };
        if basis.matrix().rank() != basis.rank() {
            return Err(GkzError::Precondition(
                "lattice basis vectors are linearly dependent".into(),
            ));
        }
        Ok(basis)
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    /// Basis vectors as the rows of a matrix.
    pub fn matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.vectors.len(), self.ambient_dim);
        for (i, v) in self.vectors.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    /// Rational coordinates of `v` in this basis, if `v` lies in the rational span.
    pub fn rational_coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        if self.rank() == 0 {
            return v.iter().all(Zero::is_zero).then(Vec::new);
        }
        solve_rational(&self.matrix().transpose(), v)
    }

    /// Integer coordinates of `v` in this basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let rv: Vec<Rat> = v.iter().cloned().map(Rat::from_integer).collect();
        let c = self.rational_coordinates(&rv)?;
        c.iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        v.len() == self.ambient_dim && self.coordinates(v).is_some()
    }

    /// Integer combination of the basis vectors.
    pub fn combine(&self, coeffs: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.ambient_dim];
        for (c, b) in coeffs.iter().zip(&self.vectors) {
            for (o, x) in out.iter_mut().zip(b) {
                *o += c * x;
            }
        }
        out
    }
}

/// Saturated integer kernel `{x in Z^n : M x = 0}` of any integer matrix.
///
/// Computed from the Hermite form of `M^T`: the rows of the transform that
/// map to zero rows span the kernel, and since the transform is unimodular
/// they span it over the integers. The result is brought to Hermite form so
/// the basis is canonical.
pub fn saturated_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let (h, u) = hermite_normal_form(&m.transpose());
    let rank = (0..h.rows()).filter(|&i| !h.is_zero_row(i)).count();
    let kernel_rows: Vec<Vec<BigInt>> = (rank..u.rows()).map(|i| u.row(i).to_vec()).collect();
    if kernel_rows.is_empty() {
        return kernel_rows;
    }
    let k = IntMatrix::from_rows(&kernel_rows).expect("rectangular");
    let (hk, _) = hermite_normal_form(&k);
    (0..hk.rows())
        .filter(|&i| !hk.is_zero_row(i))
        .map(|i| hk.row(i).to_vec())
        .collect()
}

/// The lattice of integer relations `{l in Z^N : A l = 0}` of a full-row-rank matrix.
pub fn integer_kernel(a: &IntMatrix) -> Result<LatticeBasis> {
    let rank = a.rank();
    if rank < a.rows() {
        return Err(GkzError::ConfigInvalid(format!(
            "matrix has rank {rank} < {} rows",
            a.rows()
        )));
    }
    Ok(LatticeBasis {
        ambient_dim: a.cols(),
        vectors: saturated_kernel(a),
    })
}

/// Representatives of `Z^m / sub`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetReps {
    pub ambient_dim: usize,
    pub sublattice_basis: Vec<Vec<BigInt>>,
    pub reps: Vec<Vec<BigInt>>,
}

impl CosetReps {
    pub fn index(&self) -> usize {
        self.reps.len()
    }
}

/// Enumerates `Z^m / sub` for a full-rank sublattice.
///
/// Representatives are read off the Smith form (residues modulo the
/// elementary divisors, mapped back through the column transform) and then
/// reduced into the box `0 <= x_k < H_kk` of the Hermite basis, which makes
/// them canonical and nonnegative.
pub fn coset_representatives(sub: &LatticeBasis) -> Result<CosetReps> {
    let m = sub.ambient_dim;
    let b = sub.matrix();
    let rank = b.rank();
    if rank < m {
        return Err(GkzError::InfiniteIndex { rank, dim: m });
    }
    let (hermite, _) = hermite_normal_form(&b);
    let (s, _, v) = smith_normal_form(&b);
    let v_inv = unimodular_inverse(&v)?;
    let divisors: Vec<BigInt> = (0..m).map(|i| s[(i, i)].clone()).collect();
    let total = divisors
        .iter()
        .product::<BigInt>()
        .to_usize()
        .ok_or_else(|| GkzError::Overflow("sublattice index".into()))?;

    let mut reps = Vec::with_capacity(total);
    let mut residue = vec![BigInt::zero(); m];
    for _ in 0..total {
        // x = residue * V^{-1}
        let mut x = vec![BigInt::zero(); m];
        for (k, r) in residue.iter().enumerate() {
            for j in 0..m {
                x[j] += r * &v_inv[(k, j)];
            }
        }
        reduce_into_hermite_box(&mut x, &hermite);
        reps.push(x);
        // odometer over residues
        for k in (0..m).rev() {
            residue[k] += 1;
            if residue[k] < divisors[k] {
                break;
            }
            residue[k] = BigInt::zero();
        }
    }
    reps.sort();
    reps.dedup();
    if reps.len() != total {
        return Err(GkzError::Internal(
            "coset representatives collided after reduction".into(),
        ));
    }
    Ok(CosetReps {
        ambient_dim: m,
        sublattice_basis: sub.vectors.clone(),
        reps,
    })
}

/// Reduces `x` modulo the row span of a square full-rank Hermite matrix.
fn reduce_into_hermite_box(x: &mut [BigInt], hermite: &IntMatrix) {
    for k in 0..hermite.rows() {
        let pivot = &hermite[(k, k)];
        let q = x[k].div_floor(pivot);
        if q.is_zero() {
            continue;
        }
        for (j, xj) in x.iter_mut().enumerate() {
            *xj -= &q * &hermite[(k, j)];
        }
    }
}

fn unimodular_inverse(m: &IntMatrix) -> Result<IntMatrix> {
    let inv = rat_inverse(&m.to_rat_rows())
        .ok_or_else(|| GkzError::Internal("unimodular factor is singular".into()))?;
    let mut out = IntMatrix::zeros(m.rows(), m.cols());
    for (i, row) in inv.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if !x.is_integer() {
                return Err(GkzError::Internal("factor is not unimodular".into()));
            }
            out[(i, j)] = x.to_integer();
        }
    }
    Ok(out)
}

/// Some exact solution of `M x = b`, or `None` when the system is inconsistent.
pub fn solve_rational(m: &IntMatrix, b: &[Rat]) -> Option<Vec<Rat>> {
    rat_solve(&m.to_rat_rows(), b, m.cols())
}

// ---------------------------------------------------------------------------
// rational helpers

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: impl Into<BigInt>) -> Rat {
    Rat::from_integer(n.into())
}

pub fn to_rat_vec(v: &[BigInt]) -> Vec<Rat> {
    v.iter().cloned().map(Rat::from_integer).collect()
}

pub fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_int_rat(a: &[BigInt], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + y * x)
}

/// Scales a rational vector to the primitive integer vector on the same ray.
pub fn primitive_integer(v: &[Rat]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Rat>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i == row || m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].clone();
            for j in 0..m[i].len() {
                let d = &f * &m[row][j];
                m[i][j] -= d;
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rat_rank(m: &[Vec<Rat>]) -> usize {
    let ncols = m.first().map_or(0, Vec::len);
    let mut w = m.to_vec();
    rref(&mut w, ncols).len()
}

/// Rational null space basis of an `? x ncols` matrix.
pub fn rat_kernel(m: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut w = m.to_vec();
    let pivots = rref(&mut w, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); ncols];
            v[f] = Rat::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -w[r][f].clone();
            }
            v
        })
        .collect()
}

/// Some solution of `m x = b` (free variables set to zero).
pub fn rat_solve(m: &[Vec<Rat>], b: &[Rat], ncols: usize) -> Option<Vec<Rat>> {
    if m.len() != b.len() {
        return None;
    }
    let mut aug: Vec<Vec<Rat>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rat::zero(); ncols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[r][ncols].clone();
    }
    Some(x)
}

pub fn rat_inverse(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut aug: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug, n);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn rat_mat_vec(m: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    m.iter().map(|row| dot_rat(row, v)).collect()
}
