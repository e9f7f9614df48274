//! Exact dense linear algebra over a prime field.
//!
//! Entries are stored as `u32` residues in `0..p`. Every matrix carries the
//! [`PrimeField`] it lives over, and mixing fields is a programming error.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Default characteristic used throughout the toolkit.
pub const DEFAULT_PRIME: u32 = 32003;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {0} is too large (must be below 2^31)")]
    TooLarge(u64),
}

/// The prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p >= 1 << 31 {
            return Err(FieldError::TooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    /// Symmetric representative in `(-p/2, p/2]`, used for display.
    pub fn signed(&self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense row-major matrix over a prime field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} over F_{} [", self.rows, self.cols, self.field.p)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.field.signed(self.get(r, c)))?;
            }
        }
        write!(f, "]")
    }
}

/// Result of reducing a matrix to reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_fn(field: PrimeField, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c) % field.p);
            }
        }
        Matrix { field, rows, cols, data }
    }

    /// Builds a matrix from signed integer rows, reducing modulo p.
    /// All rows must have length `cols`.
    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix row {r}");
            for (c, &x) in row.iter().enumerate() {
                m.data[r * cols + c] = field.reduce(x);
            }
        }
        m
    }

    /// A single column built from a vector.
    pub fn column(field: PrimeField, v: &[u32]) -> Self {
        Matrix { field, rows: v.len(), cols: 1, data: v.to_vec() }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, &x) in col.iter().enumerate() {
                m.data[r * m.cols + c] = x;
            }
        }
        m
    }

    /// Deterministic matrix with entries uniform over the field.
    pub fn random(field: PrimeField, rows: usize, cols: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random_with(field, rows, cols, &mut rng)
    }

    pub fn random_with<R: Rng + ?Sized>(field: PrimeField, rows: usize, cols: usize, rng: &mut R) -> Self {
        let data = (0..rows * cols).map(|_| rng.gen_range(0..field.p)).collect();
        Matrix { field, rows, cols, data }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.field.p;
    }
    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|c| self.col(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |r, c| self.get(c, r))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        assert_eq!(self.field, other.field);
        let p = self.field.p as u64;
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (slot, &b) in acc.iter_mut().zip(orow) {
                    *slot = (*slot + a * b as u64) % p;
                }
            }
            for c in 0..other.cols {
                out.data[r * other.cols + c] = acc[c] as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let p = self.field.p as u64;
        (0..self.rows)
            .map(|r| {
                let mut s = 0u64;
                for (k, &x) in v.iter().enumerate() {
                    s = (s + self.data[r * self.cols + k] as u64 * x as u64) % p;
                }
                s as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Matrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: u32) -> Matrix {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(a, s)).collect();
        Matrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(self.field.neg(1))
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, other: &Matrix, s: u32) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if s == 0 {
            return;
        }
        let f = self.field;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = f.add(*a, f.mul(b, s));
        }
    }

    pub fn hstack(parts: &[&Matrix], field: PrimeField, rows: usize) -> Matrix {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.rows, rows);
            out.set_block(0, off, m);
            off += m.cols;
        }
        out
    }

    pub fn vstack(parts: &[&Matrix], field: PrimeField, cols: usize) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.cols, cols);
            out.set_block(off, 0, m);
            off += m.rows;
        }
        out
    }

    pub fn block_diag(parts: &[&Matrix], field: PrimeField) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for m in parts {
            out.set_block(r0, c0, m);
            r0 += m.rows;
            c0 += m.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for r in 0..block.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(r));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(self.field, rows, cols, |r, c| self.get(r0 + r, c0 + c))
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, idx.len(), self.cols, |r, c| self.get(idx[r], c))
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, idx.len(), |r, c| self.get(r, idx[c]))
    }

    /// Reduced row echelon form by exact Gaussian elimination.
    pub fn echelon(&self) -> Echelon {
        let f = self.field;
        let p = f.p as u64;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.data[r * m.cols + col] != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..m.cols {
                    m.data.swap(pr * m.cols + c, row * m.cols + c);
                }
            }
            let inv = f.inv(m.data[row * m.cols + col]);
            for c in col..m.cols {
                let i = row * m.cols + c;
                m.data[i] = f.mul(m.data[i], inv);
            }
            let pivot_row: Vec<u32> = m.data[row * m.cols + col..(row + 1) * m.cols].to_vec();
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.data[r * m.cols + col];
                if factor == 0 {
                    continue;
                }
                let neg = (p - factor as u64) % p;
                let base = r * m.cols + col;
                for (k, &pv) in pivot_row.iter().enumerate() {
                    if pv != 0 {
                        let i = base + k;
                        m.data[i] = ((m.data[i] as u64 + neg * pv as u64) % p) as u32;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // eliminate on the shorter side
        if self.rows > self.cols {
            self.transpose().echelon().pivots.len()
        } else {
            self.echelon().pivots.len()
        }
    }

    /// Basis of the null space as the columns of a `cols x k` matrix.
    pub fn kernel(&self) -> Matrix {
        let ech = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !ech.pivots.contains(c)).collect();
        let mut out = Matrix::zeros(self.field, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.data[fc * free.len() + k] = 1;
            for (i, &pc) in ech.pivots.iter().enumerate() {
                let v = ech.reduced.get(i, fc);
                out.data[pc * free.len() + k] = self.field.neg(v);
            }
        }
        out
    }

    /// Null space basis as a list of vectors.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        self.kernel().columns()
    }

    /// Basis of the column space, as the pivot columns of `self`.
    pub fn column_space(&self) -> Matrix {
        let ech = self.echelon();
        self.select_cols(&ech.pivots)
    }

    /// Basis of the left null space: rows `y` with `y * self = 0`, stacked.
    pub fn left_kernel(&self) -> Matrix {
        self.transpose().kernel().transpose()
    }

    /// Some `x` with `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let rhs = Matrix::column(self.field, b);
        self.solve_matrix(&rhs).map(|x| x.col(0))
    }

    /// Some `X` with `self * X = rhs`, or `None` when inconsistent.
    pub fn solve_matrix(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(rhs.rows, self.rows);
        let aug = Matrix::hstack(&[self, rhs], self.field, self.rows);
        let ech = aug.echelon();
        if ech.pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.field, self.cols, rhs.cols);
        for (i, &pc) in ech.pivots.iter().enumerate() {
            for k in 0..rhs.cols {
                x.set(pc, k, ech.reduced.get(i, self.cols + k));
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let id = Matrix::identity(self.field, self.rows);
        if self.rank() != self.rows {
            return None;
        }
        self.solve_matrix(&id)
    }

    /// A right inverse `R` with `self * R = I`, for full row rank matrices.
    pub fn right_inverse(&self) -> Option<Matrix> {
        let id = Matrix::identity(self.field, self.rows);
        self.solve_matrix(&id)
    }
}

/// Splitting of `F^n` as `span(W) ⊕ span(e_j : j in complement)`.
///
/// The complement indices are the non-pivot coordinates of the row echelon
/// form of `W^T`, so the choice is canonical for the fixed basis order.
#[derive(Clone, Debug)]
pub struct Splitting {
    /// Basis of the subspace (columns), independent.
    pub basis: Matrix,
    /// Coordinates whose unit vectors complete the basis.
    pub complement: Vec<usize>,
    /// Projection `F^n -> F^{complement}` killing the subspace and sending
    /// `e_j` (j in complement) to the corresponding unit vector.
    pub projection: Matrix,
}

impl Splitting {
    pub fn new(span: &Matrix) -> Self {
        let field = span.field();
        let n = span.rows();
        let basis = span.column_space();
        let r = basis.cols();
        let ech = basis.transpose().echelon();
        let complement: Vec<usize> = (0..n).filter(|j| !ech.pivots.contains(j)).collect();
        let mut full = Matrix::zeros(field, n, n);
        full.set_block(0, 0, &basis);
        for (k, &j) in complement.iter().enumerate() {
            full.set(j, r + k, 1);
        }
        let inv = full.inverse().expect("splitting basis must be invertible");
        let projection = inv.block(r, 0, n - r, n);
        Splitting { basis, complement, projection }
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn sub_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn quotient_dim(&self) -> usize {
        self.complement.len()
    }

    /// Section of the projection given by the complement unit vectors.
    pub fn section(&self) -> Matrix {
        let n = self.ambient_dim();
        let mut s = Matrix::zeros(self.basis.field(), n, self.complement.len());
        for (k, &j) in self.complement.iter().enumerate() {
            s.set(j, k, 1);
        }
        s
    }
}

/// Coordinates with respect to an independent set of vectors.
///
/// Built once from a full-column-rank matrix; `coords` then recovers the
/// unique coefficient vector of any vector in its span.
#[derive(Clone, Debug)]
pub struct Coordinates {
    pivot_rows: Vec<usize>,
    inv: Matrix,
    basis: Matrix,
}

impl Coordinates {
    pub fn new(basis: &Matrix) -> Self {
        let field = basis.field();
        let k = basis.cols();
        let ech = basis.transpose().echelon();
        assert_eq!(ech.pivots.len(), k, "coordinate basis is not independent");
        let square = basis.select_rows(&ech.pivots);
        let inv =
            if k == 0 { Matrix::zeros(field, 0, 0) } else { square.inverse().expect("pivot minor is invertible") };
        Coordinates { pivot_rows: ech.pivots, inv, basis: basis.clone() }
    }

    pub fn len(&self) -> usize {
        self.pivot_rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pivot_rows.is_empty()
    }

    /// Coefficients of `v`, or `None` if `v` is not in the span.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        let picked: Vec<u32> = self.pivot_rows.iter().map(|&r| v[r]).collect();
        let c = self.inv.mul_vec(&picked);
        if self.basis.mul_vec(&c) == v {
            Some(c)
        } else {
            None
        }
    }
}

/// Dimension of `ker(outgoing) / im(incoming)` in a cochain complex
/// `C^{i-1} --incoming--> C^i --outgoing--> C^{i+1}`.
pub fn cohomology_dim(dim: usize, incoming: Option<&Matrix>, outgoing: Option<&Matrix>) -> usize {
    let out_rank = outgoing.map(|m| {
        assert_eq!(m.cols(), dim);
        m.rank()
    });
    let in_rank = incoming.map(|m| {
        assert_eq!(m.rows(), dim);
        m.rank()
    });
    dim - out_rank.unwrap_or(0) - in_rank.unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f101() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn rank_examples() {
        let f = f101();
        assert_eq!(Matrix::zeros(f, 0, 0).rank(), 0);
        assert_eq!(Matrix::identity(f, 2).rank(), 2);
        let m = Matrix::from_rows(f, 2, &[vec![1, 2], vec![2, 4]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        let f = f101();
        assert!(Matrix::identity(f, 3).kernel_basis().is_empty());
        assert_eq!(Matrix::zeros(f, 2, 3).kernel_basis().len(), 3);
        let m = Matrix::from_rows(f, 2, &[vec![1, 2], vec![2, 4]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        // x + 2y = 0 with y = 1 gives x = -2
        assert_eq!(k[0], vec![f.reduce(-2), 1]);
        assert_eq!(m.mul_vec(&k[0]), vec![0, 0]);
    }

    #[test]
    fn solve_examples() {
        let f = f101();
        let b = vec![3, 7];
        assert_eq!(Matrix::identity(f, 2).solve(&b), Some(b.clone()));
        let m = Matrix::from_rows(f, 1, &[vec![1], vec![0]]);
        assert_eq!(m.solve(&[0, 1]), None);
        let two = Matrix::from_rows(f, 1, &[vec![2]]);
        assert_eq!(two.solve(&[1]), Some(vec![51]));
    }

    #[test]
    fn random_examples() {
        let f = f101();
        let e = Matrix::random(f, 0, 0, 3);
        assert_eq!((e.rows(), e.cols()), (0, 0));
        assert_eq!(Matrix::random(f, 3, 4, 11), Matrix::random(f, 3, 4, 11));
        // snapshot recorded on first run
        let m = Matrix::random(f, 2, 2, 7);
        assert_eq!(m.data(), &RANDOM_SNAPSHOT_2X2_SEED7);
    }

    const RANDOM_SNAPSHOT_2X2_SEED7: [u32; 4] = [14, 18, 27, 71];

    #[test]
    fn prime_validation() {
        assert!(PrimeField::new(32003).is_ok());
        assert_eq!(PrimeField::new(32004), Err(FieldError::NotPrime(32004)));
        assert!(PrimeField::new(1).is_err());
    }

    #[test]
    fn splitting_projection_kills_subspace() {
        let f = f101();
        let w = Matrix::from_rows(f, 2, &[vec![1, 0], vec![1, 1], vec![0, 1]]);
        let s = Splitting::new(&w);
        assert_eq!(s.quotient_dim(), 1);
        assert!(s.projection.mul(&w).is_zero());
        assert_eq!(s.projection.mul(&s.section()), Matrix::identity(f, 1));
    }

    #[test]
    fn coordinates_roundtrip() {
        let f = f101();
        let b = Matrix::from_rows(f, 2, &[vec![1, 0], vec![2, 1], vec![0, 5]]);
        let c = Coordinates::new(&b);
        let v = b.mul_vec(&[4, 9]);
        assert_eq!(c.coords(&v), Some(vec![4, 9]));
        assert_eq!(c.coords(&[1, 0, 0]), None);
    }

    #[test]
    fn cohomology_of_short_exact() {
        let f = f101();
        // 0 -> F -> F^2 -> F -> 0
        let inc = Matrix::from_rows(f, 1, &[vec![1], vec![0]]);
        let out = Matrix::from_rows(f, 2, &[vec![0, 1]]);
        assert_eq!(cohomology_dim(2, Some(&inc), Some(&out)), 0);
        assert_eq!(cohomology_dim(2, None, Some(&out)), 1);
    }
}
