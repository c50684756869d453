//! Dense complex matrices and a cyclic Jacobi eigensolver for Hermitian input.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::scalar::Real;

/// Row-major dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from rows; panics on ragged input.
    pub fn from_rows(rows: &[Vec<Complex<T>>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex<T>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Complex<T>> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: T) -> Self {
        self.scale(Complex::new(s, T::zero()))
    }

    /// Entrywise (Schur–Hadamard) product.
    pub fn hadamard(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a * b).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(&a, &b)| a * b).sum())
            .collect()
    }

    /// `v* M v` for square `M`.
    pub fn quadratic_form(&self, v: &[Complex<T>]) -> Complex<T> {
        inner(&self.mul_vec(v), v)
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    /// Largest `|M - M*|` entry.
    pub fn hermitian_defect(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.rows {
            for j in 0..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }

    /// Copies the `size`×`size` block whose top-left corner is `(r0, c0)`.
    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)])
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)];
            }
        }
    }

    /// Determinant of a 3×3 matrix by cofactor expansion.
    pub fn det3(&self) -> Complex<T> {
        assert!(self.rows == 3 && self.cols == 3, "det3 needs a 3x3 matrix");
        let m = |i, j| self[(i, j)];
        m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
            - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
            + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
    }
}

impl<T> Index<(usize, usize)> for CMatrix<T> {
    type Output = Complex<T>;

    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for CMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Real> Mul for &CMatrix<T> {
    type Output = CMatrix<T>;

    fn mul(self, rhs: &CMatrix<T>) -> CMatrix<T> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl<T: Real> Add for &CMatrix<T> {
    type Output = CMatrix<T>;

    fn add(self, rhs: &CMatrix<T>) -> CMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a + b).collect(),
        }
    }
}

impl<T: Real> Sub for &CMatrix<T> {
    type Output = CMatrix<T>;

    fn sub(self, rhs: &CMatrix<T>) -> CMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a - b).collect(),
        }
    }
}

/// `⟨u, v⟩ = Σ u_i conj(v_i)`, linear in the first slot.
pub fn inner<T: Real>(u: &[Complex<T>], v: &[Complex<T>]) -> Complex<T> {
    assert_eq!(u.len(), v.len());
    u.iter().zip(v).map(|(&a, &b)| a * b.conj()).sum()
}

pub fn norm<T: Real>(v: &[Complex<T>]) -> T {
    v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
}

/// Returns `v / ‖v‖`, or `None` for a zero vector.
pub fn normalized<T: Real>(v: &[Complex<T>]) -> Option<Vec<Complex<T>>> {
    let n = norm(v);
    if n <= T::epsilon() {
        return None;
    }
    Some(v.iter().map(|&z| z / n).collect())
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct HermitianEigen<T> {
    pub values: Vec<T>,
    /// Column `k` is the unit eigenvector for `values[k]`.
    pub vectors: CMatrix<T>,
}

impl<T: Real> HermitianEigen<T> {
    pub fn min_value(&self) -> T {
        self.values[0]
    }

    pub fn vector(&self, k: usize) -> Vec<Complex<T>> {
        self.vectors.column(k)
    }
}

const MAX_SWEEPS: usize = 100;

/// Cyclic complex Jacobi rotations. Only the Hermitian part of `a` is used.
pub fn hermitian_eigen<T: Real>(a: &CMatrix<T>) -> HermitianEigen<T> {
    assert!(a.is_square(), "eigen-decomposition needs a square matrix");
    let n = a.rows();
    let half = T::of(0.5);
    let mut m = CMatrix::from_fn(n, n, |i, j| (a[(i, j)] + a[(j, i)].conj()) * half);
    let mut v = CMatrix::identity(n);
    let scale = m.frobenius_norm().max(T::min_positive_value());
    let stop = T::epsilon() * T::epsilon() * scale * scale;

    for _ in 0..MAX_SWEEPS {
        let mut off = T::zero();
        for p in 0..n {
            for q in p + 1..n {
                off += m[(p, q)].norm_sqr();
            }
        }
        if off <= stop {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<T> = (0..n).map(|i| m[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap_or(std::cmp::Ordering::Equal));
    HermitianEigen {
        values: order.iter().map(|&i| diag[i]).collect(),
        vectors: CMatrix::from_fn(n, n, |r, c| v[(r, order[c])]),
    }
}

/// Annihilates `m[(p, q)]` with the unitary `J = diag(1, e^{-iθ}) · R(c, s)`.
fn rotate<T: Real>(m: &mut CMatrix<T>, v: &mut CMatrix<T>, p: usize, q: usize) {
    let apq = m[(p, q)];
    let r = apq.norm();
    if r <= T::min_positive_value() {
        return;
    }
    let phase = apq / r;
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    let theta = (aqq - app) / (r + r);
    let t = {
        let t = T::one() / (theta.abs() + (theta * theta + T::one()).sqrt());
        if theta < T::zero() {
            -t
        } else {
            t
        }
    };
    let c = T::one() / (t * t + T::one()).sqrt();
    let s = t * c;
    let cz = Complex::new(c, T::zero());
    let sz = Complex::new(s, T::zero());
    let pc = phase.conj();
    let n = m.rows();

    // Columns: M ← M J.
    for k in 0..n {
        let mkp = m[(k, p)];
        let mkq = m[(k, q)];
        m[(k, p)] = cz * mkp - sz * pc * mkq;
        m[(k, q)] = sz * mkp + cz * pc * mkq;
    }
    // Rows: M ← J* M.
    for k in 0..n {
        let mpk = m[(p, k)];
        let mqk = m[(q, k)];
        m[(p, k)] = cz * mpk - sz * phase * mqk;
        m[(q, k)] = sz * mpk + cz * phase * mqk;
    }
    m[(p, q)] = Complex::zero();
    m[(q, p)] = Complex::zero();
    m[(p, p)] = Complex::new(m[(p, p)].re, T::zero());
    m[(q, q)] = Complex::new(m[(q, q)].re, T::zero());

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = cz * vkp - sz * pc * vkq;
        v[(k, q)] = sz * vkp + cz * pc * vkq;
    }
}

/// Smallest eigenvalue of the Hermitian part of `a`.
pub fn min_eigenvalue<T: Real>(a: &CMatrix<T>) -> T {
    hermitian_eigen(a).min_value()
}

/// PSD test with a dimension-scaled tolerance: `λ_min ≥ −tol · dim`.
pub fn is_psd<T: Real>(a: &CMatrix<T>, tol: T) -> bool {
    min_eigenvalue(a) >= -tol * T::of_usize(a.rows())
}
