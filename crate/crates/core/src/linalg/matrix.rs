//! Dense exact matrices and deterministic row reduction.

use super::field::Field;

/// Row-major dense matrix over some exact scalar type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn zeros<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, field.zero())
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<E>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|r| dot(field, self.row(r), v)).collect()
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Matrix<E>) -> Matrix<E> {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if field.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !field.is_zero(b) {
                        let cur = field.add(out.get(i, j), &field.mul(a, b));
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.data.iter().all(|x| field.is_zero(x))
    }
}

pub fn dot<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !field.is_zero(x) && !field.is_zero(y) {
            acc = field.add(&acc, &field.mul(x, y));
        }
    }
    acc
}

pub fn is_zero_vec<F: Field>(field: &F, v: &[F::Elem]) -> bool {
    v.iter().all(|x| field.is_zero(x))
}

/// `a += c * b`
pub fn axpy<F: Field>(field: &F, a: &mut [F::Elem], c: &F::Elem, b: &[F::Elem]) {
    if field.is_zero(c) {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !field.is_zero(y) {
            *x = field.add(x, &field.mul(c, y));
        }
    }
}

pub fn scale<F: Field>(field: &F, a: &mut [F::Elem], c: &F::Elem) {
    for x in a.iter_mut() {
        if !field.is_zero(x) {
            *x = field.mul(x, c);
        }
    }
}

/// Reduced row echelon form of a list of row vectors. Returns the nonzero
/// reduced rows together with their pivot columns, pivots strictly increasing.
/// Pivoting is first-nonzero-in-column, so the output only depends on the
/// row space and the input order never leaks into it.
pub fn rref<F: Field>(field: &F, rows: Vec<Vec<F::Elem>>, cols: usize) -> (Vec<Vec<F::Elem>>, Vec<usize>) {
    let mut rows = rows;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(&rows[r][c]).expect("nonzero pivot");
        scale(field, &mut rows[r], &inv);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !field.is_zero(&row[c]) {
                let coef = field.neg(&row[c]);
                axpy(field, row, &coef, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Rank, kernel basis and column-space basis of a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankKernelImage<E> {
    pub rank: usize,
    /// Basis of `{v : M v = 0}`, in reduced row echelon form.
    pub kernel: Vec<Vec<E>>,
    /// Basis of the column space, in reduced row echelon form.
    pub image: Vec<Vec<E>>,
}

pub fn rank_kernel_image<F: Field>(field: &F, m: &Matrix<F::Elem>) -> RankKernelImage<F::Elem> {
    let (reduced, pivots) = rref(field, m.to_rows(), m.cols());
    let rank = pivots.len();
    let mut kernel = Vec::new();
    let mut is_pivot = vec![false; m.cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for free in (0..m.cols()).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); m.cols()];
        v[free] = field.one();
        for (row, &p) in reduced.iter().zip(&pivots) {
            v[p] = field.neg(&row[free]);
        }
        kernel.push(v);
    }
    let (kernel, _) = rref(field, kernel, m.cols());
    let (image, _) = rref(field, m.transpose().to_rows(), m.rows());
    RankKernelImage { rank, kernel, image }
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    rref(field, m.to_rows(), m.cols()).1.len()
}

/// An incrementally grown echelon basis, used for independence tests and for
/// reducing vectors modulo a subspace.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    dim: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, dim: usize) -> Self {
        Echelon {
            field,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Reduces `v` against the stored rows; the result has zeros at all pivots.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !self.field.is_zero(&v[p]) {
                let coef = self.field.neg(&v[p]);
                axpy(&self.field, &mut v, &coef, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        is_zero_vec(&self.field, &self.reduce(v))
    }

    /// Inserts `v` if it is independent of the current rows. Returns whether
    /// the span grew.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !self.field.is_zero(x)) else {
            return false;
        };
        let inv = self.field.inv(&r[p]).expect("nonzero");
        scale(&self.field, &mut r, &inv);
        // Keep the stored rows mutually reduced.
        for row in self.rows.iter_mut() {
            if !self.field.is_zero(&row[p]) {
                let coef = self.field.neg(&row[p]);
                axpy(&self.field, row, &coef, &r);
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        true
    }

    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
}
