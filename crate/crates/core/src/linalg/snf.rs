//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;

/// `u * m * v == diagonal`, with `u`, `v` unimodular and the nonzero
/// diagonal entries `factors` positive and forming a divisibility chain.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub factors: Vec<BigInt>,
    pub u: Matrix<BigInt>,
    pub v: Matrix<BigInt>,
    pub diagonal: Matrix<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Invariant factors greater than one: the torsion coefficients of the cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

pub fn int_matrix(rows: usize, cols: usize, entries: &[i64]) -> Matrix<BigInt> {
    assert_eq!(entries.len(), rows * cols);
    Matrix::from_rows(
        cols,
        entries
            .chunks(cols.max(1))
            .take(rows)
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect(),
    )
}

fn int_identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn smith_normal_form(m: &Matrix<BigInt>) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.to_rows();
    let mut u = int_identity(rows);
    let mut v = int_identity(cols);

    let row_axpy = |mat: &mut Vec<Vec<BigInt>>, dst: usize, q: &BigInt, src: usize| {
        let (s, d) = if src < dst {
            let (lo, hi) = mat.split_at_mut(dst);
            (&lo[src], &mut hi[0])
        } else {
            let (lo, hi) = mat.split_at_mut(src);
            (&hi[0], &mut lo[dst])
        };
        for (x, y) in d.iter_mut().zip(s.iter()) {
            if !y.is_zero() {
                *x -= q * y;
            }
        }
    };
    let col_axpy = |mat: &mut Vec<Vec<BigInt>>, dst: usize, q: &BigInt, src: usize| {
        for row in mat.iter_mut() {
            if !row[src].is_zero() {
                let delta = q * &row[src];
                row[dst] -= delta;
            }
        }
    };

    let mut factors = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            // Smallest nonzero entry of the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                break;
            };
            a.swap(t, bi);
            u.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            for row in v.iter_mut() {
                row.swap(t, bj);
            }

            let mut clean = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    row_axpy(&mut a, i, &q, t);
                    row_axpy(&mut u, i, &q, t);
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    col_axpy(&mut a, j, &q, t);
                    col_axpy(&mut v, j, &q, t);
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match offender {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut a, t, &minus_one, i);
                    row_axpy(&mut u, t, &minus_one, i);
                }
                None => break,
            }
        }
        if a[t][t].is_zero() {
            break;
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
        factors.push(a[t][t].clone());
    }

    SmithForm {
        factors,
        u: Matrix::from_rows(rows, u),
        v: Matrix::from_rows(cols, v),
        diagonal: Matrix::from_rows(cols, a),
    }
}

pub fn int_mul(a: &Matrix<BigInt>, b: &Matrix<BigInt>) -> Matrix<BigInt> {
    assert_eq!(a.cols(), b.rows());
    let mut out = vec![vec![BigInt::zero(); b.cols()]; a.rows()];
    for (i, row) in out.iter_mut().enumerate() {
        for k in 0..a.cols() {
            let x = a.get(i, k);
            if x.is_zero() {
                continue;
            }
            for (j, cell) in row.iter_mut().enumerate() {
                let y = b.get(k, j);
                if !y.is_zero() {
                    *cell += x * y;
                }
            }
        }
    }
    Matrix::from_rows(b.cols(), out)
}
