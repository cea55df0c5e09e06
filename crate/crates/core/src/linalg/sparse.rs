//! Sparse rank computation for large incidence matrices.

use std::collections::HashMap;

use super::field::Field;

/// A sparse vector: `(column, value)` pairs sorted by column, no zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

/// Rank of a matrix given by sparse rows.
///
/// Each row is reduced by the stored row sharing its largest column index
/// until it vanishes or claims a fresh pivot. On simplicial incidence matrices
/// this keeps fill-in small, which is what makes products of catalog spaces
/// tractable over the rationals.
pub fn sparse_rank<F: Field>(field: &F, rows: impl IntoIterator<Item = SparseVec<F::Elem>>) -> usize {
    let mut pivots: HashMap<usize, SparseVec<F::Elem>> = HashMap::new();
    for mut row in rows {
        row.retain(|(_, v)| !field.is_zero(v));
        while let Some((low, lead)) = row.last().cloned() {
            match pivots.get(&low) {
                Some(p) => {
                    row = sub_scaled(field, &row, &lead, p);
                }
                None => {
                    let inv = field.inv(&lead).expect("nonzero lead");
                    let normalized = row.into_iter().map(|(c, v)| (c, field.mul(&v, &inv))).collect();
                    pivots.insert(low, normalized);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// `a - c*b` on sparse vectors.
fn sub_scaled<F: Field>(field: &F, a: &SparseVec<F::Elem>, c: &F::Elem, b: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, field.neg(&field.mul(c, &b[j].1))));
            j += 1;
        } else {
            let v = field.sub_mul(&a[i].1, c, &b[j].1);
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
