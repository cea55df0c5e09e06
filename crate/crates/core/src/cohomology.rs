//! Simplicial cochains, cohomology bases, cup-product rings, induced ring
//! homomorphisms, tensor rings and integral connectivity.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{
    axpy, is_zero_vec, rank_kernel_image, rref, smith_normal_form, sparse_rank, Echelon, Field, FieldSpec, Matrix,
    SparseVec,
};
use crate::simplicial::{faces, SimplicialComplex, SimplicialMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("induced map is not multiplicative on basis pair ({0}, {1})")]
    NotMultiplicative(usize, usize),
    #[error("complex is disconnected (reduced H_0 has rank {0})")]
    Disconnected(usize),
    #[error("complex is empty")]
    Empty,
}

/// Coboundary matrices `delta^k : C^k -> C^{k+1}` for `k = 0..=dim`, with
/// rows indexed by (k+1)-simplices and columns by k-simplices. The top one has
/// no rows.
pub fn coboundary_matrices<F: Field>(x: &SimplicialComplex, field: &F) -> Vec<Matrix<F::Elem>> {
    let top = x.dim();
    (0..=top.max(-1))
        .map(|k| {
            let k = k as usize;
            let mut m = Matrix::zeros(field, x.count(k + 1), x.count(k));
            for (r, tau) in x.simplices(k + 1).iter().enumerate() {
                for (i, face) in faces(tau) {
                    let c = x.simplex_index(&face).expect("downward closed");
                    m.set(r, c, sign(field, i));
                }
            }
            m
        })
        .collect()
}

fn sign<F: Field>(field: &F, i: usize) -> F::Elem {
    if i.is_multiple_of(2) {
        field.one()
    } else {
        field.neg(&field.one())
    }
}

fn sparse_coboundary<F: Field>(x: &SimplicialComplex, field: &F, k: usize) -> Vec<SparseVec<F::Elem>> {
    x.simplices(k + 1)
        .iter()
        .map(|tau| {
            let mut row: SparseVec<F::Elem> = faces(tau)
                .map(|(i, f)| (x.simplex_index(&f).expect("downward closed"), sign(field, i)))
                .collect();
            row.sort_by_key(|(c, _)| *c);
            row
        })
        .collect()
}

/// Betti numbers of `H^*(x; field)` from sparse ranks only.
pub fn cohomology_dims<F: Field>(x: &SimplicialComplex, field: &F) -> Vec<usize> {
    if x.is_empty() {
        return Vec::new();
    }
    let top = x.dim() as usize;
    let ranks: Vec<usize> = (0..=top)
        .map(|k| sparse_rank(field, sparse_coboundary(x, field, k)))
        .collect();
    (0..=top)
        .map(|k| x.count(k) - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 })
        .collect()
}

/// Solves for coordinates of cocycles modulo coboundaries in a fixed basis
/// of representatives.
#[derive(Clone, Debug)]
struct QuotientSolver<F: Field> {
    len: usize,
    boundaries: Echelon<F>,
    /// RREF rows of `[rep | e_i]`, pivoting only on the cochain part.
    reduced: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> QuotientSolver<F> {
    fn coordinates(&self, field: &F, cocycle: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let mut rest = self.boundaries.reduce(cocycle);
        let d = self.reduced.len();
        let mut coords = vec![field.zero(); d];
        for (row, &p) in self.reduced.iter().zip(&self.pivots) {
            if field.is_zero(&rest[p]) {
                continue;
            }
            let c = rest[p].clone();
            let neg = field.neg(&c);
            axpy(field, &mut rest, &neg, &row[..self.len]);
            axpy(field, &mut coords, &c, &row[self.len..]);
        }
        is_zero_vec(field, &rest).then_some(coords)
    }
}

/// Cohomology as per-degree dimensions and cocycle representatives.
#[derive(Clone, Debug)]
pub struct GradedVectorSpace<F: Field> {
    field: F,
    reps: Vec<Vec<Vec<F::Elem>>>,
    solvers: Vec<QuotientSolver<F>>,
}

impl<F: Field> GradedVectorSpace<F> {
    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dims(&self) -> Vec<usize> {
        self.reps.iter().map(Vec::len).collect()
    }

    pub fn top_degree(&self) -> usize {
        self.reps.len().saturating_sub(1)
    }

    /// Cocycle representatives in degree `k`, as cochain vectors indexed by
    /// the k-simplices.
    pub fn representatives(&self, k: usize) -> &[Vec<F::Elem>] {
        self.reps.get(k).map_or(&[], |v| v.as_slice())
    }

    /// Coordinates of the class of `cocycle`; `None` if it is not a cocycle
    /// representable in this space (for instance, not closed).
    pub fn coordinates(&self, k: usize, cocycle: &[F::Elem]) -> Option<Vec<F::Elem>> {
        self.solvers.get(k)?.coordinates(&self.field, cocycle)
    }
}

/// Canonical representatives: the RREF cocycle basis reduced modulo the RREF
/// coboundary basis, keeping the ones independent in the quotient.
pub fn cohomology_basis<F: Field>(x: &SimplicialComplex, field: &F) -> GradedVectorSpace<F> {
    let deltas = coboundary_matrices(x, field);
    let rkis: Vec<_> = deltas.iter().map(|d| rank_kernel_image(field, d)).collect();
    let mut reps = Vec::new();
    let mut solvers = Vec::new();
    for k in 0..deltas.len() {
        let n = x.count(k);
        let mut boundaries = Echelon::new(field.clone(), n);
        if k > 0 {
            for b in &rkis[k - 1].image {
                boundaries.insert(b);
            }
        }
        let mut chosen = Echelon::new(field.clone(), n);
        let mut level = Vec::new();
        for z in &rkis[k].kernel {
            let r = boundaries.reduce(z);
            if chosen.insert(&r) {
                level.push(r);
            }
        }
        let d = level.len();
        let augmented: Vec<Vec<F::Elem>> = level
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..d).map(|j| if i == j { field.one() } else { field.zero() }));
                row
            })
            .collect();
        let (reduced, pivots) = rref(field, augmented, n);
        solvers.push(QuotientSolver {
            len: n,
            boundaries,
            reduced,
            pivots,
        });
        reps.push(level);
    }
    GradedVectorSpace {
        field: field.clone(),
        reps,
        solvers,
    }
}

/// Alexander-Whitney product of a p-cochain and a q-cochain.
pub fn cup_cochains<F: Field>(
    x: &SimplicialComplex,
    field: &F,
    p: usize,
    alpha: &[F::Elem],
    q: usize,
    beta: &[F::Elem],
) -> Vec<F::Elem> {
    x.simplices(p + q)
        .iter()
        .map(|tau| {
            let front = x.simplex_index(&tau[..=p]).expect("front face");
            let back = x.simplex_index(&tau[p..]).expect("back face");
            field.mul(&alpha[front], &beta[back])
        })
        .collect()
}

/// A finite-dimensional graded algebra given by structure constants on a
/// basis ordered by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRing<F: Field> {
    field: F,
    dims: Vec<usize>,
    degrees: Vec<usize>,
    labels: Vec<String>,
    /// `table[i][j]` is the product of basis elements i and j.
    table: Vec<Vec<Vec<F::Elem>>>,
    unit: Vec<F::Elem>,
}

impl<F: Field> GradedRing<F> {
    /// Assembles a ring from raw data; shape is checked, axioms are not.
    pub fn from_parts(
        field: F,
        dims: Vec<usize>,
        labels: Vec<String>,
        table: Vec<Vec<Vec<F::Elem>>>,
        unit: Vec<F::Elem>,
    ) -> Self {
        let degrees: Vec<usize> = dims
            .iter()
            .enumerate()
            .flat_map(|(k, &d)| std::iter::repeat_n(k, d))
            .collect();
        let n = degrees.len();
        assert_eq!(labels.len(), n);
        assert_eq!(unit.len(), n);
        assert_eq!(table.len(), n);
        assert!(table.iter().all(|r| r.len() == n && r.iter().all(|v| v.len() == n)));
        GradedRing {
            field,
            dims,
            degrees,
            labels,
            table,
            unit,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    /// Global index of the first basis element of degree `k`.
    pub fn offset(&self, k: usize) -> usize {
        self.dims.iter().take(k).sum()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[F::Elem] {
        &self.unit
    }

    pub fn product(&self, i: usize, j: usize) -> &[F::Elem] {
        &self.table[i][j]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.total_dim()];
        v[i] = self.field.one();
        v
    }

    pub fn zero_vector(&self) -> Vec<F::Elem> {
        vec![self.field.zero(); self.total_dim()]
    }

    /// Bilinear product of coordinate vectors.
    pub fn mul(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = self.zero_vector();
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !f.is_zero(x)) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !f.is_zero(y)) {
                let c = f.mul(x, y);
                axpy(f, &mut out, &c, &self.table[i][j]);
            }
        }
        out
    }

    /// Overwrites one structure constant; used for negative controls.
    pub fn set_constant(&mut self, i: usize, j: usize, k: usize, value: F::Elem) {
        self.table[i][j][k] = value;
    }

    /// Vector with exactly one nonzero degree, if any.
    pub fn homogeneous_degree(&self, v: &[F::Elem]) -> Option<usize> {
        let mut deg = None;
        for (i, x) in v.iter().enumerate() {
            if !self.field.is_zero(x) {
                match deg {
                    None => deg = Some(self.degrees[i]),
                    Some(d) if d != self.degrees[i] => return None,
                    _ => {}
                }
            }
        }
        deg
    }

    /// Structure constants rendered per nonzero basis product, for reports.
    pub fn nonzero_products(&self) -> Vec<BasisProduct> {
        let mut out = Vec::new();
        for i in 0..self.total_dim() {
            for j in 0..self.total_dim() {
                let v = &self.table[i][j];
                if !is_zero_vec(&self.field, v) {
                    let terms = v
                        .iter()
                        .enumerate()
                        .filter(|(_, x)| !self.field.is_zero(x))
                        .map(|(k, x)| (k, self.field.render(x)))
                        .collect();
                    out.push((i, j, terms));
                }
            }
        }
        out
    }
}

/// `(i, j, terms)`: the product of basis elements i and j as nonzero
/// `(index, coefficient)` terms.
pub type BasisProduct = (usize, usize, Vec<(usize, String)>);

/// Cohomology ring together with the cochain data it was computed from.
#[derive(Clone, Debug)]
pub struct CohomologyRing<F: Field> {
    pub space: GradedVectorSpace<F>,
    pub ring: GradedRing<F>,
}

pub fn cohomology_ring<F: Field>(x: &SimplicialComplex, field: &F) -> CohomologyRing<F> {
    let space = cohomology_basis(x, field);
    let dims = space.dims();
    let n: usize = dims.iter().sum();
    let mut labels = Vec::with_capacity(n);
    let mut cochains = Vec::with_capacity(n);
    for (k, &d) in dims.iter().enumerate() {
        for i in 0..d {
            labels.push(format!("x{k}_{i}"));
            cochains.push((k, &space.reps[k][i]));
        }
    }
    let offsets: Vec<usize> = dims
        .iter()
        .scan(0, |acc, &d| {
            let o = *acc;
            *acc += d;
            Some(o)
        })
        .collect();
    let zero = vec![field.zero(); n];
    let mut table = vec![vec![zero.clone(); n]; n];
    for (i, (p, a)) in cochains.iter().enumerate() {
        for (j, (q, b)) in cochains.iter().enumerate() {
            let k = p + q;
            if k >= dims.len() || dims[k] == 0 {
                continue;
            }
            let prod = cup_cochains(x, field, *p, a, *q, b);
            let coords = space.coordinates(k, &prod).expect("cup of cocycles is a cocycle");
            for (t, c) in coords.into_iter().enumerate() {
                table[i][j][offsets[k] + t] = c;
            }
        }
    }
    let mut unit = zero;
    if !dims.is_empty() {
        let ones = vec![field.one(); x.count(0)];
        for (t, c) in space
            .coordinates(0, &ones)
            .expect("constants are cocycles")
            .into_iter()
            .enumerate()
        {
            unit[t] = c;
        }
    }
    let ring = GradedRing::from_parts(field.clone(), dims, labels, table, unit);
    CohomologyRing { space, ring }
}

pub fn cup_ring<F: Field>(x: &SimplicialComplex, field: &F) -> GradedRing<F> {
    cohomology_ring(x, field).ring
}

/// A degree-preserving linear map between graded rings, stored as one
/// block-diagonal matrix in global coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingHom<F: Field> {
    source: GradedRing<F>,
    target: GradedRing<F>,
    matrix: Matrix<F::Elem>,
}

impl<F: Field> RingHom<F> {
    pub fn new(source: GradedRing<F>, target: GradedRing<F>, matrix: Matrix<F::Elem>) -> Self {
        assert_eq!(matrix.rows(), target.total_dim());
        assert_eq!(matrix.cols(), source.total_dim());
        RingHom { source, target, matrix }
    }

    pub fn source(&self) -> &GradedRing<F> {
        &self.source
    }

    pub fn target(&self) -> &GradedRing<F> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix<F::Elem> {
        &self.matrix
    }

    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        self.matrix.mul_vec(&self.source.field, v)
    }

    /// The block `H^k(source) -> H^k(target)`.
    pub fn block(&self, k: usize) -> Matrix<F::Elem> {
        let (sd, td) = (dim_at(&self.source, k), dim_at(&self.target, k));
        let (so, to) = (self.source.offset(k), self.target.offset(k));
        let rows = (0..td)
            .map(|r| (0..sd).map(|c| self.matrix.get(to + r, so + c).clone()).collect())
            .collect();
        Matrix::from_rows(sd, rows)
    }

    pub fn rank_in_degree(&self, k: usize) -> usize {
        rank_kernel_image(&self.source.field, &self.block(k)).rank
    }

    /// Injective in every degree `0..=max_degree`.
    pub fn is_injective_up_to(&self, max_degree: usize) -> bool {
        (0..=max_degree).all(|k| self.rank_in_degree(k) == dim_at(&self.source, k))
    }

    /// Kernel basis in global source coordinates, degree by degree, each
    /// degree block in reduced row echelon form.
    pub fn kernel(&self) -> Vec<Vec<F::Elem>> {
        let field = &self.source.field;
        let mut out = Vec::new();
        for k in 0..self.source.dims.len() {
            let off = self.source.offset(k);
            for v in rank_kernel_image(field, &self.block(k)).kernel {
                let mut g = self.source.zero_vector();
                for (i, x) in v.into_iter().enumerate() {
                    g[off + i] = x;
                }
                out.push(g);
            }
        }
        out
    }

    pub fn is_unital(&self) -> bool {
        self.apply(self.source.unit()) == self.target.unit
    }

    /// First basis pair on which `h(ab) != h(a)h(b)`.
    pub fn check_multiplicative(&self) -> Result<(), CohomologyError> {
        let n = self.source.total_dim();
        let images: Vec<Vec<F::Elem>> = (0..n).map(|i| self.matrix.column(i)).collect();
        for i in 0..n {
            for j in 0..n {
                let lhs = self.apply(self.source.product(i, j));
                let rhs = self.target.mul(&images[i], &images[j]);
                if lhs != rhs {
                    return Err(CohomologyError::NotMultiplicative(i, j));
                }
            }
        }
        Ok(())
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &RingHom<F>) -> RingHom<F> {
        assert_eq!(self.target.dims, next.source.dims, "incompatible ring homs");
        RingHom {
            source: self.source.clone(),
            target: next.target.clone(),
            matrix: next.matrix.mul(&self.source.field, &self.matrix),
        }
    }
}

fn dim_at<F: Field>(r: &GradedRing<F>, k: usize) -> usize {
    r.dims.get(k).copied().unwrap_or(0)
}

/// Pullback `f^*: H^*(Y) -> H^*(X)` from already computed cohomology rings.
pub fn induced_ring_hom_from<F: Field>(
    f: &SimplicialMap,
    hx: &CohomologyRing<F>,
    hy: &CohomologyRing<F>,
) -> Result<RingHom<F>, CohomologyError> {
    let field = hx.space.field();
    let (x, y) = (f.domain(), f.codomain());
    let mut matrix = Matrix::zeros(field, hx.ring.total_dim(), hy.ring.total_dim());
    for k in 0..hy.ring.dims.len().min(hx.ring.dims.len()) {
        for (j, phi) in hy.space.representatives(k).iter().enumerate() {
            let pulled: Vec<F::Elem> = x
                .simplices(k)
                .iter()
                .map(|s| {
                    let img: Vec<usize> = s.iter().map(|&v| f.vertex_map()[v]).collect();
                    match sorted_with_sign(&img) {
                        Some((sorted, odd)) => {
                            let val = &phi[y.simplex_index(&sorted).expect("simplicial map")];
                            if odd {
                                field.neg(val)
                            } else {
                                val.clone()
                            }
                        }
                        None => field.zero(),
                    }
                })
                .collect();
            let coords = hx
                .space
                .coordinates(k, &pulled)
                .expect("pullback of a cocycle is a cocycle");
            let (ro, co) = (hx.ring.offset(k), hy.ring.offset(k));
            for (i, c) in coords.into_iter().enumerate() {
                matrix.set(ro + i, co + j, c);
            }
        }
    }
    let hom = RingHom::new(hy.ring.clone(), hx.ring.clone(), matrix);
    hom.check_multiplicative()?;
    Ok(hom)
}

pub fn induced_ring_hom<F: Field>(f: &SimplicialMap, field: &F) -> Result<RingHom<F>, CohomologyError> {
    let hx = cohomology_ring(f.domain(), field);
    let hy = cohomology_ring(f.codomain(), field);
    induced_ring_hom_from(f, &hx, &hy)
}

/// Sorts distinct vertices, reporting the parity of the sorting permutation;
/// `None` when a vertex repeats.
fn sorted_with_sign(v: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut s = v.to_vec();
    let mut odd = false;
    for i in 1..s.len() {
        let mut j = i;
        while j > 0 && s[j - 1] > s[j] {
            s.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if s.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((s, odd))
    }
}

/// The basis of `A ⊗ B` as pairs `(a, b)`, ordered by total degree and then
/// lexicographically.
pub fn tensor_basis_pairs<F: Field>(a: &GradedRing<F>, b: &GradedRing<F>) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = (0..a.total_dim())
        .flat_map(|i| (0..b.total_dim()).map(move |j| (i, j)))
        .collect();
    pairs.sort_by_key(|&(i, j)| (a.degree(i) + b.degree(j), i, j));
    pairs
}

/// `A ⊗ B` with the Koszul sign `(a⊗b)(a'⊗b') = (-1)^{|b||a'|} aa' ⊗ bb'`.
pub fn tensor_ring<F: Field>(a: &GradedRing<F>, b: &GradedRing<F>) -> Result<GradedRing<F>, CohomologyError> {
    let field = a.field().clone();
    if field.spec() != b.field().spec() {
        return Err(CohomologyError::FieldMismatch(field.spec(), b.field().spec()));
    }
    let pairs = tensor_basis_pairs(a, b);
    let n = pairs.len();
    let mut index = vec![vec![0usize; b.total_dim()]; a.total_dim()];
    for (g, &(i, j)) in pairs.iter().enumerate() {
        index[i][j] = g;
    }
    let top = if n == 0 { 0 } else { a.top_degree() + b.top_degree() };
    let mut dims = vec![0usize; if n == 0 { 0 } else { top + 1 }];
    for &(i, j) in &pairs {
        dims[a.degree(i) + b.degree(j)] += 1;
    }
    let labels = pairs
        .iter()
        .map(|&(i, j)| format!("{}⊗{}", a.labels()[i], b.labels()[j]))
        .collect();
    let zero = vec![field.zero(); n];
    let mut table = vec![vec![zero.clone(); n]; n];
    for (g, &(i, j)) in pairs.iter().enumerate() {
        for (h, &(k, l)) in pairs.iter().enumerate() {
            let negate = (b.degree(j) * a.degree(k)) % 2 == 1;
            let left = a.product(i, k);
            let right = b.product(j, l);
            let out = &mut table[g][h];
            for (m, x) in left.iter().enumerate().filter(|(_, x)| !field.is_zero(x)) {
                for (q, y) in right.iter().enumerate().filter(|(_, y)| !field.is_zero(y)) {
                    let mut c = field.mul(x, y);
                    if negate {
                        c = field.neg(&c);
                    }
                    let slot = index[m][q];
                    out[slot] = field.add(&out[slot], &c);
                }
            }
        }
    }
    let mut unit = zero;
    for (m, x) in a.unit().iter().enumerate().filter(|(_, x)| !field.is_zero(x)) {
        for (q, y) in b.unit().iter().enumerate().filter(|(_, y)| !field.is_zero(y)) {
            unit[index[m][q]] = field.mul(x, y);
        }
    }
    Ok(GradedRing::from_parts(field, dims, labels, table, unit))
}

/// `(1, f)^*: H^*(X) ⊗ H^*(Y) -> H^*(X)`, `u ⊗ v ↦ u · f^*(v)`, from `f^*`.
pub fn one_cross_f_from<F: Field>(fstar: &RingHom<F>) -> RingHom<F> {
    let hx = fstar.target();
    let hy = fstar.source();
    let tensor = tensor_ring(hx, hy).expect("same field");
    let pairs = tensor_basis_pairs(hx, hy);
    let field = hx.field();
    let mut matrix = Matrix::zeros(field, hx.total_dim(), tensor.total_dim());
    for (g, &(i, j)) in pairs.iter().enumerate() {
        let image = hx.mul(&hx.basis_vector(i), &fstar.matrix().column(j));
        for (r, x) in image.into_iter().enumerate() {
            matrix.set(r, g, x);
        }
    }
    RingHom::new(tensor, hx.clone(), matrix)
}

pub fn one_cross_f_hom<F: Field>(f: &SimplicialMap, field: &F) -> Result<RingHom<F>, CohomologyError> {
    Ok(one_cross_f_from(&induced_ring_hom(f, field)?))
}

/// `Δ^*: H^*(X) ⊗ H^*(X) -> H^*(X)`, the cup product map.
pub fn diagonal_hom<F: Field>(x: &CohomologyRing<F>) -> RingHom<F> {
    let n = x.ring.total_dim();
    let id = RingHom::new(x.ring.clone(), x.ring.clone(), Matrix::identity(x.space.field(), n));
    one_cross_f_from(&id)
}

/// Homological connectivity: reduced integral homology vanishes in degrees
/// `0..=c`, or in every degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Connectivity {
    UpTo(usize),
    Acyclic,
}

impl Connectivity {
    pub fn as_option(&self) -> Option<usize> {
        match self {
            Connectivity::UpTo(c) => Some(*c),
            Connectivity::Acyclic => None,
        }
    }
}

/// Integral homology: Betti numbers and torsion coefficients per degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralHomology {
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<BigInt>>,
}

impl IntegralHomology {
    /// Cohomology dimensions over `field` by universal coefficients.
    pub fn field_dims(&self, field: FieldSpec) -> Vec<usize> {
        let p = BigInt::from(field.characteristic());
        let divisible = |k: usize| -> usize {
            if field == FieldSpec::Rationals {
                return 0;
            }
            self.torsion
                .get(k)
                .map_or(0, |t| t.iter().filter(|d| d.is_multiple_of(&p)).count())
        };
        (0..self.betti.len())
            .map(|k| self.betti[k] + divisible(k) + if k > 0 { divisible(k - 1) } else { 0 })
            .collect()
    }

    pub fn reduced_betti(&self, k: usize) -> usize {
        let b = self.betti.get(k).copied().unwrap_or(0);
        if k == 0 {
            b.saturating_sub(1)
        } else {
            b
        }
    }
}

pub fn integral_homology(x: &SimplicialComplex) -> IntegralHomology {
    if x.is_empty() {
        return IntegralHomology {
            betti: Vec::new(),
            torsion: Vec::new(),
        };
    }
    let top = x.dim() as usize;
    // ranks[k] and factors[k] describe the boundary map C_k -> C_{k-1}.
    let mut ranks = vec![0usize; top + 2];
    let mut factors: Vec<Vec<BigInt>> = vec![Vec::new(); top + 2];
    for k in 1..=top {
        let mut m = Matrix::filled(x.count(k - 1), x.count(k), BigInt::from(0));
        for (c, s) in x.simplices(k).iter().enumerate() {
            for (i, face) in faces(s) {
                let r = x.simplex_index(&face).expect("downward closed");
                m.set(r, c, BigInt::from(if i % 2 == 0 { 1 } else { -1 }));
            }
        }
        let snf = smith_normal_form(&m);
        ranks[k] = snf.rank();
        factors[k] = snf.torsion();
    }
    let betti = (0..=top).map(|k| x.count(k) - ranks[k] - ranks[k + 1]).collect();
    let torsion = (0..=top).map(|k| factors[k + 1].clone()).collect();
    IntegralHomology { betti, torsion }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub homology: IntegralHomology,
    pub connectivity: Connectivity,
}

/// Largest `c` with vanishing reduced integral homology through degree `c`.
pub fn integral_connectivity(x: &SimplicialComplex) -> Result<HomologyReport, CohomologyError> {
    if x.is_empty() {
        return Err(CohomologyError::Empty);
    }
    let homology = integral_homology(x);
    let reduced0 = homology.reduced_betti(0);
    if reduced0 > 0 {
        return Err(CohomologyError::Disconnected(reduced0));
    }
    let vanishes = |k: usize| homology.reduced_betti(k) == 0 && homology.torsion[k].is_empty();
    let top = homology.betti.len();
    let connectivity = match (1..top).find(|&k| !vanishes(k)) {
        Some(k) => Connectivity::UpTo(k - 1),
        None => Connectivity::Acyclic,
    };
    Ok(HomologyReport { homology, connectivity })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Rationals};
    use itertools::Itertools;

    fn circle() -> SimplicialComplex {
        SimplicialComplex::from_facets([["a", "b"], ["b", "c"], ["a", "c"]]).unwrap()
    }

    fn sphere2() -> SimplicialComplex {
        SimplicialComplex::from_facets((0..4).combinations(3).map(|f| f.into_iter().map(|v| v.to_string()))).unwrap()
    }

    fn rp2() -> SimplicialComplex {
        let f = [
            [0, 1, 4],
            [0, 1, 5],
            [0, 2, 3],
            [0, 2, 4],
            [0, 3, 5],
            [1, 2, 3],
            [1, 2, 5],
            [1, 3, 4],
            [2, 4, 5],
            [3, 4, 5],
        ];
        SimplicialComplex::from_facets(f.iter().map(|t| t.iter().map(|v| v.to_string()))).unwrap()
    }

    fn torus7() -> SimplicialComplex {
        let f = (0..7).flat_map(|i| [[i, (i + 1) % 7, (i + 3) % 7], [i, (i + 2) % 7, (i + 3) % 7]]);
        SimplicialComplex::from_facets(f.map(|t| t.map(|v| v.to_string()))).unwrap()
    }

    fn polygon(n: usize) -> SimplicialComplex {
        SimplicialComplex::from_facets((0..n).map(|i| [format!("{i:02}"), format!("{:02}", (i + 1) % n)])).unwrap()
    }

    #[test]
    fn delta_squared_vanishes() {
        let f2 = PrimeField::new(2).unwrap();
        for x in [circle(), sphere2(), rp2(), torus7()] {
            let d = coboundary_matrices(&x, &Rationals);
            for w in d.windows(2) {
                assert!(w[1].mul(&Rationals, &w[0]).is_zero(&Rationals));
            }
            let d = coboundary_matrices(&x, &f2);
            for w in d.windows(2) {
                assert!(w[1].mul(&f2, &w[0]).is_zero(&f2));
            }
        }
    }

    #[test]
    fn coboundary_shapes() {
        let pt = SimplicialComplex::from_facets([["p"]]).unwrap();
        let d = coboundary_matrices(&pt, &Rationals);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].rows(), 0);
        let d = coboundary_matrices(&circle(), &Rationals);
        assert_eq!((d[0].rows(), d[0].cols()), (3, 3));
        assert_eq!(rank_kernel_image(&Rationals, &d[0]).rank, 2);
        let d = coboundary_matrices(&sphere2(), &Rationals);
        assert_eq!((d[1].rows(), d[1].cols()), (4, 6));
        assert_eq!(rank_kernel_image(&Rationals, &d[1]).rank, 3);
    }

    #[test]
    fn betti_numbers() {
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(cohomology_basis(&sphere2(), &Rationals).dims(), vec![1, 0, 1]);
        assert_eq!(cohomology_basis(&rp2(), &f2).dims(), vec![1, 1, 1]);
        assert_eq!(cohomology_basis(&rp2(), &Rationals).dims(), vec![1, 0, 0]);
        assert_eq!(cohomology_dims(&rp2(), &f2), vec![1, 1, 1]);
        assert_eq!(cohomology_dims(&torus7(), &Rationals), vec![1, 2, 1]);
    }

    #[test]
    fn representatives_are_cocycles() {
        let x = torus7();
        let space = cohomology_basis(&x, &Rationals);
        let d = coboundary_matrices(&x, &Rationals);
        for (k, dk) in d.iter().enumerate().take(3) {
            for r in space.representatives(k) {
                assert!(is_zero_vec(&Rationals, &dk.mul_vec(&Rationals, r)));
                let c = space.coordinates(k, r).unwrap();
                assert_eq!(c.iter().filter(|v| !Rationals.is_zero(v)).count(), 1);
            }
        }
    }

    #[test]
    fn torus_ring() {
        let r = cup_ring(&torus7(), &Rationals);
        assert_eq!(r.dims(), &[1, 2, 1]);
        let (u, v) = (1, 2);
        let uv = r.product(u, v).to_vec();
        let vu = r.product(v, u).to_vec();
        assert!(!is_zero_vec(&Rationals, &uv));
        assert_eq!(vu, uv.iter().map(|x| -x).collect::<Vec<_>>());
        assert!(is_zero_vec(&Rationals, r.product(u, u)));
        assert!(is_zero_vec(&Rationals, r.product(v, v)));
    }

    #[test]
    fn rp2_ring_mod_two() {
        let f2 = PrimeField::new(2).unwrap();
        let r = cup_ring(&rp2(), &f2);
        let a = r.basis_vector(1);
        let a2 = r.mul(&a, &a);
        assert!(!is_zero_vec(&f2, &a2));
        assert!(is_zero_vec(&f2, &r.mul(&a2, &a)));
    }

    #[test]
    fn sphere_square_vanishes() {
        let r = cup_ring(&sphere2(), &Rationals);
        assert!(is_zero_vec(&Rationals, r.product(1, 1)));
        assert_eq!(r.unit(), r.basis_vector(0).as_slice());
    }

    #[test]
    fn double_cover_multiplies_by_two() {
        let f = SimplicialMap::from_indices(polygon(6), polygon(3), (0..6).map(|i| i % 3).collect()).unwrap();
        let h = induced_ring_hom(&f, &Rationals).unwrap();
        assert_eq!(h.block(1).get(0, 0), &Rationals.from_i64(2));
        assert!(h.is_unital());
        let oxf = one_cross_f_from(&h);
        let ker = oxf.kernel();
        assert_eq!(ker.len(), 2);
        // Degree one kernel: 2(u⊗1) - (1⊗v) up to scale.
        let deg1: Vec<_> = ker
            .iter()
            .filter(|v| oxf.source().homogeneous_degree(v) == Some(1))
            .collect();
        assert_eq!(deg1.len(), 1);
        let pairs = tensor_basis_pairs(oxf.target(), h.source());
        let u1 = pairs.iter().position(|&p| p == (1, 0)).unwrap();
        let v1 = pairs.iter().position(|&p| p == (0, 1)).unwrap();
        assert_eq!(deg1[0][u1], Rationals.from_i64(-2) * &deg1[0][v1]);
    }

    #[test]
    fn identity_and_constant_maps() {
        let x = torus7();
        let id = induced_ring_hom(&SimplicialMap::identity(&x), &Rationals).unwrap();
        assert_eq!(id.matrix(), &Matrix::identity(&Rationals, 4));
        let c = induced_ring_hom(&SimplicialMap::constant(&x, "p"), &Rationals).unwrap();
        assert_eq!(c.block(0).get(0, 0), &Rationals.one());
        assert!(c.matrix().rows() == 4 && c.matrix().cols() == 1);
        let oxf = one_cross_f_from(&c);
        assert!(oxf.kernel().is_empty());
    }

    #[test]
    fn functorial_on_tower() {
        let f = SimplicialMap::from_indices(polygon(12), polygon(6), (0..12).map(|i| i % 6).collect()).unwrap();
        let g = SimplicialMap::from_indices(polygon(6), polygon(3), (0..6).map(|i| i % 3).collect()).unwrap();
        let gf = f.then(&g).unwrap();
        let (fs, gs, gfs) = (
            induced_ring_hom(&f, &Rationals).unwrap(),
            induced_ring_hom(&g, &Rationals).unwrap(),
            induced_ring_hom(&gf, &Rationals).unwrap(),
        );
        assert_eq!(gs.then(&fs), gfs);
        assert_eq!(gfs.block(1).get(0, 0), &Rationals.from_i64(4));
    }

    #[test]
    fn tensor_examples() {
        let c = cup_ring(&circle(), &Rationals);
        let pt = cup_ring(&SimplicialComplex::from_facets([["p"]]).unwrap(), &Rationals);
        let cp = tensor_ring(&c, &pt).unwrap();
        assert_eq!(cp.dims(), c.dims());
        let cc = tensor_ring(&c, &c).unwrap();
        assert_eq!(cc.dims(), &[1, 2, 1]);
        let pairs = tensor_basis_pairs(&c, &c);
        let u1 = pairs.iter().position(|&p| p == (1, 0)).unwrap();
        let one_u = pairs.iter().position(|&p| p == (0, 1)).unwrap();
        let a = cc.product(one_u, u1).to_vec();
        let b = cc.product(u1, one_u).to_vec();
        assert!(!is_zero_vec(&Rationals, &a));
        assert_eq!(a, b.iter().map(|x| -x).collect::<Vec<_>>());

        let s = cup_ring(&sphere2(), &Rationals);
        let ss = tensor_ring(&s, &s).unwrap();
        assert_eq!(ss.dims(), &[1, 0, 2, 0, 1]);
        let f2 = cup_ring(&circle(), &PrimeField::new(2).unwrap());
        let f3 = cup_ring(&circle(), &PrimeField::new(3).unwrap());
        assert!(matches!(tensor_ring(&f2, &f3), Err(CohomologyError::FieldMismatch(..))));
    }

    #[test]
    fn connectivity() {
        let r = integral_connectivity(&sphere2()).unwrap();
        assert_eq!(r.connectivity, Connectivity::UpTo(1));
        assert_eq!(
            integral_connectivity(&circle()).unwrap().connectivity,
            Connectivity::UpTo(0)
        );
        let p = integral_connectivity(&rp2()).unwrap();
        assert_eq!(p.connectivity, Connectivity::UpTo(0));
        assert_eq!(p.homology.torsion[1], vec![BigInt::from(2)]);
        assert_eq!(p.homology.field_dims(FieldSpec::Prime(2)), vec![1, 1, 1]);
        let pt = SimplicialComplex::from_facets([["p"]]).unwrap();
        assert_eq!(integral_connectivity(&pt).unwrap().connectivity, Connectivity::Acyclic);
        let two = SimplicialComplex::from_facets([["a"], ["b"]]).unwrap();
        assert_eq!(integral_connectivity(&two), Err(CohomologyError::Disconnected(1)));
    }

    #[test]
    fn parity_of_sorting() {
        assert_eq!(sorted_with_sign(&[2, 0, 1]), Some((vec![0, 1, 2], false)));
        assert_eq!(sorted_with_sign(&[1, 0]), Some((vec![0, 1], true)));
        assert_eq!(sorted_with_sign(&[1, 1]), None);
    }
}
