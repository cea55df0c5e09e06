//! Brute-force checkers that re-derive results from structure constants
//! without going through the engine's algorithms.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::cohomology::{cohomology_dims, induced_ring_hom, CohomologyError, GradedRing, RingHom};
use crate::linalg::{Field, FieldSpec, PrimeField};
use crate::simplicial::{product_complex, ComplexError, SimplicialComplex, SimplicialMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("brute-force nil needs the field with two elements, got {0}")]
    NotF2(FieldSpec),
    #[error("ring of total dimension {0} is too large for bitmask products")]
    RingTooLarge(usize),
    #[error("subspace element has a degree-0 component")]
    DegreeZero,
    #[error("subspace of dimension {dim} exceeds the enumeration guard and could not be reduced below it")]
    GuardExceeded { dim: usize },
    #[error("product enumeration exceeded the work budget of {0} multiplications")]
    WorkBudget(u64),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

/// Largest subspace dimension enumerated exhaustively (2^16 elements).
pub const ENUMERATION_GUARD: usize = 16;
pub const WORK_BUDGET: u64 = 1 << 33;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NilMethod {
    /// Every product of every element was enumerated.
    Exhaustive,
    /// Vanishing checked exhaustively on a degree truncation of the
    /// subspace, with an explicit nonzero product one step shorter.
    DegreeTruncated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BruteNil {
    pub value: usize,
    pub method: NilMethod,
    /// Elements (as coordinate bitmasks) whose product is nonzero.
    pub witness: Vec<u128>,
    pub products: u64,
}

struct BitRing {
    table: Vec<Vec<u128>>,
    dims: Vec<usize>,
    top: usize,
}

impl BitRing {
    fn new(ring: &GradedRing<PrimeField>) -> Result<Self, OracleError> {
        if ring.field().modulus() != 2 {
            return Err(OracleError::NotF2(ring.field().spec()));
        }
        let n = ring.total_dim();
        if n > 128 {
            return Err(OracleError::RingTooLarge(n));
        }
        let table = (0..n)
            .map(|i| (0..n).map(|j| to_mask(ring.product(i, j))).collect())
            .collect();
        Ok(BitRing {
            table,
            dims: ring.dims().to_vec(),
            top: ring.top_degree(),
        })
    }

    fn mul(&self, a: u128, b: u128) -> u128 {
        let mut out = 0;
        for i in bits(a) {
            let row = &self.table[i];
            for j in bits(b) {
                out ^= row[j];
            }
        }
        out
    }
}

fn to_mask(v: &[u64]) -> u128 {
    v.iter()
        .enumerate()
        .filter(|(_, &c)| c % 2 == 1)
        .fold(0, |m, (i, _)| m | (1u128 << i))
}

fn bits(mut m: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(i)
    })
}

/// Nilpotency index of the span of `subspace`, by enumerating products of
/// all of its nonzero elements over the field with two elements.
pub fn brute_nil_check(ring: &GradedRing<PrimeField>, subspace: &[Vec<u64>]) -> Result<BruteNil, OracleError> {
    let r = BitRing::new(ring)?;
    let gens: Vec<u128> = subspace.iter().map(|v| to_mask(v)).collect();
    let degree0 = (1u128 << r.dims.first().copied().unwrap_or(0)) - 1;
    if gens.iter().any(|g| g & degree0 != 0) {
        return Err(OracleError::DegreeZero);
    }
    if gens.len() > ENUMERATION_GUARD {
        return truncated(&r, &gens);
    }
    exhaustive(&r, &gens)
}

fn exhaustive(r: &BitRing, gens: &[u128]) -> Result<BruteNil, OracleError> {
    if gens.iter().all(|&g| g == 0) {
        return Ok(BruteNil {
            value: 1,
            method: NilMethod::Exhaustive,
            witness: Vec::new(),
            products: 0,
        });
    }
    // All elements of the span, in Gray-code order.
    let d = gens.len();
    let mut elements = Vec::with_capacity(1 << d);
    let mut cur = 0u128;
    elements.push(cur);
    for g in 1u64..(1 << d) {
        cur ^= gens[g.trailing_zeros() as usize];
        elements.push(cur);
    }
    let nonzero: HashMap<u128, usize> = elements
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, &e)| (e, i))
        .collect();
    // Every length-n product value, with one way of reaching it.
    let mut level: HashMap<u128, (u128, u128)> = nonzero.keys().map(|&e| (e, (0, e))).collect();
    let mut history = vec![level.clone()];
    let mut products = 0u64;
    let mut n = 1;
    loop {
        let mut next: HashMap<u128, (u128, u128)> = HashMap::new();
        let mut values: Vec<u128> = level.keys().copied().collect();
        values.sort_unstable();
        for &s in &values {
            // s * (k ^ g) = s * k ^ s * g along the Gray walk.
            let step: Vec<u128> = gens.iter().map(|&g| r.mul(s, g)).collect();
            let mut p = 0u128;
            let mut k = 0u128;
            for g in 1u64..(1 << d) {
                let i = g.trailing_zeros() as usize;
                p ^= step[i];
                k ^= gens[i];
                if p != 0 {
                    next.entry(p).or_insert((s, k));
                }
            }
            products += (1 << d) - 1;
            if products > WORK_BUDGET {
                return Err(OracleError::WorkBudget(WORK_BUDGET));
            }
        }
        n += 1;
        if next.is_empty() {
            let witness = unwind(&history, *values.first().expect("nonempty level"));
            return Ok(BruteNil {
                value: n,
                method: NilMethod::Exhaustive,
                witness,
                products,
            });
        }
        level = next;
        history.push(level.clone());
    }
}

fn unwind(history: &[HashMap<u128, (u128, u128)>], mut value: u128) -> Vec<u128> {
    let mut out = Vec::new();
    for lvl in history.iter().rev() {
        let (parent, k) = lvl[&value];
        out.push(k);
        value = parent;
    }
    out.reverse();
    out
}

/// Degree of a homogeneous mask, `None` if it spans several degrees.
fn degree_of(r: &BitRing, m: u128) -> Option<usize> {
    let mut start = 0;
    let mut found = None;
    for (k, &d) in r.dims.iter().enumerate() {
        let block = if d == 0 { 0 } else { ((1u128 << d) - 1) << start };
        if m & block != 0 {
            if found.is_some() {
                return None;
            }
            found = Some(k);
        }
        start += d;
    }
    found
}

/// For subspaces beyond the guard. A nonzero n-fold product of
/// positive-degree elements only sees their components of degree at most
/// `top - n + 1`, so the n-fold products of K are exactly those of the
/// truncated subspace, which is enumerated exhaustively once it fits the
/// guard. The matching lower bound is an explicit nonzero product.
fn truncated(r: &BitRing, gens: &[u128]) -> Result<BruteNil, OracleError> {
    let degrees: Vec<usize> = gens
        .iter()
        .map(|&g| degree_of(r, g))
        .collect::<Option<_>>()
        .ok_or(OracleError::GuardExceeded { dim: gens.len() })?;
    let mut products = 0;
    for n in 2..=r.top + 1 {
        let cut = r.top + 1 - n;
        let sub: Vec<u128> = gens
            .iter()
            .zip(&degrees)
            .filter(|(_, &d)| d <= cut)
            .map(|(&g, _)| g)
            .collect();
        if sub.len() > ENUMERATION_GUARD {
            continue;
        }
        let inner = exhaustive(r, &sub)?;
        products += inner.products;
        if inner.value > n {
            continue;
        }
        // Every n-fold product vanishes; exhibit a nonzero (n-1)-fold one.
        let mut budget = WORK_BUDGET;
        return match find_word(r, gens, n - 1, &mut budget) {
            Some(witness) => Ok(BruteNil {
                value: n,
                method: NilMethod::DegreeTruncated,
                witness,
                products: products + (WORK_BUDGET - budget),
            }),
            None => Err(OracleError::GuardExceeded { dim: gens.len() }),
        };
    }
    unreachable!("degree-0 truncation is empty")
}

/// Depth-first search for `len` generators with nonzero product.
fn find_word(r: &BitRing, gens: &[u128], len: usize, budget: &mut u64) -> Option<Vec<u128>> {
    fn go(
        r: &BitRing,
        gens: &[u128],
        acc: u128,
        word: &mut Vec<u128>,
        len: usize,
        dead: &mut std::collections::HashSet<(u128, usize)>,
        budget: &mut u64,
    ) -> bool {
        if word.len() == len {
            return true;
        }
        if dead.contains(&(acc, word.len())) {
            return false;
        }
        for &g in gens {
            if *budget == 0 {
                return false;
            }
            *budget -= 1;
            let p = if word.is_empty() { g } else { r.mul(acc, g) };
            if p != 0 {
                word.push(g);
                if go(r, gens, p, word, len, dead, budget) {
                    return true;
                }
                word.pop();
            }
        }
        dead.insert((acc, word.len()));
        false
    }
    let mut word = Vec::new();
    let mut dead = std::collections::HashSet::new();
    go(r, gens, 0, &mut word, len, &mut dead, budget).then_some(word)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KunnethReport {
    pub field: FieldSpec,
    pub product_dims: Vec<usize>,
    pub tensor_dims: Vec<usize>,
    pub product_simplices: usize,
    pub equal: bool,
}

/// Compares cohomology of the staircase product with the tensor product of
/// the factors' cohomology, degree by degree.
pub fn kunneth_check<F: Field>(
    x: &SimplicialComplex,
    y: &SimplicialComplex,
    field: &F,
) -> Result<KunnethReport, OracleError> {
    let p = product_complex(x, y)?;
    let (dx, dy) = (cohomology_dims(x, field), cohomology_dims(y, field));
    let mut tensor = vec![0; dx.len() + dy.len() - 1];
    for (i, a) in dx.iter().enumerate() {
        for (j, b) in dy.iter().enumerate() {
            tensor[i + j] += a * b;
        }
    }
    let product_dims = cohomology_dims(&p, field);
    let equal = pad(&product_dims, tensor.len()) == pad(&tensor, product_dims.len());
    Ok(KunnethReport {
        field: field.spec(),
        product_dims,
        tensor_dims: tensor,
        product_simplices: p.total_simplices(),
        equal,
    })
}

/// Number of simplices of the staircase product, without building it: a
/// pair of simplices of dimensions p and q contributes the Delannoy number
/// D(p, q) of monotone lattice paths.
pub fn product_size(x: &SimplicialComplex, y: &SimplicialComplex) -> u128 {
    let (fx, fy) = (x.f_vector(), y.f_vector());
    let (m, n) = (fx.len(), fy.len());
    let mut d = vec![vec![1u128; n.max(1)]; m.max(1)];
    for p in 1..m {
        for q in 1..n {
            d[p][q] = d[p - 1][q] + d[p][q - 1] + d[p - 1][q - 1];
        }
    }
    let mut total = 0;
    for (p, &a) in fx.iter().enumerate() {
        for (q, &b) in fy.iter().enumerate() {
            total += a as u128 * b as u128 * d[p][q];
        }
    }
    total
}

fn pad(v: &[usize], n: usize) -> Vec<usize> {
    let mut out = v.to_vec();
    out.resize(n.max(v.len()), 0);
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub associativity: Option<(usize, usize, usize)>,
    pub commutativity: Option<(usize, usize)>,
    pub unit: Option<usize>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.associativity.is_none() && self.commutativity.is_none() && self.unit.is_none()
    }
}

/// Bilinear product from the structure constants alone.
fn product<F: Field>(r: &GradedRing<F>, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let f = r.field();
    let mut out = vec![f.zero(); r.total_dim()];
    for (i, ai) in a.iter().enumerate().filter(|(_, c)| !f.is_zero(c)) {
        for (j, bj) in b.iter().enumerate().filter(|(_, c)| !f.is_zero(c)) {
            let c = f.mul(ai, bj);
            for (k, t) in r.product(i, j).iter().enumerate() {
                out[k] = f.add(&out[k], &f.mul(&c, t));
            }
        }
    }
    out
}

fn basis<F: Field>(r: &GradedRing<F>, i: usize) -> Vec<F::Elem> {
    let f = r.field();
    (0..r.total_dim())
        .map(|k| if k == i { f.one() } else { f.zero() })
        .collect()
}

/// Associativity on basis triples, graded commutativity on pairs and the
/// two-sided unit law; reports the first offending indices.
pub fn ring_axioms_check<F: Field>(r: &GradedRing<F>) -> AxiomReport {
    let f = r.field();
    let n = r.total_dim();
    let e: Vec<_> = (0..n).map(|i| basis(r, i)).collect();
    let mut report = AxiomReport::default();
    'assoc: for i in 0..n {
        for j in 0..n {
            let ij = product(r, &e[i], &e[j]);
            for k in 0..n {
                if product(r, &ij, &e[k]) != product(r, &e[i], &product(r, &e[j], &e[k])) {
                    report.associativity = Some((i, j, k));
                    break 'assoc;
                }
            }
        }
    }
    'comm: for i in 0..n {
        for j in 0..n {
            let mut ji = product(r, &e[j], &e[i]);
            if (r.degree(i) * r.degree(j)) % 2 == 1 {
                ji = ji.iter().map(|c| f.neg(c)).collect();
            }
            if product(r, &e[i], &e[j]) != ji {
                report.commutativity = Some((i, j));
                break 'comm;
            }
        }
    }
    let unit = r.unit().to_vec();
    report.unit = (0..n).find(|&i| product(r, &unit, &e[i]) != e[i] || product(r, &e[i], &unit) != e[i]);
    report
}

/// First basis pair `(i, j)` with `h(e_i e_j) != h(e_i) h(e_j)`, or a unit
/// failure reported as `(n, n)`.
pub fn multiplicativity_check<F: Field>(h: &RingHom<F>) -> Option<(usize, usize)> {
    let (s, t) = (h.source(), h.target());
    let n = s.total_dim();
    if h.apply(s.unit()) != t.unit() {
        return Some((n, n));
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = h.apply(&product(s, &basis(s, i), &basis(s, j)));
            let rhs = product(t, &h.apply(&basis(s, i)), &h.apply(&basis(s, j)));
            if lhs != rhs {
                return Some((i, j));
            }
        }
    }
    None
}

/// `(g ∘ f)^* == f^* ∘ g^*` as matrices.
pub fn functoriality_check<F: Field>(f: &SimplicialMap, g: &SimplicialMap, field: &F) -> Result<bool, OracleError> {
    let gf = f.then(g)?;
    let lhs = induced_ring_hom(&gf, field)?;
    let fs = induced_ring_hom(f, field)?;
    let gs = induced_ring_hom(g, field)?;
    let rhs = gs.then(&fs);
    Ok(lhs.matrix() == rhs.matrix())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::nil_index;
    use crate::catalog::{builtin_space, triangle_circle};
    use crate::cohomology::{cohomology_ring, cup_ring, diagonal_hom};
    use crate::linalg::Rationals;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn zcl_kernel(name: &str) -> (GradedRing<PrimeField>, Vec<Vec<u64>>) {
        let coh = cohomology_ring(&builtin_space(name).unwrap().complex, &f2());
        let d = diagonal_hom(&coh);
        (d.source().clone(), d.kernel())
    }

    #[test]
    fn empty_subspace() {
        let r = cup_ring(&triangle_circle(), &f2());
        assert_eq!(brute_nil_check(&r, &[]).unwrap().value, 1);
    }

    #[test]
    fn circle_and_rp2_zero_divisors() {
        let (r, k) = zcl_kernel("circle");
        let b = brute_nil_check(&r, &k).unwrap();
        assert_eq!((b.value, b.method), (2, NilMethod::Exhaustive));
        let (r, k) = zcl_kernel("rp2");
        let b = brute_nil_check(&r, &k).unwrap();
        assert_eq!(b.value, 4);
        assert_eq!(b.witness.len(), 3);
        assert_eq!(nil_index(&r, &k).unwrap().value, 4);
    }

    #[test]
    fn witness_product_is_nonzero() {
        let (r, k) = zcl_kernel("wedge_two_circles");
        let b = brute_nil_check(&r, &k).unwrap();
        let br = BitRing::new(&r).unwrap();
        let p = b.witness.iter().skip(1).fold(b.witness[0], |acc, &w| br.mul(acc, w));
        assert_ne!(p, 0);
    }

    #[test]
    fn large_kernel_uses_degree_truncation() {
        let (r, k) = zcl_kernel("genus2_surface");
        assert!(k.len() > ENUMERATION_GUARD);
        let b = brute_nil_check(&r, &k).unwrap();
        assert_eq!((b.value, b.method), (4, NilMethod::DegreeTruncated));
        assert_eq!(b.witness.len(), 3);
    }

    #[test]
    fn truncation_agrees_with_full_enumeration() {
        for name in ["circle", "rp2", "torus", "klein_bottle", "wedge_two_circles", "sphere2"] {
            let (r, k) = zcl_kernel(name);
            let br = BitRing::new(&r).unwrap();
            let gens: Vec<u128> = k.iter().map(|v| to_mask(v)).collect();
            let full = exhaustive(&br, &gens).unwrap();
            let cut = truncated(&br, &gens).unwrap();
            assert_eq!(full.value, cut.value, "{name}");
        }
    }

    #[test]
    fn rejects_other_fields_and_degree_zero() {
        let r3 = cup_ring(&triangle_circle(), &PrimeField::new(3).unwrap());
        assert!(matches!(brute_nil_check(&r3, &[]), Err(OracleError::NotF2(_))));
        let r = cup_ring(&triangle_circle(), &f2());
        assert_eq!(brute_nil_check(&r, &[r.unit().to_vec()]), Err(OracleError::DegreeZero));
    }

    #[test]
    fn kunneth_examples() {
        let pt = builtin_space("point").unwrap().complex;
        let torus = builtin_space("torus").unwrap().complex;
        let c = triangle_circle();
        let s2 = builtin_space("sphere2").unwrap().complex;
        let a = kunneth_check(&pt, &torus, &Rationals).unwrap();
        assert!(a.equal);
        assert_eq!(a.product_dims, vec![1, 2, 1]);
        let b = kunneth_check(&c, &c, &Rationals).unwrap();
        assert!(b.equal);
        assert_eq!(b.product_dims, vec![1, 2, 1]);
        let d = kunneth_check(&c, &s2, &f2()).unwrap();
        assert!(d.equal);
        assert_eq!(d.product_dims, vec![1, 1, 1, 1]);
    }

    #[test]
    fn product_size_matches_construction() {
        for (a, b) in [
            ("circle", "circle"),
            ("sphere2", "circle"),
            ("rp2", "tree"),
            ("point", "torus"),
        ] {
            let (x, y) = (builtin_space(a).unwrap().complex, builtin_space(b).unwrap().complex);
            assert_eq!(
                product_size(&x, &y),
                product_complex(&x, &y).unwrap().total_simplices() as u128
            );
        }
    }

    #[test]
    fn axioms_and_negative_control() {
        let pt = cup_ring(&builtin_space("point").unwrap().complex, &Rationals);
        assert!(ring_axioms_check(&pt).passed());
        let mut rp2 = cup_ring(&builtin_space("rp2").unwrap().complex, &f2());
        assert!(ring_axioms_check(&rp2).passed());
        // a * a = b in H*(RP^2; F2); corrupt a * 1 instead.
        rp2.set_constant(1, 0, 1, 0);
        let bad = ring_axioms_check(&rp2);
        assert!(!bad.passed());
        assert_eq!(bad.unit, Some(1));
    }

    #[test]
    fn induced_maps() {
        let hex = builtin_space("hexagon").unwrap().complex;
        let dod = builtin_space("dodecagon").unwrap().complex;
        let c = triangle_circle();
        let lbl = |i: usize| ["a", "b", "c"][i % 3].to_string();
        let f = SimplicialMap::from_indices(dod.clone(), hex.clone(), (0..12).map(|i| i % 6).collect()).unwrap();
        let g = SimplicialMap::new(
            &hex.vertices()
                .iter()
                .enumerate()
                .map(|(i, v)| (v.clone(), lbl(i)))
                .collect(),
            hex.clone(),
            c,
        )
        .unwrap();
        assert!(functoriality_check(&f, &g, &Rationals).unwrap());
        assert!(functoriality_check(&f, &g, &f2()).unwrap());
        assert_eq!(multiplicativity_check(&induced_ring_hom(&g, &Rationals).unwrap()), None);
    }
}
