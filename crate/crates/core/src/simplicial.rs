//! Finite abstract simplicial complexes, simplicial maps, skeleta and
//! ordered (staircase) product triangulations.
//!
//! Vertices are strings with the lexicographic order as the global vertex
//! order. Every stored simplex is a strictly increasing list of vertex
//! indices into that order, which is what fixes the signs of coboundaries
//! and the front/back faces of cup products.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A simplex as strictly increasing vertex indices.
pub type Simplex = Vec<usize>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("facet {0} is empty")]
    EmptyFacet(usize),
    #[error("facet {facet} repeats vertex '{vertex}'")]
    DuplicateVertex { facet: usize, vertex: String },
    #[error("facet vertex '{0}' is missing from the vertex list")]
    UnknownVertex(String),
    #[error("vertex list repeats '{0}'")]
    DuplicateListedVertex(String),
    #[error("skeleton dimension must be non-negative, got {0}")]
    NegativeSkeleton(i64),
    #[error("product of an empty complex")]
    EmptyFactor,
    #[error("vertex map is missing domain vertex '{0}'")]
    MissingVertex(String),
    #[error("vertex map sends '{from}' to '{to}', which is not a codomain vertex")]
    UnknownTarget { from: String, to: String },
    #[error("vertex map is not simplicial: image of {simplex:?} is {image:?}, not a codomain simplex")]
    NotSimplicial { simplex: Vec<String>, image: Vec<String> },
    #[error("maps are not composable: codomain of the first is not the domain of the second")]
    NotComposable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    facets: Vec<Simplex>,
    /// `simplices[k]` holds all k-simplices in lexicographic order.
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl SimplicialComplex {
    /// Builds the downward closure of `facets`. The vertex set is inferred.
    pub fn from_facets<I, F, S>(facets: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let facets: Vec<Vec<String>> = facets
            .into_iter()
            .map(|f| f.into_iter().map(Into::into).collect())
            .collect();
        let vertices: BTreeSet<String> = facets.iter().flatten().cloned().collect();
        Self::build(vertices.into_iter().collect(), facets)
    }

    /// Builds a complex with an explicit vertex list; vertices outside every
    /// facet become isolated points.
    pub fn with_vertices<V, S, I, F, T>(vertices: V, facets: I) -> Result<Self, ComplexError>
    where
        V: IntoIterator<Item = S>,
        S: Into<String>,
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = T>,
        T: Into<String>,
    {
        let listed: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut set = BTreeSet::new();
        for v in &listed {
            if !set.insert(v.clone()) {
                return Err(ComplexError::DuplicateListedVertex(v.clone()));
            }
        }
        let facets: Vec<Vec<String>> = facets
            .into_iter()
            .map(|f| f.into_iter().map(Into::into).collect())
            .collect();
        if let Some(v) = facets.iter().flatten().find(|v| !set.contains(*v)) {
            return Err(ComplexError::UnknownVertex(v.clone()));
        }
        Self::build(set.into_iter().collect(), facets)
    }

    fn build(vertices: Vec<String>, facets: Vec<Vec<String>>) -> Result<Self, ComplexError> {
        let lookup: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut raw = Vec::with_capacity(facets.len() + vertices.len());
        for (fi, facet) in facets.iter().enumerate() {
            if facet.is_empty() {
                return Err(ComplexError::EmptyFacet(fi));
            }
            let mut s: Simplex = facet.iter().map(|v| lookup[v.as_str()]).collect();
            s.sort_unstable();
            if let Some(w) = s.windows(2).find(|w| w[0] == w[1]) {
                return Err(ComplexError::DuplicateVertex {
                    facet: fi,
                    vertex: vertices[w[0]].clone(),
                });
            }
            raw.push(s);
        }
        for i in 0..vertices.len() {
            raw.push(vec![i]);
        }
        Ok(Self::from_index_facets(vertices, raw))
    }

    /// Internal constructor from already validated, sorted index simplices.
    pub(crate) fn from_index_facets(vertices: Vec<String>, raw: Vec<Simplex>) -> Self {
        let mut by_dim: Vec<BTreeSet<Simplex>> = Vec::new();
        for s in &raw {
            for size in 1..=s.len() {
                if by_dim.len() < size {
                    by_dim.resize_with(size, BTreeSet::new);
                }
                for sub in s.iter().copied().combinations(size) {
                    by_dim[size - 1].insert(sub);
                }
            }
        }
        let simplices: Vec<Vec<Simplex>> = by_dim.into_iter().map(|s| s.into_iter().collect()).collect();
        let index = simplices
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        let mut out = SimplicialComplex {
            vertices,
            facets: Vec::new(),
            simplices,
            index,
        };
        out.facets = out.compute_facets();
        out
    }

    fn compute_facets(&self) -> Vec<Simplex> {
        let mut facets = Vec::new();
        for (k, level) in self.simplices.iter().enumerate() {
            let above = self.simplices.get(k + 1);
            let covered: BTreeSet<&Simplex> = above
                .into_iter()
                .flatten()
                .flat_map(|s| faces(s).map(|(_, f)| f).collect::<Vec<_>>())
                .collect::<Vec<_>>()
                .iter()
                .filter_map(|f| level.get(self.index[k][f]))
                .collect();
            facets.extend(level.iter().filter(|s| !covered.contains(s)).cloned());
        }
        facets.sort();
        facets
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.as_str().cmp(label)).ok()
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    /// Facets spelled with vertex labels.
    pub fn facet_labels(&self) -> Vec<Vec<String>> {
        self.facets.iter().map(|s| self.labels(s)).collect()
    }

    pub fn labels(&self, s: &[usize]) -> Vec<String> {
        s.iter().map(|&v| self.vertices[v].clone()).collect()
    }

    /// Dimension; `-1` for the empty complex.
    pub fn dim(&self) -> isize {
        self.simplices.len() as isize - 1
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// All k-simplices in lexicographic order; empty outside `0..=dim`.
    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.simplices.get(k).map_or(&[], |v| v.as_slice())
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn total_simplices(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    /// Index of `s` among the simplices of its dimension.
    pub fn simplex_index(&self, s: &[usize]) -> Option<usize> {
        if s.is_empty() {
            return None;
        }
        self.index.get(s.len() - 1)?.get(s).copied()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.simplex_index(s).is_some()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(k, l)| if k % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    /// A single simplex (or a point): the complexes whose contractibility is
    /// evident from the combinatorics alone.
    pub fn is_simplex(&self) -> bool {
        self.facets.len() == 1
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return false;
        }
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for e in self.simplices(1) {
            let (a, b) = (find(&mut parent, e[0]), find(&mut parent, e[1]));
            parent[a] = b;
        }
        let root = find(&mut parent, 0);
        (0..self.vertices.len()).all(|v| find(&mut parent, v) == root)
    }

    /// Subcomplex of all simplices of dimension at most `k`.
    pub fn skeleton(&self, k: i64) -> Result<SimplicialComplex, ComplexError> {
        if k < 0 {
            return Err(ComplexError::NegativeSkeleton(k));
        }
        let k = k as usize;
        if k as isize >= self.dim() {
            return Ok(self.clone());
        }
        // Lower-dimensional maximal faces survive, so take every simplex up to k.
        let raw = (0..=k).flat_map(|j| self.simplices(j).iter().cloned()).collect();
        Ok(Self::from_index_facets(self.vertices.clone(), raw))
    }
}

/// The codimension-one faces of `s`, paired with the position of the removed vertex.
pub fn faces(s: &[usize]) -> impl Iterator<Item = (usize, Simplex)> + '_ {
    (0..s.len()).filter(move |_| s.len() > 1).map(move |i| {
        let mut f = s.to_vec();
        f.remove(i);
        (i, f)
    })
}

/// Staircase triangulation of `|x| * |y|`: vertices are pairs `x|y`, and the
/// simplices are chains, monotone in both factor orders, lying over a
/// simplex of `x` times a simplex of `y`.
pub fn product_complex(x: &SimplicialComplex, y: &SimplicialComplex) -> Result<SimplicialComplex, ComplexError> {
    if x.is_empty() || y.is_empty() {
        return Err(ComplexError::EmptyFactor);
    }
    let labels: Vec<String> = x
        .vertices()
        .iter()
        .cartesian_product(y.vertices())
        .map(|(a, b)| pair_label(a, b))
        .collect();
    let mut order: Vec<usize> = (0..labels.len()).collect();
    order.sort_by(|&i, &j| labels[i].cmp(&labels[j]));
    let mut rank = vec![0; labels.len()];
    for (pos, &i) in order.iter().enumerate() {
        rank[i] = pos;
    }
    let ny = y.vertices().len();
    let mut raw = Vec::new();
    for s in x.facets() {
        for t in y.facets() {
            let (p, q) = (s.len() - 1, t.len() - 1);
            for rights in (0..p + q).combinations(p) {
                let (mut i, mut j) = (0, 0);
                let mut chain = vec![rank[s[0] * ny + t[0]]];
                for step in 0..p + q {
                    if rights.contains(&step) {
                        i += 1;
                    } else {
                        j += 1;
                    }
                    chain.push(rank[s[i] * ny + t[j]]);
                }
                chain.sort_unstable();
                raw.push(chain);
            }
        }
    }
    let sorted_labels = order.iter().map(|&i| labels[i].clone()).collect();
    Ok(SimplicialComplex::from_index_facets(sorted_labels, raw))
}

pub fn pair_label(a: &str, b: &str) -> String {
    format!("{a}|{b}")
}

/// A vertex map between complexes that sends simplices to simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    domain: SimplicialComplex,
    codomain: SimplicialComplex,
    vertex_map: Vec<usize>,
    surjective: bool,
}

impl SimplicialMap {
    /// Validates a labelled vertex map.
    pub fn new(
        vertex_map: &BTreeMap<String, String>,
        domain: SimplicialComplex,
        codomain: SimplicialComplex,
    ) -> Result<Self, ComplexError> {
        let mut indices = Vec::with_capacity(domain.vertices().len());
        for v in domain.vertices() {
            let target = vertex_map
                .get(v)
                .ok_or_else(|| ComplexError::MissingVertex(v.clone()))?;
            let t = codomain
                .vertex_index(target)
                .ok_or_else(|| ComplexError::UnknownTarget {
                    from: v.clone(),
                    to: target.clone(),
                })?;
            indices.push(t);
        }
        Self::from_indices(domain, codomain, indices)
    }

    pub fn from_indices(
        domain: SimplicialComplex,
        codomain: SimplicialComplex,
        vertex_map: Vec<usize>,
    ) -> Result<Self, ComplexError> {
        assert_eq!(vertex_map.len(), domain.vertices().len());
        // Faces of facets map onto faces of their images, so facets suffice.
        for s in domain.facets() {
            let img = image_of(&vertex_map, s);
            if !codomain.contains(&img) {
                return Err(ComplexError::NotSimplicial {
                    simplex: domain.labels(s),
                    image: codomain.labels(&img),
                });
            }
        }
        let mut hit: Vec<BTreeSet<Simplex>> = vec![BTreeSet::new(); codomain.facets().len()];
        let facet_pos: HashMap<&Simplex, usize> = codomain.facets().iter().enumerate().map(|(i, f)| (f, i)).collect();
        for s in domain.facets() {
            let img = image_of(&vertex_map, s);
            if let Some(&i) = facet_pos.get(&img) {
                hit[i].insert(img);
            }
        }
        let surjective = hit.iter().all(|h| !h.is_empty());
        Ok(SimplicialMap {
            domain,
            codomain,
            vertex_map,
            surjective,
        })
    }

    /// Identity map on `x`.
    pub fn identity(x: &SimplicialComplex) -> Self {
        let n = x.vertices().len();
        Self::from_indices(x.clone(), x.clone(), (0..n).collect()).expect("identity is simplicial")
    }

    /// Constant map from `x` to the one-point complex `{point}`.
    pub fn constant(x: &SimplicialComplex, point: &str) -> Self {
        let pt = SimplicialComplex::from_facets([[point]]).expect("point complex");
        let n = x.vertices().len();
        Self::from_indices(x.clone(), pt, vec![0; n]).expect("constant map is simplicial")
    }

    pub fn domain(&self) -> &SimplicialComplex {
        &self.domain
    }

    pub fn codomain(&self) -> &SimplicialComplex {
        &self.codomain
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    pub fn labelled_vertex_map(&self) -> BTreeMap<String, String> {
        self.domain
            .vertices()
            .iter()
            .zip(&self.vertex_map)
            .map(|(v, &t)| (v.clone(), self.codomain.vertices()[t].clone()))
            .collect()
    }

    /// Every codomain simplex is the image of some domain simplex.
    pub fn is_surjective(&self) -> bool {
        self.surjective
    }

    /// Image of a domain simplex (sorted, duplicates collapsed).
    pub fn image(&self, s: &[usize]) -> Simplex {
        image_of(&self.vertex_map, s)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &SimplicialMap) -> Result<SimplicialMap, ComplexError> {
        if self.codomain != next.domain {
            return Err(ComplexError::NotComposable);
        }
        let vm = self.vertex_map.iter().map(|&v| next.vertex_map[v]).collect();
        Self::from_indices(self.domain.clone(), next.codomain.clone(), vm)
    }
}

/// On-disk form of a complex: `vertices` is optional and inferred from the
/// facets when absent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<String>>,
    pub facets: Vec<Vec<String>>,
}

impl ComplexFile {
    pub fn build(&self) -> Result<SimplicialComplex, ComplexError> {
        match &self.vertices {
            Some(v) => SimplicialComplex::with_vertices(v.clone(), self.facets.clone()),
            None => SimplicialComplex::from_facets(self.facets.clone()),
        }
    }
}

impl From<&SimplicialComplex> for ComplexFile {
    fn from(x: &SimplicialComplex) -> Self {
        ComplexFile {
            vertices: Some(x.vertices().to_vec()),
            facets: x.facet_labels(),
        }
    }
}

/// On-disk form of a map. `domain` and `codomain` are paths or builtin
/// names; resolving them is left to the caller.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapFile {
    pub domain: String,
    pub codomain: String,
    pub vertex_map: BTreeMap<String, String>,
    #[serde(default)]
    pub assertions: Vec<String>,
}

fn image_of(vertex_map: &[usize], s: &[usize]) -> Simplex {
    let mut img: Simplex = s.iter().map(|&v| vertex_map[v]).collect();
    img.sort_unstable();
    img.dedup();
    img
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle_circle() -> SimplicialComplex {
        SimplicialComplex::from_facets([["a", "b"], ["b", "c"], ["a", "c"]]).unwrap()
    }

    fn boundary_tetrahedron() -> SimplicialComplex {
        SimplicialComplex::from_facets((0..4).combinations(3).map(|f| f.into_iter().map(|v| v.to_string()))).unwrap()
    }

    fn polygon(n: usize) -> SimplicialComplex {
        SimplicialComplex::from_facets((0..n).map(|i| [format!("{i:02}"), format!("{:02}", (i + 1) % n)])).unwrap()
    }

    #[test]
    fn triangle_is_minimal_circle() {
        let c = triangle_circle();
        assert_eq!(c.dim(), 1);
        assert_eq!(c.f_vector(), vec![3, 3]);
        assert_eq!(c.euler_characteristic(), 0);
        assert!(c.is_connected());
    }

    #[test]
    fn tetrahedron_boundary_is_sphere() {
        let s = boundary_tetrahedron();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.f_vector(), vec![4, 6, 4]);
        assert_eq!(s.euler_characteristic(), 2);
    }

    #[test]
    fn single_point() {
        let p = SimplicialComplex::from_facets([["a"]]).unwrap();
        assert_eq!(p.dim(), 0);
        assert!(p.is_simplex());
    }

    #[test]
    fn empty_complex_has_dim_minus_one() {
        let e = SimplicialComplex::from_facets(Vec::<Vec<String>>::new()).unwrap();
        assert_eq!(e.dim(), -1);
        assert!(!e.is_connected());
    }

    #[test]
    fn rejects_bad_facets() {
        assert_eq!(
            SimplicialComplex::from_facets([vec!["a", "b"], vec![]]),
            Err(ComplexError::EmptyFacet(1))
        );
        assert!(matches!(
            SimplicialComplex::from_facets([["a", "a"]]),
            Err(ComplexError::DuplicateVertex { facet: 0, .. })
        ));
        assert_eq!(
            SimplicialComplex::with_vertices(["a"], [["a", "b"]]),
            Err(ComplexError::UnknownVertex("b".into()))
        );
    }

    #[test]
    fn non_maximal_input_facets_are_absorbed() {
        let c = SimplicialComplex::from_facets([vec!["a", "b", "c"], vec!["a", "b"]]).unwrap();
        assert_eq!(c.facets().len(), 1);
        let iso = SimplicialComplex::with_vertices(["a", "b", "z"], [["a", "b"]]).unwrap();
        assert_eq!(iso.facets().len(), 2);
        assert!(!iso.is_connected());
    }

    #[test]
    fn downward_closed() {
        let s = boundary_tetrahedron();
        for k in 1..=2 {
            for simplex in s.simplices(k) {
                for (_, f) in faces(simplex) {
                    assert!(s.contains(&f));
                }
            }
        }
    }

    #[test]
    fn skeleta() {
        let s = boundary_tetrahedron();
        let one = s.skeleton(1).unwrap();
        assert_eq!(one.dim(), 1);
        assert_eq!(one.f_vector(), vec![4, 6]);
        let pts = triangle_circle().skeleton(0).unwrap();
        assert_eq!(pts.f_vector(), vec![3]);
        assert_eq!(pts.facets().len(), 3);
        assert_eq!(s.skeleton(2).unwrap(), s);
        assert_eq!(s.skeleton(-1), Err(ComplexError::NegativeSkeleton(-1)));
        assert_eq!(s.skeleton(2).unwrap().skeleton(1).unwrap(), one.skeleton(5).unwrap());
    }

    #[test]
    fn skeleton_keeps_free_edges() {
        let s = SimplicialComplex::from_facets([vec!["a", "b", "c", "d"], vec!["d", "e"]]).unwrap();
        assert_eq!(s.skeleton(2).unwrap().f_vector(), vec![5, 7, 4]);
        assert_eq!(s.skeleton(1).unwrap().f_vector(), vec![5, 7]);
    }

    #[test]
    fn identity_is_surjective() {
        let c = triangle_circle();
        assert!(SimplicialMap::identity(&c).is_surjective());
    }

    #[test]
    fn hexagon_double_covers_triangle() {
        let hex = polygon(6);
        let tri = polygon(3);
        let vm: BTreeMap<String, String> = (0..6).map(|i| (format!("{i:02}"), format!("{:02}", i % 3))).collect();
        let f = SimplicialMap::new(&vm, hex.clone(), tri.clone()).unwrap();
        assert!(f.is_surjective());
        // Each triangle edge has exactly two preimage edges.
        for e in tri.simplices(1) {
            let pre = hex.simplices(1).iter().filter(|h| &f.image(h) == e).count();
            assert_eq!(pre, 2);
        }
    }

    #[test]
    fn constant_map_to_point() {
        let f = SimplicialMap::constant(&boundary_tetrahedron(), "p");
        assert!(f.is_surjective());
        assert_eq!(f.codomain().dim(), 0);
    }

    #[test]
    fn non_simplicial_and_non_surjective() {
        let tri = polygon(3);
        let hex = polygon(6);
        // Sending three consecutive hexagon vertices to distinct triangle
        // vertices is fine, but wrapping the triangle into the hexagon is not.
        let vm: BTreeMap<String, String> = (0..3).map(|i| (format!("{i:02}"), format!("{:02}", 2 * i))).collect();
        assert!(matches!(
            SimplicialMap::new(&vm, tri.clone(), hex.clone()),
            Err(ComplexError::NotSimplicial { .. })
        ));
        let edge = SimplicialComplex::from_facets([["00", "01"]]).unwrap();
        let vm: BTreeMap<String, String> = [("00", "00"), ("01", "01")].map(|(a, b)| (a.into(), b.into())).into();
        let f = SimplicialMap::new(&vm, edge, tri).unwrap();
        assert!(!f.is_surjective());
        let missing: BTreeMap<String, String> = BTreeMap::new();
        assert!(matches!(
            SimplicialMap::new(&missing, hex.clone(), hex),
            Err(ComplexError::MissingVertex(_))
        ));
    }

    #[test]
    fn composition_is_simplicial() {
        let twelve = polygon(12);
        let hex = polygon(6);
        let tri = polygon(3);
        let f = SimplicialMap::from_indices(twelve, hex.clone(), (0..12).map(|i| i % 6).collect()).unwrap();
        let g = SimplicialMap::from_indices(hex, tri, (0..6).map(|i| i % 3).collect()).unwrap();
        let h = f.then(&g).unwrap();
        assert!(h.is_surjective());
        assert_eq!(h.vertex_map(), (0..12).map(|i| i % 3).collect::<Vec<_>>());
        assert_eq!(g.then(&g), Err(ComplexError::NotComposable));
    }

    #[test]
    fn products() {
        let pt = SimplicialComplex::from_facets([["p"]]).unwrap();
        let tri = triangle_circle();
        let p = product_complex(&pt, &tri).unwrap();
        assert_eq!(p.f_vector(), tri.f_vector());

        let edge = SimplicialComplex::from_facets([["0", "1"]]).unwrap();
        let sq = product_complex(&edge, &edge).unwrap();
        assert_eq!(sq.f_vector(), vec![4, 5, 2]);
        assert_eq!(sq.euler_characteristic(), 1);

        let torus = product_complex(&tri, &tri).unwrap();
        assert_eq!(torus.f_vector(), vec![9, 27, 18]);
        assert_eq!(torus.euler_characteristic(), 0);
        assert_eq!(torus.dim(), 2);

        let sphere = boundary_tetrahedron();
        let cyl = product_complex(&sphere, &tri).unwrap();
        assert_eq!(cyl.dim(), 3);
        assert_eq!(cyl.euler_characteristic(), 0);
        assert_eq!(
            product_complex(&pt, &SimplicialComplex::from_facets(Vec::<Vec<String>>::new()).unwrap()),
            Err(ComplexError::EmptyFactor)
        );
    }
}
