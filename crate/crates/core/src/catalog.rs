//! Built-in triangulations, standard maps and recorded exact values.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use itertools::Itertools;
use thiserror::Error;

use crate::assertions::{MapAssertions, SpaceAssertions};
use crate::bounds::{
    analyze_map, analyze_space, BoundError, Invariant, KnownValue, MapAnalysis, MapContext, SpaceAnalysis,
};
use crate::linalg::FieldSpec;
use crate::simplicial::{product_complex, ComplexError, SimplicialComplex, SimplicialMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown builtin space '{0}'")]
    UnknownSpace(String),
    #[error("unknown builtin map '{0}'")]
    UnknownMap(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Clone, Debug)]
pub struct SpaceEntry {
    pub name: String,
    pub description: String,
    pub complex: SimplicialComplex,
    pub assertions: SpaceAssertions,
    pub known: Vec<KnownValue>,
    pub euler: i64,
}

impl SpaceEntry {
    /// Runs the engine with the recorded values as overrides.
    pub fn analyze(&self, fields: &[FieldSpec]) -> Result<SpaceAnalysis, BoundError> {
        analyze_space(&self.complex, fields, &self.assertions, &self.known)
    }

    pub fn known(&self, invariant: Invariant) -> Option<&KnownValue> {
        self.known.iter().find(|k| k.invariant == invariant)
    }

    pub fn summary_line(&self) -> String {
        let f = self.complex.f_vector().iter().join(",");
        format!(
            "{}  dim={} f=({}) chi={}  assertions=[{}]  known=[{}]",
            self.name,
            self.complex.dim(),
            f,
            self.euler,
            self.assertions.tokens().join(", "),
            known_list(&self.known)
        )
    }
}

#[derive(Clone, Debug)]
pub struct MapEntry {
    pub name: String,
    pub description: String,
    pub domain_name: String,
    pub codomain_name: String,
    pub map: SimplicialMap,
    pub assertions: MapAssertions,
    pub domain_known: Vec<KnownValue>,
    pub codomain_known: Vec<KnownValue>,
    /// Recorded TC(f) values. These are never fed to the engine; they are
    /// checked against its output.
    pub known: Vec<KnownValue>,
}

impl MapEntry {
    pub fn context(&self) -> MapContext {
        MapContext {
            assertions: self.assertions.clone(),
            domain_known: self.domain_known.clone(),
            codomain_known: self.codomain_known.clone(),
        }
    }

    pub fn analyze(&self, fields: &[FieldSpec]) -> Result<MapAnalysis, BoundError> {
        analyze_map(&self.map, fields, &self.context())
    }

    pub fn known_tc(&self) -> Option<u64> {
        self.known
            .iter()
            .find(|k| k.invariant == Invariant::TcMap)
            .map(|k| k.value)
    }

    pub fn summary_line(&self) -> String {
        format!(
            "{}  {} -> {}  dims=({},{})  assertions=[{}]  known=[{}]",
            self.name,
            self.domain_name,
            self.codomain_name,
            self.map.domain().dim(),
            self.map.codomain().dim(),
            self.assertions.tokens().join(", "),
            known_list(&self.known)
        )
    }

    /// Vertex map as aligned `source -> target` lines.
    pub fn vertex_table(&self) -> String {
        let vm = self.map.labelled_vertex_map();
        let w = vm.keys().map(String::len).max().unwrap_or(0);
        let mut out = String::new();
        for (a, b) in &vm {
            let _ = writeln!(out, "{a:<w$} -> {b}");
        }
        out
    }
}

fn known_list(known: &[KnownValue]) -> String {
    known
        .iter()
        .map(|k| format!("{}={} ({})", k.invariant, k.value, k.citation))
        .join("; ")
}

pub const SPACE_NAMES: &[&str] = &[
    "point",
    "circle",
    "sphere1",
    "sphere2",
    "sphere3",
    "sphere4",
    "rp2",
    "torus",
    "klein_bottle",
    "wedge_two_circles",
    "genus2_surface",
    "hexagon",
    "dodecagon",
    "icosahedron",
    "torus9",
    "s2xs1",
    "tree",
];

pub const MAP_NAMES: &[&str] = &[
    "circle_double_cover",
    "circle_quadruple_cover",
    "dodecagon_to_hexagon",
    "s2_to_rp2",
    "torus_projection",
    "s2xs1_projection",
    "wedge_tree_cover",
    "identity:<space>",
    "constant:<space>",
];

fn known(invariant: Invariant, value: u64, citation: &str) -> KnownValue {
    KnownValue {
        invariant,
        value,
        citation: citation.to_string(),
    }
}

const SPHERE_CITE: &str = "TC(S^n) = 2 for n odd and 3 for n even";

fn sphere_known(n: usize) -> Vec<KnownValue> {
    vec![known(Invariant::Tc, if n % 2 == 1 { 2 } else { 3 }, SPHERE_CITE)]
}

fn from_tuples<const K: usize>(facets: &[[usize; K]]) -> Result<SimplicialComplex, ComplexError> {
    SimplicialComplex::from_facets(facets.iter().map(|f| f.iter().map(|v| v.to_string())))
}

/// Boundary of the standard `n + 1` simplex on vertices `0..=n+1`.
pub fn sphere(n: usize) -> SimplicialComplex {
    SimplicialComplex::from_facets(
        (0..n + 2)
            .combinations(n + 1)
            .map(|f| f.into_iter().map(|v| v.to_string())),
    )
    .expect("boundary of a simplex")
}

/// `n`-gon with zero-padded vertex labels so that label order is cyclic order.
pub fn polygon(n: usize) -> SimplicialComplex {
    SimplicialComplex::from_facets((0..n).map(|i| [format!("{i:02}"), format!("{:02}", (i + 1) % n)])).expect("polygon")
}

pub fn triangle_circle() -> SimplicialComplex {
    SimplicialComplex::from_facets([["a", "b"], ["b", "c"], ["a", "c"]]).expect("circle")
}

const RP2: [[usize; 3]; 10] = [
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

/// Icosahedron boundary with vertex `i + 6` antipodal to vertex `i`.
const ICOSAHEDRON: [[usize; 3]; 20] = [
    [0, 1, 4],
    [0, 1, 5],
    [0, 2, 3],
    [0, 2, 4],
    [0, 3, 5],
    [1, 4, 9],
    [1, 5, 8],
    [1, 8, 9],
    [2, 3, 7],
    [2, 4, 11],
    [2, 7, 11],
    [3, 5, 10],
    [3, 7, 10],
    [4, 9, 11],
    [5, 8, 10],
    [6, 7, 10],
    [6, 7, 11],
    [6, 8, 9],
    [6, 8, 10],
    [6, 9, 11],
];

const GENUS2: [[usize; 3]; 24] = [
    [0, 1, 5],
    [0, 1, 8],
    [0, 2, 6],
    [0, 2, 9],
    [0, 3, 7],
    [0, 3, 9],
    [0, 4, 5],
    [0, 4, 6],
    [0, 7, 8],
    [1, 2, 4],
    [1, 2, 6],
    [1, 3, 8],
    [1, 3, 9],
    [1, 4, 7],
    [1, 5, 6],
    [1, 7, 9],
    [2, 4, 9],
    [3, 4, 6],
    [3, 4, 7],
    [3, 5, 6],
    [3, 5, 8],
    [4, 5, 9],
    [5, 7, 8],
    [5, 7, 9],
];

const KLEIN: [[usize; 3]; 16] = [
    [0, 1, 4],
    [0, 1, 6],
    [0, 2, 3],
    [0, 2, 4],
    [0, 3, 5],
    [0, 5, 7],
    [0, 6, 7],
    [1, 2, 3],
    [1, 2, 5],
    [1, 3, 6],
    [1, 4, 7],
    [1, 5, 7],
    [2, 4, 5],
    [3, 4, 5],
    [3, 4, 6],
    [4, 6, 7],
];

/// Vertex-minimal torus on `Z/7`.
pub fn torus7() -> SimplicialComplex {
    let f = (0..7).flat_map(|i| [[i, (i + 1) % 7, (i + 3) % 7], [i, (i + 2) % 7, (i + 3) % 7]]);
    SimplicialComplex::from_facets(f.map(|t| t.map(|v| v.to_string()))).expect("torus")
}

pub fn wedge_two_circles() -> SimplicialComplex {
    SimplicialComplex::from_facets([
        ["c", "a1"],
        ["a1", "a2"],
        ["a2", "c"],
        ["c", "b1"],
        ["b1", "b2"],
        ["b2", "c"],
    ])
    .expect("wedge")
}

/// Path on seven vertices `p0 .. p6`.
pub fn tree() -> SimplicialComplex {
    SimplicialComplex::from_facets((0..6).map(|i| [format!("p{i}"), format!("p{}", i + 1)])).expect("path")
}

fn assert_flags(contractible: bool, simply_connected: bool, h_group: bool) -> SpaceAssertions {
    SpaceAssertions {
        contractible,
        simply_connected,
        h_group,
        connectivity: None,
    }
    .normalized()
}

pub fn builtin_space(name: &str) -> Result<SpaceEntry, CatalogError> {
    let none = SpaceAssertions::default();
    let h = assert_flags(false, false, true);
    let sc = assert_flags(false, true, false);
    let circle_tc = || sphere_known(1);
    let (description, complex, assertions, known) = match name {
        "point" => ("one vertex", SimplicialComplex::from_facets([["p"]])?, none, Vec::new()),
        "circle" => ("boundary of a triangle", triangle_circle(), h, circle_tc()),
        "sphere1" | "sphere2" | "sphere3" | "sphere4" => {
            let n: usize = name[6..].parse().expect("sphere index");
            let a = if n >= 2 { sc } else { h };
            ("boundary of the (n+1)-simplex", sphere(n), a, sphere_known(n))
        }
        "rp2" => ("6-vertex real projective plane", from_tuples(&RP2)?, none, Vec::new()),
        "torus" => ("7-vertex torus", torus7(), h, Vec::new()),
        "klein_bottle" => ("8-vertex Klein bottle", from_tuples(&KLEIN)?, none, Vec::new()),
        "wedge_two_circles" => (
            "two triangles glued at a vertex",
            wedge_two_circles(),
            none,
            vec![known(Invariant::Tc, 3, "TC(S^1 v S^1) = 3")],
        ),
        "genus2_surface" => (
            "10-vertex closed orientable surface of genus 2",
            from_tuples(&GENUS2)?,
            none,
            vec![
                known(Invariant::Cat, 3, "cat of a closed surface of genus >= 1 is 3"),
                known(Invariant::Tc, 5, "TC of a closed orientable surface of genus >= 2 is 5"),
            ],
        ),
        "hexagon" => ("6-gon circle", polygon(6), h, circle_tc()),
        "dodecagon" => ("12-gon circle", polygon(12), h, circle_tc()),
        "icosahedron" => (
            "icosahedron boundary (2-sphere)",
            from_tuples(&ICOSAHEDRON)?,
            sc,
            sphere_known(2),
        ),
        "torus9" => (
            "staircase product of two triangle circles",
            product_complex(&triangle_circle(), &triangle_circle())?,
            h,
            Vec::new(),
        ),
        "s2xs1" => (
            "staircase product of the 2-sphere and the triangle circle",
            product_complex(&sphere(2), &triangle_circle())?,
            none,
            Vec::new(),
        ),
        "tree" => (
            "path on 7 vertices",
            tree(),
            assert_flags(true, true, false),
            Vec::new(),
        ),
        other => return Err(CatalogError::UnknownSpace(other.to_string())),
    };
    let euler = complex.euler_characteristic();
    Ok(SpaceEntry {
        name: name.to_string(),
        description: description.to_string(),
        complex,
        assertions,
        known,
        euler,
    })
}

pub fn spaces() -> Vec<SpaceEntry> {
    SPACE_NAMES
        .iter()
        .map(|n| builtin_space(n).expect("catalog space"))
        .collect()
}

fn labelled_map<F>(domain: &SpaceEntry, codomain: &SpaceEntry, rule: F) -> Result<SimplicialMap, CatalogError>
where
    F: Fn(&str) -> String,
{
    let vm: BTreeMap<String, String> = domain.complex.vertices().iter().map(|v| (v.clone(), rule(v))).collect();
    Ok(SimplicialMap::new(
        &vm,
        domain.complex.clone(),
        codomain.complex.clone(),
    )?)
}

fn index_label(v: &str) -> usize {
    v.parse().expect("numeric label")
}

fn circle_label(i: usize) -> String {
    ["a", "b", "c"][i % 3].to_string()
}

fn map_assertions(tokens: &[&str]) -> MapAssertions {
    MapAssertions::from_tokens(tokens).expect("catalog assertion tokens")
}

pub fn builtin_map(name: &str) -> Result<MapEntry, CatalogError> {
    if let Some(space) = name.strip_prefix("identity:") {
        let x = builtin_space(space)?;
        let map = SimplicialMap::identity(&x.complex);
        let tc = x
            .known(Invariant::Tc)
            .map(|k| known(Invariant::TcMap, k.value, "TC(id_X) = TC(X)"));
        return Ok(entry(
            name,
            "identity map",
            &x,
            &x,
            map,
            map_assertions(&["fibration", "section"]),
            tc,
        ));
    }
    if let Some(space) = name.strip_prefix("constant:") {
        let x = builtin_space(space)?;
        let pt = builtin_space("point")?;
        let map = SimplicialMap::constant(&x.complex, "p");
        let tc = Some(known(Invariant::TcMap, 1, "TC(X -> {y}) = 1"));
        return Ok(entry(
            name,
            "constant map to a point",
            &x,
            &pt,
            map,
            map_assertions(&["fibration", "section"]),
            tc,
        ));
    }
    let (description, dom, cod, map_of, tokens, tc): (&str, &str, &str, MapRule, &[&str], Option<KnownValue>) =
        match name {
            "circle_double_cover" => (
                "hexagon onto triangle, i -> i mod 3",
                "hexagon",
                "circle",
                MapRule::Label(|v| circle_label(index_label(v))),
                &["fibration", "covering:2"],
                None,
            ),
            "circle_quadruple_cover" => (
                "12-gon onto triangle, i -> i mod 3",
                "dodecagon",
                "circle",
                MapRule::Label(|v| circle_label(index_label(v))),
                &["fibration", "covering:4"],
                None,
            ),
            "dodecagon_to_hexagon" => (
                "12-gon onto 6-gon, i -> i mod 6",
                "dodecagon",
                "hexagon",
                MapRule::Label(|v| format!("{:02}", index_label(v) % 6)),
                &["fibration", "covering:2"],
                None,
            ),
            "s2_to_rp2" => (
                "antipodal quotient of the icosahedron onto the 6-vertex projective plane",
                "icosahedron",
                "rp2",
                MapRule::Label(|v| (index_label(v) % 6).to_string()),
                &["fibration", "covering:2", "universal-cover"],
                None,
            ),
            "torus_projection" => (
                "projection of the 9-vertex torus onto its first circle factor",
                "torus9",
                "circle",
                MapRule::FirstFactor,
                &["fibration", "section"],
                Some(known(Invariant::TcMap, 2, "TC(pr: X x F -> X) = TC(X); TC(S^1) = 2")),
            ),
            "s2xs1_projection" => (
                "projection of S^2 x S^1 onto the sphere factor",
                "s2xs1",
                "sphere2",
                MapRule::FirstFactor,
                &["fibration", "section"],
                Some(known(Invariant::TcMap, 3, "TC(pr: X x F -> X) = TC(X); TC(S^2) = 3")),
            ),
            "wedge_tree_cover" => (
                "path wrapping once around each circle of the wedge",
                "tree",
                "wedge_two_circles",
                MapRule::Label(|v| ["c", "a1", "a2", "c", "b1", "b2", "c"][index_label(&v[1..])].to_string()),
                &["fibration", "domain:contractible"],
                Some(known(
                    Invariant::TcMap,
                    2,
                    "TC(p) = cat(S^1 v S^1) = 2 for the universal cover",
                )),
            ),
            other => return Err(CatalogError::UnknownMap(other.to_string())),
        };
    let y = builtin_space(cod)?;
    let (x, map) = match map_of {
        MapRule::Label(rule) => {
            let x = builtin_space(dom)?;
            let m = labelled_map(&x, &y, rule)?;
            (x, m)
        }
        MapRule::FirstFactor => {
            let x = builtin_space(dom)?;
            let m = labelled_map(&x, &y, |v| v.split('|').next().expect("pair label").to_string())?;
            (x, m)
        }
    };
    Ok(entry(name, description, &x, &y, map, map_assertions(tokens), tc))
}

enum MapRule {
    Label(fn(&str) -> String),
    FirstFactor,
}

fn entry(
    name: &str,
    description: &str,
    x: &SpaceEntry,
    y: &SpaceEntry,
    map: SimplicialMap,
    mut assertions: MapAssertions,
    tc: Option<KnownValue>,
) -> MapEntry {
    assertions.domain.merge(&x.assertions);
    assertions.codomain.merge(&y.assertions);
    MapEntry {
        name: name.to_string(),
        description: description.to_string(),
        domain_name: x.name.clone(),
        codomain_name: y.name.clone(),
        map,
        assertions: assertions.normalized(),
        domain_known: x.known.clone(),
        codomain_known: y.known.clone(),
        known: tc.into_iter().collect(),
    }
}

/// Fixed catalog maps, without the `identity:` / `constant:` families.
pub fn maps() -> Vec<MapEntry> {
    MAP_NAMES
        .iter()
        .filter(|n| !n.contains('<'))
        .map(|n| builtin_map(n).expect("catalog map"))
        .collect()
}

/// Deterministic listing, one line per entry.
pub fn listing() -> String {
    let mut out = String::from("spaces:\n");
    for s in spaces() {
        let _ = writeln!(out, "  {}", s.summary_line());
    }
    out.push_str("maps:\n");
    for m in maps() {
        let _ = writeln!(out, "  {}", m.summary_line());
    }
    out.push_str("  identity:<space>  X -> X for any catalog space  assertions=[fibration, section]\n");
    out.push_str("  constant:<space>  X -> point for any catalog space  assertions=[fibration, section]\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spaces_validate_with_advertised_shape() {
        let expect: &[(&str, i64, &[usize])] = &[
            ("point", 1, &[1]),
            ("circle", 0, &[3, 3]),
            ("sphere2", 2, &[4, 6, 4]),
            ("sphere3", 0, &[5, 10, 10, 5]),
            ("sphere4", 2, &[6, 15, 20, 15, 6]),
            ("rp2", 1, &[6, 15, 10]),
            ("torus", 0, &[7, 21, 14]),
            ("klein_bottle", 0, &[8, 24, 16]),
            ("wedge_two_circles", -1, &[5, 6]),
            ("genus2_surface", -2, &[10, 36, 24]),
            ("icosahedron", 2, &[12, 30, 20]),
            ("torus9", 0, &[9, 27, 18]),
            ("tree", 1, &[7, 6]),
        ];
        for (name, chi, f) in expect {
            let e = builtin_space(name).unwrap();
            assert_eq!(e.euler, *chi, "{name}");
            assert_eq!(e.complex.f_vector(), *f, "{name}");
            assert!(e.complex.is_connected(), "{name}");
        }
        assert_eq!(spaces().len(), SPACE_NAMES.len());
        assert!(matches!(builtin_space("rp3"), Err(CatalogError::UnknownSpace(_))));
    }

    #[test]
    fn maps_validate_and_surject() {
        for m in maps() {
            assert!(m.map.is_surjective(), "{}", m.name);
        }
        for s in SPACE_NAMES {
            assert!(builtin_map(&format!("identity:{s}")).unwrap().map.is_surjective());
            assert!(builtin_map(&format!("constant:{s}")).unwrap().map.is_surjective());
        }
        assert!(matches!(builtin_map("hopf"), Err(CatalogError::UnknownMap(_))));
        assert!(matches!(
            builtin_map("identity:rp3"),
            Err(CatalogError::UnknownSpace(_))
        ));
    }

    #[test]
    fn covering_maps_evenly_cover_edges() {
        for (name, sheets) in [
            ("circle_double_cover", 2),
            ("circle_quadruple_cover", 4),
            ("s2_to_rp2", 2),
        ] {
            let m = builtin_map(name).unwrap();
            assert_eq!(m.assertions.covering_sheets, Some(sheets));
            assert!(m.assertions.fibration && m.assertions.covering);
            let f = &m.map;
            let top = f.codomain().dim() as usize;
            for k in 0..=top {
                for s in f.codomain().simplices(k) {
                    let pre = f.domain().simplices(k).iter().filter(|t| &f.image(t) == s).count();
                    assert_eq!(pre, sheets as usize, "{name} {k}");
                }
            }
        }
    }

    #[test]
    fn default_assertions() {
        let m = builtin_map("torus_projection").unwrap();
        assert!(m.assertions.fibration && m.assertions.section);
        assert!(m.assertions.codomain.h_group);
        let m = builtin_map("s2_to_rp2").unwrap();
        assert!(m.assertions.domain.simply_connected && m.assertions.universal_cover);
        assert!(builtin_space("sphere3").unwrap().assertions.simply_connected);
        assert!(builtin_space("circle").unwrap().assertions.h_group);
    }

    #[test]
    fn listing_is_deterministic() {
        let a = listing();
        assert_eq!(a, listing());
        let spaces = a.lines().skip(1).take_while(|l| !l.starts_with("maps:")).count();
        assert!(spaces >= 8);
        assert!(a.lines().skip_while(|l| !l.starts_with("maps:")).count() > 5);
    }

    #[test]
    fn vertex_table_lists_every_vertex() {
        let m = builtin_map("circle_double_cover").unwrap();
        let t = m.vertex_table();
        assert_eq!(t.lines().count(), 6);
        assert!(t.starts_with("00 -> a"));
    }
}
