//! The `tcbound-report/1` document.
//!
//! Everything under `analysis` depends only on the complex, the effective
//! assertions, the recorded values fed to the engine and the field list, so
//! two runs on the same inputs agree there regardless of where the input came
//! from.

use std::collections::BTreeMap;

use serde::Serialize;
use tcbound_core::bounds::{FieldFacts, Provenance, SpaceFacts};
use tcbound_core::cohomology::IntegralHomology;
use tcbound_core::linalg::FieldSpec;
use tcbound_core::{
    cup_ring, Bound, BoundInterval, Connectivity, KnownValue, MapAnalysis, NilIndex, SimplicialComplex, SpaceAnalysis,
};

use crate::input::Source;

pub const SCHEMA: &str = "tcbound-report/1";

#[derive(Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub kind: &'static str,
    pub source: Source,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub catalog: Option<CatalogNote>,
    pub analysis: Analysis,
}

#[derive(Serialize)]
pub struct CatalogNote {
    pub name: String,
    pub description: String,
    /// Recorded TC(f), compared against the engine but never used by it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub known_tc_f: Option<KnownValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub known_tc_f_contained: Option<bool>,
}

#[derive(Serialize)]
#[serde(untagged)]
pub enum Analysis {
    Space(Box<SpaceSection>),
    Map(Box<MapSection>),
}

#[derive(Serialize)]
pub struct SpaceSection {
    pub fields: Vec<String>,
    pub space: FactsOut,
    pub cat: IntervalOut,
    pub tc: IntervalOut,
    pub passes: usize,
    pub rule_count: usize,
    pub order_independent: bool,
}

#[derive(Serialize)]
pub struct MapSection {
    pub fields: Vec<String>,
    pub assertions: Vec<String>,
    pub vertex_map: BTreeMap<String, String>,
    pub domain: FactsOut,
    pub codomain: FactsOut,
    pub map_fields: Vec<MapFieldOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub codomain_zcl_rationals: Option<usize>,
    pub intervals: BTreeMap<String, IntervalOut>,
    pub passes: usize,
    pub rule_count: usize,
    pub order_independent: bool,
}

#[derive(Serialize)]
pub struct FactsOut {
    pub vertices: usize,
    pub dim: usize,
    pub f_vector: Vec<usize>,
    pub euler: i64,
    pub assertions: Vec<String>,
    pub homology: HomologyOut,
    /// Largest c with vanishing reduced homology through degree c, or
    /// "acyclic". This is the value the engine uses, after assertions.
    pub connectivity: ConnectivityOut,
    pub known: Vec<KnownValue>,
    pub fields: Vec<FieldOut>,
}

#[derive(Serialize)]
pub struct HomologyOut {
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<String>>,
    pub connectivity: ConnectivityOut,
}

#[derive(Serialize)]
#[serde(untagged)]
pub enum ConnectivityOut {
    Degree(usize),
    Word(&'static str),
}

impl From<Connectivity> for ConnectivityOut {
    fn from(c: Connectivity) -> Self {
        match c {
            Connectivity::UpTo(d) => ConnectivityOut::Degree(d),
            Connectivity::Acyclic => ConnectivityOut::Word("acyclic"),
        }
    }
}

#[derive(Serialize)]
pub struct FieldOut {
    pub field: String,
    pub dims: Vec<usize>,
    pub cup_length: NilIndex,
    pub zcl: NilIndex,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingOut>,
}

#[derive(Serialize)]
pub struct RingOut {
    pub basis: Vec<String>,
    pub products: Vec<ProductOut>,
}

#[derive(Serialize)]
pub struct ProductOut {
    pub left: String,
    pub right: String,
    pub terms: Vec<(String, String)>,
}

#[derive(Serialize)]
pub struct MapFieldOut {
    pub field: String,
    pub nil_ker_one_f: NilIndex,
    pub kernel_dim: usize,
    pub fstar_ranks: Vec<usize>,
    pub fstar_injective: bool,
}

#[derive(Serialize)]
pub struct IntervalOut {
    pub lo: u64,
    pub hi: Bound,
    pub exact: bool,
    pub trace: Vec<TraceOut>,
}

#[derive(Serialize)]
pub struct TraceOut {
    pub rule: &'static str,
    pub citation: String,
    pub provenance: Provenance,
    pub inputs: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl From<&BoundInterval> for IntervalOut {
    fn from(b: &BoundInterval) -> Self {
        IntervalOut {
            lo: b.lo,
            hi: b.hi,
            exact: b.is_exact(),
            trace: b
                .trace
                .iter()
                .map(|a| TraceOut {
                    rule: a.rule.code(),
                    citation: a.citation.clone(),
                    provenance: a.provenance.clone(),
                    inputs: a.inputs.iter().cloned().collect(),
                    lower: a.constraint.lower,
                    upper: a.constraint.upper,
                    note: a.note.clone(),
                })
                .collect(),
        }
    }
}

fn homology_out(h: &IntegralHomology, c: Connectivity) -> HomologyOut {
    HomologyOut {
        betti: h.betti.clone(),
        torsion: h
            .torsion
            .iter()
            .map(|t| t.iter().map(|d| d.to_string()).collect())
            .collect(),
        connectivity: c.into(),
    }
}

fn ring_out(x: &SimplicialComplex, field: FieldSpec) -> RingOut {
    tcbound_core::with_field!(field, |f| {
        let r = cup_ring(x, &f);
        let labels = r.labels().to_vec();
        let products = r
            .nonzero_products()
            .into_iter()
            .map(|(i, j, terms)| ProductOut {
                left: labels[i].clone(),
                right: labels[j].clone(),
                terms: terms.into_iter().map(|(k, c)| (labels[k].clone(), c)).collect(),
            })
            .collect();
        RingOut {
            basis: labels,
            products,
        }
    })
}

fn field_out(ff: &FieldFacts, x: Option<&SimplicialComplex>) -> FieldOut {
    FieldOut {
        field: ff.field.to_string(),
        dims: ff.dims.clone(),
        cup_length: ff.cup_length.clone(),
        zcl: ff.zcl.clone(),
        ring: x.map(|x| ring_out(x, ff.field)),
    }
}

/// `with_ring` adds the basis and product table per field; map reports
/// leave it out to stay readable.
pub fn facts_out(x: &SimplicialComplex, facts: &SpaceFacts, with_ring: bool) -> FactsOut {
    FactsOut {
        vertices: x.vertices().len(),
        dim: facts.dim,
        f_vector: x.f_vector(),
        euler: x.euler_characteristic(),
        assertions: facts.assertions.tokens(),
        homology: homology_out(&facts.homology.homology, facts.homology.connectivity),
        connectivity: facts.connectivity.into(),
        known: facts.known.clone(),
        fields: facts
            .fields
            .iter()
            .map(|ff| field_out(ff, with_ring.then_some(x)))
            .collect(),
    }
}

fn field_names(fields: &[FieldSpec]) -> Vec<String> {
    fields.iter().map(FieldSpec::to_string).collect()
}

pub fn space_section(x: &SimplicialComplex, fields: &[FieldSpec], a: &SpaceAnalysis) -> SpaceSection {
    SpaceSection {
        fields: field_names(fields),
        space: facts_out(x, &a.facts, true),
        cat: (&a.cat).into(),
        tc: (&a.tc).into(),
        passes: a.passes,
        rule_count: a.rule_count,
        order_independent: a.order_independent,
    }
}

pub fn map_section(map: &tcbound_core::SimplicialMap, fields: &[FieldSpec], a: &MapAnalysis) -> MapSection {
    MapSection {
        fields: field_names(fields),
        assertions: a.assertions.tokens(),
        vertex_map: map.labelled_vertex_map(),
        domain: facts_out(map.domain(), &a.domain, false),
        codomain: facts_out(map.codomain(), &a.codomain, false),
        map_fields: a
            .fields
            .iter()
            .map(|m| MapFieldOut {
                field: m.field.to_string(),
                nil_ker_one_f: m.nil_ker_one_f.clone(),
                kernel_dim: m.kernel_dim,
                fstar_ranks: m.fstar_ranks.clone(),
                fstar_injective: m.fstar_injective,
            })
            .collect(),
        codomain_zcl_rationals: a.codomain_zcl_rationals,
        intervals: a.intervals.iter().map(|(q, b)| (q.to_string(), b.into())).collect(),
        passes: a.passes,
        rule_count: a.rule_count,
        order_independent: a.order_independent,
    }
}
