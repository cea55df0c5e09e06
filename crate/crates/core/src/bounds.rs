//! Nilpotency indices and the constraint engine that turns cohomological
//! data and user assertions into certified intervals for cat, TC, sec and
//! TC of maps.
//!
//! Every quantity starts at `[1, inf]`. Rules are monotone: tightening an
//! input can only tighten a rule's output, so iterating all rules until no
//! interval moves reaches a fixed point that does not depend on rule order.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::assertions::{MapAssertions, SpaceAssertions};
use crate::cohomology::{
    cohomology_ring, diagonal_hom, induced_ring_hom_from, integral_connectivity, one_cross_f_from, CohomologyError,
    CohomologyRing, Connectivity, GradedRing, HomologyReport,
};
use crate::linalg::{Echelon, Field, FieldSpec};
use crate::simplicial::{SimplicialComplex, SimplicialMap};
use crate::with_field;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundError {
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error("ideal contains an element with a degree-0 component")]
    DegreeZeroInIdeal,
    #[error("map is not surjective on simplices; TC(f) is undefined here")]
    NotSurjective,
    #[error("no coefficient fields given")]
    NoFields,
    #[error("asserted connectivity {asserted} exceeds homological connectivity {homological}")]
    ConnectivityTooHigh { asserted: u32, homological: usize },
    #[error("assertion '{assertion}' contradicts the homology: {reason}")]
    ContradictedAssertion { assertion: String, reason: String },
    #[error(
        "inconsistent assertions: {quantity} has lower bound {lower} from {lower_rule} but upper bound {upper} from {upper_rule}"
    )]
    Inconsistent {
        quantity: Quantity,
        lower_rule: RuleId,
        lower: u64,
        upper_rule: RuleId,
        upper: u64,
    },
}

/// Nilpotency index of a subspace: the least `n` such that all `n`-fold
/// products vanish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilIndex {
    pub value: usize,
    /// Indices into the subspace basis whose product is nonzero, of length
    /// `value - 1`; empty when `value == 1`.
    pub witness: Vec<usize>,
}

/// Computes the nilpotency index of the span of `ideal` inside `ring`.
///
/// Levels are spanned greedily: `V_1 = K`, `V_{i+1} = span{v k}` over a basis
/// of `V_i` and the given basis of `K`. By bilinearity this is the span of
/// all `(i+1)`-fold products.
pub fn nil_index<F: Field>(ring: &GradedRing<F>, ideal: &[Vec<F::Elem>]) -> Result<NilIndex, BoundError> {
    let field = ring.field();
    for v in ideal {
        if (0..ring.dims().first().copied().unwrap_or(0)).any(|i| !field.is_zero(&v[i])) {
            return Err(BoundError::DegreeZeroInIdeal);
        }
    }
    let n = ring.total_dim();
    let mut level: Vec<(Vec<F::Elem>, Vec<usize>)> = Vec::new();
    let mut echelon = Echelon::new(field.clone(), n);
    for (i, v) in ideal.iter().enumerate() {
        if echelon.insert(v) {
            level.push((v.clone(), vec![i]));
        }
    }
    if level.is_empty() {
        return Ok(NilIndex {
            value: 1,
            witness: Vec::new(),
        });
    }
    let mut value = 1;
    loop {
        let mut next = Vec::new();
        let mut echelon = Echelon::new(field.clone(), n);
        for (v, word) in &level {
            for (i, k) in ideal.iter().enumerate() {
                let p = ring.mul(v, k);
                if echelon.insert(&p) {
                    let mut w = word.clone();
                    w.push(i);
                    next.push((p, w));
                }
            }
        }
        value += 1;
        if next.is_empty() {
            let witness = level.swap_remove(0).1;
            return Ok(NilIndex { value, witness });
        }
        level = next;
    }
}

fn positive_part<F: Field>(ring: &GradedRing<F>) -> Vec<Vec<F::Elem>> {
    (ring.offset(1)..ring.total_dim())
        .map(|i| ring.basis_vector(i))
        .collect()
}

/// Cup length in the unreduced convention: nil of the positive-degree part.
pub fn cup_length<F: Field>(x: &SimplicialComplex, field: &F) -> Result<NilIndex, BoundError> {
    let ring = cohomology_ring(x, field).ring;
    nil_index(&ring, &positive_part(&ring))
}

fn zcl_of<F: Field>(coh: &CohomologyRing<F>) -> Result<NilIndex, BoundError> {
    let delta = diagonal_hom(coh);
    nil_index(delta.source(), &delta.kernel())
}

/// Zero-divisor cup length: nil of the kernel of the cup product map.
pub fn zcl<F: Field>(x: &SimplicialComplex, field: &F) -> Result<NilIndex, BoundError> {
    zcl_of(&cohomology_ring(x, field))
}

/// Nil of the kernel of `(1, f)^*`.
pub fn nil_ker_one_f<F: Field>(f: &SimplicialMap, field: &F) -> Result<NilIndex, BoundError> {
    let hx = cohomology_ring(f.domain(), field);
    let hy = cohomology_ring(f.codomain(), field);
    let oxf = one_cross_f_from(&induced_ring_hom_from(f, &hx, &hy)?);
    nil_index(oxf.source(), &oxf.kernel())
}

/// An upper endpoint, possibly infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    Finite(u64),
    Infinite,
}

impl Bound {
    pub fn finite(&self) -> Option<u64> {
        match self {
            Bound::Finite(v) => Some(*v),
            Bound::Infinite => None,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(v) => write!(f, "{v}"),
            Bound::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Bound::Finite(v) => s.serialize_u64(*v),
            Bound::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Bound {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(Bound::Finite(v)),
            Raw::Str(s) if s == "inf" => Ok(Bound::Infinite),
            Raw::Str(s) => Err(serde::de::Error::custom(format!(
                "expected integer or \"inf\", got {s:?}"
            ))),
        }
    }
}

/// The quantities the engine reasons about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Quantity {
    CatX,
    TcX,
    CatY,
    TcY,
    CatXY,
    SecF,
    TcF,
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Quantity::CatX => "cat(X)",
            Quantity::TcX => "TC(X)",
            Quantity::CatY => "cat(Y)",
            Quantity::TcY => "TC(Y)",
            Quantity::CatXY => "cat(XxY)",
            Quantity::SecF => "sec(f)",
            Quantity::TcF => "TC(f)",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RuleId {
    CatContractible,
    CatCupLength,
    CatDimension,
    CatDimConnectivity,
    CatFromTc,
    CatKnown,
    TcContractible,
    TcFromCat,
    TcZcl,
    TcProduct,
    TcDimConnectivity,
    TcHGroup,
    TcKnown,
    CatProduct,
    SecSection,
    SecSkeleton,
    SecFibration,
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
    R9,
    R10,
    R11,
    R12,
    R13,
    ProductLower,
    ProductUpper,
}

impl RuleId {
    pub const ALL: [RuleId; 32] = [
        RuleId::CatContractible,
        RuleId::CatCupLength,
        RuleId::CatDimension,
        RuleId::CatDimConnectivity,
        RuleId::CatFromTc,
        RuleId::CatKnown,
        RuleId::TcContractible,
        RuleId::TcFromCat,
        RuleId::TcZcl,
        RuleId::TcProduct,
        RuleId::TcDimConnectivity,
        RuleId::TcHGroup,
        RuleId::TcKnown,
        RuleId::CatProduct,
        RuleId::SecSection,
        RuleId::SecSkeleton,
        RuleId::SecFibration,
        RuleId::R1,
        RuleId::R2,
        RuleId::R3,
        RuleId::R4,
        RuleId::R5,
        RuleId::R6,
        RuleId::R7,
        RuleId::R8,
        RuleId::R9,
        RuleId::R10,
        RuleId::R11,
        RuleId::R12,
        RuleId::R13,
        RuleId::ProductLower,
        RuleId::ProductUpper,
    ];

    pub fn code(&self) -> &'static str {
        match self {
            RuleId::CatContractible => "cat-contractible",
            RuleId::CatCupLength => "cat-cup-length",
            RuleId::CatDimension => "cat-dimension",
            RuleId::CatDimConnectivity => "cat-dim-conn",
            RuleId::CatFromTc => "cat-le-tc",
            RuleId::CatKnown => "cat-known",
            RuleId::TcContractible => "tc-contractible",
            RuleId::TcFromCat => "tc-ge-cat",
            RuleId::TcZcl => "tc-zcl",
            RuleId::TcProduct => "tc-product",
            RuleId::TcDimConnectivity => "tc-dim-conn",
            RuleId::TcHGroup => "tc-h-group",
            RuleId::TcKnown => "tc-known",
            RuleId::CatProduct => "cat-product",
            RuleId::SecSection => "sec-section",
            RuleId::SecSkeleton => "sec-skeleton",
            RuleId::SecFibration => "sec-fibration",
            RuleId::R1 => "R1",
            RuleId::R2 => "R2",
            RuleId::R3 => "R3",
            RuleId::R4 => "R4",
            RuleId::R5 => "R5",
            RuleId::R6 => "R6",
            RuleId::R7 => "R7",
            RuleId::R8 => "R8",
            RuleId::R9 => "R9",
            RuleId::R10 => "R10",
            RuleId::R11 => "R11",
            RuleId::R12 => "R12",
            RuleId::R13 => "R13",
            RuleId::ProductLower => "product-lower",
            RuleId::ProductUpper => "product-upper",
        }
    }

    /// The inequality a rule instantiates. Catalog rules carry the citation
    /// of the recorded value instead.
    pub fn citation(&self) -> &'static str {
        match self {
            RuleId::CatContractible => "cat(X) = 1 if and only if X is contractible",
            RuleId::CatCupLength => "cat(X) >= nil of the positive-degree cohomology (cup length)",
            RuleId::CatDimension => "cat(X) <= dim(X) + 1",
            RuleId::CatDimConnectivity => "cat(X) <= floor(dim(X) / (conn(X) + 1)) + 1",
            RuleId::CatFromTc => "cat(X) <= TC(X)",
            RuleId::CatKnown => "catalog value of cat(X)",
            RuleId::TcContractible => "TC(X) = 1 if and only if X is contractible",
            RuleId::TcFromCat => "TC(X) >= cat(X)",
            RuleId::TcZcl => "TC(X) >= nil(Ker of the cup product map), the zero-divisor cup length",
            RuleId::TcProduct => "TC(X) <= cat(X x X) <= 2 cat(X) - 1",
            RuleId::TcDimConnectivity => "TC(X) <= floor(2 dim(X) / (conn(X) + 1)) + 1",
            RuleId::TcHGroup => "TC(X) = cat(X) when X is an H-group",
            RuleId::TcKnown => "catalog value of TC(X)",
            RuleId::CatProduct => "cat(X x Y) <= cat(X) + cat(Y) - 1",
            RuleId::SecSection => "sec(f) = 1 when f admits a continuous section",
            RuleId::SecSkeleton => "sec(f) <= dim(Y) + 1 for simplicial f (filtration of Y by skeleta)",
            RuleId::SecFibration => "sec(f) <= cat(Y) when f is a fibration",
            RuleId::R1 => "TC(f) >= cat(Y)",
            RuleId::R2 => "TC(f) >= sec(f)",
            RuleId::R3 => "TC(f) >= cat(X) when some fibre of f is categorical in X",
            RuleId::R4 => "TC(f) <= cat(X) + cat(X) sec(f) - 1",
            RuleId::R5 => "TC(f) <= cat(X) (dim(Y) + 1) - 1 for simplicial f",
            RuleId::R6 => "TC(Y) <= TC(f) with a homotopy section; TC(f) <= TC(X) with a section",
            RuleId::R7 => "cat(Y) <= TC(f) <= min{TC(Y), cat(X x Y)} for a fibration f",
            RuleId::R8 => "TC(f) = cat(Y) for a fibration f with X contractible or Y an H-group",
            RuleId::R9 => "TC(f) >= nil(Ker (1,f)*)",
            RuleId::R10 => "TC(f) >= zcl(Y) when f*: H*(Y) -> H*(X) is injective",
            RuleId::R11 => "TC(f) <= min{floor(dim X/(conn X+1)), floor(dim Y/(conn Y+1))} + floor(dim Y/(conn Y+1)) + 1 for a fibration f",
            RuleId::R12 => "TC(f) = TC(Y) for a finite-sheeted covering f when TC(Y) equals zcl(Y; Q)",
            RuleId::R13 => "TC(f) >= 1; TC(f) = 1 implies f admits a continuous section",
            RuleId::ProductLower => "TC(f x f') >= max{TC(f), TC(f')}",
            RuleId::ProductUpper => "TC(f x f') <= TC(f) + TC(f') - 1",
        }
    }

    pub fn from_code(code: &str) -> Option<RuleId> {
        RuleId::ALL.iter().copied().find(|r| r.code() == code)
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// A rule's contribution: optional lower and upper bounds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub lower: Option<u64>,
    pub upper: Option<u64>,
}

impl Constraint {
    pub fn lower(v: u64) -> Self {
        Constraint {
            lower: Some(v),
            upper: None,
        }
    }

    pub fn upper(v: u64) -> Self {
        Constraint {
            lower: None,
            upper: Some(v),
        }
    }

    pub fn exact(lo: u64, hi: u64) -> Self {
        Constraint {
            lower: Some(lo),
            upper: Some(hi),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Rule,
    Catalog,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleApplication {
    pub rule: RuleId,
    pub citation: String,
    pub provenance: Provenance,
    pub inputs: Vec<(String, String)>,
    pub constraint: Constraint,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// A closed integer interval `[lo, hi]` with the rule applications that
/// produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundInterval {
    pub lo: u64,
    pub hi: Bound,
    pub trace: Vec<RuleApplication>,
}

impl BoundInterval {
    pub fn unbounded() -> Self {
        BoundInterval {
            lo: 1,
            hi: Bound::Infinite,
            trace: Vec::new(),
        }
    }

    pub fn new(lo: u64, hi: u64) -> Self {
        BoundInterval {
            lo,
            hi: Bound::Finite(hi),
            trace: Vec::new(),
        }
    }

    pub fn contains(&self, v: u64) -> bool {
        self.lo <= v && Bound::Finite(v) <= self.hi
    }

    pub fn is_exact(&self) -> bool {
        self.hi == Bound::Finite(self.lo)
    }

    pub fn endpoints(&self) -> (u64, Bound) {
        (self.lo, self.hi)
    }

    pub fn applications(&self, rule: RuleId) -> impl Iterator<Item = &RuleApplication> {
        self.trace.iter().filter(move |a| a.rule == rule)
    }

    /// Intersection of `[1, inf]` with every traced constraint.
    pub fn trace_intersection(&self) -> (u64, Bound) {
        let mut lo = 1;
        let mut hi = Bound::Infinite;
        for a in &self.trace {
            if let Some(l) = a.constraint.lower {
                lo = lo.max(l);
            }
            if let Some(u) = a.constraint.upper {
                hi = hi.min(Bound::Finite(u));
            }
        }
        (lo, hi)
    }
}

impl fmt::Display for BoundInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Catalog knowledge about a space or map, pinned as an exact value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnownValue {
    pub invariant: Invariant,
    pub value: u64,
    pub citation: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Invariant {
    Cat,
    Tc,
    TcMap,
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Invariant::Cat => "cat",
            Invariant::Tc => "TC",
            Invariant::TcMap => "TC(f)",
        })
    }
}

/// Cohomological invariants of a space over one field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldFacts {
    pub field: FieldSpec,
    pub dims: Vec<usize>,
    pub cup_length: NilIndex,
    pub zcl: NilIndex,
}

fn space_field_facts<F: Field>(x: &SimplicialComplex, field: &F) -> Result<FieldFacts, BoundError> {
    let coh = cohomology_ring(x, field);
    Ok(FieldFacts {
        field: field.spec(),
        dims: coh.ring.dims().to_vec(),
        cup_length: nil_index(&coh.ring, &positive_part(&coh.ring))?,
        zcl: zcl_of(&coh)?,
    })
}

/// Everything the engine knows about a space before applying rules.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceFacts {
    pub dim: usize,
    pub assertions: SpaceAssertions,
    pub homology: HomologyReport,
    /// Connectivity used in dimension/connectivity formulas: homological
    /// connectivity when simple connectivity is asserted, otherwise 0.
    pub connectivity: Connectivity,
    pub fields: Vec<FieldFacts>,
    pub known: Vec<KnownValue>,
}

impl SpaceFacts {
    pub fn compute(
        x: &SimplicialComplex,
        fields: &[FieldSpec],
        assertions: &SpaceAssertions,
        known: &[KnownValue],
    ) -> Result<Self, BoundError> {
        if fields.is_empty() {
            return Err(BoundError::NoFields);
        }
        let homology = integral_connectivity(x)?;
        let mut a = assertions.clone().normalized();
        if x.is_simplex() {
            a.contractible = true;
            a = a.normalized();
        }
        check_assertions(&a, &homology)?;
        let simply = a.simply_connected || a.connectivity.is_some_and(|c| c >= 1);
        let connectivity = if a.contractible {
            Connectivity::Acyclic
        } else if simply {
            homology.connectivity
        } else {
            Connectivity::UpTo(0)
        };
        let mut per_field = Vec::new();
        for &spec in dedup_fields(fields).iter() {
            per_field.push(with_field!(spec, |f| space_field_facts(x, &f))?);
        }
        Ok(SpaceFacts {
            dim: x.dim().max(0) as usize,
            assertions: a,
            homology,
            connectivity,
            fields: per_field,
            known: known.to_vec(),
        })
    }

    pub fn field(&self, spec: FieldSpec) -> Option<&FieldFacts> {
        self.fields.iter().find(|f| f.field == spec)
    }

    fn best<'a>(&'a self, pick: impl Fn(&'a FieldFacts) -> &'a NilIndex) -> (u64, Vec<(String, String)>) {
        let inputs = self
            .fields
            .iter()
            .map(|f| (f.field.to_string(), pick(f).value.to_string()))
            .collect();
        let best = self.fields.iter().map(|f| pick(f).value as u64).max().unwrap_or(1);
        (best, inputs)
    }

    /// `floor(d / (conn + 1))`, zero for an acyclic simply connected space.
    fn ratio(&self, numerator: usize) -> u64 {
        match self.connectivity {
            Connectivity::Acyclic => 0,
            Connectivity::UpTo(c) => (numerator / (c + 1)) as u64,
        }
    }

    fn conn_label(&self) -> String {
        match self.connectivity {
            Connectivity::Acyclic => "inf".into(),
            Connectivity::UpTo(c) => c.to_string(),
        }
    }
}

fn dedup_fields(fields: &[FieldSpec]) -> Vec<FieldSpec> {
    let mut out = Vec::new();
    for f in fields {
        if !out.contains(f) {
            out.push(*f);
        }
    }
    out
}

fn check_assertions(a: &SpaceAssertions, h: &HomologyReport) -> Result<(), BoundError> {
    if a.contractible && h.connectivity != Connectivity::Acyclic {
        return Err(BoundError::ContradictedAssertion {
            assertion: "contractible".into(),
            reason: "reduced integral homology is nonzero".into(),
        });
    }
    let h1_vanishes = h.homology.reduced_betti(1) == 0 && h.homology.torsion.get(1).is_none_or(Vec::is_empty);
    if a.simply_connected && !h1_vanishes {
        return Err(BoundError::ContradictedAssertion {
            assertion: "simply-connected".into(),
            reason: "H_1 is nonzero".into(),
        });
    }
    if let (Some(c), Connectivity::UpTo(hc)) = (a.connectivity, h.connectivity) {
        if c as usize > hc {
            return Err(BoundError::ConnectivityTooHigh {
                asserted: c,
                homological: hc,
            });
        }
    }
    Ok(())
}

type State = BTreeMap<Quantity, (u64, Bound)>;

struct Fired {
    constraint: Constraint,
    inputs: Vec<(String, String)>,
    note: Option<String>,
    catalog: Option<String>,
}

impl Fired {
    fn new(constraint: Constraint, inputs: Vec<(String, String)>) -> Self {
        Fired {
            constraint,
            inputs,
            note: None,
            catalog: None,
        }
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

type RuleFn<'a> = Box<dyn Fn(&State) -> Option<Fired> + 'a>;

struct Rule<'a> {
    id: RuleId,
    target: Quantity,
    eval: RuleFn<'a>,
}

impl<'a> Rule<'a> {
    fn new(id: RuleId, target: Quantity, eval: impl Fn(&State) -> Option<Fired> + 'a) -> Self {
        Rule {
            id,
            target,
            eval: Box::new(eval),
        }
    }
}

fn kv(k: impl Into<String>, v: impl ToString) -> (String, String) {
    (k.into(), v.to_string())
}

fn hi_of(s: &State, q: Quantity) -> Option<u64> {
    s[&q].1.finite()
}

fn lo_of(s: &State, q: Quantity) -> u64 {
    s[&q].0
}

/// Result of running the engine to its fixed point.
#[derive(Clone, Debug)]
struct Outcome {
    intervals: BTreeMap<Quantity, BoundInterval>,
    passes: usize,
}

const MAX_PASSES: usize = 10_000;

fn run(rules: &[Rule<'_>], reverse: bool) -> Result<Outcome, BoundError> {
    let mut state: State = rules.iter().map(|r| (r.target, (1, Bound::Infinite))).collect();
    let mut order: Vec<usize> = (0..rules.len()).collect();
    if reverse {
        order.reverse();
    }
    let mut applied: BTreeMap<usize, RuleApplication> = BTreeMap::new();
    let mut passes = 0;
    loop {
        passes += 1;
        let mut changed = false;
        for &i in &order {
            let rule = &rules[i];
            let Some(fired) = (rule.eval)(&state) else {
                continue;
            };
            let entry = state.get_mut(&rule.target).expect("target registered");
            if let Some(l) = fired.constraint.lower {
                if l > entry.0 {
                    entry.0 = l;
                    changed = true;
                }
            }
            if let Some(u) = fired.constraint.upper {
                if Bound::Finite(u) < entry.1 {
                    entry.1 = Bound::Finite(u);
                    changed = true;
                }
            }
            let (citation, provenance) = match fired.catalog {
                Some(c) => (c, Provenance::Catalog),
                None => (rule.id.citation().to_string(), Provenance::Rule),
            };
            applied.insert(
                i,
                RuleApplication {
                    rule: rule.id,
                    citation,
                    provenance,
                    inputs: fired.inputs,
                    constraint: fired.constraint,
                    note: fired.note,
                },
            );
            let (lo, hi) = *entry;
            if Bound::Finite(lo) > hi {
                return Err(conflict(rules, &applied, rule.target));
            }
        }
        if !changed || passes >= MAX_PASSES {
            break;
        }
    }
    let mut intervals = BTreeMap::new();
    for (&q, &(lo, hi)) in &state {
        let trace = applied
            .iter()
            .filter(|(i, _)| rules[**i].target == q)
            .map(|(_, a)| a.clone())
            .collect();
        intervals.insert(q, BoundInterval { lo, hi, trace });
    }
    Ok(Outcome { intervals, passes })
}

fn conflict(rules: &[Rule<'_>], applied: &BTreeMap<usize, RuleApplication>, q: Quantity) -> BoundError {
    let on_q = || applied.iter().filter(|(i, _)| rules[**i].target == q).map(|(_, a)| a);
    let (lower_rule, lower) = on_q()
        .filter_map(|a| a.constraint.lower.map(|l| (a.rule, l)))
        .max_by_key(|&(_, l)| l)
        .unwrap_or((RuleId::R13, 1));
    let (upper_rule, upper) = on_q()
        .filter_map(|a| a.constraint.upper.map(|u| (a.rule, u)))
        .min_by_key(|&(_, u)| u)
        .expect("a conflict needs an upper bound");
    BoundError::Inconsistent {
        quantity: q,
        lower_rule,
        lower,
        upper_rule,
        upper,
    }
}

/// Runs the rules in both orders and reports whether the fixed points agree.
fn run_checked(rules: &[Rule<'_>]) -> Result<(Outcome, bool), BoundError> {
    let forward = run(rules, false)?;
    let backward = run(rules, true)?;
    let same = forward
        .intervals
        .iter()
        .all(|(q, iv)| backward.intervals.get(q).map(BoundInterval::endpoints) == Some(iv.endpoints()));
    Ok((forward, same))
}

fn space_rules<'a>(s: &'a SpaceFacts, cat: Quantity, tc: Quantity) -> Vec<Rule<'a>> {
    let mut rules = Vec::new();
    let d = s.dim;
    if s.assertions.contractible {
        rules.push(Rule::new(RuleId::CatContractible, cat, |_| {
            Some(Fired::new(
                Constraint::exact(1, 1),
                vec![kv("contractible", "asserted")],
            ))
        }));
        rules.push(Rule::new(RuleId::TcContractible, tc, |_| {
            Some(Fired::new(
                Constraint::exact(1, 1),
                vec![kv("contractible", "asserted")],
            ))
        }));
    }
    rules.push(Rule::new(RuleId::CatCupLength, cat, move |_| {
        let (best, inputs) = s.best(|f| &f.cup_length);
        Some(Fired::new(Constraint::lower(best), inputs))
    }));
    rules.push(Rule::new(RuleId::CatDimension, cat, move |_| {
        Some(Fired::new(Constraint::upper(d as u64 + 1), vec![kv("dim", d)]))
    }));
    rules.push(Rule::new(RuleId::CatDimConnectivity, cat, move |_| {
        Some(
            Fired::new(
                Constraint::upper(s.ratio(d) + 1),
                vec![kv("dim", d), kv("conn", s.conn_label())],
            )
            .note("d/c + 1 evaluated as floor(d/c) + 1"),
        )
    }));
    rules.push(Rule::new(RuleId::CatFromTc, cat, move |st| {
        hi_of(st, tc).map(|h| Fired::new(Constraint::upper(h), vec![kv(tc.to_string() + ".hi", h)]))
    }));
    for k in s.known.iter().filter(|k| k.invariant == Invariant::Cat) {
        rules.push(Rule::new(RuleId::CatKnown, cat, move |_| {
            let mut f = Fired::new(Constraint::exact(k.value, k.value), vec![kv("value", k.value)]);
            f.catalog = Some(k.citation.clone());
            Some(f)
        }));
    }
    rules.push(Rule::new(RuleId::TcFromCat, tc, move |st| {
        let l = lo_of(st, cat);
        Some(Fired::new(Constraint::lower(l), vec![kv(cat.to_string() + ".lo", l)]))
    }));
    rules.push(Rule::new(RuleId::TcZcl, tc, move |_| {
        let (best, inputs) = s.best(|f| &f.zcl);
        Some(Fired::new(Constraint::lower(best), inputs))
    }));
    rules.push(Rule::new(RuleId::TcProduct, tc, move |st| {
        hi_of(st, cat).map(|h| Fired::new(Constraint::upper(2 * h - 1), vec![kv(cat.to_string() + ".hi", h)]))
    }));
    rules.push(Rule::new(RuleId::TcDimConnectivity, tc, move |_| {
        Some(Fired::new(
            Constraint::upper(s.ratio(2 * d) + 1),
            vec![kv("dim", d), kv("conn", s.conn_label())],
        ))
    }));
    if s.assertions.h_group {
        rules.push(Rule::new(RuleId::TcHGroup, tc, move |st| {
            let (l, h) = st[&cat];
            let c = Constraint {
                lower: Some(l),
                upper: h.finite(),
            };
            Some(Fired::new(
                c,
                vec![kv("h-group", "asserted"), kv(cat.to_string(), fmt_pair(l, h))],
            ))
        }));
    }
    for k in s.known.iter().filter(|k| k.invariant == Invariant::Tc) {
        rules.push(Rule::new(RuleId::TcKnown, tc, move |_| {
            let mut f = Fired::new(Constraint::exact(k.value, k.value), vec![kv("value", k.value)]);
            f.catalog = Some(k.citation.clone());
            Some(f)
        }));
    }
    rules
}

fn fmt_pair(lo: u64, hi: Bound) -> String {
    format!("[{lo}, {hi}]")
}

/// Result of analysing a space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceAnalysis {
    pub facts: SpaceFacts,
    pub cat: BoundInterval,
    pub tc: BoundInterval,
    pub passes: usize,
    pub rule_count: usize,
    pub order_independent: bool,
}

pub fn analyze_space(
    x: &SimplicialComplex,
    fields: &[FieldSpec],
    assertions: &SpaceAssertions,
    known: &[KnownValue],
) -> Result<SpaceAnalysis, BoundError> {
    let facts = SpaceFacts::compute(x, fields, assertions, known)?;
    let (outcome, order_independent, rule_count) = {
        let rules = space_rules(&facts, Quantity::CatX, Quantity::TcX);
        let (o, same) = run_checked(&rules)?;
        (o, same, rules.len())
    };
    let mut iv = outcome.intervals;
    Ok(SpaceAnalysis {
        cat: iv.remove(&Quantity::CatX).expect("cat"),
        tc: iv.remove(&Quantity::TcX).expect("tc"),
        passes: outcome.passes,
        rule_count,
        order_independent,
        facts,
    })
}

/// Interval for cat(X).
pub fn cat_bounds(
    x: &SimplicialComplex,
    fields: &[FieldSpec],
    assertions: &SpaceAssertions,
) -> Result<BoundInterval, BoundError> {
    Ok(analyze_space(x, fields, assertions, &[])?.cat)
}

/// Interval for TC(X).
pub fn tc_space_bounds(
    x: &SimplicialComplex,
    fields: &[FieldSpec],
    assertions: &SpaceAssertions,
) -> Result<BoundInterval, BoundError> {
    Ok(analyze_space(x, fields, assertions, &[])?.tc)
}

fn sec_rules<'a>(dim_y: usize, a: &'a MapAssertions) -> Vec<Rule<'a>> {
    let mut rules = Vec::new();
    if a.section {
        rules.push(Rule::new(RuleId::SecSection, Quantity::SecF, |_| {
            Some(Fired::new(Constraint::exact(1, 1), vec![kv("section", "asserted")]))
        }));
    }
    rules.push(Rule::new(RuleId::SecSkeleton, Quantity::SecF, move |_| {
        Some(
            Fired::new(Constraint::upper(dim_y as u64 + 1), vec![kv("dim Y", dim_y)])
                .note("the skeleton filtration of Y has dim(Y) + 1 strata"),
        )
    }));
    rules
}

/// Interval for sec(f) from assertions and the skeleton filtration.
pub fn sec_bounds(f: &SimplicialMap, assertions: &MapAssertions) -> Result<BoundInterval, BoundError> {
    if !f.is_surjective() {
        return Err(BoundError::NotSurjective);
    }
    let a = assertions.clone().normalized();
    let rules = sec_rules(f.codomain().dim().max(0) as usize, &a);
    let mut out = run(&rules, false)?;
    Ok(out.intervals.remove(&Quantity::SecF).expect("sec"))
}

/// Per-field data about `f^*` and `(1,f)^*`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapFieldFacts {
    pub field: FieldSpec,
    pub nil_ker_one_f: NilIndex,
    pub kernel_dim: usize,
    /// Rank of `f^*` in each degree `0..=dim Y`.
    pub fstar_ranks: Vec<usize>,
    pub fstar_injective: bool,
}

fn map_field_facts<F: Field>(f: &SimplicialMap, field: &F) -> Result<MapFieldFacts, BoundError> {
    let hx = cohomology_ring(f.domain(), field);
    let hy = cohomology_ring(f.codomain(), field);
    let fstar = induced_ring_hom_from(f, &hx, &hy)?;
    let oxf = one_cross_f_from(&fstar);
    let kernel = oxf.kernel();
    let top = hy.ring.top_degree();
    let fstar_ranks: Vec<usize> = (0..=top).map(|k| fstar.rank_in_degree(k)).collect();
    Ok(MapFieldFacts {
        field: field.spec(),
        nil_ker_one_f: nil_index(oxf.source(), &kernel)?,
        kernel_dim: kernel.len(),
        fstar_injective: fstar.is_injective_up_to(top),
        fstar_ranks,
    })
}

/// Result of analysing a map: intervals for every engine quantity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapAnalysis {
    pub assertions: MapAssertions,
    pub domain: SpaceFacts,
    pub codomain: SpaceFacts,
    pub fields: Vec<MapFieldFacts>,
    /// zcl(Y; Q), computed when the finite-cover rule needs it.
    pub codomain_zcl_rationals: Option<usize>,
    pub intervals: BTreeMap<Quantity, BoundInterval>,
    pub passes: usize,
    pub rule_count: usize,
    pub order_independent: bool,
}

impl MapAnalysis {
    pub fn tc(&self) -> &BoundInterval {
        &self.intervals[&Quantity::TcF]
    }

    pub fn sec(&self) -> &BoundInterval {
        &self.intervals[&Quantity::SecF]
    }

    pub fn interval(&self, q: Quantity) -> &BoundInterval {
        &self.intervals[&q]
    }
}

/// Inputs for [`analyze_map`] beyond the map itself.
#[derive(Clone, Debug, Default)]
pub struct MapContext {
    pub assertions: MapAssertions,
    pub domain_known: Vec<KnownValue>,
    pub codomain_known: Vec<KnownValue>,
}

pub fn analyze_map(f: &SimplicialMap, fields: &[FieldSpec], ctx: &MapContext) -> Result<MapAnalysis, BoundError> {
    if !f.is_surjective() {
        return Err(BoundError::NotSurjective);
    }
    if fields.is_empty() {
        return Err(BoundError::NoFields);
    }
    let mut a = ctx.assertions.clone().normalized();
    let domain = SpaceFacts::compute(f.domain(), fields, &a.domain, &ctx.domain_known)?;
    let codomain = SpaceFacts::compute(f.codomain(), fields, &a.codomain, &ctx.codomain_known)?;
    a.domain = domain.assertions.clone();
    a.codomain = codomain.assertions.clone();
    let mut per_field = Vec::new();
    for &spec in dedup_fields(fields).iter() {
        per_field.push(with_field!(spec, |fl| map_field_facts(f, &fl))?);
    }
    let known_tc_y = codomain
        .known
        .iter()
        .find(|k| k.invariant == Invariant::Tc)
        .map(|k| k.value);
    let finite_cover = a.fibration && a.covering && a.covering_sheets.is_some();
    let codomain_zcl_rationals = if finite_cover && known_tc_y.is_some() {
        Some(match codomain.field(FieldSpec::Rationals) {
            Some(ff) => ff.zcl.value,
            None => zcl(f.codomain(), &crate::linalg::Rationals)?.value,
        })
    } else {
        None
    };
    let dims = (domain.dim, codomain.dim);
    let (outcome, order_independent, rule_count) = {
        let rules = map_rules(
            &domain,
            &codomain,
            &per_field,
            &a,
            dims,
            known_tc_y,
            codomain_zcl_rationals,
        );
        let (o, same) = run_checked(&rules)?;
        (o, same, rules.len())
    };
    let mut intervals = outcome.intervals;
    if let Some(tc) = intervals.get_mut(&Quantity::TcF) {
        if tc.is_exact() && tc.lo == 1 {
            if let Some(app) = tc.trace.iter_mut().find(|app| app.rule == RuleId::R13) {
                app.note = Some("TC(f) = 1, hence f admits a continuous section".into());
            }
        }
    }
    Ok(MapAnalysis {
        assertions: a,
        domain,
        codomain,
        fields: per_field,
        codomain_zcl_rationals,
        intervals,
        passes: outcome.passes,
        rule_count,
        order_independent,
    })
}

/// Interval for TC(f) without catalog knowledge.
pub fn tc_map_bounds(
    f: &SimplicialMap,
    fields: &[FieldSpec],
    assertions: &MapAssertions,
) -> Result<BoundInterval, BoundError> {
    let ctx = MapContext {
        assertions: assertions.clone(),
        ..MapContext::default()
    };
    Ok(analyze_map(f, fields, &ctx)?.tc().clone())
}

#[allow(clippy::too_many_arguments)]
fn map_rules<'a>(
    x: &'a SpaceFacts,
    y: &'a SpaceFacts,
    per_field: &'a [MapFieldFacts],
    a: &'a MapAssertions,
    (dx, dy): (usize, usize),
    known_tc_y: Option<u64>,
    zcl_y_q: Option<usize>,
) -> Vec<Rule<'a>> {
    use Quantity::*;
    let mut rules = space_rules(x, CatX, TcX);
    rules.extend(space_rules(y, CatY, TcY));
    rules.push(Rule::new(RuleId::CatProduct, CatXY, |st| {
        let (cx, cy) = (hi_of(st, CatX)?, hi_of(st, CatY)?);
        Some(Fired::new(
            Constraint::upper(cx + cy - 1),
            vec![kv("cat(X).hi", cx), kv("cat(Y).hi", cy)],
        ))
    }));
    rules.extend(sec_rules(dy, a));
    if a.fibration {
        rules.push(Rule::new(RuleId::SecFibration, SecF, |st| {
            hi_of(st, CatY).map(|h| Fired::new(Constraint::upper(h), vec![kv("cat(Y).hi", h)]))
        }));
    }

    rules.push(Rule::new(RuleId::R1, TcF, |st| {
        let l = lo_of(st, CatY);
        Some(Fired::new(Constraint::lower(l), vec![kv("cat(Y).lo", l)]))
    }));
    rules.push(Rule::new(RuleId::R2, TcF, |st| {
        let l = lo_of(st, SecF);
        Some(Fired::new(Constraint::lower(l), vec![kv("sec(f).lo", l)]))
    }));
    if a.categorical_fibre {
        rules.push(Rule::new(RuleId::R3, TcF, |st| {
            let l = lo_of(st, CatX);
            Some(Fired::new(Constraint::lower(l), vec![kv("cat(X).lo", l)]))
        }));
    }
    rules.push(Rule::new(RuleId::R4, TcF, |st| {
        let (c, s) = (hi_of(st, CatX)?, hi_of(st, SecF)?);
        Some(Fired::new(
            Constraint::upper(c * (s + 1) - 1),
            vec![kv("cat(X).hi", c), kv("sec(f).hi", s)],
        ))
    }));
    rules.push(Rule::new(RuleId::R5, TcF, move |st| {
        let c = hi_of(st, CatX)?;
        Some(
            Fired::new(
                Constraint::upper(c * (dy as u64 + 2) - 1),
                vec![kv("cat(X).hi", c), kv("dim Y", dy)],
            )
            .note("evaluated with sec(f) <= dim(Y) + 1, i.e. cat(X) (dim(Y) + 2) - 1"),
        )
    }));
    if a.homotopy_section {
        rules.push(Rule::new(RuleId::R6, TcF, |st| {
            let l = lo_of(st, TcY);
            let mut inputs = vec![kv("TC(Y).lo", l)];
            let upper = if a.section { hi_of(st, TcX) } else { None };
            if let Some(u) = upper {
                inputs.push(kv("TC(X).hi", u));
            }
            Some(Fired::new(Constraint { lower: Some(l), upper }, inputs))
        }));
    }
    if a.fibration {
        rules.push(Rule::new(RuleId::R7, TcF, |st| {
            let l = lo_of(st, CatY);
            let upper = match (hi_of(st, TcY), hi_of(st, CatXY)) {
                (Some(t), Some(c)) => Some(t.min(c)),
                (t, c) => t.or(c),
            };
            Some(Fired::new(
                Constraint { lower: Some(l), upper },
                vec![
                    kv("cat(Y).lo", l),
                    kv("TC(Y).hi", st[&TcY].1),
                    kv("cat(XxY).hi", st[&CatXY].1),
                ],
            ))
        }));
        if x.assertions.contractible || y.assertions.h_group {
            rules.push(Rule::new(RuleId::R8, TcF, |st| {
                let (l, h) = st[&CatY];
                let why = if x.assertions.contractible {
                    "X contractible"
                } else {
                    "Y H-group"
                };
                Some(Fired::new(
                    Constraint {
                        lower: Some(l),
                        upper: h.finite(),
                    },
                    vec![kv("hypothesis", why), kv("cat(Y)", fmt_pair(l, h))],
                ))
            }));
        }
    }
    rules.push(Rule::new(RuleId::R9, TcF, move |_| {
        let inputs = per_field
            .iter()
            .map(|m| (m.field.to_string(), m.nil_ker_one_f.value.to_string()))
            .collect();
        let best = per_field
            .iter()
            .map(|m| m.nil_ker_one_f.value as u64)
            .max()
            .unwrap_or(1);
        Some(Fired::new(Constraint::lower(best), inputs))
    }));
    let injective: Vec<&MapFieldFacts> = per_field.iter().filter(|m| m.fstar_injective).collect();
    if !injective.is_empty() {
        rules.push(Rule::new(RuleId::R10, TcF, move |_| {
            let mut best = 1;
            let mut inputs = Vec::new();
            for m in &injective {
                let z = y.field(m.field).map_or(1, |ff| ff.zcl.value as u64);
                inputs.push(kv(format!("zcl(Y; {})", m.field), z));
                best = best.max(z);
            }
            Some(Fired::new(Constraint::lower(best), inputs))
        }));
    }
    if a.fibration {
        rules.push(Rule::new(RuleId::R11, TcF, move |_| {
            let (rx, ry) = (x.ratio(dx), y.ratio(dy));
            Some(
                Fired::new(
                    Constraint::upper(rx.min(ry) + ry + 1),
                    vec![
                        kv("dim X", dx),
                        kv("conn X", x.conn_label()),
                        kv("dim Y", dy),
                        kv("conn Y", y.conn_label()),
                    ],
                )
                .note("formula applied as stated; it equals min{cat(X x Y), cat(Y x Y)} bounded via dimension/connectivity"),
            )
        }));
    }
    if let (Some(t), Some(z)) = (known_tc_y, zcl_y_q) {
        if t == z as u64 {
            let sheets = a.covering_sheets.unwrap_or(0);
            rules.push(Rule::new(RuleId::R12, TcF, move |_| {
                Some(Fired::new(
                    Constraint::exact(t, t),
                    vec![kv("TC(Y) catalog", t), kv("zcl(Y; q)", z), kv("sheets", sheets)],
                ))
            }));
        }
    }
    rules.push(Rule::new(RuleId::R13, TcF, |_| {
        Some(Fired::new(Constraint::lower(1), Vec::new()))
    }));
    rules
}

/// `[max(lo, lo'), hi + hi' - 1]` for a product of maps.
pub fn product_map_bounds(a: &BoundInterval, b: &BoundInterval) -> BoundInterval {
    let lo = a.lo.max(b.lo);
    let hi = match (a.hi, b.hi) {
        (Bound::Finite(x), Bound::Finite(y)) => Bound::Finite(x + y - 1),
        _ => Bound::Infinite,
    };
    let mut trace = vec![RuleApplication {
        rule: RuleId::ProductLower,
        citation: RuleId::ProductLower.citation().into(),
        provenance: Provenance::Rule,
        inputs: vec![kv("TC(f)", a), kv("TC(f')", b)],
        constraint: Constraint::lower(lo),
        note: None,
    }];
    if let Bound::Finite(h) = hi {
        trace.push(RuleApplication {
            rule: RuleId::ProductUpper,
            citation: RuleId::ProductUpper.citation().into(),
            provenance: Provenance::Rule,
            inputs: vec![kv("TC(f).hi", a.hi), kv("TC(f').hi", b.hi)],
            constraint: Constraint::upper(h),
            note: None,
        });
    }
    BoundInterval { lo, hi, trace }
}
