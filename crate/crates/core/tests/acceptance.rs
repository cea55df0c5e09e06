//! Acceptance suite: one PASS/FAIL line per criterion, with its time limit.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use tcbound_core::bounds::{analyze_space, Provenance};
use tcbound_core::catalog::{builtin_map, builtin_space, maps, spaces, MapEntry, SPACE_NAMES};
use tcbound_core::cohomology::{cohomology_ring, diagonal_hom, induced_ring_hom, one_cross_f_hom};
use tcbound_core::linalg::{Field, PrimeField, Rationals};
use tcbound_core::oracle::{functoriality_check, multiplicativity_check, product_size};
use tcbound_core::{
    brute_nil_check, cup_ring, kunneth_check, nil_index, ring_axioms_check, Bound, BoundInterval, FieldSpec, Quantity,
    RuleId,
};

const Q: FieldSpec = FieldSpec::Rationals;
const F2: FieldSpec = FieldSpec::Prime(2);
const KUNNETH_LIMIT: u128 = 10_000;
const RANDOM_PER_FIELD: usize = 100;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn exact(iv: &BoundInterval, lo: u64, hi: u64) -> bool {
    iv.endpoints() == (lo, Bound::Finite(hi))
}

fn f2() -> PrimeField {
    PrimeField::new(2).unwrap()
}

fn criterion_1() -> Outcome {
    let m = builtin_map("s2_to_rp2").map_err(|e| e.to_string())?;
    let a = m.analyze(&[F2, Q]).map_err(|e| e.to_string())?;
    let tc = a.tc();
    ensure(exact(tc, 3, 4), || format!("TC(p) = {tc}, expected [3, 4]"))?;
    let r11 = tc.applications(RuleId::R11).next().ok_or("R11 did not fire")?;
    ensure(r11.constraint.upper == Some(4), || {
        format!("R11 gave {:?}", r11.constraint)
    })?;
    let cat_y = a.interval(Quantity::CatY);
    let cup = cat_y
        .applications(RuleId::CatCupLength)
        .next()
        .ok_or("no cup-length rule on cat(Y)")?;
    let over_f2 = cup.inputs.iter().find(|(k, _)| k == "f2").map(|(_, v)| v.as_str());
    ensure(over_f2 == Some("3") && cat_y.lo == 3, || {
        format!("cat(RP2) = {cat_y}, cup length inputs {:?}", cup.inputs)
    })?;
    let r1 = tc.applications(RuleId::R1).next().ok_or("R1 did not fire")?;
    ensure(r1.constraint.lower == Some(3), || "R1 lower is not 3".into())?;
    Ok(format!(
        "TC(p) = {tc}; R11 upper 4; cat(RP2) = {cat_y} from cup length over f2"
    ))
}

fn criterion_2() -> Outcome {
    let w = builtin_space("wedge_two_circles").map_err(|e| e.to_string())?;
    let a = analyze_space(&w.complex, &[Q, F2], &w.assertions, &[]).map_err(|e| e.to_string())?;
    ensure(exact(&a.tc, 3, 3), || format!("TC(S1 v S1) = {}", a.tc))?;
    let m = builtin_map("wedge_tree_cover").map_err(|e| e.to_string())?;
    ensure(m.assertions.fibration && m.assertions.domain.contractible, || {
        "cover lacks assertions".into()
    })?;
    let b = m.analyze(&[Q, F2]).map_err(|e| e.to_string())?;
    let tc = b.tc();
    let cat_y = b.interval(Quantity::CatY);
    ensure(exact(tc, 2, 2) && exact(cat_y, 2, 2), || {
        format!("TC(p) = {tc}, cat(Y) = {cat_y}")
    })?;
    let r8 = tc.applications(RuleId::R8).next().ok_or("R8 did not fire")?;
    ensure(r8.constraint.lower == Some(2) && r8.constraint.upper == Some(2), || {
        format!("R8 gave {:?}", r8.constraint)
    })?;
    Ok(format!(
        "TC(X) = {} (no catalog override); TC(p) = cat(Y) = {tc} via R8",
        a.tc
    ))
}

fn criterion_3() -> Outcome {
    let g = builtin_space("genus2_surface").map_err(|e| e.to_string())?;
    let a = analyze_space(&g.complex, &[Q, F2], &g.assertions, &[]).map_err(|e| e.to_string())?;
    ensure(exact(&a.cat, 3, 3), || format!("cat = {}", a.cat))?;
    ensure(exact(&a.tc, 5, 5), || format!("TC = {}", a.tc))?;
    let zcl = a.tc.applications(RuleId::TcZcl).next().ok_or("no zcl rule")?;
    ensure(zcl.constraint.lower == Some(5), || {
        format!("zcl lower {:?}", zcl.constraint)
    })?;
    let prod = a.tc.applications(RuleId::TcProduct).next().ok_or("no product rule")?;
    ensure(prod.constraint.upper == Some(5), || {
        format!("product upper {:?}", prod.constraint)
    })?;
    let zq = a.facts.field(Q).map(|f| f.zcl.value);
    Ok(format!(
        "cat = {}, TC = {} (zcl over q = {:?}, 2 cat - 1 = 5), no overrides",
        a.cat, a.tc, zq
    ))
}

fn criterion_4() -> Outcome {
    let fields = [Q, F2];
    for name in SPACE_NAMES {
        let s = builtin_space(name).map_err(|e| e.to_string())?;
        let tc = s.analyze(&fields).map_err(|e| e.to_string())?.tc;
        let id = builtin_map(&format!("identity:{name}")).map_err(|e| e.to_string())?;
        let tid = id.analyze(&fields).map_err(|e| e.to_string())?;
        ensure(tid.tc().endpoints() == tc.endpoints(), || {
            format!("{name}: TC(id) = {}, TC(X) = {tc}", tid.tc())
        })?;
        let c = builtin_map(&format!("constant:{name}")).map_err(|e| e.to_string())?;
        let tc_c = c.analyze(&fields).map_err(|e| e.to_string())?;
        ensure(exact(tc_c.tc(), 1, 1), || format!("{name}: TC(const) = {}", tc_c.tc()))?;
    }
    Ok(format!(
        "{} spaces: TC(id) = TC(X), TC(const) = [1, 1]",
        SPACE_NAMES.len()
    ))
}

fn criterion_5() -> Outcome {
    let m = builtin_map("circle_double_cover").map_err(|e| e.to_string())?;
    let a = m.analyze(&[Q]).map_err(|e| e.to_string())?;
    let nil_q = a.fields[0].nil_ker_one_f.value;
    ensure(nil_q == 2, || format!("nil over q = {nil_q}"))?;
    ensure(exact(a.tc(), 2, 2), || format!("TC(f) = {}", a.tc()))?;
    let h = one_cross_f_hom(&m.map, &f2()).map_err(|e| e.to_string())?;
    let brute = brute_nil_check(h.source(), &h.kernel()).map_err(|e| e.to_string())?;
    ensure(brute.value == 2, || format!("oracle over f2 = {}", brute.value))?;
    Ok(format!(
        "nil Ker(1,f)* = 2 over q, oracle over f2 = 2 ({:?}), TC(f) = {}",
        brute.method,
        a.tc()
    ))
}

fn map_entries() -> Vec<MapEntry> {
    let mut out = maps();
    for s in SPACE_NAMES {
        out.push(builtin_map(&format!("identity:{s}")).unwrap());
        out.push(builtin_map(&format!("constant:{s}")).unwrap());
    }
    out
}

fn criterion_6() -> Outcome {
    let f = f2();
    let mut checked = 0;
    let mut truncated = 0;
    let mut rp2 = None;
    let mut compare =
        |label: &str, ring: &tcbound_core::GradedRing<PrimeField>, k: &[Vec<u64>]| -> Result<(), String> {
            let engine = nil_index(ring, k).map_err(|e| e.to_string())?.value;
            let brute = brute_nil_check(ring, k).map_err(|e| format!("{label}: {e}"))?;
            ensure(engine == brute.value, || {
                format!("{label}: engine {engine}, oracle {}", brute.value)
            })?;
            checked += 1;
            if brute.method != tcbound_core::oracle::NilMethod::Exhaustive {
                truncated += 1;
            }
            Ok(())
        };
    for s in spaces() {
        let coh = cohomology_ring(&s.complex, &f);
        let pos: Vec<Vec<u64>> = (coh.ring.offset(1)..coh.ring.total_dim())
            .map(|i| coh.ring.basis_vector(i))
            .collect();
        compare(&format!("cup {}", s.name), &coh.ring, &pos)?;
        let d = diagonal_hom(&coh);
        let k = d.kernel();
        compare(&format!("zcl {}", s.name), d.source(), &k)?;
        if s.name == "rp2" {
            rp2 = Some(brute_nil_check(d.source(), &k).map_err(|e| e.to_string())?.value);
        }
    }
    for m in map_entries() {
        let h = one_cross_f_hom(&m.map, &f).map_err(|e| e.to_string())?;
        compare(&format!("map {}", m.name), h.source(), &h.kernel())?;
    }
    ensure(rp2 == Some(4), || format!("zcl(rp2; f2) = {rp2:?}"))?;
    Ok(format!(
        "{checked} kernels agree (zcl(rp2; f2) = 4); {truncated} beyond 2^16 elements checked on a degree truncation"
    ))
}

fn criterion_7() -> Outcome {
    let all = spaces();
    let (mut pairs, mut skipped) = (0, 0);
    for (i, a) in all.iter().enumerate() {
        for b in &all[i..] {
            if product_size(&a.complex, &b.complex) > KUNNETH_LIMIT {
                skipped += 1;
                continue;
            }
            for report in [
                kunneth_check(&a.complex, &b.complex, &Rationals).map_err(|e| e.to_string())?,
                kunneth_check(&a.complex, &b.complex, &f2()).map_err(|e| e.to_string())?,
            ] {
                ensure(report.equal, || {
                    format!(
                        "{} x {} over {}: {:?} vs {:?}",
                        a.name, b.name, report.field, report.product_dims, report.tensor_dims
                    )
                })?;
            }
            pairs += 1;
        }
    }
    Ok(format!(
        "{pairs} pairs equal over q and f2; {skipped} pairs above {KUNNETH_LIMIT} simplices not built"
    ))
}

fn axioms_on<F: Field>(field: &F, label: &str) -> Result<usize, String> {
    let mut n = 0;
    for s in spaces() {
        let r = ring_axioms_check(&cup_ring(&s.complex, field));
        ensure(r.passed(), || format!("{} over {label}: {r:?}", s.name))?;
        n += 1;
    }
    for (i, x) in common::random_complexes(0x5eed, RANDOM_PER_FIELD).iter().enumerate() {
        let r = ring_axioms_check(&cup_ring(x, field));
        ensure(r.passed(), || {
            format!("random #{i} over {label}: {r:?} facets {:?}", x.facet_labels())
        })?;
        n += 1;
    }
    Ok(n)
}

fn criterion_8() -> Outcome {
    let rings = axioms_on(&Rationals, "q")? + axioms_on(&f2(), "f2")?;
    let mut homs = 0;
    for m in map_entries() {
        for spec in [Q, F2] {
            let bad = tcbound_core::with_field!(spec, |f| {
                let h = induced_ring_hom(&m.map, &f).map_err(|e| e.to_string())?;
                multiplicativity_check(&h)
            });
            ensure(bad.is_none(), || {
                format!("{} over {spec}: f* not multiplicative at {bad:?}", m.name)
            })?;
            homs += 1;
        }
    }
    let compositions = [
        ("dodecagon_to_hexagon", "circle_double_cover"),
        ("circle_double_cover", "identity:circle"),
        ("identity:hexagon", "circle_double_cover"),
        ("s2_to_rp2", "constant:rp2"),
        ("torus_projection", "constant:circle"),
        ("wedge_tree_cover", "identity:wedge_two_circles"),
    ];
    for (a, b) in compositions {
        let (f, g) = (builtin_map(a).unwrap().map, builtin_map(b).unwrap().map);
        ensure(
            functoriality_check(&f, &g, &Rationals).map_err(|e| e.to_string())?,
            || format!("{b} o {a} over q"),
        )?;
        ensure(functoriality_check(&f, &g, &f2()).map_err(|e| e.to_string())?, || {
            format!("{b} o {a} over f2")
        })?;
    }
    Ok(format!(
        "{rings} rings pass ({RANDOM_PER_FIELD} random per field); {homs} induced maps multiplicative; {} compositions functorial",
        compositions.len()
    ))
}

fn check_interval(label: &str, iv: &BoundInterval, known_cites: &[String]) -> Result<(), String> {
    ensure(Bound::Finite(iv.lo) <= iv.hi && iv.lo >= 1, || format!("{label}: {iv}"))?;
    ensure(iv.trace_intersection() == iv.endpoints(), || {
        format!("{label}: trace does not reproduce {iv}")
    })?;
    for app in &iv.trace {
        ensure(RuleId::ALL.contains(&app.rule), || format!("{label}: unknown rule"))?;
        let cited = match app.provenance {
            Provenance::Rule => app.citation == app.rule.citation(),
            Provenance::Catalog => known_cites.contains(&app.citation),
        };
        ensure(cited, || format!("{label}: {} cites {:?}", app.rule, app.citation))?;
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    let fields = [Q, F2];
    let mut intervals = 0;
    for s in spaces() {
        let cites: Vec<String> = s.known.iter().map(|k| k.citation.clone()).collect();
        let a = s.analyze(&fields).map_err(|e| e.to_string())?;
        let raw = analyze_space(&s.complex, &fields, &s.assertions, &[]).map_err(|e| e.to_string())?;
        for k in &s.known {
            let iv = if k.invariant == tcbound_core::Invariant::Cat {
                &raw.cat
            } else {
                &raw.tc
            };
            ensure(iv.contains(k.value), || {
                format!("{}: {} = {} outside {iv}", s.name, k.invariant, k.value)
            })?;
        }
        for (iv, q) in [(&a.cat, "cat"), (&a.tc, "TC")] {
            check_interval(&format!("{} {q}", s.name), iv, &cites)?;
            intervals += 1;
        }
        ensure(a.order_independent && a.passes <= a.rule_count + 1, || {
            format!("{}: passes {}", s.name, a.passes)
        })?;
    }
    for m in map_entries() {
        let cites: Vec<String> = m
            .domain_known
            .iter()
            .chain(&m.codomain_known)
            .map(|k| k.citation.clone())
            .collect();
        let a = m.analyze(&fields).map_err(|e| e.to_string())?;
        for (q, iv) in &a.intervals {
            check_interval(&format!("{} {q}", m.name), iv, &cites)?;
            intervals += 1;
        }
        if let Some(v) = m.known_tc() {
            ensure(a.tc().contains(v), || {
                format!("{}: TC(f) = {v} outside {}", m.name, a.tc())
            })?;
        }
        ensure(a.order_independent && a.passes <= a.rule_count + 1, || {
            format!("{}: passes {}", m.name, a.passes)
        })?;
    }
    // Subgroups 4Z <= 2Z <= Z of pi_1(S^1) give the 4-, 2- and 1-sheeted covers.
    let tower = ["circle_quadruple_cover", "circle_double_cover", "identity:circle"];
    let his: Vec<Bound> = tower
        .iter()
        .map(|n| builtin_map(n).unwrap().analyze(&fields).map(|a| a.tc().hi))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure(his.windows(2).all(|w| w[0] <= w[1]), || {
        format!("tower upper bounds {his:?}")
    })?;
    let circle_tc = builtin_space("circle")
        .unwrap()
        .analyze(&fields)
        .map_err(|e| e.to_string())?
        .tc
        .hi;
    ensure(his[2] == circle_tc, || "top of the tower differs from TC(S1)".into())?;
    let shown: Vec<String> = his.iter().map(ToString::to_string).collect();
    Ok(format!(
        "{intervals} intervals valid and cited; tower upper bounds [{}] nondecreasing",
        shown.join(", ")
    ))
}

type Criterion = (u32, &'static str, u64, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (1, "covering S2 -> RP2 gives [3, 4]", 5, criterion_1),
        (2, "wedge of circles and its tree cover", 5, criterion_2),
        (3, "genus-2 surface cat and TC", 120, criterion_3),
        (4, "identity and constant maps", 30, criterion_4),
        (5, "double cover of circles", 2, criterion_5),
        (6, "oracle equivalence over f2", 60, criterion_6),
        (7, "Kunneth suite", 60, criterion_7),
        (8, "ring axioms and induced maps", 120, criterion_8),
        (9, "interval validity and covering tower", 10, criterion_9),
    ];
    let mut failed = 0;
    for (n, title, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit);
        let (status, detail) = match (&outcome, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("too slow; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {n} {status}: {title} [{:.2}s / {limit}s] {detail}",
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
