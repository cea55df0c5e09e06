//! Human-readable rendering of a [`Report`].

use std::fmt::Write as _;

use crate::input::Source;
use crate::report::{Analysis, FactsOut, IntervalOut, MapSection, Report, SpaceSection};

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

fn source(s: &Source) -> String {
    match s {
        Source::Builtin(n) => format!("builtin `{n}`"),
        Source::File(p) => format!("file `{p}`"),
    }
}

fn interval(i: &IntervalOut) -> String {
    format!("[{}, {}]", i.lo, i.hi)
}

fn facts(out: &mut String, title: &str, f: &FactsOut) {
    let _ = writeln!(out, "## {title}\n");
    let _ = writeln!(out, "- vertices: {}, dimension: {}", f.vertices, f.dim);
    let _ = writeln!(
        out,
        "- f-vector: ({}), Euler characteristic: {}",
        join(&f.f_vector),
        f.euler
    );
    let _ = writeln!(out, "- Betti numbers: ({})", join(&f.homology.betti));
    let torsion: Vec<String> = f
        .homology
        .torsion
        .iter()
        .enumerate()
        .filter(|(_, t)| !t.is_empty())
        .map(|(k, t)| {
            format!(
                "H_{k}: {}",
                t.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join("+")
            )
        })
        .collect();
    let _ = writeln!(
        out,
        "- torsion: {}",
        if torsion.is_empty() {
            "none".into()
        } else {
            torsion.join("; ")
        }
    );
    let conn = serde_json::to_string(&f.connectivity).unwrap_or_default();
    let _ = writeln!(out, "- connectivity used: {}", conn.trim_matches('"'));
    let _ = writeln!(
        out,
        "- assertions: {}",
        if f.assertions.is_empty() {
            "none".into()
        } else {
            join(&f.assertions)
        }
    );
    for k in &f.known {
        let _ = writeln!(out, "- recorded {} = {} ({})", k.invariant, k.value, k.citation);
    }
    let _ = writeln!(out, "\n| field | dims | cup-length | zcl |\n|---|---|---|---|");
    for ff in &f.fields {
        let _ = writeln!(
            out,
            "| {} | ({}) | {} | {} |",
            ff.field,
            join(&ff.dims),
            ff.cup_length.value,
            ff.zcl.value
        );
    }
    for ff in &f.fields {
        if let Some(r) = &ff.ring {
            if r.products.is_empty() {
                continue;
            }
            let _ = writeln!(out, "\nnonzero products over {}:\n", ff.field);
            for p in &r.products {
                let terms: Vec<String> = p.terms.iter().map(|(l, c)| format!("{c}*{l}")).collect();
                let _ = writeln!(out, "- {} * {} = {}", p.left, p.right, terms.join(" + "));
            }
        }
    }
    out.push('\n');
}

fn bounds_table(out: &mut String, rows: &[(String, &IntervalOut)]) {
    let _ = writeln!(out, "## Bounds\n\n| quantity | interval |\n|---|---|");
    for (name, i) in rows {
        let _ = writeln!(out, "| {name} | {} |", interval(i));
    }
    out.push('\n');
    for (name, i) in rows {
        let _ = writeln!(out, "### {name} = {}\n", interval(i));
        for t in &i.trace {
            let c = match (t.lower, t.upper) {
                (Some(l), Some(u)) if l == u => format!("= {l}"),
                (Some(l), Some(u)) => format!("in [{l}, {u}]"),
                (Some(l), None) => format!(">= {l}"),
                (None, Some(u)) => format!("<= {u}"),
                (None, None) => String::new(),
            };
            let inputs: Vec<String> = t.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = write!(out, "- `{}` {c}: {}", t.rule, t.citation);
            if !inputs.is_empty() {
                let _ = write!(out, " [{}]", inputs.join(", "));
            }
            if let Some(n) = &t.note {
                let _ = write!(out, " ({n})");
            }
            out.push('\n');
        }
        out.push('\n');
    }
}

fn space(out: &mut String, s: &SpaceSection) {
    let _ = writeln!(out, "fields: {}\n", join(&s.fields));
    facts(out, "Space", &s.space);
    bounds_table(out, &[("cat(X)".into(), &s.cat), ("TC(X)".into(), &s.tc)]);
    let _ = writeln!(
        out,
        "engine: {} rules, {} passes, order independent: {}",
        s.rule_count, s.passes, s.order_independent
    );
}

fn map(out: &mut String, m: &MapSection) {
    let _ = writeln!(out, "fields: {}\n", join(&m.fields));
    let _ = writeln!(
        out,
        "assertions: {}\n",
        if m.assertions.is_empty() {
            "none".into()
        } else {
            join(&m.assertions)
        }
    );
    let _ = writeln!(out, "## Vertex map\n\n| vertex | image |\n|---|---|");
    for (a, b) in &m.vertex_map {
        let _ = writeln!(out, "| {a} | {b} |");
    }
    out.push('\n');
    facts(out, "Domain", &m.domain);
    facts(out, "Codomain", &m.codomain);
    let _ = writeln!(
        out,
        "## Induced map\n\n| field | nil Ker(1 x f)* | kernel dim | ranks of f* | f* injective |"
    );
    let _ = writeln!(out, "|---|---|---|---|---|");
    for f in &m.map_fields {
        let _ = writeln!(
            out,
            "| {} | {} | {} | ({}) | {} |",
            f.field,
            f.nil_ker_one_f.value,
            f.kernel_dim,
            join(&f.fstar_ranks),
            f.fstar_injective
        );
    }
    out.push('\n');
    let rows: Vec<(String, &IntervalOut)> = m.intervals.iter().map(|(k, v)| (k.clone(), v)).collect();
    bounds_table(out, &rows);
    let _ = writeln!(
        out,
        "engine: {} rules, {} passes, order independent: {}",
        m.rule_count, m.passes, m.order_independent
    );
}

pub fn render(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# tcbound {} report\n", r.kind);
    let _ = writeln!(out, "source: {}\n", source(&r.source));
    if let Some(c) = &r.catalog {
        let _ = writeln!(out, "catalog entry `{}`: {}\n", c.name, c.description);
        if let Some(k) = &c.known_tc_f {
            let ok = if c.known_tc_f_contained == Some(true) {
                "contained in"
            } else {
                "OUTSIDE"
            };
            let _ = writeln!(
                out,
                "recorded TC(f) = {} ({}), {ok} the computed interval\n",
                k.value, k.citation
            );
        }
    }
    match &r.analysis {
        Analysis::Space(s) => space(&mut out, s),
        Analysis::Map(m) => map(&mut out, m),
    }
    out
}
