//! `tcbound`: cohomological bounds on LS category and topological complexity
//! of finite simplicial complexes and simplicial maps.

mod input;
mod markdown;
mod report;

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tcbound_core::catalog::{self, SPACE_NAMES};
use tcbound_core::cohomology::CohomologyError;
use tcbound_core::{
    analyze_map, analyze_space, builtin_map, builtin_space, Assertion, BoundError, ComplexFile, FieldSpec, MapContext,
    MapFile,
};
use thiserror::Error;

use crate::report::{Analysis, CatalogNote, Report, SCHEMA};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Validation(String),
    #[error(transparent)]
    Bound(BoundError),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Io(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Bound(e) => match e {
                BoundError::Inconsistent { .. } => 4,
                BoundError::NotSurjective => 5,
                BoundError::NoFields => 2,
                BoundError::Cohomology(CohomologyError::FieldMismatch(..) | CohomologyError::NotMultiplicative(..)) => {
                    1
                }
                _ => 3,
            },
        }
    }
}

impl From<BoundError> for CliError {
    fn from(e: BoundError) -> Self {
        CliError::Bound(e)
    }
}

#[derive(Parser)]
#[command(
    name = "tcbound",
    version,
    about = "Bounds on LS category and topological complexity from cohomology"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bound cat(X) and TC(X) for a complex.
    Space(Run),
    /// Bound sec(f) and TC(f) for a surjective simplicial map.
    Map(Run),
    /// Inspect the builtin spaces and maps.
    #[command(subcommand)]
    Catalog(CatalogCmd),
}

#[derive(Args)]
struct Run {
    /// Builtin catalog name, e.g. `torus` or `identity:torus`.
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    builtin: Option<String>,
    /// JSON complex or map file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Coefficient field, `q` or `f<p>`; repeatable. Defaults to q and f2.
    #[arg(long = "field", value_name = "FIELD")]
    fields: Vec<String>,
    /// Extra assertion token; repeatable.
    #[arg(long = "assert", value_name = "TOKEN")]
    assertions: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Markdown)]
    format: Format,
    /// Ignore recorded assertions and values of builtin entries. Assertions
    /// written in an input file are kept.
    #[arg(long)]
    bare: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Markdown,
    Json,
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// One line per space and fixed map.
    List,
    /// Facets of a space or the vertex table of a map.
    Show { name: String },
    /// Write a builtin entry in the input file format.
    Export {
        name: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn parse_fields(raw: &[String]) -> Result<Vec<FieldSpec>, CliError> {
    if raw.is_empty() {
        return Ok(vec![FieldSpec::Rationals, FieldSpec::Prime(2)]);
    }
    let mut out: Vec<FieldSpec> = Vec::new();
    for r in raw {
        let f: FieldSpec = r
            .parse()
            .map_err(|e: tcbound_core::LinalgError| CliError::Parse(e.to_string()))?;
        if !out.contains(&f) {
            out.push(f);
        }
    }
    Ok(out)
}

fn parse_assertions(raw: &[String]) -> Result<Vec<Assertion>, CliError> {
    raw.iter()
        .map(|t| {
            t.parse()
                .map_err(|e: tcbound_core::AssertionError| CliError::Parse(e.to_string()))
        })
        .collect()
}

fn is_builtin_space(name: &str) -> bool {
    SPACE_NAMES.contains(&name)
}

fn run_space(run: &Run) -> Result<Report, CliError> {
    let fields = parse_fields(&run.fields)?;
    let extra = parse_assertions(&run.assertions)?;
    let loaded = input::load_space(run.builtin.as_deref(), run.input.as_deref(), !run.bare)?;
    let mut assertions = loaded.assertions.clone();
    for a in &extra {
        assertions.apply(a).map_err(|e| CliError::Parse(e.to_string()))?;
    }
    let assertions = assertions.normalized();
    let analysis = analyze_space(&loaded.complex, &fields, &assertions, &loaded.known)?;
    let catalog = match &run.builtin {
        Some(name) => {
            let e = builtin_space(name).map_err(|e| CliError::Parse(e.to_string()))?;
            Some(CatalogNote {
                name: e.name,
                description: e.description,
                known_tc_f: None,
                known_tc_f_contained: None,
            })
        }
        None => None,
    };
    Ok(Report {
        schema: SCHEMA,
        kind: "space",
        source: loaded.source,
        catalog,
        analysis: Analysis::Space(Box::new(report::space_section(&loaded.complex, &fields, &analysis))),
    })
}

fn run_map(run: &Run) -> Result<Report, CliError> {
    let fields = parse_fields(&run.fields)?;
    let extra = parse_assertions(&run.assertions)?;
    let loaded = input::load_map(run.builtin.as_deref(), run.input.as_deref(), !run.bare)?;
    let mut assertions = loaded.assertions.clone();
    for a in &extra {
        assertions.apply(a).map_err(|e| CliError::Parse(e.to_string()))?;
    }
    let ctx = MapContext {
        assertions: assertions.normalized(),
        domain_known: loaded.domain_known.clone(),
        codomain_known: loaded.codomain_known.clone(),
    };
    let analysis = analyze_map(&loaded.map, &fields, &ctx)?;
    let catalog = match &run.builtin {
        Some(name) => {
            let e = builtin_map(name).map_err(|e| CliError::Parse(e.to_string()))?;
            let known = e.known.first().cloned();
            let contained = known.as_ref().map(|k| analysis.tc().contains(k.value));
            Some(CatalogNote {
                name: e.name,
                description: e.description,
                known_tc_f: known,
                known_tc_f_contained: contained,
            })
        }
        None => None,
    };
    Ok(Report {
        schema: SCHEMA,
        kind: "map",
        source: loaded.source,
        catalog,
        analysis: Analysis::Map(Box::new(report::map_section(&loaded.map, &fields, &analysis))),
    })
}

fn render(report: &Report, format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).map_err(|e| CliError::Io(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Markdown => markdown::render(report),
    })
}

fn show(name: &str) -> Result<String, CliError> {
    use std::fmt::Write as _;
    let mut out = String::new();
    if is_builtin_space(name) {
        let e = builtin_space(name).map_err(|e| CliError::Parse(e.to_string()))?;
        let _ = writeln!(out, "{}: {}", e.name, e.description);
        let _ = writeln!(out, "{}", e.summary_line());
        let _ = writeln!(out, "vertices: {}", e.complex.vertices().join(" "));
        let _ = writeln!(out, "euler characteristic: {}", e.euler);
        let _ = writeln!(out, "facets ({}):", e.complex.facets().len());
        for f in e.complex.facet_labels() {
            let _ = writeln!(out, "  {}", f.join(" "));
        }
    } else {
        let e = builtin_map(name).map_err(|e| CliError::Parse(e.to_string()))?;
        let _ = writeln!(out, "{}: {}", e.name, e.description);
        let _ = writeln!(out, "{}", e.summary_line());
        let _ = writeln!(out, "vertex map:");
        for line in e.vertex_table().lines() {
            let _ = writeln!(out, "  {line}");
        }
    }
    Ok(out)
}

fn export(name: &str) -> Result<String, CliError> {
    let json = if is_builtin_space(name) {
        let e = builtin_space(name).map_err(|e| CliError::Parse(e.to_string()))?;
        serde_json::to_string_pretty(&ComplexFile::from(&e.complex))
    } else {
        let e = builtin_map(name).map_err(|e| CliError::Parse(e.to_string()))?;
        serde_json::to_string_pretty(&MapFile {
            domain: e.domain_name.clone(),
            codomain: e.codomain_name.clone(),
            vertex_map: e.map.labelled_vertex_map(),
            assertions: e.assertions.tokens(),
        })
    };
    let mut s = json.map_err(|e| CliError::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn dispatch(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Space(run) => render(&run_space(&run)?, run.format),
        Command::Map(run) => render(&run_map(&run)?, run.format),
        Command::Catalog(CatalogCmd::List) => Ok(catalog::listing()),
        Command::Catalog(CatalogCmd::Show { name }) => show(&name),
        Command::Catalog(CatalogCmd::Export { name, output }) => {
            let s = export(&name)?;
            match output {
                Some(path) => {
                    fs::write(&path, s).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                    Ok(String::new())
                }
                None => Ok(s),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match dispatch(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("tcbound: error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
