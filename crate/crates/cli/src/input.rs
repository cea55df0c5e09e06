//! Loading complexes and maps from builtin names or JSON files.

use std::fs;
use std::path::{Path, PathBuf};

use tcbound_core::catalog::{builtin_map, builtin_space, SPACE_NAMES};
use tcbound_core::{
    ComplexFile, KnownValue, MapAssertions, MapFile, SimplicialComplex, SimplicialMap, SpaceAssertions,
};

use crate::CliError;

#[derive(Clone, Debug, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Builtin(String),
    File(String),
}

pub struct LoadedSpace {
    pub source: Source,
    pub complex: SimplicialComplex,
    pub assertions: SpaceAssertions,
    pub known: Vec<KnownValue>,
}

pub struct LoadedMap {
    pub source: Source,
    pub map: SimplicialMap,
    pub assertions: MapAssertions,
    pub domain_known: Vec<KnownValue>,
    pub codomain_known: Vec<KnownValue>,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn parse_complex_file(text: &str, origin: &str) -> Result<SimplicialComplex, CliError> {
    let file: ComplexFile = serde_json::from_str(text).map_err(|e| CliError::Parse(format!("{origin}: {e}")))?;
    file.build().map_err(|e| CliError::Validation(format!("{origin}: {e}")))
}

pub fn load_space(builtin: Option<&str>, input: Option<&Path>, catalog_values: bool) -> Result<LoadedSpace, CliError> {
    match (builtin, input) {
        (Some(name), None) => {
            let e = builtin_space(name).map_err(|e| CliError::Parse(e.to_string()))?;
            Ok(LoadedSpace {
                source: Source::Builtin(name.to_string()),
                complex: e.complex,
                assertions: if catalog_values {
                    e.assertions
                } else {
                    SpaceAssertions::default()
                },
                known: if catalog_values { e.known } else { Vec::new() },
            })
        }
        (None, Some(path)) => Ok(LoadedSpace {
            source: Source::File(path.display().to_string()),
            complex: parse_complex_file(&read(path)?, &path.display().to_string())?,
            assertions: SpaceAssertions::default(),
            known: Vec::new(),
        }),
        _ => Err(CliError::Parse("give exactly one of --builtin or --input".into())),
    }
}

/// A map file's `domain` / `codomain`: a builtin space name, else a path
/// relative to the map file. `catalog_values` applies to builtin names only.
fn resolve_space(spec: &str, base: &Path, catalog_values: bool) -> Result<LoadedSpace, CliError> {
    if SPACE_NAMES.contains(&spec) {
        return load_space(Some(spec), None, catalog_values);
    }
    let path: PathBuf = base.join(spec);
    load_space(None, Some(&path), catalog_values)
}

pub fn load_map(builtin: Option<&str>, input: Option<&Path>, catalog_values: bool) -> Result<LoadedMap, CliError> {
    match (builtin, input) {
        (Some(name), None) => {
            let e = builtin_map(name).map_err(|e| CliError::Parse(e.to_string()))?;
            let keep = |k: Vec<KnownValue>| if catalog_values { k } else { Vec::new() };
            Ok(LoadedMap {
                source: Source::Builtin(name.to_string()),
                map: e.map,
                assertions: if catalog_values {
                    e.assertions
                } else {
                    MapAssertions::default()
                },
                domain_known: keep(e.domain_known),
                codomain_known: keep(e.codomain_known),
            })
        }
        (None, Some(path)) => {
            let origin = path.display().to_string();
            let file: MapFile =
                serde_json::from_str(&read(path)?).map_err(|e| CliError::Parse(format!("{origin}: {e}")))?;
            let base = path.parent().unwrap_or(Path::new("."));
            let x = resolve_space(&file.domain, base, catalog_values)?;
            let y = resolve_space(&file.codomain, base, catalog_values)?;
            let map = SimplicialMap::new(&file.vertex_map, x.complex, y.complex)
                .map_err(|e| CliError::Validation(format!("{origin}: {e}")))?;
            let mut assertions =
                MapAssertions::from_tokens(&file.assertions).map_err(|e| CliError::Parse(e.to_string()))?;
            assertions.domain.merge(&x.assertions);
            assertions.codomain.merge(&y.assertions);
            Ok(LoadedMap {
                source: Source::File(origin),
                map,
                assertions: assertions.normalized(),
                domain_known: x.known,
                codomain_known: y.known,
            })
        }
        _ => Err(CliError::Parse("give exactly one of --builtin or --input".into())),
    }
}
