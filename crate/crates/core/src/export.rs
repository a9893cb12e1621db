//! Writing complexes to disk: the `.scx` facet list plus a JSON vertex
//! registry mapping vertex ids to subspace bases.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{Map, Value};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::SubspaceFq;

/// `{"<id>": ["<row>", ...], ...}` with rows as digit strings.
pub fn vertex_registry_json(vertices: &[SubspaceFq]) -> Value {
    let map: Map<String, Value> = vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (i.to_string(), Value::from(v.digit_rows())))
        .collect();
    Value::Object(map)
}

/// Path of the registry written next to an `.scx` file.
pub fn registry_path(scx: &Path) -> PathBuf {
    scx.with_extension("vertices.json")
}

/// Writes `path` (the facets) and its registry; returns the registry path.
pub fn write_export(path: &Path, complex: &SimplicialComplex, vertices: &[SubspaceFq]) -> Result<PathBuf> {
    let io = |e: std::io::Error| Error::InvalidParameter(format!("cannot write {}: {e}", path.display()));
    fs::write(path, complex.to_scx()).map_err(io)?;
    let reg = registry_path(path);
    let mut text = serde_json::to_string_pretty(&vertex_registry_json(vertices)).expect("plain JSON");
    text.push('\n');
    fs::write(&reg, text).map_err(io)?;
    Ok(reg)
}
