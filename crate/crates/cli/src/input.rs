//! Loading surfaces and tori from files or builtin names.

use std::path::Path;

use serde_json::Value;
use systole_core::generators::{generate, Builtin, GeneratorParams};
use systole_core::lattice::{FlatTorus, TorusSpec};
use systole_core::{Surface, SurfaceSpec};

use crate::CliError;

pub enum Object {
    Surface(Surface),
    Torus(FlatTorus),
}

/// Parsed but not yet validated input.
pub enum Raw {
    Surface(SurfaceSpec),
    Torus(TorusSpec),
}

/// Reads `input` as a JSON file, or as a builtin name when no such file exists.
pub fn load_raw(input: &str, k: usize) -> Result<Raw, CliError> {
    let path = Path::new(input);
    if !path.exists() {
        if let Ok(b) = input.parse::<Builtin>() {
            let s = generate(b, &GeneratorParams { k, ..Default::default() })
                .map_err(|e| CliError::Input(e.to_string()))?;
            return Ok(Raw::Surface(s.to_spec()));
        }
        return Err(CliError::Input(format!("cannot read {input}: no such file or builtin")));
    }
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {input}: {e}")))?;
    parse(&text)
}

pub fn parse(text: &str) -> Result<Raw, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed JSON: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| CliError::Input("expected a JSON object".into()))?;
    if obj.contains_key("triangles") {
        serde_json::from_value(value)
            .map(Raw::Surface)
            .map_err(|e| CliError::Input(format!("bad surface file: {e}")))
    } else if obj.contains_key("basis") || obj.contains_key("tau") {
        serde_json::from_value(value)
            .map(Raw::Torus)
            .map_err(|e| CliError::Input(format!("bad torus file: {e}")))
    } else {
        Err(CliError::Input(
            "expected a surface {\"triangles\", \"lengths\"} or a torus {\"basis\"} / {\"tau\"}".into(),
        ))
    }
}

/// Builds the object; surface files are subdivided `k` times.
pub fn build(raw: Raw, k: usize, from_builtin: bool) -> Result<Object, CliError> {
    match raw {
        Raw::Surface(spec) => {
            let s = Surface::from_spec(spec).map_err(|e| CliError::Validation(e.to_string()))?;
            let s = if from_builtin || k == 0 {
                s
            } else {
                s.subdivide(k).map_err(|e| CliError::Resource(e.to_string()))?
            };
            Ok(Object::Surface(s))
        }
        Raw::Torus(spec) => spec
            .build()
            .map(Object::Torus)
            .map_err(|e| CliError::Validation(e.to_string())),
    }
}

pub fn load(input: &str, k: usize) -> Result<Object, CliError> {
    let from_builtin = !Path::new(input).exists();
    build(load_raw(input, k)?, k, from_builtin)
}
