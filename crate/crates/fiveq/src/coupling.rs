//! Coupling-map files and the bundled backends.
//!
//! ```text
//! qubits 5
//! edge 1 0
//! edge 2 0
//! ```

use std::fmt::Write;
use std::path::Path;

use fiveq_core::transpile::CouplingMap;

use crate::circuit_text::{content, parse_index};
use crate::error::{read_file, Error, Result};

const IBMQX2: &str = include_str!("../data/ibmqx2.map");
const IBMQX4: &str = include_str!("../data/ibmqx4.map");

pub const BUILTIN_MAPS: [&str; 2] = ["ibmqx2", "ibmqx4"];

pub fn parse_coupling_map(text: &str) -> Result<CouplingMap> {
    let mut map: Option<CouplingMap> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = content(raw);
        if body.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        match (tokens.as_slice(), map.as_mut()) {
            (["qubits", n], None) => {
                map = Some(CouplingMap::new(parse_index(n, line, "qubit count")?, [])?);
            }
            (["qubits", _], Some(_)) => return Err(Error::parse(line, "duplicate `qubits` header")),
            (["edge", c, t], Some(m)) => {
                let (c, t) = (parse_index(c, line, "control")?, parse_index(t, line, "target")?);
                m.add_edge(c, t).map_err(|e| Error::parse(line, e.to_string()))?;
            }
            (_, None) => return Err(Error::parse(line, "expected `qubits <n>` header")),
            _ => return Err(Error::parse(line, "expected `edge <control> <target>`")),
        }
    }
    map.ok_or_else(|| Error::parse(text.lines().count().max(1), "missing `qubits <n>` header"))
}

pub fn serialize_coupling_map(map: &CouplingMap) -> String {
    let mut out = format!("qubits {}\n", map.num_qubits());
    for (c, t) in map.edges() {
        writeln!(out, "edge {c} {t}").unwrap();
    }
    out
}

/// One of the bundled 5-qubit maps.
pub fn builtin_map(name: &str) -> Result<CouplingMap> {
    let text = match name {
        "ibmqx2" => IBMQX2,
        "ibmqx4" => IBMQX4,
        _ => return Err(Error::UnknownBackend(name.to_string())),
    };
    Ok(parse_coupling_map(text).expect("bundled maps are valid"))
}

/// A backend name: `all-to-all` (no constraints), a bundled map name, or a
/// path to a map file. Returns the display name and the map, if any.
pub fn resolve_backend(backend: &str) -> Result<(String, Option<CouplingMap>)> {
    if backend == "all-to-all" {
        return Ok((backend.to_string(), None));
    }
    if BUILTIN_MAPS.contains(&backend) {
        return Ok((backend.to_string(), Some(builtin_map(backend)?)));
    }
    let path = Path::new(backend);
    if path.is_file() {
        let map = parse_coupling_map(&read_file(path)?).map_err(|e| e.in_file(path))?;
        return Ok((backend.to_string(), Some(map)));
    }
    Err(Error::UnknownBackend(backend.to_string()))
}
