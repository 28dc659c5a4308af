//! JSON group specifications.
//!
//! A spec argument is one of
//! - `fixture:<name>` for a built-in group,
//! - an inline JSON object (any argument starting with `{`),
//! - a path to a JSON file.
//!
//! Full form:
//! `{"m": 3, "rooted": ["(0 1 2)"], "directed": [{"path": 0, "generators": ["b"],
//! "preperiod": [], "period": [{"b": ["(0 1 2)", "(0 2 1)"]}]}]}`.
//! Multi-GGS shorthand: `{"m": 3, "E": [[1], [2]]}`, one row per letter
//! `1, …, m − 1` and one column per directed generator.

use std::collections::BTreeMap;
use std::path::Path;

use madic_core::spinal::{self, DirectedDatum, GenMap, MultiGgsData};
use madic_core::{Perm, PolyspinalData};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FullSpec {
    m: usize,
    rooted: Vec<String>,
    directed: Vec<DirectedSpec>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DirectedSpec {
    path: usize,
    generators: Vec<String>,
    #[serde(default)]
    preperiod: Vec<BTreeMap<String, Vec<String>>>,
    period: Vec<BTreeMap<String, Vec<String>>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ShorthandSpec {
    m: u32,
    #[serde(rename = "E")]
    e: Vec<Vec<i64>>,
}

/// Parsed group data, remembering whether it came in multi-GGS shorthand.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    pub data: PolyspinalData,
    pub multi_ggs: Option<MultiGgsData>,
}

impl GroupSpec {
    /// Multi-GGS defining matrix, from the shorthand or recognised in full
    /// data.
    pub fn as_multi_ggs(&self) -> Result<MultiGgsData, CliError> {
        match &self.multi_ggs {
            Some(d) => Ok(d.clone()),
            None => Ok(spinal::as_multi_ggs(&self.data)?),
        }
    }
}

pub fn fixture(name: &str) -> Result<PolyspinalData, CliError> {
    match name {
        "grigorchuk" => Ok(spinal::grigorchuk()),
        "gupta_sidki" => Ok(spinal::gupta_sidki()),
        "pervova" => Ok(spinal::pervova()),
        _ => Err(CliError::Spec(format!(
            "unknown fixture {name:?} (known: grigorchuk, gupta_sidki, pervova)"
        ))),
    }
}

/// Resolves a spec argument.
pub fn load(arg: &str) -> Result<GroupSpec, CliError> {
    if let Some(name) = arg.strip_prefix("fixture:") {
        return Ok(GroupSpec {
            data: fixture(name)?,
            multi_ggs: None,
        });
    }
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(Path::new(arg)).map_err(|e| CliError::Io(format!("{arg}: {e}")))?
    };
    parse(&text)
}

pub fn parse(text: &str) -> Result<GroupSpec, CliError> {
    let value: Value = serde_json::from_str(text)?;
    let Value::Object(map) = &value else {
        return Err(CliError::Spec("group spec must be a JSON object".into()));
    };
    if map.contains_key("E") {
        let s: ShorthandSpec = serde_json::from_value(value)?;
        let d = MultiGgsData::from_rows(s.m, &s.e)?;
        Ok(GroupSpec {
            data: d.to_polyspinal(),
            multi_ggs: Some(d),
        })
    } else {
        let s: FullSpec = serde_json::from_value(value)?;
        Ok(GroupSpec {
            data: full_to_data(s)?,
            multi_ggs: None,
        })
    }
}

fn parse_perm(s: &str, m: usize) -> Result<Perm, CliError> {
    Ok(Perm::parse(s, m)?)
}

fn gen_map(m: usize, names: &[String], raw: &BTreeMap<String, Vec<String>>) -> Result<GenMap, CliError> {
    if let Some(extra) = raw.keys().find(|k| !names.contains(k)) {
        return Err(CliError::Spec(format!("map entry for unknown generator {extra:?}")));
    }
    let tuples = names
        .iter()
        .map(|n| {
            let entry = raw
                .get(n)
                .ok_or_else(|| CliError::Spec(format!("map has no entry for generator {n:?}")))?;
            entry.iter().map(|p| parse_perm(p, m)).collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GenMap(tuples))
}

fn full_to_data(s: FullSpec) -> Result<PolyspinalData, CliError> {
    let m = s.m;
    let rooted = s
        .rooted
        .iter()
        .map(|p| parse_perm(p, m))
        .collect::<Result<Vec<_>, _>>()?;
    let directed = s
        .directed
        .iter()
        .map(|d| {
            let maps = |list: &[BTreeMap<String, Vec<String>>]| {
                list.iter()
                    .map(|g| gen_map(m, &d.generators, g))
                    .collect::<Result<Vec<_>, _>>()
            };
            Ok(DirectedDatum {
                path: d.path,
                generators: d.generators.clone(),
                preperiod: maps(&d.preperiod)?,
                period: maps(&d.period)?,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let data = PolyspinalData { m, rooted, directed };
    data.check_syntax()?;
    Ok(data)
}

/// Full-form JSON for `data`, with permutations in cycle notation.
pub fn to_json(data: &PolyspinalData) -> Value {
    let directed = data
        .directed
        .iter()
        .map(|d| {
            let maps = |list: &[GenMap]| -> Vec<BTreeMap<String, Vec<String>>> {
                list.iter()
                    .map(|g| {
                        d.generators
                            .iter()
                            .zip(&g.0)
                            .map(|(n, t)| (n.clone(), t.iter().map(Perm::to_cycle_string).collect()))
                            .collect()
                    })
                    .collect()
            };
            DirectedSpec {
                path: d.path,
                generators: d.generators.clone(),
                preperiod: maps(&d.preperiod),
                period: maps(&d.period),
            }
        })
        .collect();
    let spec = FullSpec {
        m: data.m,
        rooted: data.rooted.iter().map(Perm::to_cycle_string).collect(),
        directed,
    };
    serde_json::to_value(spec).expect("spec structs serialise")
}

/// Rows of a defining matrix as plain integers.
pub fn matrix_rows(d: &MultiGgsData) -> Vec<Vec<u32>> {
    d.matrix().row_vecs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_round_trip() {
        for name in ["grigorchuk", "gupta_sidki", "pervova"] {
            let data = fixture(name).unwrap();
            let text = to_json(&data).to_string();
            assert_eq!(parse(&text).unwrap().data, data);
        }
    }

    #[test]
    fn shorthand_matches_builder() {
        let spec = parse(r#"{"m": 3, "E": [[1], [2]]}"#).unwrap();
        assert_eq!(spec.data, spinal::gupta_sidki());
        assert_eq!(matrix_rows(&spec.as_multi_ggs().unwrap()), [[1], [2]]);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(parse(r#"{"m": 3, "E": [[1], [2]], "extra": 1}"#).is_err());
        let mut v = to_json(&spinal::pervova());
        v["directed"][0]["note"] = Value::from("x");
        assert!(parse(&v.to_string()).is_err());
        let mut v = to_json(&spinal::pervova());
        v["directed"][0]["period"][0]["z"] = serde_json::json!(["()", "()"]);
        assert!(parse(&v.to_string()).is_err());
    }

    #[test]
    fn invalid_specs_are_errors() {
        assert!(load("fixture:nope").is_err());
        assert!(parse("[1, 2]").is_err());
        assert!(parse(r#"{"m": 3, "E": [[0], [0]]}"#).is_err());
        assert!(parse(r#"{"m": 3, "rooted": ["(0 5)"], "directed": []}"#).is_err());
    }
}
