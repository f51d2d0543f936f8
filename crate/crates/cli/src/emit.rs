//! Record serialization shared by every subcommand.
//!
//! Floats are rounded to the requested number of significant digits and
//! printed in shortest round-trip form. Fields that can be infinite are
//! serialized through `fsq_core::sentinel` and arrive here as the string
//! `inf`. Field order follows the declaration order of each record type.

use std::path::PathBuf;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputSpec {
    pub format: Format,
    pub destination: Option<PathBuf>,
    pub precision: usize,
}

impl Default for OutputSpec {
    fn default() -> Self {
        OutputSpec {
            format: Format::Json,
            destination: None,
            precision: 12,
        }
    }
}

/// Whether a command produces a single record or a list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    One,
    Many,
}

pub fn round_significant(v: f64, digits: usize) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{:.*e}", digits.saturating_sub(1), v)
        .parse()
        .unwrap_or(v)
}

fn float_value(v: f64, digits: usize) -> Value {
    if v.is_finite() {
        Number::from_f64(round_significant(v, digits)).map_or(Value::Null, Value::Number)
    } else if v.is_nan() {
        Value::String("nan".into())
    } else if v > 0.0 {
        Value::String("inf".into())
    } else {
        Value::String("-inf".into())
    }
}

fn round_tree(v: Value, digits: usize) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => float_value(n.as_f64().unwrap_or(f64::NAN), digits),
        Value::Array(a) => Value::Array(a.into_iter().map(|x| round_tree(x, digits)).collect()),
        Value::Object(m) => Value::Object(
            m.into_iter()
                .map(|(k, x)| (k, round_tree(x, digits)))
                .collect(),
        ),
        other => other,
    }
}

fn to_tree<T: Serialize>(record: &T, digits: usize) -> serde_json::Result<Value> {
    Ok(round_tree(serde_json::to_value(record)?, digits))
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, Value)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&key(&i.to_string()), x, out);
            }
        }
        other => out.push((prefix.to_string(), other.clone())),
    }
}

fn csv_cell(v: &Value) -> String {
    let text = match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text
    }
}

fn single_map(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("value".into(), other);
            m
        }
    }
}

/// Serializes `records` per `spec`. The CSV header comes from the type
/// itself, so an empty list still yields a header row.
pub fn emit<T: Serialize + Default>(
    records: &[T],
    shape: Shape,
    spec: &OutputSpec,
) -> serde_json::Result<String> {
    let digits = spec.precision;
    let trees = records
        .iter()
        .map(|r| to_tree(r, digits))
        .collect::<serde_json::Result<Vec<_>>>()?;
    match spec.format {
        Format::Json => {
            let doc = match shape {
                Shape::One if trees.len() == 1 => trees.into_iter().next().unwrap_or(Value::Null),
                _ => Value::Array(trees),
            };
            let mut text = serde_json::to_string_pretty(&doc)?;
            text.push('\n');
            Ok(text)
        }
        Format::Csv => {
            let mut header = Vec::new();
            flatten(
                "",
                &Value::Object(single_map(to_tree(&T::default(), digits)?)),
                &mut header,
            );
            let names: Vec<String> = header.into_iter().map(|(k, _)| k).collect();
            let mut text = names
                .iter()
                .map(|n| csv_cell(&Value::String(n.clone())))
                .collect::<Vec<_>>()
                .join(",");
            text.push('\n');
            for tree in trees {
                let mut cells = Vec::new();
                flatten("", &Value::Object(single_map(tree)), &mut cells);
                let row: Vec<String> = names
                    .iter()
                    .map(|n| {
                        cells
                            .iter()
                            .find(|(k, _)| k == n)
                            .map_or(String::new(), |(_, v)| csv_cell(v))
                    })
                    .collect();
                text.push_str(&row.join(","));
                text.push('\n');
            }
            Ok(text)
        }
    }
}
