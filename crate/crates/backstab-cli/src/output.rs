//! Record output: one JSON object per line, or a plain `key=value` table.

use std::io::{self, Write};

use num_bigint::BigInt;
use serde_json::{Map, Value};

use crate::config::{Format, RunConfig};

pub const SCHEMA: &str = "backstab/1";

pub struct Emitter<W: Write> {
    out: W,
    format: Format,
}

impl<W: Write> Emitter<W> {
    /// Writes the header line carrying the schema, seed, and caps.
    pub fn new(mut out: W, command: &str, cfg: &RunConfig) -> io::Result<Self> {
        match cfg.format {
            Format::Ndjson => {
                let header = serde_json::json!({
                    "schema": SCHEMA,
                    "command": command,
                    "seed": cfg.seed,
                    "max_rw": cfg.limits.max_reduced_words,
                    "max_terms": cfg.limits.max_terms,
                });
                writeln!(out, "{header}")?;
            }
            Format::Table => writeln!(
                out,
                "# schema={SCHEMA} command={command} seed={} max-rw={} max-terms={}",
                cfg.seed, cfg.limits.max_reduced_words, cfg.limits.max_terms
            )?,
        }
        Ok(Emitter {
            out,
            format: cfg.format,
        })
    }

    pub fn record(&mut self, record: Value) -> io::Result<()> {
        match self.format {
            Format::Ndjson => writeln!(self.out, "{record}"),
            Format::Table => {
                let Value::Object(map) = record else {
                    return writeln!(self.out, "{record}");
                };
                let cells: Vec<String> = map
                    .into_iter()
                    .map(|(k, v)| match v {
                        Value::String(s) => format!("{k}={s}"),
                        other => format!("{k}={other}"),
                    })
                    .collect();
                writeln!(self.out, "{}", cells.join("  "))
            }
        }
    }

    pub fn flush(&mut self) -> io::Result<()> {
        self.out.flush()
    }
}

/// A JSON integer when it fits, its decimal string otherwise.
pub fn big(n: &BigInt) -> Value {
    i64::try_from(n).map_or_else(|_| Value::String(n.to_string()), Value::from)
}

/// `{key: coefficient}` in the iteration order given.
pub fn coefficient_map<'a, K: ToString + 'a>(
    terms: impl IntoIterator<Item = (K, &'a BigInt)>,
) -> Value {
    let map: Map<String, Value> = terms
        .into_iter()
        .map(|(k, c)| (k.to_string(), big(c)))
        .collect();
    Value::Object(map)
}

pub fn strings<T: ToString>(items: impl IntoIterator<Item = T>) -> Value {
    Value::Array(
        items
            .into_iter()
            .map(|x| Value::String(x.to_string()))
            .collect(),
    )
}
