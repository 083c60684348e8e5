//! File formats.
//!
//! Input complexes: `{"m": 4, "facets": [[1,2],[2,3]], "labels": [...], "meta": {...}}`
//! with 1-based vertices; `labels` and `meta` are optional and never affect
//! computation.
//!
//! Result documents: `{"m", "h", "hh", "hh_total", "hh_rows", "euler_hh", "field"}`
//! where `h` and `hh` map bidegree keys `"(-k,2l)"` to ranks and `hh_rows`
//! maps row `p = l - k - 1` (as a string) to the row total. Keys are written
//! in increasing `l`, then increasing `k`; rows in increasing `p`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::complex::SimplicialComplex;
use crate::double::{Analysis, BigradedRankTable};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub m: usize,
    pub facets: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Value>,
}

impl ComplexFile {
    pub fn parse(text: &str) -> Result<Self> {
        let file: ComplexFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if let Some(labels) = &file.labels {
            if labels.len() != file.m {
                return Err(Error::Parse(format!(
                    "{} labels given for {} vertices",
                    labels.len(),
                    file.m
                )));
            }
        }
        Ok(file)
    }

    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        SimplicialComplex::from_facets(self.m, &self.facets)
    }

    pub fn from_complex(complex: &SimplicialComplex) -> Self {
        ComplexFile {
            m: complex.m(),
            facets: complex.facet_lists(),
            labels: None,
            meta: None,
        }
    }

    /// Display label of a 1-based vertex.
    pub fn label(&self, vertex: usize) -> String {
        self.labels
            .as_ref()
            .and_then(|l| l.get(vertex - 1).cloned())
            .unwrap_or_else(|| vertex.to_string())
    }

    /// One top-level key per line, each facet on a single line.
    pub fn to_json(&self) -> String {
        let mut lines = vec![format!("  \"m\": {}", self.m)];
        let facets: Vec<String> = self.facets.iter().map(compact).collect();
        lines.push(format!("  \"facets\": [{}]", facets.join(", ")));
        if let Some(labels) = &self.labels {
            lines.push(format!("  \"labels\": {}", compact(labels)));
        }
        if let Some(meta) = &self.meta {
            lines.push(format!("  \"meta\": {}", compact(meta)));
        }
        format!("{{\n{}\n}}\n", lines.join(",\n"))
    }
}

fn compact<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable")
}

pub fn table_object(table: &BigradedRankTable) -> Value {
    let mut map = Map::new();
    for (b, r) in table.iter() {
        map.insert(b.key(), json!(r));
    }
    Value::Object(map)
}

pub fn rows_object(table: &BigradedRankTable) -> Value {
    let mut map = Map::new();
    for (p, r) in table.rows() {
        map.insert(p.to_string(), json!(r));
    }
    Value::Object(map)
}

/// The result document for one complex.
pub fn result_document(m: usize, analysis: &Analysis, field_label: &str) -> Value {
    json!({
        "m": m,
        "h": table_object(&analysis.h),
        "hh": table_object(&analysis.hh),
        "hh_total": analysis.hh.total(),
        "hh_rows": rows_object(&analysis.hh),
        "euler_hh": analysis.hh.euler_characteristic(),
        "field": field_label,
    })
}

/// Reads the `h`/`hh` tables back out of a result document.
pub fn parse_result_tables(doc: &Value) -> Result<Analysis> {
    let table = |key: &str| -> Result<BigradedRankTable> {
        let obj = doc
            .get(key)
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse(format!("missing object {key:?}")))?;
        let mut out = BigradedRankTable::new();
        for (k, v) in obj {
            let b = crate::double::Bidegree::parse_key(k).ok_or_else(|| Error::Parse(format!("bad bidegree {k:?}")))?;
            let r = v.as_u64().ok_or_else(|| Error::Parse(format!("bad rank at {k:?}")))?;
            out.add(b, r as usize);
        }
        Ok(out)
    };
    Ok(Analysis {
        h: table("h")?,
        hh: table("hh")?,
    })
}

/// `k,l,rank` lines with a header, ordered by `l` then `k`.
pub fn table_csv(table: &BigradedRankTable) -> String {
    let mut out = String::from("k,l,rank\n");
    for (b, r) in table.iter() {
        writeln!(out, "{},{},{}", b.k, b.l, r).unwrap();
    }
    out
}

/// Human-readable table.
pub fn table_pretty(title: &str, table: &BigradedRankTable, field_label: &str) -> String {
    let mut out = String::new();
    writeln!(out, "{title} over {field_label}").unwrap();
    writeln!(out, "{:>10} {:>6} {:>6} {:>6}", "(-k,2l)", "total", "row", "rank").unwrap();
    for (b, r) in table.iter() {
        writeln!(out, "{:>10} {:>6} {:>6} {:>6}", b.key(), b.total_degree(), b.row(), r).unwrap();
    }
    writeln!(
        out,
        "total rank {}, euler characteristic {}",
        table.total(),
        table.euler_characteristic()
    )
    .unwrap();
    out
}
