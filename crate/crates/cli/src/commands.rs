use std::fmt::Write as _;
use std::path::Path;

use machh_core::io::{result_document, rows_object, table_csv, table_object, table_pretty, ComplexFile};
use machh_core::oracle::oracle_hh_rows;
use machh_core::{
    k2r_family, k2r_size, Analysis, BigradedRankTable, Engine, Error, Field, ModularEngine, RationalEngine,
    SimplicialComplex, SubsetMask, Thm1Report, Thm1Verification,
};
use serde_json::{json, Value};

use crate::{Construct, FieldChoice, Format, RunConfig};

/// A failed invocation: exit code plus a one-line diagnostic.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub kind: String,
    pub message: String,
}

impl Failure {
    pub fn usage(message: String) -> Self {
        Failure {
            code: 2,
            kind: "InvalidArguments".into(),
            message,
        }
    }

    pub fn io(e: std::io::Error) -> Self {
        Failure {
            code: 7,
            kind: "OutputError".into(),
            message: e.to_string(),
        }
    }

    pub fn report(&self) {
        eprintln!("{}", json!({"error": self.kind, "message": self.message}));
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceLimit { .. } => 3,
            Error::GhostVertex(_) => 4,
            Error::InternalInconsistency(_) => 6,
            _ => 2,
        };
        Failure {
            code,
            kind: e.kind().into(),
            message: e.to_string(),
        }
    }
}

type Output = Result<(String, i32), Failure>;

/// Runs `$body` with `$engine` bound to an engine over the configured field.
macro_rules! with_engine {
    ($config:expr, |$engine:ident| $body:expr) => {
        match &$config.field {
            FieldChoice::Rationals => {
                let $engine = RationalEngine::default().with_max_m($config.max_m);
                $body
            }
            FieldChoice::Prime(p) => {
                let $engine = ModularEngine::new(*p).with_max_m($config.max_m);
                $body
            }
        }
    };
}

fn exact_engine(config: &RunConfig) -> Option<RationalEngine> {
    (config.verify_exact && matches!(config.field, FieldChoice::Prime(_)))
        .then(|| RationalEngine::default().with_max_m(config.max_m))
}

fn field_label(config: &RunConfig) -> String {
    match &config.field {
        FieldChoice::Rationals => "Q".into(),
        FieldChoice::Prime(p) => p.label(),
    }
}

fn warn_field_dependence(what: &str, field: &str) {
    eprintln!(
        "{}",
        json!({"warning": "FieldDependentRanks", "message": format!("{what} over {field} differs from the rational result")})
    );
}

fn read_file(path: &Path) -> Result<ComplexFile, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(ComplexFile::parse(&text)?)
}

fn load(path: &Path) -> Result<SimplicialComplex, Failure> {
    Ok(read_file(path)?.to_complex()?)
}

fn parse_vertices(text: &str, m: usize) -> Result<SubsetMask, Failure> {
    let mut mask = SubsetMask::EMPTY;
    for part in text.split(',') {
        let v: usize = part
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad vertex list {text:?}")))?;
        if v == 0 || v > m {
            return Err(Error::VertexOutOfRange { vertex: v, m }.into());
        }
        mask = mask.with(v);
    }
    Ok(mask)
}

fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn analyze(k: &SimplicialComplex, config: &RunConfig) -> Result<(Analysis, String), Failure> {
    let result = with_engine!(config, |engine| engine.analyze(k)?);
    if let Some(exact) = exact_engine(config) {
        let q = exact.analyze(k)?;
        if q != result {
            warn_field_dependence("HH", &field_label(config));
        }
        return Ok((q, "Q".into()));
    }
    Ok((result, field_label(config)))
}

pub fn hh(input: &Path, config: &RunConfig) -> Output {
    let k = load(input)?;
    let (analysis, label) = analyze(&k, config)?;
    let text = match config.format {
        Format::Json => pretty(&result_document(k.m(), &analysis, &label)),
        Format::Csv => table_csv(&analysis.hh),
        Format::Table => table_pretty("HH*(Z_K)", &analysis.hh, &label),
    };
    Ok((text, 0))
}

pub fn h(input: &Path, config: &RunConfig) -> Output {
    let k = load(input)?;
    let mut table = with_engine!(config, |engine| engine.h_ranks(&k)?);
    let mut label = field_label(config);
    if let Some(exact) = exact_engine(config) {
        let q = exact.h_ranks(&k)?;
        if q != table {
            warn_field_dependence("H", &label);
        }
        table = q;
        label = "Q".into();
    }
    let text = match config.format {
        Format::Json => pretty(&json!({
            "m": k.m(),
            "h": table_object(&table),
            "h_total": table.total(),
            "field": label,
        })),
        Format::Csv => table_csv(&table),
        Format::Table => table_pretty("H*(Z_K)", &table, &label),
    };
    Ok((text, 0))
}

pub fn construct(kind: Construct) -> Output {
    let file = match kind {
        Construct::K2r { r } => {
            if r == 0 {
                return Err(Failure::usage("--r must be at least 1".into()));
            }
            let member = k2r_family(r)?;
            let mut file = ComplexFile::from_complex(&member.complex);
            file.meta = Some(json!({"non_edge": [member.non_edge.0, member.non_edge.1]}));
            file
        }
        Construct::Join { a, b } => {
            let (fa, fb) = (read_file(&a)?, read_file(&b)?);
            let joined = fa.to_complex()?.join(&fb.to_complex()?)?;
            let mut file = ComplexFile::from_complex(&joined);
            if let (Some(la), Some(lb)) = (&fa.labels, &fb.labels) {
                file.labels = Some(la.iter().chain(lb).cloned().collect());
            }
            file
        }
        Construct::Wedge { a, b, at } => {
            let (fa, fb) = (read_file(&a)?, read_file(&b)?);
            let (ka, kb) = (fa.to_complex()?, fb.to_complex()?);
            let points: Vec<&str> = at.split(',').collect();
            let [i, j] = points[..] else {
                return Err(Failure::usage(format!("--at expects i,j, got {at:?}")));
            };
            let i = parse_vertices(i, ka.m())?.min_vertex().expect("one vertex");
            let j = parse_vertices(j, kb.m())?.min_vertex().expect("one vertex");
            let wedge = ka.wedge(i, &kb, j)?;
            let mut file = ComplexFile::from_complex(&wedge);
            if let (Some(la), Some(lb)) = (&fa.labels, &fb.labels) {
                let rest = lb.iter().enumerate().filter(|(v, _)| v + 1 != j).map(|(_, l)| l);
                file.labels = Some(la.iter().chain(rest).cloned().collect());
            }
            file
        }
        Construct::Glue { input, face } => {
            let f = read_file(&input)?;
            let k = f.to_complex()?;
            let sigma = parse_vertices(&face, k.m())?;
            let glued = k.glue_simplex(sigma)?;
            let mut file = ComplexFile::from_complex(&glued);
            file.labels = f.labels;
            file
        }
    };
    Ok((file.to_json(), 0))
}

fn mask_list(mask: SubsetMask) -> Value {
    json!(mask.vertices().collect::<Vec<_>>())
}

fn report_json(report: &Thm1Report) -> Value {
    json!({
        "sigma": mask_list(report.sigma),
        "n": report.n,
        "relabeling": report.relabeling,
        "conditions": report.conditions,
        "witnessing_j": report.witnessing_j.map(mask_list),
        "applicable": report.applicable,
        "predicted_delta": report.predicted_delta,
    })
}

fn side_json(table: &BigradedRankTable) -> Value {
    json!({
        "hh": table_object(table),
        "hh_total": table.total(),
        "hh_rows": rows_object(table),
    })
}

fn verification_json(v: &Thm1Verification, label: &str) -> Value {
    let mut doc = report_json(&v.report);
    let obj = doc.as_object_mut().expect("object");
    obj.insert("field".into(), json!(label));
    obj.insert("before".into(), side_json(&v.before));
    obj.insert("after".into(), side_json(&v.after));
    obj.insert(
        "observed_delta".into(),
        json!(v.rank_after as i64 - v.rank_before as i64),
    );
    obj.insert("verdict".into(), json!(if v.verdict { "pass" } else { "fail" }));
    doc
}

fn thm1_with<F: Field>(engine: &Engine<F>, k: &SimplicialComplex, sigma: SubsetMask) -> Result<Value, Failure> {
    let label = engine.field().label();
    match engine.verify_theorem1(k, sigma) {
        Ok(v) => Ok(verification_json(&v, &label)),
        Err(Error::NotApplicable) => {
            let report = machh_core::check_theorem1(k, sigma, engine)?;
            let mut doc = report_json(&report);
            let obj = doc.as_object_mut().expect("object");
            obj.insert("field".into(), json!(label));
            obj.insert("verdict".into(), json!("not_applicable"));
            Ok(doc)
        }
        Err(e) => Err(e.into()),
    }
}

pub fn check_thm1(input: &Path, sigma: &str, config: &RunConfig) -> Output {
    let k = load(input)?;
    if k.m() > config.max_m {
        return Err(Error::ResourceLimit {
            m: k.m(),
            limit: config.max_m,
        }
        .into());
    }
    let sigma = parse_vertices(sigma, k.m())?;
    let mut doc = with_engine!(config, |engine| thm1_with(&engine, &k, sigma)?);
    if let Some(exact) = exact_engine(config) {
        let q = thm1_with(&exact, &k, sigma)?;
        let strip = |d: &Value| {
            let mut d = d.clone();
            d.as_object_mut().expect("object").remove("field");
            d
        };
        if strip(&q) != strip(&doc) {
            warn_field_dependence("the gluing check", &field_label(config));
        }
        doc = q;
    }
    let code = match doc["verdict"].as_str() {
        Some("pass") => 0,
        Some("not_applicable") => 1,
        _ => 5,
    };
    let text = match config.format {
        Format::Json | Format::Csv => pretty(&doc),
        Format::Table => thm1_table(&doc),
    };
    Ok((text, code))
}

fn thm1_table(doc: &Value) -> String {
    let mut out = String::new();
    writeln!(out, "sigma {}  n = {}", doc["sigma"], doc["n"]).unwrap();
    let conditions = doc["conditions"].as_array().cloned().unwrap_or_default();
    for (i, c) in conditions.iter().enumerate() {
        writeln!(
            out,
            "  condition ({}) {}",
            i + 1,
            if c.as_bool() == Some(true) { "holds" } else { "fails" }
        )
        .unwrap();
    }
    writeln!(out, "  witnessing J: {}", doc["witnessing_j"]).unwrap();
    writeln!(out, "  predicted change: {}", doc["predicted_delta"]).unwrap();
    if let Some(before) = doc.get("before") {
        writeln!(
            out,
            "  total rank {} -> {}",
            before["hh_total"], doc["after"]["hh_total"]
        )
        .unwrap();
        writeln!(out, "  rows before {}", before["hh_rows"]).unwrap();
        writeln!(out, "  rows after  {}", doc["after"]["hh_rows"]).unwrap();
    }
    writeln!(out, "verdict: {}", doc["verdict"].as_str().unwrap_or("?")).unwrap();
    out
}

pub fn ladder(r_max: usize, config: &RunConfig) -> Output {
    if r_max == 0 {
        return Err(Failure::usage("--r-max must be at least 1".into()));
    }
    let largest = (1..=r_max).map(k2r_size).max().unwrap_or(0);
    if largest > config.max_m {
        return Err(Error::ResourceLimit {
            m: largest,
            limit: config.max_m,
        }
        .into());
    }
    let mut label = field_label(config);
    let mut rows = Vec::with_capacity(r_max);
    for r in 1..=r_max {
        let k = k2r_family(r)?.complex;
        let mut rank = with_engine!(config, |engine| engine.hh_ranks(&k)?.total());
        if let Some(exact) = exact_engine(config) {
            let q = exact.hh_ranks(&k)?.total();
            if q != rank {
                warn_field_dependence("the ladder", &label);
            }
            rank = q;
        }
        rows.push((r, k.m(), rank, 2 * r, rank == 2 * r));
    }
    if exact_engine(config).is_some() {
        label = "Q".into();
    }
    let all_pass = rows.iter().all(|row| row.4);
    let text = match config.format {
        Format::Json => pretty(&json!({
            "field": label,
            "rows": rows
                .iter()
                .map(|&(r, m, rank, expected, pass)| json!({
                    "r": r, "m": m, "rank": rank, "expected": expected, "pass": pass,
                }))
                .collect::<Vec<_>>(),
            "all_pass": all_pass,
        })),
        Format::Csv => {
            let mut out = String::from("r,m,rank,expected,pass\n");
            for (r, m, rank, expected, pass) in &rows {
                writeln!(out, "{r},{m},{rank},{expected},{}", if *pass { "pass" } else { "fail" }).unwrap();
            }
            out
        }
        Format::Table => {
            let mut out = format!(
                "K_2r ladder over {label}\n{:>4} {:>4} {:>6} {:>9} {:>6}\n",
                "r", "m", "rank", "expected", ""
            );
            for (r, m, rank, expected, pass) in &rows {
                writeln!(
                    out,
                    "{r:>4} {m:>4} {rank:>6} {expected:>9} {:>6}",
                    if *pass { "pass" } else { "FAIL" }
                )
                .unwrap();
            }
            out
        }
    };
    Ok((text, if all_pass { 0 } else { 5 }))
}

pub fn oracle(input: &Path) -> Output {
    let k = load(input)?;
    let rows = oracle_hh_rows(&k)?;
    let doc = json!({
        "m": k.m(),
        "hh_total": rows.values().sum::<usize>(),
        "hh_rows": rows.iter().map(|(p, r)| (p.to_string(), json!(r))).collect::<serde_json::Map<_, _>>(),
        "field": "Q",
    });
    Ok((pretty(&doc), 0))
}
