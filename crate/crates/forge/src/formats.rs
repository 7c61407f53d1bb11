//! On-disk formats. Every JSON document and JSON line carries `schema_version`.

use std::fmt::Write as _;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use seidel_forge_core::enumeration::{ExactSource, OmegaTable, OracleCounts, Representative, STable};
use seidel_forge_core::lattice::PairClass;

pub const SCHEMA_VERSION: u32 = 1;

/// Optional provenance header; omitted with `--no-meta` for byte-identical output.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    pub generated_unix: u64,
}

impl Meta {
    pub fn now() -> Self {
        Meta {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            generated_unix: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct OmegaFile {
    pub schema_version: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub meta: Option<Meta>,
    /// `ω(n)` for `n = 0..=28`.
    pub omega: Vec<u64>,
    /// Orbit counts `c(n)` before the `n = 6` correction.
    pub raw_orbit_counts: Vec<u64>,
}

impl OmegaFile {
    pub fn new(table: &OmegaTable, meta: Option<Meta>) -> Self {
        OmegaFile {
            schema_version: SCHEMA_VERSION,
            meta,
            omega: table.omega.clone(),
            raw_orbit_counts: table.raw_orbit_counts.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ProvenanceRow {
    pub n: usize,
    pub omega: u64,
    /// `K_n` from `A_{n+1}`.
    pub complete_graph: bool,
    /// `m` of each `D_m` contributing `D_{m−2,n−m+2}`.
    pub d_lattices: Vec<usize>,
    pub s: u64,
    pub s_e: u64,
    /// `"representatives"` or `"formula"`.
    pub s_e_source: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct STableFile {
    pub schema_version: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub meta: Option<Meta>,
    pub n_max: usize,
    pub s: Vec<u64>,
    pub s_e: Vec<u64>,
    pub provenance: Vec<ProvenanceRow>,
}

impl STableFile {
    pub fn new(table: &STable, meta: Option<Meta>) -> Self {
        let provenance = table
            .rows
            .iter()
            .map(|r| ProvenanceRow {
                n: r.n,
                omega: r.omega,
                complete_graph: r.complete_graph,
                d_lattices: r.d_lattices.clone(),
                s: r.s,
                s_e: r.s_e,
                s_e_source: match r.exact_source {
                    ExactSource::Representatives => "representatives",
                    ExactSource::Formula => "formula",
                }
                .to_string(),
            })
            .collect();
        STableFile {
            schema_version: SCHEMA_VERSION,
            meta,
            n_max: table.s.len() - 1,
            s: table.s.clone(),
            s_e: table.s_e.clone(),
            provenance,
        }
    }
}

/// One line of `reps_n<K>.jsonl`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RepLine {
    pub schema_version: u32,
    pub n: usize,
    pub subset: Vec<usize>,
    pub key_hex: String,
    /// `rank(3I − S)`.
    pub rank: usize,
    pub lattice_family: String,
    /// Doubled coordinates of the class representatives.
    pub roots: Vec<Vec<i64>>,
}

impl RepLine {
    pub fn new(rep: &Representative, classes: &[PairClass]) -> Self {
        RepLine {
            schema_version: SCHEMA_VERSION,
            n: rep.n,
            subset: rep.subset.clone(),
            key_hex: rep.key.to_hex(),
            rank: rep.rank,
            lattice_family: rep.lattice.clone(),
            roots: rep.subset.iter().map(|&i| classes[i].representative.coords2().to_vec()).collect(),
        }
    }
}

/// One line of a transversal export.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TransversalLine {
    pub schema_version: u32,
    pub n: usize,
    pub subset: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct OracleRow {
    pub n: usize,
    pub s: u64,
    pub s_e: u64,
    pub omega: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct OracleFile {
    pub schema_version: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub meta: Option<Meta>,
    pub n_max: usize,
    pub rows: Vec<OracleRow>,
}

impl OracleFile {
    pub fn new(counts: &[OracleCounts], meta: Option<Meta>) -> Self {
        let rows = counts
            .iter()
            .enumerate()
            .map(|(n, c)| OracleRow { n, s: c.s, s_e: c.s_e, omega: c.omega })
            .collect();
        OracleFile { schema_version: SCHEMA_VERSION, meta, n_max: counts.len() - 1, rows }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ClassEntry {
    pub index: usize,
    /// Doubled coordinates of `u`.
    pub representative: Vec<i64>,
    /// Doubled coordinates of `r − u`.
    pub partner: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ClassIndexFile {
    pub schema_version: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub meta: Option<Meta>,
    /// Doubled coordinates of the switching root.
    pub switching_root: Vec<i64>,
    pub classes: Vec<ClassEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CountFile {
    pub schema_version: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub meta: Option<Meta>,
    /// Orbit counts on `n`-subsets of the 28 classes, `n = 0..=28`.
    pub counts: Vec<u64>,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn to_jsonl<T: Serialize>(lines: &[T]) -> String {
    let mut out = String::new();
    for line in lines {
        out.push_str(&serde_json::to_string(line).expect("serializable"));
        out.push('\n');
    }
    out
}

/// A table with `n` running along the columns, one labelled row per series.
pub fn text_table(ns: std::ops::Range<usize>, rows: &[(&str, &[u64])]) -> String {
    let label_width = rows.iter().map(|(l, _)| l.chars().count()).max().unwrap_or(1).max(1);
    let ns: Vec<usize> = ns.collect();
    let w = ns
        .iter()
        .map(|n| n.to_string().len())
        .chain(rows.iter().flat_map(|(_, values)| ns.iter().filter_map(|&n| values.get(n)).map(|v| v.to_string().len())))
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    let _ = write!(out, "{:>label_width$} |", "n");
    for n in &ns {
        let _ = write!(out, " {n:>w$}");
    }
    out.push('\n');
    for (label, values) in rows {
        let _ = write!(out, "{label:>label_width$} |");
        for &n in &ns {
            let v = values.get(n).map_or(String::from("-"), |v| v.to_string());
            let _ = write!(out, " {v:>w$}");
        }
        out.push('\n');
    }
    out
}
