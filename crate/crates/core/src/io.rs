//! Text formats and the results log.
//!
//! * Permutation literals: `(1,3,5,2,4)`; link literals: `(4,9,1,3,8,7,5,2,6,10; 2,3)`.
//! * PD codes: `X[a,b,c,d]` tokens with edges numbered `1..2n` along the
//!   traversal, `a` the incoming under-edge and slots counterclockwise. An
//!   optional `PD[...]` wrapper is accepted.
//! * Results: one JSON record per line, hashed over subcommand, parameters
//!   and payload.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::petal::{Crossing, KnotDiagram, LinkPetalPermutation, PetalPermutation};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("inconsistent code: {0}")]
    InconsistentCode(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn parse_list(body: &str) -> Result<Vec<usize>, IoError> {
    body.split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<usize>().map_err(|_| IoError::Syntax(format!("expected a positive integer, found {s:?}")))
        })
        .collect()
}

fn strip_parens(text: &str) -> &str {
    let t = text.trim();
    t.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(t)
}

pub fn parse_perm(text: &str) -> Result<PetalPermutation, IoError> {
    let body = strip_parens(text);
    if body.trim().is_empty() {
        return Err(IoError::Syntax("empty permutation".into()));
    }
    PetalPermutation::new(parse_list(body)?).map_err(|e| IoError::Syntax(e.to_string()))
}

pub fn parse_link(text: &str) -> Result<LinkPetalPermutation, IoError> {
    let body = strip_parens(text);
    let (heights, sizes) =
        body.split_once(';').ok_or_else(|| IoError::Syntax("link literal needs `; m,n`".into()))?;
    let sizes = parse_list(sizes)?;
    let [m, n] = sizes[..] else {
        return Err(IoError::Syntax(format!("expected two sizes after `;`, found {}", sizes.len())));
    };
    LinkPetalPermutation::new(parse_list(heights)?, m, n).map_err(|e| IoError::Syntax(e.to_string()))
}

fn pd_tokens(text: &str) -> Result<Vec<[usize; 4]>, IoError> {
    let mut t = text.trim();
    if let Some(inner) = t.strip_prefix("PD[").and_then(|s| s.strip_suffix(']')) {
        t = inner;
    }
    let mut out = Vec::new();
    let mut rest = t;
    loop {
        rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == ',');
        if rest.is_empty() {
            break;
        }
        let body = rest
            .strip_prefix("X[")
            .ok_or_else(|| IoError::Syntax(format!("expected `X[` at {:?}", rest.chars().take(12).collect::<String>())))?;
        let close = body.find(']').ok_or_else(|| IoError::Syntax("unclosed `X[`".into()))?;
        let labels = parse_list(&body[..close])?;
        let quad: [usize; 4] = labels
            .try_into()
            .map_err(|v: Vec<usize>| IoError::Syntax(format!("crossing with {} labels", v.len())))?;
        out.push(quad);
        rest = &body[close + 1..];
    }
    if out.is_empty() {
        return Err(IoError::Syntax("no crossings".into()));
    }
    Ok(out)
}

/// Decides for every crossing which over slot is incoming. Each edge must be
/// incoming at exactly one of its two ends; what the under slots fix is
/// propagated, and the rest follows the numbering (`d = b + 1` means the
/// over-strand runs from `b` to `d`).
fn over_directions(quads: &[[usize; 4]], edges: usize) -> Vec<u8> {
    let mut over_in: Vec<Option<u8>> = vec![None; quads.len()];
    let mut ends: Vec<Vec<(usize, usize)>> = vec![Vec::new(); edges];
    for (x, q) in quads.iter().enumerate() {
        for (slot, &e) in q.iter().enumerate() {
            ends[e].push((x, slot));
        }
    }
    let incoming = |over_in: &[Option<u8>], x: usize, slot: usize| -> Option<bool> {
        match slot {
            0 => Some(true),
            2 => Some(false),
            _ => over_in[x].map(|o| o as usize == slot),
        }
    };
    let mut next_guess = 0;
    loop {
        let mut changed = true;
        while changed {
            changed = false;
            for pair in &ends {
                let [(x0, s0), (x1, s1)] = pair[..] else { continue };
                for ((xa, sa), (xb, sb)) in [((x0, s0), (x1, s1)), ((x1, s1), (x0, s0))] {
                    if let (Some(a_in), None) = (incoming(&over_in, xa, sa), over_in[xb]) {
                        if sb % 2 == 1 {
                            // the other end has the opposite role
                            over_in[xb] = Some(if a_in { (4 - sb) as u8 } else { sb as u8 });
                            changed = true;
                        }
                    }
                }
            }
        }
        while next_guess < quads.len() && over_in[next_guess].is_some() {
            next_guess += 1;
        }
        if next_guess == quads.len() {
            break;
        }
        let [_, b, _, d] = quads[next_guess];
        over_in[next_guess] = Some(if (b + 1) % edges == d { 1 } else { 3 });
    }
    over_in.into_iter().map(|o| o.expect("all decided")).collect()
}

pub fn parse_pd(text: &str) -> Result<KnotDiagram, IoError> {
    let quads = pd_tokens(text)?;
    let edges = 2 * quads.len();
    let mut count = vec![0usize; edges];
    for &l in quads.iter().flatten() {
        if l == 0 || l > edges {
            return Err(IoError::InconsistentCode(format!("edge {l} outside 1..={edges}")));
        }
        count[l - 1] += 1;
    }
    if let Some(e) = count.iter().position(|&c| c != 2) {
        return Err(IoError::InconsistentCode(format!("edge {} appears {} times", e + 1, count[e])));
    }
    let quads: Vec<[usize; 4]> = quads.iter().map(|q| q.map(|l| l - 1)).collect();
    let over = over_directions(&quads, edges);
    let crossings = quads.iter().zip(&over).map(|(q, &o)| Crossing::new(*q, o)).collect();
    let d = KnotDiagram::from_crossings(crossings, 0, 0).map_err(|e| IoError::InconsistentCode(e.to_string()))?;
    if !consecutive(&d) {
        return Err(IoError::InconsistentCode("edge numbers do not follow the traversal".into()));
    }
    Ok(d)
}

/// Whether every component's edges are consecutive numbers in traversal
/// order.
fn consecutive(d: &KnotDiagram) -> bool {
    d.edge_cycles().iter().all(|cycle| {
        let lo = *cycle.iter().min().expect("nonempty cycle");
        let start = cycle.iter().position(|&e| e == lo).expect("min is present");
        (0..cycle.len()).all(|k| cycle[(start + k) % cycle.len()] == lo + k)
    })
}

/// PD code of `d`, renumbered along the traversal when needed.
pub fn emit_pd(d: &KnotDiagram) -> String {
    let canon;
    let d = if consecutive(d) && d.base_edge() == 0 {
        d
    } else {
        canon = d.canonical();
        &canon
    };
    let tokens: Vec<String> = d
        .crossings()
        .iter()
        .map(|c| {
            let [a, b, cc, dd] = c.slots.map(|e| e + 1);
            format!("X[{a},{b},{cc},{dd}]")
        })
        .collect();
    tokens.join(", ")
}

pub const RESULTS_ENV: &str = "PETALUMA_RESULTS";
pub const DEFAULT_RESULTS: &str = "petaluma-results.ndjson";

/// Path of the results log: explicit flag, then environment, then default.
pub fn results_path(flag: Option<&Path>) -> PathBuf {
    flag.map(Path::to_path_buf)
        .or_else(|| std::env::var_os(RESULTS_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_RESULTS))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    /// Seconds since the Unix epoch; not covered by the hash.
    pub timestamp: u64,
    pub version: String,
    pub subcommand: String,
    pub params: serde_json::Value,
    pub payload: serde_json::Value,
    pub hash: String,
}

impl ResultRecord {
    pub fn new(subcommand: &str, params: serde_json::Value, payload: serde_json::Value) -> Self {
        let timestamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let hash = content_hash(subcommand, &params, &payload);
        Self { timestamp, version: env!("CARGO_PKG_VERSION").to_string(), subcommand: subcommand.to_string(), params, payload, hash }
    }

    pub fn hash_is_valid(&self) -> bool {
        self.hash == content_hash(&self.subcommand, &self.params, &self.payload)
    }
}

/// SHA-256 over the canonical JSON of subcommand, parameters and payload
/// (object keys sorted).
pub fn content_hash(subcommand: &str, params: &serde_json::Value, payload: &serde_json::Value) -> String {
    let body = serde_json::json!({ "subcommand": subcommand, "params": params, "payload": payload });
    hex::encode(Sha256::digest(body.to_string().as_bytes()))
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RecordFilter {
    pub subcommand: Option<String>,
    /// Every key here must be present in the record's parameters with an
    /// equal value.
    pub params: serde_json::Map<String, serde_json::Value>,
}

impl RecordFilter {
    pub fn matches(&self, r: &ResultRecord) -> bool {
        self.subcommand.as_ref().is_none_or(|s| *s == r.subcommand)
            && self.params.iter().all(|(k, v)| r.params.get(k) == Some(v))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoadedResults {
    pub records: Vec<ResultRecord>,
    /// Line numbers (1-based) that failed to parse.
    pub skipped: Vec<usize>,
}

/// Appends `record`; returns true when a record with the same hash was
/// already present.
pub fn persist_result(path: &Path, record: &ResultRecord) -> Result<bool, IoError> {
    let duplicate = path.exists() && load_results(path, &RecordFilter::default())?.records.iter().any(|r| r.hash == record.hash);
    if duplicate {
        log::info!("result {} already recorded in {}", &record.hash[..12], path.display());
    }
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    writeln!(file, "{}", serde_json::to_string(record)?)?;
    Ok(duplicate)
}

pub fn load_results(path: &Path, filter: &RecordFilter) -> Result<LoadedResults, IoError> {
    let reader = BufReader::new(File::open(path)?);
    let mut records = Vec::new();
    let mut skipped = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<ResultRecord>(&line) {
            Ok(r) => {
                if filter.matches(&r) {
                    records.push(r);
                }
            }
            Err(e) => {
                log::warn!("{}:{}: skipping unreadable record: {e}", path.display(), i + 1);
                skipped.push(i + 1);
            }
        }
    }
    Ok(LoadedResults { records, skipped })
}
