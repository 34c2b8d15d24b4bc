use std::collections::BTreeMap;

use serde::Deserialize;

use super::{DistanceKind, Purity, QuantumCodeParams, RecordStatus};

const LITERATURE: &str = include_str!("../../data/literature.jsonl");

#[derive(Deserialize)]
struct LiteratureLine {
    q: u32,
    n: usize,
    k: usize,
    d: usize,
    source: String,
}

/// Published parameters shipped with the crate. They are never marked
/// verified, only used as inputs to parameter derivations.
pub fn literature_records() -> Vec<QuantumCodeParams> {
    LITERATURE
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let r: LiteratureLine = serde_json::from_str(l).expect("valid literature line");
            QuantumCodeParams {
                q: r.q,
                n: r.n,
                k: r.k,
                d: r.d,
                pure: Purity::Unknown,
                status: RecordStatus::Literature,
                distance: DistanceKind::Stated,
                provenance: vec![format!("literature: {}", r.source)],
                flags: Vec::new(),
                witness: None,
            }
        })
        .collect()
}

/// Records keyed by `(q, n, k, d)`. Re-inserting a key keeps the newest
/// record and merges the provenance of both.
#[derive(Debug, Clone, Default)]
pub struct Registry {
    records: BTreeMap<(u32, usize, usize, usize), QuantumCodeParams>,
}

impl Registry {
    pub fn new() -> Registry {
        Registry::default()
    }

    pub fn with_literature() -> Registry {
        let mut r = Registry::new();
        for rec in literature_records() {
            r.insert(rec);
        }
        r
    }

    pub fn insert(&mut self, mut rec: QuantumCodeParams) {
        let key = (rec.q, rec.n, rec.k, rec.d);
        if let Some(old) = self.records.remove(&key) {
            let mut merged = old.provenance;
            for p in rec.provenance.drain(..) {
                if !merged.contains(&p) {
                    merged.push(p);
                }
            }
            rec.provenance = merged;
        }
        self.records.insert(key, rec);
    }

    pub fn get(&self, key: &str) -> Option<&QuantumCodeParams> {
        let (q, n, k, d) = super::parse_key(key)?;
        self.records.get(&(q, n, k, d))
    }

    pub fn iter(&self) -> impl Iterator<Item = &QuantumCodeParams> {
        self.records.values()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// One JSON object per line, in key order.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for rec in self.records.values() {
            out.push_str(&serde_json::to_string(rec).expect("serializable record"));
            out.push('\n');
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<Registry, serde_json::Error> {
        let mut r = Registry::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            r.insert(serde_json::from_str(line)?);
        }
        Ok(r)
    }
}
