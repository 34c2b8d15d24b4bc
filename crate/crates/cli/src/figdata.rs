use std::collections::BTreeMap;

use anyhow::Result;
use qmds_core::gf::prime_power;
use qmds_core::pcode::Verdict;
use qmds_core::qstab::{char2_q2plus2, literature_records, run_pipeline, shorten_params, QuantumCodeParams};
use serde_json::{json, Value};

use crate::commands::budget_for;
use crate::config::{Format, RunConfig};
use crate::output::{render_table, usage, Report};

/// Ordered so that a better-supported point replaces a weaker one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Point {
    Unknown,
    Absent,
    Literature,
    Claimed,
    Verified,
}

impl Point {
    fn label(self) -> &'static str {
        match self {
            Point::Unknown => "unknown",
            Point::Absent => "absent",
            Point::Literature => "literature",
            Point::Claimed => "claimed",
            Point::Verified => "verified",
        }
    }

    fn of(rec: &QuantumCodeParams) -> Point {
        if rec.is_exact() {
            Point::Verified
        } else {
            Point::Claimed
        }
    }
}

/// Largest alphabet whose weight spectra are computed; above it every
/// point is reported as unknown.
const MAX_Q: u32 = 8;

pub fn figdata_cmd(q: u32, cfg: &RunConfig) -> Result<Report> {
    if prime_power(q).is_none() {
        return Err(usage(format!("q = {q} is not a prime power")));
    }
    let n_max = (q * q + 1) as usize;
    let mut points: BTreeMap<(u32, usize), Point> = BTreeMap::new();
    for d in 2..=q + 1 {
        for n in (2 * d as usize - 2).max(2)..=n_max {
            points.insert((d, n), Point::Unknown);
        }
    }
    if q.is_power_of_two() {
        points.insert((4, n_max + 1), Point::Unknown);
    }
    if q <= MAX_Q {
        let budget = budget_for(q, cfg);
        let mut mark = |d: u32, n: usize, p: Point| {
            let e = points.entry((d, n)).or_insert(p);
            *e = (*e).max(p);
        };
        for d in 2..=q + 1 {
            let lo = (2 * d as usize - 2).max(2);
            let run = run_pipeline(q, d, lo..=n_max, &budget)?;
            for r in &run.spectrum {
                match &r.verdict {
                    Verdict::FoundWitness(_) => {
                        let rec = run.codes.iter().find(|c| c.n == r.weight).expect("record per witness");
                        mark(d, r.weight, Point::of(rec));
                    }
                    Verdict::ProvenAbsent => mark(d, r.weight, Point::Absent),
                    Verdict::UnknownWithinBudget => {}
                }
            }
        }
        if q.is_power_of_two() && q >= 2 {
            let rec = char2_q2plus2(q.trailing_zeros(), &budget)?;
            mark(4, rec.n, Point::of(&rec));
        }
        for rec in literature_records().into_iter().filter(|r| r.q == q) {
            for s in 0..rec.d.saturating_sub(1) {
                if let Ok(short) = shorten_params(&rec, s) {
                    mark(short.d as u32, short.n, Point::Literature);
                }
            }
        }
    }
    let rows: Vec<Vec<Value>> = points
        .iter()
        .map(|(&(d, n), p)| vec![json!(q), json!(d), json!(n), json!(p.label())])
        .collect();
    Ok(Report::ok(render_table(
        cfg.format_or(Format::Csv),
        &["q", "d", "n", "status"],
        &rows,
    )))
}
