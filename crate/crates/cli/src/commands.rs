use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use qmds_core::ccodes::{bch_ht_bound, build_code, mds_spec};
use qmds_core::gf::{field, prime_power};
use qmds_core::linalg::{mds_verify, Budget, DualKind, LinearCode};
use qmds_core::pcode::{
    puncture_direct, puncture_spectral, weight_spectrum, PcodeError, PunctureCode, Verdict, WitnessFile,
};
use qmds_core::qstab::{
    char2_q2plus2, conjecture_report, cyclic_subcode_search, run_pipeline, shorten_params, verify_witness,
    ConjectureReport, ConjectureVerdict, QstabError, Registry,
};
use serde_json::{json, Value};

use crate::config::{Format, RunConfig, CAPPED};
use crate::output::{canonical, render_table, usage, Outcome, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum RouteArg {
    Direct,
    Spectral,
    Both,
}

/// Parses `a..b` (inclusive) or a single number.
pub fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (s, s),
    };
    let a: usize = a.trim().parse().map_err(|_| format!("bad range start in {s:?}"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("bad range end in {s:?}"))?;
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok((a, b))
}

fn json_only(cfg: &RunConfig) -> Result<()> {
    if cfg.format_or(Format::Json) == Format::Csv {
        return Err(usage("this subcommand only writes JSON"));
    }
    Ok(())
}

/// Alphabets the pipeline handles; anything else is a usage error.
fn pipeline_q(q: u32, d: u32) -> Result<()> {
    if prime_power(q).is_none() || q > 16 {
        return Err(usage(format!("q = {q} is not a supported prime power (at most 16)")));
    }
    if d < 1 || d > q + 1 {
        return Err(usage(format!("d = {d} is outside 1..={}", q + 1)));
    }
    Ok(())
}

/// Default budget, or the capped one for q >= 7 unless overridden.
pub fn budget_for(q: u32, cfg: &RunConfig) -> Budget {
    if q >= 7 {
        cfg.budget_over(&CAPPED)
    } else {
        cfg.budget()
    }
}

fn rows_json(c: &LinearCode) -> Value {
    json!(c.rows())
}

pub fn field_cmd(p: u32, m: u32, cfg: &RunConfig) -> Result<Report> {
    json_only(cfg)?;
    let f = field(p, m).map_err(|e| usage(e.to_string()))?;
    Ok(Report::ok(canonical(&f.descriptor()) + "\n"))
}

pub fn mds_cmd(q: u32, d: u32, cfg: &RunConfig) -> Result<Report> {
    json_only(cfg)?;
    let spec = mds_spec(q, d).map_err(|e| usage(e.to_string()))?;
    let code = build_code(&spec)?;
    let ok = mds_verify(&code);
    let out = json!({
        "field": spec.alphabet().descriptor(),
        "spec": spec.descriptor(),
        "n": code.len(),
        "k": code.dim(),
        "d": d,
        "bch_ht_bound": bch_ht_bound(&spec),
        "mds_verify": ok,
        "generator": rows_json(&code),
    });
    Ok(Report {
        text: canonical(&out) + "\n",
        outcome: if ok { Outcome::Ok } else { Outcome::Mismatch },
    })
}

fn pipeline_c(q: u32, d: u32) -> Result<LinearCode> {
    Ok(build_code(&mds_spec(q * q, d)?)?.dual(DualKind::Hermitian)?)
}

pub fn direct_pc(q: u32, d: u32) -> Result<PunctureCode> {
    Ok(puncture_direct(&pipeline_c(q, d)?)?)
}

pub fn pc_cmd(q: u32, d: u32, route: RouteArg, cfg: &RunConfig) -> Result<Report> {
    json_only(cfg)?;
    pipeline_q(q, d)?;
    let direct = matches!(route, RouteArg::Direct | RouteArg::Both)
        .then(|| direct_pc(q, d))
        .transpose()?;
    let spectral = match route {
        RouteArg::Direct => None,
        _ => Some(puncture_spectral(&mds_spec(q * q, d)?)?),
    };
    let shown = direct.as_ref().or(spectral.as_ref()).expect("one route ran");
    let mut out = json!({
        "q": q,
        "d": d,
        "n": shown.len(),
        "dim": shown.dim(),
        "route": format!("{route:?}").to_lowercase(),
        "generator": rows_json(&shown.base),
    });
    if let Some(s) = spectral.as_ref().and_then(|p| p.spec.as_ref()) {
        out["spectral_spec"] = json!(s.descriptor());
    }
    let mut outcome = Outcome::Ok;
    if let (Some(a), Some(b)) = (&direct, &spectral) {
        let agree = a.base == b.base;
        out["routes_agree"] = json!(agree);
        if !agree {
            outcome = Outcome::Mismatch;
        }
    }
    Ok(Report {
        text: canonical(&out) + "\n",
        outcome,
    })
}

fn verdict_cells(v: &Verdict) -> (Value, Value) {
    let witness = v.witness().map(|w| json!(w)).unwrap_or(Value::Null);
    (json!(v.label()), witness)
}

pub fn weights_cmd(q: u32, d: u32, range: Option<(usize, usize)>, cfg: &RunConfig) -> Result<Report> {
    pipeline_q(q, d)?;
    let n = (q * q + 1) as usize;
    let (a, b) = range.unwrap_or((1, n));
    if a == 0 || b > n {
        return Err(usage(format!("weights must lie in 1..={n}")));
    }
    let pc = direct_pc(q, d)?;
    let spectrum = weight_spectrum(&pc, a..=b, &budget_for(q, cfg));
    let rows: Vec<Vec<Value>> = spectrum
        .iter()
        .map(|r| {
            let (label, witness) = verdict_cells(&r.verdict);
            vec![
                json!(r.weight),
                label,
                json!(r.effort.method),
                json!(r.effort.subsets),
                json!(r.effort.samples),
                json!(r.effort.seed),
                witness,
            ]
        })
        .collect();
    let undecided = spectrum
        .iter()
        .any(|r| r.verdict == Verdict::UnknownWithinBudget);
    Ok(Report {
        text: render_table(
            cfg.format_or(Format::Json),
            &["weight", "verdict", "method", "subsets", "samples", "seed", "witness"],
            &rows,
        ),
        outcome: if undecided { Outcome::Undecided } else { Outcome::Ok },
    })
}

pub fn qmds_cmd(q: u32, d: u32, cfg: &RunConfig) -> Result<Report> {
    pipeline_q(q, d)?;
    let n = (q * q + 1) as usize;
    let run = run_pipeline(q, d, 1..=n, &budget_for(q, cfg))?;
    let mut text = String::new();
    match cfg.format_or(Format::Json) {
        Format::Json => {
            for r in &run.spectrum {
                text.push_str(&format!("{}: {}\n", r.weight, r.verdict.label()));
            }
            for rec in &run.codes {
                text.push_str(&canonical(rec));
                text.push('\n');
            }
        }
        Format::Csv => {
            let rows: Vec<Vec<Value>> = run
                .spectrum
                .iter()
                .map(|r| {
                    let rec = run.codes.iter().find(|c| c.n == r.weight);
                    vec![
                        json!(r.weight),
                        json!(r.verdict.label()),
                        rec.map_or(Value::Null, |c| json!(c.k)),
                        rec.map_or(Value::Null, |c| json!(c.d)),
                        rec.map_or(Value::Null, |c| json!(c.status)),
                        rec.map_or(Value::Null, |c| json!(c.distance)),
                    ]
                })
                .collect();
            text = render_table(Format::Csv, &["weight", "verdict", "k", "d", "status", "distance"], &rows);
        }
    }
    let undecided = run
        .spectrum
        .iter()
        .any(|r| r.verdict == Verdict::UnknownWithinBudget);
    Ok(Report {
        text,
        outcome: if undecided { Outcome::Undecided } else { Outcome::Ok },
    })
}

pub fn q2p2_cmd(m: u32, cfg: &RunConfig) -> Result<Report> {
    json_only(cfg)?;
    let rec = match char2_q2plus2(m, &cfg.budget()) {
        Err(QstabError::MOutOfRange(m)) => return Err(usage(format!("m = {m} is outside 1..=4"))),
        other => other?,
    };
    Ok(Report::ok(canonical(&rec) + "\n"))
}

pub fn shorten_cmd(key: &str, s: usize, cfg: &RunConfig) -> Result<Report> {
    json_only(cfg)?;
    let reg = Registry::with_literature();
    let rec = reg
        .get(key)
        .ok_or_else(|| usage(format!("no registry record with key {key:?}")))?;
    let out = shorten_params(rec, s).map_err(|e| usage(e.to_string()))?;
    Ok(Report::ok(canonical(&out) + "\n"))
}

pub fn verify_cmd(path: &Path, cfg: &RunConfig) -> Result<Report> {
    json_only(cfg)?;
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let wf: WitnessFile = serde_json::from_str(&text).map_err(|e| usage(format!("bad witness file: {e}")))?;
    match verify_witness(&wf, &budget_for(wf.q, cfg)) {
        Ok(rec) => Ok(Report::ok(canonical(&rec) + "\n")),
        Err(e @ (QstabError::Pcode(PcodeError::NotInPunctureCode) | QstabError::Construction(_))) => {
            Ok(Report {
                text: canonical(&json!({"verified": false, "reason": e.to_string()})) + "\n",
                outcome: Outcome::Mismatch,
            })
        }
        Err(e) => Err(e.into()),
    }
}

pub fn conjectures_cmd(range: (usize, usize), cfg: &RunConfig) -> Result<Report> {
    json_only(cfg)?;
    let mut report = ConjectureReport {
        rows: Vec::new(),
        weight_tables: Vec::new(),
        notes: Vec::new(),
    };
    let mut subcodes = Vec::new();
    for q in range.0..=range.1 {
        let q = q as u32;
        if prime_power(q).is_none() || q > 16 {
            continue;
        }
        let budget = budget_for(q, cfg);
        let part = conjecture_report(q..=q, &budget)?;
        report.rows.extend(part.rows);
        report.weight_tables.extend(part.weight_tables);
        for note in part.notes {
            if !report.notes.contains(&note) {
                report.notes.push(note);
            }
        }
        if q == 4 || q == 8 {
            subcodes.extend(cyclic_subcode_search(q, q, &budget)?);
        }
    }
    let undecided = report
        .rows
        .iter()
        .any(|r| r.verdict == ConjectureVerdict::Undecided);
    let out = json!({
        "report": report,
        "cyclic_subcodes": subcodes,
    });
    Ok(Report {
        text: canonical(&out) + "\n",
        outcome: if undecided { Outcome::Undecided } else { Outcome::Ok },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..4"), Ok((2, 4)));
        assert_eq!(parse_range("2..=4"), Ok((2, 4)));
        assert_eq!(parse_range("7"), Ok((7, 7)));
        assert!(parse_range("4..2").is_err());
        assert!(parse_range("a..2").is_err());
    }
}
