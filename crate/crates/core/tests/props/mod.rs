//! Randomized invariant checks, shared by the core test suite and the
//! acceptance run. Every check draws `CASES` inputs from a fixed seed.

use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use qmds_core::ccodes::{build_code, mds_spec};
use qmds_core::gf::{field, Elem, FieldTable};
use qmds_core::linalg::{DualKind, LinearCode};
use qmds_core::pcode::{puncture_direct, rescale_self_orthogonal};
use qmds_core::qstab::{literature_records, parse_key, qmds_check, shorten_params, Registry};

pub const CASES: u32 = 1000;

pub type Outcome = Result<(), String>;

fn runner() -> TestRunner {
    let config = Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn check(r: Result<(), TestCaseError>, what: &str) -> Result<(), TestCaseError> {
    r.map_err(|e| TestCaseError::fail(format!("{what}: {e}")))
}

fn ensure(cond: bool, what: &str) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

const FIELDS: [(u32, u32); 10] = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 2), (7, 2), (2, 6), (3, 4)];
const QUADRATIC: [(u32, u32); 8] = [(2, 2), (3, 2), (2, 4), (5, 2), (7, 2), (2, 6), (3, 4), (2, 8)];

fn elem(f: &FieldTable, raw: u32) -> Elem {
    f.elem(raw % f.order()).expect("in range")
}

pub fn field_axioms() -> Outcome {
    runner()
        .run(&(0..FIELDS.len(), any::<u32>(), any::<u32>(), any::<u32>()), |(i, a, b, c)| {
            let (p, m) = FIELDS[i];
            let f = field(p, m).unwrap();
            let (a, b, c) = (elem(&f, a), elem(&f, b), elem(&f, c));
            ensure(f.add(a, b) == f.add(b, a), "addition commutes")?;
            ensure(f.mul(a, b) == f.mul(b, a), "multiplication commutes")?;
            ensure(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)), "addition associates")?;
            ensure(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)), "multiplication associates")?;
            ensure(
                f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)),
                "distributivity",
            )?;
            ensure(f.add(a, f.neg(a)).is_zero(), "additive inverse")?;
            ensure(f.sub(f.add(a, b), b) == a, "subtraction")?;
            ensure(
                f.pow(f.add(a, b), p as u64) == f.add(f.pow(a, p as u64), f.pow(b, p as u64)),
                "Frobenius is additive",
            )?;
            if !a.is_zero() {
                ensure(f.mul(a, f.inv(a)) == Elem::ONE, "multiplicative inverse")?;
                ensure(f.exp(f.log(a).unwrap() as u64) == a, "exp inverts log")?;
                ensure(f.pow(a, f.order() as u64 - 1) == Elem::ONE, "Fermat")?;
            }
            if m % 2 == 0 {
                let (ca, cb) = (f.conjugate(a).unwrap(), f.conjugate(b).unwrap());
                ensure(f.conjugate(f.mul(a, b)).unwrap() == f.mul(ca, cb), "conjugation multiplicative")?;
                ensure(f.conjugate(f.add(a, b)).unwrap() == f.add(ca, cb), "conjugation additive")?;
                ensure(f.conjugate(ca).unwrap() == a, "conjugation is an involution")?;
                ensure(f.in_quadratic_subfield(f.norm(a).unwrap()).unwrap(), "norm lands in the subfield")?;
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn norm_surjectivity() -> Outcome {
    runner()
        .run(&(0..QUADRATIC.len(), any::<u64>()), |(i, t)| {
            let (p, m) = QUADRATIC[i];
            let f = field(p, m).unwrap();
            let q = f.subfield_order().unwrap() as u64;
            // a random nonzero element of GF(q)
            let a = f.exp((t % (q - 1)) * (q + 1));
            ensure(f.in_quadratic_subfield(a).unwrap(), "subfield element")?;
            let x = f.norm_preimage(a).unwrap();
            ensure(f.norm(x).unwrap() == a, "norm of the preimage")?;
            let image: std::collections::BTreeSet<Elem> = f.elements().map(|x| f.norm(x).unwrap()).collect();
            ensure(image.len() as u64 == q, "norm image is the whole subfield")?;
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn random_code() -> impl Strategy<Value = LinearCode> {
    (0..4usize, 1..9usize, 0..6usize, prop::collection::vec(any::<u32>(), 64)).prop_map(|(fi, n, k, raw)| {
        let (p, m) = [(2, 2), (3, 2), (2, 4), (5, 2)][fi];
        let f = field(p, m).unwrap();
        let rows: Vec<Vec<Elem>> = (0..k)
            .map(|r| (0..n).map(|c| elem(&f, raw[(r * n + c) % raw.len()])).collect())
            .collect();
        LinearCode::from_rows(f, n, &rows)
    })
}

pub fn dual_involution() -> Outcome {
    runner()
        .run(&random_code(), |c| {
            for kind in [DualKind::Euclidean, DualKind::Hermitian] {
                let d = c.dual(kind).unwrap();
                ensure(d.dim() + c.dim() == c.len(), "dimensions add up")?;
                ensure(d.dual(kind).unwrap() == c, "dual of the dual")?;
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn shorten_puncture_duality() -> Outcome {
    runner()
        .run(&(random_code(), any::<u16>()), |(c, mask)| {
            let n = c.len();
            let s: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).take(n - 1).collect();
            for kind in [DualKind::Euclidean, DualKind::Hermitian] {
                let left = c.shorten(&s).unwrap().dual(kind).unwrap();
                let right = c.dual(kind).unwrap().puncture(&s).unwrap();
                ensure(left == right, "shortened dual equals punctured dual")?;
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

struct Pipeline {
    c: LinearCode,
    pc: LinearCode,
}

fn pipelines() -> &'static [Pipeline] {
    static CELL: OnceLock<Vec<Pipeline>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut out = Vec::new();
        for q in 2..=5u32 {
            for d in 2..=q + 1 {
                let c = build_code(&mds_spec(q * q, d).unwrap())
                    .unwrap()
                    .dual(DualKind::Hermitian)
                    .unwrap();
                let pc = puncture_direct(&c).unwrap().base;
                out.push(Pipeline { c, pc });
            }
        }
        out
    })
}

/// `sum_i x_i conj(u_i) v_i` for every pair of basis rows of `c`.
fn twisted_forms_vanish(f: &Arc<FieldTable>, c: &LinearCode, x: &[Elem]) -> bool {
    let small = qmds_core::gf::field_of_order(f.subfield_order().unwrap()).unwrap();
    let emb = qmds_core::gf::embed(&small, f).unwrap();
    let rows = c.rows();
    rows.iter().all(|u| {
        rows.iter().all(|v| {
            let mut acc = Elem::ZERO;
            for i in 0..x.len() {
                let t = f.mul(f.conjugate(u[i]).unwrap(), v[i]);
                let xi = emb.map(x[i]);
                acc = f.add(acc, f.mul(xi, t));
            }
            acc.is_zero()
        })
    })
}

pub fn rescaled_witness_vanishing() -> Outcome {
    let all = pipelines();
    runner()
        .run(&(0..all.len(), prop::collection::vec(any::<u32>(), 32)), |(i, raw)| {
            let Pipeline { c, pc } = &all[i];
            let small = pc.field();
            let msg: Vec<Elem> = (0..pc.dim()).map(|j| elem(small, raw[j % raw.len()])).collect();
            let x = pc.encode(&msg);
            prop_assume!(x.iter().any(|v| !v.is_zero()));
            check(
                ensure(twisted_forms_vanish(c.field(), c, &x), "twisted forms vanish"),
                "witness",
            )?;
            let d = rescale_self_orthogonal(c, &x).map_err(|e| TestCaseError::fail(e.to_string()))?;
            ensure(d.len() == qmds_core::linalg::weight(&x), "rescaled code lives on the support")?;
            ensure(
                d.is_self_orthogonal(DualKind::Hermitian).unwrap(),
                "rescaled code is Hermitian self-orthogonal",
            )?;
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn registry_singleton() -> Outcome {
    let records = literature_records();
    let mut reg = Registry::with_literature();
    let text = reg.to_jsonl();
    if Registry::from_jsonl(&text).ok().map(|r| r.to_jsonl()) != Some(text) {
        return Err("registry does not round-trip".into());
    }
    runner()
        .run(&(0..records.len(), any::<usize>()), |(i, raw)| {
            let rec = &records[i];
            ensure(rec.singleton_slack() >= 0, "record obeys the Singleton bound")?;
            ensure(qmds_check(rec), "literature records are QMDS")?;
            ensure(parse_key(&rec.key()) == Some((rec.q, rec.n, rec.k, rec.d)), "key round-trip")?;
            let s = raw % rec.d;
            let short = shorten_params(rec, s).map_err(|e| TestCaseError::fail(e.to_string()))?;
            ensure(short.n + s == rec.n && short.k == rec.k + s && short.d + s == rec.d, "shortening arithmetic")?;
            ensure(short.singleton_slack() == 0, "shortening keeps QMDS")?;
            ensure(shorten_params(rec, rec.d).is_err(), "cannot shorten to distance zero")?;
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    // derived records join the registry and keep the bound
    for rec in &records {
        for s in 1..rec.d {
            reg.insert(shorten_params(rec, s).map_err(|e| e.to_string())?);
        }
    }
    let bad = reg.iter().find(|r| r.singleton_slack() < 0).map(|r| r.to_string());
    match bad {
        Some(r) => Err(format!("{r} violates the Singleton bound")),
        None => Ok(()),
    }
}

#[allow(dead_code)] // the acceptance run iterates this list
pub fn all() -> Vec<(&'static str, fn() -> Outcome)> {
    vec![
        ("field axioms", field_axioms as fn() -> Outcome),
        ("dual involution", dual_involution),
        ("shorten/puncture duality", shorten_puncture_duality),
        ("norm surjectivity", norm_surjectivity),
        ("rescaled witnesses vanish", rescaled_witness_vanishing),
        ("registry Singleton arithmetic", registry_singleton),
    ]
}
