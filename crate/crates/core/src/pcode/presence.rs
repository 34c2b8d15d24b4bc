use std::ops::{ControlFlow, RangeInclusive};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::gf::{Elem, FieldTable};
use crate::linalg::search::{binomial, for_each_projective, lex_rank, projective_count, Leaf, SubsetScan};
use crate::linalg::{weight, Budget, LinearCode, Matrix};

use super::{PcodeError, PunctureCode};

/// Attempts at random combinations inside one support before falling back
/// to exhaustive enumeration of the support's subcode.
const LEAF_TRIES: usize = 2048;
/// Largest number of projective points enumerated inside one support.
const LEAF_ENUMERATE: u128 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    FoundWitness(Vec<Elem>),
    ProvenAbsent,
    UnknownWithinBudget,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::FoundWitness(_) => "FoundWitness",
            Verdict::ProvenAbsent => "ProvenAbsent",
            Verdict::UnknownWithinBudget => "UnknownWithinBudget",
        }
    }

    pub fn witness(&self) -> Option<&[Elem]> {
        match self {
            Verdict::FoundWitness(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMethod {
    Enumeration,
    SupportScan,
    Sampling,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Effort {
    pub method: SearchMethod,
    /// Supports examined by the scan (or codewords by the enumeration).
    pub subsets: u64,
    pub samples: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresenceResult {
    pub weight: usize,
    pub verdict: Verdict,
    pub effort: Effort,
}

/// Serialized witness for a weight-`weight` word of `P(C)`; coordinates are
/// zero-based and values are integer element encodings over GF(q).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFile {
    pub q: u32,
    pub d: u32,
    pub n: usize,
    pub weight: usize,
    pub support: Vec<usize>,
    pub values: Vec<u16>,
    pub seed: u64,
}

impl WitnessFile {
    pub fn new(q: u32, d: u32, word: &[Elem], seed: u64) -> WitnessFile {
        let support: Vec<usize> = (0..word.len()).filter(|&t| !word[t].is_zero()).collect();
        WitnessFile {
            q,
            d,
            n: word.len(),
            weight: support.len(),
            values: support.iter().map(|&t| word[t].value()).collect(),
            support,
            seed,
        }
    }

    /// The full-length word; `None` if the file is internally inconsistent.
    pub fn word(&self) -> Option<Vec<Elem>> {
        if self.support.len() != self.values.len()
            || self.support.len() != self.weight
            || self.values.iter().any(|&v| v == 0 || v as u32 >= self.q)
        {
            return None;
        }
        let mut out = vec![Elem::ZERO; self.n];
        for (&t, &v) in self.support.iter().zip(&self.values) {
            *out.get_mut(t)? = Elem::new(v);
        }
        (weight(&out) == self.weight).then_some(out)
    }
}

enum LeafOutcome {
    Found(Vec<Elem>),
    Absent,
    Inconclusive,
}

fn saturate(x: u128) -> u64 {
    x.min(u64::MAX as u128) as u64
}

/// Looks for a word of full support in the span of `basis` (each of length
/// `w`), deterministically for a given `seed`.
fn full_support_in_span(f: &FieldTable, basis: &[Vec<Elem>], seed: u64) -> LeafOutcome {
    let delta = basis.len();
    if delta == 0 {
        return LeafOutcome::Absent;
    }
    let w = basis[0].len();
    if (0..w).any(|j| basis.iter().all(|b| b[j].is_zero())) {
        return LeafOutcome::Absent;
    }
    if let Some(b) = basis.iter().find(|b| weight(b) == w) {
        return LeafOutcome::Found(b.clone());
    }
    let q = f.order();
    if q == 2 {
        // the all-ones word is the only candidate
        let ones = vec![Elem::ONE; w];
        let span = LinearCode::from_rows(
            crate::gf::field_of_order(2).expect("GF(2)"),
            w,
            basis,
        );
        return if span.contains(&ones) {
            LeafOutcome::Found(ones)
        } else {
            LeafOutcome::Absent
        };
    }
    let combine = |coef: &[Elem]| -> Vec<Elem> {
        let mut out = vec![Elem::ZERO; w];
        for (c, b) in coef.iter().zip(basis) {
            if c.is_zero() {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(b) {
                *o = f.add(*o, f.mul(*c, x));
            }
        }
        out
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coef = vec![Elem::ZERO; delta];
    for _ in 0..LEAF_TRIES {
        for c in coef.iter_mut() {
            *c = Elem::new(rng.gen_range(0..q) as u16);
        }
        let v = combine(&coef);
        if weight(&v) == w {
            return LeafOutcome::Found(v);
        }
    }
    if projective_count(q, delta, delta) <= LEAF_ENUMERATE {
        let mut found = None;
        for_each_projective(f, basis, delta, |v| {
            if weight(v) == w {
                found = Some(v.to_vec());
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        return match found {
            Some(v) => LeafOutcome::Found(v),
            None => LeafOutcome::Absent,
        };
    }
    LeafOutcome::Inconclusive
}

fn leaf_seed(seed: u64, rank: u128) -> u64 {
    seed ^ (rank as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn leaf_basis(leaf: &Leaf) -> Vec<Vec<Elem>> {
    (0..leaf.dim()).map(|i| leaf.relation(i).to_vec()).collect()
}

fn spread(n: usize, support: &[usize], values: &[Elem]) -> Vec<Elem> {
    let mut out = vec![Elem::ZERO; n];
    for (&t, &v) in support.iter().zip(values) {
        out[t] = v;
    }
    out
}

fn check_weight(p: &PunctureCode, w: usize) -> Result<(), PcodeError> {
    if w == 0 || w > p.len() {
        return Err(PcodeError::BadWeight { w, n: p.len() });
    }
    Ok(())
}

/// Whether `P` has a word of weight exactly `w`. Absence is only reported
/// after an exhaustive enumeration or a complete support scan.
pub fn weight_present(p: &PunctureCode, w: usize, budget: &Budget) -> Result<PresenceResult, PcodeError> {
    check_weight(p, w)?;
    let c = &p.base;
    let (n, k) = (c.len(), c.dim());
    let q = c.field().order();
    let count = projective_count(q, k, k);
    if count <= budget.enumerate as u128 {
        let mut found = None;
        let mut visited = 0u64;
        for_each_projective(c.field(), &c.rows(), k, |v| {
            visited += 1;
            if weight(v) == w {
                found = Some(v.to_vec());
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        return Ok(PresenceResult {
            weight: w,
            verdict: found.map_or(Verdict::ProvenAbsent, Verdict::FoundWitness),
            effort: Effort {
                method: SearchMethod::Enumeration,
                subsets: visited,
                samples: 0,
                seed: budget.seed,
            },
        });
    }
    let mut scanned = None;
    if binomial(n, w).saturating_mul((k.max(1) as u128).pow(3)) <= budget.support as u128 {
        let r = support_scan(c, w, budget.seed);
        match r.verdict {
            Verdict::UnknownWithinBudget => scanned = Some(r.effort.subsets),
            _ => return Ok(r),
        }
    }
    let mut r = if w + k <= n { sample_information_sets(c, w, budget) } else { sample(c, w, budget) };
    if let Some(s) = scanned {
        r.effort.subsets = s;
    }
    Ok(r)
}

fn support_scan(c: &LinearCode, w: usize, seed: u64) -> PresenceResult {
    let n = c.len();
    let f = c.field();
    let h = c.parity_check();
    let scan = SubsetScan::new(&h);
    let inconclusive = std::sync::atomic::AtomicBool::new(false);
    let hit = scan.find_first(w, |leaf| {
        let rank = lex_rank(n, leaf.support);
        match full_support_in_span(f, &leaf_basis(leaf), leaf_seed(seed, rank)) {
            LeafOutcome::Found(v) => Some(v),
            LeafOutcome::Absent => None,
            LeafOutcome::Inconclusive => {
                inconclusive.store(true, std::sync::atomic::Ordering::Relaxed);
                None
            }
        }
    });
    let total = saturate(binomial(n, w));
    let (verdict, subsets) = match hit {
        Some((support, values)) => (
            Verdict::FoundWitness(spread(n, &support, &values)),
            saturate(lex_rank(n, &support) + 1),
        ),
        None if inconclusive.into_inner() => (Verdict::UnknownWithinBudget, total),
        None => (Verdict::ProvenAbsent, total),
    };
    PresenceResult {
        weight: w,
        verdict,
        effort: Effort {
            method: SearchMethod::SupportScan,
            subsets,
            samples: 0,
            seed,
        },
    }
}

/// Random `w`-supports; the first sample (by index) carrying a word of
/// full support wins, so the result is independent of scheduling.
fn sample(c: &LinearCode, w: usize, budget: &Budget) -> PresenceResult {
    let n = c.len();
    let f = c.field();
    let h = c.parity_check();
    let hit = (0..budget.samples).into_par_iter().find_map_first(|i| {
        let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
        rng.set_stream(i);
        let mut support = rand::seq::index::sample(&mut rng, n, w).into_vec();
        support.sort_unstable();
        let sub: Matrix = h.select_columns(&support);
        let kernel = sub.kernel();
        let basis = kernel.row_vecs();
        match full_support_in_span(f, &basis, rng.gen()) {
            LeafOutcome::Found(v) => Some((i, spread(n, &support, &v))),
            _ => None,
        }
    });
    let (verdict, samples) = match hit {
        Some((i, word)) => (Verdict::FoundWitness(word), i + 1),
        None => (Verdict::UnknownWithinBudget, budget.samples),
    };
    PresenceResult {
        weight: w,
        verdict,
        effort: Effort {
            method: SearchMethod::Sampling,
            subsets: 0,
            samples,
            seed: budget.seed,
        },
    }
}

/// Low weights: each sample row-reduces the generator over a random column
/// order and tries every row and every two-row combination. A `w`-support
/// with `w <= n - k` carries no word for a random choice, so the support
/// sampler is useless there.
fn sample_information_sets(c: &LinearCode, w: usize, budget: &Budget) -> PresenceResult {
    let n = c.len();
    let f = c.field();
    let units: Vec<Elem> = f.elements().filter(|x| !x.is_zero()).collect();
    let hit = (0..budget.samples).into_par_iter().find_map_first(|i| {
        let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
        rng.set_stream(i);
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let mut g = c.generator().clone();
        g.rref_in_order(&order);
        let rows = g.row_vecs();
        if let Some(r) = rows.iter().find(|r| weight(r) == w) {
            return Some((i, r.clone()));
        }
        let mut v = vec![Elem::ZERO; n];
        for (a, ra) in rows.iter().enumerate() {
            for rb in &rows[a + 1..] {
                for &lam in &units {
                    for ((o, &x), &y) in v.iter_mut().zip(ra).zip(rb) {
                        *o = f.add(x, f.mul(lam, y));
                    }
                    if weight(&v) == w {
                        return Some((i, v));
                    }
                }
            }
        }
        None
    });
    let (verdict, samples) = match hit {
        Some((i, word)) => (Verdict::FoundWitness(word), i + 1),
        None => (Verdict::UnknownWithinBudget, budget.samples),
    };
    PresenceResult {
        weight: w,
        verdict,
        effort: Effort {
            method: SearchMethod::Sampling,
            subsets: 0,
            samples,
            seed: budget.seed,
        },
    }
}

/// One result per weight in `range` (clipped to `1..=n`). A single
/// enumeration pass serves every weight when the code is small enough.
pub fn weight_spectrum(
    p: &PunctureCode,
    range: RangeInclusive<usize>,
    budget: &Budget,
) -> Vec<PresenceResult> {
    let n = p.len();
    let lo = (*range.start()).max(1);
    let hi = (*range.end()).min(n);
    if lo > hi {
        return Vec::new();
    }
    let c = &p.base;
    let k = c.dim();
    let q = c.field().order();
    if projective_count(q, k, k) <= budget.enumerate as u128 {
        let mut first: Vec<Option<Vec<Elem>>> = vec![None; n + 1];
        let mut visited = 0u64;
        for_each_projective(c.field(), &c.rows(), k, |v| {
            visited += 1;
            let wt = weight(v);
            if first[wt].is_none() {
                first[wt] = Some(v.to_vec());
            }
            ControlFlow::Continue(())
        });
        return (lo..=hi)
            .map(|w| PresenceResult {
                weight: w,
                verdict: first[w].take().map_or(Verdict::ProvenAbsent, Verdict::FoundWitness),
                effort: Effort {
                    method: SearchMethod::Enumeration,
                    subsets: visited,
                    samples: 0,
                    seed: budget.seed,
                },
            })
            .collect();
    }
    (lo..=hi)
        .map(|w| weight_present(p, w, budget).expect("weight in range"))
        .collect()
}
