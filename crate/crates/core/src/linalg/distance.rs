use std::ops::ControlFlow;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::gf::Elem;

use super::search::{binomial, for_each_projective, projective_count, SubsetScan};
use super::{weight, LinalgError, LinearCode, Matrix};

/// Work limits for the exhaustive and randomized searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Maximum number of projective codewords to enumerate.
    pub enumerate: u64,
    /// Maximum `C(n, w) * k^3` per support-scan level.
    pub support: u64,
    /// Number of random samples once exhaustive modes are out of reach.
    pub samples: u64,
    pub seed: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            enumerate: 1_000_000,
            support: 10_000_000_000,
            samples: 1_000_000,
            seed: 0xC0DE,
        }
    }
}

impl Budget {
    pub(crate) fn enumeration_fits(&self, count: u128) -> bool {
        count <= self.enumerate as u128
    }

    pub(crate) fn support_level_fits(&self, n: usize, w: usize, k: usize) -> bool {
        let k3 = (k.max(1) as u128).pow(3);
        binomial(n, w).saturating_mul(k3) <= self.support as u128
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceStatus {
    Exact,
    /// Only `proven_lower <= d <= weight` is known.
    LowerBoundOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceMethod {
    Enumeration,
    MdsCheck,
    SupportScan,
    Sampling,
}

/// Outcome of a minimum-weight computation. `weight` is the weight of
/// `witness`; it equals the distance when the status is exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinWeight {
    pub weight: usize,
    pub witness: Vec<Elem>,
    pub status: DistanceStatus,
    pub proven_lower: usize,
    pub method: DistanceMethod,
}

impl MinWeight {
    pub fn is_exact(&self) -> bool {
        self.status == DistanceStatus::Exact
    }

    fn exact(witness: Vec<Elem>, method: DistanceMethod) -> MinWeight {
        let w = weight(&witness);
        MinWeight {
            weight: w,
            witness,
            status: DistanceStatus::Exact,
            proven_lower: w,
            method,
        }
    }
}

/// Minimum weight of `c`, by the first mode that fits the budget:
/// projective enumeration, the MDS rank check, a rising-weight support scan,
/// and finally seeded sampling (which only bounds the distance).
pub fn min_weight(c: &LinearCode, budget: &Budget) -> Result<MinWeight, LinalgError> {
    let k = c.dim();
    if k == 0 {
        return Err(LinalgError::ZeroDimensional);
    }
    let n = c.len();
    let q = c.field().order();
    if budget.enumeration_fits(projective_count(q, k, k)) {
        let mut best: Option<Vec<Elem>> = None;
        for_each_projective(c.field(), &c.rows(), k, |cw| {
            if best.as_ref().is_none_or(|b| weight(cw) < weight(b)) {
                best = Some(cw.to_vec());
            }
            ControlFlow::Continue(())
        });
        return Ok(MinWeight::exact(best.unwrap(), DistanceMethod::Enumeration));
    }
    let m = k.min(n - k);
    if budget.support_level_fits(n, m, m) && mds_verify(c) {
        // a reduced row has k-1 zeros at the other pivots
        return Ok(MinWeight::exact(c.generator().row(0).to_vec(), DistanceMethod::MdsCheck));
    }
    let mut best = lightest_row(c);
    let h = c.parity_check();
    let scan = SubsetScan::new(&h);
    let mut lower = 1;
    while lower < weight(&best) {
        if !budget.support_level_fits(n, lower, k) {
            break;
        }
        if let Some((_, word)) = scan.find_first(lower, |leaf| (leaf.dim() > 0).then(|| leaf.word(0, n))) {
            // nothing lighter survived the previous levels
            return Ok(MinWeight::exact(word, DistanceMethod::SupportScan));
        }
        lower += 1;
    }
    if lower >= weight(&best) {
        return Ok(MinWeight::exact(best, DistanceMethod::SupportScan));
    }
    if let Some(sampled) = sample_light_word(c, budget) {
        if weight(&sampled) < weight(&best) {
            best = sampled;
        }
    }
    let w = weight(&best);
    Ok(MinWeight {
        weight: w,
        witness: best,
        status: if lower >= w {
            DistanceStatus::Exact
        } else {
            DistanceStatus::LowerBoundOnly
        },
        proven_lower: lower,
        method: DistanceMethod::Sampling,
    })
}

fn lightest_row(c: &LinearCode) -> Vec<Elem> {
    c.rows().into_iter().min_by_key(|r| weight(r)).unwrap()
}

/// Lightest row seen over `budget.samples` random information sets; ties go
/// to the earliest sample so the result does not depend on scheduling.
fn sample_light_word(c: &LinearCode, budget: &Budget) -> Option<Vec<Elem>> {
    let n = c.len();
    (0..budget.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
            rng.set_stream(i);
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            let mut g = c.generator().clone();
            g.rref_in_order(&order);
            let row = (0..g.rows())
                .map(|r| g.row(r).to_vec())
                .min_by_key(|r| weight(r))
                .unwrap();
            (weight(&row), i, row)
        })
        .min_by_key(|(w, i, _)| (*w, *i))
        .map(|(_, _, row)| row)
}

/// Minimum weight over `big \ sub`. Exhaustive only: enumeration of the
/// cosets' projective representatives, or a rising-weight support scan.
pub fn min_weight_relative(
    big: &LinearCode,
    sub: &LinearCode,
    budget: &Budget,
) -> Result<MinWeight, LinalgError> {
    if !sub.is_subcode_of(big) {
        return Err(LinalgError::NotASubcode);
    }
    if sub.dim() == big.dim() {
        return Err(LinalgError::DistanceUndefined);
    }
    let n = big.len();
    let q = big.field().order();
    let extension = extension_rows(big, sub);
    let count = projective_count(q, big.dim(), extension.len());
    if budget.enumeration_fits(count) {
        let mut rows = extension.clone();
        rows.extend(sub.rows());
        let mut best: Option<Vec<Elem>> = None;
        for_each_projective(big.field(), &rows, extension.len(), |cw| {
            if best.as_ref().is_none_or(|b| weight(cw) < weight(b)) {
                best = Some(cw.to_vec());
            }
            ControlFlow::Continue(())
        });
        return Ok(MinWeight::exact(best.unwrap(), DistanceMethod::Enumeration));
    }
    let h = big.parity_check();
    let scan = SubsetScan::new(&h);
    for w in 1..=n {
        if !budget.support_level_fits(n, w, big.dim()) {
            return Err(LinalgError::BudgetExceeded { lower: w });
        }
        let hit = scan.find_first(w, |leaf| {
            (0..leaf.dim())
                .map(|i| leaf.word(i, n))
                .find(|word| !sub.contains(word))
        });
        if let Some((_, word)) = hit {
            return Ok(MinWeight::exact(word, DistanceMethod::SupportScan));
        }
    }
    unreachable!("a word outside the subcode exists")
}

/// Rows of `big` that extend a basis of `sub` to a basis of `big`.
fn extension_rows(big: &LinearCode, sub: &LinearCode) -> Vec<Vec<Elem>> {
    let mut acc = sub.clone();
    let mut out = Vec::new();
    for row in big.rows() {
        if !acc.contains(&row) {
            out.push(row.clone());
            let mut rows = acc.rows();
            rows.push(row);
            acc = LinearCode::from_rows(big.field().clone(), big.len(), &rows);
        }
    }
    out
}

/// True iff `c` meets the Singleton bound, decided by checking that every
/// `min(k, n-k)` columns on the cheaper side (generator or parity check) are
/// independent.
pub fn mds_verify(c: &LinearCode) -> bool {
    let (n, k) = (c.len(), c.dim());
    if k == 0 || k == n {
        return true;
    }
    let (m, w): (Matrix, usize) = if k <= n - k {
        (c.generator().clone(), k)
    } else {
        (c.parity_check(), n - k)
    };
    SubsetScan::new(&m)
        .find_first(w, |leaf| (leaf.dim() > 0).then_some(()))
        .is_none()
}
