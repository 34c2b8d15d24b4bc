//! Exhaustive kernels shared by the distance and weight-presence searches:
//! projective codeword enumeration and a lexicographic scan over column
//! subsets with incremental elimination.

use std::ops::ControlFlow;

use rayon::prelude::*;

use crate::gf::{Elem, FieldTable};

use super::Matrix;

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Number of `w`-subsets of `0..n` preceding `subset` in lexicographic order.
pub fn lex_rank(n: usize, subset: &[usize]) -> u128 {
    let w = subset.len();
    let mut rank = 0u128;
    let mut prev: Option<usize> = None;
    for (i, &s) in subset.iter().enumerate() {
        let from = prev.map_or(0, |p| p + 1);
        for v in from..s {
            rank = rank.saturating_add(binomial(n - v - 1, w - i - 1));
        }
        prev = Some(s);
    }
    rank
}

/// Number of codewords visited by [`for_each_projective`].
pub fn projective_count(q: u32, k: usize, lead_block: usize) -> u128 {
    let q = q as u128;
    (0..lead_block).fold(0u128, |acc, lead| {
        let free = (k - lead - 1) as u32;
        acc.saturating_add(q.checked_pow(free).unwrap_or(u128::MAX))
    })
}

/// Visits one representative of every projective point of the span of
/// `rows` whose leading nonzero message coordinate (which is set to one) lies
/// in `0..lead_block`. Returns `false` if the visitor stopped early.
pub fn for_each_projective(
    field: &FieldTable,
    rows: &[Vec<Elem>],
    lead_block: usize,
    mut visit: impl FnMut(&[Elem]) -> ControlFlow<()>,
) -> bool {
    let k = rows.len();
    if k == 0 {
        return true;
    }
    let n = rows[0].len();
    let q = field.order() as usize;
    // step[v] = elem(v+1 mod q) - elem(v), so stepping a digit is one row add
    let step: Vec<Elem> = (0..q)
        .map(|v| field.sub(Elem::new(((v + 1) % q) as u16), Elem::new(v as u16)))
        .collect();
    let diff: Vec<Vec<Elem>> = rows
        .iter()
        .flat_map(|row| {
            step.iter()
                .map(|&s| row.iter().map(|&x| field.mul(s, x)).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        })
        .collect();
    let mut digits = vec![0usize; k];
    for lead in 0..lead_block.min(k) {
        let mut cw = rows[lead].clone();
        digits.iter_mut().for_each(|d| *d = 0);
        loop {
            if visit(&cw).is_break() {
                return false;
            }
            let mut j = k;
            let mut wrapped = true;
            while j > lead + 1 {
                j -= 1;
                let v = digits[j];
                let d = &diff[j * q + v];
                for t in 0..n {
                    cw[t] = field.add(cw[t], d[t]);
                }
                digits[j] = (v + 1) % q;
                if digits[j] != 0 {
                    wrapped = false;
                    break;
                }
            }
            if wrapped {
                break;
            }
        }
    }
    true
}

/// Incremental echelon state for a prefix of chosen columns: a reduced basis
/// of the spanned column space (each vector with the combination of chosen
/// columns producing it) and a basis of linear relations among them.
#[derive(Clone)]
struct Echelon {
    nb: usize,
    pivots: Vec<usize>,
    vecs: Vec<Elem>,
    combos: Vec<Elem>,
    nk: usize,
    kern: Vec<Elem>,
}

impl Echelon {
    fn new(r: usize, w: usize) -> Echelon {
        Echelon {
            nb: 0,
            pivots: vec![0; w.max(1)],
            vecs: vec![Elem::ZERO; w.max(1) * r],
            combos: vec![Elem::ZERO; w.max(1) * w],
            nk: 0,
            kern: vec![Elem::ZERO; w.max(1) * w],
        }
    }

    fn copy_from(&mut self, other: &Echelon, r: usize, w: usize) {
        self.nb = other.nb;
        self.nk = other.nk;
        self.pivots[..other.nb].copy_from_slice(&other.pivots[..other.nb]);
        self.vecs[..other.nb * r].copy_from_slice(&other.vecs[..other.nb * r]);
        self.combos[..other.nb * w].copy_from_slice(&other.combos[..other.nb * w]);
        self.kern[..other.nk * w].copy_from_slice(&other.kern[..other.nk * w]);
    }

    /// Adds `col` as chosen column number `j`.
    fn push(&mut self, f: &FieldTable, col: &[Elem], j: usize, r: usize, w: usize, scratch: &mut [Elem]) {
        let (v, cmb) = scratch.split_at_mut(r);
        v.copy_from_slice(col);
        cmb.iter_mut().for_each(|x| *x = Elem::ZERO);
        cmb[j] = Elem::ONE;
        for b in 0..self.nb {
            let x = v[self.pivots[b]];
            if x.is_zero() {
                continue;
            }
            let neg = f.neg(x);
            let u = &self.vecs[b * r..(b + 1) * r];
            for t in 0..r {
                if !u[t].is_zero() {
                    v[t] = f.add(v[t], f.mul(neg, u[t]));
                }
            }
            let c = &self.combos[b * w..(b + 1) * w];
            for t in 0..=j {
                if !c[t].is_zero() {
                    cmb[t] = f.add(cmb[t], f.mul(neg, c[t]));
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => {
                self.kern[self.nk * w..(self.nk + 1) * w].copy_from_slice(cmb);
                self.nk += 1;
            }
            Some(p) => {
                let inv = f.inv(v[p]);
                let dst = &mut self.vecs[self.nb * r..(self.nb + 1) * r];
                for t in 0..r {
                    dst[t] = f.mul(v[t], inv);
                }
                let dst = &mut self.combos[self.nb * w..(self.nb + 1) * w];
                for t in 0..w {
                    dst[t] = f.mul(cmb[t], inv);
                }
                self.pivots[self.nb] = p;
                self.nb += 1;
            }
        }
    }
}

/// A full-size subset reached by [`SubsetScan`], with a basis of the linear
/// relations among its columns (equivalently, of the codewords of the
/// parity-check code supported inside it).
pub struct Leaf<'s> {
    pub support: &'s [usize],
    kern: &'s [Elem],
    dim: usize,
    w: usize,
}

impl Leaf<'_> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Relation `i`, indexed like `support`.
    pub fn relation(&self, i: usize) -> &[Elem] {
        &self.kern[i * self.w..(i + 1) * self.w]
    }

    /// Relation `i` spread to a length-`n` word.
    pub fn word(&self, i: usize, n: usize) -> Vec<Elem> {
        let mut out = vec![Elem::ZERO; n];
        for (&pos, &x) in self.support.iter().zip(self.relation(i)) {
            out[pos] = x;
        }
        out
    }
}

/// Lexicographic scan over the `w`-subsets of the columns of a matrix.
pub struct SubsetScan<'a> {
    field: &'a FieldTable,
    cols: Vec<Vec<Elem>>,
    r: usize,
}

impl<'a> SubsetScan<'a> {
    pub fn new(h: &'a Matrix) -> SubsetScan<'a> {
        SubsetScan {
            field: h.field(),
            cols: (0..h.cols()).map(|c| h.column(c)).collect(),
            r: h.rows(),
        }
    }

    pub fn n(&self) -> usize {
        self.cols.len()
    }

    /// First subset (in lexicographic order) whose leaf makes `check` return
    /// `Some`. The result does not depend on how the work is scheduled.
    pub fn find_first<T, F>(&self, w: usize, check: F) -> Option<(Vec<usize>, T)>
    where
        T: Send,
        F: Fn(&Leaf) -> Option<T> + Sync,
    {
        let n = self.n();
        if w > n {
            return None;
        }
        if w == 0 {
            let leaf = Leaf {
                support: &[],
                kern: &[],
                dim: 0,
                w: 0,
            };
            return check(&leaf).map(|t| (Vec::new(), t));
        }
        let prefixes: Vec<Vec<usize>> = if w == 1 {
            (0..n).map(|i| vec![i]).collect()
        } else {
            (0..=n - w)
                .flat_map(|i| (i + 1..=n - w + 1).map(move |j| vec![i, j]))
                .collect()
        };
        prefixes.par_iter().find_map_first(|prefix| {
            let (r, f) = (self.r, self.field);
            let mut states: Vec<Echelon> = (0..=w).map(|_| Echelon::new(r, w)).collect();
            let mut scratch = vec![Elem::ZERO; r + w];
            let mut support = Vec::with_capacity(w);
            for (j, &c) in prefix.iter().enumerate() {
                let (head, tail) = states.split_at_mut(j + 1);
                tail[0].copy_from(&head[j], r, w);
                tail[0].push(f, &self.cols[c], j, r, w, &mut scratch);
                support.push(c);
            }
            let start = prefix.last().unwrap() + 1;
            self.descend(&mut states, &mut support, &mut scratch, prefix.len(), start, w, &check)
                .map(|t| (support.clone(), t))
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn descend<T, F>(
        &self,
        states: &mut [Echelon],
        support: &mut Vec<usize>,
        scratch: &mut [Elem],
        depth: usize,
        start: usize,
        w: usize,
        check: &F,
    ) -> Option<T>
    where
        F: Fn(&Leaf) -> Option<T>,
    {
        if depth == w {
            let s = &states[w];
            let leaf = Leaf {
                support,
                kern: &s.kern[..s.nk * w],
                dim: s.nk,
                w,
            };
            return check(&leaf);
        }
        let n = self.n();
        for c in start..=n - (w - depth) {
            {
                let (head, tail) = states.split_at_mut(depth + 1);
                tail[0].copy_from(&head[depth], self.r, w);
                tail[0].push(self.field, &self.cols[c], depth, self.r, w, scratch);
            }
            support.push(c);
            if let Some(t) = self.descend(states, support, scratch, depth + 1, c + 1, w, check) {
                return Some(t);
            }
            support.pop();
        }
        None
    }
}
