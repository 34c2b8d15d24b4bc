//! The puncture code `P(C)` of a code `C` over GF(q^2): all weightings
//! `x` over GF(q) with `sum_t x_t conj(c_t) c'_t = 0` for every `c, c'` in `C`.

mod presence;

pub use presence::{weight_present, weight_spectrum, Effort, PresenceResult, SearchMethod, Verdict, WitnessFile};

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ccodes::{build_code, CcodeError, ConstacyclicSpec, SpecDescriptor};
use crate::gf::{embed, field_of_order, Elem, FieldTable, GfError, MAX_ORDER};
use crate::linalg::{subfield_kernel, DualKind, LinalgError, LinearCode, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PcodeError {
    #[error("the code does not live over a quadratic extension")]
    NotQuadraticTower,
    #[error("the weighting is not a word of the puncture code")]
    NotInPunctureCode,
    #[error("the weighting is the zero word")]
    ZeroWord,
    #[error("weight {w} is outside 1..={n}")]
    BadWeight { w: usize, n: usize },
    #[error("GF({0}) exceeds the field size limit")]
    TowerTooLarge(u64),
    #[error("rescaled code is not Hermitian self-orthogonal")]
    NotSelfOrthogonal,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Ccode(#[from] CcodeError),
}

impl From<GfError> for PcodeError {
    fn from(e: GfError) -> Self {
        match e {
            GfError::NotQuadraticTower(_) => PcodeError::NotQuadraticTower,
            other => PcodeError::Linalg(LinalgError::Gf(other)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Direct,
    Spectral,
}

/// `P(C)` together with how it was obtained.
#[derive(Debug, Clone)]
pub struct PunctureCode {
    pub base: LinearCode,
    pub route: Route,
    /// Defining-set description of the parent, when it has one.
    pub parent: Option<SpecDescriptor>,
    /// The (consta)cyclic spec of `P(C)` itself on the spectral route.
    pub spec: Option<ConstacyclicSpec>,
}

impl PunctureCode {
    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn field(&self) -> &Arc<FieldTable> {
        self.base.field()
    }
}

/// GF(q) for a code over GF(q^2).
pub fn subfield_of(c: &LinearCode) -> Result<Arc<FieldTable>, PcodeError> {
    let q = c.field().subfield_order()?;
    Ok(field_of_order(q)?)
}

/// Generators `conj(b_i) * b_j` of the span of all twisted products.
fn product_rows(c: &LinearCode) -> Result<Vec<Vec<Elem>>, PcodeError> {
    let f = c.field();
    let rows = c.rows();
    let conj: Vec<Vec<Elem>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| f.conjugate(x)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()?;
    let mut out = Vec::with_capacity(rows.len() * rows.len());
    for a in &conj {
        for b in &rows {
            out.push(a.iter().zip(b).map(|(&x, &y)| f.mul(x, y)).collect());
        }
    }
    Ok(out)
}

/// `P(C)` computed from a basis of `C`: the subfield subcode of the
/// Euclidean dual of the span of twisted products.
pub fn puncture_direct(c: &LinearCode) -> Result<PunctureCode, PcodeError> {
    let small = subfield_of(c)?;
    let emb = embed(&small, c.field())?;
    let span = LinearCode::from_rows(c.field().clone(), c.len(), &product_rows(c)?);
    let base = subfield_kernel(span.generator(), &emb)?;
    Ok(PunctureCode {
        base,
        route: Route::Direct,
        parent: None,
        spec: None,
    })
}

/// Spec over GF(q) of `P(C)` where `spec` describes `C*` over GF(q^2) and `C`
/// is its Hermitian dual. Zeros `beta' alpha^i` with `beta' = beta^{q(q+1)}`
/// and `i` in `{a q^2 + b q : a, b in Z}`, closed under Frobenius.
pub fn spectral_spec(spec: &ConstacyclicSpec) -> Result<ConstacyclicSpec, PcodeError> {
    let big = spec.alphabet();
    let q = big.subfield_order()?;
    let q4 = (q as u64).pow(4);
    if q4 > MAX_ORDER as u64 {
        return Err(PcodeError::TowerTooLarge(q4));
    }
    let small = field_of_order(q)?;
    let root = field_of_order(q4 as u32)?;
    let emb = Arc::new(embed(&small, big)?.then(&*embed(big, &root)?)?);
    let n = spec.len();
    let (qq, nn) = (q as u64, n as u64);
    let r = root.order() as u64 - 1;
    let beta_t = root.pow(spec.beta(), qq * (qq + 1));
    let shift = root.pow(beta_t, nn);
    let shift_small = emb.preimage(shift).ok_or(PcodeError::NotQuadraticTower)?;
    let shift_log = small.log(shift_small).unwrap() as u64;
    let tmp = ConstacyclicSpec::with_embedding(emb.clone(), n, shift_log, std::iter::empty())?;
    // beta_t = beta_canonical * alpha^t
    let step = r / nn;
    let diff = (root.log(beta_t).unwrap() as u64 + r - tmp.beta_log()) % r;
    debug_assert_eq!(diff % step, 0);
    let t = diff / step;
    let z = spec.defining_set();
    let raw = z.iter().flat_map(|&a| {
        z.iter().map(move |&b| ((a as u64 * qq * qq + b as u64 * qq + t) % nn) as usize)
    });
    let closed = tmp.frobenius_closure(raw);
    Ok(ConstacyclicSpec::with_embedding(
        emb,
        n,
        shift_log,
        closed.into_iter().map(|i| i as i64),
    )?)
}

/// `P(C)` from the defining set of `C*`.
pub fn puncture_spectral(spec: &ConstacyclicSpec) -> Result<PunctureCode, PcodeError> {
    let pspec = spectral_spec(spec)?;
    let base = build_code(&pspec)?;
    Ok(PunctureCode {
        base,
        route: Route::Spectral,
        parent: Some(spec.descriptor()),
        spec: Some(pspec),
    })
}

/// Whether `x` (over GF(q)) annihilates every twisted product of `C`.
pub fn in_puncture_code(c: &LinearCode, x: &[Elem]) -> Result<bool, PcodeError> {
    if x.len() != c.len() {
        return Err(LinalgError::LengthMismatch.into());
    }
    let small = subfield_of(c)?;
    let emb = embed(&small, c.field())?;
    let f = c.field();
    let lifted: Vec<Elem> = x.iter().map(|&v| emb.map(v)).collect();
    Ok(product_rows(c)?.iter().all(|p| {
        p.iter()
            .zip(&lifted)
            .fold(Elem::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            .is_zero()
    }))
}

/// The code `{(y_t c_t)_{t in supp x} : c in C}` with `y_t^{q+1} = x_t`,
/// which is Hermitian self-orthogonal whenever `x` lies in `P(C)`.
pub fn rescale_self_orthogonal(c: &LinearCode, x: &[Elem]) -> Result<LinearCode, PcodeError> {
    if x.iter().all(|v| v.is_zero()) {
        return Err(PcodeError::ZeroWord);
    }
    if !in_puncture_code(c, x)? {
        return Err(PcodeError::NotInPunctureCode);
    }
    let f = c.field();
    let small = subfield_of(c)?;
    let emb = embed(&small, f)?;
    let supp: Vec<usize> = (0..x.len()).filter(|&t| !x[t].is_zero()).collect();
    let y: Vec<Elem> = supp
        .iter()
        .map(|&t| f.norm_preimage(emb.map(x[t])))
        .collect::<Result<_, _>>()?;
    let g = c.generator().select_columns(&supp);
    let mut scaled = Matrix::zeros(f.clone(), g.rows(), supp.len());
    for r in 0..g.rows() {
        for (j, &yj) in y.iter().enumerate() {
            scaled.set(r, j, f.mul(g.get(r, j), yj));
        }
    }
    let d = LinearCode::from_generator(&scaled);
    if !d.is_self_orthogonal(DualKind::Hermitian)? {
        return Err(PcodeError::NotSelfOrthogonal);
    }
    Ok(d)
}
