//! Cyclic and constacyclic codes given by defining sets, the MDS family of
//! length `Q + 1`, and BCH / Hartmann-Tzeng distance bounds.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{
    embed, field_of_order, gcd, poly_from_roots, prime_power, Elem, FieldTable, GfError, Polynomial,
    SubfieldEmbedding,
};
use crate::linalg::{LinearCode, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CcodeError {
    #[error("distance {d} is outside 1..={max} for alphabet {q}")]
    BadDistance { q: u32, d: u32, max: u32 },
    #[error("alphabet {0} is not a supported prime power")]
    UnsupportedAlphabet(u32),
    #[error("length {n} is not compatible with alphabet {q} inside GF({r})")]
    BadLength { q: u32, n: usize, r: u32 },
    #[error("defining set is not closed under Frobenius; the generator does not descend")]
    DescentFailure,
    #[error("shift exponent {0} does not name an element of the alphabet")]
    BadShift(u64),
    #[error(transparent)]
    Gf(#[from] GfError),
}

/// A (consta)cyclic code of length `n` over GF(Q) given by its zeros
/// `beta * alpha^i` for `i` in the defining set. `alpha` is the canonical
/// primitive `n`-th root of unity in the root field and `beta^n` is the shift
/// constant, the `shift_log`-th power of the generator of GF(Q).
#[derive(Clone)]
pub struct ConstacyclicSpec {
    n: usize,
    shift_log: u64,
    defining_set: BTreeSet<usize>,
    emb: Arc<SubfieldEmbedding>,
}

/// Serialized form of a [`ConstacyclicSpec`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecDescriptor {
    #[serde(rename = "Q")]
    pub q: u32,
    pub n: usize,
    pub shift_log: u64,
    pub defining_set: Vec<usize>,
}

impl ConstacyclicSpec {
    /// Spec over `alphabet` whose roots live in the field reached by `emb`.
    pub fn with_embedding(
        emb: Arc<SubfieldEmbedding>,
        n: usize,
        shift_log: u64,
        defining_set: impl IntoIterator<Item = i64>,
    ) -> Result<ConstacyclicSpec, CcodeError> {
        let (q, r) = (emb.small().order(), emb.big().order());
        if n == 0 || (r as u64 - 1) % (n as u64 * (q as u64 - 1)) != 0 {
            return Err(CcodeError::BadLength { q, n, r });
        }
        if shift_log >= (q - 1).max(1) as u64 && shift_log != 0 {
            return Err(CcodeError::BadShift(shift_log));
        }
        let defining_set = defining_set
            .into_iter()
            .map(|i| i.rem_euclid(n as i64) as usize)
            .collect();
        let spec = ConstacyclicSpec {
            n,
            shift_log,
            defining_set,
            emb,
        };
        if !spec.is_galois_stable() {
            return Err(CcodeError::DescentFailure);
        }
        Ok(spec)
    }

    /// Spec with the canonical embedding of GF(`q`) into GF(`q^root_degree`).
    pub fn new(
        q: u32,
        root_degree: u32,
        n: usize,
        shift_log: u64,
        defining_set: impl IntoIterator<Item = i64>,
    ) -> Result<ConstacyclicSpec, CcodeError> {
        let small = alphabet(q)?;
        let big = field_of_order(
            q.checked_pow(root_degree)
                .ok_or(CcodeError::UnsupportedAlphabet(q))?,
        )?;
        let emb = embed(&small, &big)?;
        ConstacyclicSpec::with_embedding(emb, n, shift_log, defining_set)
    }

    pub fn alphabet(&self) -> &Arc<FieldTable> {
        self.emb.small()
    }

    pub fn root_field(&self) -> &Arc<FieldTable> {
        self.emb.big()
    }

    pub fn embedding(&self) -> &Arc<SubfieldEmbedding> {
        &self.emb
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn shift_log(&self) -> u64 {
        self.shift_log
    }

    pub fn is_cyclic(&self) -> bool {
        self.shift_log == 0
    }

    pub fn defining_set(&self) -> &BTreeSet<usize> {
        &self.defining_set
    }

    pub fn dim(&self) -> usize {
        self.n - self.defining_set.len()
    }

    /// Shift constant as an element of the alphabet.
    pub fn shift_constant(&self) -> Elem {
        self.alphabet().exp(self.shift_log)
    }

    /// Discrete log of `beta` in the root field.
    pub fn beta_log(&self) -> u64 {
        let big = self.root_field();
        let l = big.log(self.emb.map(self.shift_constant())).unwrap() as u64;
        l / self.n as u64
    }

    pub fn beta(&self) -> Elem {
        self.root_field().exp(self.beta_log())
    }

    pub fn alpha(&self) -> Elem {
        let big = self.root_field();
        big.exp((big.order() as u64 - 1) / self.n as u64)
    }

    /// `beta * alpha^i`.
    pub fn root(&self, i: usize) -> Elem {
        let big = self.root_field();
        let step = (big.order() as u64 - 1) / self.n as u64;
        big.exp(self.beta_log() + step * i as u64)
    }

    /// Frobenius acts on root exponents as `i -> Q*i + offset (mod n)`.
    pub fn frobenius_offset(&self) -> usize {
        let big = self.root_field();
        let q = self.alphabet().order() as u64;
        let step = (big.order() as u64 - 1) / self.n as u64;
        ((self.beta_log() * (q - 1) / step) % self.n as u64) as usize
    }

    pub fn frobenius(&self, i: usize) -> usize {
        let q = self.alphabet().order() as usize;
        (q % self.n * i + self.frobenius_offset()) % self.n
    }

    fn is_galois_stable(&self) -> bool {
        self.defining_set
            .iter()
            .all(|&i| self.defining_set.contains(&self.frobenius(i)))
    }

    /// Smallest superset of `set` closed under Frobenius.
    pub fn frobenius_closure(&self, set: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for start in set {
            let mut i = start % self.n;
            while out.insert(i) {
                i = self.frobenius(i);
            }
        }
        out
    }

    pub fn generator_poly(&self) -> Result<Polynomial, CcodeError> {
        let roots: Vec<Elem> = self.defining_set.iter().map(|&i| self.root(i)).collect();
        poly_from_roots(self.root_field(), &roots, &self.emb).map_err(|e| match e {
            GfError::NotGaloisStable => CcodeError::DescentFailure,
            other => CcodeError::Gf(other),
        })
    }

    pub fn descriptor(&self) -> SpecDescriptor {
        SpecDescriptor {
            q: self.alphabet().order(),
            n: self.n,
            shift_log: self.shift_log,
            defining_set: self.defining_set.iter().copied().collect(),
        }
    }
}

impl std::fmt::Debug for ConstacyclicSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Spec(Q={}, n={}, shift_log={}, Z={:?}, roots in GF({}))",
            self.alphabet().order(),
            self.n,
            self.shift_log,
            self.defining_set,
            self.root_field().order()
        )
    }
}

fn alphabet(q: u32) -> Result<Arc<FieldTable>, CcodeError> {
    if q > 256 || prime_power(q).is_none() {
        return Err(CcodeError::UnsupportedAlphabet(q));
    }
    Ok(field_of_order(q)?)
}

/// Spec of the `[Q+1, Q+2-d, d]_Q` MDS code: cyclic with zeros
/// `alpha^{-mu..mu}` when `d-1` is odd, cyclic with zeros centred on `Q/2`
/// when `d-1` is even and `Q` is even, and constacyclic with shift
/// `omega^{Q+1}` and zeros `omega * alpha^{1-mu..mu}` otherwise.
pub fn mds_spec(q: u32, d: u32) -> Result<ConstacyclicSpec, CcodeError> {
    let small = alphabet(q)?;
    if d < 1 || d > q + 2 {
        return Err(CcodeError::BadDistance { q, d, max: q + 2 });
    }
    let big = field_of_order(q * q)?;
    let emb = embed(&small, &big)?;
    let n = (q + 1) as usize;
    let (qi, di) = (q as i64, d as i64);
    if (d - 1) % 2 == 1 {
        let mu = (di - 2) / 2;
        ConstacyclicSpec::with_embedding(emb, n, 0, -mu..=mu)
    } else if q % 2 == 0 {
        let mu = (di - 3).div_euclid(2);
        ConstacyclicSpec::with_embedding(emb, n, 0, qi / 2 - mu..=qi / 2 + 1 + mu)
    } else {
        let mu = (di - 1) / 2;
        let shift = big.exp(q as u64 + 1);
        let shift_log = small.log(emb.preimage(shift).unwrap()).unwrap() as u64;
        ConstacyclicSpec::with_embedding(emb, n, shift_log, 1 - mu..=mu)
    }
}

/// Generator matrix with rows `z^j g(z)`, `j < k`.
pub fn build_code(spec: &ConstacyclicSpec) -> Result<LinearCode, CcodeError> {
    let g = spec.generator_poly()?;
    let (n, k) = (spec.len(), spec.dim());
    let f = spec.alphabet().clone();
    let mut m = Matrix::zeros(f.clone(), k, n);
    for j in 0..k {
        for (t, &c) in g.coeffs().iter().enumerate() {
            m.set(j, j + t, c);
        }
    }
    if k == 0 {
        return Ok(LinearCode::zero(f, n));
    }
    Ok(LinearCode::from_generator(&m))
}

/// Best of the BCH bound over all unit multipliers and a Hartmann-Tzeng
/// scan over runs `b + i + j*c` (after normalizing the unit step to one).
pub fn bch_ht_bound(spec: &ConstacyclicSpec) -> usize {
    let n = spec.len();
    let z = spec.defining_set();
    if z.is_empty() {
        return 1;
    }
    if z.len() == n {
        return n + 1;
    }
    let mut best = 1;
    for u in (1..n).filter(|&u| gcd(u as u32, n as u32) == 1) {
        let mut member = vec![false; n];
        for &i in z {
            member[i * u % n] = true;
        }
        for b in 0..n {
            let run = (0..n).take_while(|&i| member[(b + i) % n]).count();
            if run == 0 {
                continue;
            }
            best = best.max(run + 1);
            for len in 1..=run {
                let delta = len + 1;
                for c in 1..n {
                    if gcd(c as u32, n as u32) as usize >= delta {
                        continue;
                    }
                    let s = (1..n)
                        .take_while(|&j| (0..len).all(|i| member[(b + i + j * c) % n]))
                        .count();
                    best = best.max(delta + s);
                }
            }
        }
    }
    best.min(z.len() + 1)
}
