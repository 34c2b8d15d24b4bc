use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::GfError;

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

const ADD_TABLE_LIMIT: u32 = 1024;
const MUL_TABLE_LIMIT: u32 = 256;

/// An element of a [`FieldTable`], stored as the base-`p` packing of its
/// coefficient vector over the prime field (`0` is the zero element, `1` is one).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(u16);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub const fn new(value: u16) -> Elem {
        Elem(value)
    }

    #[inline]
    pub fn value(self) -> u16 {
        self.0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Serializable identity of a field: characteristic, degree and the
/// low-to-high coefficients of the defining polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
}

/// Exact arithmetic tables for GF(p^m).
///
/// The defining polynomial is the lexicographically smallest primitive
/// polynomial of degree `m` (coefficients compared from `x^(m-1)` down to the
/// constant term), so the class of `x` is a primitive element and every table
/// is reproducible.
pub struct FieldTable {
    p: u32,
    m: u32,
    order: u32,
    modulus: Vec<u32>,
    exp: Vec<Elem>,
    log: Vec<u32>,
    neg: Vec<Elem>,
    add: Option<Vec<Elem>>,
    mul: Option<Vec<Elem>>,
}

const NO_LOG: u32 = u32::MAX;

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^m` with `p` prime, if possible.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut m = 0;
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

fn digits(mut v: u32, p: u32, m: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(m as usize);
    for _ in 0..m {
        out.push(v % p);
        v /= p;
    }
    out
}

fn pack(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Multiplies the packed element `v` by `x` modulo the monic polynomial whose
/// lower coefficients are `low`.
fn times_x(v: u32, p: u32, m: u32, low: &[u32]) -> u32 {
    let mut ds = digits(v, p, m);
    let top = ds[m as usize - 1];
    for i in (1..m as usize).rev() {
        ds[i] = ds[i - 1];
    }
    ds[0] = 0;
    if top != 0 {
        for i in 0..m as usize {
            ds[i] = (ds[i] + (p - top) * low[i]) % p;
        }
    }
    pack(&ds, p)
}

impl FieldTable {
    /// Builds GF(p^m) from scratch (uncached). Prefer [`field`] for shared instances.
    pub fn build(p: u32, m: u32) -> Result<FieldTable, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if m == 0 {
            return Err(GfError::TooLarge { p, m });
        }
        let order = (p as u64)
            .checked_pow(m)
            .filter(|&o| o <= MAX_ORDER as u64)
            .ok_or(GfError::TooLarge { p, m })? as u32;
        let units = order - 1;

        let mut log = vec![NO_LOG; order as usize];
        let mut powers = Vec::with_capacity(units as usize);
        let mut chosen = None;
        for candidate in 0..order {
            let low = digits(candidate, p, m);
            if low[0] == 0 {
                continue;
            }
            powers.clear();
            log.iter_mut().for_each(|l| *l = NO_LOG);
            let mut cur = 1u32;
            let mut ok = true;
            for i in 0..units {
                if log[cur as usize] != NO_LOG {
                    ok = false;
                    break;
                }
                log[cur as usize] = i;
                powers.push(cur);
                cur = times_x(cur, p, m, &low);
            }
            if ok && cur == 1 {
                chosen = Some(low);
                break;
            }
        }
        // a primitive polynomial of every degree exists
        let mut modulus = chosen.expect("primitive polynomial");
        modulus.push(1);

        let mut exp: Vec<Elem> = powers.iter().map(|&v| Elem(v as u16)).collect();
        exp.extend_from_within(..);

        let neg = (0..order)
            .map(|v| {
                let ds: Vec<u32> = digits(v, p, m).iter().map(|&d| (p - d) % p).collect();
                Elem(pack(&ds, p) as u16)
            })
            .collect();

        let mut table = FieldTable {
            p,
            m,
            order,
            modulus,
            exp,
            log,
            neg,
            add: None,
            mul: None,
        };
        if p != 2 && order <= ADD_TABLE_LIMIT {
            let mut add = Vec::with_capacity((order * order) as usize);
            for a in 0..order {
                for b in 0..order {
                    add.push(table.add_digitwise(Elem(a as u16), Elem(b as u16)));
                }
            }
            table.add = Some(add);
        }
        if order <= MUL_TABLE_LIMIT {
            let mut mul = Vec::with_capacity((order * order) as usize);
            for a in 0..order {
                for b in 0..order {
                    mul.push(table.mul_logs(Elem(a as u16), Elem(b as u16)));
                }
            }
            table.mul = Some(mul);
        }
        table.self_check();
        Ok(table)
    }

    /// Randomized field-axiom check run once per construction.
    fn self_check(&self) {
        let trials = if self.order <= 256 { 1000 } else { 64 };
        let mut rng = ChaCha8Rng::seed_from_u64(self.order as u64);
        for _ in 0..trials {
            let a = Elem(rng.gen_range(0..self.order) as u16);
            let b = Elem(rng.gen_range(0..self.order) as u16);
            let c = Elem(rng.gen_range(0..self.order) as u16);
            assert_eq!(self.add(a, b), self.add(b, a));
            assert_eq!(self.mul(a, b), self.mul(b, a));
            assert_eq!(
                self.mul(a, self.add(b, c)),
                self.add(self.mul(a, b), self.mul(a, c))
            );
            assert_eq!(self.add(a, self.neg(a)), Elem::ZERO);
            if !a.is_zero() {
                assert_eq!(self.mul(a, self.inv(a)), Elem::ONE);
            }
        }
    }

    fn add_digitwise(&self, a: Elem, b: Elem) -> Elem {
        let (mut x, mut y) = (a.0 as u32, b.0 as u32);
        let mut out = 0u32;
        let mut scale = 1u32;
        for _ in 0..self.m {
            out += ((x % self.p + y % self.p) % self.p) * scale;
            x /= self.p;
            y /= self.p;
            scale *= self.p;
        }
        Elem(out as u16)
    }

    #[inline]
    fn mul_logs(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        self.exp[(self.log[a.index()] + self.log[b.index()]) as usize]
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    /// Number of elements `Q = p^m`.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Defining polynomial, low-to-high, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p,
            m: self.m,
            modulus: self.modulus.clone(),
        }
    }

    /// The canonical primitive element (the class of `x`).
    pub fn generator(&self) -> Elem {
        self.exp[1 % (self.order as usize - 1).max(1)]
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order).map(|v| Elem(v as u16))
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + '_ {
        self.exp[..self.order as usize - 1].iter().copied()
    }

    /// Element with the given integer encoding, if it is in range.
    pub fn elem(&self, value: u32) -> Option<Elem> {
        (value < self.order).then_some(Elem(value as u16))
    }

    /// Prime-field element `c mod p`.
    pub fn from_int(&self, c: i64) -> Elem {
        Elem(c.rem_euclid(self.p as i64) as u16)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            Elem(a.0 ^ b.0)
        } else if let Some(t) = &self.add {
            t[a.index() * self.order as usize + b.index()]
        } else {
            self.add_digitwise(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a.index()]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.mul {
            Some(t) => t[a.index() * self.order as usize + b.index()],
            None => self.mul_logs(a, b),
        }
    }

    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(!a.is_zero(), "inverse of zero");
        let units = self.order - 1;
        self.exp[((units - self.log[a.index()]) % units) as usize]
    }

    #[inline]
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    /// `generator^e`.
    #[inline]
    pub fn exp(&self, e: u64) -> Elem {
        self.exp[(e % (self.order as u64 - 1)) as usize]
    }

    /// Discrete logarithm to the canonical generator; `None` at zero.
    #[inline]
    pub fn log(&self, a: Elem) -> Option<u32> {
        let l = self.log[a.index()];
        (l != NO_LOG).then_some(l)
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        match self.log(a) {
            None => Elem::ZERO,
            Some(l) => self.exp((l as u64 * (e % (self.order as u64 - 1))) % (self.order as u64 - 1)),
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: Elem) -> u32 {
        let units = self.order - 1;
        let l = self.log(a).expect("nonzero element");
        units / gcd(units, l)
    }

    /// `q = sqrt(Q)` when the field is declared as a quadratic extension GF(q^2).
    pub fn subfield_order(&self) -> Result<u32, GfError> {
        if self.m % 2 != 0 {
            return Err(GfError::NotQuadraticTower(self.order));
        }
        Ok(self.p.pow(self.m / 2))
    }

    /// Galois conjugation `x -> x^q` of GF(q^2) over GF(q).
    pub fn conjugate(&self, x: Elem) -> Result<Elem, GfError> {
        let q = self.subfield_order()?;
        Ok(self.pow(x, q as u64))
    }

    /// Relative norm `x -> x^(q+1)` onto the subfield GF(q).
    pub fn norm(&self, x: Elem) -> Result<Elem, GfError> {
        let q = self.subfield_order()?;
        Ok(self.pow(x, q as u64 + 1))
    }

    /// True if `x` lies in the subfield of order `q^2`'s square root.
    pub fn in_quadratic_subfield(&self, x: Elem) -> Result<bool, GfError> {
        let q = self.subfield_order()?;
        Ok(match self.log(x) {
            None => true,
            Some(l) => l % (q + 1) == 0,
        })
    }

    /// The norm preimage of `a` with the smallest discrete logarithm.
    pub fn norm_preimage(&self, a: Elem) -> Result<Elem, GfError> {
        let q = self.subfield_order()?;
        let Some(l) = self.log(a) else {
            return Ok(Elem::ZERO);
        };
        if l % (q + 1) != 0 {
            return Err(GfError::NotInSubfield(a.0 as u32));
        }
        Ok(self.exp(((l / (q + 1)) % (q - 1).max(1)) as u64))
    }
}

impl PartialEq for FieldTable {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for FieldTable {}

impl fmt::Debug for FieldTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.m)
    }
}

impl fmt::Display for FieldTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.order)
    }
}

pub(crate) fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn cache() -> &'static Mutex<HashMap<(u32, u32), Arc<FieldTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<FieldTable>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Shared, memoized GF(p^m).
pub fn field(p: u32, m: u32) -> Result<Arc<FieldTable>, GfError> {
    if let Some(f) = cache().lock().unwrap().get(&(p, m)) {
        return Ok(f.clone());
    }
    let built = Arc::new(FieldTable::build(p, m)?);
    Ok(cache()
        .lock()
        .unwrap()
        .entry((p, m))
        .or_insert(built)
        .clone())
}

/// Shared GF(q) for a prime power `q`.
pub fn field_of_order(q: u32) -> Result<Arc<FieldTable>, GfError> {
    let (p, m) = prime_power(q).ok_or(GfError::NotPrimePower(q))?;
    field(p, m)
}
