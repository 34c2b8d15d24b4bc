use std::fmt;
use std::sync::Arc;

use super::{Elem, FieldTable};

/// Dense polynomial over one field, coefficients stored low-to-high.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: Arc<FieldTable>,
    coeffs: Vec<Elem>,
}

impl Polynomial {
    pub fn new(field: Arc<FieldTable>, mut coeffs: Vec<Elem>) -> Polynomial {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { field, coeffs }
    }

    pub fn zero(field: Arc<FieldTable>) -> Polynomial {
        Polynomial::new(field, Vec::new())
    }

    pub fn one(field: Arc<FieldTable>) -> Polynomial {
        Polynomial::new(field, vec![Elem::ONE])
    }

    /// `z - root`.
    pub fn linear(field: Arc<FieldTable>, root: Elem) -> Polynomial {
        let c = field.neg(root);
        Polynomial::new(field, vec![c, Elem::ONE])
    }

    pub fn field(&self) -> &Arc<FieldTable> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&Elem::ONE)
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.field.clone());
        }
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Polynomial::new(self.field.clone(), out)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &Polynomial, i: usize| p.coeffs.get(i).copied().unwrap_or(Elem::ZERO);
        let out = (0..len).map(|i| f.add(get(self, i), get(other, i))).collect();
        Polynomial::new(self.field.clone(), out)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}
