use std::fmt;
use std::sync::Arc;

use crate::gf::{embed, Elem, FieldTable, SubfieldEmbedding};

use super::{kernel_from_rref, LinalgError, Matrix};

/// Which bilinear (or sesquilinear) form a dual is taken with respect to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualKind {
    Euclidean,
    /// `u * v = sum u_i^q v_i` on GF(q^2)^n.
    Hermitian,
}

/// A linear code stored by its generator in reduced row-echelon form, so
/// that equal codes have identical representations.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearCode {
    n: usize,
    gen: Matrix,
    pivots: Vec<usize>,
}

impl LinearCode {
    /// Row space of `m`; dependent rows are dropped.
    pub fn from_generator(m: &Matrix) -> LinearCode {
        let mut red = m.clone();
        let pivots = red.rref();
        let keep: Vec<usize> = (0..pivots.len()).collect();
        LinearCode {
            n: m.cols(),
            gen: red.select_rows(&keep),
            pivots,
        }
    }

    pub fn from_rows(field: Arc<FieldTable>, n: usize, rows: &[Vec<Elem>]) -> LinearCode {
        LinearCode::from_generator(&Matrix::from_rows(field, n, rows))
    }

    /// Null space of the parity-check matrix `h`.
    pub fn from_parity_check(h: &Matrix) -> LinearCode {
        LinearCode::from_generator(&h.kernel())
    }

    pub fn zero(field: Arc<FieldTable>, n: usize) -> LinearCode {
        LinearCode::from_generator(&Matrix::zeros(field, 0, n))
    }

    pub fn full(field: Arc<FieldTable>, n: usize) -> LinearCode {
        LinearCode::from_generator(&Matrix::identity(field, n))
    }

    pub fn repetition(field: Arc<FieldTable>, n: usize) -> LinearCode {
        LinearCode::from_rows(field, n, &[vec![Elem::ONE; n]])
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.gen.rows()
    }

    pub fn field(&self) -> &Arc<FieldTable> {
        self.gen.field()
    }

    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.gen.row_vecs()
    }

    pub fn encode(&self, msg: &[Elem]) -> Vec<Elem> {
        assert_eq!(msg.len(), self.dim());
        let f = self.field();
        let mut out = vec![Elem::ZERO; self.n];
        for (i, &m) in msg.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(self.gen.row(i)) {
                *o = f.add(*o, f.mul(m, g));
            }
        }
        out
    }

    /// Membership by elimination against the reduced generator.
    pub fn contains(&self, v: &[Elem]) -> bool {
        if v.len() != self.n {
            return false;
        }
        let f = self.field();
        let mut r = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = r[p];
            if c.is_zero() {
                continue;
            }
            let neg = f.neg(c);
            for (x, &g) in r.iter_mut().zip(self.gen.row(i)) {
                *x = f.add(*x, f.mul(neg, g));
            }
        }
        r.iter().all(|x| x.is_zero())
    }

    pub fn is_subcode_of(&self, other: &LinearCode) -> bool {
        **self.field() == **other.field()
            && self.n == other.n
            && (0..self.dim()).all(|i| other.contains(self.gen.row(i)))
    }

    /// Generator of the Euclidean dual.
    pub fn parity_check(&self) -> Matrix {
        kernel_from_rref(&self.gen, &self.pivots)
    }

    /// Entrywise Galois conjugation `x -> x^q` of a code over GF(q^2).
    pub fn conjugate(&self) -> Result<LinearCode, LinalgError> {
        let f = self.field().clone();
        f.subfield_order()?;
        Ok(LinearCode::from_generator(
            &self.gen.map(|x| f.conjugate(x).unwrap()),
        ))
    }

    pub fn dual(&self, kind: DualKind) -> Result<LinearCode, LinalgError> {
        let euclid = LinearCode::from_generator(&self.parity_check());
        match kind {
            DualKind::Euclidean => Ok(euclid),
            DualKind::Hermitian => euclid.conjugate(),
        }
    }

    fn check_coords(&self, s: &[usize]) -> Result<(), LinalgError> {
        match s.iter().find(|&&i| i >= self.n) {
            Some(&i) => Err(LinalgError::BadCoordinate(i)),
            None => Ok(()),
        }
    }

    /// Codewords that are zero on every coordinate of `zeros`, as rows.
    fn vanishing_on(&self, zeros: &[usize]) -> Vec<Vec<Elem>> {
        let mut in_zero = vec![false; self.n];
        for &i in zeros {
            in_zero[i] = true;
        }
        let mut order: Vec<usize> = (0..self.n).filter(|&i| in_zero[i]).collect();
        order.extend((0..self.n).filter(|&i| !in_zero[i]));
        let mut red = self.gen.clone();
        let pivots = red.rref_in_order(&order);
        pivots
            .iter()
            .enumerate()
            .filter(|(_, &p)| !in_zero[p])
            .map(|(i, _)| red.row(i).to_vec())
            .collect()
    }

    /// Subcode vanishing on `s`, with the coordinates of `s` deleted.
    pub fn shorten(&self, s: &[usize]) -> Result<LinearCode, LinalgError> {
        self.check_coords(s)?;
        let keep = complement(self.n, s);
        let rows: Vec<Vec<Elem>> = self
            .vanishing_on(s)
            .into_iter()
            .map(|r| keep.iter().map(|&i| r[i]).collect())
            .collect();
        Ok(LinearCode::from_rows(self.field().clone(), keep.len(), &rows))
    }

    /// Deletes the coordinates of `s` from every codeword.
    pub fn puncture(&self, s: &[usize]) -> Result<LinearCode, LinalgError> {
        self.check_coords(s)?;
        let keep = complement(self.n, s);
        Ok(LinearCode::from_generator(&self.gen.select_columns(&keep)))
    }

    /// Subcode of words whose support lies inside `s`, kept at full length.
    pub fn words_supported_in(&self, s: &[usize]) -> Result<LinearCode, LinalgError> {
        self.check_coords(s)?;
        let outside = complement(self.n, s);
        Ok(LinearCode::from_rows(
            self.field().clone(),
            self.n,
            &self.vanishing_on(&outside),
        ))
    }

    /// Codewords with all entries in the subfield GF(q) of GF(q^2), expressed
    /// over `small` through the canonical embedding.
    pub fn subfield_subcode(&self, small: &Arc<FieldTable>) -> Result<LinearCode, LinalgError> {
        let emb = embed(small, self.field())?;
        subfield_kernel(&self.parity_check(), &emb)
    }

    /// Multiplies coordinate `i` of every codeword by `scale[i]`.
    pub fn rescale(&self, scale: &[Elem]) -> LinearCode {
        let f = self.field().clone();
        let mut g = self.gen.clone();
        for r in 0..g.rows() {
            for (c, &s) in scale.iter().enumerate() {
                g.set(r, c, f.mul(g.get(r, c), s));
            }
        }
        LinearCode::from_generator(&g)
    }

    /// True if every pair of generators is orthogonal under `kind`.
    pub fn is_self_orthogonal(&self, kind: DualKind) -> Result<bool, LinalgError> {
        let rows = self.rows();
        for u in &rows {
            for v in &rows {
                let ip = match kind {
                    DualKind::Euclidean => euclidean_inner(self.field(), u, v)?,
                    DualKind::Hermitian => hermitian_inner(self.field(), u, v)?,
                };
                if !ip.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

pub(crate) fn complement(n: usize, s: &[usize]) -> Vec<usize> {
    let mut mark = vec![false; n];
    for &i in s {
        mark[i] = true;
    }
    (0..n).filter(|&i| !mark[i]).collect()
}

/// `{x in GF(q)^n : h . x = 0 for every row h}` where the rows `h` live over
/// GF(q^2). Each constraint is split along the basis `{1, theta}`, with
/// `theta` the canonical generator of GF(q^2).
pub(crate) fn subfield_kernel(
    h: &Matrix,
    emb: &SubfieldEmbedding,
) -> Result<LinearCode, LinalgError> {
    let (small, big) = (emb.small(), emb.big());
    if big.degree() != 2 * small.degree() {
        return Err(LinalgError::NotQuadraticTower);
    }
    let theta = big.generator();
    let mut split = vec![(Elem::ZERO, Elem::ZERO); big.order() as usize];
    for a in small.elements() {
        for b in small.elements() {
            let v = big.add(emb.map(a), big.mul(emb.map(b), theta));
            split[v.index()] = (a, b);
        }
    }
    let n = h.cols();
    let mut rows = Vec::with_capacity(2 * h.rows());
    for r in 0..h.rows() {
        rows.push(h.row(r).iter().map(|x| split[x.index()].0).collect());
        rows.push(h.row(r).iter().map(|x| split[x.index()].1).collect());
    }
    let constraints = Matrix::from_rows(small.clone(), n, &rows);
    Ok(LinearCode::from_parity_check(&constraints))
}

pub fn euclidean_inner(f: &FieldTable, u: &[Elem], v: &[Elem]) -> Result<Elem, LinalgError> {
    if u.len() != v.len() {
        return Err(LinalgError::LengthMismatch);
    }
    Ok(u.iter()
        .zip(v)
        .fold(Elem::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
}

/// `sum u_i^q v_i` over GF(q^2).
pub fn hermitian_inner(f: &FieldTable, u: &[Elem], v: &[Elem]) -> Result<Elem, LinalgError> {
    if u.len() != v.len() {
        return Err(LinalgError::LengthMismatch);
    }
    let q = f.subfield_order()? as u64;
    Ok(u.iter()
        .zip(v)
        .fold(Elem::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(f.pow(a, q), b))))
}

pub fn weight(v: &[Elem]) -> usize {
    v.iter().filter(|x| !x.is_zero()).count()
}

pub fn support(v: &[Elem]) -> Vec<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, _)| i)
        .collect()
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]_{}", self.n, self.dim(), self.field().order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field;

    #[test]
    fn hermitian_inner_examples() {
        let f = field(2, 2).unwrap();
        let one = Elem::ONE;
        assert_eq!(hermitian_inner(&f, &[one; 3], &[one; 3]).unwrap(), one);
        assert_eq!(
            hermitian_inner(&f, &[one, Elem::ZERO], &[Elem::ZERO, one]).unwrap(),
            Elem::ZERO
        );
        let a = f.generator();
        // a^2 * a + a^2 * 1 = 1 + a^2 = a
        assert_eq!(hermitian_inner(&f, &[a, a], &[a, one]).unwrap(), a);
        assert_eq!(
            hermitian_inner(&f, &[one], &[one, one]),
            Err(LinalgError::LengthMismatch)
        );
        let f8 = field(2, 3).unwrap();
        assert_eq!(
            hermitian_inner(&f8, &[one], &[one]),
            Err(LinalgError::NotQuadraticTower)
        );
    }

    #[test]
    fn repetition_hermitian_dual() {
        let f = field(3, 2).unwrap();
        let rep = LinearCode::repetition(f.clone(), 6);
        let d = rep.dual(DualKind::Hermitian).unwrap();
        assert_eq!(d.dim(), 5);
        for r in d.rows() {
            assert!(hermitian_inner(&f, &[Elem::ONE; 6], &r).unwrap().is_zero());
        }
    }

    #[test]
    fn full_space_dual_is_zero() {
        let f = field(2, 2).unwrap();
        let full = LinearCode::full(f.clone(), 4);
        assert_eq!(full.dual(DualKind::Hermitian).unwrap().dim(), 0);
        assert_eq!(full.dual(DualKind::Euclidean).unwrap(), LinearCode::zero(f, 4));
    }

    #[test]
    fn shorten_and_puncture_examples() {
        let f = field(3, 1).unwrap();
        let full = LinearCode::full(f.clone(), 5);
        assert_eq!(full.shorten(&[0]).unwrap(), LinearCode::full(f.clone(), 4));
        let rep = LinearCode::repetition(f.clone(), 5);
        assert_eq!(rep.puncture(&[4]).unwrap(), LinearCode::repetition(f.clone(), 4));
        assert_eq!(rep.shorten(&[7]), Err(LinalgError::BadCoordinate(7)));
    }

    #[test]
    fn supported_in_examples() {
        let f = field(3, 1).unwrap();
        let rep = LinearCode::repetition(f.clone(), 5);
        assert_eq!(rep.words_supported_in(&[0, 1, 2, 3, 4]).unwrap(), rep);
        assert_eq!(rep.words_supported_in(&[]).unwrap().dim(), 0);
        assert_eq!(rep.words_supported_in(&[0, 1, 2]).unwrap().dim(), 0);
    }

    #[test]
    fn subfield_subcode_examples() {
        let (f2, f4) = (field(2, 1).unwrap(), field(2, 2).unwrap());
        let full = LinearCode::full(f4, 5);
        assert_eq!(full.subfield_subcode(&f2).unwrap(), LinearCode::full(f2, 5));
        let (f3, f9) = (field(3, 1).unwrap(), field(3, 2).unwrap());
        let rep = LinearCode::repetition(f9, 4);
        assert_eq!(rep.subfield_subcode(&f3).unwrap(), LinearCode::repetition(f3, 4));
    }

    #[test]
    fn contains_and_encode() {
        let f = field(5, 1).unwrap();
        let c = LinearCode::from_rows(
            f.clone(),
            4,
            &[
                vec![f.from_int(1), f.from_int(2), f.from_int(3), f.from_int(4)],
                vec![f.from_int(0), f.from_int(1), f.from_int(1), f.from_int(2)],
            ],
        );
        let w = c.encode(&[f.from_int(3), f.from_int(4)]);
        assert!(c.contains(&w));
        assert!(!c.contains(&[Elem::ONE, Elem::ZERO, Elem::ZERO, Elem::ZERO]));
    }
}
