use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Elem, FieldTable, GfError, Polynomial};

/// A field homomorphism GF(q) -> GF(q^e), stored as lookup tables in both
/// directions.
pub struct SubfieldEmbedding {
    small: Arc<FieldTable>,
    big: Arc<FieldTable>,
    image_of_generator: Elem,
    to_big: Vec<Elem>,
    to_small: Vec<Option<Elem>>,
}

impl SubfieldEmbedding {
    /// Builds the embedding sending the small field's generator to `image`,
    /// which must be a root of the small field's modulus.
    pub fn from_image(
        small: Arc<FieldTable>,
        big: Arc<FieldTable>,
        image: Elem,
    ) -> Result<SubfieldEmbedding, GfError> {
        let not_sub = || GfError::NotASubfield {
            small: small.order(),
            big: big.order(),
        };
        if small.characteristic() != big.characteristic() || big.degree() % small.degree() != 0 {
            return Err(not_sub());
        }
        if !eval_modulus(&small, &big, image).is_zero() {
            return Err(not_sub());
        }
        let mut to_big = vec![Elem::ZERO; small.order() as usize];
        let mut to_small = vec![None; big.order() as usize];
        to_small[0] = Some(Elem::ZERO);
        for i in 0..small.order() - 1 {
            let x = small.exp(i as u64);
            let y = big.pow(image, i as u64);
            to_big[x.index()] = y;
            to_small[y.index()] = Some(x);
        }
        let emb = SubfieldEmbedding {
            small,
            big,
            image_of_generator: image,
            to_big,
            to_small,
        };
        emb.verify_homomorphism()?;
        Ok(emb)
    }

    fn verify_homomorphism(&self) -> Result<(), GfError> {
        let (s, b) = (&self.small, &self.big);
        let check = |x: Elem, y: Elem| {
            self.map(s.add(x, y)) == b.add(self.map(x), self.map(y))
                && self.map(s.mul(x, y)) == b.mul(self.map(x), self.map(y))
        };
        let ok = if s.order() <= 81 {
            s.elements().all(|x| s.elements().all(|y| check(x, y)))
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            (0..4096).all(|_| {
                let x = Elem::new(rng.gen_range(0..s.order()) as u16);
                let y = Elem::new(rng.gen_range(0..s.order()) as u16);
                check(x, y)
            })
        };
        if ok {
            Ok(())
        } else {
            Err(GfError::NotASubfield {
                small: s.order(),
                big: b.order(),
            })
        }
    }

    pub fn small(&self) -> &Arc<FieldTable> {
        &self.small
    }

    pub fn big(&self) -> &Arc<FieldTable> {
        &self.big
    }

    pub fn image_of_generator(&self) -> Elem {
        self.image_of_generator
    }

    /// Image of a small-field element.
    #[inline]
    pub fn map(&self, x: Elem) -> Elem {
        self.to_big[x.index()]
    }

    /// Inverse image, if `y` lies in the embedded subfield.
    #[inline]
    pub fn preimage(&self, y: Elem) -> Option<Elem> {
        self.to_small[y.index()]
    }

    /// `self: A -> B` followed by `outer: B -> C`.
    pub fn then(&self, outer: &SubfieldEmbedding) -> Result<SubfieldEmbedding, GfError> {
        if *outer.small != *self.big {
            return Err(GfError::NotASubfield {
                small: self.big.order(),
                big: outer.small.order(),
            });
        }
        SubfieldEmbedding::from_image(
            self.small.clone(),
            outer.big.clone(),
            outer.map(self.image_of_generator),
        )
    }
}

fn eval_modulus(small: &FieldTable, big: &FieldTable, y: Elem) -> Elem {
    small
        .modulus()
        .iter()
        .rev()
        .fold(Elem::ZERO, |acc, &c| big.add(big.mul(acc, y), big.from_int(c as i64)))
}

fn cache() -> &'static Mutex<HashMap<(u32, u32, u32), Arc<SubfieldEmbedding>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32, u32), Arc<SubfieldEmbedding>>>> =
        OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Canonical embedding: the generator of `small` goes to the root of its
/// modulus inside `big` with the smallest discrete logarithm.
pub fn embed(
    small: &Arc<FieldTable>,
    big: &Arc<FieldTable>,
) -> Result<Arc<SubfieldEmbedding>, GfError> {
    let not_sub = GfError::NotASubfield {
        small: small.order(),
        big: big.order(),
    };
    if small.characteristic() != big.characteristic() || big.degree() % small.degree() != 0 {
        return Err(not_sub);
    }
    let key = (small.characteristic(), small.degree(), big.degree());
    if let Some(e) = cache().lock().unwrap().get(&key) {
        if *e.small == **small && *e.big == **big {
            return Ok(e.clone());
        }
    }
    let image = (0..big.order() as u64 - 1)
        .map(|l| big.exp(l))
        .find(|&y| eval_modulus(small, big, y).is_zero())
        .ok_or(not_sub)?;
    let e = Arc::new(SubfieldEmbedding::from_image(small.clone(), big.clone(), image)?);
    cache().lock().unwrap().insert(key, e.clone());
    Ok(e)
}

/// Monic polynomial over `target.small()` with exactly the given roots in
/// `big`; fails unless every coefficient descends to the small field.
pub fn poly_from_roots(
    big: &Arc<FieldTable>,
    roots: &[Elem],
    target: &SubfieldEmbedding,
) -> Result<Polynomial, GfError> {
    if **target.big() != **big {
        return Err(GfError::NotASubfield {
            small: target.small().order(),
            big: big.order(),
        });
    }
    let mut coeffs = vec![Elem::ONE];
    for &r in roots {
        let neg = big.neg(r);
        let mut next = vec![Elem::ZERO; coeffs.len() + 1];
        for (i, &c) in coeffs.iter().enumerate() {
            next[i + 1] = big.add(next[i + 1], c);
            next[i] = big.add(next[i], big.mul(c, neg));
        }
        coeffs = next;
    }
    let small = coeffs
        .iter()
        .map(|&c| target.preimage(c).ok_or(GfError::NotGaloisStable))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Polynomial::new(target.small().clone(), small))
}
