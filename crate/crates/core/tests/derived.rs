//! Worked values checked against independent, deliberately naive oracles:
//! schoolbook polynomial arithmetic, brute-force enumeration and explicit
//! determinants.

use std::collections::BTreeSet;
use std::sync::Arc;

use qmds_core::ccodes::{bch_ht_bound, build_code, mds_spec};
use qmds_core::gf::{embed, field, poly_from_roots, Elem, FieldTable};
use qmds_core::linalg::{
    hermitian_inner, mds_verify, min_weight, row_reduce, weight, Budget, DualKind, LinearCode,
    Matrix,
};
use qmds_core::pcode::{
    in_puncture_code, puncture_direct, rescale_self_orthogonal, spectral_spec, weight_spectrum, Verdict,
};
use qmds_core::qstab::{
    conjecture_report, family_distance2, puncture_stabilizer, run_pipeline, stabilizer_from_self_orthogonal,
    ConjectureVerdict,
};

// ---------- naive GF(p^m): coefficient vectors, low degree first ----------

fn unpack(p: u32, m: u32, v: u16) -> Vec<u32> {
    let mut v = v as u32;
    (0..m)
        .map(|_| {
            let c = v % p;
            v /= p;
            c
        })
        .collect()
}

fn pack(p: u32, c: &[u32]) -> Elem {
    Elem::new(c.iter().rev().fold(0u32, |acc, &x| acc * p + x) as u16)
}

/// Schoolbook product reduced by the monic `modulus` (low degree first).
fn naive_mul(p: u32, modulus: &[u32], a: &[u32], b: &[u32]) -> Vec<u32> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * m];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for top in (m..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        for (k, &mk) in modulus.iter().enumerate() {
            let idx = top - m + k;
            prod[idx] = (prod[idx] + p * p - (c * mk) % p) % p;
        }
    }
    prod.truncate(m);
    prod
}

fn naive_order_of_x(p: u32, modulus: &[u32]) -> u64 {
    let m = modulus.len() - 1;
    let mut x = vec![0u32; m];
    x[1 % m] = if m == 1 { (p - modulus[0]) % p } else { 1 };
    let one: Vec<u32> = (0..m).map(|i| (i == 0) as u32).collect();
    let mut cur = x.clone();
    for k in 1..=(p as u64).pow(m as u32) {
        if cur == one {
            return k;
        }
        cur = naive_mul(p, modulus, &cur, &x);
    }
    0
}

#[test]
fn gf16_modulus_is_smallest_primitive() {
    // degree-4 monic polynomials over GF(2), lexicographic from x^3 down
    let mut first = None;
    for code in 0..16u32 {
        let mut modulus: Vec<u32> = (0..4).map(|i| code >> (3 - i) & 1).collect::<Vec<_>>();
        modulus.reverse();
        modulus.push(1);
        if modulus[0] == 0 {
            continue;
        }
        if naive_order_of_x(2, &modulus) == 15 {
            first = Some(modulus);
            break;
        }
    }
    let f = field(2, 4).unwrap();
    assert_eq!(first.as_deref(), Some(&[1, 1, 0, 0, 1][..]));
    assert_eq!(f.modulus(), &[1, 1, 0, 0, 1]);
}

#[test]
fn table_products_match_schoolbook() {
    for (p, m) in [(2, 4), (3, 2), (5, 2), (2, 6), (7, 2)] {
        let f = field(p, m).unwrap();
        let modulus = f.modulus().to_vec();
        for a in f.elements() {
            for b in f.elements().step_by(3) {
                let want = pack(p, &naive_mul(p, &modulus, &unpack(p, m, a.value()), &unpack(p, m, b.value())));
                assert_eq!(f.mul(a, b), want, "GF({p}^{m}) {a}*{b}");
            }
        }
    }
}

#[test]
fn gf9_frobenius_and_subfield() {
    let f = field(3, 2).unwrap();
    let a = f.generator();
    assert_eq!(f.pow(a, 3), f.mul(f.mul(a, a), a));
    assert_eq!(f.pow(a, 3), f.exp(3));
    let small = field(3, 1).unwrap();
    let e = embed(&small, &f).unwrap();
    let img = e.image_of_generator();
    assert_eq!(img, f.exp(4));
    assert_eq!(f.add(img, Elem::ONE), Elem::ZERO, "alpha^4 = -1 = 2");
    assert_eq!(f.multiplicative_order(img), 2);
}

#[test]
fn gf9_norm_preimage_by_scan() {
    let f = field(3, 2).unwrap();
    let two = pack(3, &[2, 0]);
    let k = (0..8u64).find(|&k| f.pow(f.exp(k), 4) == two).unwrap();
    assert_eq!(f.norm_preimage(two).unwrap(), f.exp(k));
}

#[test]
fn gf4_inside_gf16() {
    let big = field(2, 4).unwrap();
    let small = field(2, 2).unwrap();
    let e = embed(&small, &big).unwrap();
    let y = e.image_of_generator();
    assert_eq!(big.add(big.add(big.mul(y, y), y), Elem::ONE), Elem::ZERO);
    assert_eq!(big.multiplicative_order(y), 3);
    // the two order-3 elements give a quadratic over GF(4): x^2 + x + 1
    let (r1, r2) = (big.exp(5), big.exp(10));
    let poly = poly_from_roots(&big, &[r1, r2], &e).unwrap();
    let s = big.add(r1, r2);
    let prod = big.mul(r1, r2);
    assert_eq!(prod, Elem::ONE);
    assert_eq!(s, Elem::ONE);
    assert_eq!(poly.coeffs(), &[Elem::ONE, Elem::ONE, Elem::ONE]);
}

#[test]
fn gf4_rank_and_hermitian_form() {
    let f = field(2, 2).unwrap();
    let a = f.generator();
    let m = Matrix::from_rows(f.clone(), 2, &[vec![Elem::ONE, a], vec![a, f.mul(a, a)]]);
    assert_eq!(m.rank(), 1);
    assert_eq!(row_reduce(&m).1, 1);
    // u^2 . v over GF(4): alpha^2 * alpha + alpha^2 * 1
    let u = [a, a];
    let v = [a, Elem::ONE];
    let a2 = f.mul(a, a);
    let want = f.add(f.mul(a2, a), a2);
    assert_eq!(want, a);
    assert_eq!(hermitian_inner(&f, &u, &v).unwrap(), want);
}

/// Minimum nonzero weight by listing every codeword.
fn naive_min_weight(c: &LinearCode) -> usize {
    let f = c.field();
    let k = c.dim();
    let q = f.order() as u64;
    let mut best = usize::MAX;
    for idx in 1..q.pow(k as u32) {
        let mut t = idx;
        let msg: Vec<Elem> = (0..k)
            .map(|_| {
                let e = Elem::new((t % q) as u16);
                t /= q;
                e
            })
            .collect();
        best = best.min(weight(&c.encode(&msg)));
    }
    best
}

#[test]
fn q2_pipeline_codes() {
    let spec = mds_spec(4, 3).unwrap();
    assert!(spec.is_cyclic());
    assert_eq!(spec.defining_set().iter().copied().collect::<Vec<_>>(), vec![2, 3]);
    let roots: BTreeSet<Elem> = [2, 3].iter().map(|&i| spec.root(i)).collect();
    let big = spec.root_field();
    let alpha = spec.alpha();
    assert_eq!(roots, [big.pow(alpha, 2), big.pow(alpha, 3)].into_iter().collect());
    let cstar = build_code(&spec).unwrap();
    assert_eq!((cstar.len(), cstar.dim()), (5, 3));
    assert_eq!(naive_min_weight(&cstar), 3);
    assert!(mds_verify(&cstar));
    assert_eq!(bch_ht_bound(&spec), 3);

    let c = cstar.dual(DualKind::Hermitian).unwrap();
    assert_eq!(c.dim(), 2);
    assert_eq!(c.dual(DualKind::Hermitian).unwrap(), cstar);
    let pc = puncture_direct(&c).unwrap();
    assert_eq!(pc.base, LinearCode::repetition(field(2, 1).unwrap(), 5));

    let pspec = spectral_spec(&spec).unwrap();
    let arithmetic: BTreeSet<usize> = [2usize, 3]
        .iter()
        .flat_map(|&i| [2usize, 3].map(|j| (2 * i + 4 * j) % 5))
        .collect();
    assert_eq!(arithmetic, [1, 2, 3, 4].into_iter().collect());
    assert_eq!(pspec.defining_set(), &arithmetic);
    assert_eq!(bch_ht_bound(&pspec), 5);
}

#[test]
fn shorten_puncture_identity_on_a_fixed_code() {
    let f = field(3, 2).unwrap();
    let rows: Vec<Vec<Elem>> = (0..3)
        .map(|r| (0..8).map(|c| f.exp(((r + 1) * (c + 2) + r * c * c) as u64 % 8)).collect())
        .collect();
    let c = LinearCode::from_rows(f, 8, &rows);
    assert_eq!(c.dim(), 3);
    let s = [2, 7];
    let left = c.shorten(&s).unwrap().dual(DualKind::Euclidean).unwrap();
    let right = c.dual(DualKind::Euclidean).unwrap().puncture(&s).unwrap();
    assert_eq!(left, right);
}

fn det2(f: &FieldTable, a: Elem, b: Elem, c: Elem, d: Elem) -> Elem {
    f.sub(f.mul(a, d), f.mul(b, c))
}

#[test]
fn gf9_length_10_distance_3() {
    let code = build_code(&mds_spec(9, 3).unwrap()).unwrap();
    assert_eq!((code.len(), code.dim()), (10, 8));
    let h = code.parity_check();
    assert_eq!(h.rows(), 2);
    let f = h.field().clone();
    // every two columns independent; three columns in two rows never are
    for i in 0..10 {
        for j in i + 1..10 {
            assert!(!det2(&f, h.get(0, i), h.get(0, j), h.get(1, i), h.get(1, j)).is_zero());
        }
    }
    let mw = min_weight(&code, &Budget::default()).unwrap();
    assert_eq!(mw.weight, 3);
    assert!(mw.is_exact());
}

/// Rank by plain Gaussian elimination on a copy, without the library's
/// echelon routines.
fn naive_rank(f: &Arc<FieldTable>, mut rows: Vec<Vec<Elem>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = f.inv(rows[rank][c]);
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let factor = f.mul(rows[r][c], inv);
                for k in 0..cols {
                    let v = f.mul(factor, rows[rank][k]);
                    rows[r][k] = f.sub(rows[r][k], v);
                }
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn gf16_length_17_is_mds_by_column_rank() {
    let code = build_code(&mds_spec(16, 5).unwrap()).unwrap();
    assert_eq!((code.len(), code.dim()), (17, 13));
    assert!(mds_verify(&code));
    let h = code.parity_check();
    let f = h.field().clone();
    let mut subsets = 0;
    for a in 0..17 {
        for b in a + 1..17 {
            for c in b + 1..17 {
                for d in c + 1..17 {
                    let sub: Vec<Vec<Elem>> = (0..4).map(|r| [a, b, c, d].map(|j| h.get(r, j)).to_vec()).collect();
                    assert_eq!(naive_rank(&f, sub), 4);
                    subsets += 1;
                }
            }
        }
    }
    assert_eq!(subsets, 2380);
}

#[test]
fn puncture_membership_on_repetition_code() {
    let big = field(3, 2).unwrap();
    let c = LinearCode::repetition(big, 4);
    let ones = vec![Elem::ONE; 4];
    assert!(!in_puncture_code(&c, &ones).unwrap());
    assert!(rescale_self_orthogonal(&c, &ones).is_err());
    let two = Elem::new(2);
    let x = vec![Elem::ONE, Elem::ONE, two, two];
    assert!(in_puncture_code(&c, &x).unwrap());
    let d = rescale_self_orthogonal(&c, &x).unwrap();
    assert!(d.is_self_orthogonal(DualKind::Hermitian).unwrap());
}

#[test]
fn q3_spectrum_by_enumeration() {
    let run = run_pipeline(3, 3, 1..=10, &Budget::default()).unwrap();
    assert_eq!(run.pc.dim(), 6);
    // 3^6 words listed directly
    let f = run.pc.field();
    let mut seen = BTreeSet::new();
    for idx in 1..729u32 {
        let mut t = idx;
        let msg: Vec<Elem> = (0..6)
            .map(|_| {
                let e = f.elem(t % 3).unwrap();
                t /= 3;
                e
            })
            .collect();
        seen.insert(weight(&run.pc.base.encode(&msg)));
    }
    assert_eq!(seen, (4..=10).collect());
    for r in &run.spectrum {
        let present = matches!(r.verdict, Verdict::FoundWitness(_));
        assert_eq!(present, seen.contains(&r.weight), "weight {}", r.weight);
    }
}

#[test]
fn q3_distance_four_code_by_enumeration() {
    let run = run_pipeline(3, 4, 10..=10, &Budget::default()).unwrap();
    let rec = &run.codes[0];
    assert_eq!((rec.n, rec.k, rec.d), (10, 4, 4));
    let x = rec.witness.as_ref().unwrap().word().unwrap();
    let d_code = rescale_self_orthogonal(&run.c, &x).unwrap();
    let dual = d_code.dual(DualKind::Hermitian).unwrap();
    // every word of D*, and those outside D
    let f = dual.field().clone();
    let k = dual.dim();
    let q = f.order() as u64;
    let (mut all, mut outside) = (usize::MAX, usize::MAX);
    for idx in 1..q.pow(k as u32) {
        let mut t = idx;
        let msg: Vec<Elem> = (0..k)
            .map(|_| {
                let e = Elem::new((t % q) as u16);
                t /= q;
                e
            })
            .collect();
        let v = dual.encode(&msg);
        let w = weight(&v);
        all = all.min(w);
        if w < outside && !d_code.contains(&v) {
            outside = w;
        }
    }
    assert_eq!((all, outside), (4, 4), "pure with distance 4");
}

#[test]
fn constructive_shortening() {
    let b = Budget::default();
    for (q, d, n, want) in [(2u32, 3u32, 5usize, (4, 2, 2)), (3, 4, 10, (9, 5, 3))] {
        let run = run_pipeline(q, d, n..=n, &b).unwrap();
        let x = run.codes[0].witness.as_ref().unwrap().word().unwrap();
        let d_code = rescale_self_orthogonal(&run.c, &x).unwrap();
        let short = puncture_stabilizer(&d_code, 1, &b).unwrap();
        let rec = stabilizer_from_self_orthogonal(&short, &b).unwrap();
        assert_eq!((rec.n, rec.k, rec.d), want);
        assert!(rec.is_exact());
    }
}

#[test]
fn distance_two_over_gf3() {
    let rec = family_distance2(3, 5, &Budget::default()).unwrap();
    assert_eq!((rec.n, rec.k, rec.d), (5, 3, 2));
    // the weight-5 word lies in the [5,4,2] puncture code of the repetition code
    let c = LinearCode::repetition(field(3, 2).unwrap(), 5);
    let pc = puncture_direct(&c).unwrap();
    assert_eq!((pc.len(), pc.dim()), (5, 4));
    assert_eq!(naive_min_weight(&pc.base), 2);
    let spectrum = weight_spectrum(&pc, 5..=5, &Budget::default());
    assert!(matches!(spectrum[0].verdict, Verdict::FoundWitness(_)));
}

#[test]
fn conjecture_small_q() {
    let rep = conjecture_report(2..=4, &Budget::default()).unwrap();
    let q4d4 = rep.rows.iter().find(|r| r.q == 4 && r.d == 4).unwrap();
    assert_eq!((q4d4.dim, q4d4.predicted_dmin), (8, 8));
    assert!(q4d4.dmin_exact);
    assert!(rep
        .rows
        .iter()
        .filter(|r| r.q <= 3)
        .all(|r| r.verdict == ConjectureVerdict::Confirmed));
}
