use std::ops::RangeInclusive;

use crate::ccodes::{build_code, mds_spec, ConstacyclicSpec};
use crate::gf::{embed, field, prime_power, Elem};
use crate::linalg::{mds_verify, Budget, DualKind, LinearCode};
use crate::pcode::{
    in_puncture_code, puncture_direct, rescale_self_orthogonal, weight_present, weight_spectrum,
    PresenceResult, PunctureCode, WitnessFile,
};

use super::{
    stabilizer_from_self_orthogonal, DistanceKind, Purity, QstabError, QuantumCodeParams, RecordStatus,
};

/// Everything produced by one run of the length-`q^2+1` pipeline.
#[derive(Debug, Clone)]
pub struct PipelineRun {
    pub q: u32,
    pub d: u32,
    pub spec: ConstacyclicSpec,
    /// The MDS code `[q^2+1, q^2+2-d, d]` over GF(q^2).
    pub cstar: LinearCode,
    /// Its Hermitian dual, the code that gets punctured.
    pub c: LinearCode,
    pub pc: PunctureCode,
    pub spectrum: Vec<PresenceResult>,
    pub codes: Vec<QuantumCodeParams>,
}

fn check_q(q: u32) -> Result<(), QstabError> {
    if prime_power(q).is_none() || q > 16 {
        return Err(QstabError::UnsupportedAlphabet(q));
    }
    Ok(())
}

/// MDS code, puncture code, weight search over `weights`, and a stabilizer
/// code for every weight that has a witness.
pub fn run_pipeline(
    q: u32,
    d: u32,
    weights: RangeInclusive<usize>,
    budget: &Budget,
) -> Result<PipelineRun, QstabError> {
    check_q(q)?;
    if d < 1 || d > q + 1 {
        return Err(QstabError::BadDistance { q, d });
    }
    let spec = mds_spec(q * q, d)?;
    let cstar = build_code(&spec)?;
    let c = cstar.dual(DualKind::Hermitian)?;
    let pc = puncture_direct(&c)?;
    let spectrum = weight_spectrum(&pc, weights, budget);
    let mut codes = Vec::new();
    for r in &spectrum {
        let Some(x) = r.verdict.witness() else {
            continue;
        };
        let dcode = rescale_self_orthogonal(&c, x)?;
        let mut rec = stabilizer_from_self_orthogonal(&dcode, budget)?;
        rec.provenance = vec![
            format!("mds_spec({},{})", q * q, d),
            "pc".into(),
            format!("w={}", r.weight),
            "rescale".into(),
        ];
        rec.witness = Some(WitnessFile::new(q, d, x, budget.seed));
        codes.push(rec);
    }
    Ok(PipelineRun {
        q,
        d,
        spec,
        cstar,
        c,
        pc,
        spectrum,
        codes,
    })
}

/// All stabilizer codes the pipeline yields for `(q, d)`. When `q` is odd
/// or `d` is odd a word of full weight `q^2+1` must exist; its absence is an
/// error.
pub fn family_q2plus1(q: u32, d: u32, budget: &Budget) -> Result<Vec<QuantumCodeParams>, QstabError> {
    let n = (q * q + 1) as usize;
    let run = run_pipeline(q, d, 1..=n, budget)?;
    if q % 2 == 1 || d % 2 == 1 {
        let full = run.spectrum.iter().find(|r| r.weight == n);
        if full.and_then(|r| r.verdict.witness()).is_none() {
            return Err(QstabError::MissingFullWeight { q, d, n });
        }
    }
    Ok(run.codes)
}

/// `[[n, n-2, 2]]_q`. Prime powers are built from the puncture code of the
/// repetition code; other `q` follow from the product of their prime-power
/// factors.
pub fn family_distance2(q: u32, n: usize, budget: &Budget) -> Result<QuantumCodeParams, QstabError> {
    if q < 2 || n < 2 {
        return Err(QstabError::NotKnown { q, n });
    }
    if let Some((p, m)) = prime_power(q) {
        if q == 2 && n % 2 == 1 {
            return Err(QstabError::NotKnown { q, n });
        }
        let big = field(p, 2 * m)?;
        let c = LinearCode::repetition(big, n);
        let pc = puncture_direct(&c)?;
        let r = weight_present(&pc, n, budget)?;
        let x = r
            .verdict
            .witness()
            .ok_or(QstabError::MissingFullWeight { q, d: 2, n })?;
        let dcode = rescale_self_orthogonal(&c, x)?;
        let mut rec = stabilizer_from_self_orthogonal(&dcode, budget)?;
        rec.provenance = vec![
            format!("repetition({n})"),
            "pc".into(),
            format!("w={n}"),
            "rescale".into(),
        ];
        rec.witness = Some(WitnessFile::new(q, 2, x, budget.seed));
        return Ok(rec);
    }
    let factors = factor_prime_powers(q);
    if n % 2 == 1 && factors.contains(&2) {
        return Err(QstabError::NotKnown { q, n });
    }
    Ok(QuantumCodeParams {
        q,
        n,
        k: n - 2,
        d: 2,
        pure: Purity::Unknown,
        status: RecordStatus::ParameterOnly,
        distance: DistanceKind::Stated,
        provenance: vec![format!(
            "product rule over {}",
            factors.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("*")
        )],
        flags: Vec::new(),
        witness: None,
    })
}

fn factor_prime_powers(mut q: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while q > 1 {
        if q % p == 0 {
            let mut pp = 1;
            while q % p == 0 {
                q /= p;
                pp *= p;
            }
            out.push(pp);
        }
        p += 1;
    }
    out
}

/// `[[4^m+2, 4^m-4, 4]]_{2^m}` from the doubly extended parity-check matrix
/// with rows `(1.., 1, 0, 0)`, `(a^t.., 0, 1, 0)`, `(a^{2t}.., 0, 0, 1)`.
pub fn char2_q2plus2(m: u32, budget: &Budget) -> Result<QuantumCodeParams, QstabError> {
    Ok(char2_q2plus2_parts(m, budget)?.0)
}

/// The record together with the punctured code `C` and `P(C)`.
pub fn char2_q2plus2_parts(
    m: u32,
    budget: &Budget,
) -> Result<(QuantumCodeParams, LinearCode, PunctureCode), QstabError> {
    if !(1..=4).contains(&m) {
        return Err(QstabError::MOutOfRange(m));
    }
    let q = 1u32 << m;
    let big = field(2, 2 * m)?;
    let small = field(2, m)?;
    let emb = embed(&small, &big)?;
    let nq = (q * q) as usize;
    let n = nq + 2;
    let a = big.generator();
    let mut h = vec![vec![Elem::ZERO; n]; 3];
    for t in 0..nq - 1 {
        let x = big.pow(a, t as u64);
        h[0][t] = Elem::ONE;
        h[1][t] = x;
        h[2][t] = big.mul(x, x);
    }
    h[0][nq - 1] = Elem::ONE;
    h[1][nq] = Elem::ONE;
    h[2][nq + 1] = Elem::ONE;
    let hcode = LinearCode::from_rows(big.clone(), n, &h);
    let cstar = hcode.dual(DualKind::Euclidean)?;
    if !mds_verify(&cstar) {
        return Err(QstabError::Construction("parity-check code is not MDS".into()));
    }
    let c = hcode.conjugate()?;
    let pc = puncture_direct(&c)?;
    // rows of G1: inverses of the nonzero norms of the rows of H
    let g1: Vec<Vec<Elem>> = h
        .iter()
        .map(|row| {
            row.iter()
                .map(|&x| {
                    if x.is_zero() {
                        Ok(Elem::ZERO)
                    } else {
                        let v = big.inv(big.norm(x)?);
                        emb.preimage(v)
                            .ok_or_else(|| QstabError::Construction("norm outside subfield".into()))
                    }
                })
                .collect::<Result<Vec<_>, QstabError>>()
        })
        .collect::<Result<_, _>>()?;
    let (g1c, g0c) = small
        .elements()
        .flat_map(|b| small.elements().map(move |c| (b, c)))
        .find(|&(b, c)| {
            small
                .elements()
                .all(|x| !small.add(small.add(small.mul(x, x), small.mul(b, x)), c).is_zero())
        })
        .expect("an irreducible quadratic exists");
    let x: Vec<Elem> = (0..n)
        .map(|t| {
            let v = small.add(small.mul(g0c, g1[0][t]), small.mul(g1c, g1[1][t]));
            small.add(v, g1[2][t])
        })
        .collect();
    if let Some(t) = x.iter().position(|v| v.is_zero()) {
        return Err(QstabError::Construction(format!("coordinate {t} of the weighting vanishes")));
    }
    if !pc.base.contains(&x) || !in_puncture_code(&c, &x)? {
        return Err(QstabError::Construction("weighting is not in the puncture code".into()));
    }
    let dcode = rescale_self_orthogonal(&c, &x)?;
    let mut rec = stabilizer_from_self_orthogonal(&dcode, budget)?;
    if (rec.n, rec.k, rec.d) != (n, nq - 4, 4) {
        return Err(QstabError::Construction(format!("unexpected parameters {rec}")));
    }
    rec.provenance = vec![
        format!("char2_q2plus2({m})"),
        format!("f=x^2+{}x+{}", g1c.value(), g0c.value()),
        "pc".into(),
        format!("w={n}"),
        "rescale".into(),
    ];
    rec.witness = Some(WitnessFile::new(q, 4, &x, budget.seed));
    Ok((rec, c, pc))
}

/// Rebuilds the punctured code a witness refers to (length `q^2+1` from the
/// pipeline, `q^2+2` from the characteristic-2 construction), checks the
/// word is in its puncture code and recomputes the stabilizer parameters.
pub fn verify_witness(wf: &WitnessFile, budget: &Budget) -> Result<QuantumCodeParams, QstabError> {
    check_q(wf.q)?;
    let x = wf
        .word()
        .ok_or_else(|| QstabError::Construction("witness file is inconsistent".into()))?;
    let q = wf.q as usize;
    let c = if wf.n == q * q + 1 {
        if wf.d < 1 || wf.d > wf.q + 1 {
            return Err(QstabError::BadDistance { q: wf.q, d: wf.d });
        }
        build_code(&mds_spec(wf.q * wf.q, wf.d)?)?.dual(DualKind::Hermitian)?
    } else if wf.n == q * q + 2 && wf.q.is_power_of_two() && wf.d == 4 {
        char2_q2plus2_parts(wf.q.trailing_zeros(), budget)?.1
    } else {
        return Err(QstabError::Construction(format!("no construction of length {} over q = {}", wf.n, wf.q)));
    };
    if !in_puncture_code(&c, &x)? {
        return Err(QstabError::Pcode(crate::pcode::PcodeError::NotInPunctureCode));
    }
    let dcode = rescale_self_orthogonal(&c, &x)?;
    let mut rec = stabilizer_from_self_orthogonal(&dcode, budget)?;
    rec.provenance = vec!["witness".into(), format!("w={}", wf.weight), "rescale".into()];
    rec.witness = Some(wf.clone());
    Ok(rec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstab::qmds_check;

    #[test]
    fn q2_pipeline() {
        let codes = family_q2plus1(2, 3, &Budget::default()).unwrap();
        assert_eq!(codes.len(), 1);
        let c = &codes[0];
        assert_eq!((c.n, c.k, c.d), (5, 1, 3));
        assert_eq!(c.pure, Purity::Yes);
        assert_eq!(c.provenance, vec!["mds_spec(4,3)", "pc", "w=5", "rescale"]);
    }

    #[test]
    fn distance_two() {
        let b = Budget::default();
        let r = family_distance2(2, 6, &b).unwrap();
        assert_eq!((r.n, r.k, r.d), (6, 4, 2));
        let r = family_distance2(3, 5, &b).unwrap();
        assert_eq!((r.n, r.k, r.d, r.status), (5, 3, 2, RecordStatus::Verified));
        assert!(matches!(family_distance2(6, 7, &b), Err(QstabError::NotKnown { .. })));
        let r = family_distance2(6, 8, &b).unwrap();
        assert_eq!(r.status, RecordStatus::ParameterOnly);
        assert!(family_distance2(12, 7, &b).is_ok());
        assert!(matches!(family_distance2(2, 5, &b), Err(QstabError::NotKnown { .. })));
    }

    #[test]
    fn q2plus2_small() {
        let r = char2_q2plus2(1, &Budget::default()).unwrap();
        assert_eq!((r.n, r.k, r.d), (6, 0, 4));
        assert!(qmds_check(&r));
        let r = char2_q2plus2(2, &Budget::default()).unwrap();
        assert_eq!((r.n, r.k, r.d), (18, 12, 4));
        assert!(r.is_exact());
        assert!(matches!(char2_q2plus2(5, &Budget::default()), Err(QstabError::MOutOfRange(5))));
    }

    #[test]
    fn witnesses_verify() {
        let b = Budget::default();
        let run = run_pipeline(3, 3, 7..=7, &b).unwrap();
        let rec = &run.codes[0];
        let again = verify_witness(rec.witness.as_ref().unwrap(), &b).unwrap();
        assert_eq!((again.n, again.k, again.d), (rec.n, rec.k, rec.d));
        let r = char2_q2plus2(1, &b).unwrap();
        let again = verify_witness(r.witness.as_ref().unwrap(), &b).unwrap();
        assert_eq!((again.n, again.k, again.d), (6, 0, 4));
        let mut bad = rec.witness.clone().unwrap();
        bad.values[0] = if bad.values[0] == 1 { 2 } else { 1 };
        assert!(verify_witness(&bad, &b).is_err());
    }
}
