use crate::linalg::{min_weight, min_weight_relative, Budget, DualKind, LinalgError, LinearCode};
use crate::pcode::subfield_of;

use super::{qmds_check, DistanceKind, Purity, QstabError, QuantumCodeParams, RecordStatus};

/// Parameters of the stabilizer code of a Hermitian self-orthogonal `D`:
/// `[[n, n - 2 dim D, d]]` with `d` the minimum weight of `D* \ D`.
pub fn stabilizer_from_self_orthogonal(
    d_code: &LinearCode,
    budget: &Budget,
) -> Result<QuantumCodeParams, QstabError> {
    if !d_code.is_self_orthogonal(DualKind::Hermitian)? {
        return Err(QstabError::NotSelfOrthogonal);
    }
    let q = subfield_of(d_code)?.order();
    let n = d_code.len();
    let k = n - 2 * d_code.dim();
    let mut rec = QuantumCodeParams {
        q,
        n,
        k,
        d: 1,
        pure: Purity::Yes,
        status: RecordStatus::Verified,
        distance: DistanceKind::Exact,
        provenance: Vec::new(),
        flags: Vec::new(),
        witness: None,
    };
    if d_code.dim() == 0 {
        return Ok(rec);
    }
    let dual = d_code.dual(DualKind::Hermitian)?;
    let mw = min_weight(&dual, budget)?;
    if !mw.is_exact() {
        rec.d = mw.proven_lower;
        rec.pure = Purity::Unknown;
        rec.distance = DistanceKind::LowerBound;
        rec.status = RecordStatus::Claimed;
        rec.flags.push(format!("dual_weight_found={}", mw.weight));
        return Ok(rec);
    }
    rec.d = mw.weight;
    if k == 0 {
        rec.flags.push("k0_convention".into());
        return Ok(rec);
    }
    if !d_code.contains(&mw.witness) {
        return Ok(rec);
    }
    match min_weight_relative(&dual, d_code, budget) {
        Ok(rel) => {
            rec.pure = if rel.weight == mw.weight {
                Purity::Yes
            } else {
                Purity::No
            };
            rec.d = rel.weight;
        }
        Err(LinalgError::BudgetExceeded { .. }) => {
            // d(D*) <= d <= (n - k + 2) / 2
            if 2 * mw.weight == n - k + 2 {
                rec.distance = DistanceKind::ExactBySingleton;
            } else {
                rec.pure = Purity::Unknown;
                rec.distance = DistanceKind::LowerBound;
                rec.status = RecordStatus::Claimed;
            }
        }
        Err(e) => return Err(e.into()),
    }
    Ok(rec)
}

/// `[[n, k, d]] -> [[n - s, k + s, d - s]]` for a pure code. A code meeting
/// the quantum Singleton bound is pure, so QMDS records are accepted too.
pub fn shorten_params(p: &QuantumCodeParams, s: usize) -> Result<QuantumCodeParams, QstabError> {
    if p.pure != Purity::Yes && !qmds_check(p) {
        return Err(QstabError::NotPure);
    }
    if s >= p.d || s > p.n {
        return Err(QstabError::BadS { s, d: p.d });
    }
    if s == 0 {
        return Ok(p.clone());
    }
    let mut out = p.clone();
    out.n -= s;
    out.k += s;
    out.d -= s;
    out.witness = None;
    out.flags.clear();
    out.status = match p.status {
        RecordStatus::Verified | RecordStatus::Literature | RecordStatus::Derived => RecordStatus::Derived,
        other => other,
    };
    out.pure = if qmds_check(&out) { Purity::Yes } else { Purity::Unknown };
    out.provenance.push(format!("from {}", p.key()));
    out.provenance.push(format!("shorten(s={s})"));
    Ok(out)
}

/// Constructive shortening: the stabilizer `D` shortened at `position`,
/// which is again Hermitian self-orthogonal.
pub fn puncture_stabilizer(
    d_code: &LinearCode,
    position: usize,
    budget: &Budget,
) -> Result<LinearCode, QstabError> {
    let params = stabilizer_from_self_orthogonal(d_code, budget)?;
    if params.d <= 1 {
        return Err(QstabError::DistanceOne);
    }
    let short = d_code.shorten(&[position])?;
    if !short.is_self_orthogonal(DualKind::Hermitian)? {
        return Err(QstabError::NotSelfOrthogonal);
    }
    Ok(short)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field;

    #[test]
    fn zero_code_gives_full_space() {
        let f = field(3, 2).unwrap();
        let p = stabilizer_from_self_orthogonal(&LinearCode::zero(f, 4), &Budget::default()).unwrap();
        assert_eq!((p.n, p.k, p.d), (4, 4, 1));
        assert!(qmds_check(&p));
        assert_eq!(
            puncture_stabilizer(&LinearCode::zero(field(3, 2).unwrap(), 4), 0, &Budget::default()),
            Err(QstabError::DistanceOne)
        );
    }

    #[test]
    fn not_self_orthogonal_rejected() {
        let f = field(3, 2).unwrap();
        let rep = LinearCode::repetition(f, 4);
        assert_eq!(
            stabilizer_from_self_orthogonal(&rep, &Budget::default()),
            Err(QstabError::NotSelfOrthogonal)
        );
    }
}
