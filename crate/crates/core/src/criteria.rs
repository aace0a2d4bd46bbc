//! Trace-norm GME criteria and verdicts.
//!
//! All criteria compare the trace norm of the full three-body correlation
//! matrix (paper scaling) against a closed-form threshold:
//!
//! * `Thm1` — tri-qubit criterion, threshold `√3`;
//! * `Thm2` — qudit criterion, threshold `√(d³(d−1)(d²−d+1)/8)`, which
//!   reduces to `Thm1` at `d = 2`;
//! * `Ref29Bipartite` — the bipartite correlation-matrix bound quoted for
//!   comparison, threshold `√(d³(d²−1)(d−1)/4)`.
//!
//! These are sufficient conditions only: a norm above the threshold proves
//! genuine multipartite entanglement, a norm at or below it proves nothing,
//! hence the verdict vocabulary {GME, Inconclusive}. Ties break toward
//! soundness (strict inequality).

use nalgebra::DMatrix;

use crate::basis::{build_basis, Convention};
use crate::correlation::{full_correlation_matrix, CorrelationMatrix, TensorKind};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::states::DensityState;

/// Which criterion a verdict refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CriterionId {
    Thm1,
    Thm2,
    Ref29Bipartite,
}

impl CriterionId {
    pub const ALL: [CriterionId; 3] = [
        CriterionId::Thm1,
        CriterionId::Thm2,
        CriterionId::Ref29Bipartite,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CriterionId::Thm1 => "thm1",
            CriterionId::Thm2 => "thm2",
            CriterionId::Ref29Bipartite => "ref29",
        }
    }

    /// Criteria applicable at local dimension `d`.
    pub fn applicable(d: usize) -> Vec<CriterionId> {
        if d == 2 {
            Self::ALL.to_vec()
        } else {
            vec![CriterionId::Thm2, CriterionId::Ref29Bipartite]
        }
    }
}

impl std::fmt::Display for CriterionId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Gme,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Gme => "GME",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Outcome of one criterion on one state.
#[derive(Clone, Copy, Debug)]
pub struct CriterionVerdict<T: Scalar> {
    pub criterion: CriterionId,
    pub norm: T,
    pub threshold: T,
    /// `norm − threshold`; GME iff strictly positive.
    pub margin: T,
    pub verdict: Verdict,
}

/// Nuclear norm: the sum of singular values.
pub fn trace_norm<T: Scalar>(m: &DMatrix<T>) -> Result<T> {
    for &x in m.iter() {
        if !x.finite() {
            return Err(Error::NonFinite);
        }
    }
    let svd = m.clone().svd(false, false);
    Ok(svd
        .singular_values
        .iter()
        .fold(T::zero(), |acc, &s| acc + s))
}

/// `√3`, the tri-qubit threshold.
pub fn thm1_threshold<T: Scalar>() -> T {
    T::from_usize_c(3).sqrt()
}

/// `√(d³(d−1)(d²−d+1)/8)`; equals `√3` at `d = 2`.
pub fn thm2_threshold<T: Scalar>(d: usize) -> Result<T> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let dd = T::from_usize_c(d);
    let one = T::one();
    let num = dd * dd * dd * (dd - one) * (dd * dd - dd + one);
    Ok((num / T::from_usize_c(8)).sqrt())
}

/// `√(d³(d²−1)(d−1)/4)`, the bipartite comparison bound (`√6` at `d = 2`).
pub fn ref29_threshold<T: Scalar>(d: usize) -> Result<T> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let dd = T::from_usize_c(d);
    let one = T::one();
    let num = dd * dd * dd * (dd * dd - one) * (dd - one);
    Ok((num / T::from_usize_c(4)).sqrt())
}

/// Threshold for `criterion` at local dimension `d`.
pub fn threshold<T: Scalar>(criterion: CriterionId, d: usize) -> Result<T> {
    match criterion {
        CriterionId::Thm1 => {
            if d != 2 {
                return Err(Error::CriterionDimension {
                    criterion: "thm1",
                    required: "exactly 2",
                    actual: d,
                });
            }
            Ok(thm1_threshold())
        }
        CriterionId::Thm2 => thm2_threshold(d),
        CriterionId::Ref29Bipartite => ref29_threshold(d),
    }
}

/// Render a verdict from an already-computed full correlation matrix.
///
/// The matrix must be the full three-body unfolding in the paper scaling;
/// anything else would compare against thresholds stated for a different
/// normalization.
pub fn evaluate_matrix<T: Scalar>(
    cm: &CorrelationMatrix<T>,
    criterion: CriterionId,
) -> Result<CriterionVerdict<T>> {
    if cm.kind() != TensorKind::FullThreeBody {
        return Err(Error::ConventionMismatch {
            context: "criterion evaluation needs the full three-body unfolding",
        });
    }
    if cm.convention() != Convention::PaperScaled {
        return Err(Error::ConventionMismatch {
            context: "criterion evaluation needs the paper scaling",
        });
    }
    let thr = threshold(criterion, cm.d())?;
    let norm = trace_norm(cm.data())?;
    let margin = norm - thr;
    Ok(CriterionVerdict {
        criterion,
        norm,
        threshold: thr,
        margin,
        verdict: if margin > T::zero() {
            Verdict::Gme
        } else {
            Verdict::Inconclusive
        },
    })
}

/// Evaluate one criterion on a state.
pub fn evaluate<T: Scalar>(
    rho: &DensityState<T>,
    criterion: CriterionId,
) -> Result<CriterionVerdict<T>> {
    // Fail fast on dimension mismatches before paying for the tensor.
    threshold::<T>(criterion, rho.d())?;
    let basis = build_basis::<T>(rho.d(), Convention::PaperScaled)?;
    let cm = full_correlation_matrix(rho, &basis)?;
    evaluate_matrix(&cm, criterion)
}
