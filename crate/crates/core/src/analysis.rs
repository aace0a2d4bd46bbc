//! Parameter sweeps, critical-visibility solving, and the literature
//! comparison tables for the three worked examples.
//!
//! Two parameter directions exist because the worked examples flip
//! conventions: the GHZ and GGHZ mixtures use x as the noise weight, the W
//! mixture uses x as the state weight. The library normalizes to
//! visibility internally and converts at this boundary.

use std::collections::BTreeMap;

use crate::basis::{build_basis, Convention};
use crate::correlation::full_correlation_matrix;
use crate::criteria::{threshold, trace_norm, CriterionId};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::states::{white_noise_mix, DensityState};

/// How the sweep parameter x maps onto the white-noise visibility.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NoiseDirection {
    /// x is the noise weight: `v = 1 − x`.
    XIsNoise,
    /// x is the visibility itself: `v = x`.
    XIsVisibility,
}

impl NoiseDirection {
    pub fn visibility<T: Scalar>(self, x: T) -> T {
        match self {
            NoiseDirection::XIsNoise => T::one() - x,
            NoiseDirection::XIsVisibility => x,
        }
    }

    pub fn from_visibility<T: Scalar>(self, v: T) -> T {
        // The map is an involution.
        self.visibility(v)
    }
}

/// The worked examples with published comparison values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExampleId {
    /// GHZ + white noise, x = noise weight.
    Ex1,
    /// W + white noise, x = visibility.
    Ex2,
    /// GGHZ (d = 3) + white noise, x = noise weight.
    Ex3,
}

/// Comparison columns carried by sweep records. `f1`/`f2` mirror the
/// computed tri-qubit margins; `f3` and `ref38` are literature closed
/// forms attached per example.
#[derive(Clone, Copy, Debug, Default)]
pub struct ComparisonValues<T> {
    pub f1: Option<T>,
    pub f2: Option<T>,
    pub f3: Option<T>,
    pub ref38: Option<T>,
}

/// One row of a sweep: parameter value, norm, and per-criterion margins.
#[derive(Clone, Debug)]
pub struct SweepRecord<T: Scalar> {
    pub x: T,
    pub norm: T,
    pub margins: BTreeMap<CriterionId, T>,
    pub comparisons: ComparisonValues<T>,
}

/// Evenly spaced grid over `[start, stop]` with `steps` points.
pub fn linspace<T: Scalar>(start: T, stop: T, steps: usize) -> Vec<T> {
    if steps == 0 {
        return Vec::new();
    }
    if steps == 1 {
        return vec![start];
    }
    let delta = (stop - start) / T::from_usize_c(steps - 1);
    (0..steps)
        .map(|i| {
            if i == steps - 1 {
                stop
            } else {
                start + delta * T::from_usize_c(i)
            }
        })
        .collect()
}

/// Sweep the white-noise family of a pure state over an x grid.
pub fn sweep<T: Scalar>(
    psi: &DensityState<T>,
    x_grid: &[T],
    direction: NoiseDirection,
) -> Result<Vec<SweepRecord<T>>> {
    if x_grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let d = psi.d();
    let basis = build_basis::<T>(d, Convention::PaperScaled)?;
    let criteria = CriterionId::applicable(d);
    let mut records = Vec::with_capacity(x_grid.len());
    for &x in x_grid {
        let v = direction.visibility(x);
        let rho = white_noise_mix(psi, v)?;
        let cm = full_correlation_matrix(&rho, &basis)?;
        let norm = trace_norm(cm.data())?;
        let mut margins = BTreeMap::new();
        for &c in &criteria {
            margins.insert(c, norm - threshold::<T>(c, d)?);
        }
        let comparisons = ComparisonValues {
            f1: margins.get(&CriterionId::Thm1).copied(),
            f2: if d == 2 {
                margins.get(&CriterionId::Ref29Bipartite).copied()
            } else {
                None
            },
            f3: None,
            ref38: None,
        };
        records.push(SweepRecord {
            x,
            norm,
            margins,
            comparisons,
        });
    }
    Ok(records)
}

/// Fill the literature-only columns for a known example.
pub fn attach_literature<T: Scalar>(
    records: &mut [SweepRecord<T>],
    example: ExampleId,
    direction: NoiseDirection,
) {
    for rec in records.iter_mut() {
        match (example, direction) {
            (ExampleId::Ex1, NoiseDirection::XIsNoise) => {
                rec.comparisons.f3 = Some(ex1_f3(rec.x));
            }
            (ExampleId::Ex2, _) => {
                rec.comparisons.ref38 = Some(ref38_visibility_threshold());
            }
            _ => {}
        }
    }
}

/// How a critical point was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolverMethod {
    /// `v* = threshold / ‖T(ψ)‖`, valid because the tensor is affine in
    /// the visibility.
    ClosedForm,
    /// Bracketing bisection on the computed margin.
    Bisection,
}

/// Parameter value at which a criterion's margin crosses zero.
#[derive(Clone, Copy, Debug)]
pub struct CriticalPoint<T: Scalar> {
    pub criterion: CriterionId,
    pub x_star: T,
    pub method: SolverMethod,
}

const BISECTION_MAX_ITERS: usize = 60;

/// Critical x of the white-noise family of `psi` under `criterion`,
/// expressed in the given parameter direction.
pub fn critical_visibility<T: Scalar>(
    psi: &DensityState<T>,
    criterion: CriterionId,
    direction: NoiseDirection,
    method: SolverMethod,
) -> Result<CriticalPoint<T>> {
    let d = psi.d();
    let thr = threshold::<T>(criterion, d)?;
    let basis = build_basis::<T>(d, Convention::PaperScaled)?;
    let pure_cm = full_correlation_matrix(psi, &basis)?;
    let pure_norm = trace_norm(pure_cm.data())?;
    if pure_norm <= thr {
        return Err(Error::NoCrossing {
            norm: pure_norm.to_f64_c(),
            threshold: thr.to_f64_c(),
        });
    }
    let x_star = match method {
        SolverMethod::ClosedForm => direction.from_visibility(thr / pure_norm),
        SolverMethod::Bisection => {
            let margin_at = |x: T| -> Result<T> {
                let rho = white_noise_mix(psi, direction.visibility(x))?;
                let cm = full_correlation_matrix(&rho, &basis)?;
                Ok(trace_norm(cm.data())? - thr)
            };
            let mut lo = T::zero();
            let mut hi = T::one();
            let mut f_lo = margin_at(lo)?;
            let f_hi = margin_at(hi)?;
            if (f_lo > T::zero()) == (f_hi > T::zero()) {
                return Err(Error::NoCrossing {
                    norm: pure_norm.to_f64_c(),
                    threshold: thr.to_f64_c(),
                });
            }
            let tol = T::from_f64_c(1e-9);
            for _ in 0..BISECTION_MAX_ITERS {
                if hi - lo <= tol {
                    break;
                }
                let mid = (lo + hi) / T::from_usize_c(2);
                let f_mid = margin_at(mid)?;
                if (f_mid > T::zero()) == (f_lo > T::zero()) {
                    lo = mid;
                    f_lo = f_mid;
                } else {
                    hi = mid;
                }
            }
            (lo + hi) / T::from_usize_c(2)
        }
    };
    Ok(CriticalPoint {
        criterion,
        x_star,
        method,
    })
}

// Closed-form detection functionals of the worked examples, as functions
// of the example's own parameter x.

/// Example 1 margin under the tri-qubit criterion: `2√2(1−x) − √3`.
pub fn ex1_f1<T: Scalar>(x: T) -> T {
    T::from_usize_c(8).sqrt() * (T::one() - x) - T::from_usize_c(3).sqrt()
}

/// Example 1 margin under the bipartite bound: `2√2(1−x) − √6`.
pub fn ex1_f2<T: Scalar>(x: T) -> T {
    T::from_usize_c(8).sqrt() * (T::one() - x) - T::from_usize_c(6).sqrt()
}

/// Example 1 comparison functional `2 − 2x − √3` from the concurrence-style
/// literature bound.
pub fn ex1_f3<T: Scalar>(x: T) -> T {
    T::from_usize_c(2) * (T::one() - x) - T::from_usize_c(3).sqrt()
}

/// Example 2 margin under the tri-qubit criterion: `(4√2+√17)x/3 − √3`.
pub fn ex2_f1<T: Scalar>(x: T) -> T {
    let norm = (T::from_usize_c(32).sqrt() + T::from_usize_c(17).sqrt()) / T::from_usize_c(3);
    norm * x - T::from_usize_c(3).sqrt()
}

/// Published visibility threshold for the W mixture from the
/// semidefinite-programming literature; quoted, not recomputed.
pub fn ref38_visibility_threshold<T: Scalar>() -> T {
    T::from_f64_c(0.5464)
}

/// Example 3 margin under the qudit criterion:
/// `(27√2+3√6)(1−x)/2 − 3√21/2`.
pub fn ex3_thm2<T: Scalar>(x: T) -> T {
    ex3_norm(x) - crate::criteria::thm2_threshold::<T>(3).expect("d = 3")
}

/// Example 3 margin under the bipartite bound.
pub fn ex3_ref29<T: Scalar>(x: T) -> T {
    ex3_norm(x) - crate::criteria::ref29_threshold::<T>(3).expect("d = 3")
}

fn ex3_norm<T: Scalar>(x: T) -> T {
    let two = T::from_usize_c(2);
    (T::from_usize_c(27) * two.sqrt() + T::from_usize_c(3) * T::from_usize_c(6).sqrt()) / two
        * (T::one() - x)
}

/// One line of a literature-comparison table.
#[derive(Clone, Debug)]
pub struct LiteratureEntry<T: Scalar> {
    /// Column identifier (`f1`, `f2`, `f3`, `thm1`, `thm2`, `ref29`, `ref38`).
    pub id: &'static str,
    /// Detection functional of x, when the source states one in closed form.
    pub curve: Option<fn(T) -> T>,
    /// Root of the functional in `[0, 1]`: the detection boundary.
    pub crossover_x: Option<T>,
    /// A bare threshold constant, for sources quoted as a single number.
    pub constant: Option<T>,
}

/// The published comparison functions and constants for one example,
/// alongside this crate's own criterion curves.
pub fn literature_comparisons<T: Scalar>(example: ExampleId) -> Vec<LiteratureEntry<T>> {
    let one = T::one();
    let two = T::from_usize_c(2);
    match example {
        ExampleId::Ex1 => vec![
            LiteratureEntry {
                id: "f1",
                curve: Some(ex1_f1),
                crossover_x: Some(one - T::from_usize_c(6).sqrt() / T::from_usize_c(4)),
                constant: None,
            },
            LiteratureEntry {
                id: "f2",
                curve: Some(ex1_f2),
                crossover_x: Some(one - T::from_usize_c(3).sqrt() / two),
                constant: None,
            },
            LiteratureEntry {
                id: "f3",
                curve: Some(ex1_f3),
                crossover_x: Some(one - T::from_usize_c(3).sqrt() / two),
                constant: None,
            },
        ],
        ExampleId::Ex2 => vec![
            LiteratureEntry {
                id: "thm1",
                curve: Some(ex2_f1),
                crossover_x: Some(
                    T::from_usize_c(3) * T::from_usize_c(3).sqrt()
                        / (T::from_usize_c(32).sqrt() + T::from_usize_c(17).sqrt()),
                ),
                constant: None,
            },
            LiteratureEntry {
                id: "ref38",
                curve: None,
                crossover_x: Some(ref38_visibility_threshold()),
                constant: Some(ref38_visibility_threshold()),
            },
        ],
        ExampleId::Ex3 => {
            let norm0 = ex3_norm(T::zero());
            vec![
                LiteratureEntry {
                    id: "thm2",
                    curve: Some(ex3_thm2),
                    crossover_x: Some(
                        one - crate::criteria::thm2_threshold::<T>(3).expect("d = 3") / norm0,
                    ),
                    constant: None,
                },
                LiteratureEntry {
                    id: "ref29",
                    curve: Some(ex3_ref29),
                    crossover_x: Some(
                        one - crate::criteria::ref29_threshold::<T>(3).expect("d = 3") / norm0,
                    ),
                    constant: None,
                },
            ]
        }
    }
}
