//! Detection of genuine multipartite entanglement (GME) in tripartite
//! qudit states.
//!
//! The pipeline: build the su(d) generator basis ([`basis`]), assemble the
//! full three-body correlation matrix of a density matrix
//! ([`correlation`]), take its trace norm, and compare against closed-form
//! thresholds ([`criteria`]). A norm above the threshold certifies GME;
//! at or below it the test is inconclusive. [`analysis`] sweeps
//! white-noise families and solves for critical visibilities;
//! [`verification`] provides independent numerical oracles and the
//! Monte-Carlo soundness scans.
//!
//! All numerics are generic over the scalar precision through
//! [`scalar::Scalar`] (implemented for `f32` and `f64`); the `*64`/`*32`
//! aliases below pin the common instantiations.
//!
//! ```
//! use gme_kit::criteria::{evaluate, CriterionId, Verdict};
//! use gme_kit::states::{ghz_state, white_noise_mix};
//!
//! let noisy = white_noise_mix(&ghz_state::<f64>(), 0.8).unwrap();
//! let verdict = evaluate(&noisy, CriterionId::Thm1).unwrap();
//! assert_eq!(verdict.verdict, Verdict::Gme);
//! ```

pub mod analysis;
pub mod basis;
pub mod correlation;
pub mod criteria;
pub mod error;
pub mod scalar;
pub mod states;
pub mod verification;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type GeneratorBasis64 = basis::GeneratorBasis<f64>;
pub type DensityState64 = states::DensityState<f64>;
pub type CorrelationMatrix64 = correlation::CorrelationMatrix<f64>;
pub type CoefficientSet64 = correlation::CoefficientSet<f64>;
pub type CriterionVerdict64 = criteria::CriterionVerdict<f64>;
pub type SweepRecord64 = analysis::SweepRecord<f64>;
pub type CriticalPoint64 = analysis::CriticalPoint<f64>;
pub type SchmidtForm64 = verification::SchmidtForm<f64>;

pub type GeneratorBasis32 = basis::GeneratorBasis<f32>;
pub type DensityState32 = states::DensityState<f32>;
pub type CorrelationMatrix32 = correlation::CorrelationMatrix<f32>;
