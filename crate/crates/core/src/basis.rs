//! Traceless Hermitian generator basis of su(d).
//!
//! The basis comes in three bands, in this flat order:
//!
//! 1. diagonal generators `λ_m = sqrt(2/(m(m+1))) (Σ_{a<m}|a><a| − m|m><m|)`
//!    for `m = 1..d−1`,
//! 2. symmetric generators `λ_{kj} = |k><j| + |j><k|` for `0 ≤ j < k ≤ d−1`,
//! 3. antisymmetric generators `λ_{jk} = −i(|j><k| − |k><j|)`.
//!
//! Within the off-diagonal bands the pairs are ordered lexicographically in
//! `(k, j)`; trace norms of correlation tensors are invariant to the
//! intra-band order, but a fixed order keeps file output reproducible.
//!
//! Two scaling conventions are supported. `Standard` is the textbook
//! normalization `tr(λ_m λ_n) = 2 δ_mn`. `PaperScaled` multiplies every
//! generator by `d/2`, giving `tr = d²/2 δ_mn`; this is the scaling under
//! which the correlation coefficients and thresholds of the criteria in
//! [`crate::criteria`] are stated, and it coincides with `Standard` for
//! qubits. (A normalization of `tr = d δ_mn` sometimes quoted alongside
//! these generators is consistent with neither convention for `d > 2` and
//! does not reproduce the worked coefficient values; see the README.)

use nalgebra::{Complex, DMatrix};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Scaling convention for the generator matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Convention {
    /// `tr(λ_m λ_n) = 2 δ_mn`.
    Standard,
    /// `(d/2) ×` Standard, so `tr(λ_m λ_n) = (d²/2) δ_mn`. Required by the
    /// GME criteria; identical to `Standard` when `d = 2`.
    PaperScaled,
}

impl Convention {
    /// `tr(λ_m²)` for a non-identity generator under this convention.
    pub fn generator_norm_sq<T: Scalar>(self, d: usize) -> T {
        match self {
            Convention::Standard => T::from_usize_c(2),
            Convention::PaperScaled => {
                T::from_usize_c(d * d) / T::from_usize_c(2)
            }
        }
    }
}

/// Which generator a flat index refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorLabel {
    /// m-th diagonal generator, `m ∈ 1..=d−1`.
    Diagonal { m: usize },
    /// `|k><j| + |j><k|` with `j < k`.
    Symmetric { j: usize, k: usize },
    /// `−i(|j><k| − |k><j|)` with `j < k`.
    Antisymmetric { j: usize, k: usize },
}

impl GeneratorLabel {
    fn validate(self, d: usize) -> Result<()> {
        let bad = |reason: String| Err(Error::InvalidLabel { d, reason });
        match self {
            GeneratorLabel::Diagonal { m } => {
                if m == 0 || m >= d {
                    return bad(format!("diagonal index {m} not in 1..={}", d - 1));
                }
            }
            GeneratorLabel::Symmetric { j, k } | GeneratorLabel::Antisymmetric { j, k } => {
                if j >= k || k >= d {
                    return bad(format!("level pair ({j}, {k}) needs j < k < d"));
                }
            }
        }
        Ok(())
    }

    /// Flat index in `1..=d²−1` under the three-band ordering.
    pub fn flat_index(self, d: usize) -> Result<usize> {
        self.validate(d)?;
        let pairs_before = |k: usize, j: usize| k * (k - 1) / 2 + j;
        Ok(match self {
            GeneratorLabel::Diagonal { m } => m,
            GeneratorLabel::Symmetric { j, k } => d - 1 + pairs_before(k, j) + 1,
            GeneratorLabel::Antisymmetric { j, k } => {
                d - 1 + d * (d - 1) / 2 + pairs_before(k, j) + 1
            }
        })
    }

    /// Inverse of [`GeneratorLabel::flat_index`].
    pub fn from_flat_index(d: usize, flat: usize) -> Result<Self> {
        let n = d * d - 1;
        if flat == 0 || flat > n {
            return Err(Error::IndexOutOfRange { index: flat, max: n });
        }
        let n_pairs = d * (d - 1) / 2;
        if flat <= d - 1 {
            return Ok(GeneratorLabel::Diagonal { m: flat });
        }
        let (pair_pos, antisymmetric) = if flat <= d - 1 + n_pairs {
            (flat - d, false)
        } else {
            (flat - d - n_pairs, true)
        };
        // Invert pair_pos = k(k−1)/2 + j with j < k.
        let mut k = 1;
        while (k + 1) * k / 2 <= pair_pos {
            k += 1;
        }
        let j = pair_pos - k * (k - 1) / 2;
        Ok(if antisymmetric {
            GeneratorLabel::Antisymmetric { j, k }
        } else {
            GeneratorLabel::Symmetric { j, k }
        })
    }
}

impl std::fmt::Display for GeneratorLabel {
    /// Digit-string labels: diagonal `m` prints as `m`, symmetric `λ_{kj}`
    /// as `kj`, antisymmetric `λ_{jk}` as `jk`. Unambiguous for d ≤ 10.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GeneratorLabel::Diagonal { m } => write!(f, "{m}"),
            GeneratorLabel::Symmetric { j, k } => write!(f, "{k}{j}"),
            GeneratorLabel::Antisymmetric { j, k } => write!(f, "{j}{k}"),
        }
    }
}

/// The ordered set of `d²−1` generators under a scaling convention.
///
/// Immutable after construction; share freely across threads.
#[derive(Clone, Debug)]
pub struct GeneratorBasis<T: Scalar> {
    d: usize,
    convention: Convention,
    matrices: Vec<DMatrix<Complex<T>>>,
    labels: Vec<GeneratorLabel>,
}

/// Build the generator basis for local dimension `d`.
pub fn build_basis<T: Scalar>(d: usize, convention: Convention) -> Result<GeneratorBasis<T>> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let mut labels = Vec::with_capacity(d * d - 1);
    for m in 1..d {
        labels.push(GeneratorLabel::Diagonal { m });
    }
    for k in 1..d {
        for j in 0..k {
            labels.push(GeneratorLabel::Symmetric { j, k });
        }
    }
    for k in 1..d {
        for j in 0..k {
            labels.push(GeneratorLabel::Antisymmetric { j, k });
        }
    }
    let scale = match convention {
        Convention::Standard => T::one(),
        Convention::PaperScaled => T::from_usize_c(d) / T::from_usize_c(2),
    };
    let matrices = labels
        .iter()
        .map(|&label| generator_matrix(d, label) * Complex::new(scale, T::zero()))
        .collect();
    Ok(GeneratorBasis {
        d,
        convention,
        matrices,
        labels,
    })
}

fn generator_matrix<T: Scalar>(d: usize, label: GeneratorLabel) -> DMatrix<Complex<T>> {
    let mut m = DMatrix::zeros(d, d);
    let re = |x: T| Complex::new(x, T::zero());
    match label {
        GeneratorLabel::Diagonal { m: idx } => {
            let s = (T::from_usize_c(2) / T::from_usize_c(idx * (idx + 1))).sqrt();
            for a in 0..idx {
                m[(a, a)] = re(s);
            }
            m[(idx, idx)] = re(-s * T::from_usize_c(idx));
        }
        GeneratorLabel::Symmetric { j, k } => {
            m[(k, j)] = re(T::one());
            m[(j, k)] = re(T::one());
        }
        GeneratorLabel::Antisymmetric { j, k } => {
            m[(j, k)] = Complex::new(T::zero(), -T::one());
            m[(k, j)] = Complex::new(T::zero(), T::one());
        }
    }
    m
}

impl<T: Scalar> GeneratorBasis<T> {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    /// Number of generators, `d²−1`.
    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn matrices(&self) -> &[DMatrix<Complex<T>>] {
        &self.matrices
    }

    pub fn labels(&self) -> &[GeneratorLabel] {
        &self.labels
    }

    /// Generator at flat index `1..=d²−1`.
    pub fn generator(&self, flat_index: usize) -> Result<&DMatrix<Complex<T>>> {
        if flat_index == 0 || flat_index > self.matrices.len() {
            return Err(Error::IndexOutOfRange {
                index: flat_index,
                max: self.matrices.len(),
            });
        }
        Ok(&self.matrices[flat_index - 1])
    }

    pub fn label_of(&self, flat_index: usize) -> Result<GeneratorLabel> {
        if flat_index == 0 || flat_index > self.labels.len() {
            return Err(Error::IndexOutOfRange {
                index: flat_index,
                max: self.labels.len(),
            });
        }
        Ok(self.labels[flat_index - 1])
    }

    pub fn flat_index_of(&self, label: GeneratorLabel) -> Result<usize> {
        label.flat_index(self.d)
    }

    /// `tr(λ_m²)` shared by all generators of this basis.
    pub fn generator_norm_sq(&self) -> T {
        self.convention.generator_norm_sq(self.d)
    }

    /// The d×d identity, i.e. the operator behind coefficient index 0.
    pub fn identity(&self) -> DMatrix<Complex<T>> {
        DMatrix::identity(self.d, self.d)
    }
}

/// Operators on the top two levels `|d−1⟩` and `|d−2⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TopLevel {
    /// `|d−1⟩` (written `|−1⟩` in the shorthand of the criteria).
    Last,
    /// `|d−2⟩` (`|−2⟩`).
    SecondLast,
}

impl TopLevel {
    pub fn index(self, d: usize) -> usize {
        match self {
            TopLevel::Last => d - 1,
            TopLevel::SecondLast => d - 2,
        }
    }
}

/// Expansion of `|ket⟩⟨bra|` (ket, bra on the top two levels) over
/// `{1, λ_{d−1}, λ_{d−2}, λ_{d−1 d−2}, λ_{d−2 d−1}}` in the Standard
/// convention.
///
/// For `d = 2` there is no second diagonal generator; `on_diag_second` is
/// zero and the slot is skipped on reconstruction.
#[derive(Clone, Debug)]
pub struct ProjectorExpansion<T: Scalar> {
    pub ket: TopLevel,
    pub bra: TopLevel,
    pub on_identity: Complex<T>,
    pub on_diag_last: Complex<T>,
    pub on_diag_second: Complex<T>,
    pub on_symmetric: Complex<T>,
    pub on_antisymmetric: Complex<T>,
}

impl<T: Scalar> ProjectorExpansion<T> {
    /// Rebuild the explicit d×d matrix from the coefficients.
    pub fn reconstruct(&self, d: usize) -> Result<DMatrix<Complex<T>>> {
        let basis = build_basis::<T>(d, Convention::Standard)?;
        let lam = |label: GeneratorLabel| -> Result<&DMatrix<Complex<T>>> {
            basis.generator(label.flat_index(d)?)
        };
        let mut m = DMatrix::identity(d, d) * self.on_identity;
        m += lam(GeneratorLabel::Diagonal { m: d - 1 })? * self.on_diag_last;
        if d > 2 {
            m += lam(GeneratorLabel::Diagonal { m: d - 2 })? * self.on_diag_second;
        }
        let pair = (d - 2, d - 1);
        m += lam(GeneratorLabel::Symmetric { j: pair.0, k: pair.1 })? * self.on_symmetric;
        m += lam(GeneratorLabel::Antisymmetric { j: pair.0, k: pair.1 })? * self.on_antisymmetric;
        Ok(m)
    }
}

/// Coefficient table expressing the four top-level operators `|−1⟩⟨−1|`,
/// `|−2⟩⟨−2|`, `|−1⟩⟨−2|`, `|−2⟩⟨−1|` over the identity and the four
/// distinguished generators, Standard convention.
pub fn qudit_projector_identities<T: Scalar>(d: usize) -> Result<[ProjectorExpansion<T>; 4]> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let re = |x: T| Complex::new(x, T::zero());
    let zero = re(T::zero());
    let td = T::from_usize_c(d);
    let two = T::from_usize_c(2);
    let inv_d = re(T::one() / td);
    let half = re(T::one() / two);

    // |−1⟩⟨−1| = (1/d)(1 − sqrt(d(d−1)/2) λ_{−1})
    let proj_last = ProjectorExpansion {
        ket: TopLevel::Last,
        bra: TopLevel::Last,
        on_identity: inv_d,
        on_diag_last: re(-(td * (td - T::one()) / two).sqrt() / td),
        on_diag_second: zero,
        on_symmetric: zero,
        on_antisymmetric: zero,
    };
    // |−2⟩⟨−2| = (1/d)1 + λ_{−1}/sqrt(2d(d−1)) − sqrt((d−2)/(2(d−1))) λ_{−2}
    let proj_second = ProjectorExpansion {
        ket: TopLevel::SecondLast,
        bra: TopLevel::SecondLast,
        on_identity: inv_d,
        on_diag_last: re(T::one() / (two * td * (td - T::one())).sqrt()),
        on_diag_second: re(-((td - two) / (two * (td - T::one()))).sqrt()),
        on_symmetric: zero,
        on_antisymmetric: zero,
    };
    // |−1⟩⟨−2| = (λ_{−1−2} − i λ_{−2−1})/2 and its adjoint.
    let raise = ProjectorExpansion {
        ket: TopLevel::Last,
        bra: TopLevel::SecondLast,
        on_identity: zero,
        on_diag_last: zero,
        on_diag_second: zero,
        on_symmetric: half,
        on_antisymmetric: Complex::new(T::zero(), -T::one() / two),
    };
    let lower = ProjectorExpansion {
        ket: TopLevel::SecondLast,
        bra: TopLevel::Last,
        on_identity: zero,
        on_diag_last: zero,
        on_diag_second: zero,
        on_symmetric: half,
        on_antisymmetric: Complex::new(T::zero(), T::one() / two),
    };
    Ok([proj_last, proj_second, raise, lower])
}
