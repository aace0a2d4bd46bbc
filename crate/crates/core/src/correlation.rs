//! Three-body correlation coefficients and their matrix unfoldings.
//!
//! The coefficient `t_{f,g,h} = tr(ρ λ_f ⊗ λ_g ⊗ λ_h)` is real for any
//! Hermitian ρ; index 0 denotes the (never rescaled) identity. Two
//! unfoldings are provided:
//!
//! * the full `(d²−1) × (d²−1)²` matrix whose row is `f` and whose column
//!   is `(g−1)(d²−1) + h` — this is the object the GME criteria take the
//!   trace norm of;
//! * the restricted `4 × 16` matrix over the four distinguished generators
//!   `λ_{d−1}, λ_{d−2}, λ_{d−1 d−2}, λ_{d−2 d−1}`, laid out as four `4 × 4`
//!   blocks with the middle index fixed per block. It exists as a
//!   canonical-frame diagnostic: for canonical biseparable states every
//!   full-tensor entry outside these rows and columns vanishes, so both
//!   unfoldings carry the same singular values there.
//!
//! Generators have at most `d` nonzero entries, so coefficients are
//! computed by sparse triple contraction rather than materializing the
//! `d³ × d³` Kronecker products.

use nalgebra::{Complex, DMatrix};

use crate::basis::{Convention, GeneratorBasis, GeneratorLabel};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::states::DensityState;

/// Which unfolding a [`CorrelationMatrix`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorKind {
    FullThreeBody,
    Restricted4x16,
}

/// A real rectangular unfolding of three-body correlation coefficients,
/// with explicit row and column index maps.
#[derive(Clone, Debug)]
pub struct CorrelationMatrix<T: Scalar> {
    d: usize,
    convention: Convention,
    kind: TensorKind,
    rows: Vec<GeneratorLabel>,
    cols: Vec<(GeneratorLabel, GeneratorLabel)>,
    data: DMatrix<T>,
}

impl<T: Scalar> CorrelationMatrix<T> {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn kind(&self) -> TensorKind {
        self.kind
    }

    pub fn rows(&self) -> &[GeneratorLabel] {
        &self.rows
    }

    pub fn cols(&self) -> &[(GeneratorLabel, GeneratorLabel)] {
        &self.cols
    }

    pub fn data(&self) -> &DMatrix<T> {
        &self.data
    }
}

type Triplets<T> = Vec<(usize, usize, Complex<T>)>;

fn nonzero_triplets<T: Scalar>(m: &DMatrix<Complex<T>>) -> Triplets<T> {
    let zero = Complex::new(T::zero(), T::zero());
    let mut out = Vec::new();
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            let v = m[(r, c)];
            if v != zero {
                out.push((r, c, v));
            }
        }
    }
    out
}

/// Sparse forms of identity (slot 0) and all generators (slots 1..=d²−1).
fn operator_triplets<T: Scalar>(basis: &GeneratorBasis<T>) -> Vec<Triplets<T>> {
    let d = basis.d();
    let one = Complex::new(T::one(), T::zero());
    let mut ops = Vec::with_capacity(d * d);
    ops.push((0..d).map(|i| (i, i, one)).collect());
    for m in basis.matrices() {
        ops.push(nonzero_triplets(m));
    }
    ops
}

/// `tr(ρ · A⊗B⊗C)` from sparse factors: each entry `M[row, col]` of the
/// product operator picks up `ρ[col, row]`.
fn expect_triple<T: Scalar>(
    rho: &DMatrix<Complex<T>>,
    d: usize,
    a: &Triplets<T>,
    b: &Triplets<T>,
    c: &Triplets<T>,
) -> Complex<T> {
    let d2 = d * d;
    let mut acc = Complex::new(T::zero(), T::zero());
    for &(ar, ac, av) in a {
        for &(br, bc, bv) in b {
            let ab = av * bv;
            let row_base = ar * d2 + br * d;
            let col_base = ac * d2 + bc * d;
            for &(cr, cc, cv) in c {
                acc += ab * cv * rho[(col_base + cc, row_base + cr)];
            }
        }
    }
    acc
}

fn real_part_checked<T: Scalar>(value: Complex<T>) -> Result<T> {
    if value.im.abs() > T::residue_tol() {
        return Err(Error::NumericalIntegrity {
            context: "correlation coefficient",
            residue: value.im.abs().to_f64_c(),
        });
    }
    Ok(value.re)
}

fn check_dims<T: Scalar>(rho: &DensityState<T>, basis: &GeneratorBasis<T>) -> Result<()> {
    if rho.d() != basis.d() {
        return Err(Error::DimensionMismatch {
            expected: basis.d(),
            actual: rho.d(),
        });
    }
    Ok(())
}

/// Single coefficient `t_{f,g,h}`; indices run over `0..=d²−1` with 0 the
/// identity.
pub fn coefficient<T: Scalar>(
    rho: &DensityState<T>,
    basis: &GeneratorBasis<T>,
    f: usize,
    g: usize,
    h: usize,
) -> Result<T> {
    check_dims(rho, basis)?;
    let d = basis.d();
    let max = d * d - 1;
    for idx in [f, g, h] {
        if idx > max {
            return Err(Error::IndexOutOfRange { index: idx, max });
        }
    }
    let one = Complex::new(T::one(), T::zero());
    let id: Triplets<T> = (0..d).map(|i| (i, i, one)).collect();
    let op = |idx: usize| -> Result<Triplets<T>> {
        Ok(if idx == 0 {
            id.clone()
        } else {
            nonzero_triplets(basis.generator(idx)?)
        })
    };
    let value = expect_triple(rho.matrix(), d, &op(f)?, &op(g)?, &op(h)?);
    real_part_checked(value)
}

/// The full `(d²−1) × (d²−1)²` unfolding; entries match [`coefficient`]
/// pointwise.
pub fn full_correlation_matrix<T: Scalar>(
    rho: &DensityState<T>,
    basis: &GeneratorBasis<T>,
) -> Result<CorrelationMatrix<T>> {
    check_dims(rho, basis)?;
    let d = basis.d();
    let n = d * d - 1;
    let ops = operator_triplets(basis);
    let mut data = DMatrix::zeros(n, n * n);
    for f in 1..=n {
        for g in 1..=n {
            for h in 1..=n {
                let value = expect_triple(rho.matrix(), d, &ops[f], &ops[g], &ops[h]);
                data[(f - 1, (g - 1) * n + (h - 1))] = real_part_checked(value)?;
            }
        }
    }
    let rows = basis.labels().to_vec();
    let mut cols = Vec::with_capacity(n * n);
    for &g in basis.labels() {
        for &h in basis.labels() {
            cols.push((g, h));
        }
    }
    Ok(CorrelationMatrix {
        d,
        convention: basis.convention(),
        kind: TensorKind::FullThreeBody,
        rows,
        cols,
        data,
    })
}

/// Flat indices of the four distinguished generators, in row order
/// `(λ_{d−1}, λ_{d−2}, λ_{d−1 d−2}, λ_{d−2 d−1})`.
pub fn restricted_flat_indices(d: usize) -> Result<[usize; 4]> {
    if d < 3 {
        return Err(Error::RestrictedRequiresQudit);
    }
    Ok([
        GeneratorLabel::Diagonal { m: d - 1 }.flat_index(d)?,
        GeneratorLabel::Diagonal { m: d - 2 }.flat_index(d)?,
        GeneratorLabel::Symmetric { j: d - 2, k: d - 1 }.flat_index(d)?,
        GeneratorLabel::Antisymmetric { j: d - 2, k: d - 1 }.flat_index(d)?,
    ])
}

/// The `4 × 16` unfolding over the four distinguished generators, with the
/// middle index fixed per 4-column block. Rejects `d = 2`, where the
/// second diagonal generator does not exist.
pub fn restricted_correlation_matrix<T: Scalar>(
    rho: &DensityState<T>,
    basis: &GeneratorBasis<T>,
) -> Result<CorrelationMatrix<T>> {
    check_dims(rho, basis)?;
    let d = basis.d();
    let flats = restricted_flat_indices(d)?;
    let ops: Vec<Triplets<T>> = flats
        .iter()
        .map(|&fi| basis.generator(fi).map(nonzero_triplets))
        .collect::<Result<_>>()?;
    let labels: Vec<GeneratorLabel> = flats
        .iter()
        .map(|&fi| basis.label_of(fi))
        .collect::<Result<_>>()?;
    let mut data = DMatrix::zeros(4, 16);
    for (fi, fo) in ops.iter().enumerate() {
        for (gi, go) in ops.iter().enumerate() {
            for (hi, ho) in ops.iter().enumerate() {
                let value = expect_triple(rho.matrix(), d, fo, go, ho);
                data[(fi, gi * 4 + hi)] = real_part_checked(value)?;
            }
        }
    }
    let mut cols = Vec::with_capacity(16);
    for &g in &labels {
        for &h in &labels {
            cols.push((g, h));
        }
    }
    Ok(CorrelationMatrix {
        d,
        convention: basis.convention(),
        kind: TensorKind::Restricted4x16,
        rows: labels,
        cols,
        data,
    })
}

/// The complete coefficient table `t_{f,g,h}` for `f,g,h ∈ 0..d²`, slot 0
/// being the identity. Enough to reconstruct ρ exactly.
#[derive(Clone, Debug)]
pub struct CoefficientSet<T: Scalar> {
    d: usize,
    convention: Convention,
    data: Vec<T>,
}

impl<T: Scalar> CoefficientSet<T> {
    pub fn from_parts(d: usize, convention: Convention, data: Vec<T>) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDimension(d));
        }
        let n = d * d;
        if data.len() != n * n * n {
            return Err(Error::IncompleteTable {
                expected: n * n * n,
                actual: data.len(),
            });
        }
        Ok(CoefficientSet { d, convention, data })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn get(&self, f: usize, g: usize, h: usize) -> T {
        let n = self.d * self.d;
        self.data[(f * n + g) * n + h]
    }
}

/// Extract the complete table from a state.
pub fn coefficient_set<T: Scalar>(
    rho: &DensityState<T>,
    basis: &GeneratorBasis<T>,
) -> Result<CoefficientSet<T>> {
    check_dims(rho, basis)?;
    let d = basis.d();
    let n = d * d;
    let ops = operator_triplets(basis);
    let mut data = Vec::with_capacity(n * n * n);
    for f in 0..n {
        for g in 0..n {
            for h in 0..n {
                let value = expect_triple(rho.matrix(), d, &ops[f], &ops[g], &ops[h]);
                data.push(real_part_checked(value)?);
            }
        }
    }
    CoefficientSet::from_parts(d, basis.convention(), data)
}

/// Rebuild `ρ = Σ t_{f,g,h} λ_f⊗λ_g⊗λ_h / (N_f N_g N_h)` with the dual
/// normalization factors `N_0 = d` and `N_m = tr(λ_m²)` of the basis
/// convention.
pub fn reconstruct_density<T: Scalar>(
    coeffs: &CoefficientSet<T>,
    basis: &GeneratorBasis<T>,
) -> Result<DensityState<T>> {
    if coeffs.d() != basis.d() {
        return Err(Error::DimensionMismatch {
            expected: basis.d(),
            actual: coeffs.d(),
        });
    }
    if coeffs.convention() != basis.convention() {
        return Err(Error::ConventionMismatch {
            context: "coefficient table vs basis",
        });
    }
    let d = basis.d();
    let n = d * d;
    let dim = d * d * d;
    let ops = operator_triplets(basis);
    let norm_id = T::from_usize_c(d);
    let norm_gen = basis.generator_norm_sq();
    let norm = |idx: usize| if idx == 0 { norm_id } else { norm_gen };
    let mut m = DMatrix::<Complex<T>>::zeros(dim, dim);
    for f in 0..n {
        for g in 0..n {
            for h in 0..n {
                let t = coeffs.get(f, g, h);
                if t == T::zero() {
                    continue;
                }
                let w = Complex::new(t / (norm(f) * norm(g) * norm(h)), T::zero());
                for &(ar, ac, av) in &ops[f] {
                    for &(br, bc, bv) in &ops[g] {
                        let ab = w * av * bv;
                        let row_base = ar * d * d + br * d;
                        let col_base = ac * d * d + bc * d;
                        for &(cr, cc, cv) in &ops[h] {
                            m[(row_base + cr, col_base + cc)] += ab * cv;
                        }
                    }
                }
            }
        }
    }
    DensityState::new(d, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::build_basis;
    use crate::states::{
        canonical_biseparable, ghz_state, gghz_state, maximally_mixed, pure_state, w_state,
        white_noise_mix, CanonicalFamily,
    };
    use approx::assert_abs_diff_eq;

    fn paper_basis(d: usize) -> GeneratorBasis<f64> {
        build_basis(d, Convention::PaperScaled).unwrap()
    }

    #[test]
    fn ghz_triple_x_coefficient_is_one() {
        let rho = ghz_state::<f64>();
        let basis = paper_basis(2);
        let t = coefficient(&rho, &basis, 2, 2, 2).unwrap();
        assert_abs_diff_eq!(t, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn maximally_mixed_has_no_correlations() {
        for d in [2, 3] {
            let rho = maximally_mixed::<f64>(d).unwrap();
            let basis = paper_basis(d);
            let cm = full_correlation_matrix(&rho, &basis).unwrap();
            assert!(cm.data().amax() <= 1e-14);
            // But the identity slot carries the trace.
            assert_abs_diff_eq!(coefficient(&rho, &basis, 0, 0, 0).unwrap(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn gghz_second_diagonal_triple() {
        let rho = gghz_state::<f64>(3).unwrap();
        let basis = paper_basis(3);
        let t = coefficient(&rho, &basis, 2, 2, 2).unwrap();
        assert_abs_diff_eq!(t, -3.0 * 3.0_f64.sqrt() / 4.0, epsilon = 1e-12);
    }

    #[test]
    fn coefficient_index_bounds() {
        let rho = ghz_state::<f64>();
        let basis = paper_basis(2);
        assert!(coefficient(&rho, &basis, 4, 0, 0).is_err());
        assert!(coefficient(&rho, &basis, 0, 0, 4).is_err());
    }

    #[test]
    fn ghz_white_noise_matches_published_layout() {
        // Nonzero entries are t_{2,2,2} = 1−x and t_{2,3,3} = t_{3,2,3} =
        // t_{3,3,2} = x−1, sitting at fixed columns of the 3×9 unfolding.
        let x = 0.3;
        let rho = white_noise_mix(&ghz_state::<f64>(), 1.0 - x).unwrap();
        let basis = paper_basis(2);
        let cm = full_correlation_matrix(&rho, &basis).unwrap();
        let m = cm.data();
        assert_eq!(m.shape(), (3, 9));
        let mut expected = DMatrix::<f64>::zeros(3, 9);
        expected[(1, 4)] = 1.0 - x; // t_{2,2,2}
        expected[(1, 8)] = x - 1.0; // t_{2,3,3}
        expected[(2, 5)] = x - 1.0; // t_{3,2,3}
        expected[(2, 7)] = x - 1.0; // t_{3,3,2}
        assert!((m - expected).amax() <= 1e-12);
    }

    #[test]
    fn w_white_noise_has_the_seven_nonzeros() {
        let x = 0.8;
        let rho = white_noise_mix(&w_state::<f64>(), x).unwrap();
        let basis = paper_basis(2);
        let cm = full_correlation_matrix(&rho, &basis).unwrap();
        let idx = |f: usize, g: usize, h: usize| (f - 1, (g - 1) * 3 + h - 1);
        let m = cm.data();
        let q = 2.0 * x / 3.0;
        assert_abs_diff_eq!(m[idx(1, 1, 1)], -x, epsilon = 1e-12);
        for (f, g, h) in [
            (1, 2, 2),
            (2, 1, 2),
            (2, 2, 1),
            (1, 3, 3),
            (3, 1, 3),
            (3, 3, 1),
        ] {
            assert_abs_diff_eq!(m[idx(f, g, h)], q, epsilon = 1e-12);
        }
        let nonzeros = m.iter().filter(|v| v.abs() > 1e-12).count();
        assert_eq!(nonzeros, 7);
    }

    #[test]
    fn gghz_full_tensor_has_sixteen_nonzeros() {
        let rho = gghz_state::<f64>(3).unwrap();
        let basis = paper_basis(3);
        let cm = full_correlation_matrix(&rho, &basis).unwrap();
        let nonzeros = cm.data().iter().filter(|v| v.abs() > 1e-12).count();
        assert_eq!(nonzeros, 16);
    }

    #[test]
    fn restricted_matrix_rejects_qubits() {
        let rho = ghz_state::<f64>();
        let basis = paper_basis(2);
        assert!(matches!(
            restricted_correlation_matrix(&rho, &basis),
            Err(Error::RestrictedRequiresQudit)
        ));
    }

    #[test]
    fn restricted_matrix_of_diag_pair_matches_closed_forms() {
        let d = 3;
        let x: f64 = 0.6;
        let y = (1.0 - x * x).sqrt();
        let rho = canonical_biseparable::<f64>(d, CanonicalFamily::DiagPair, x).unwrap();
        let basis = paper_basis(d);
        let cm = restricted_correlation_matrix(&rho, &basis).unwrap();
        let m = cm.data();
        let df = d as f64;
        let pref = df * df * (df - 1.0).sqrt() / (2.0 * 2.0_f64.sqrt());
        // Row 1 carries all the weight; the four blocks follow the
        // published sparse pattern.
        let mut expected = DMatrix::<f64>::zeros(4, 16);
        expected[(0, 0)] =
            pref * (-(df - 1.0) / df.sqrt() * x * x - 1.0 / ((df - 1.0) * df.sqrt()) * y * y);
        expected[(0, 1)] = pref * (df - 2.0).sqrt() / (df - 1.0) * y * y;
        expected[(0, 4)] = pref * (df - 2.0).sqrt() / (df - 1.0) * y * y;
        expected[(0, 5)] = pref * (-(df - 2.0) / (df - 1.0) * df.sqrt() * y * y);
        expected[(0, 10)] = pref * (-df.sqrt() * x * y);
        expected[(0, 15)] = pref * (df.sqrt() * x * y);
        assert!((m - &expected).amax() <= 1e-12);
    }

    #[test]
    fn restricted_matrix_of_cross_pair_matches_closed_forms() {
        let d = 3;
        let x: f64 = 0.37;
        let y = (1.0 - x * x).sqrt();
        let rho = canonical_biseparable::<f64>(d, CanonicalFamily::CrossPair, x).unwrap();
        let basis = paper_basis(d);
        let cm = restricted_correlation_matrix(&rho, &basis).unwrap();
        let df = d as f64;
        let pref = df * df * (df - 1.0).sqrt() / (2.0 * 2.0_f64.sqrt());
        let mut expected = DMatrix::<f64>::zeros(4, 16);
        expected[(0, 0)] = pref / df.sqrt();
        expected[(0, 1)] = pref * (-(df - 2.0).sqrt() * x * x);
        expected[(0, 4)] = pref * (-(df - 2.0).sqrt() * y * y);
        expected[(0, 10)] = pref * (-df.sqrt() * x * y);
        // The antisymmetric block entry flips sign relative to DiagPair.
        expected[(0, 15)] = pref * (-df.sqrt() * x * y);
        assert!((cm.data() - &expected).amax() <= 1e-12);
    }

    #[test]
    fn canonical_states_have_no_support_outside_the_four_generators() {
        let d = 3;
        let basis = paper_basis(d);
        let special = restricted_flat_indices(d).unwrap();
        for family in [CanonicalFamily::DiagPair, CanonicalFamily::CrossPair] {
            let rho = canonical_biseparable::<f64>(d, family, 0.55).unwrap();
            let cm = full_correlation_matrix(&rho, &basis).unwrap();
            let n = d * d - 1;
            for f in 1..=n {
                for g in 1..=n {
                    for h in 1..=n {
                        let inside = special.contains(&f)
                            && special.contains(&g)
                            && special.contains(&h);
                        if !inside {
                            let v = cm.data()[(f - 1, (g - 1) * n + h - 1)];
                            assert!(
                                v.abs() <= 1e-10,
                                "unexpected support at ({f},{g},{h}): {v}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn restricted_is_a_subtable_of_full() {
        let d = 3;
        let basis = paper_basis(d);
        let rho = gghz_state::<f64>(d).unwrap();
        let full = full_correlation_matrix(&rho, &basis).unwrap();
        let restricted = restricted_correlation_matrix(&rho, &basis).unwrap();
        let n = d * d - 1;
        let special = restricted_flat_indices(d).unwrap();
        for (ri, &f) in special.iter().enumerate() {
            for (gi, &g) in special.iter().enumerate() {
                for (hi, &h) in special.iter().enumerate() {
                    let a = full.data()[(f - 1, (g - 1) * n + h - 1)];
                    let b = restricted.data()[(ri, gi * 4 + hi)];
                    assert_abs_diff_eq!(a, b, epsilon = 1e-13);
                }
            }
        }
    }

    #[test]
    fn mixing_is_affine_in_visibility() {
        let basis = paper_basis(2);
        let psi = w_state::<f64>();
        let pure = full_correlation_matrix(&psi, &basis).unwrap();
        for v in [0.0, 0.25, 0.5464, 0.9] {
            let mixed = white_noise_mix(&psi, v).unwrap();
            let cm = full_correlation_matrix(&mixed, &basis).unwrap();
            let scaled = pure.data() * v;
            assert!((cm.data() - scaled).amax() <= 1e-12);
        }
    }

    #[test]
    fn reconstruction_roundtrip() {
        for d in [2usize, 3] {
            for convention in [Convention::Standard, Convention::PaperScaled] {
                let basis = build_basis::<f64>(d, convention).unwrap();
                let rho = gghz_state::<f64>(d).unwrap();
                let coeffs = coefficient_set(&rho, &basis).unwrap();
                let rebuilt = reconstruct_density(&coeffs, &basis).unwrap();
                assert!((rebuilt.matrix() - rho.matrix()).norm() <= 1e-10);
            }
        }
    }

    #[test]
    fn reconstruction_of_product_state_from_qubit_expansion() {
        // |000><000| = (1+λ₁)⊗(1+λ₁)⊗(1+λ₁)/8: its only nonzero
        // coefficients are t = 1 whenever every non-identity slot is λ₁.
        let basis = build_basis::<f64>(2, Convention::Standard).unwrap();
        let mut data = vec![0.0; 64];
        let n = 4;
        for f in [0usize, 1] {
            for g in [0usize, 1] {
                for h in [0usize, 1] {
                    data[(f * n + g) * n + h] = 1.0;
                }
            }
        }
        let coeffs = CoefficientSet::from_parts(2, Convention::Standard, data).unwrap();
        let rho = reconstruct_density(&coeffs, &basis).unwrap();
        let mut expected = DMatrix::<Complex<f64>>::zeros(8, 8);
        expected[(0, 0)] = Complex::new(1.0, 0.0);
        assert!((rho.matrix() - expected).norm() <= 1e-12);
    }

    #[test]
    fn reconstruction_of_all_zero_coefficients_is_maximally_mixed() {
        let basis = build_basis::<f64>(2, Convention::Standard).unwrap();
        let mut data = vec![0.0; 64];
        data[0] = 1.0; // t_{0,0,0} = tr ρ
        let coeffs = CoefficientSet::from_parts(2, Convention::Standard, data).unwrap();
        let rho = reconstruct_density(&coeffs, &basis).unwrap();
        let expected = maximally_mixed::<f64>(2).unwrap();
        assert!((rho.matrix() - expected.matrix()).norm() <= 1e-13);
    }

    #[test]
    fn incomplete_table_rejected() {
        assert!(CoefficientSet::<f64>::from_parts(2, Convention::Standard, vec![0.0; 63]).is_err());
    }

    #[test]
    fn convention_mismatch_rejected() {
        let std_basis = build_basis::<f64>(2, Convention::Standard).unwrap();
        let paper = paper_basis(3);
        let rho = gghz_state::<f64>(3).unwrap();
        let coeffs = coefficient_set(&rho, &paper).unwrap();
        assert!(reconstruct_density(&coeffs, &std_basis).is_err());
    }

    #[test]
    fn pure_state_with_complex_amplitudes_keeps_entries_real() {
        // Exercises the imaginary-residue check with a phase-rich state.
        let mut amps = vec![Complex::new(0.0, 0.0); 8];
        amps[1] = Complex::new(0.3, 0.4);
        amps[6] = Complex::new(-0.5, 0.2);
        amps[7] = Complex::new(0.1, -0.6);
        let rho = pure_state(2, &amps).unwrap();
        let basis = paper_basis(2);
        let cm = full_correlation_matrix(&rho, &basis).unwrap();
        assert!(cm.data().iter().all(|v| v.is_finite()));
    }
}
