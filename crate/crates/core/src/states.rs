//! Tripartite density matrices: named pure states, white-noise mixtures,
//! biseparable samples, and local-unitary actions.
//!
//! All samplers take explicit seeds and are deterministic given them, so
//! parallel sweeps can partition seed space without coordination.

use nalgebra::{Complex, ComplexField, DMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A validated tripartite density matrix with local dimension `d`.
///
/// Validation checks unit trace, hermiticity, and spectrum positivity, each
/// within `tolerance` (default [`Scalar::state_tol`]).
#[derive(Clone, Debug)]
pub struct DensityState<T: Scalar> {
    d: usize,
    matrix: DMatrix<Complex<T>>,
    purity_hint: Option<bool>,
    tolerance: T,
}

impl<T: Scalar> DensityState<T> {
    pub fn new(d: usize, matrix: DMatrix<Complex<T>>) -> Result<Self> {
        Self::with_tolerance(d, matrix, T::state_tol())
    }

    pub fn with_tolerance(d: usize, matrix: DMatrix<Complex<T>>, tolerance: T) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDimension(d));
        }
        let dim = d * d * d;
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: matrix.nrows().max(matrix.ncols()),
            });
        }
        let state = DensityState {
            d,
            matrix,
            purity_hint: None,
            tolerance,
        };
        state.validate()?;
        Ok(state)
    }

    fn validate(&self) -> Result<()> {
        let m = &self.matrix;
        for v in m.iter() {
            if !v.re.finite() || !v.im.finite() {
                return Err(Error::InvalidState("non-finite entry".into()));
            }
        }
        let tr = m.trace();
        if (tr.re - T::one()).abs() > self.tolerance || tr.im.abs() > self.tolerance {
            return Err(Error::InvalidState(format!(
                "trace {:?} deviates from 1 beyond tolerance",
                (tr.re.to_f64_c(), tr.im.to_f64_c())
            )));
        }
        let mut herm_dev = T::zero();
        for i in 0..m.nrows() {
            for j in i..m.ncols() {
                let dev = (m[(i, j)] - m[(j, i)].conj()).modulus();
                herm_dev = herm_dev.max(dev);
            }
        }
        if herm_dev > self.tolerance {
            return Err(Error::InvalidState(format!(
                "hermiticity deviation {:e}",
                herm_dev.to_f64_c()
            )));
        }
        let eigs = m.clone().symmetric_eigen().eigenvalues;
        let min_eig = eigs.iter().fold(T::one(), |a, &x| a.min(x));
        if min_eig < -self.tolerance {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {:e}",
                min_eig.to_f64_c()
            )));
        }
        Ok(())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Total Hilbert-space dimension `d³`.
    pub fn dim(&self) -> usize {
        self.d * self.d * self.d
    }

    pub fn matrix(&self) -> &DMatrix<Complex<T>> {
        &self.matrix
    }

    pub fn tolerance(&self) -> T {
        self.tolerance
    }

    pub fn purity_hint(&self) -> Option<bool> {
        self.purity_hint
    }

    /// `tr(ρ²)`, which is 1 exactly for pure states.
    pub fn purity(&self) -> T {
        self.matrix.iter().fold(T::zero(), |a, v| a + v.norm_sqr())
    }

    pub fn is_pure(&self) -> bool {
        (self.purity() - T::one()).abs() <= self.tolerance.max(T::residue_tol())
    }
}

/// One of the three ways to split a single party off a tripartite system,
/// identified by the separated party.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bipartition {
    /// 1|23
    A,
    /// 2|13
    B,
    /// 3|12
    C,
}

/// Canonical biseparable families saturating the GME criteria.
///
/// All three place the separated party in `|d−1⟩` and the remaining pair in
/// `|a⟩`: `|d−1, d−1⟩` for `Product`, `x|d−1,d−1⟩ + y|d−2,d−2⟩` for
/// `DiagPair`, and `x|d−1,d−2⟩ + y|d−2,d−1⟩` for `CrossPair`, with
/// `y = sqrt(1−x²)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CanonicalFamily {
    Product,
    DiagPair,
    CrossPair,
}

/// Three single-party unitaries acting as `U₁ ⊗ U₂ ⊗ U₃`.
#[derive(Clone, Debug)]
pub struct LocalUnitaryTriple<T: Scalar> {
    u1: DMatrix<Complex<T>>,
    u2: DMatrix<Complex<T>>,
    u3: DMatrix<Complex<T>>,
}

impl<T: Scalar> LocalUnitaryTriple<T> {
    pub fn new(
        u1: DMatrix<Complex<T>>,
        u2: DMatrix<Complex<T>>,
        u3: DMatrix<Complex<T>>,
    ) -> Result<Self> {
        for u in [&u1, &u2, &u3] {
            if u.nrows() != u.ncols() || u.nrows() != u1.nrows() {
                return Err(Error::DimensionMismatch {
                    expected: u1.nrows(),
                    actual: u.nrows().max(u.ncols()),
                });
            }
            let dev = (u.adjoint() * u - DMatrix::<Complex<T>>::identity(u.nrows(), u.ncols()))
                .norm();
            if dev > T::state_tol() {
                return Err(Error::NotUnitary {
                    deviation: dev.to_f64_c(),
                });
            }
        }
        Ok(LocalUnitaryTriple { u1, u2, u3 })
    }

    pub fn identity(d: usize) -> Self {
        let id = DMatrix::identity(d, d);
        LocalUnitaryTriple {
            u1: id.clone(),
            u2: id.clone(),
            u3: id,
        }
    }

    pub fn d(&self) -> usize {
        self.u1.nrows()
    }

    pub fn parts(&self) -> (&DMatrix<Complex<T>>, &DMatrix<Complex<T>>, &DMatrix<Complex<T>>) {
        (&self.u1, &self.u2, &self.u3)
    }

    /// The full `d³ × d³` product operator.
    pub fn product(&self) -> DMatrix<Complex<T>> {
        self.u1.kronecker(&self.u2).kronecker(&self.u3)
    }
}

/// Rank-1 projector of the normalized amplitude vector (length `d³`).
pub fn pure_state<T: Scalar>(d: usize, amplitudes: &[Complex<T>]) -> Result<DensityState<T>> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let dim = d * d * d;
    if amplitudes.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            actual: amplitudes.len(),
        });
    }
    let norm_sq = amplitudes.iter().fold(T::zero(), |a, v| a + v.norm_sqr());
    if !(norm_sq > T::zero()) || !norm_sq.finite() {
        return Err(Error::InvalidState("amplitude vector has zero norm".into()));
    }
    let norm = norm_sq.sqrt();
    let psi: Vec<Complex<T>> = amplitudes
        .iter()
        .map(|v| v / Complex::new(norm, T::zero()))
        .collect();
    let mut rho = DMatrix::zeros(dim, dim);
    for (i, a) in psi.iter().enumerate() {
        for (j, b) in psi.iter().enumerate() {
            rho[(i, j)] = a * b.conj();
        }
    }
    let mut state = DensityState::new(d, rho)?;
    state.purity_hint = Some(true);
    Ok(state)
}

fn basis_index(d: usize, i: usize, j: usize, k: usize) -> usize {
    (i * d + j) * d + k
}

/// `(|000⟩ + |111⟩)/√2` for qubits.
pub fn ghz_state<T: Scalar>() -> DensityState<T> {
    gghz_state(2).expect("d = 2 is valid")
}

/// `(|001⟩ + |010⟩ + |100⟩)/√3` for qubits.
pub fn w_state<T: Scalar>() -> DensityState<T> {
    let one = Complex::new(T::one(), T::zero());
    let mut amps = vec![Complex::new(T::zero(), T::zero()); 8];
    amps[basis_index(2, 0, 0, 1)] = one;
    amps[basis_index(2, 0, 1, 0)] = one;
    amps[basis_index(2, 1, 0, 0)] = one;
    pure_state(2, &amps).expect("W amplitudes are valid")
}

/// The generalized GHZ state `(1/√d) Σ_i |iii⟩`.
pub fn gghz_state<T: Scalar>(d: usize) -> Result<DensityState<T>> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let one = Complex::new(T::one(), T::zero());
    let mut amps = vec![Complex::new(T::zero(), T::zero()); d * d * d];
    for i in 0..d {
        amps[basis_index(d, i, i, i)] = one;
    }
    pure_state(d, &amps)
}

/// The maximally mixed state `1/d³`.
pub fn maximally_mixed<T: Scalar>(d: usize) -> Result<DensityState<T>> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let dim = d * d * d;
    let w = Complex::new(T::one() / T::from_usize_c(dim), T::zero());
    DensityState::new(d, DMatrix::identity(dim, dim) * w)
}

/// `(1−v)·1/d³ + v·ρ` for a pure input `ρ` and visibility `v ∈ [0, 1]`.
pub fn white_noise_mix<T: Scalar>(psi: &DensityState<T>, visibility: T) -> Result<DensityState<T>> {
    if visibility < T::zero() || visibility > T::one() {
        return Err(Error::ParameterOutOfRange {
            name: "visibility",
            value: visibility.to_f64_c(),
            lo: 0.0,
            hi: 1.0,
        });
    }
    if !psi.is_pure() {
        return Err(Error::InvalidState(format!(
            "white-noise mixing requires a pure input, purity = {}",
            psi.purity().to_f64_c()
        )));
    }
    let dim = psi.dim();
    let noise = (T::one() - visibility) / T::from_usize_c(dim);
    let mut m = psi.matrix() * Complex::new(visibility, T::zero());
    for i in 0..dim {
        m[(i, i)] += Complex::new(noise, T::zero());
    }
    let mut state = DensityState::new(psi.d(), m)?;
    state.purity_hint = if visibility == T::one() { Some(true) } else { None };
    Ok(state)
}

/// Canonical biseparable pure state `|d−1⟩⟨d−1| ⊗ |a⟩⟨a|`, see
/// [`CanonicalFamily`]. `x` is ignored by the `Product` family.
pub fn canonical_biseparable<T: Scalar>(
    d: usize,
    family: CanonicalFamily,
    x: T,
) -> Result<DensityState<T>> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    if x < T::zero() || x > T::one() {
        return Err(Error::ParameterOutOfRange {
            name: "x",
            value: x.to_f64_c(),
            lo: 0.0,
            hi: 1.0,
        });
    }
    let y = (T::one() - x * x).sqrt();
    let mut amps = vec![Complex::new(T::zero(), T::zero()); d * d * d];
    let re = |v: T| Complex::new(v, T::zero());
    let (m1, m2) = (d - 1, d - 2);
    match family {
        CanonicalFamily::Product => {
            amps[basis_index(d, m1, m1, m1)] = re(T::one());
        }
        CanonicalFamily::DiagPair => {
            amps[basis_index(d, m1, m1, m1)] = re(x);
            amps[basis_index(d, m1, m2, m2)] = re(y);
        }
        CanonicalFamily::CrossPair => {
            amps[basis_index(d, m1, m1, m2)] = re(x);
            amps[basis_index(d, m1, m2, m1)] = re(y);
        }
    }
    pure_state(d, &amps)
}

fn gaussian_complex<T: Scalar>(rng: &mut ChaCha8Rng) -> Complex<T> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(T::from_f64_c(re), T::from_f64_c(im))
}

fn haar_state_vector<T: Scalar>(len: usize, rng: &mut ChaCha8Rng) -> Vec<Complex<T>> {
    let mut v: Vec<Complex<T>> = (0..len).map(|_| gaussian_complex(rng)).collect();
    let norm = v.iter().fold(T::zero(), |a, z| a + z.norm_sqr()).sqrt();
    for z in &mut v {
        *z /= Complex::new(norm, T::zero());
    }
    v
}

fn biseparable_pure_vector<T: Scalar>(
    d: usize,
    partition: Bipartition,
    rng: &mut ChaCha8Rng,
) -> Vec<Complex<T>> {
    let single = haar_state_vector::<T>(d, rng);
    let pair = haar_state_vector::<T>(d * d, rng);
    let mut psi = vec![Complex::new(T::zero(), T::zero()); d * d * d];
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                psi[basis_index(d, i, j, k)] = match partition {
                    Bipartition::A => single[i] * pair[j * d + k],
                    Bipartition::B => single[j] * pair[i * d + k],
                    Bipartition::C => single[k] * pair[i * d + j],
                };
            }
        }
    }
    psi
}

/// Haar-random pure state that is separable across `partition`.
pub fn sample_biseparable_pure<T: Scalar>(
    d: usize,
    partition: Bipartition,
    rng_seed: u64,
) -> Result<DensityState<T>> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let psi = biseparable_pure_vector(d, partition, &mut rng);
    pure_state(d, &psi)
}

/// Convex mixture of `n_components` biseparable pure states with uniform
/// Dirichlet weights; each component draws its own partition, so all three
/// terms of the biseparable decomposition are exercised.
pub fn sample_biseparable_mixed<T: Scalar>(
    d: usize,
    n_components: usize,
    rng_seed: u64,
) -> Result<DensityState<T>> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    if n_components == 0 {
        return Err(Error::ParameterOutOfRange {
            name: "n_components",
            value: 0.0,
            lo: 1.0,
            hi: f64::INFINITY,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    // Dirichlet(1, ..., 1) weights via normalized unit exponentials.
    let raw: Vec<T> = (0..n_components)
        .map(|_| T::from_f64_c(-(1.0 - rng.random::<f64>()).ln()))
        .collect();
    let total = raw.iter().fold(T::zero(), |a, &w| a + w);
    let dim = d * d * d;
    let mut rho = DMatrix::<Complex<T>>::zeros(dim, dim);
    for w in raw {
        let partition = match rng.random_range(0..3u8) {
            0 => Bipartition::A,
            1 => Bipartition::B,
            _ => Bipartition::C,
        };
        let psi = biseparable_pure_vector::<T>(d, partition, &mut rng);
        let p = Complex::new(w / total, T::zero());
        for (i, a) in psi.iter().enumerate() {
            for (j, b) in psi.iter().enumerate() {
                rho[(i, j)] += p * a * b.conj();
            }
        }
    }
    DensityState::new(d, rho)
}

/// `(U₁⊗U₂⊗U₃) ρ (U₁⊗U₂⊗U₃)†`.
pub fn apply_local_unitary<T: Scalar>(
    rho: &DensityState<T>,
    u: &LocalUnitaryTriple<T>,
) -> Result<DensityState<T>> {
    if u.d() != rho.d() {
        return Err(Error::DimensionMismatch {
            expected: rho.d(),
            actual: u.d(),
        });
    }
    let full = u.product();
    let rotated = &full * rho.matrix() * full.adjoint();
    let mut out = DensityState::with_tolerance(rho.d(), rotated, rho.tolerance())?;
    out.purity_hint = rho.purity_hint();
    Ok(out)
}

fn haar_unitary<T: Scalar>(d: usize, rng: &mut ChaCha8Rng) -> DMatrix<Complex<T>> {
    let half = Complex::new(T::from_f64_c(std::f64::consts::FRAC_1_SQRT_2), T::zero());
    let g = DMatrix::from_fn(d, d, |_, _| gaussian_complex::<T>(rng) * half);
    let qr = g.qr();
    let mut u = qr.q();
    let r = qr.r();
    // Fix the phases of R's diagonal so the distribution is exactly Haar.
    for i in 0..d {
        let rii = r[(i, i)];
        let m = rii.modulus();
        let phase = if m > T::zero() {
            rii / Complex::new(m, T::zero())
        } else {
            Complex::new(T::one(), T::zero())
        };
        for row in 0..d {
            u[(row, i)] *= phase;
        }
    }
    u
}

/// Three independent Haar-distributed `d×d` unitaries; deterministic per seed.
pub fn random_local_unitary<T: Scalar>(d: usize, rng_seed: u64) -> Result<LocalUnitaryTriple<T>> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let u1 = haar_unitary(d, &mut rng);
    let u2 = haar_unitary(d, &mut rng);
    let u3 = haar_unitary(d, &mut rng);
    LocalUnitaryTriple::new(u1, u2, u3)
}

/// Full-rank random density matrix `GG†/tr(GG†)` with Ginibre `G`.
pub fn random_mixed_state<T: Scalar>(d: usize, rng_seed: u64) -> Result<DensityState<T>> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let dim = d * d * d;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let g = DMatrix::from_fn(dim, dim, |_, _| gaussian_complex::<T>(&mut rng));
    let rho = &g * g.adjoint();
    let tr = rho.trace().re;
    DensityState::new(d, rho / Complex::new(tr, T::zero()))
}

/// Haar-random pure state on the whole tripartite space (generically GME).
pub fn random_pure_state<T: Scalar>(d: usize, rng_seed: u64) -> Result<DensityState<T>> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let psi = haar_state_vector::<T>(d * d * d, &mut rng);
    pure_state(d, &psi)
}
