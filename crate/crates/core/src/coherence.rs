//! Basis- and frame-dependent ℓ1 coherence.
//!
//! For a tight frame `{φ_1..φ_n}` of `C^d` the coherence of `ρ` is
//! `(d/n) Σ_{j≠k} |⟨φ_j|ρ|φ_k⟩|`. For an orthonormal basis `d/n = 1` and
//! this is the usual ℓ1 norm of coherence.

use serde::Serialize;

use crate::density::{make_density, mean_value, DensityOperator};
use crate::error::{Error, Result};
use crate::frames::{apply_unitary, frame_matrix, tensor_frame, Frame};
use crate::linalg::{ComplexMatrix, C64, I};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoherenceReport {
    pub value: f64,
    /// `d/n`; 1 for an orthonormal basis.
    pub prefactor: f64,
    pub dim: usize,
    pub n: usize,
    /// `|⟨φ_j|ρ|φ_k⟩|` for `j ≠ k`, zero on the diagonal, row-major `n × n`.
    #[serde(skip)]
    pub offdiag: Vec<f64>,
}

impl CoherenceReport {
    fn from_frame_matrix(m: &ComplexMatrix, dim: usize, prefactor: f64) -> Self {
        let n = m.rows();
        let mut offdiag = vec![0.0; n * n];
        let mut sum = 0.0;
        for j in 0..n {
            for k in 0..n {
                if j != k {
                    let a = m[(j, k)].norm();
                    offdiag[j * n + k] = a;
                    sum += a;
                }
            }
        }
        Self { value: prefactor * sum, prefactor, dim, n, offdiag }
    }

    pub fn offdiag_at(&self, j: usize, k: usize) -> f64 {
        self.offdiag[j * self.n + k]
    }

    /// `Σ_{j≠k}` of the stored magnitudes.
    pub fn offdiag_sum(&self) -> f64 {
        self.offdiag.iter().sum()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

fn check_dim(f: &Frame, rho: &DensityOperator) -> Result<()> {
    if f.dim() != rho.dim() {
        return Err(Error::DimMismatch { expected: f.dim(), actual: rho.dim() });
    }
    Ok(())
}

/// `Σ_{j≠k} |⟨ψ_j|ρ|ψ_k⟩|` for an orthonormal basis.
pub fn basis_coherence(b: &Frame, rho: &DensityOperator) -> Result<CoherenceReport> {
    b.require_basis()?;
    check_dim(b, rho)?;
    let m = frame_matrix(b, rho.matrix())?;
    Ok(CoherenceReport::from_frame_matrix(&m, b.dim(), 1.0))
}

/// `(d/n) Σ_{j≠k} |⟨φ_j|ρ|φ_k⟩|` for a tight frame, summing every ordered pair.
pub fn frame_coherence(f: &Frame, rho: &DensityOperator) -> Result<CoherenceReport> {
    f.require_tight()?;
    check_dim(f, rho)?;
    let m = frame_matrix(f, rho.matrix())?;
    Ok(CoherenceReport::from_frame_matrix(&m, f.dim(), f.dim() as f64 / f.len() as f64))
}

/// Value-only fast path: `2(d/n) Σ_{j<k} |⟨φ_j|ρ|φ_k⟩|`. Skips the `n × n`
/// frame matrix, so it is the one to use for large frames and sweeps.
pub fn frame_coherence_value(f: &Frame, rho: &DensityOperator) -> Result<f64> {
    f.require_tight()?;
    check_dim(f, rho)?;
    let rho_phi: Vec<Vec<C64>> = f.vectors().iter().map(|v| rho.matrix().apply(v)).collect();
    let mut sum = 0.0;
    for (j, u) in f.vectors().iter().enumerate() {
        for w in &rho_phi[j + 1..] {
            sum += crate::linalg::inner(u, w).norm();
        }
    }
    Ok(2.0 * f.dim() as f64 / f.len() as f64 * sum)
}

/// The Hermitian observables `W_jk` whose mean values determine every frame
/// matrix element of a state.
#[derive(Debug, Clone)]
pub struct ObservableSet {
    dim: usize,
    n: usize,
    operators: Vec<ComplexMatrix>,
}

impl ObservableSet {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, j: usize, k: usize) -> &ComplexMatrix {
        &self.operators[j * self.n + k]
    }
}

/// `W_jj = |φ_j⟩⟨φ_j|`, `W_jk = ½(|φ_j⟩⟨φ_k| + |φ_k⟩⟨φ_j|)` for `j > k`,
/// `W_jk = (i/2)(|φ_j⟩⟨φ_k| − |φ_k⟩⟨φ_j|)` for `j < k`.
pub fn observable(f: &Frame, j: usize, k: usize) -> ComplexMatrix {
    let (u, v) = (f.vector(j), f.vector(k));
    if j == k {
        return ComplexMatrix::outer(u, u);
    }
    let a = ComplexMatrix::outer(u, v);
    let b = ComplexMatrix::outer(v, u);
    if j > k {
        (&a + &b).scaled(C64::new(0.5, 0.0))
    } else {
        (&a - &b).scaled(I * 0.5)
    }
}

pub fn observables(f: &Frame) -> ObservableSet {
    let n = f.len();
    let operators = (0..n).flat_map(|j| (0..n).map(move |k| (j, k))).map(|(j, k)| observable(f, j, k)).collect();
    ObservableSet { dim: f.dim(), n, operators }
}

/// `⟨φ_j|ρ|φ_k⟩ = ⟨W_kj⟩ + i⟨W_jk⟩` for `j < k`.
pub fn matrix_element_from_means(means_kj: f64, means_jk: f64) -> C64 {
    C64::new(means_kj, means_jk)
}

/// Frame coherence evaluated from the mean values `⟨W_jk⟩_ρ` only.
pub fn coherence_from_means(f: &Frame, rho: &DensityOperator) -> Result<f64> {
    f.require_tight()?;
    check_dim(f, rho)?;
    let n = f.len();
    let mut sum = 0.0;
    for j in 0..n {
        for k in j + 1..n {
            let real_part = mean_value(rho, &observable(f, k, j))?;
            let imag_part = mean_value(rho, &observable(f, j, k))?;
            sum += matrix_element_from_means(real_part, imag_part).norm();
        }
    }
    Ok(2.0 * f.dim() as f64 / n as f64 * sum)
}

/// Coherence of a bipartite state with respect to the product frame
/// `{φ_j ⊗ χ_k}`.
pub fn composite_coherence(fa: &Frame, fb: &Frame, rho: &DensityOperator) -> Result<CoherenceReport> {
    if fa.dim() * fb.dim() != rho.dim() {
        return Err(Error::DimMismatch { expected: fa.dim() * fb.dim(), actual: rho.dim() });
    }
    frame_coherence(&tensor_frame(fa, fb)?, rho)
}

/// Value-only variant of [`composite_coherence`].
pub fn composite_coherence_value(fa: &Frame, fb: &Frame, rho: &DensityOperator) -> Result<f64> {
    if fa.dim() * fb.dim() != rho.dim() {
        return Err(Error::DimMismatch { expected: fa.dim() * fb.dim(), actual: rho.dim() });
    }
    frame_coherence_value(&tensor_frame(fa, fb)?, rho)
}

/// Tolerance for the convexity and unitary-invariance checks.
pub const PROPERTY_TOL: f64 = 1e-11;

/// Measured quantities behind non-negativity, convexity and unitary
/// invariance of frame coherence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertiesReport {
    /// Smallest coherence among the constituent states and their mixture.
    pub min_value: f64,
    /// `C(Σ p_m ρ_m)`
    pub mixture_value: f64,
    /// `Σ p_m C(ρ_m)`
    pub weighted_sum: f64,
    /// `max_m |C_{UF}(UρU†) − C_F(ρ)|`
    pub invariance_error: f64,
}

impl PropertiesReport {
    pub fn convexity_gap(&self) -> f64 {
        self.weighted_sum - self.mixture_value
    }

    /// First violated property, if any.
    pub fn check(&self) -> Result<()> {
        if self.min_value < 0.0 {
            return Err(Error::IdentityViolated(format!("negative coherence {}", self.min_value)));
        }
        if self.mixture_value > self.weighted_sum + PROPERTY_TOL {
            return Err(Error::IdentityViolated(format!(
                "convexity: C(mixture) = {} > {}",
                self.mixture_value, self.weighted_sum
            )));
        }
        if self.invariance_error > PROPERTY_TOL {
            return Err(Error::IdentityViolated(format!(
                "unitary invariance error {:e}",
                self.invariance_error
            )));
        }
        Ok(())
    }
}

pub fn coherence_properties_check(
    f: &Frame,
    states: &[DensityOperator],
    weights: &[f64],
    u: &ComplexMatrix,
) -> Result<PropertiesReport> {
    if states.is_empty() || states.len() != weights.len() {
        return Err(Error::BadWeights(format!("{} weights for {} states", weights.len(), states.len())));
    }
    if weights.iter().any(|w| !(*w >= 0.0)) {
        return Err(Error::BadWeights("weights must be non-negative".into()));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::BadWeights(format!("weights sum to {total}")));
    }
    let uf = apply_unitary(u, f)?;

    let mut values = Vec::with_capacity(states.len());
    let mut invariance_error = 0.0_f64;
    let mut mixture = ComplexMatrix::zeros(f.dim(), f.dim());
    for (rho, &w) in states.iter().zip(weights) {
        let c = frame_coherence(f, rho)?.value;
        let rotated = frame_coherence(&uf, &rho.conjugate_by(u)?)?.value;
        invariance_error = invariance_error.max((rotated - c).abs());
        mixture = &mixture + &rho.matrix().scaled(C64::new(w, 0.0));
        values.push(c);
    }
    let mixture_value = frame_coherence(f, &make_density(mixture)?)?.value;
    let weighted_sum = values.iter().zip(weights).map(|(c, w)| c * w).sum();
    let min_value = values.iter().copied().fold(mixture_value, f64::min);
    Ok(PropertiesReport { min_value, mixture_value, weighted_sum, invariance_error })
}
