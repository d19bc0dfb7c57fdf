//! Validated density operators.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{inner, ComplexMatrix, JsonComplex, C64};

/// Maximum `|ρ_jk − conj(ρ_kj)|` and `|tr ρ − 1|` accepted by validation.
pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
/// Smallest eigenvalue accepted as positive semidefinite.
pub const PSD_FLOOR: f64 = -1e-10;

const ORTHONORMAL_TOL: f64 = 1e-10;

/// Hermitian, positive semidefinite, unit-trace operator. Only constructible
/// through validation, so downstream code may rely on the invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
}

impl DensityOperator {
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// Pure state `|ψ⟩⟨ψ|` of a normalized copy of `psi`.
    pub fn pure(psi: &[C64]) -> Result<Self> {
        let n = crate::linalg::norm(psi);
        if n == 0.0 || !n.is_finite() {
            return Err(Error::BadParameter("pure state from a zero or non-finite vector".into()));
        }
        let unit: Vec<C64> = psi.iter().map(|z| z / n).collect();
        make_density(ComplexMatrix::outer(&unit, &unit))
    }

    /// `U ρ U†`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<Self> {
        if u.rows() != self.dim() || u.cols() != self.dim() {
            return Err(Error::DimMismatch { expected: self.dim(), actual: u.rows() });
        }
        make_density(u.matmul(&self.matrix).matmul(&u.adjoint()))
    }

    pub fn to_json(&self) -> StateJson {
        StateJson {
            dim: self.dim(),
            matrix: self
                .matrix
                .to_rows()
                .into_iter()
                .map(|r| r.into_iter().map(JsonComplex::from).collect())
                .collect(),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let parsed: StateJson = serde_json::from_str(s)?;
        parsed.try_into()
    }
}

/// Validates `m` as a density operator.
pub fn make_density(m: ComplexMatrix) -> Result<DensityOperator> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    if let Some((row, col)) = m.first_non_finite() {
        return Err(Error::NonFinite { row, col });
    }
    let deviation = m.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation, tolerance: HERMITIAN_TOL });
    }
    let trace = m.trace().re;
    if (trace - 1.0).abs() > TRACE_TOL {
        return Err(Error::TraceNotOne { trace, tolerance: TRACE_TOL });
    }
    let min_eigenvalue = m.hermitian_eigenvalues()?.first().copied().unwrap_or(0.0);
    if min_eigenvalue < PSD_FLOOR {
        return Err(Error::NotPositive { min_eigenvalue, floor: PSD_FLOOR });
    }
    Ok(DensityOperator { matrix: m })
}

/// `ρ = Σ λ_k |η_k⟩⟨η_k|` for non-negative weights summing to one and
/// pairwise orthonormal vectors.
pub fn spectral_mixture(weights: &[f64], vectors: &[Vec<C64>]) -> Result<DensityOperator> {
    if weights.is_empty() || weights.len() != vectors.len() {
        return Err(Error::BadWeights(format!(
            "{} weights for {} vectors",
            weights.len(),
            vectors.len()
        )));
    }
    if let Some(w) = weights.iter().find(|w| !(**w >= 0.0) || !w.is_finite()) {
        return Err(Error::BadWeights(format!("negative or non-finite weight {w}")));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > TRACE_TOL {
        return Err(Error::BadWeights(format!("weights sum to {total}")));
    }
    let dim = vectors[0].len();
    if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
        return Err(Error::DimMismatch { expected: dim, actual: v.len() });
    }
    let mut deviation = 0.0_f64;
    for (j, u) in vectors.iter().enumerate() {
        for (k, v) in vectors.iter().enumerate().skip(j) {
            let target = if j == k { 1.0 } else { 0.0 };
            deviation = deviation.max((inner(u, v) - target).norm());
        }
    }
    if deviation > ORTHONORMAL_TOL {
        return Err(Error::NotOrthonormal { deviation });
    }
    let mut rho = ComplexMatrix::zeros(dim, dim);
    for (w, v) in weights.iter().zip(vectors) {
        rho = &rho + &ComplexMatrix::outer(v, v).scaled(C64::new(*w, 0.0));
    }
    make_density(rho)
}

/// `ρ ⊕ 0`: ρ in the top-left block of a `(d + extra)`-dimensional zero matrix.
pub fn direct_sum_zero(rho: &DensityOperator, extra: usize) -> ComplexMatrix {
    rho.matrix.pad_zero(extra)
}

/// `tr(ρ·obs)` for a Hermitian observable.
pub fn mean_value(rho: &DensityOperator, obs: &ComplexMatrix) -> Result<f64> {
    if obs.rows() != rho.dim() || obs.cols() != rho.dim() {
        return Err(Error::DimMismatch { expected: rho.dim(), actual: obs.rows() });
    }
    let deviation = obs.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation, tolerance: HERMITIAN_TOL });
    }
    let d = rho.dim();
    let mut t = C64::new(0.0, 0.0);
    for j in 0..d {
        for k in 0..d {
            t += rho.matrix[(j, k)] * obs[(k, j)];
        }
    }
    // Scale-aware check: the imaginary part is rounding noise for Hermitian inputs.
    let scale = 1.0 + obs.max_abs() * d as f64;
    if t.im.abs() > HERMITIAN_TOL * scale {
        return Err(Error::IdentityViolated(format!(
            "tr(rho W) has imaginary part {:e}",
            t.im
        )));
    }
    Ok(t.re)
}

/// Wire format `{"dim": d, "matrix": [[{"re":r,"im":i}, ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateJson {
    pub dim: usize,
    pub matrix: Vec<Vec<JsonComplex>>,
}

impl TryFrom<StateJson> for DensityOperator {
    type Error = Error;

    fn try_from(s: StateJson) -> Result<Self> {
        if s.matrix.len() != s.dim {
            return Err(Error::Parse(format!("expected {} rows, got {}", s.dim, s.matrix.len())));
        }
        if let Some(r) = s.matrix.iter().find(|r| r.len() != s.dim) {
            return Err(Error::Parse(format!("expected rows of length {}, got {}", s.dim, r.len())));
        }
        let rows: Vec<Vec<C64>> =
            s.matrix.iter().map(|r| r.iter().copied().map(C64::from).collect()).collect();
        make_density(ComplexMatrix::from_rows(&rows)?)
    }
}
