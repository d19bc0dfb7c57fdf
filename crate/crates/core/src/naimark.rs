//! Rank-one POVMs, their identification with tight frames, and Naimark
//! extension to a projective measurement by direct sum.
//!
//! A tight frame `{ψ_j}` of `C^d` with `n` vectors has a `d × n` synthesis
//! matrix `T` with orthonormal rows. Completing those rows to an `n × n`
//! unitary gives columns `Ψ_j = ψ_j ⊕ φ_j`, an orthonormal basis of `C^n`
//! whose top `d` components are the frame vectors themselves.

use serde::Serialize;

use crate::density::{direct_sum_zero, make_density, DensityOperator, PSD_FLOOR};
use crate::error::{Error, Result};
use crate::frames::Frame;
use crate::linalg::{inner, ComplexMatrix, C64};

/// Completeness tolerance `‖Σ E_j − I‖_F`.
pub const POVM_TOL: f64 = 1e-10;
/// An effect is rank one when its second largest eigenvalue is below this.
pub const RANK_ONE_TOL: f64 = 1e-10;
/// Gram–Schmidt seeds whose residual norm falls below this are skipped.
pub const PIVOT_TOL: f64 = 1e-8;
/// Tolerance for element, probability and coherence preservation.
pub const PRESERVATION_TOL: f64 = 1e-12;
/// Tolerance for unitarity and projective-measurement checks.
pub const PROJECTIVE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    dim: usize,
    effects: Vec<ComplexMatrix>,
}

impl Povm {
    /// Validates positivity of each effect and completeness.
    pub fn new(dim: usize, effects: Vec<ComplexMatrix>) -> Result<Self> {
        if effects.is_empty() {
            return Err(Error::NotPovm("no effects".into()));
        }
        let mut total = ComplexMatrix::zeros(dim, dim);
        for (j, e) in effects.iter().enumerate() {
            if e.rows() != dim || e.cols() != dim {
                return Err(Error::DimMismatch { expected: dim, actual: e.rows() });
            }
            if e.hermitian_deviation() > 1e-12 {
                return Err(Error::NotPovm(format!("effect {j} is not Hermitian")));
            }
            let min = e.hermitian_eigenvalues()?.first().copied().unwrap_or(0.0);
            if min < PSD_FLOOR {
                return Err(Error::NotPovm(format!("effect {j} has eigenvalue {min:e}")));
            }
            total = &total + e;
        }
        let residual = (&total - &ComplexMatrix::identity(dim)).frobenius_norm();
        if residual > POVM_TOL {
            return Err(Error::NotPovm(format!("effects sum to identity only within {residual:e}")));
        }
        Ok(Self { dim, effects })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.effects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.effects.is_empty()
    }

    pub fn effects(&self) -> &[ComplexMatrix] {
        &self.effects
    }
}

/// `E_j = |ψ_j⟩⟨ψ_j|` in frame order.
pub fn frame_to_povm(f: &Frame) -> Result<Povm> {
    f.require_tight()?;
    Povm::new(f.dim(), f.vectors().iter().map(|v| ComplexMatrix::outer(v, v)).collect())
}

/// Recovers `ψ_j = √λ_j v_j` from the top eigenpair of each rank-one effect.
/// The phase is fixed so that the largest-magnitude component is real and
/// positive.
pub fn povm_to_frame(p: &Povm) -> Result<Frame> {
    let mut vectors = Vec::with_capacity(p.len());
    for (index, e) in p.effects.iter().enumerate() {
        let (values, vecs) = e.hermitian_eigen()?;
        let d = values.len();
        if d >= 2 && values[d - 2] >= RANK_ONE_TOL {
            return Err(Error::NotRankOne { index, second_eigenvalue: values[d - 2] });
        }
        let top = values[d - 1].max(0.0);
        let mut v = vecs.column(d - 1);
        let pivot = v
            .iter()
            .copied()
            .max_by(|a, b| a.norm().total_cmp(&b.norm()))
            .unwrap_or(C64::new(1.0, 0.0));
        let phase = if pivot.norm() > 0.0 { pivot.conj() / pivot.norm() } else { C64::new(1.0, 0.0) };
        let scale = phase * top.sqrt();
        for z in v.iter_mut() {
            *z *= scale;
        }
        vectors.push(v);
    }
    Frame::new(p.dim, vectors)
}

#[derive(Debug, Clone, PartialEq)]
pub struct NaimarkExtension {
    pub original: Frame,
    /// Orthonormal basis `{Ψ_j}` of `C^n`.
    pub basis: Frame,
    /// The lower `n − d` components `φ_j` of each `Ψ_j`.
    pub tail_vectors: Vec<Vec<C64>>,
}

impl NaimarkExtension {
    pub fn extended_dim(&self) -> usize {
        self.basis.dim()
    }

    /// The `n × n` unitary whose columns are `Ψ_j`.
    pub fn unitary(&self) -> ComplexMatrix {
        self.basis.synthesis_matrix()
    }

    /// `Π_j = |Ψ_j⟩⟨Ψ_j|`
    pub fn projectors(&self) -> Vec<ComplexMatrix> {
        self.basis.vectors().iter().map(|v| ComplexMatrix::outer(v, v)).collect()
    }

    /// Largest of `max ‖Π_jΠ_k − δ_jk Π_j‖_F` and `‖Σ Π_j − I‖_F`.
    pub fn projective_deviation(&self) -> f64 {
        let pis = self.projectors();
        let n = self.extended_dim();
        let mut dev = 0.0_f64;
        let mut total = ComplexMatrix::zeros(n, n);
        for (j, pj) in pis.iter().enumerate() {
            for (k, pk) in pis.iter().enumerate() {
                let prod = pj.matmul(pk);
                let target = if j == k { pj.clone() } else { ComplexMatrix::zeros(n, n) };
                dev = dev.max((&prod - &target).frobenius_norm());
            }
            total = &total + pj;
        }
        dev.max((&total - &ComplexMatrix::identity(n)).frobenius_norm())
    }
}

/// Extends the frame's POVM to a projective measurement on `C^n` by
/// completing the rows of the synthesis matrix with Gram–Schmidt over the
/// canonical seeds `e_0, e_1, …` in order.
pub fn naimark_extend(f: &Frame) -> Result<NaimarkExtension> {
    f.require_tight()?;
    let (d, n) = (f.dim(), f.len());
    if n < d {
        return Err(Error::BadCount(format!("{n} vectors cannot be tight in dimension {d}")));
    }
    let t = f.synthesis_matrix();
    let mut rows: Vec<Vec<C64>> = (0..d).map(|r| t.row(r).to_vec()).collect();
    for seed in 0..n {
        if rows.len() == n {
            break;
        }
        let mut v = crate::linalg::basis_vector(n, seed);
        // Two passes keep the completion orthogonal to working precision.
        for _ in 0..2 {
            for q in &rows {
                let p = inner(q, &v);
                for (x, y) in v.iter_mut().zip(q) {
                    *x -= p * y;
                }
            }
        }
        let norm = crate::linalg::norm(&v);
        if norm > PIVOT_TOL {
            rows.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    if rows.len() != n {
        return Err(Error::IdentityViolated(format!("completed only {} of {n} rows", rows.len())));
    }
    let columns: Vec<Vec<C64>> = (0..n).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
    // The top block is copied verbatim so Ψ_j restricted to C^d is exactly ψ_j.
    let columns: Vec<Vec<C64>> = columns
        .into_iter()
        .enumerate()
        .map(|(j, mut col)| {
            col[..d].copy_from_slice(f.vector(j));
            col
        })
        .collect();
    let tail_vectors = columns.iter().map(|c| c[d..].to_vec()).collect();
    Ok(NaimarkExtension { original: f.clone(), basis: Frame::new(n, columns)?, tail_vectors })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtensionReport {
    pub dim: usize,
    pub extended_dim: usize,
    /// `max_{j,k} |⟨ψ_j|ρ|ψ_k⟩ − ⟨Ψ_j|ρ⊕0|Ψ_k⟩|`
    pub max_element_error: f64,
    /// `max_j |tr(ρE_j) − tr((ρ⊕0)Π_j)|`
    pub max_probability_error: f64,
    /// Frame coherence `(d/n) Σ_{j≠k} |⟨ψ_j|ρ|ψ_k⟩|`.
    pub frame_coherence: f64,
    /// `(d/n) Σ_{j≠k} |⟨Ψ_j|ρ⊕0|Ψ_k⟩|`
    pub extended_coherence: f64,
    /// `‖U†U − I‖_F` of the completed unitary.
    pub unitarity_error: f64,
    pub projective_error: f64,
    /// Largest deviation of the top block of `Ψ_j` from `ψ_j`.
    pub top_block_error: f64,
}

impl ExtensionReport {
    pub fn coherence_error(&self) -> f64 {
        (self.frame_coherence - self.extended_coherence).abs()
    }

    /// First violated identity, if any.
    pub fn check(&self) -> Result<()> {
        let checks = [
            ("top-block exactness", self.top_block_error, 0.0),
            ("unitarity", self.unitarity_error, PROJECTIVE_TOL),
            ("projective measurement", self.projective_error, PROJECTIVE_TOL),
            ("matrix element preservation", self.max_element_error, PRESERVATION_TOL),
            ("probability preservation", self.max_probability_error, PRESERVATION_TOL),
            ("coherence equality", self.coherence_error(), PRESERVATION_TOL),
        ];
        for (name, value, tol) in checks {
            if !(value <= tol) {
                return Err(Error::IdentityViolated(format!("{name}: {value:e} exceeds {tol:e}")));
            }
        }
        Ok(())
    }
}

/// Measures every preservation identity of the extension on `rho`.
pub fn verify_extension(ext: &NaimarkExtension, rho: &DensityOperator) -> Result<ExtensionReport> {
    let f = &ext.original;
    let (d, n) = (f.dim(), ext.extended_dim());
    if rho.dim() != d {
        return Err(Error::DimMismatch { expected: d, actual: rho.dim() });
    }
    let big = direct_sum_zero(rho, n - d);
    let small_m = crate::frames::frame_matrix(f, rho.matrix())?;
    let big_m = crate::frames::frame_matrix(&ext.basis, &big)?;

    let mut max_element_error = 0.0_f64;
    let mut max_probability_error = 0.0_f64;
    let (mut small_sum, mut big_sum) = (0.0, 0.0);
    for j in 0..n {
        for k in 0..n {
            max_element_error = max_element_error.max((small_m[(j, k)] - big_m[(j, k)]).norm());
            if j != k {
                small_sum += small_m[(j, k)].norm();
                big_sum += big_m[(j, k)].norm();
            }
        }
        let e = ComplexMatrix::outer(f.vector(j), f.vector(j));
        let pi = ComplexMatrix::outer(ext.basis.vector(j), ext.basis.vector(j));
        let pe = rho.matrix().matmul(&e).trace().re;
        let ppi = big.matmul(&pi).trace().re;
        max_probability_error = max_probability_error.max((pe - ppi).abs());
    }
    let prefactor = d as f64 / n as f64;
    let top_block_error = ext
        .basis
        .vectors()
        .iter()
        .zip(f.vectors())
        .flat_map(|(big_v, v)| big_v[..d].iter().zip(v).map(|(a, b)| (a - b).norm()))
        .fold(0.0, f64::max);
    Ok(ExtensionReport {
        dim: d,
        extended_dim: n,
        max_element_error,
        max_probability_error,
        frame_coherence: prefactor * small_sum,
        extended_coherence: prefactor * big_sum,
        unitarity_error: ext.unitary().unitarity_deviation(),
        projective_error: ext.projective_deviation(),
        top_block_error,
    })
}

/// `p_j = tr(ρE_j)`; values within rounding of zero are clamped to zero.
pub fn povm_probabilities(p: &Povm, rho: &DensityOperator) -> Result<Vec<f64>> {
    if rho.dim() != p.dim {
        return Err(Error::DimMismatch { expected: p.dim, actual: rho.dim() });
    }
    p.effects
        .iter()
        .enumerate()
        .map(|(j, e)| {
            let v = rho.matrix().matmul(e).trace().re;
            if v < -1e-12 {
                Err(Error::IdentityViolated(format!("probability of outcome {j} is {v:e}")))
            } else {
                Ok(v.max(0.0))
            }
        })
        .collect()
}

/// Positive square root `A = E^{1/2}` of an effect.
pub fn measurement_operator(effect: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (values, vecs) = effect.hermitian_eigen()?;
    let d = values.len();
    let mut a = ComplexMatrix::zeros(d, d);
    for (k, &lam) in values.iter().enumerate() {
        if lam > 0.0 {
            let v = vecs.column(k);
            a = &a + &ComplexMatrix::outer(&v, &v).scaled(C64::new(lam.sqrt(), 0.0));
        }
    }
    Ok(a)
}

/// `ρ_j = A_j ρ A_j† / p_j` with `A_j = E_j^{1/2}`.
pub fn post_measurement_state(p: &Povm, rho: &DensityOperator, j: usize) -> Result<DensityOperator> {
    if rho.dim() != p.dim {
        return Err(Error::DimMismatch { expected: p.dim, actual: rho.dim() });
    }
    let e = p
        .effects
        .get(j)
        .ok_or_else(|| Error::BadParameter(format!("outcome {j} out of range 0..{}", p.len())))?;
    let probability = rho.matrix().matmul(e).trace().re;
    if probability <= 1e-12 {
        return Err(Error::ZeroProbability { index: j, probability });
    }
    let a = measurement_operator(e)?;
    let out = a.matmul(rho.matrix()).matmul(&a.adjoint()).scaled(C64::new(1.0 / probability, 0.0));
    let d = p.dim;
    let sym = ComplexMatrix::from_fn(d, d, |r, c| 0.5 * (out[(r, c)] + out[(c, r)].conj()));
    make_density(sym)
}
