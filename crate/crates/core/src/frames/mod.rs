//! Finite frames in `C^d`: tightness, analysis and synthesis maps, the matrix
//! of an operator in a frame, and frame combinators.
//!
//! A frame is an ordered list of vectors. Zero and repeated vectors are
//! allowed, vectors are kept exactly as given (no normalization), and order
//! is part of the frame's identity.

mod builtin;

pub use builtin::{
    canonical_basis, canonical_fourier_union, fourier_basis, fourier_matrix, icosahedral_frame,
    polygonal_frame, rotated_qubit_basis, split3_frame, tetrahedral_frame, triangle_frame,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{inner, re, tensor_vec, ComplexMatrix, JsonComplex, C64};

/// Relative tightness tolerance; a frame in `C^d` is tight when the Frobenius
/// residual of `Σ|φ⟩⟨φ| − I` is at most `TIGHT_TOL * d`.
pub const TIGHT_TOL: f64 = 1e-10;
/// Tolerance on `|⟨ψ_j|ψ_k⟩ − δ_jk|` for orthonormal-basis checks.
pub const BASIS_TOL: f64 = 1e-10;
/// Tolerance on `‖U†U − I‖_F`.
pub const UNITARY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    dim: usize,
    vectors: Vec<Vec<C64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TightnessReport {
    /// `‖Σ_k |φ_k⟩⟨φ_k| − I‖_F`
    pub residual: f64,
    pub tight: bool,
}

impl Frame {
    /// Wraps `vectors` as a frame in `C^dim` without checking tightness.
    pub fn new(dim: usize, vectors: Vec<Vec<C64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::BadDimension("frame dimension must be at least 1".into()));
        }
        if vectors.is_empty() {
            return Err(Error::BadCount("a frame needs at least one vector".into()));
        }
        for v in &vectors {
            if v.len() != dim {
                return Err(Error::DimMismatch { expected: dim, actual: v.len() });
            }
            if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::BadParameter("non-finite frame vector entry".into()));
            }
        }
        Ok(Self { dim, vectors })
    }

    /// Real vectors, convenient for the geometric frames.
    pub fn from_real(dim: usize, vectors: &[Vec<f64>]) -> Result<Self> {
        Self::new(dim, vectors.iter().map(|v| v.iter().map(|&x| re(x)).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<C64>] {
        &self.vectors
    }

    pub fn vector(&self, k: usize) -> &[C64] {
        &self.vectors[k]
    }

    /// The `d × n` matrix with the frame vectors as columns.
    pub fn synthesis_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_columns(self.dim, &self.vectors)
    }

    /// `Σ_k |φ_k⟩⟨φ_k|`
    pub fn frame_operator(&self) -> ComplexMatrix {
        let mut s = ComplexMatrix::zeros(self.dim, self.dim);
        for v in &self.vectors {
            for r in 0..self.dim {
                for col in 0..self.dim {
                    s[(r, col)] += v[r] * v[col].conj();
                }
            }
        }
        s
    }

    pub fn tightness_tolerance(&self) -> f64 {
        TIGHT_TOL * self.dim as f64
    }

    pub fn require_tight(&self) -> Result<TightnessReport> {
        let report = verify_tight(self);
        if report.tight {
            Ok(report)
        } else {
            Err(Error::NotTight { residual: report.residual, tolerance: self.tightness_tolerance() })
        }
    }

    /// Largest `|⟨ψ_j|ψ_k⟩ − δ_jk|` over all pairs.
    pub fn orthonormality_deviation(&self) -> f64 {
        let mut dev = 0.0_f64;
        for (j, u) in self.vectors.iter().enumerate() {
            for (k, v) in self.vectors.iter().enumerate().skip(j) {
                let target = if j == k { 1.0 } else { 0.0 };
                dev = dev.max((inner(u, v) - target).norm());
            }
        }
        dev
    }

    /// Succeeds when the frame is an orthonormal basis: `n = d` pairwise
    /// orthonormal vectors.
    pub fn require_basis(&self) -> Result<()> {
        if self.len() != self.dim {
            return Err(Error::NotBasis(format!("{} vectors in dimension {}", self.len(), self.dim)));
        }
        let dev = self.orthonormality_deviation();
        if dev > BASIS_TOL {
            return Err(Error::NotBasis(format!("max |<psi_j|psi_k> - delta_jk| = {dev:e}")));
        }
        Ok(())
    }

    pub fn is_basis(&self) -> bool {
        self.require_basis().is_ok()
    }

    /// Same vectors in the order given by `perm` (`result[i] = self[perm[i]]`).
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        Self::new(self.dim, perm.iter().map(|&k| self.vectors[k].clone()).collect())
    }

    pub fn to_json(&self) -> FrameJson {
        FrameJson {
            dim: self.dim,
            vectors: self
                .vectors
                .iter()
                .map(|v| v.iter().copied().map(JsonComplex::from).collect())
                .collect(),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let parsed: FrameJson = serde_json::from_str(s)?;
        parsed.try_into()
    }
}

/// Wire format `{"dim": d, "vectors": [[{"re":r,"im":i} × d] × n]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameJson {
    pub dim: usize,
    pub vectors: Vec<Vec<JsonComplex>>,
}

impl TryFrom<FrameJson> for Frame {
    type Error = Error;

    fn try_from(f: FrameJson) -> Result<Self> {
        Frame::new(f.dim, f.vectors.iter().map(|v| crate::linalg::vec_from_json(v)).collect())
    }
}

pub fn verify_tight(f: &Frame) -> TightnessReport {
    let residual = (&f.frame_operator() - &ComplexMatrix::identity(f.dim)).frobenius_norm();
    TightnessReport { residual, tight: residual <= f.tightness_tolerance() }
}

/// Concatenation of `wa·a` followed by `wb·b`. The result is not required to
/// be tight.
pub fn scaled_union(a: &Frame, b: &Frame, wa: f64, wb: f64) -> Result<Frame> {
    if a.dim != b.dim {
        return Err(Error::DimMismatch { expected: a.dim, actual: b.dim });
    }
    if !wa.is_finite() || !wb.is_finite() {
        return Err(Error::BadParameter("non-finite union weight".into()));
    }
    let vectors = a
        .vectors
        .iter()
        .map(|v| crate::linalg::scale(v, re(wa)))
        .chain(b.vectors.iter().map(|v| crate::linalg::scale(v, re(wb))))
        .collect();
    Frame::new(a.dim, vectors)
}

/// The tight frame `{√(1−t) a_k} ∪ {√t b_k}` joining two orthonormal bases.
pub fn interpolate(a: &Frame, b: &Frame, t: f64) -> Result<Frame> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::BadParameter(format!("interpolation parameter {t} outside [0, 1]")));
    }
    if a.dim != b.dim {
        return Err(Error::DimMismatch { expected: a.dim, actual: b.dim });
    }
    a.require_basis()?;
    b.require_basis()?;
    scaled_union(a, b, (1.0 - t).sqrt(), t.sqrt())
}

/// An orthonormal family spanning one subspace followed by a tight frame of
/// the orthogonal complement; `frame_part` may be empty.
pub fn split_frame(basis_part: &Frame, frame_part: &[Vec<C64>]) -> Result<Frame> {
    if basis_part.orthonormality_deviation() > BASIS_TOL {
        return Err(Error::NotBasis("basis part is not an orthonormal family".into()));
    }
    let mut vectors = basis_part.vectors.clone();
    vectors.extend(frame_part.iter().cloned());
    let f = Frame::new(basis_part.dim, vectors)?;
    f.require_tight()?;
    Ok(f)
}

/// `{φ_j ⊗ χ_k}` in lexicographic `(j, k)` order.
pub fn tensor_frame(a: &Frame, b: &Frame) -> Result<Frame> {
    a.require_tight()?;
    b.require_tight()?;
    let vectors = a
        .vectors
        .iter()
        .flat_map(|u| b.vectors.iter().map(move |v| tensor_vec(u, v)))
        .collect();
    Frame::new(a.dim * b.dim, vectors)
}

/// `{U φ_k}`, order preserved.
pub fn apply_unitary(u: &ComplexMatrix, f: &Frame) -> Result<Frame> {
    if u.rows() != f.dim || u.cols() != f.dim {
        return Err(Error::DimMismatch { expected: f.dim, actual: u.rows() });
    }
    let deviation = u.unitarity_deviation();
    if deviation > UNITARY_TOL {
        return Err(Error::NotUnitary { deviation });
    }
    Frame::new(f.dim, f.vectors.iter().map(|v| u.apply(v)).collect())
}

/// `c_k = ⟨φ_k|ψ⟩`
pub fn analysis_coefficients(f: &Frame, psi: &[C64]) -> Result<Vec<C64>> {
    if psi.len() != f.dim {
        return Err(Error::DimMismatch { expected: f.dim, actual: psi.len() });
    }
    Ok(f.vectors.iter().map(|v| inner(v, psi)).collect())
}

/// `Σ_k c_k |φ_k⟩`
pub fn synthesize(f: &Frame, coeffs: &[C64]) -> Result<Vec<C64>> {
    if coeffs.len() != f.len() {
        return Err(Error::LengthMismatch { expected: f.len(), actual: coeffs.len() });
    }
    let mut out = vec![C64::new(0.0, 0.0); f.dim];
    for (c, v) in coeffs.iter().zip(&f.vectors) {
        for (o, x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }
    Ok(out)
}

/// Orthogonal projector `I_n − T†T` onto the coefficient vectors that
/// synthesize to zero, for a tight frame with synthesis matrix `T`.
pub fn coefficient_kernel_projector(f: &Frame) -> Result<ComplexMatrix> {
    f.require_tight()?;
    let t = f.synthesis_matrix();
    Ok(&ComplexMatrix::identity(f.len()) - &t.adjoint().matmul(&t))
}

/// `M_jk = ⟨φ_j|A|φ_k⟩`
pub fn frame_matrix(f: &Frame, a: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.rows() != f.dim || a.cols() != f.dim {
        return Err(Error::DimMismatch { expected: f.dim, actual: a.rows() });
    }
    let t = f.synthesis_matrix();
    Ok(t.adjoint().matmul(&a.matmul(&t)))
}
