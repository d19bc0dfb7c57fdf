use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::error::{Error, Result};
use crate::linalg::{basis_vector, ComplexMatrix, C64};

use super::{scaled_union, split_frame, Frame};

/// Columns of the identity.
pub fn canonical_basis(d: usize) -> Result<Frame> {
    if d == 0 {
        return Err(Error::BadDimension("canonical basis needs d >= 1".into()));
    }
    Frame::new(d, (0..d).map(|k| basis_vector(d, k)).collect())
}

/// `{(cos λ, sin λ), (−sin λ, cos λ)}`
pub fn rotated_qubit_basis(lambda: f64) -> Frame {
    let (s, c) = lambda.sin_cos();
    Frame::from_real(2, &[vec![c, s], vec![-s, c]]).expect("two 2-vectors")
}

/// Regular `n`-gon in the real plane, scaled by `√(2/n)`:
/// `φ_k = √(2/n) (cos 2kπ/n, sin 2kπ/n)`, `k = 0..n−1`.
pub fn polygonal_frame(n: usize) -> Result<Frame> {
    if n < 3 {
        return Err(Error::BadCount(format!("polygonal frame needs n >= 3, got {n}")));
    }
    let scale = (2.0 / n as f64).sqrt();
    let vectors: Vec<Vec<f64>> = (0..n)
        .map(|k| {
            let (s, c) = (2.0 * PI * k as f64 / n as f64).sin_cos();
            vec![scale * c, scale * s]
        })
        .collect();
    Frame::from_real(2, &vectors)
}

/// Three-vector qubit frame `√(2/3)·{(1,0), (−1/2, √3/2), (−1/2, −√3/2)}`,
/// written with exact components. Same vectors and order as
/// `polygonal_frame(3)`.
pub fn triangle_frame() -> Frame {
    let a = (2.0f64 / 3.0).sqrt();
    let b = 1.0 / 6f64.sqrt();
    Frame::from_real(2, &[vec![a, 0.0], vec![-b, FRAC_1_SQRT_2], vec![-b, -FRAC_1_SQRT_2]])
        .expect("three 2-vectors")
}

/// Four vertices of a regular tetrahedron in `R^3`, each of norm² 3/4.
pub fn tetrahedral_frame() -> Frame {
    let h = 0.5;
    Frame::from_real(
        3,
        &[vec![-h, h, h], vec![h, -h, h], vec![h, h, -h], vec![-h, -h, -h]],
    )
    .expect("four 3-vectors")
}

/// Six vertex directions of a regular icosahedron, scaled by `1/η` with
/// `τ = (1+√5)/2` and `η = √(5+√5)`. Each vector has norm² 1/2.
pub fn icosahedral_frame() -> Frame {
    let tau = (1.0 + 5f64.sqrt()) / 2.0;
    let eta = (5.0 + 5f64.sqrt()).sqrt();
    let raw = [
        [1.0, tau, 0.0],
        [-1.0, tau, 0.0],
        [-tau, 0.0, 1.0],
        [0.0, -1.0, tau],
        [tau, 0.0, 1.0],
        [0.0, 1.0, tau],
    ];
    let vectors: Vec<Vec<f64>> = raw.iter().map(|v| v.iter().map(|x| x / eta).collect()).collect();
    Frame::from_real(3, &vectors).expect("six 3-vectors")
}

/// Discrete Fourier transform on indices `0..d−1`,
/// `F_jk = exp(−2πi jk/d)/√d`.
///
/// The coherent-state module uses a different, symmetric index range; the
/// two operators are not interchangeable.
pub fn fourier_matrix(d: usize) -> ComplexMatrix {
    let norm = 1.0 / (d as f64).sqrt();
    ComplexMatrix::from_fn(d, d, |j, k| {
        C64::from_polar(norm, -2.0 * PI * ((j * k) % d) as f64 / d as f64)
    })
}

/// Complementary basis: the columns of `F†`, i.e. `F†|e_k⟩`.
pub fn fourier_basis(d: usize) -> Result<Frame> {
    if d == 0 {
        return Err(Error::BadDimension("Fourier basis needs d >= 1".into()));
    }
    Frame::new(d, fourier_matrix(d).adjoint().columns())
}

/// Canonical and Fourier bases of `C^d` together, each scaled by `1/√2`.
pub fn canonical_fourier_union(d: usize) -> Result<Frame> {
    scaled_union(&canonical_basis(d)?, &fourier_basis(d)?, FRAC_1_SQRT_2, FRAC_1_SQRT_2)
}

/// `{e_0, e_1, ½e_2, (√3/2)e_2}` in `C^3`: an orthonormal basis of
/// `span{e_0, e_1}` followed by a two-vector tight frame of `span{e_2}`.
pub fn split3_frame() -> Frame {
    let basis_part = Frame::new(3, vec![basis_vector(3, 0), basis_vector(3, 1)]).expect("two 3-vectors");
    let e2 = basis_vector(3, 2);
    let tail = vec![
        crate::linalg::scale(&e2, C64::new(0.5, 0.0)),
        crate::linalg::scale(&e2, C64::new(3f64.sqrt() / 2.0, 0.0)),
    ];
    split_frame(&basis_part, &tail).expect("split frame resolves the identity")
}
