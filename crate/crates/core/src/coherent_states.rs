//! Discrete coherent states on `C^d`, `d = 2s + 1`.
//!
//! Vectors are functions on the symmetric index range `{−s, …, s}`,
//! periodically extended with period `d`. Storage offset `0` holds index
//! `−s`. All conversions between the two go through [`SymmetricIndexSpace`].
//!
//! The Fourier operator here acts on the symmetric range and is a different
//! matrix from [`crate::frames::fourier_matrix`], which uses `0..d−1`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::coherence::frame_coherence_value;
use crate::density::DensityOperator;
use crate::error::{Error, Result};
use crate::frames::Frame;
use crate::linalg::{ComplexMatrix, C64};

/// Relative size of the last theta-series term at which summation stops.
pub const THETA_REL_TOL: f64 = 1e-17;
/// Hard cap on `|m|` in the theta series.
pub const THETA_MAX_TERMS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymmetricIndexSpace {
    s: usize,
}

impl SymmetricIndexSpace {
    pub fn new(s: usize) -> Self {
        Self { s }
    }

    pub fn from_dim(d: usize) -> Result<Self> {
        if d == 0 || d % 2 == 0 {
            return Err(Error::BadDimension(format!("dimension must be odd and positive, got {d}")));
        }
        Ok(Self { s: (d - 1) / 2 })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn dim(&self) -> usize {
        2 * self.s + 1
    }

    /// Ascending indices `−s..=s`.
    pub fn indices(&self) -> impl Iterator<Item = i64> {
        let s = self.s as i64;
        -s..=s
    }

    pub fn contains(&self, index: i64) -> bool {
        index.unsigned_abs() as usize <= self.s
    }

    /// Reduces any integer modulo `d` onto `−s..=s`.
    pub fn wrap(&self, index: i64) -> i64 {
        let d = self.dim() as i64;
        let s = self.s as i64;
        (index + s).rem_euclid(d) - s
    }

    /// Storage offset of an index already in range.
    pub fn offset(&self, index: i64) -> usize {
        debug_assert!(self.contains(index));
        (index + self.s as i64) as usize
    }

    pub fn index(&self, offset: usize) -> i64 {
        offset as i64 - self.s as i64
    }

    fn check(&self, index: i64) -> Result<()> {
        if self.contains(index) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, s: self.s })
        }
    }
}

/// Periodized Gaussian `g_κ(n) = Σ_m exp(−(κπ/d)(n + md)²)` sampled on `−s..=s`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteGaussian {
    pub space: SymmetricIndexSpace,
    pub kappa: f64,
    /// Values in storage order (index `−s` first).
    pub values: Vec<f64>,
    /// Largest `|m|` used over all sample points.
    pub terms_used: usize,
}

impl DiscreteGaussian {
    pub fn at(&self, index: i64) -> f64 {
        self.values[self.space.offset(self.space.wrap(index))]
    }

    pub fn to_complex(&self) -> Vec<C64> {
        self.values.iter().map(|&x| C64::new(x, 0.0)).collect()
    }
}

fn theta_sum(n: i64, d: usize, kappa: f64) -> Result<(f64, usize)> {
    let d_i = d as i64;
    let a = kappa * PI / d as f64;
    let term = |x: i64| (-a * (x as f64).powi(2)).exp();
    let mut sum = term(n);
    for m in 1..=THETA_MAX_TERMS as i64 {
        let t = term(n + m * d_i) + term(n - m * d_i);
        sum += t;
        if t == 0.0 || t < THETA_REL_TOL * sum {
            return Ok((sum, m as usize));
        }
    }
    Err(Error::NoConvergence { terms: THETA_MAX_TERMS })
}

pub fn discrete_gaussian(d: usize, kappa: f64) -> Result<DiscreteGaussian> {
    let space = SymmetricIndexSpace::from_dim(d)?;
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(Error::BadKappa(kappa));
    }
    let mut values = Vec::with_capacity(d);
    let mut terms_used = 0;
    for n in space.indices() {
        let (v, m) = theta_sum(n, d, kappa)?;
        values.push(v);
        terms_used = terms_used.max(m);
    }
    Ok(DiscreteGaussian { space, kappa, values, terms_used })
}

/// `(Fψ)(k) = d^{−1/2} Σ_j exp(−2πi kj/d) ψ(j)` on the symmetric range.
pub fn fourier_operator(space: SymmetricIndexSpace) -> ComplexMatrix {
    let d = space.dim();
    let norm = 1.0 / (d as f64).sqrt();
    ComplexMatrix::from_fn(d, d, |r, c| {
        let (k, j) = (space.index(r), space.index(c));
        let phase = (k * j).rem_euclid(d as i64) as f64;
        C64::from_polar(norm, -2.0 * PI * phase / d as f64)
    })
}

/// Normalized `g_1`; a fixed point of [`fourier_operator`].
pub fn vacuum_state(d: usize) -> Result<Vec<C64>> {
    let g = discrete_gaussian(d, 1.0)?;
    let n = g.values.iter().map(|x| x * x).sum::<f64>().sqrt();
    Ok(g.values.iter().map(|x| C64::new(x / n, 0.0)).collect())
}

/// `(D(j,k)ψ)(n) = exp(−πi kj/d) exp(2πi kn/d) ψ(n − j)`, with `n − j`
/// reduced onto the symmetric range.
pub fn displacement(space: SymmetricIndexSpace, j: i64, k: i64) -> Result<ComplexMatrix> {
    space.check(j)?;
    space.check(k)?;
    let d = space.dim();
    let df = d as f64;
    let global = -PI * (k * j) as f64 / df;
    let mut m = ComplexMatrix::zeros(d, d);
    for n in space.indices() {
        let src = space.wrap(n - j);
        let phase = global + 2.0 * PI * (k * n) as f64 / df;
        m[(space.offset(n), space.offset(src))] = C64::from_polar(1.0, phase);
    }
    Ok(m)
}

/// `|j,k⟩ = d^{−1/2} D(j,k)|g⟩` for `j` (outer) and `k` (inner) ascending
/// from `−s`. The `d²` vectors form a tight frame.
pub fn coherent_frame(d: usize) -> Result<Frame> {
    let space = SymmetricIndexSpace::from_dim(d)?;
    let g = vacuum_state(d)?;
    let scale = C64::new(1.0 / (d as f64).sqrt(), 0.0);
    let mut vectors = Vec::with_capacity(d * d);
    for j in space.indices() {
        for k in space.indices() {
            vectors.push(displacement(space, j, k)?.apply(&g).into_iter().map(|z| z * scale).collect());
        }
    }
    Frame::new(d, vectors)
}

/// Position of `|j,k⟩` in [`coherent_frame`].
pub fn coherent_position(space: SymmetricIndexSpace, j: i64, k: i64) -> usize {
    space.offset(j) * space.dim() + space.offset(k)
}

/// Label `(j′,k′)` with `F|j,k⟩ = |j′,k′⟩`, i.e. `(k, −j)` reduced mod `d`.
/// Equivalently `F†|j,k⟩ = |−k, j⟩`.
pub fn fourier_relabel(space: SymmetricIndexSpace, j: i64, k: i64) -> (i64, i64) {
    (space.wrap(k), space.wrap(-j))
}

pub const FOURIER_INVARIANCE_TOL: f64 = 1e-11;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FourierInvarianceReport {
    /// `C(ρ)` in the coherent frame.
    pub coherence: f64,
    /// `C(F†ρF)` computed from the transformed state.
    pub transformed: f64,
    /// `C(F†ρF)` computed as the coherence of `ρ` in the relabelled frame
    /// `{F|j,k⟩}` without forming `F†ρF`.
    pub relabelled: f64,
    /// `max_{j,k} ‖F|j,k⟩ − |k,−j⟩‖`
    pub relabel_error: f64,
}

impl FourierInvarianceReport {
    pub fn check(&self) -> Result<()> {
        let gap = (self.coherence - self.transformed).abs();
        if gap >= FOURIER_INVARIANCE_TOL {
            return Err(Error::IdentityViolated(format!("|C(rho) - C(F^dag rho F)| = {gap:e}")));
        }
        let gap = (self.transformed - self.relabelled).abs();
        if gap >= FOURIER_INVARIANCE_TOL {
            return Err(Error::IdentityViolated(format!("relabelled route differs by {gap:e}")));
        }
        if self.relabel_error >= FOURIER_INVARIANCE_TOL {
            return Err(Error::IdentityViolated(format!(
                "F|j,k> differs from |k,-j> by {:e}",
                self.relabel_error
            )));
        }
        Ok(())
    }
}

pub fn fourier_invariance_check(d: usize, rho: &DensityOperator) -> Result<FourierInvarianceReport> {
    let space = SymmetricIndexSpace::from_dim(d)?;
    if rho.dim() != d {
        return Err(Error::DimMismatch { expected: d, actual: rho.dim() });
    }
    let frame = coherent_frame(d)?;
    let f = fourier_operator(space);
    let coherence = frame_coherence_value(&frame, rho)?;
    let transformed = frame_coherence_value(&frame, &rho.conjugate_by(&f.adjoint())?)?;

    let mut relabel_error = 0.0_f64;
    let mut perm = Vec::with_capacity(d * d);
    for j in space.indices() {
        for k in space.indices() {
            let (jj, kk) = fourier_relabel(space, j, k);
            let target = coherent_position(space, jj, kk);
            let image = f.apply(frame.vector(coherent_position(space, j, k)));
            let err = image
                .iter()
                .zip(frame.vector(target))
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            relabel_error = relabel_error.max(err);
            perm.push(target);
        }
    }
    let relabelled = frame_coherence_value(&frame.permuted(&perm)?, rho)?;
    Ok(FourierInvarianceReport { coherence, transformed, relabelled, relabel_error })
}
