//! Seeded random states, unitaries and tight frames for property checks.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::density::{make_density, DensityOperator};
use crate::frames::Frame;
use crate::linalg::{inner, norm, ComplexMatrix, C64};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Gram–Schmidt on the columns of a complex Ginibre matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, d: usize) -> ComplexMatrix {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(d);
    while cols.len() < d {
        let mut v: Vec<C64> = (0..d).map(|_| gaussian(rng)).collect();
        for q in &cols {
            let p = inner(q, &v);
            for (x, y) in v.iter_mut().zip(q) {
                *x -= p * y;
            }
        }
        let n = norm(&v);
        if n > 1e-8 {
            cols.push(v.into_iter().map(|z| z / n).collect());
        }
    }
    ComplexMatrix::from_columns(d, &cols)
}

/// Full-rank mixed state `GG†/tr(GG†)`.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, d: usize) -> DensityOperator {
    let g = ComplexMatrix::from_fn(d, d, |_, _| gaussian(rng));
    let gg = g.matmul(&g.adjoint());
    let t = gg.trace().re;
    let mut m = gg.scaled(C64::new(1.0 / t, 0.0));
    // Exact Hermitian symmetry before validation.
    for j in 0..d {
        m[(j, j)] = C64::new(m[(j, j)].re, 0.0);
        for k in j + 1..d {
            m[(k, j)] = m[(j, k)].conj();
        }
    }
    make_density(m).expect("GG† is a valid state")
}

pub fn random_pure_state<R: Rng + ?Sized>(rng: &mut R, d: usize) -> DensityOperator {
    let v: Vec<C64> = (0..d).map(|_| gaussian(rng)).collect();
    DensityOperator::pure(&v).expect("non-zero Gaussian vector")
}

pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Vec<C64> {
    (0..d).map(|_| gaussian(rng)).collect()
}

/// `n` vectors in `C^d` forming a tight frame: the columns of the first `d`
/// rows of a random `n × n` unitary.
pub fn random_tight_frame<R: Rng + ?Sized>(rng: &mut R, d: usize, n: usize) -> Frame {
    assert!(n >= d && d >= 1, "need n >= d >= 1");
    let u = random_unitary(rng, n);
    let vectors = (0..n).map(|k| (0..d).map(|r| u[(r, k)]).collect()).collect();
    Frame::new(d, vectors).expect("valid frame")
}
