//! Named states and frame specifier strings.
//!
//! Frames: `canonical:D`, `fourier:D`, `polygon:N`, `triangle`, `tetra`,
//! `ico`, `rotated:LAMBDA`, `coherent:D`, `split3`, or a path to a JSON frame.
//! Specifiers joined by `+` (optionally prefixed by `union:`) form the union of
//! `k` frames, each scaled by `1/√k`.
//!
//! States: `rho0`..`rho3`, `qutrit136`, `bell1`..`bell4`, `qubit:A,B,THETA`,
//! or a path to a JSON state.

use std::f64::consts::FRAC_1_SQRT_2;
use std::path::Path;

use crate::coherent_states::coherent_frame;
use crate::density::{make_density, DensityOperator};
use crate::error::{Error, Result};
use crate::frames::{
    canonical_basis, fourier_basis, icosahedral_frame, polygonal_frame, rotated_qubit_basis, split3_frame,
    tetrahedral_frame, triangle_frame, Frame,
};
use crate::linalg::{c, re, ComplexMatrix, C64};

pub const STATE_NAMES: &[&str] = &["rho0", "rho1", "rho2", "rho3", "qutrit136", "bell1", "bell2", "bell3", "bell4"];

/// Slack on `|b| ≤ √(a(1−a))` for grid points on the boundary.
const QUBIT_SLACK: f64 = 1e-12;

pub fn builtin_state(name: &str) -> Result<DensityOperator> {
    let name = name.trim();
    let diag = |d: &[f64]| make_density(ComplexMatrix::from_real_diag(d));
    match name {
        "rho0" => diag(&[1.0, 0.0]),
        "rho1" => diag(&[0.5, 0.5]),
        "rho2" => diag(&[0.25, 0.75]),
        "rho3" => make_density(ComplexMatrix::from_rows(&[vec![re(0.5), re(-0.25)], vec![re(-0.25), re(0.5)]])?),
        "qutrit136" => diag(&[1.0 / 6.0, 2.0 / 6.0, 3.0 / 6.0]),
        "bell1" | "bell2" | "bell3" | "bell4" => DensityOperator::pure(&bell_vector(name.as_bytes()[4] - b'0')),
        _ => {
            if let Some(params) = name.strip_prefix("qubit:") {
                let v = parse_floats(params, 3)?;
                qubit_state(v[0], v[1], v[2])
            } else if Path::new(name).is_file() {
                DensityOperator::from_json_str(&std::fs::read_to_string(name)?)
            } else {
                Err(Error::UnknownName(name.to_string()))
            }
        }
    }
}

/// Bell vectors in the product basis `|00⟩, |01⟩, |10⟩, |11⟩`.
pub fn bell_vector(which: u8) -> Vec<C64> {
    let h = FRAC_1_SQRT_2;
    let z = re(0.0);
    match which {
        1 => vec![re(h), z, z, re(h)],
        2 => vec![re(h), z, z, re(-h)],
        3 => vec![z, re(h), re(h), z],
        _ => vec![z, c(0.0, h), c(0.0, -h), z],
    }
}

/// `[[a, b e^{iθ}], [b e^{−iθ}, 1−a]]` with `0 ≤ a ≤ 1`, `|b| ≤ √(a(1−a))`.
pub fn qubit_state(a: f64, b: f64, theta: f64) -> Result<DensityOperator> {
    if !(0.0..=1.0).contains(&a) {
        return Err(Error::InvalidParameters(format!("a = {a} outside [0, 1]")));
    }
    let bound = (a * (1.0 - a)).sqrt();
    if !(b.abs() <= bound + QUBIT_SLACK) || !theta.is_finite() {
        return Err(Error::InvalidParameters(format!("|b| = {} exceeds √(a(1−a)) = {bound}", b.abs())));
    }
    let off = C64::from_polar(b, theta);
    make_density(ComplexMatrix::from_rows(&[vec![re(a), off], vec![off.conj(), re(1.0 - a)]])?)
}

pub fn builtin_frame(spec: &str) -> Result<Frame> {
    let spec = spec.trim();
    let body = spec.strip_prefix("union:").unwrap_or(spec);
    if body.contains('+') {
        let parts = body.split('+').map(single_frame).collect::<Result<Vec<_>>>()?;
        return union(&parts);
    }
    if spec.starts_with("union:") {
        return Err(Error::BadParameter(format!("union needs at least two parts: {spec}")));
    }
    single_frame(spec)
}

fn union(parts: &[Frame]) -> Result<Frame> {
    let dim = parts[0].dim();
    let w = re((1.0 / parts.len() as f64).sqrt());
    let mut vectors = Vec::new();
    for p in parts {
        if p.dim() != dim {
            return Err(Error::DimMismatch { expected: dim, actual: p.dim() });
        }
        vectors.extend(p.vectors().iter().map(|v| crate::linalg::scale(v, w)));
    }
    Frame::new(dim, vectors)
}

fn single_frame(spec: &str) -> Result<Frame> {
    let spec = spec.trim();
    match spec {
        "triangle" => return Ok(triangle_frame()),
        "tetra" => return Ok(tetrahedral_frame()),
        "ico" => return Ok(icosahedral_frame()),
        "split3" => return Ok(split3_frame()),
        _ => {}
    }
    if let Some((kind, arg)) = spec.split_once(':') {
        let int = || {
            arg.trim()
                .parse::<usize>()
                .map_err(|_| Error::BadParameter(format!("expected a positive integer in {spec:?}")))
        };
        match kind {
            "canonical" => return canonical_basis(int()?),
            "fourier" => return fourier_basis(int()?),
            "polygon" => return polygonal_frame(int()?),
            "coherent" => return coherent_frame(int()?),
            "rotated" => return Ok(rotated_qubit_basis(parse_floats(arg, 1)?[0])),
            _ => {}
        }
    }
    if Path::new(spec).is_file() {
        return Frame::from_json_str(&std::fs::read_to_string(spec)?);
    }
    Err(Error::UnknownName(spec.to_string()))
}

fn parse_floats(s: &str, count: usize) -> Result<Vec<f64>> {
    let v = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| Error::InvalidParameters(format!("{s:?}: {e}")))?;
    if v.len() != count {
        return Err(Error::InvalidParameters(format!("expected {count} comma-separated numbers, got {s:?}")));
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidParameters(format!("non-finite parameter in {s:?}")));
    }
    Ok(v)
}
