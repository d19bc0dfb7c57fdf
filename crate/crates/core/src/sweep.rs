//! CSV data emitters for coherence sweeps over frame families and states.

use rayon::prelude::*;

use crate::catalog::qubit_state;
use crate::coherence::{composite_coherence_value, frame_coherence_value};
use crate::density::DensityOperator;
use crate::error::{Error, Result};
use crate::frames::{interpolate, polygonal_frame, Frame};

pub const DEFAULT_N_MAX_QUBIT: usize = 50;
pub const DEFAULT_N_MAX_COMPOSITE: usize = 30;
pub const DEFAULT_SURFACE_STEPS: usize = 51;
pub const DEFAULT_INTERPOLATE_STEPS: usize = 101;

#[derive(Debug, Clone, PartialEq)]
pub enum SweepSpec {
    /// `C_{F_n}(ρ)` for the polygonal qubit frames.
    PolygonN { state: DensityOperator, n_min: usize, n_max: usize },
    /// `C_{F_n ⊗ F_n}(ρ)` for a two-qubit state.
    CompositePolygonN { state: DensityOperator, n_min: usize, n_max: usize },
    /// `C_{F(t)}(ρ)` on an evenly spaced grid of `steps` points in `[0, 1]`.
    InterpolateT { from: Frame, to: Frame, state: DensityOperator, steps: usize },
    /// `C_F(ρ(a, b, θ))` over a `steps × steps` grid with
    /// `b ∈ [−√(a(1−a)), √(a(1−a))]`.
    SurfaceAb { frame: Frame, theta: f64, steps: usize },
}

impl SweepSpec {
    pub fn polygon(state: DensityOperator, n_min: usize, n_max: usize) -> Result<Self> {
        check_n_range(n_min, n_max)?;
        if state.dim() != 2 {
            return Err(Error::DimMismatch { expected: 2, actual: state.dim() });
        }
        Ok(Self::PolygonN { state, n_min, n_max })
    }

    pub fn composite_polygon(state: DensityOperator, n_min: usize, n_max: usize) -> Result<Self> {
        check_n_range(n_min, n_max)?;
        if state.dim() != 4 {
            return Err(Error::DimMismatch { expected: 4, actual: state.dim() });
        }
        Ok(Self::CompositePolygonN { state, n_min, n_max })
    }

    pub fn interpolate(from: Frame, to: Frame, state: DensityOperator, steps: usize) -> Result<Self> {
        check_steps(steps)?;
        // Validates the pair once up front.
        interpolate(&from, &to, 0.0)?;
        if state.dim() != from.dim() {
            return Err(Error::DimMismatch { expected: from.dim(), actual: state.dim() });
        }
        Ok(Self::InterpolateT { from, to, state, steps })
    }

    pub fn surface(frame: Frame, theta: f64, steps: usize) -> Result<Self> {
        check_steps(steps)?;
        if frame.dim() != 2 {
            return Err(Error::DimMismatch { expected: 2, actual: frame.dim() });
        }
        if !theta.is_finite() {
            return Err(Error::BadParameter(format!("theta = {theta}")));
        }
        frame.require_tight()?;
        Ok(Self::SurfaceAb { frame, theta, steps })
    }

    pub fn header(&self) -> &'static str {
        match self {
            Self::PolygonN { .. } | Self::CompositePolygonN { .. } => "n,coherence",
            Self::InterpolateT { .. } => "t,coherence",
            Self::SurfaceAb { .. } => "a,b,coherence",
        }
    }

    /// Numeric rows in sweep order.
    pub fn rows(&self) -> Result<Vec<Vec<f64>>> {
        match self {
            Self::PolygonN { state, n_min, n_max } => (*n_min..=*n_max)
                .into_par_iter()
                .map(|n| Ok(vec![n as f64, frame_coherence_value(&polygonal_frame(n)?, state)?]))
                .collect(),
            Self::CompositePolygonN { state, n_min, n_max } => (*n_min..=*n_max)
                .into_par_iter()
                .map(|n| {
                    let p = polygonal_frame(n)?;
                    Ok(vec![n as f64, composite_coherence_value(&p, &p, state)?])
                })
                .collect(),
            Self::InterpolateT { from, to, state, steps } => (0..*steps)
                .into_par_iter()
                .map(|i| {
                    let t = i as f64 / (*steps - 1) as f64;
                    Ok(vec![t, frame_coherence_value(&interpolate(from, to, t)?, state)?])
                })
                .collect(),
            Self::SurfaceAb { frame, theta, steps } => {
                let last = (*steps - 1) as f64;
                (0..steps * steps)
                    .into_par_iter()
                    .map(|idx| {
                        let a = (idx / steps) as f64 / last;
                        let bound = (a * (1.0 - a)).sqrt();
                        let b = -bound + 2.0 * bound * (idx % steps) as f64 / last;
                        let rho = qubit_state(a, b, *theta)?;
                        Ok(vec![a, b, frame_coherence_value(frame, &rho)?])
                    })
                    .collect()
            }
        }
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut out = String::from(self.header());
        out.push('\n');
        for row in self.rows()? {
            let cells: Vec<String> = row.iter().map(|&x| format_number(x)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        Ok(out)
    }
}

fn check_n_range(n_min: usize, n_max: usize) -> Result<()> {
    if n_min < 3 {
        return Err(Error::BadParameter(format!("n-min must be at least 3, got {n_min}")));
    }
    if n_max < n_min {
        return Err(Error::BadParameter(format!("empty range {n_min}..={n_max}")));
    }
    Ok(())
}

fn check_steps(steps: usize) -> Result<()> {
    if steps < 2 {
        return Err(Error::BadParameter(format!("steps must be at least 2, got {steps}")));
    }
    Ok(())
}

/// Rounds to 12 significant digits and prints the shortest representation
/// of the rounded value.
pub fn format_number(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if rounded == 0.0 {
        return "0".into();
    }
    rounded.to_string()
}
