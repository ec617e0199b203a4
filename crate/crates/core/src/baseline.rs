//! Euclidean-plane counterpart of the disk solver, used as a reference.
//!
//! Same objectives, line search and stopping rules; points move along
//! straight lines `p - r g`, and the step window limits each point's travel
//! to `s_max`, i.e. `r_M = s_max / |g|_inf`.

use num_complex::Complex64;

use crate::dissimilarity::DissimilarityData;
use crate::error::{Error, Result};
use crate::objective::{CompiledObjective, ErrorModel, Gradient};
use crate::solver::{descend, multi_start_in, MultiStart, RunResult, SolverParams};
use crate::space::{Euclidean, Space};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlanePoint {
    pub x: f64,
    pub y: f64,
}

impl PlanePoint {
    pub fn new(x: f64, y: f64) -> Self {
        PlanePoint { x, y }
    }

    fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    fn from_complex(z: Complex64) -> Self {
        PlanePoint { x: z.re, y: z.im }
    }
}

pub fn euclid_distance(p1: PlanePoint, p2: PlanePoint) -> f64 {
    Euclidean.distance(p1.to_complex(), p2.to_complex())
}

fn check(points: &[PlanePoint], data: &DissimilarityData) -> Result<Vec<Complex64>> {
    if points.len() != data.n() {
        return Err(Error::SizeMismatch {
            expected: data.n(),
            actual: points.len(),
        });
    }
    if points.iter().any(|p| !p.x.is_finite() || !p.y.is_finite()) {
        return Err(Error::InvalidParameter(
            "plane points must be finite".into(),
        ));
    }
    Ok(points.iter().map(|p| p.to_complex()).collect())
}

/// Embedding error of a planar configuration.
pub fn euclid_error(
    points: &[PlanePoint],
    data: &DissimilarityData,
    model: &ErrorModel,
) -> Result<f64> {
    let z = check(points, data)?;
    Ok(CompiledObjective::new(data, model).value(Euclidean, &z))
}

pub fn euclid_gradient(
    points: &[PlanePoint],
    data: &DissimilarityData,
    model: &ErrorModel,
) -> Result<Gradient> {
    let z = check(points, data)?;
    let (_, g) = CompiledObjective::new(data, model).value_and_gradient(Euclidean, &z)?;
    Ok(Gradient::new(g))
}

fn to_plane(z: Vec<Complex64>) -> Vec<PlanePoint> {
    z.into_iter().map(PlanePoint::from_complex).collect()
}

fn convert(run: RunResult<Vec<Complex64>>) -> RunResult<Vec<PlanePoint>> {
    RunResult {
        final_config: to_plane(run.final_config),
        final_error: run.final_error,
        stop_reason: run.stop_reason,
        trace: run.trace,
        path: run.path.map(|p| p.into_iter().map(to_plane).collect()),
        final_g_inf: run.final_g_inf,
        final_window: run.final_window,
    }
}

/// Planar steepest descent from `init`.
pub fn euclid_solve(
    init: &[PlanePoint],
    data: &DissimilarityData,
    model: &ErrorModel,
    params: &SolverParams,
) -> Result<RunResult<Vec<PlanePoint>>> {
    let z = check(init, data)?;
    let objective = CompiledObjective::new(data, model);
    descend(Euclidean, &objective, z, params).map(convert)
}

/// Planar multi-start. Starts are drawn exactly as for the disk solver.
pub fn euclid_multi_start(
    data: &DissimilarityData,
    model: &ErrorModel,
    params: &SolverParams,
    replicates: usize,
    seed: u64,
) -> Result<MultiStart<Vec<PlanePoint>>> {
    let objective = CompiledObjective::new(data, model);
    let ms = multi_start_in(Euclidean, &objective, params, replicates, seed)?;
    Ok(MultiStart {
        runs: ms.runs.into_iter().map(convert).collect(),
        best: ms.best,
    })
}
