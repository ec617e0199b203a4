//! Steepest descent with the binary line search, multi-start replicates and
//! the dissimilarity scaling sweep.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dissimilarity::DissimilarityData;
use crate::error::{Error, Result};
use crate::geometry::{hyp_distance, Configuration, DiskPoint};
use crate::linesearch::{binary_line_search, DescentPath, LineSearchParams};
use crate::objective::{CompiledObjective, ErrorModel};
use crate::space::{Hyperbolic, Space};

/// Radius bound of random initial configurations.
pub const INIT_RADIUS: f64 = 0.5;
const MIN_INIT_SEPARATION: f64 = 1e-6;

/// Stopping tolerances and search settings.
#[derive(Clone, Debug, PartialEq)]
pub struct SolverParams {
    /// Stop once the error drops below this.
    pub eps_error: f64,
    /// Stop once an iteration improves the error by less than this.
    pub eps_progress: f64,
    /// Stop once the gradient infinity norm drops below this.
    pub eps_gradient: f64,
    /// Stop once the step window drops below this.
    pub eps_window: f64,
    /// Iteration cap.
    pub max_iter: usize,
    /// Largest distance any point may travel in one iteration.
    pub s_max: f64,
    pub linesearch: LineSearchParams,
    /// Keep every intermediate configuration in [`RunResult::path`].
    pub record_path: bool,
}

impl Default for SolverParams {
    fn default() -> Self {
        SolverParams {
            eps_error: 1e-6,
            eps_progress: 1e-9,
            eps_gradient: 1e-9,
            eps_window: 1e-12,
            max_iter: 1000,
            s_max: 10.0,
            linesearch: LineSearchParams::default(),
            record_path: false,
        }
    }
}

impl SolverParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("eps_error", self.eps_error),
            ("eps_progress", self.eps_progress),
            ("eps_gradient", self.eps_gradient),
            ("eps_window", self.eps_window),
            ("s_max", self.s_max),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidParameter(
                "max_iter must be at least 1".into(),
            ));
        }
        self.linesearch.validate()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StopReason {
    ErrorBelowEps,
    SlowProgress,
    SmallGradient,
    SmallStepWindow,
    IterationCap,
    StationaryLineSearch,
}

impl StopReason {
    pub fn as_str(self) -> &'static str {
        match self {
            StopReason::ErrorBelowEps => "error_below_eps",
            StopReason::SlowProgress => "slow_progress",
            StopReason::SmallGradient => "small_gradient",
            StopReason::SmallStepWindow => "small_step_window",
            StopReason::IterationCap => "iteration_cap",
            StopReason::StationaryLineSearch => "stationary_linesearch",
        }
    }
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One descent step: the state before it and the accepted step.
#[derive(Clone, Debug, PartialEq)]
pub struct IterationRecord {
    pub t: usize,
    /// Error before the step.
    pub error: f64,
    /// Accepted step parameter `r`.
    pub step: f64,
    pub g_inf: f64,
    /// `r / r_M`.
    pub step_ratio: f64,
    /// Step window `r_M`.
    pub window: f64,
    /// Steps probed by the line search, in order.
    pub probes: Vec<f64>,
}

/// Outcome of one descent run. `C` is the configuration type.
#[derive(Clone, Debug, PartialEq)]
pub struct RunResult<C = Configuration> {
    pub final_config: C,
    pub final_error: f64,
    pub stop_reason: StopReason,
    pub trace: Vec<IterationRecord>,
    /// Initial, intermediate and final configurations when requested.
    pub path: Option<Vec<C>>,
    /// Gradient norm and window at the final configuration (absent when the
    /// final line search failed).
    pub final_g_inf: f64,
    pub final_window: f64,
}

impl<C> RunResult<C> {
    pub fn iterations(&self) -> usize {
        self.trace.len()
    }

    fn map_config<D>(self, f: impl Fn(C) -> D) -> RunResult<D> {
        RunResult {
            final_config: f(self.final_config),
            final_error: self.final_error,
            stop_reason: self.stop_reason,
            trace: self.trace,
            path: self.path.map(|p| p.into_iter().map(f).collect()),
            final_g_inf: self.final_g_inf,
            final_window: self.final_window,
        }
    }
}

/// The descent loop, shared by every target space.
pub(crate) fn descend<S: Space>(
    space: S,
    objective: &CompiledObjective,
    init: Vec<Complex64>,
    params: &SolverParams,
) -> Result<RunResult<Vec<Complex64>>> {
    params.validate()?;
    if init.len() != objective.n() {
        return Err(Error::SizeMismatch {
            expected: objective.n(),
            actual: init.len(),
        });
    }
    let mut z = init;
    let mut path = params.record_path.then(|| vec![z.clone()]);
    let mut trace = Vec::new();
    let mut prev_error = f64::INFINITY;
    let mut r0 = params.linesearch.r0;
    let mut t = 1;

    let (stop_reason, g_inf, window) = loop {
        let (error, g) = objective.value_and_gradient(space, &z)?;
        let g_inf = g.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let window = space.window(g_inf, params.s_max);

        let stop = if error < params.eps_error {
            Some(StopReason::ErrorBelowEps)
        } else if prev_error - error < params.eps_progress {
            Some(StopReason::SlowProgress)
        } else if g_inf < params.eps_gradient {
            Some(StopReason::SmallGradient)
        } else if window < params.eps_window {
            Some(StopReason::SmallStepWindow)
        } else if t > params.max_iter {
            Some(StopReason::IterationCap)
        } else {
            None
        };
        if let Some(reason) = stop {
            break (reason, g_inf, window);
        }
        prev_error = error;

        let descent = DescentPath::new(space, objective, &z, &g, error);
        let ls = LineSearchParams {
            r0,
            ..params.linesearch
        };
        let outcome = match binary_line_search(&descent, &ls, window) {
            Ok(o) => o,
            Err(Error::StationaryLineSearch { .. }) => {
                break (StopReason::StationaryLineSearch, g_inf, window)
            }
            Err(e) => return Err(e),
        };
        let next = descent.moved(outcome.step);
        trace.push(IterationRecord {
            t,
            error,
            step: outcome.step,
            g_inf,
            step_ratio: outcome.step / window,
            window,
            probes: outcome.probes,
        });
        r0 = outcome.step;
        z = next;
        if let Some(p) = path.as_mut() {
            p.push(z.clone());
        }
        t += 1;
    };

    let final_error = objective.value(space, &z);
    Ok(RunResult {
        final_config: z,
        final_error,
        stop_reason,
        trace,
        path,
        final_g_inf: g_inf,
        final_window: window,
    })
}

/// Runs the descent in the Poincaré disk from `init`.
pub fn solve(
    init: &Configuration,
    data: &DissimilarityData,
    model: &ErrorModel,
    params: &SolverParams,
) -> Result<RunResult> {
    if init.len() != data.n() {
        return Err(Error::SizeMismatch {
            expected: data.n(),
            actual: init.len(),
        });
    }
    let objective = CompiledObjective::new(data, model);
    let run = descend(Hyperbolic, &objective, init.complex(), params)?;
    Ok(run.map_config(Configuration::from_complex_unchecked))
}

/// Random generator for replicate `index` of a multi-start seeded with `seed`.
pub fn replicate_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// `n` points with uniform angle and Euclidean radius uniform on
/// `[0, radius]`, each at least `1e-6` (hyperbolic) from the others.
pub fn random_points<R: Rng + ?Sized>(n: usize, radius: f64, rng: &mut R) -> Vec<DiskPoint> {
    let mut points: Vec<DiskPoint> = Vec::with_capacity(n);
    while points.len() < n {
        let theta = rng.random::<f64>() * TAU;
        let rho = rng.random::<f64>() * radius;
        let p = DiskPoint::from_complex(Complex64::from_polar(rho, theta));
        if points
            .iter()
            .all(|&q| hyp_distance(p, q) > MIN_INIT_SEPARATION)
        {
            points.push(p);
        }
    }
    points
}

/// Seeded random initial configuration of `n >= 1` points within Euclidean
/// radius [`INIT_RADIUS`].
pub fn random_configuration(n: usize, seed: u64) -> Result<Configuration> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Configuration::new(random_points(n, INIT_RADIUS, &mut rng))
}

/// All replicate runs plus the index of the best one.
#[derive(Clone, Debug)]
pub struct MultiStart<C = Configuration> {
    pub runs: Vec<RunResult<C>>,
    pub best: usize,
}

impl<C> MultiStart<C> {
    pub fn best_run(&self) -> &RunResult<C> {
        &self.runs[self.best]
    }

    pub fn best_error(&self) -> f64 {
        self.best_run().final_error
    }
}

/// Index of the smallest final error; ties go to the lowest index.
fn best_index<C>(runs: &[RunResult<C>]) -> usize {
    runs.iter()
        .enumerate()
        .min_by(|(i, a), (j, b)| a.final_error.total_cmp(&b.final_error).then(i.cmp(j)))
        .map(|(i, _)| i)
        .expect("at least one replicate")
}

pub(crate) fn multi_start_in<S: Space>(
    space: S,
    objective: &CompiledObjective,
    params: &SolverParams,
    replicates: usize,
    seed: u64,
) -> Result<MultiStart<Vec<Complex64>>> {
    if replicates == 0 {
        return Err(Error::InvalidParameter(
            "need at least one replicate".into(),
        ));
    }
    params.validate()?;
    let n = objective.n();
    let runs = (0..replicates)
        .into_par_iter()
        .map(|i| {
            let mut rng = replicate_rng(seed, i as u64);
            let init = random_points(n, INIT_RADIUS, &mut rng)
                .into_iter()
                .map(DiskPoint::to_complex)
                .collect();
            descend(space, objective, init, params)
        })
        .collect::<Result<Vec<_>>>()?;
    let best = best_index(&runs);
    Ok(MultiStart { runs, best })
}

/// Runs `replicates` descents from seeded random starts. Replicate `i`
/// draws its start from [`replicate_rng`]`(seed, i)`.
pub fn multi_start(
    data: &DissimilarityData,
    model: &ErrorModel,
    params: &SolverParams,
    replicates: usize,
    seed: u64,
) -> Result<MultiStart> {
    let objective = CompiledObjective::new(data, model);
    let ms = multi_start_in(Hyperbolic, &objective, params, replicates, seed)?;
    Ok(MultiStart {
        runs: ms
            .runs
            .into_iter()
            .map(|r| r.map_config(Configuration::from_complex_unchecked))
            .collect(),
        best: ms.best,
    })
}

/// Best multi-start result at one scaling factor.
#[derive(Clone, Debug)]
pub struct SweepPoint {
    pub scale: f64,
    pub best_error: f64,
    pub best: RunResult,
}

/// `steps` log-spaced values from `min` to `max` inclusive.
pub fn log_grid(min: f64, max: f64, steps: usize) -> Result<Vec<f64>> {
    if !(min > 0.0 && max >= min) || steps == 0 || (steps == 1 && max != min) {
        return Err(Error::InvalidParameter(format!(
            "invalid log grid [{min}, {max}] with {steps} steps"
        )));
    }
    if steps == 1 {
        return Ok(vec![min]);
    }
    let (lo, hi) = (min.ln(), max.ln());
    Ok((0..steps)
        .map(|i| {
            if i == 0 {
                min
            } else if i == steps - 1 {
                max
            } else {
                (lo + (hi - lo) * i as f64 / (steps - 1) as f64).exp()
            }
        })
        .collect())
}

/// Default sweep grid: 40 log-spaced scales over `[0.01, 10]`.
pub fn default_scale_grid() -> Vec<f64> {
    log_grid(1e-2, 10.0, 40).expect("valid grid")
}

/// Multi-start at each scaling factor in `grid`; every scale reuses `seed`.
/// Output is ordered by scale.
pub fn scale_sweep(
    data: &DissimilarityData,
    model_template: &ErrorModel,
    params: &SolverParams,
    grid: &[f64],
    replicates: usize,
    seed: u64,
) -> Result<Vec<SweepPoint>> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter("empty scale grid".into()));
    }
    let mut scales = grid.to_vec();
    scales.sort_by(f64::total_cmp);
    scales
        .into_iter()
        .map(|a| {
            let model = model_template.with_scale(a)?;
            let ms = multi_start(data, &model, params, replicates, seed)?;
            let best = ms.runs.into_iter().nth(ms.best).expect("best exists");
            Ok(SweepPoint {
                scale: a,
                best_error: best.final_error,
                best,
            })
        })
        .collect()
}

/// Sweep point with the smallest error (first on ties).
pub fn sweep_minimum(points: &[SweepPoint]) -> Option<&SweepPoint> {
    points.iter().reduce(|best, p| {
        if p.best_error < best.best_error {
            p
        } else {
            best
        }
    })
}
