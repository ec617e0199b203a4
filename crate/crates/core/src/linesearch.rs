//! Binary line search along the steepest-descent geodesics.
//!
//! The error along the search path, `q(r)`, is compared against the roof
//! `lambda(r) = q(0) + p q'(0) r`. Starting from a guess `r0` the step is
//! doubled while it stays acceptable, then halved until it is acceptable
//! again, so every probe is `r0 * 2^k` and the returned step `r` is
//! acceptable while `2r` is not.

use num_complex::Complex64;

use crate::dissimilarity::DissimilarityData;
use crate::error::{Error, Result};
use crate::geometry::Configuration;
use crate::objective::{CompiledObjective, ErrorModel, Gradient};
use crate::space::{Hyperbolic, Space};

/// Steps below this are treated as a failed search.
pub const STEP_FLOOR: f64 = 1e-30;

/// Probe budget for a single search; far above what doubling/halving between
/// `STEP_FLOOR` and any finite window can need.
const MAX_PROBES: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineSearchParams {
    /// Fraction of the initial slope used by the roof, in `(0, 1)`.
    pub p: f64,
    /// First step guess.
    pub r0: f64,
}

impl Default for LineSearchParams {
    fn default() -> Self {
        LineSearchParams { p: 0.1, r0: 1.0 }
    }
}

impl LineSearchParams {
    pub fn new(p: f64, r0: f64) -> Result<Self> {
        let params = LineSearchParams { p, r0 };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p > 0.0 && self.p < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "roof slope fraction p must lie in (0, 1), got {}",
                self.p
            )));
        }
        if !(self.r0 > 0.0) || !self.r0.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "initial step r0 must be positive, got {}",
                self.r0
            )));
        }
        Ok(())
    }
}

/// `q0 + p * qprime0 * r`.
#[inline]
pub fn roof_value(q0: f64, qprime0: f64, p: f64, r: f64) -> f64 {
    q0 + p * qprime0 * r
}

/// Result of a successful search.
#[derive(Clone, Debug, PartialEq)]
pub struct LineSearchOutcome {
    pub step: f64,
    /// `q(step)`.
    pub value: f64,
    /// Every distinct step at which `q` was evaluated, in probe order.
    pub probes: Vec<f64>,
}

/// A one-dimensional section of the objective, parametrized by the step.
pub trait SearchPath {
    /// `q(r)` for `0 <= r < self.domain()`.
    fn value(&self, r: f64) -> Result<f64>;
    /// `q'(0)`.
    fn initial_slope(&self) -> f64;
    /// `q(0)`.
    fn initial_value(&self) -> f64;
    /// Exclusive upper bound on steps where `q` is defined.
    fn domain(&self) -> f64 {
        f64::INFINITY
    }
}

/// Runs the expansion/reduction search on `path` with window `r_max`.
///
/// Fails with [`Error::StationaryLineSearch`] once the step falls below
/// [`STEP_FLOOR`] without meeting the decrease condition.
pub fn binary_line_search<P: SearchPath + ?Sized>(
    path: &P,
    params: &LineSearchParams,
    r_max: f64,
) -> Result<LineSearchOutcome> {
    params.validate()?;
    let q0 = path.initial_value();
    let slope = path.initial_slope();
    let limit = r_max.min(path.domain());
    let mut probes: Vec<(f64, f64)> = Vec::new();

    let mut acceptable = |r: f64| -> Result<bool> {
        if !(r < limit) {
            return Ok(false);
        }
        let q = match probes.iter().find(|(x, _)| *x == r) {
            Some(&(_, q)) => q,
            None => {
                if probes.len() >= MAX_PROBES {
                    return Err(Error::StationaryLineSearch { last_step: r });
                }
                let q = path.value(r)?;
                probes.push((r, q));
                q
            }
        };
        Ok(q < roof_value(q0, slope, params.p, r))
    };

    let mut r = params.r0;
    while acceptable(r)? {
        r *= 2.0;
    }
    while !acceptable(r)? {
        r /= 2.0;
        if r < STEP_FLOOR {
            return Err(Error::StationaryLineSearch { last_step: r });
        }
    }

    let value = probes
        .iter()
        .find(|(x, _)| *x == r)
        .map(|&(_, q)| q)
        .expect("accepted step was probed");
    debug_assert!(
        contract_holds(path, params.p, q0, slope, limit, r),
        "line search returned r = {r} violating the acceptance contract (window {r_max})"
    );
    Ok(LineSearchOutcome {
        step: r,
        value,
        probes: probes.into_iter().map(|(x, _)| x).collect(),
    })
}

/// Whether [`binary_line_search`] re-verifies its result (debug builds).
pub const fn contract_checks_enabled() -> bool {
    cfg!(debug_assertions)
}

/// Independent re-check: `r` is acceptable and `2r` is not.
fn contract_holds<P: SearchPath + ?Sized>(
    path: &P,
    p: f64,
    q0: f64,
    slope: f64,
    limit: f64,
    r: f64,
) -> bool {
    let ok = |x: f64| x < limit && path.value(x).is_ok_and(|q| q < roof_value(q0, slope, p, x));
    r > 0.0 && ok(r) && !ok(2.0 * r)
}

/// The error along a descent path `r -> z - r g` (in the sense of the
/// space's step) from a fixed base configuration.
pub(crate) struct DescentPath<'a, S: Space> {
    pub(crate) space: S,
    pub(crate) objective: &'a CompiledObjective,
    pub(crate) base: &'a [Complex64],
    pub(crate) g: &'a [Complex64],
    pub(crate) g_inf: f64,
    pub(crate) q0: f64,
    pub(crate) slope0: f64,
}

impl<'a, S: Space> DescentPath<'a, S> {
    /// `q0` must be the objective at `base`.
    pub(crate) fn new(
        space: S,
        objective: &'a CompiledObjective,
        base: &'a [Complex64],
        g: &'a [Complex64],
        q0: f64,
    ) -> Self {
        DescentPath {
            space,
            objective,
            base,
            g,
            g_inf: g.iter().map(|v| v.norm()).fold(0.0, f64::max),
            q0,
            slope0: space.initial_slope(base, g),
        }
    }

    pub(crate) fn moved(&self, r: f64) -> Vec<Complex64> {
        self.base
            .iter()
            .zip(self.g)
            .map(|(&z, &gj)| self.space.step(z, gj, r))
            .collect()
    }
}

impl<S: Space> SearchPath for DescentPath<'_, S> {
    fn value(&self, r: f64) -> Result<f64> {
        if !(r.abs() < self.domain()) {
            return Err(Error::StepDomain {
                r,
                gmag: self.g_inf,
            });
        }
        Ok(self.objective.value(self.space, &self.moved(r)))
    }

    fn initial_slope(&self) -> f64 {
        self.slope0
    }

    fn initial_value(&self) -> f64 {
        self.q0
    }

    fn domain(&self) -> f64 {
        self.space.domain(self.g_inf)
    }
}

/// The embedding error along the Möbius steps
/// `M_j(r) = (z_j - r g_j) / (1 - r g_j conj(z_j))` of a disk configuration.
#[derive(Clone, Debug)]
pub struct LineProbe {
    base: Vec<Complex64>,
    g: Vec<Complex64>,
    objective: CompiledObjective,
    q0: f64,
}

impl LineProbe {
    pub fn new(
        base: &Configuration,
        g: &Gradient,
        data: &DissimilarityData,
        model: &ErrorModel,
    ) -> Result<Self> {
        if base.len() != data.n() || g.len() != data.n() {
            return Err(Error::SizeMismatch {
                expected: data.n(),
                actual: if base.len() != data.n() {
                    base.len()
                } else {
                    g.len()
                },
            });
        }
        if !(g.inf_norm() > 0.0) {
            return Err(Error::InvalidParameter(
                "line search needs a nonzero gradient".into(),
            ));
        }
        let objective = CompiledObjective::new(data, model);
        let base = base.complex();
        let q0 = objective.value(Hyperbolic, &base);
        Ok(LineProbe {
            base,
            g: g.components().to_vec(),
            objective,
            q0,
        })
    }

    fn path(&self) -> DescentPath<'_, Hyperbolic> {
        DescentPath::new(Hyperbolic, &self.objective, &self.base, &self.g, self.q0)
    }

    pub fn g_inf(&self) -> f64 {
        self.path().g_inf
    }

    /// Configuration reached with step `r`.
    pub fn configuration_at(&self, r: f64) -> Result<Configuration> {
        let path = self.path();
        if !(r.abs() < path.domain()) {
            return Err(Error::StepDomain {
                r,
                gmag: path.g_inf,
            });
        }
        Ok(Configuration::from_complex_unchecked(path.moved(r)))
    }

    /// `q(r)`. Negative `r` steps along `+g`.
    pub fn q_eval(&self, r: f64) -> Result<f64> {
        self.path().value(r)
    }

    /// `q'(r)`, using the gradient at the moved configuration and
    /// `M'_j(r) = g_j (|z_j|^2 - 1) / (1 - r g_j conj(z_j))^2`.
    pub fn q_slope(&self, r: f64) -> Result<f64> {
        let path = self.path();
        if !(r.abs() < path.domain()) {
            return Err(Error::StepDomain {
                r,
                gmag: path.g_inf,
            });
        }
        let (_, grad) = self
            .objective
            .value_and_gradient(Hyperbolic, &path.moved(r))?;
        Ok(self
            .base
            .iter()
            .zip(&self.g)
            .zip(&grad)
            .map(|((&z, &gj), &ej)| {
                let den = Complex64::new(1.0, 0.0) - gj * z.conj() * r;
                let m = gj * (z.norm_sqr() - 1.0) / (den * den);
                m.re * ej.re + m.im * ej.im
            })
            .sum())
    }
}

impl SearchPath for LineProbe {
    fn value(&self, r: f64) -> Result<f64> {
        self.q_eval(r)
    }

    fn initial_slope(&self) -> f64 {
        self.path().slope0
    }

    fn initial_value(&self) -> f64 {
        self.q0
    }

    fn domain(&self) -> f64 {
        self.path().domain()
    }
}

/// Line search along the hyperbolic descent path of `probe`.
pub fn hyp_line_search(
    probe: &LineProbe,
    params: &LineSearchParams,
    r_max: f64,
) -> Result<LineSearchOutcome> {
    binary_line_search(probe, params, r_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::cell::Cell;

    /// A scalar test function `q` with a known slope at zero.
    struct Scalar<F: Fn(f64) -> f64> {
        f: F,
        slope: f64,
        calls: Cell<usize>,
    }

    impl<F: Fn(f64) -> f64> SearchPath for Scalar<F> {
        fn value(&self, r: f64) -> Result<f64> {
            self.calls.set(self.calls.get() + 1);
            Ok((self.f)(r))
        }
        fn initial_slope(&self) -> f64 {
            self.slope
        }
        fn initial_value(&self) -> f64 {
            (self.f)(0.0)
        }
    }

    fn scalar<F: Fn(f64) -> f64>(f: F, slope: f64) -> Scalar<F> {
        Scalar {
            f,
            slope,
            calls: Cell::new(0),
        }
    }

    #[test]
    fn roof_examples() {
        assert_eq!(roof_value(1.0, -2.0, 0.1, 0.0), 1.0);
        assert_abs_diff_eq!(roof_value(1.0, -2.0, 0.1, 2.0), 0.6, epsilon = 1e-15);
        for r in [0.1, 1.0, 7.0] {
            assert!(roof_value(1.0, -2.0, 0.1, r) > 1.0 - 2.0 * r);
        }
    }

    #[test]
    fn quadratic_hand_trace() {
        // q(r) = (r - 1)^2: q(1) = 0 < 0.8 accepted, q(2) = 1 > 0.6 rejected.
        let path = scalar(|r| (r - 1.0) * (r - 1.0), -2.0);
        let params = LineSearchParams::new(0.1, 1.0).unwrap();
        let out = binary_line_search(&path, &params, 4.0).unwrap();
        assert_eq!(out.step, 1.0);
        assert_eq!(out.value, 0.0);
        assert_eq!(out.probes, vec![1.0, 2.0]);
    }

    #[test]
    fn monotone_path_stops_at_window() {
        // Always acceptable below the window: expansion runs into r_max.
        let path = scalar(|r| 1.0 - r, -1.0);
        let params = LineSearchParams::new(0.5, 0.25).unwrap();
        let out = binary_line_search(&path, &params, 3.0).unwrap();
        assert_eq!(out.step, 2.0);
        assert_eq!(out.probes, vec![0.25, 0.5, 1.0, 2.0]);
    }

    #[test]
    fn reduction_from_oversized_guess() {
        let path = scalar(|r| (r - 1.0) * (r - 1.0), -2.0);
        let params = LineSearchParams::new(0.1, 64.0).unwrap();
        let out = binary_line_search(&path, &params, 100.0).unwrap();
        assert_eq!(out.step, 1.0);
        for p in &out.probes {
            assert_eq!(p.log2().fract(), 0.0);
        }
    }

    #[test]
    fn ties_reject() {
        // q equals the roof exactly everywhere: never acceptable.
        let path = scalar(|r| 1.0 - 0.5 * r, -5.0);
        let params = LineSearchParams::new(0.1, 1.0).unwrap();
        let r = binary_line_search(&path, &params, 10.0);
        assert!(matches!(r, Err(Error::StationaryLineSearch { .. })));
    }

    #[test]
    fn stationary_path_fails_below_floor() {
        let path = scalar(|_| 1.0, -1.0);
        let r = binary_line_search(&path, &LineSearchParams::default(), 10.0);
        assert!(matches!(r, Err(Error::StationaryLineSearch { .. })));
        assert!(path.calls.get() <= 200);
    }

    #[test]
    fn params_validated() {
        assert!(LineSearchParams::new(0.0, 1.0).is_err());
        assert!(LineSearchParams::new(1.0, 1.0).is_err());
        assert!(LineSearchParams::new(0.5, 0.0).is_err());
    }
}
