//! Least-squares embedding errors and their gradients.
//!
//! Every objective is an instance of
//! `E = c * sum_{j<k} c_jk (d_jk - a delta_jk)^2` with pair coefficients
//! masked by the missing-value indicator:
//!
//! | objective | `c` | `c_jk` |
//! |-----------|-----|--------|
//! | ADS | 1 | `w_jk` |
//! | RDS | 1 | `w_jk / (a delta_jk)^2` |
//! | SAM | `1 / (a sum I_jk delta_jk)` | `w_jk / (a delta_jk)` |
//!
//! Gradients are returned in complex form, `dE/dx_j + i dE/dy_j`.

use num_complex::Complex64;

use crate::dissimilarity::DissimilarityData;
use crate::error::{Error, Result};
use crate::geometry::{self, Configuration};
use crate::matrix::SquareMatrix;
use crate::space::{mobius_step, Hyperbolic, Space};

/// Which least-squares error to minimize.
#[derive(Clone, Debug, PartialEq)]
pub enum Objective {
    /// Absolute differences squared.
    Ads,
    /// Relative differences squared.
    Rds,
    /// Sammon stress.
    Sam,
    /// Arbitrary `c` and per-pair `c_jk`.
    General { c: f64, coeffs: SquareMatrix },
}

impl Objective {
    pub fn name(&self) -> &'static str {
        match self {
            Objective::Ads => "ads",
            Objective::Rds => "rds",
            Objective::Sam => "sam",
            Objective::General { .. } => "general",
        }
    }
}

/// An objective together with the dissimilarity scaling factor `a`.
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorModel {
    pub objective: Objective,
    scale: f64,
    pub normalize_per_pair: bool,
}

impl ErrorModel {
    pub fn new(objective: Objective, scale: f64) -> Result<Self> {
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "scaling factor must be positive, got {scale}"
            )));
        }
        Ok(ErrorModel {
            objective,
            scale,
            normalize_per_pair: false,
        })
    }

    pub fn sammon() -> Self {
        Self::new(Objective::Sam, 1.0).expect("unit scale is valid")
    }

    pub fn normalized(mut self, on: bool) -> Self {
        self.normalize_per_pair = on;
        self
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn with_scale(&self, scale: f64) -> Result<Self> {
        let mut m = Self::new(self.objective.clone(), scale)?;
        m.normalize_per_pair = self.normalize_per_pair;
        Ok(m)
    }

    /// The `(c, c_jk)` of the general form equivalent to this model on `data`.
    /// Inactive pairs get `c_jk = 0`. Per-pair normalization is folded into `c`.
    pub fn to_general(&self, data: &DissimilarityData) -> (f64, SquareMatrix) {
        let n = data.n();
        let a = self.scale;
        let mut coeffs = SquareMatrix::zeros(n);
        let mut c = match &self.objective {
            Objective::Sam => {
                let mut total = 0.0;
                for j in 0..n {
                    for k in j + 1..n {
                        if data.is_active(j, k) {
                            total += data.delta(j, k);
                        }
                    }
                }
                1.0 / (a * total)
            }
            Objective::General { c, .. } => *c,
            Objective::Ads | Objective::Rds => 1.0,
        };
        for j in 0..n {
            for k in j + 1..n {
                if !data.is_active(j, k) {
                    continue;
                }
                let (w, t) = (data.weight(j, k), a * data.delta(j, k));
                let cjk = match &self.objective {
                    Objective::Ads => w,
                    Objective::Rds => w / (t * t),
                    Objective::Sam => w / t,
                    Objective::General { coeffs, .. } => coeffs.get(j, k),
                };
                coeffs.set_sym(j, k, cjk);
            }
        }
        if self.normalize_per_pair {
            c /= (n * (n - 1) / 2) as f64;
        }
        (c, coeffs)
    }
}

#[derive(Clone, Copy, Debug)]
struct PairTerm {
    j: usize,
    k: usize,
    coeff: f64,
    target: f64,
}

/// An objective bound to one data set: the active pairs with their
/// coefficients and scaled targets, in a fixed summation order.
#[derive(Clone, Debug)]
pub(crate) struct CompiledObjective {
    n: usize,
    prefactor: f64,
    terms: Vec<PairTerm>,
}

impl CompiledObjective {
    pub(crate) fn new(data: &DissimilarityData, model: &ErrorModel) -> Self {
        let (prefactor, coeffs) = model.to_general(data);
        let n = data.n();
        let mut terms = Vec::with_capacity(data.active_pairs());
        for j in 0..n {
            for k in j + 1..n {
                if data.is_active(j, k) {
                    terms.push(PairTerm {
                        j,
                        k,
                        coeff: coeffs.get(j, k),
                        target: model.scale() * data.delta(j, k),
                    });
                }
            }
        }
        CompiledObjective {
            n,
            prefactor,
            terms,
        }
    }

    pub(crate) fn n(&self) -> usize {
        self.n
    }

    pub(crate) fn value<S: Space>(&self, space: S, z: &[Complex64]) -> f64 {
        let sum: f64 = self
            .terms
            .iter()
            .map(|t| {
                let r = space.distance(z[t.j], z[t.k]) - t.target;
                t.coeff * r * r
            })
            .sum();
        self.prefactor * sum
    }

    /// Error and gradient in one pass.
    pub(crate) fn value_and_gradient<S: Space>(
        &self,
        space: S,
        z: &[Complex64],
    ) -> Result<(f64, Vec<Complex64>)> {
        let mut grad = vec![Complex64::new(0.0, 0.0); z.len()];
        let mut sum = 0.0;
        for t in &self.terms {
            let (zj, zk) = (z[t.j], z[t.k]);
            if zj == zk {
                return Err(Error::CoincidentPair(t.j, t.k));
            }
            let r = space.distance(zj, zk) - t.target;
            sum += t.coeff * r * r;
            let f = 2.0 * self.prefactor * t.coeff * r;
            grad[t.j] += space.distance_grad(zj, zk) * f;
            grad[t.k] += space.distance_grad(zk, zj) * f;
        }
        Ok((self.prefactor * sum, grad))
    }
}

/// Gradient of an embedding error, one complex component per point.
#[derive(Clone, Debug, PartialEq)]
pub struct Gradient(Vec<Complex64>);

impl Gradient {
    pub fn new(components: Vec<Complex64>) -> Self {
        Gradient(components)
    }

    pub fn components(&self) -> &[Complex64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `max_j |g_j|`.
    pub fn inf_norm(&self) -> f64 {
        self.0.iter().map(|g| g.norm()).fold(0.0, f64::max)
    }
}

fn check_size(config: &Configuration, data: &DissimilarityData) -> Result<()> {
    if config.len() != data.n() {
        return Err(Error::SizeMismatch {
            expected: data.n(),
            actual: config.len(),
        });
    }
    Ok(())
}

/// Pairwise hyperbolic distances of a configuration.
pub fn distance_matrix(config: &Configuration) -> SquareMatrix {
    let n = config.len();
    let mut d = SquareMatrix::zeros(n);
    for j in 0..n {
        for k in j + 1..n {
            d.set_sym(j, k, geometry::hyp_distance(config[j], config[k]));
        }
    }
    d
}

/// Embedding error of a disk configuration.
pub fn embedding_error(
    config: &Configuration,
    data: &DissimilarityData,
    model: &ErrorModel,
) -> Result<f64> {
    check_size(config, data)?;
    Ok(CompiledObjective::new(data, model).value(Hyperbolic, &config.complex()))
}

/// Analytic gradient of the embedding error of a disk configuration.
pub fn gradient(
    config: &Configuration,
    data: &DissimilarityData,
    model: &ErrorModel,
) -> Result<Gradient> {
    error_and_gradient(config, data, model).map(|(_, g)| g)
}

pub fn error_and_gradient(
    config: &Configuration,
    data: &DissimilarityData,
    model: &ErrorModel,
) -> Result<(f64, Gradient)> {
    check_size(config, data)?;
    let (e, g) =
        CompiledObjective::new(data, model).value_and_gradient(Hyperbolic, &config.complex())?;
    Ok((e, Gradient(g)))
}

/// Moves every point `z_j` to `(z_j - r g_j) / (1 - r g_j conj(z_j))`, i.e.
/// along the geodesic with heading `-g_j`.
pub fn apply_step(config: &Configuration, g: &Gradient, r: f64) -> Result<Configuration> {
    if g.len() != config.len() {
        return Err(Error::SizeMismatch {
            expected: config.len(),
            actual: g.len(),
        });
    }
    let g_inf = g.inf_norm();
    if !(r >= 0.0) || !(r * g_inf < 1.0) {
        return Err(Error::StepDomain { r, gmag: g_inf });
    }
    Ok(Configuration::from_complex_unchecked(
        config
            .iter()
            .zip(g.components())
            .map(|(z, &gj)| mobius_step(z.to_complex(), gj, r))
            .collect(),
    ))
}
