use rand::Rng;

use crate::baseline::{euclid_distance, PlanePoint};
use crate::dissimilarity::DissimilarityData;
use crate::error::{Error, Result};
use crate::geometry::Configuration;
use crate::matrix::SquareMatrix;
use crate::objective::distance_matrix;
use crate::solver::{random_points, replicate_rng};

/// Radius bound of sampled disk points (Euclidean modulus).
pub const DISK_SAMPLE_RADIUS: f64 = 0.9;

const POINT_STREAM: u64 = 0;
const NOISE_STREAM: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SyntheticKind {
    /// Uniform on the unit square.
    EuclideanPlane,
    /// Uniform on a sphere; great-circle distances.
    Sphere,
    /// Poincaré disk points; hyperbolic distances.
    HyperbolicDisk,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SyntheticSpec {
    pub kind: SyntheticKind,
    pub n: usize,
    /// Relative noise level `e_m` in `[0, 1)`.
    pub noise: f64,
    pub seed: u64,
    pub sphere_radius: f64,
}

impl SyntheticSpec {
    pub fn new(kind: SyntheticKind, n: usize, seed: u64) -> Self {
        SyntheticSpec {
            kind,
            n,
            noise: 0.0,
            seed,
            sphere_radius: 1.0,
        }
    }

    pub fn with_noise(mut self, e_m: f64) -> Self {
        self.noise = e_m;
        self
    }
}

/// The sampled points a synthetic data set was built from.
#[derive(Clone, Debug, PartialEq)]
pub enum GeneratorPoints {
    Plane(Vec<PlanePoint>),
    Sphere(Vec<[f64; 3]>),
    Disk(Configuration),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SyntheticSet {
    pub data: DissimilarityData,
    pub points: GeneratorPoints,
}

fn check_noise(e_m: f64) -> Result<()> {
    if !(0.0..1.0).contains(&e_m) {
        return Err(Error::InvalidParameter(format!(
            "noise level must lie in [0, 1), got {e_m}"
        )));
    }
    Ok(())
}

/// Uniform point on the sphere of radius `rho` (Marsaglia's method).
fn sphere_point<R: Rng + ?Sized>(rho: f64, rng: &mut R) -> [f64; 3] {
    loop {
        let u = rng.random_range(-1.0..1.0);
        let v = rng.random_range(-1.0..1.0);
        let s: f64 = u * u + v * v;
        if s < 1.0 {
            let f = 2.0 * (1.0 - s).sqrt();
            return [rho * u * f, rho * v * f, rho * (1.0 - 2.0 * s)];
        }
    }
}

/// Great-circle distance between two points on a sphere of radius `rho`.
pub fn sphere_distance(a: [f64; 3], b: [f64; 3], rho: f64) -> f64 {
    let dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let cross = [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ];
    let cross_norm = (cross[0] * cross[0] + cross[1] * cross[1] + cross[2] * cross[2]).sqrt();
    rho * cross_norm.atan2(dot)
}

/// Samples `spec.n` points on the chosen surface and returns their geodesic
/// distances as fully observed, unit-weight dissimilarities (noise applied
/// when `spec.noise > 0`).
pub fn generate_synthetic(spec: &SyntheticSpec) -> Result<SyntheticSet> {
    check_noise(spec.noise)?;
    if spec.n < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 points, got {}",
            spec.n
        )));
    }
    let n = spec.n;
    let mut rng = replicate_rng(spec.seed, POINT_STREAM);
    let (delta, points) = match spec.kind {
        SyntheticKind::EuclideanPlane => {
            let pts: Vec<PlanePoint> = (0..n)
                .map(|_| PlanePoint::new(rng.random(), rng.random()))
                .collect();
            let delta = SquareMatrix::from_fn(n, |j, k| euclid_distance(pts[j], pts[k]));
            (delta, GeneratorPoints::Plane(pts))
        }
        SyntheticKind::Sphere => {
            let rho = spec.sphere_radius;
            if !(rho > 0.0) || !rho.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "sphere radius must be positive, got {rho}"
                )));
            }
            let pts: Vec<[f64; 3]> = (0..n).map(|_| sphere_point(rho, &mut rng)).collect();
            let delta = SquareMatrix::from_fn(n, |j, k| {
                if j == k {
                    0.0
                } else {
                    sphere_distance(pts[j], pts[k], rho)
                }
            });
            (delta, GeneratorPoints::Sphere(pts))
        }
        SyntheticKind::HyperbolicDisk => {
            let cfg = Configuration::new(random_points(n, DISK_SAMPLE_RADIUS, &mut rng))?;
            (distance_matrix(&cfg), GeneratorPoints::Disk(cfg))
        }
    };
    let data = DissimilarityData::from_delta(delta)?;
    let data = if spec.noise > 0.0 {
        add_noise(&data, spec.noise, spec.seed)?
    } else {
        data
    };
    Ok(SyntheticSet { data, points })
}

/// Replaces every known `delta_jk` by a uniform draw from
/// `[(1 - e_m) delta_jk, (1 + e_m) delta_jk]`, keeping symmetry.
pub fn add_noise(data: &DissimilarityData, e_m: f64, seed: u64) -> Result<DissimilarityData> {
    check_noise(e_m)?;
    if e_m == 0.0 {
        return Ok(data.clone());
    }
    let mut rng = replicate_rng(seed, NOISE_STREAM);
    data.map_active(|_, _, d| {
        let lo = (1.0 - e_m) * d;
        let hi = (1.0 + e_m) * d;
        rng.random_range(lo..=hi)
    })
}

/// Euclidean distances between feature rows.
///
/// Identical rows would give a zero dissimilarity between distinct objects;
/// such pairs are marked missing instead.
pub fn euclidean_dissimilarity(rows: &[Vec<f64>]) -> Result<DissimilarityData> {
    let n = rows.len();
    let dim = rows.first().map_or(0, Vec::len);
    if let Some(j) = rows.iter().position(|r| r.len() != dim) {
        return Err(Error::InvalidData(format!(
            "row {j} has {} features, expected {dim}",
            rows[j].len()
        )));
    }
    let delta = SquareMatrix::from_fn(n, |j, k| {
        rows[j]
            .iter()
            .zip(&rows[k])
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    });
    let indicator = (0..n * n)
        .map(|i| i / n != i % n && delta.get(i / n, i % n) > 0.0)
        .collect();
    DissimilarityData::new(delta, None, Some(indicator))
}
