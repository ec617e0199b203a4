//! Poincaré disk primitives.
//!
//! Points of the hyperbolic plane are complex numbers `z` with `|z| < 1`.
//! Distances follow `d(z1, z2) = 2 atanh(|z1 - z2| / |1 - z1 conj(z2)|)`;
//! the disk-preserving Möbius maps `(az + b) / (conj(b) z + conj(a))` are its
//! isometries, and moving a point along a hyperbolic line is itself such a map.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest modulus any stored point may have.
pub const MAX_MODULUS: f64 = 1.0 - 1e-12;

const MIN_DIRECTION_NORM: f64 = 1e-15;
const MIN_TRANSFORM_DET: f64 = 1e-15;
/// Largest double strictly below one; keeps `atanh` finite for points that
/// round onto each other's antipode near the boundary.
const MAX_ATANH_ARG: f64 = 1.0 - f64::EPSILON / 2.0;

/// Pulls `z` back inside the disk guard radius.
#[inline]
pub(crate) fn guard(z: Complex64) -> Complex64 {
    let m = z.norm();
    if m > MAX_MODULUS {
        // The rescaled modulus may round a few ulps high.
        let mut w = z * (MAX_MODULUS / m);
        while w.norm() > MAX_MODULUS {
            w *= 1.0 - f64::EPSILON;
        }
        w
    } else {
        z
    }
}

/// A point of the Poincaré disk.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiskPoint(Complex64);

impl DiskPoint {
    pub const ORIGIN: DiskPoint = DiskPoint(Complex64 { re: 0.0, im: 0.0 });

    /// Builds a point, clamping its modulus to [`MAX_MODULUS`].
    ///
    /// Non-finite coordinates are not representable; use [`DiskPoint::try_new`]
    /// for untrusted input.
    pub fn new(re: f64, im: f64) -> Self {
        Self::from_complex(Complex64::new(re, im))
    }

    pub fn from_complex(z: Complex64) -> Self {
        DiskPoint(guard(z))
    }

    /// Strict constructor: rejects non-finite coordinates and `|z| >= 1`.
    pub fn try_new(re: f64, im: f64) -> Result<Self> {
        let z = Complex64::new(re, im);
        if !z.re.is_finite() || !z.im.is_finite() || z.norm() >= 1.0 {
            return Err(Error::InvalidParameter(format!(
                "point ({re}, {im}) is not inside the unit disk"
            )));
        }
        Ok(Self::from_complex(z))
    }

    #[inline]
    pub fn re(self) -> f64 {
        self.0.re
    }

    #[inline]
    pub fn im(self) -> f64 {
        self.0.im
    }

    #[inline]
    pub fn to_complex(self) -> Complex64 {
        self.0
    }
}

/// A unit complex number giving the initial heading of a geodesic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Direction(Complex64);

impl Direction {
    pub fn new(v: Complex64) -> Result<Self> {
        let m = v.norm();
        if !(m >= MIN_DIRECTION_NORM) || !m.is_finite() {
            return Err(Error::ZeroDirection(m));
        }
        Ok(Direction(v / m))
    }

    /// Direction at angle `theta` (radians) from the positive real axis.
    pub fn from_angle(theta: f64) -> Self {
        Direction(Complex64::from_polar(1.0, theta))
    }

    #[inline]
    pub fn to_complex(self) -> Complex64 {
        self.0
    }
}

/// Disk-preserving Möbius transform `z -> (a z + b) / (conj(b) z + conj(a))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MobiusTransform {
    a: Complex64,
    b: Complex64,
}

impl MobiusTransform {
    /// Requires `|a|^2 - |b|^2 > 0`; a negative determinant maps the disk onto
    /// its exterior.
    pub fn new(a: Complex64, b: Complex64) -> Result<Self> {
        let det = a.norm_sqr() - b.norm_sqr();
        if !(det > MIN_TRANSFORM_DET) {
            return Err(Error::DegenerateTransform(det));
        }
        Ok(MobiusTransform { a, b })
    }

    pub fn identity() -> Self {
        MobiusTransform {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
        }
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn apply(&self, z: DiskPoint) -> DiskPoint {
        let z = z.0;
        DiskPoint::from_complex((self.a * z + self.b) / (self.b.conj() * z + self.a.conj()))
    }
}

/// Free-function form of [`MobiusTransform::apply`].
pub fn mobius_apply(t: &MobiusTransform, z: DiskPoint) -> DiskPoint {
    t.apply(z)
}

/// Hyperbolic distance between two disk points.
#[inline]
pub fn hyp_distance(z1: DiskPoint, z2: DiskPoint) -> f64 {
    hyp_distance_c(z1.0, z2.0)
}

#[inline]
pub(crate) fn hyp_distance_c(z1: Complex64, z2: Complex64) -> f64 {
    let num = (z1 - z2).norm_sqr();
    if num == 0.0 {
        return 0.0;
    }
    let den = (Complex64::new(1.0, 0.0) - z1 * z2.conj()).norm_sqr();
    2.0 * (num / den).sqrt().min(MAX_ATANH_ARG).atanh()
}

/// Gradient of `d(z1, z2)` with respect to the rectangular coordinates of
/// `z1`, packed as `d/dx + i d/dy`. Undefined when the points coincide.
#[inline]
pub(crate) fn hyp_distance_grad(z1: Complex64, z2: Complex64) -> Complex64 {
    // With A = |z1 - z2|^2, w = 1 - z1 conj(z2), B = |w|^2 and
    // B - A = (1 - |z1|^2)(1 - |z2|^2):
    //   grad d = (2 (z1 - z2) B + 2 A z2 w) / (sqrt(A B) (B - A))
    let diff = z1 - z2;
    let a = diff.norm_sqr();
    let w = Complex64::new(1.0, 0.0) - z1 * z2.conj();
    let b = w.norm_sqr();
    let gap = (1.0 - z1.norm_sqr()) * (1.0 - z2.norm_sqr());
    (diff * (2.0 * b) + z2 * w * (2.0 * a)) / ((a * b).sqrt() * gap)
}

/// Travels hyperbolic distance `s` from `z0` along the geodesic leaving `z0`
/// with heading `gamma`.
pub fn geodesic_move(z0: DiskPoint, gamma: Direction, s: f64) -> DiskPoint {
    debug_assert!(
        s >= 0.0 && s.is_finite(),
        "geodesic length must be finite and nonnegative"
    );
    let step = gamma.0 * (s / 2.0).tanh();
    let z = z0.0;
    DiskPoint::from_complex((step + z) / (z.conj() * step + 1.0))
}

/// Hyperbolic distance traveled by a point whose Möbius step is `r * g`
/// with `|g| = gmag`.
pub fn step_to_distance(r: f64, gmag: f64) -> Result<f64> {
    let x = r * gmag;
    if !(x < 1.0) {
        return Err(Error::StepDomain { r, gmag });
    }
    Ok(x.ln_1p() - (-x).ln_1p())
}

/// Largest step parameter keeping every point within hyperbolic distance
/// `s_max` of where it started, given the gradient's infinity norm.
pub fn max_step_param(g_inf: f64, s_max: f64) -> f64 {
    (s_max / 2.0).tanh() / g_inf
}

/// An ordered set of `n >= 1` disk points.
#[derive(Clone, Debug, PartialEq)]
pub struct Configuration {
    points: Vec<DiskPoint>,
}

impl Configuration {
    pub fn new(points: Vec<DiskPoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidParameter(
                "a configuration needs at least one point".into(),
            ));
        }
        Ok(Configuration { points })
    }

    pub(crate) fn from_complex_unchecked(zs: Vec<Complex64>) -> Self {
        Configuration {
            points: zs.into_iter().map(DiskPoint::from_complex).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[DiskPoint] {
        &self.points
    }

    pub fn iter(&self) -> impl Iterator<Item = DiskPoint> + '_ {
        self.points.iter().copied()
    }

    pub(crate) fn complex(&self) -> Vec<Complex64> {
        self.points.iter().map(|p| p.0).collect()
    }

    /// Image of every point under `t`.
    pub fn transform(&self, t: &MobiusTransform) -> Configuration {
        Configuration {
            points: self.points.iter().map(|&p| t.apply(p)).collect(),
        }
    }
}

impl std::ops::Index<usize> for Configuration {
    type Output = DiskPoint;

    fn index(&self, i: usize) -> &DiskPoint {
        &self.points[i]
    }
}
