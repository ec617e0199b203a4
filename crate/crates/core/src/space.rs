//! Target spaces the descent runs in: the Poincaré disk and, as a baseline,
//! the Euclidean plane. Points of both are stored as complex numbers.

use num_complex::Complex64;

use crate::geometry;

pub(crate) trait Space: Copy + Send + Sync {
    fn distance(self, a: Complex64, b: Complex64) -> f64;

    /// Gradient of `distance(a, b)` with respect to `a`, as `d/dx + i d/dy`.
    fn distance_grad(self, a: Complex64, b: Complex64) -> Complex64;

    /// Moves `z` by step parameter `r` in the direction `-g`.
    fn step(self, z: Complex64, g: Complex64, r: f64) -> Complex64;

    /// Slope at `r = 0` of the error along the step path.
    fn initial_slope(self, z: &[Complex64], g: &[Complex64]) -> f64;

    /// Largest step keeping every point within travel distance `s_max`.
    fn window(self, g_inf: f64, s_max: f64) -> f64;

    /// Exclusive bound on steps for which `step` is defined.
    fn domain(self, g_inf: f64) -> f64;
}

#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Hyperbolic;

impl Space for Hyperbolic {
    #[inline]
    fn distance(self, a: Complex64, b: Complex64) -> f64 {
        geometry::hyp_distance_c(a, b)
    }

    #[inline]
    fn distance_grad(self, a: Complex64, b: Complex64) -> Complex64 {
        geometry::hyp_distance_grad(a, b)
    }

    #[inline]
    fn step(self, z: Complex64, g: Complex64, r: f64) -> Complex64 {
        geometry::guard(mobius_step(z, g, r))
    }

    fn initial_slope(self, z: &[Complex64], g: &[Complex64]) -> f64 {
        // M'_j(0) = g_j (|z_j|^2 - 1)
        z.iter()
            .zip(g)
            .map(|(zj, gj)| gj.norm_sqr() * (zj.norm_sqr() - 1.0))
            .sum()
    }

    fn window(self, g_inf: f64, s_max: f64) -> f64 {
        geometry::max_step_param(g_inf, s_max)
    }

    fn domain(self, g_inf: f64) -> f64 {
        1.0 / g_inf
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Euclidean;

impl Space for Euclidean {
    #[inline]
    fn distance(self, a: Complex64, b: Complex64) -> f64 {
        (a - b).norm()
    }

    #[inline]
    fn distance_grad(self, a: Complex64, b: Complex64) -> Complex64 {
        let diff = a - b;
        diff / diff.norm()
    }

    #[inline]
    fn step(self, z: Complex64, g: Complex64, r: f64) -> Complex64 {
        z - g * r
    }

    fn initial_slope(self, _z: &[Complex64], g: &[Complex64]) -> f64 {
        -g.iter().map(|gj| gj.norm_sqr()).sum::<f64>()
    }

    fn window(self, g_inf: f64, s_max: f64) -> f64 {
        s_max / g_inf
    }

    fn domain(self, _g_inf: f64) -> f64 {
        f64::INFINITY
    }
}

/// `(z - r g) / (1 - r g conj(z))`: the Möbius step along the geodesic with
/// heading `-g`.
#[inline]
pub(crate) fn mobius_step(z: Complex64, g: Complex64, r: f64) -> Complex64 {
    let step = -g * r;
    (step + z) / (step * z.conj() + 1.0)
}
