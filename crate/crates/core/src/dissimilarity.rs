//! Target dissimilarities together with their weights and missing-value mask.

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;

/// Value stored in `delta` and `weights` for missing pairs. Never read by any
/// objective because the indicator masks it.
pub const MISSING_PLACEHOLDER: f64 = 1.0;

const SYMMETRY_TOLERANCE: f64 = 1e-9;

/// Symmetric dissimilarities `delta`, weights, and a 0/1 indicator of which
/// pairs are known.
#[derive(Clone, Debug, PartialEq)]
pub struct DissimilarityData {
    delta: SquareMatrix,
    weights: SquareMatrix,
    active: Vec<bool>,
}

impl DissimilarityData {
    /// Validates and builds a data set.
    ///
    /// Entries at inactive pairs are replaced by [`MISSING_PLACEHOLDER`]. Small
    /// asymmetries (below `1e-9`) are removed by copying the upper triangle.
    pub fn new(
        delta: SquareMatrix,
        weights: Option<SquareMatrix>,
        indicator: Option<Vec<bool>>,
    ) -> Result<Self> {
        let n = delta.n();
        if n < 2 {
            return Err(Error::InvalidData(format!(
                "need at least 2 objects, got {n}"
            )));
        }
        let weights = weights.unwrap_or_else(|| SquareMatrix::filled(n, 1.0));
        if weights.n() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                actual: weights.n(),
            });
        }
        let mut active = indicator.unwrap_or_else(|| (0..n * n).map(|i| i / n != i % n).collect());
        if active.len() != n * n {
            return Err(Error::SizeMismatch {
                expected: n * n,
                actual: active.len(),
            });
        }

        let mut out_delta = SquareMatrix::zeros(n);
        let mut out_weights = SquareMatrix::zeros(n);
        for j in 0..n {
            if delta.get(j, j) != 0.0 {
                return Err(Error::InvalidData(format!(
                    "diagonal entry ({j},{j}) is {} instead of 0",
                    delta.get(j, j)
                )));
            }
            active[j * n + j] = false;
            for k in j + 1..n {
                let on = active[j * n + k];
                if on != active[k * n + j] {
                    return Err(Error::InvalidData(format!(
                        "indicator is not symmetric at ({j},{k})"
                    )));
                }
                if !on {
                    out_delta.set_sym(j, k, MISSING_PLACEHOLDER);
                    out_weights.set_sym(j, k, MISSING_PLACEHOLDER);
                    continue;
                }
                let (d, dt) = (delta.get(j, k), delta.get(k, j));
                if !d.is_finite() || !dt.is_finite() {
                    return Err(Error::InvalidData(format!("entry ({j},{k}) is not finite")));
                }
                if (d - dt).abs() > SYMMETRY_TOLERANCE {
                    return Err(Error::InvalidData(format!(
                        "matrix is not symmetric at ({j},{k}): {d} vs {dt}"
                    )));
                }
                if d < 0.0 {
                    return Err(Error::InvalidData(format!(
                        "negative dissimilarity {d} at ({j},{k})"
                    )));
                }
                if d == 0.0 {
                    return Err(Error::InvalidData(format!(
                        "zero dissimilarity between distinct objects ({j},{k})"
                    )));
                }
                let (w, wt) = (weights.get(j, k), weights.get(k, j));
                if !(w >= 0.0) || !w.is_finite() || (w - wt).abs() > SYMMETRY_TOLERANCE {
                    return Err(Error::InvalidData(format!(
                        "weight at ({j},{k}) must be finite, nonnegative and symmetric"
                    )));
                }
                out_delta.set_sym(j, k, d);
                out_weights.set_sym(j, k, w);
            }
        }
        for j in 0..n {
            if !(0..n).any(|k| active[j * n + k]) {
                return Err(Error::InvalidData(format!(
                    "object {j} has no known dissimilarity"
                )));
            }
        }
        Ok(DissimilarityData {
            delta: out_delta,
            weights: out_weights,
            active,
        })
    }

    /// Fully observed data with unit weights.
    pub fn from_delta(delta: SquareMatrix) -> Result<Self> {
        Self::new(delta, None, None)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.delta.n()
    }

    #[inline]
    pub fn delta(&self, j: usize, k: usize) -> f64 {
        self.delta.get(j, k)
    }

    #[inline]
    pub fn weight(&self, j: usize, k: usize) -> f64 {
        self.weights.get(j, k)
    }

    #[inline]
    pub fn is_active(&self, j: usize, k: usize) -> bool {
        self.active[j * self.n() + k]
    }

    pub fn delta_matrix(&self) -> &SquareMatrix {
        &self.delta
    }

    pub fn weight_matrix(&self) -> &SquareMatrix {
        &self.weights
    }

    pub fn indicator(&self) -> &[bool] {
        &self.active
    }

    /// Number of known unordered pairs.
    pub fn active_pairs(&self) -> usize {
        self.active.iter().filter(|&&a| a).count() / 2
    }

    /// Returns a copy whose known dissimilarities are `f(j, k, delta_jk)`,
    /// evaluated on the upper triangle and mirrored.
    pub fn map_active(&self, mut f: impl FnMut(usize, usize, f64) -> f64) -> Result<Self> {
        let n = self.n();
        let mut delta = self.delta.clone();
        for j in 0..n {
            for k in j + 1..n {
                if self.is_active(j, k) {
                    delta.set_sym(j, k, f(j, k, self.delta(j, k)));
                }
            }
        }
        Self::new(delta, Some(self.weights.clone()), Some(self.active.clone()))
    }

    /// Copy with pair `(j, k)` marked missing.
    pub fn without_pair(&self, j: usize, k: usize) -> Result<Self> {
        let n = self.n();
        let mut active = self.active.clone();
        active[j * n + k] = false;
        active[k * n + j] = false;
        Self::new(self.delta.clone(), Some(self.weights.clone()), Some(active))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[f64]]) -> SquareMatrix {
        SquareMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn accepts_plain_matrix() {
        let d = DissimilarityData::from_delta(m(&[&[0.0, 1.0], &[1.0, 0.0]])).unwrap();
        assert_eq!(d.n(), 2);
        assert!(d.is_active(0, 1));
        assert!(!d.is_active(0, 0));
        assert_eq!(d.active_pairs(), 1);
    }

    #[test]
    fn rejects_bad_entries() {
        assert!(DissimilarityData::from_delta(m(&[&[1.0, 1.0], &[1.0, 0.0]])).is_err());
        assert!(DissimilarityData::from_delta(m(&[&[0.0, 1.0], &[1.1, 0.0]])).is_err());
        assert!(DissimilarityData::from_delta(m(&[&[0.0, -1.0], &[-1.0, 0.0]])).is_err());
        assert!(DissimilarityData::from_delta(m(&[&[0.0, 0.0], &[0.0, 0.0]])).is_err());
        assert!(DissimilarityData::from_delta(m(&[&[0.0]])).is_err());
    }

    #[test]
    fn isolated_object_rejected() {
        let delta = m(&[&[0.0, 1.0, 1.0], &[1.0, 0.0, 1.0], &[1.0, 1.0, 0.0]]);
        let mut ind = vec![false; 9];
        ind[1] = true;
        ind[3] = true;
        assert!(DissimilarityData::new(delta, None, Some(ind)).is_err());
    }

    #[test]
    fn missing_entries_get_placeholders() {
        let delta = m(&[&[0.0, 2.0, 7.0], &[2.0, 0.0, 3.0], &[7.0, 3.0, 0.0]]);
        let d = DissimilarityData::from_delta(delta).unwrap();
        let d = d.without_pair(0, 2).unwrap();
        assert!(!d.is_active(2, 0));
        assert_eq!(d.delta(0, 2), MISSING_PLACEHOLDER);
        assert_eq!(d.weight(2, 0), MISSING_PLACEHOLDER);
    }
}
