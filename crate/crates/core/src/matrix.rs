/// Dense row-major `n x n` matrix of reals.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(n: usize) -> Self {
        Self::filled(n, 0.0)
    }

    pub fn filled(n: usize, value: f64) -> Self {
        SquareMatrix {
            n,
            data: vec![value; n * n],
        }
    }

    /// Builds from rows; returns `None` unless every row has length `rows.len()`.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(SquareMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for j in 0..n {
            for k in 0..n {
                data.push(f(j, k));
            }
        }
        SquareMatrix { n, data }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, j: usize, k: usize) -> f64 {
        self.data[j * self.n + k]
    }

    #[inline]
    pub fn set(&mut self, j: usize, k: usize, v: f64) {
        self.data[j * self.n + k] = v;
    }

    /// Writes `v` at `(j, k)` and `(k, j)`.
    #[inline]
    pub fn set_sym(&mut self, j: usize, k: usize, v: f64) {
        self.set(j, k, v);
        self.set(k, j, v);
    }

    pub fn row(&self, j: usize) -> &[f64] {
        &self.data[j * self.n..(j + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks(self.n.max(1)).take(self.n)
    }

    /// Largest `|m[j][k] - m[k][j]|`.
    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for j in 0..self.n {
            for k in j + 1..self.n {
                worst = worst.max((self.get(j, k) - self.get(k, j)).abs());
            }
        }
        worst
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        SquareMatrix {
            n: self.n,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }
}
