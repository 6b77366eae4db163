//! Exact Gaussian-process regression with a squared-exponential kernel
//! (signal variance 1), plus an incremental variant for sequential design.

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};

use super::EvalError;

/// Jitter added to the diagonal, in order, until the Cholesky factorization
/// succeeds.
pub const JITTER_LADDER: [f64; 6] = [0.0, 1e-10, 1e-9, 1e-8, 1e-7, 1e-6];

#[derive(Debug, Clone, PartialEq)]
pub struct GpPrediction {
    pub means: Vec<f64>,
    pub variances: Vec<f64>,
}

pub(crate) fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// `exp(-|a - b|^2 / (2 l^2))`
pub fn se_kernel(a: &[f64], b: &[f64], lengthscale: f64) -> f64 {
    (-sq_dist(a, b) / (2.0 * lengthscale * lengthscale)).exp()
}

fn check_hyper(lengthscale: f64, noise: f64) -> Result<(), EvalError> {
    if !(lengthscale > 0.0 && lengthscale.is_finite()) || !(noise > 0.0 && noise.is_finite()) {
        return Err(EvalError::InvalidConfig(format!(
            "lengthscale ({lengthscale}) and noise ({noise}) must be positive"
        )));
    }
    Ok(())
}

fn cholesky_with_jitter(k: &DMatrix<f64>) -> Result<Cholesky<f64, Dyn>, EvalError> {
    for jitter in JITTER_LADDER {
        let mut m = k.clone();
        for i in 0..m.nrows() {
            m[(i, i)] += jitter;
        }
        if let Some(c) = Cholesky::new(m) {
            return Ok(c);
        }
    }
    Err(EvalError::Numeric("kernel matrix is not positive definite after maximum jitter".into()))
}

/// Posterior mean and variance of the latent function at `xq`.
pub fn gp_fit_predict(
    x: &[Vec<f64>],
    y: &[f64],
    xq: &[Vec<f64>],
    lengthscale: f64,
    noise: f64,
) -> Result<GpPrediction, EvalError> {
    check_hyper(lengthscale, noise)?;
    if x.is_empty() {
        return Err(EvalError::Degenerate("no training points".into()));
    }
    if x.len() != y.len() {
        return Err(EvalError::LengthMismatch(x.len(), y.len()));
    }
    let n = x.len();
    let k = DMatrix::from_fn(n, n, |i, j| se_kernel(&x[i], &x[j], lengthscale) + if i == j { noise } else { 0.0 });
    let chol = cholesky_with_jitter(&k)?;
    let alpha = chol.solve(&DVector::from_column_slice(y));
    let mut means = Vec::with_capacity(xq.len());
    let mut variances = Vec::with_capacity(xq.len());
    for q in xq {
        let kq = DVector::from_fn(n, |i, _| se_kernel(&x[i], q, lengthscale));
        means.push(kq.dot(&alpha));
        let v = chol.l().solve_lower_triangular(&kq).ok_or_else(|| EvalError::Numeric("singular factor".into()))?;
        variances.push((1.0 - v.norm_squared()).max(0.0));
    }
    Ok(GpPrediction { means, variances })
}

/// GP over a fixed candidate pool where observations arrive one at a time.
///
/// Keeps the Cholesky factor `L` of the observed kernel matrix and, for every
/// candidate `c`, the vector `L^-1 k(X, c)`. Adding an observation extends
/// each of these by one entry, so a round costs `O(n)` per candidate instead
/// of a full refit.
#[derive(Debug, Clone)]
pub struct IncrementalGp<'a> {
    pool: &'a [Vec<f64>],
    lengthscale: f64,
    noise: f64,
    observed: Vec<usize>,
    /// Rows of `L`, row `i` has length `i + 1`.
    l_rows: Vec<Vec<f64>>,
    /// `L^-1 k(X, c)` per candidate.
    v: Vec<Vec<f64>>,
}

impl<'a> IncrementalGp<'a> {
    pub fn new(pool: &'a [Vec<f64>], lengthscale: f64, noise: f64) -> Result<Self, EvalError> {
        check_hyper(lengthscale, noise)?;
        Ok(Self {
            pool,
            lengthscale,
            noise,
            observed: Vec::new(),
            l_rows: Vec::new(),
            v: vec![Vec::new(); pool.len()],
        })
    }

    pub fn observed(&self) -> &[usize] {
        &self.observed
    }

    /// Adds candidate `idx` to the training set.
    pub fn observe(&mut self, idx: usize) -> Result<(), EvalError> {
        let x_new = &self.pool[idx];
        // the new row of L is v[idx] followed by the diagonal entry
        let l_new = self.v[idx].clone();
        let mut diag_sq = 1.0 + self.noise - l_new.iter().map(|a| a * a).sum::<f64>();
        if diag_sq <= 0.0 {
            let jitter = JITTER_LADDER.iter().find(|&&j| diag_sq + j > 0.0);
            diag_sq += jitter.ok_or_else(|| EvalError::Numeric("incremental Cholesky lost definiteness".into()))?;
        }
        let d = diag_sq.sqrt();
        let (pool, ls) = (self.pool, self.lengthscale);
        for (c, vc) in self.v.iter_mut().enumerate() {
            let dot: f64 = vc.iter().zip(&l_new).map(|(a, b)| a * b).sum();
            let k = se_kernel(&pool[c], x_new, ls) + if c == idx { self.noise } else { 0.0 };
            vc.push((k - dot) / d);
        }
        let mut row = l_new;
        row.push(d);
        self.l_rows.push(row);
        self.observed.push(idx);
        Ok(())
    }

    /// Solves `L w = z` by forward substitution.
    fn forward(&self, z: &[f64]) -> Vec<f64> {
        let mut w = Vec::with_capacity(z.len());
        for (i, row) in self.l_rows.iter().enumerate() {
            let s: f64 = row[..i].iter().zip(&w).map(|(a, b)| a * b).sum();
            w.push((z[i] - s) / row[i]);
        }
        w
    }

    /// Posterior mean and variance at candidate `c` given targets `z` for
    /// the observed points, in observation order.
    pub fn predict_many(&self, z: &[f64], candidates: &[usize]) -> Result<GpPrediction, EvalError> {
        if z.len() != self.observed.len() {
            return Err(EvalError::LengthMismatch(z.len(), self.observed.len()));
        }
        let w = self.forward(z);
        let mut means = Vec::with_capacity(candidates.len());
        let mut variances = Vec::with_capacity(candidates.len());
        for &c in candidates {
            // v_c was built with the noise term on its own diagonal; recompute
            // the latent cross-covariance for observed candidates
            let vc = if self.observed.contains(&c) {
                self.latent_v(c)
            } else {
                self.v[c].clone()
            };
            means.push(vc.iter().zip(&w).map(|(a, b)| a * b).sum());
            variances.push((1.0 - vc.iter().map(|a| a * a).sum::<f64>()).max(0.0));
        }
        Ok(GpPrediction { means, variances })
    }

    fn latent_v(&self, c: usize) -> Vec<f64> {
        let k: Vec<f64> = self
            .observed
            .iter()
            .map(|&o| se_kernel(&self.pool[o], &self.pool[c], self.lengthscale))
            .collect();
        self.forward(&k)
    }
}
