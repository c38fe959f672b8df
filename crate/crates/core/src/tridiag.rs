//! Symmetric tridiagonal pencils `T - λW` (`W` positive diagonal) and
//! eigenvalue location by Sturm-count bisection.
//!
//! By Sylvester's law of inertia, the number of negative pivots in the
//! `LDLᵀ` factorisation of `T - λW` equals the number of eigenvalues of
//! `Tv = λWv` below `λ`.

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
    weight: Vec<f64>,
}

impl SymTridiagonal {
    /// Standard problem `Tv = λv`.
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        let weight = vec![1.0; diag.len()];
        Self::with_weight(diag, off, weight)
    }

    /// Generalised problem `Tv = λWv` with a positive diagonal `W`.
    pub fn with_weight(diag: Vec<f64>, off: Vec<f64>, weight: Vec<f64>) -> Result<Self> {
        let n = diag.len();
        if n == 0 || off.len() + 1 != n || weight.len() != n {
            return Err(Error::Config(format!(
                "tridiagonal shape mismatch: {n} diagonal, {} off-diagonal, {} weights",
                off.len(),
                weight.len()
            )));
        }
        if weight.iter().any(|w| !(*w > 0.0)) {
            return Err(Error::Config("pencil weights must be positive".into()));
        }
        Ok(Self { diag, off, weight })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of eigenvalues strictly below `lambda`.
    pub fn count_below(&self, lambda: f64) -> usize {
        let mut count = 0;
        let mut d = self.diag[0] - lambda * self.weight[0];
        if d < 0.0 {
            count += 1;
        }
        for i in 1..self.diag.len() {
            let pivot = if d == 0.0 {
                f64::EPSILON * self.off[i - 1].abs().max(f64::MIN_POSITIVE)
            } else {
                d
            };
            let e = self.off[i - 1];
            d = self.diag[i] - lambda * self.weight[i] - e * e / pivot;
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// `index`-th eigenvalue (0-based, ascending) inside `[lo, hi]`, to
    /// absolute tolerance `tol`.
    pub fn eigenvalue(&self, index: usize, lo: f64, hi: f64, tol: f64) -> Result<f64> {
        if self.count_below(lo) > index || self.count_below(hi) <= index {
            return Err(Error::BracketFailure(format!(
                "eigenvalue #{index} not inside [{lo}, {hi}]"
            )));
        }
        let (mut lo, mut hi) = (lo, hi);
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// All eigenvalues in `[lo, hi)`, ascending.
    pub fn eigenvalues_in(&self, lo: f64, hi: f64, tol: f64) -> Result<Vec<f64>> {
        let first = self.count_below(lo);
        let end = self.count_below(hi);
        (first..end).map(|k| self.eigenvalue(k, lo, hi, tol)).collect()
    }
}
