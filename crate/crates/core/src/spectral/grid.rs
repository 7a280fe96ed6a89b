use std::f64::consts::PI;

use crate::{Error, Result};

/// Square periodic grid of `n × n` nodes on `[0, 2π)²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GridSpec {
    n: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X1,
    X2,
}

impl GridSpec {
    pub fn new(n: usize) -> Result<Self> {
        if n < 8 || !n.is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!(
                "n must be an even integer >= 8, got {n}"
            )));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Domain period along each axis.
    pub fn length(&self) -> f64 {
        2.0 * PI
    }

    /// Node spacing `2π/n`.
    pub fn spacing(&self) -> f64 {
        self.length() / self.n as f64
    }

    pub fn len(&self) -> usize {
        self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Signed wavenumber for storage index `i`.
    #[inline]
    pub fn wavenumber(&self, i: usize) -> i64 {
        if i <= self.n / 2 {
            i as i64
        } else {
            i as i64 - self.n as i64
        }
    }

    /// Storage index for signed wavenumber `k`, if it lies in `(-n/2, n/2]`.
    #[inline]
    pub fn index_of(&self, k: i64) -> Option<usize> {
        let half = (self.n / 2) as i64;
        if k > half || k <= -half {
            None
        } else if k >= 0 {
            Some(k as usize)
        } else {
            Some((k + self.n as i64) as usize)
        }
    }

    /// Flat index of the wavevector `(k1, k2)`.
    pub fn flat_index(&self, k1: i64, k2: i64) -> Option<usize> {
        Some(self.index_of(k1)? * self.n + self.index_of(k2)?)
    }

    /// Wavevector stored at flat index `idx`.
    #[inline]
    pub fn wavevector(&self, idx: usize) -> (i64, i64) {
        (self.wavenumber(idx / self.n), self.wavenumber(idx % self.n))
    }

    /// Flat index of `-k` for the wavevector stored at `idx`.
    #[inline]
    pub fn conjugate_index(&self, idx: usize) -> usize {
        let (i1, i2) = (idx / self.n, idx % self.n);
        ((self.n - i1) % self.n) * self.n + (self.n - i2) % self.n
    }

    /// Largest retained wavenumber under the two-thirds rule: the largest
    /// `k` with `3k < n`, so that quadratic products never alias back onto
    /// retained modes.
    pub fn dealias_kmax(&self) -> i64 {
        ((self.n - 1) / 3) as i64
    }

    /// Coordinates of node `(i1, i2)`.
    pub fn node(&self, i1: usize, i2: usize) -> (f64, f64) {
        let h = self.spacing();
        (h * i1 as f64, h * i2 as f64)
    }

    pub(crate) fn ensure_same(&self, other: &GridSpec) -> Result<()> {
        if self.n != other.n {
            return Err(Error::GridMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }
}
