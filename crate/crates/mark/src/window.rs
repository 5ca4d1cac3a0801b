//! Interest windows: the range of challenge widths a knowledge seeker cares
//! about, from the interval of interest `ioi` (fine enough to act on) up to
//! the interval of fulfillment `iof` (coarse enough to be useless beyond).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance used when checking that a window bound meant as a column count
/// is in fact integral.
const INTEGRAL_TOL: f64 = 1e-9;

/// Width range `[ioi, iof]` over which knowledge metrics aggregate.
///
/// For discrete belief lines both bounds are column counts; for continuous
/// ones they are axis lengths. `ioi == iof` is allowed and degenerates every
/// aggregate to the single width `ioi` (the lock-and-key case: only one
/// resolution matters).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InterestWindow {
    ioi: f64,
    iof: f64,
}

impl InterestWindow {
    /// Build a window, requiring `0 < ioi <= iof` and finite bounds.
    pub fn new(ioi: f64, iof: f64) -> Result<Self> {
        if !ioi.is_finite() || !iof.is_finite() || ioi <= 0.0 || iof < ioi {
            return Err(Error::BadWindow { ioi, iof });
        }
        Ok(Self { ioi, iof })
    }

    /// The nominal window for an `n`-candidate line: every width from a
    /// single column up to the whole line. This is the default challenge
    /// and the one the normalized scale is anchored to.
    pub fn nominal(n: usize) -> Self {
        debug_assert!(n >= 1);
        Self {
            ioi: 1.0,
            iof: n as f64,
        }
    }

    /// Degenerate window containing exactly one width.
    pub fn single(width: f64) -> Result<Self> {
        Self::new(width, width)
    }

    pub fn ioi(&self) -> f64 {
        self.ioi
    }

    pub fn iof(&self) -> f64 {
        self.iof
    }

    /// Interpret the bounds as column counts for an `n`-candidate line.
    /// Both must be integral and satisfy `1 <= ioi <= iof <= n`.
    pub fn discrete_span(&self, n: usize) -> Result<(usize, usize)> {
        let err = || Error::BadWindow {
            ioi: self.ioi,
            iof: self.iof,
        };
        let as_count = |x: f64| -> Option<usize> {
            let r = x.round();
            if (x - r).abs() <= INTEGRAL_TOL && r >= 1.0 && r <= n as f64 {
                Some(r as usize)
            } else {
                None
            }
        };
        let ioi = as_count(self.ioi).ok_or_else(err)?;
        let iof = as_count(self.iof).ok_or_else(err)?;
        if ioi > iof {
            return Err(err());
        }
        Ok((ioi, iof))
    }

    /// Check the bounds against a continuous support of length `span`.
    pub fn axis_span(&self, span: f64) -> Result<(f64, f64)> {
        if self.iof > span * (1.0 + 1e-9) {
            return Err(Error::BadWindow {
                ioi: self.ioi,
                iof: self.iof,
            });
        }
        Ok((self.ioi, self.iof.min(span)))
    }
}
