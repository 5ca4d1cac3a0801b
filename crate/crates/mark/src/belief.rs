//! Belief states: how a knowledge seeker's current estimate is represented.
//!
//! A challenge is an arranged line of candidate answers. The seeker's state
//! is a probability per candidate (discrete) or a sampled probability
//! density over a bounded segment (continuous). Both forms are immutable
//! once built; every metric in this crate is a pure function over them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::trapezoid_uniform;

/// Tolerance for total probability mass at construction.
pub const MASS_TOL: f64 = 1e-9;

/// Tolerance for the trapezoid integral of a sampled density.
pub const DENSITY_TOL: f64 = 1e-6;

/// How the candidates of a discrete line are arranged.
///
/// Window metrics read contiguous runs of candidates, so the arrangement is
/// part of the input, never an implementation detail. `Listed` keeps the
/// order the caller supplied, `ByProbability` canonicalizes to descending
/// probability at construction, and `Composite` marks a line arranged by
/// [`crate::ordering::apply_ordering`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderingMode {
    Listed,
    ByProbability,
    Composite,
}

/// Probability line over a finite arranged list of candidates.
///
/// Deserializing runs the same validation as [`DiscreteBelief::new`], so
/// a belief read back from JSON holds the same invariants as one built in
/// code.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDiscreteBelief")]
pub struct DiscreteBelief {
    probs: Vec<f64>,
    labels: Option<Vec<String>>,
    ordering: OrderingMode,
}

#[derive(Deserialize)]
struct RawDiscreteBelief {
    probs: Vec<f64>,
    #[serde(default)]
    labels: Option<Vec<String>>,
    ordering: OrderingMode,
}

impl TryFrom<RawDiscreteBelief> for DiscreteBelief {
    type Error = Error;

    fn try_from(raw: RawDiscreteBelief) -> Result<Self> {
        Self::build(raw.probs, raw.labels, raw.ordering, false)
    }
}

impl DiscreteBelief {
    /// Build a belief from raw probabilities.
    ///
    /// Requires at least two candidates and nonnegative finite entries.
    /// With `normalize` the entries are scaled to unit mass; without it the
    /// sum must already be 1 within [`MASS_TOL`]. `ByProbability` sorts the
    /// line into descending order (stable, so equal probabilities keep
    /// their supplied order).
    pub fn new(probs: Vec<f64>, ordering: OrderingMode, normalize: bool) -> Result<Self> {
        Self::build(probs, None, ordering, normalize)
    }

    /// Same as [`DiscreteBelief::new`] with a label per candidate.
    /// Labels must be unique and are carried through any reordering.
    pub fn with_labels(
        labels: Vec<String>,
        probs: Vec<f64>,
        ordering: OrderingMode,
        normalize: bool,
    ) -> Result<Self> {
        Self::build(probs, Some(labels), ordering, normalize)
    }

    fn build(
        mut probs: Vec<f64>,
        labels: Option<Vec<String>>,
        ordering: OrderingMode,
        normalize: bool,
    ) -> Result<Self> {
        if probs.len() < 2 {
            return Err(Error::EmptyOrSingleton(probs.len()));
        }
        for (index, &p) in probs.iter().enumerate() {
            if !p.is_finite() {
                return Err(Error::NonFinite { index });
            }
            if p < 0.0 {
                return Err(Error::NegativeProbability { index, value: p });
            }
        }
        if let Some(ref l) = labels {
            if l.len() != probs.len() {
                return Err(Error::LabelMismatch(format!(
                    "{} labels for {} probabilities",
                    l.len(),
                    probs.len()
                )));
            }
            let mut seen = std::collections::BTreeSet::new();
            for label in l {
                if !seen.insert(label.as_str()) {
                    return Err(Error::DuplicateLabel(label.clone()));
                }
            }
        }
        let sum: f64 = probs.iter().sum();
        if normalize {
            if !sum.is_finite() || sum <= 0.0 {
                return Err(Error::SumMismatch {
                    sum,
                    tolerance: MASS_TOL,
                });
            }
            for p in &mut probs {
                *p /= sum;
            }
        } else if (sum - 1.0).abs() > MASS_TOL {
            return Err(Error::SumMismatch {
                sum,
                tolerance: MASS_TOL,
            });
        }

        let mut belief = Self {
            probs,
            labels,
            ordering,
        };
        if ordering == OrderingMode::ByProbability {
            belief.sort_descending();
        }
        Ok(belief)
    }

    /// Total ignorance: `n` equally likely candidates.
    pub fn uniform(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::EmptyOrSingleton(n));
        }
        let p = 1.0 / n as f64;
        // Constructed without renormalization noise so downstream sums stay
        // as close to exact as f64 allows.
        Self::new(vec![p; n], OrderingMode::Listed, false).map_err(|e| match e {
            Error::SumMismatch { .. } => unreachable!("uniform mass is 1 within tolerance"),
            other => other,
        })
    }

    /// Total knowledge: all mass on the `j`-th candidate, counted from 1.
    pub fn certain(n: usize, j: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::EmptyOrSingleton(n));
        }
        if j < 1 || j > n {
            return Err(Error::IndexOutOfRange { index: j, n });
        }
        let mut probs = vec![0.0; n];
        probs[j - 1] = 1.0;
        Self::new(probs, OrderingMode::Listed, false)
    }

    /// Candidate count.
    pub fn n(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn ordering(&self) -> OrderingMode {
        self.ordering
    }

    /// Copy of this line arranged by descending probability.
    pub fn sorted_by_probability(&self) -> Self {
        let mut out = Self {
            probs: self.probs.clone(),
            labels: self.labels.clone(),
            ordering: OrderingMode::ByProbability,
        };
        out.sort_descending();
        out
    }

    /// Numeric axis positions parsed from the labels, if every label is a
    /// number (as with histogram column centers).
    pub fn axis_positions(&self) -> Option<Vec<f64>> {
        let labels = self.labels.as_ref()?;
        let mut out = Vec::with_capacity(labels.len());
        for l in labels {
            match l.trim().parse::<f64>() {
                Ok(v) if v.is_finite() => out.push(v),
                _ => return None,
            }
        }
        Some(out)
    }

    pub(crate) fn rebuilt(
        probs: Vec<f64>,
        labels: Option<Vec<String>>,
        ordering: OrderingMode,
    ) -> Result<Self> {
        Self::build(probs, labels, ordering, false)
    }

    fn sort_descending(&mut self) {
        let mut idx: Vec<usize> = (0..self.probs.len()).collect();
        // Stable: equal probabilities keep their listed order.
        idx.sort_by(|&a, &b| self.probs[b].total_cmp(&self.probs[a]));
        self.probs = idx.iter().map(|&i| self.probs[i]).collect();
        if let Some(ref l) = self.labels {
            self.labels = Some(idx.iter().map(|&i| l[i].clone()).collect());
        }
    }
}

/// Probability density sampled on a uniform grid over a bounded segment
/// `[lo, hi]`, endpoints included.
///
/// The samples are read as a piecewise-linear density, so the trapezoid
/// rule integrates it exactly; total mass must be 1 within
/// [`DENSITY_TOL`] (or pass `normalize` to rescale). Unbounded supports are
/// out of scope: a challenge is only posed over a known finite segment, and
/// callers with heavier tails simply widen it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawContinuousBelief")]
pub struct ContinuousBelief {
    lo: f64,
    hi: f64,
    samples: Vec<f64>,
    /// Cumulative exact integral of the piecewise-linear density at each
    /// grid point; cum[0] = 0. Derived, so not serialized; deserializing
    /// rebuilds it through [`ContinuousBelief::new`].
    #[serde(skip_serializing)]
    cum: Vec<f64>,
}

#[derive(Deserialize)]
struct RawContinuousBelief {
    lo: f64,
    hi: f64,
    samples: Vec<f64>,
}

impl TryFrom<RawContinuousBelief> for ContinuousBelief {
    type Error = Error;

    fn try_from(raw: RawContinuousBelief) -> Result<Self> {
        Self::new(raw.lo, raw.hi, raw.samples, false)
    }
}

impl ContinuousBelief {
    pub fn new(lo: f64, hi: f64, samples: Vec<f64>, normalize: bool) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || hi <= lo {
            return Err(Error::BadSupport { lo, hi });
        }
        if samples.len() < 2 {
            return Err(Error::TooFewSamples(samples.len()));
        }
        for (index, &v) in samples.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite { index });
            }
            if v < 0.0 {
                return Err(Error::NegativeDensity { index, value: v });
            }
        }
        let dx = (hi - lo) / (samples.len() - 1) as f64;
        let integral = trapezoid_uniform(&samples, dx);
        let samples = if normalize {
            if !integral.is_finite() || integral <= 0.0 {
                return Err(Error::SumMismatch {
                    sum: integral,
                    tolerance: DENSITY_TOL,
                });
            }
            samples.into_iter().map(|v| v / integral).collect()
        } else {
            if (integral - 1.0).abs() > DENSITY_TOL {
                return Err(Error::SumMismatch {
                    sum: integral,
                    tolerance: DENSITY_TOL,
                });
            }
            samples
        };

        let mut cum = Vec::with_capacity(samples.len());
        cum.push(0.0);
        for i in 1..samples.len() {
            let prev = cum[i - 1];
            cum.push(prev + dx * (samples[i] + samples[i - 1]) * 0.5);
        }
        Ok(Self {
            lo,
            hi,
            samples,
            cum,
        })
    }

    /// Sample a closure on `m` grid points and normalize to unit mass.
    pub fn from_fn(lo: f64, hi: f64, m: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || hi <= lo {
            return Err(Error::BadSupport { lo, hi });
        }
        if m < 2 {
            return Err(Error::TooFewSamples(m));
        }
        let dx = (hi - lo) / (m - 1) as f64;
        let samples: Vec<f64> = (0..m).map(|i| f(lo + i as f64 * dx)).collect();
        Self::new(lo, hi, samples, true)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    /// Support length `hi - lo`.
    pub fn span(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// Grid spacing.
    pub fn dx(&self) -> f64 {
        (self.hi - self.lo) / (self.samples.len() - 1) as f64
    }

    /// Density at `x`, linearly interpolated; `x` is clamped to the support.
    pub fn density_at(&self, x: f64) -> f64 {
        let x = x.clamp(self.lo, self.hi);
        let dx = self.dx();
        let t = (x - self.lo) / dx;
        let j = (t.floor() as usize).min(self.samples.len() - 2);
        let u = t - j as f64;
        self.samples[j] * (1.0 - u) + self.samples[j + 1] * u
    }

    /// Exact integral of the piecewise-linear density over `[lo, x]`.
    pub fn mass_below(&self, x: f64) -> f64 {
        let x = x.clamp(self.lo, self.hi);
        let dx = self.dx();
        let t = (x - self.lo) / dx;
        let j = (t.floor() as usize).min(self.samples.len() - 2);
        let u = x - (self.lo + j as f64 * dx);
        // Integral of the linear segment from grid point j to x.
        self.cum[j]
            + self.samples[j] * u
            + (self.samples[j + 1] - self.samples[j]) * u * u / (2.0 * dx)
    }

    /// Exact mass of the window `[a, b]` (both clamped to the support).
    pub fn window_mass(&self, a: f64, b: f64) -> f64 {
        self.mass_below(b) - self.mass_below(a)
    }

    /// Collapse the density to a histogram line of columns of width `h`.
    ///
    /// Columns start at `lo`; the count is `ceil(span / h)`, so the last
    /// column may overhang `hi` (its center is then read at the boundary).
    /// Each column takes the density at its center and the line is
    /// renormalized. Labels carry the column centers, which keeps the
    /// numeric axis recoverable downstream.
    pub fn to_histogram(&self, h: f64) -> Result<DiscreteBelief> {
        let span = self.span();
        if !h.is_finite() || h <= 0.0 || h > span * (1.0 + 1e-9) {
            return Err(Error::BadWidth { width: h, span });
        }
        let n = ((span / h) - 1e-9).ceil().max(1.0) as usize;
        let mut probs = Vec::with_capacity(n);
        let mut labels = Vec::with_capacity(n);
        for i in 0..n {
            let center = self.lo + (i as f64 + 0.5) * h;
            probs.push(self.density_at(center));
            labels.push(format!("{}", center.clamp(self.lo, self.hi)));
        }
        let sum: f64 = probs.iter().sum();
        if !sum.is_finite() || sum <= 0.0 {
            return Err(Error::SumMismatch {
                sum,
                tolerance: MASS_TOL,
            });
        }
        DiscreteBelief::with_labels(labels, probs, OrderingMode::Listed, true)
    }
}
