//! Window maxima: for a given width, the largest probability mass any
//! contiguous window of that width captures, and where it sits.
//!
//! This is the primitive every knowledge metric here is built on. A width-w
//! window stands for an answer at resolution w: naming w adjacent candidates
//! (or an axis interval of length w) and claiming the truth lies inside.

use serde::{Deserialize, Serialize};

use crate::belief::{ContinuousBelief, DiscreteBelief};
use crate::error::{Error, Result};
use crate::window::InterestWindow;

/// Whether profile widths count columns or measure axis length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProfileKind {
    Columns,
    Axis,
}

/// Window maxima tabulated over a range of widths.
///
/// `widths` are strictly increasing; `values` are the corresponding maxima,
/// nondecreasing in width and within [0, 1]; `starts` give the leftmost
/// maximizing window start per width (1-based column index, or the axis
/// coordinate of the window's left edge).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiProfile {
    kind: ProfileKind,
    widths: Vec<f64>,
    values: Vec<f64>,
    starts: Vec<f64>,
}

impl PiProfile {
    /// Validating constructor; the profile functions below are the usual
    /// producers.
    pub fn new(
        kind: ProfileKind,
        widths: Vec<f64>,
        values: Vec<f64>,
        starts: Vec<f64>,
    ) -> Result<Self> {
        if widths.is_empty() || widths.len() != values.len() || widths.len() != starts.len() {
            return Err(Error::BadProfile(format!(
                "mismatched lengths: {} widths, {} values, {} starts",
                widths.len(),
                values.len(),
                starts.len()
            )));
        }
        for w in widths.windows(2) {
            // NaN widths must be rejected too, so the finite check comes first.
            if !w[0].is_finite() || !w[1].is_finite() || w[1] <= w[0] {
                return Err(Error::BadProfile(format!(
                    "widths not strictly increasing at {} -> {}",
                    w[0], w[1]
                )));
            }
        }
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() || !(-MONOTONE_SLACK..=1.0 + MONOTONE_SLACK).contains(&v) {
                return Err(Error::BadProfile(format!(
                    "value {v} at index {i} outside [0, 1]"
                )));
            }
            if i > 0 && v < values[i - 1] - MONOTONE_SLACK {
                return Err(Error::BadProfile(format!(
                    "values decrease at index {i}: {} -> {v}",
                    values[i - 1]
                )));
            }
        }
        Ok(Self {
            kind,
            widths,
            values,
            starts,
        })
    }

    pub fn kind(&self) -> ProfileKind {
        self.kind
    }

    pub fn widths(&self) -> &[f64] {
        &self.widths
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn starts(&self) -> &[f64] {
        &self.starts
    }

    pub fn len(&self) -> usize {
        self.widths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.widths.is_empty()
    }

    /// Value at an exact tabulated width (used by the discrete
    /// higher-order aggregate, which weights integer widths).
    pub(crate) fn value_at(&self, width: f64) -> Option<f64> {
        self.widths
            .iter()
            .position(|&w| (w - width).abs() <= 1e-9)
            .map(|i| self.values[i])
    }

    /// Linear interpolation of the profile at `width`, which must lie
    /// within the tabulated range.
    pub(crate) fn interpolate(&self, width: f64) -> Option<f64> {
        let first = *self.widths.first()?;
        let last = *self.widths.last()?;
        if width < first - 1e-9 || width > last + 1e-9 {
            return None;
        }
        let w = width.clamp(first, last);
        match self.widths.binary_search_by(|x| x.total_cmp(&w)) {
            Ok(i) => Some(self.values[i]),
            Err(i) => {
                let (w0, w1) = (self.widths[i - 1], self.widths[i]);
                let t = (w - w0) / (w1 - w0);
                Some(self.values[i - 1] * (1.0 - t) + self.values[i] * t)
            }
        }
    }
}

const MONOTONE_SLACK: f64 = 1e-9;

/// Mass difference below which two continuous windows count as tied.
/// Window masses are differences of running integrals, so exact ties pick
/// up rounding noise of this order.
const TIE_EPS: f64 = 1e-12;

/// Largest mass captured by any contiguous run of exactly `w` columns,
/// together with the 1-based start of the leftmost run attaining it.
///
/// Runs are enumerated directly and summed left to right, so the result is
/// bit-identical to naive window enumeration by construction.
pub fn pi_discrete(belief: &DiscreteBelief, w: usize) -> Result<(f64, usize)> {
    let n = belief.n();
    if w < 1 || w > n {
        return Err(Error::BadWidth {
            width: w as f64,
            span: n as f64,
        });
    }
    let probs = belief.probs();
    let mut best = f64::NEG_INFINITY;
    let mut best_start = 0usize;
    for start in 0..=(n - w) {
        let sum: f64 = probs[start..start + w].iter().sum();
        // Strict comparison keeps the leftmost maximizer on ties.
        if sum > best {
            best = sum;
            best_start = start;
        }
    }
    Ok((best, best_start + 1))
}

/// Window maxima for every column count in the interest window.
pub fn pi_profile_discrete(belief: &DiscreteBelief, window: &InterestWindow) -> Result<PiProfile> {
    let (ioi, iof) = window.discrete_span(belief.n())?;
    let mut widths = Vec::with_capacity(iof - ioi + 1);
    let mut values = Vec::with_capacity(iof - ioi + 1);
    let mut starts = Vec::with_capacity(iof - ioi + 1);
    for w in ioi..=iof {
        let (v, s) = pi_discrete(belief, w)?;
        widths.push(w as f64);
        values.push(v);
        starts.push(s as f64);
    }
    PiProfile::new(ProfileKind::Columns, widths, values, starts)
}

/// Largest mass captured by any axis window of length `width` lying fully
/// inside the support, and the center of the leftmost window attaining it.
///
/// Candidate windows are swept at the grid resolution (plus the final
/// flush-right position), and each window's mass is the exact integral of
/// the piecewise-linear density, so refinement of the grid refines both the
/// density and the sweep together.
pub fn pi_continuous(belief: &ContinuousBelief, width: f64) -> Result<(f64, f64)> {
    let span = belief.span();
    if !width.is_finite() || width <= 0.0 || width > span * (1.0 + 1e-9) {
        return Err(Error::BadWidth { width, span });
    }
    let width = width.min(span);
    let dx = belief.dx();
    let lo = belief.lo();
    let last_start = belief.hi() - width;

    let mut best = f64::NEG_INFINITY;
    let mut best_start = lo;
    let mut j = 0usize;
    loop {
        let s = lo + j as f64 * dx;
        if s > last_start + 1e-12 * span.max(1.0) {
            break;
        }
        let mass = belief.window_mass(s, s + width);
        // Ties (up to cumulative rounding noise) resolve to the leftmost
        // window, so a later window must beat the incumbent by more than
        // TIE_EPS to displace it.
        if mass > best + TIE_EPS {
            best = mass;
            best_start = s;
        }
        j += 1;
    }
    // Flush-right window, in case the sweep step does not land on it.
    if last_start - (lo + (j.saturating_sub(1)) as f64 * dx) > 1e-12 * span.max(1.0) {
        let mass = belief.window_mass(last_start, belief.hi());
        if mass > best + TIE_EPS {
            best = mass;
            best_start = last_start;
        }
    }
    Ok((best, best_start + width / 2.0))
}

/// Window maxima for axis widths stepped at the grid spacing across the
/// interest window (always including `iof` itself).
pub fn pi_profile_continuous(
    belief: &ContinuousBelief,
    window: &InterestWindow,
) -> Result<PiProfile> {
    let (ioi, iof) = window.axis_span(belief.span())?;
    let dx = belief.dx();
    let mut widths = Vec::new();
    let mut w = ioi;
    while w < iof - 1e-12 * belief.span().max(1.0) {
        widths.push(w);
        w += dx;
    }
    widths.push(iof);

    let mut values = Vec::with_capacity(widths.len());
    let mut starts = Vec::with_capacity(widths.len());
    for &w in &widths {
        let (v, center) = pi_continuous(belief, w)?;
        values.push(v);
        starts.push(center - w / 2.0);
    }
    PiProfile::new(ProfileKind::Axis, widths, values, starts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::belief::OrderingMode;

    fn belief(probs: &[f64]) -> DiscreteBelief {
        DiscreteBelief::new(probs.to_vec(), OrderingMode::Listed, false).unwrap()
    }

    // Independent check: enumerate every window the slow way.
    fn oracle_pi(probs: &[f64], w: usize) -> (f64, usize) {
        let mut best = f64::NEG_INFINITY;
        let mut at = 0;
        for start in 0..=(probs.len() - w) {
            let mut sum = 0.0;
            for &p in &probs[start..start + w] {
                sum += p;
            }
            if sum > best {
                best = sum;
                at = start + 1;
            }
        }
        (best, at)
    }

    #[test]
    fn single_width_examples() {
        let b = belief(&[0.70, 0.15, 0.10, 0.05]);
        let (v, s) = pi_discrete(&b, 2).unwrap();
        assert!((v - 0.85).abs() < 1e-12);
        assert_eq!(s, 1);

        let u = DiscreteBelief::uniform(10).unwrap();
        for w in 1..=10 {
            let (v, s) = pi_discrete(&u, w).unwrap();
            assert!((v - w as f64 / 10.0).abs() < 1e-12);
            assert_eq!(s, 1, "uniform ties resolve leftmost");
        }
    }

    #[test]
    fn full_width_is_total_mass() {
        let b = belief(&[0.2, 0.3, 0.5]);
        let (v, s) = pi_discrete(&b, 3).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        assert_eq!(s, 1);
    }

    #[test]
    fn width_out_of_range() {
        let b = belief(&[0.5, 0.5]);
        assert!(matches!(pi_discrete(&b, 0), Err(Error::BadWidth { .. })));
        assert!(matches!(pi_discrete(&b, 3), Err(Error::BadWidth { .. })));
    }

    #[test]
    fn matches_oracle_on_fixed_lines() {
        let rows: [&[f64]; 3] = [
            &[0.08, 0.08, 0.06, 0.18, 0.10, 0.10, 0.02, 0.12, 0.16, 0.10],
            &[0.01, 0.01, 0.01, 0.58, 0.08, 0.02, 0.02, 0.10, 0.16, 0.01],
            &[0.25, 0.25, 0.25, 0.25],
        ];
        for row in rows {
            let b = belief(row);
            for w in 1..=row.len() {
                let got = pi_discrete(&b, w).unwrap();
                let want = oracle_pi(row, w);
                assert_eq!(got.0.to_bits(), want.0.to_bits(), "w={w}");
                assert_eq!(got.1, want.1, "w={w}");
            }
        }
    }

    #[test]
    fn profile_over_nominal_window() {
        let u = DiscreteBelief::uniform(10).unwrap();
        let p = pi_profile_discrete(&u, &InterestWindow::nominal(10)).unwrap();
        assert_eq!(p.len(), 10);
        assert_eq!(p.kind(), ProfileKind::Columns);
        for (i, &v) in p.values().iter().enumerate() {
            assert!((v - (i + 1) as f64 / 10.0).abs() < 1e-12);
        }
    }

    #[test]
    fn continuous_uniform_windows() {
        let c = ContinuousBelief::new(0.0, 10.0, vec![0.1; 101], false).unwrap();
        let (v, center) = pi_continuous(&c, 4.0).unwrap();
        assert!((v - 0.4).abs() < 1e-12);
        assert!((center - 2.0).abs() < 1e-12, "leftmost tie at center 2");

        let (v, _) = pi_continuous(&c, 10.0).unwrap();
        assert!((v - 1.0).abs() < 1e-9);
    }

    #[test]
    fn continuous_spike_is_caught() {
        // One interior grid spike normalized to unit mass: a half-unit
        // window centered there captures essentially everything.
        let m = 1001;
        let dx = 10.0 / (m - 1) as f64;
        let mut samples = vec![0.0; m];
        samples[500] = 1.0 / dx;
        let c = ContinuousBelief::new(0.0, 10.0, samples, false).unwrap();
        let (v, center) = pi_continuous(&c, 0.5).unwrap();
        assert!((v - 1.0).abs() < 1e-9);
        // Every window containing the whole spike ties; the leftmost such
        // window still covers the spike itself.
        assert!((center - 5.0).abs() <= 0.25 + dx, "center {center}");
    }

    #[test]
    fn continuous_mode_location_on_symmetric_peak() {
        // Symmetric unimodal density: the best unit window centers on the
        // mode, found by sweep rather than by any closed form.
        let c =
            ContinuousBelief::from_fn(0.0, 10.0, 1001, |x| (-(x - 5.0) * (x - 5.0) / 2.0).exp())
                .unwrap();
        let (_, center) = pi_continuous(&c, 1.0).unwrap();
        assert!((center - 5.0).abs() < 1e-9, "center {center}");
    }

    #[test]
    fn continuous_matches_direct_integration_oracle() {
        // Independent route: integrate each candidate window by composite
        // trapezoid over a fine subdivision of interpolated densities.
        let c = ContinuousBelief::from_fn(0.0, 4.0, 81, |x| {
            if x <= 1.5 {
                x
            } else {
                (3.0 - x).max(0.0) * 0.6 + 0.3
            }
        })
        .unwrap();
        let oracle = |width: f64| -> f64 {
            let dx = c.dx();
            let mut best = f64::NEG_INFINITY;
            let mut j = 0usize;
            loop {
                let s = c.lo() + j as f64 * dx;
                if s > c.hi() - width + 1e-12 {
                    break;
                }
                let steps = 4000;
                let h = width / steps as f64;
                let mut acc = 0.0;
                for k in 0..steps {
                    let a = s + k as f64 * h;
                    acc += (c.density_at(a) + c.density_at(a + h)) * 0.5 * h;
                }
                best = best.max(acc);
                j += 1;
            }
            best
        };
        // The oracle's quadrature does not align with density kinks, so it
        // carries its own O(h^2) error; 1e-4 still separates real defects.
        for width in [0.25, 0.8, 1.7, 3.2] {
            let (v, _) = pi_continuous(&c, width).unwrap();
            assert!((v - oracle(width)).abs() < 1e-4, "width {width}: {v}");
        }
    }

    #[test]
    fn continuous_profile_spans_window() {
        let c = ContinuousBelief::new(0.0, 10.0, vec![0.1; 101], false).unwrap();
        let w = InterestWindow::new(1.0, 5.0).unwrap();
        let p = pi_profile_continuous(&c, &w).unwrap();
        assert_eq!(p.kind(), ProfileKind::Axis);
        assert!((p.widths()[0] - 1.0).abs() < 1e-12);
        assert!((p.widths()[p.len() - 1] - 5.0).abs() < 1e-12);
        // Uniform density: value at width w is w / span.
        for (i, &wd) in p.widths().iter().enumerate() {
            assert!((p.values()[i] - wd / 10.0).abs() < 1e-9);
        }
    }
}
