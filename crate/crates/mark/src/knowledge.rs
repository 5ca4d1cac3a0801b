//! The knowledge metrics themselves.
//!
//! `ark` is acquired relevant knowledge: the average, over every width in
//! the interest window, of the best mass a window of that width captures.
//! It is 1 at certainty, and for the nominal window it is exactly 0.5 at
//! total ignorance, for every line length. `mark = 1 - ark` is what is
//! still missing, and `mark_normalized` rescales it so total ignorance
//! reads 1.0 regardless of how many candidates the challenge lists.

use serde::{Deserialize, Serialize};

use crate::belief::{ContinuousBelief, DiscreteBelief};
use crate::error::{Error, Result};
use crate::numeric::trapezoid;
use crate::pi::{pi_continuous, pi_discrete, PiProfile, ProfileKind};
use crate::window::InterestWindow;

/// An ark/mark pair, plus the normalized scale when it is defined.
///
/// `mark` is always exactly `1 - ark`. `mark_normalized` is present for
/// discrete scores whose total-ignorance anchor is not saturated; it is
/// `None` for continuous and higher-order scores, where no such anchor is
/// defined. `order_k` records the weighting order (0 = plain average).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KnowledgeScore {
    ark: f64,
    mark: f64,
    mark_normalized: Option<f64>,
    order_k: u32,
}

impl KnowledgeScore {
    fn new(ark: f64, mark_normalized: Option<f64>, order_k: u32) -> Self {
        Self {
            ark,
            mark: 1.0 - ark,
            mark_normalized,
            order_k,
        }
    }

    pub fn ark(&self) -> f64 {
        self.ark
    }

    pub fn mark(&self) -> f64 {
        self.mark
    }

    pub fn mark_normalized(&self) -> Option<f64> {
        self.mark_normalized
    }

    pub fn order_k(&self) -> u32 {
        self.order_k
    }
}

/// Plain average of the window maxima over widths `ioi..iof`.
///
/// The width `iof` itself is excluded from the average (a window that wide
/// is already useless to the seeker), except in the degenerate lock-and-key
/// case `ioi == iof`, where the score is the single maximum at that width.
fn raw_ark_discrete(belief: &DiscreteBelief, ioi: usize, iof: usize) -> Result<f64> {
    if ioi == iof {
        return Ok(pi_discrete(belief, ioi)?.0);
    }
    let mut acc = 0.0;
    for w in ioi..iof {
        acc += pi_discrete(belief, w)?.0;
    }
    Ok(acc / (iof - ioi) as f64)
}

/// Acquired relevant knowledge of a discrete line over an interest window.
///
/// The normalized scale is attached whenever its anchor (the same score for
/// the uniform line) is below saturation.
pub fn ark_discrete(belief: &DiscreteBelief, window: &InterestWindow) -> Result<KnowledgeScore> {
    let (ioi, iof) = window.discrete_span(belief.n())?;
    let ark = raw_ark_discrete(belief, ioi, iof)?;
    let uniform = DiscreteBelief::uniform(belief.n())?;
    let anchor = raw_ark_discrete(&uniform, ioi, iof)?;
    let normalized = if anchor < 1.0 - 1e-12 {
        Some((1.0 - ark) / (1.0 - anchor))
    } else {
        None
    };
    Ok(KnowledgeScore::new(ark, normalized, 0))
}

/// [`ark_discrete`] over the nominal window (every width up to the whole
/// line). Total ignorance scores 0.5 here for every `n`; certainty scores 1.
pub fn ark_nominal(belief: &DiscreteBelief) -> Result<KnowledgeScore> {
    ark_discrete(belief, &InterestWindow::nominal(belief.n()))
}

/// Missing knowledge rescaled so the uniform line reads exactly 1.
///
/// Computed as `(1 - ark) / (1 - ark_uniform)` with the anchor evaluated
/// under the same window; for the nominal window that is `2 * (1 - ark)`.
/// Fails with [`Error::DegenerateScale`] when the anchor saturates (only
/// for the window pinned at the full line width). Note the scale exceeds 1
/// for narrow windows on lines that spread mass toward both ends; it is a
/// ratio against total ignorance, not a clamp.
pub fn mark_normalized(belief: &DiscreteBelief, window: &InterestWindow) -> Result<f64> {
    let (ioi, iof) = window.discrete_span(belief.n())?;
    let ark = raw_ark_discrete(belief, ioi, iof)?;
    let uniform = DiscreteBelief::uniform(belief.n())?;
    let anchor = raw_ark_discrete(&uniform, ioi, iof)?;
    if anchor >= 1.0 - 1e-12 {
        return Err(Error::DegenerateScale);
    }
    Ok((1.0 - ark) / (1.0 - anchor))
}

/// Acquired relevant knowledge of a sampled density: the window maximum
/// integrated over axis widths `[ioi, iof]` by the trapezoid rule on the
/// density's own grid, divided by the window length.
pub fn ark_continuous(
    belief: &ContinuousBelief,
    window: &InterestWindow,
) -> Result<KnowledgeScore> {
    let (ioi, iof) = window.axis_span(belief.span())?;
    if ioi == iof {
        let (v, _) = pi_continuous(belief, ioi)?;
        return Ok(KnowledgeScore::new(v, None, 0));
    }
    let (widths, values) = sample_pi_over(belief, ioi, iof)?;
    let ark = trapezoid(&widths, &values) / (iof - ioi);
    Ok(KnowledgeScore::new(ark, None, 0))
}

fn sample_pi_over(belief: &ContinuousBelief, ioi: f64, iof: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let dx = belief.dx();
    let tol = 1e-12 * belief.span().max(1.0);
    let mut widths = Vec::new();
    let mut w = ioi;
    while w < iof - tol {
        widths.push(w);
        w += dx;
    }
    widths.push(iof);
    let mut values = Vec::with_capacity(widths.len());
    for &w in &widths {
        values.push(pi_continuous(belief, w)?.0);
    }
    Ok((widths, values))
}

/// Higher-order aggregate: widths near `ioi` (hard, precise answers) are
/// weighted up by `(iof - w)^k` before averaging. `k = 0` recovers the
/// plain score; growing `k` concentrates credit on fine-resolution
/// knowledge, so for a nondecreasing profile the score never rises with
/// `k`.
///
/// The profile must span the requested window: tabulated at every integer
/// width in it for a column profile, covering `[ioi, iof]` for an axis
/// profile (where both quadratures run on the profile's own grid).
pub fn ark_higher_order(
    profile: &PiProfile,
    window: &InterestWindow,
    k: u32,
) -> Result<KnowledgeScore> {
    let score = match profile.kind() {
        ProfileKind::Columns => higher_order_columns(profile, window, k)?,
        ProfileKind::Axis => higher_order_axis(profile, window, k)?,
    };
    Ok(KnowledgeScore::new(score, None, k))
}

fn higher_order_columns(profile: &PiProfile, window: &InterestWindow, k: u32) -> Result<f64> {
    let max_width = *profile.widths().last().unwrap();
    let (ioi, iof) = window.discrete_span(max_width as usize)?;
    let missing = || Error::BadWindow {
        ioi: ioi as f64,
        iof: iof as f64,
    };
    if ioi == iof {
        return profile.value_at(ioi as f64).ok_or_else(missing);
    }
    let mut num = 0.0;
    let mut den = 0.0;
    for w in ioi..iof {
        let v = profile.value_at(w as f64).ok_or_else(missing)?;
        let weight = ((iof - w) as f64).powi(k as i32);
        num += v * weight;
        den += weight;
    }
    Ok(num / den)
}

fn higher_order_axis(profile: &PiProfile, window: &InterestWindow, k: u32) -> Result<f64> {
    let ioi = window.ioi();
    let iof = window.iof();
    let first = profile.widths()[0];
    let last = *profile.widths().last().unwrap();
    if ioi < first - 1e-9 || iof > last + 1e-9 {
        return Err(Error::BadWindow { ioi, iof });
    }
    if (iof - ioi).abs() <= 1e-12 {
        return profile
            .interpolate(ioi)
            .ok_or(Error::BadWindow { ioi, iof });
    }
    // Quadrature grid: the profile's own widths inside the window, with the
    // window bounds themselves as end points.
    let mut grid = vec![ioi];
    for &w in profile.widths() {
        if w > ioi + 1e-12 && w < iof - 1e-12 {
            grid.push(w);
        }
    }
    grid.push(iof);

    let mut weighted = Vec::with_capacity(grid.len());
    let mut weights = Vec::with_capacity(grid.len());
    for &w in &grid {
        let v = profile
            .interpolate(w)
            .ok_or(Error::BadWindow { ioi, iof })?;
        let c = (iof - w).powi(k as i32);
        weighted.push(v * c);
        weights.push(c);
    }
    Ok(trapezoid(&grid, &weighted) / trapezoid(&grid, &weights))
}
