//! Knowledge over time: signatures, intractability, and risk pricing.
//!
//! A solver attacking a problem moves through belief states as resources
//! (time, money, compute) are spent. Sampling the missing-knowledge score
//! along that path gives a signature: a curve from 1 (nothing known) down
//! to 0 (solved). The shape of that curve is a fingerprint of how hard
//! the remaining work is, and the slope `dT/dM` prices each unit of
//! knowledge still to be bought.

use serde::{Deserialize, Serialize};

use crate::belief::{DiscreteBelief, OrderingMode};
use crate::error::{Error, Result};
use crate::knowledge::{ark_discrete, mark_normalized};
use crate::window::InterestWindow;

const MARK_TOL: f64 = 1e-9;

/// One observation of a solver's belief state at a given resource spend.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryPoint {
    resource: f64,
    belief: DiscreteBelief,
}

impl TrajectoryPoint {
    /// Requires a finite, nonnegative resource reading.
    pub fn new(resource: f64, belief: DiscreteBelief) -> Result<Self> {
        if !resource.is_finite() || resource < 0.0 {
            return Err(Error::NegativeResource(resource));
        }
        Ok(Self { resource, belief })
    }

    pub fn resource(&self) -> f64 {
        self.resource
    }

    pub fn belief(&self) -> &DiscreteBelief {
        &self.belief
    }
}

/// One point on a missing-knowledge signature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignaturePoint {
    pub resource: f64,
    pub mark: f64,
}

/// A missing-knowledge curve sampled at strictly increasing resource
/// spends.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Signature {
    points: Vec<SignaturePoint>,
}

impl Signature {
    /// Validates and stores the curve. Needs at least two points, strictly
    /// increasing resources, and scores within [0, 1] (a hair of rounding
    /// slack is clamped in).
    pub fn new(points: Vec<SignaturePoint>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::TooShort(points.len()));
        }
        let mut cleaned = Vec::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if !p.resource.is_finite() || (i > 0 && p.resource <= points[i - 1].resource) {
                let prev = if i > 0 {
                    points[i - 1].resource
                } else {
                    f64::NEG_INFINITY
                };
                return Err(Error::BadOrder {
                    t1: prev,
                    t2: p.resource,
                });
            }
            if !p.mark.is_finite() || p.mark < -MARK_TOL || p.mark > 1.0 + MARK_TOL {
                return Err(Error::BadMark(p.mark));
            }
            cleaned.push(SignaturePoint {
                resource: p.resource,
                mark: p.mark.clamp(0.0, 1.0),
            });
        }
        Ok(Self { points: cleaned })
    }

    pub fn points(&self) -> &[SignaturePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Scores every trajectory point with the same window and ordering
/// discipline, producing a signature.
///
/// All beliefs must agree on candidate count and labels; a curve scored
/// against shifting candidate sets would not be comparable point to
/// point. `Listed` takes each belief as stored, `ByProbability` scores a
/// best-case-ordered copy, and `Composite` insists the beliefs were
/// already arranged by [`crate::apply_ordering`], since the rank panel is
/// not carried on the belief itself.
///
/// `normalized` switches the score from the raw missing fraction to the
/// rescaled form that reads 1 at uniform ignorance. With narrow windows
/// that rescaling can exceed 1 on some arrangements; a signature holds
/// scores in [0, 1], so such a series fails with [`Error::BadMark`]
/// rather than being quietly clamped.
pub fn mark_series(
    points: &[TrajectoryPoint],
    window: &InterestWindow,
    mode: OrderingMode,
    normalized: bool,
) -> Result<Signature> {
    if points.len() < 2 {
        return Err(Error::TooShort(points.len()));
    }
    let first = points[0].belief();
    for p in points {
        let b = p.belief();
        if b.n() != first.n() {
            return Err(Error::InconsistentCandidates(format!(
                "candidate count changed from {} to {}",
                first.n(),
                b.n()
            )));
        }
        if b.labels() != first.labels() {
            return Err(Error::InconsistentCandidates(
                "candidate labels differ between points".into(),
            ));
        }
        if mode == OrderingMode::Composite && b.ordering() != OrderingMode::Composite {
            return Err(Error::InconsistentCandidates(
                "composite scoring needs beliefs with a composite ordering already applied".into(),
            ));
        }
    }
    let mut sig = Vec::with_capacity(points.len());
    for p in points {
        let scored = match mode {
            OrderingMode::ByProbability => p.belief().sorted_by_probability(),
            _ => p.belief().clone(),
        };
        let mark = if normalized {
            mark_normalized(&scored, window)?
        } else {
            ark_discrete(&scored, window)?.mark()
        };
        sig.push(SignaturePoint {
            resource: p.resource(),
            mark,
        });
    }
    Signature::new(sig)
}

/// Resource cost per unit of knowledge between two signature points:
/// `(T2 - T1) / (M1 - M2)`.
///
/// Big values mean the problem is fighting back; the pair must be in
/// resource order and must show actual progress (a drop in missing
/// knowledge), otherwise the ratio has no meaning and an error says which
/// precondition failed.
pub fn apparent_intractability(p1: SignaturePoint, p2: SignaturePoint) -> Result<f64> {
    if p2.resource <= p1.resource {
        return Err(Error::BadOrder {
            t1: p1.resource,
            t2: p2.resource,
        });
    }
    if p2.mark >= p1.mark {
        return Err(Error::NoProgress {
            m1: p1.mark,
            m2: p2.mark,
        });
    }
    Ok((p2.resource - p1.resource) / (p1.mark - p2.mark))
}

/// Slope reading for one progress-making segment of a signature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalSegment {
    /// Missing-knowledge level at the segment midpoint.
    pub mark: f64,
    /// Resource cost per unit of knowledge over the segment.
    pub dtdm: f64,
}

/// Segment-by-segment intractability of a signature.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalIntractability {
    /// One reading per segment where missing knowledge strictly fell.
    pub segments: Vec<LocalSegment>,
    /// Indices (into the signature's segment list) where it did not:
    /// plateaus and regressions, skipped from `segments`.
    pub violations: Vec<usize>,
}

/// Computes `dT/dM` on every strictly-progressing segment. Segments where
/// the score stalls or rises are not errors; real searches wander. They
/// are reported by index so the caller can see where the curve misbehaved.
pub fn local_intractability(sig: &Signature) -> LocalIntractability {
    let pts = sig.points();
    let mut segments = Vec::new();
    let mut violations = Vec::new();
    for i in 0..pts.len() - 1 {
        let (a, b) = (pts[i], pts[i + 1]);
        if b.mark < a.mark {
            segments.push(LocalSegment {
                mark: 0.5 * (a.mark + b.mark),
                dtdm: (b.resource - a.resource) / (a.mark - b.mark),
            });
        } else {
            violations.push(i);
        }
    }
    LocalIntractability {
        segments,
        violations,
    }
}

/// [`overall_intractability_with_tol`] with the default endpoint
/// tolerance of 0.02.
pub fn overall_intractability(sig: &Signature) -> Result<f64> {
    overall_intractability_with_tol(sig, 0.02)
}

/// Integral of the local intractability over the whole knowledge axis:
/// `sum dT/dM * dM` from full ignorance down to solved.
///
/// The signature is first thinned to its strictly decreasing envelope
/// (each point kept only if it improves on the last kept one), which
/// drops plateaus and regressions. The envelope must actually span the
/// axis, starting within `tol` of 1 and ending within `tol` of 0;
/// otherwise the "overall" number would silently describe a partial
/// effort, so [`Error::IncompleteSpan`] is returned instead. Over the
/// envelope the sum telescopes to total resource spent, which is the
/// point: the trajectory's detours cancel and only bought knowledge
/// remains priced in.
pub fn overall_intractability_with_tol(sig: &Signature, tol: f64) -> Result<f64> {
    let mut envelope: Vec<SignaturePoint> = Vec::with_capacity(sig.len());
    for &p in sig.points() {
        match envelope.last() {
            Some(last) if p.mark >= last.mark => {}
            _ => envelope.push(p),
        }
    }
    let (start, end) = (envelope[0].mark, envelope[envelope.len() - 1].mark);
    if envelope.len() < 2 || (start - 1.0).abs() > tol || end.abs() > tol {
        return Err(Error::IncompleteSpan {
            start,
            end,
            tolerance: tol,
        });
    }
    let mut total = 0.0;
    for pair in envelope.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let dtdm = (b.resource - a.resource) / (a.mark - b.mark);
        total += dtdm * (a.mark - b.mark);
    }
    Ok(total)
}

/// Damage and opportunity bounds for pricing a knowledge state.
///
/// `d0` is the loss when the adversary knows everything, `d1` the loss
/// floor when they know nothing; `o1` is the payoff with full knowledge
/// in hand, `o0` the payoff floor without it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RiskParams {
    pub d0: f64,
    pub d1: f64,
    pub o0: f64,
    pub o1: f64,
}

impl RiskParams {
    pub fn new(d0: f64, d1: f64, o0: f64, o1: f64) -> Result<Self> {
        if ![d0, d1, o0, o1].iter().all(|v| v.is_finite()) {
            return Err(Error::BadRiskParams("parameters must be finite".into()));
        }
        if !(d0 >= d1 && d1 >= 0.0) {
            return Err(Error::BadRiskParams(format!(
                "need d0 >= d1 >= 0, got d0={d0}, d1={d1}"
            )));
        }
        if !(o1 >= o0 && o0 >= 0.0) {
            return Err(Error::BadRiskParams(format!(
                "need o1 >= o0 >= 0, got o0={o0}, o1={o1}"
            )));
        }
        Ok(Self { d0, d1, o0, o1 })
    }
}

fn checked_mark(mark: f64) -> Result<f64> {
    if !mark.is_finite() || !(-MARK_TOL..=1.0 + MARK_TOL).contains(&mark) {
        return Err(Error::BadMark(mark));
    }
    Ok(mark.clamp(0.0, 1.0))
}

/// Expected loss when the score measures an adversary's missing
/// knowledge about the defense: interpolates from `d1` (adversary blind,
/// mark 0 of *our* secret... they know it all) up to `d0`.
///
/// Concretely: `d1 + (d0 - d1) * mark`, where `mark` is how much of the
/// *defender's* secret the adversary has already acquired, expressed as
/// the defender's missing-knowledge margin consumed.
pub fn expected_damage(params: &RiskParams, mark: f64) -> Result<f64> {
    let m = checked_mark(mark)?;
    Ok(params.d1 + (params.d0 - params.d1) * m)
}

/// Expected payoff of acting on current knowledge: `o1 - (o1 - o0) *
/// mark`. At mark 0 everything needed is known and the full `o1` is in
/// reach; at mark 1 only the baseline `o0` remains.
pub fn expected_opportunity(params: &RiskParams, mark: f64) -> Result<f64> {
    let m = checked_mark(mark)?;
    Ok(params.o1 - (params.o1 - params.o0) * m)
}

const RESAMPLE_POINTS: usize = 101;

/// Distance between two signatures on a normalized resource axis, for
/// comparing curve *shapes* across problems of different absolute cost.
/// Root-mean-square gap after each curve is thinned to its nonincreasing
/// envelope, rescaled to spend fraction in [0, 1], and resampled.
pub fn signature_distance(a: &Signature, b: &Signature) -> Result<f64> {
    let ea = nonincreasing_envelope(a)?;
    let eb = nonincreasing_envelope(b)?;
    let na = normalize_axis(&ea);
    let nb = normalize_axis(&eb);
    Ok(rms_gap(&na, &nb, 0.0, 1.0))
}

/// Distance between two signatures on the raw resource axis, for curves
/// measured in the same units. Both envelopes are compared over the union
/// of their spans, each held at its endpoint value outside its own range.
pub fn signature_distance_raw(a: &Signature, b: &Signature) -> Result<f64> {
    let ea = nonincreasing_envelope(a)?;
    let eb = nonincreasing_envelope(b)?;
    let lo = ea[0].resource.min(eb[0].resource);
    let hi = ea[ea.len() - 1].resource.max(eb[eb.len() - 1].resource);
    Ok(rms_gap(&ea, &eb, lo, hi))
}

/// Keeps points that do not rise above the last kept score. Unlike the
/// strict envelope in [`overall_intractability_with_tol`], flats survive:
/// a plateau is part of a curve's shape even if it buys no knowledge.
fn nonincreasing_envelope(sig: &Signature) -> Result<Vec<SignaturePoint>> {
    let mut kept: Vec<SignaturePoint> = Vec::with_capacity(sig.len());
    for &p in sig.points() {
        match kept.last() {
            Some(last) if p.mark > last.mark + 1e-12 => {}
            _ => kept.push(p),
        }
    }
    if kept.len() < 2 {
        return Err(Error::TooShort(kept.len()));
    }
    Ok(kept)
}

fn normalize_axis(points: &[SignaturePoint]) -> Vec<SignaturePoint> {
    let lo = points[0].resource;
    let span = points[points.len() - 1].resource - lo;
    points
        .iter()
        .map(|p| SignaturePoint {
            resource: (p.resource - lo) / span,
            mark: p.mark,
        })
        .collect()
}

fn interp(points: &[SignaturePoint], t: f64) -> f64 {
    if t <= points[0].resource {
        return points[0].mark;
    }
    if t >= points[points.len() - 1].resource {
        return points[points.len() - 1].mark;
    }
    let j = points.partition_point(|p| p.resource <= t) - 1;
    let (a, b) = (points[j], points[j + 1]);
    let u = (t - a.resource) / (b.resource - a.resource);
    a.mark + (b.mark - a.mark) * u
}

fn rms_gap(a: &[SignaturePoint], b: &[SignaturePoint], lo: f64, hi: f64) -> f64 {
    let dt = (hi - lo) / (RESAMPLE_POINTS - 1) as f64;
    let gaps: Vec<f64> = (0..RESAMPLE_POINTS)
        .map(|i| {
            let t = lo + i as f64 * dt;
            let d = interp(a, t) - interp(b, t);
            d * d
        })
        .collect();
    crate::numeric::trapezoid_uniform(&gaps, dt).max(0.0).sqrt()
}
