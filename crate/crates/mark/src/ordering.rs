//! Arranging candidates into the line a challenge is posed over.
//!
//! Window metrics are deliberately sensitive to arrangement: adjacent
//! candidates can be named together by one window, so what counts as
//! "adjacent" is part of the question being asked. When candidates come
//! with quality ranks (possibly tied, possibly missing) the composite rule
//! here fixes one deterministic line:
//!
//! 1. ranked candidates first, by ascending rank;
//! 2. inside an equal-rank block, descending probability (stable on ties);
//! 3. unranked candidates appended after all ranked ones, by descending
//!    probability, never interleaved no matter how probable they are.

use serde::{Deserialize, Serialize};

use crate::belief::{DiscreteBelief, OrderingMode};
use crate::error::{Error, Result};

/// A candidate answer with an optional quality rank (1 = best) and the
/// probability currently assigned to it. Probabilities here only drive
/// tie-breaking, so they need not sum to anything in particular.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedCandidate {
    label: String,
    rank: Option<u32>,
    prob: f64,
}

impl RankedCandidate {
    pub fn new(label: impl Into<String>, rank: Option<u32>, prob: f64) -> Result<Self> {
        let label = label.into();
        if !prob.is_finite() || prob < 0.0 {
            return Err(Error::BadCandidateProbability { label, value: prob });
        }
        Ok(Self { label, rank, prob })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> Option<u32> {
        self.rank
    }

    pub fn prob(&self) -> f64 {
        self.prob
    }
}

/// Why a candidate sits where it sits in a composite line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Unique rank decided the position outright.
    Ranked,
    /// Shared a rank with others; probability broke the tie.
    TieBrokenByProb,
    /// No rank at all; appended after every ranked candidate.
    UnrankedTail,
}

/// The finished arrangement, with a provenance tag per position.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderedLine {
    candidates: Vec<RankedCandidate>,
    provenance: Vec<Provenance>,
}

impl OrderedLine {
    pub fn candidates(&self) -> &[RankedCandidate] {
        &self.candidates
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn labels(&self) -> Vec<&str> {
        self.candidates.iter().map(|c| c.label()).collect()
    }
}

/// Arrange candidates by the composite rule.
///
/// Requires at least two candidates with unique labels. Both sorts are
/// stable, so candidates equal on every key keep their input order.
pub fn order_composite(candidates: &[RankedCandidate]) -> Result<OrderedLine> {
    if candidates.len() < 2 {
        return Err(Error::NoCandidates(candidates.len()));
    }
    let mut seen = std::collections::BTreeSet::new();
    for c in candidates {
        if !seen.insert(c.label()) {
            return Err(Error::DuplicateLabel(c.label().to_string()));
        }
    }

    let mut ranked: Vec<&RankedCandidate> =
        candidates.iter().filter(|c| c.rank.is_some()).collect();
    let mut unranked: Vec<&RankedCandidate> =
        candidates.iter().filter(|c| c.rank.is_none()).collect();
    ranked.sort_by(|a, b| a.rank.cmp(&b.rank).then_with(|| b.prob.total_cmp(&a.prob)));
    unranked.sort_by(|a, b| b.prob.total_cmp(&a.prob));

    let mut rank_counts = std::collections::BTreeMap::new();
    for c in &ranked {
        *rank_counts.entry(c.rank.unwrap()).or_insert(0usize) += 1;
    }

    let mut out = Vec::with_capacity(candidates.len());
    let mut provenance = Vec::with_capacity(candidates.len());
    for c in ranked {
        provenance.push(if rank_counts[&c.rank.unwrap()] > 1 {
            Provenance::TieBrokenByProb
        } else {
            Provenance::Ranked
        });
        out.push(c.clone());
    }
    for c in unranked {
        provenance.push(Provenance::UnrankedTail);
        out.push(c.clone());
    }
    Ok(OrderedLine {
        candidates: out,
        provenance,
    })
}

/// Permute a labeled belief into the arrangement of `line`.
///
/// The belief's probabilities are kept (the line's are only ordering
/// inputs); its label set must match the line's exactly. The result is
/// tagged [`OrderingMode::Composite`].
pub fn apply_ordering(belief: &DiscreteBelief, line: &OrderedLine) -> Result<DiscreteBelief> {
    let labels = belief
        .labels()
        .ok_or_else(|| Error::LabelMismatch("belief has no labels to match on".into()))?;
    if labels.len() != line.candidates.len() {
        return Err(Error::LabelMismatch(format!(
            "belief has {} candidates, line has {}",
            labels.len(),
            line.candidates.len()
        )));
    }
    let index: std::collections::BTreeMap<&str, usize> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    let mut probs = Vec::with_capacity(labels.len());
    let mut new_labels = Vec::with_capacity(labels.len());
    for c in &line.candidates {
        let &i = index
            .get(c.label())
            .ok_or_else(|| Error::LabelMismatch(format!("{:?} not in belief", c.label())))?;
        probs.push(belief.probs()[i]);
        new_labels.push(labels[i].clone());
    }
    DiscreteBelief::rebuilt(probs, Some(new_labels), OrderingMode::Composite)
}
