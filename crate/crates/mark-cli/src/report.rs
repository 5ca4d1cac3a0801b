//! Typed results for every subcommand.
//!
//! Reports are plain data: each command builds one, and the render layer
//! turns it into a table, JSON, or CSV. All of them round-trip through
//! serde so downstream tooling can parse JSON output back without loss.

use mark::{
    EntropyReport, InterestWindow, KnowledgeScore, LocalIntractability, OrderingMode, Provenance,
};
use serde::{Deserialize, Serialize};

/// Scores for one discrete belief state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateReport {
    pub labels: Vec<String>,
    pub probs: Vec<f64>,
    pub ordering: OrderingMode,
    pub window: InterestWindow,
    pub score: KnowledgeScore,
    /// Present when a weighting order above zero was requested.
    pub weighted: Option<KnowledgeScore>,
    pub entropy: EntropyReport,
}

/// Scores for one sampled density.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub lo: f64,
    pub hi: f64,
    pub samples: usize,
    pub window: InterestWindow,
    pub score: KnowledgeScore,
    pub weighted: Option<KnowledgeScore>,
    pub shannon: f64,
    pub std_dev: f64,
}

/// One belief state's row in a timeline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimelineStateRow {
    pub name: String,
    pub resource: f64,
    pub probs: Vec<f64>,
    pub sum: f64,
    pub shannon: f64,
    pub mark: f64,
}

/// One sampled point of the missing-knowledge curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignatureRow {
    pub resource: f64,
    pub mark: f64,
    pub shannon_normalized: f64,
}

/// Cost-per-knowledge readings along the curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntractabilityReport {
    /// One entry per consecutive pair of signature points; empty where the
    /// pair shows no progress.
    pub apparent: Vec<Option<f64>>,
    pub local: LocalIntractability,
    /// Whole-curve integral; absent when the curve does not span the full
    /// knowledge axis.
    pub overall: Option<f64>,
}

/// Scores for a sequence of belief states over a solving effort.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimelineReport {
    pub labels: Vec<String>,
    pub ordering: OrderingMode,
    pub window: InterestWindow,
    pub normalized: bool,
    pub states: Vec<TimelineStateRow>,
    pub signature: Vec<SignatureRow>,
    pub intractability: IntractabilityReport,
}

/// One node of a scored choice tree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeNodeRow {
    pub label: String,
    pub depth: usize,
    pub prob: f64,
    /// Branch-challenge score at this node; leaves pose no challenge.
    pub challenge: Option<KnowledgeScore>,
}

/// One fully specified generation of a choice tree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeGenerationRow {
    pub level: usize,
    pub labels: Vec<String>,
    pub probs: Vec<f64>,
    pub score: KnowledgeScore,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeReport {
    pub depth: usize,
    pub nodes: Vec<TreeNodeRow>,
    pub generations: Vec<TreeGenerationRow>,
}

/// One candidate in its final arranged position.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderRow {
    pub position: usize,
    pub label: String,
    pub rank: Option<u32>,
    pub prob: f64,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderReport {
    pub candidates: Vec<OrderRow>,
}
