//! Input file parsing: CSV and JSON forms of every subcommand's data.
//!
//! CSV suits hand-kept tables; the JSON envelope carries everything,
//! including quantities CSV cannot express (trees, densities, rank
//! panels, and a `config` block of defaults that command-line flags
//! override). Parsing is strict: unknown JSON fields, malformed numbers,
//! and shape mismatches are reported with their location rather than
//! guessed around.

use std::path::Path;

use mark::{ChoiceNode, OrderingMode, RankedCandidate};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

/// Output shape shared by every subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// Defaults block accepted inside a JSON input file. Flags win over these;
/// these win over built-in defaults.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub ioi: Option<f64>,
    pub iof: Option<f64>,
    pub ordering: Option<OrderingMode>,
    pub normalized: Option<bool>,
    pub percent: Option<bool>,
    pub log_base: Option<f64>,
    pub alpha: Option<Vec<f64>>,
    pub k: Option<u32>,
    pub format: Option<Format>,
}

/// Everything a JSON input file may carry. Which parts a subcommand
/// requires is checked at use, so one file can serve several commands.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonInput {
    /// Candidate labels, aligned with `probs`, `ranks`, and each state row.
    pub candidates: Option<Vec<String>>,
    /// Single belief state.
    pub probs: Option<Vec<f64>>,
    /// Expert ranks aligned with `candidates`; null marks an unranked one.
    pub ranks: Option<Vec<Option<u32>>>,
    /// Belief states over a solving effort.
    pub states: Option<Vec<JsonState>>,
    /// Hierarchical candidate space.
    pub tree: Option<JsonNode>,
    /// Sampled density over a bounded segment.
    pub density: Option<JsonDensity>,
    pub config: Option<FileConfig>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonState {
    pub name: Option<String>,
    pub resource: f64,
    pub probs: Vec<f64>,
}

/// Tree node. Internal probabilities may be omitted wholesale, in which
/// case each one is aggregated from the leaves under it.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonNode {
    pub label: String,
    pub prob: Option<f64>,
    #[serde(default)]
    pub children: Vec<JsonNode>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonDensity {
    pub lo: f64,
    pub hi: f64,
    pub samples: Vec<f64>,
}

/// A parsed input file, shape still unresolved.
pub enum Loaded {
    /// Boxed so the two variants stay close in size.
    Json(Box<JsonInput>),
    /// CSV rows, untyped; the subcommand knows which layout to expect.
    Csv(Vec<Vec<String>>),
}

impl Loaded {
    pub fn config(&self) -> FileConfig {
        match self {
            Loaded::Json(j) => j.config.clone().unwrap_or_default(),
            Loaded::Csv(_) => FileConfig::default(),
        }
    }
}

/// Reads a file as JSON or CSV by extension.
pub fn load(path: &Path) -> CliResult<Loaded> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") => {
            let parsed: JsonInput = serde_json::from_str(&text)
                .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
            Ok(Loaded::Json(Box::new(parsed)))
        }
        Some("csv") => {
            let mut reader = csv::ReaderBuilder::new()
                .has_headers(false)
                .flexible(true)
                .from_reader(text.as_bytes());
            let mut rows: Vec<Vec<String>> = Vec::new();
            for (i, record) in reader.records().enumerate() {
                let record =
                    record.map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
                let row: Vec<String> = record.iter().map(|s| s.trim().to_string()).collect();
                if row.iter().all(|c| c.is_empty()) {
                    continue;
                }
                if !rows.is_empty() && row.len() != rows[0].len() {
                    return Err(CliError::input(format!(
                        "{}: row {} has {} fields, header has {}",
                        path.display(),
                        i + 1,
                        row.len(),
                        rows[0].len()
                    )));
                }
                rows.push(row);
            }
            if rows.is_empty() {
                return Err(CliError::input(format!("{}: empty file", path.display())));
            }
            Ok(Loaded::Csv(rows))
        }
        other => Err(CliError::input(format!(
            "{}: unsupported extension {:?}, expected .csv or .json",
            path.display(),
            other.unwrap_or("")
        ))),
    }
}

fn parse_prob(cell: &str, what: &str) -> CliResult<f64> {
    cell.parse::<f64>()
        .map_err(|_| CliError::input(format!("{what}: not a number: {cell:?}")))
}

/// A single belief state with labels, plus any rank panel that came along.
pub struct StateInput {
    pub labels: Vec<String>,
    pub probs: Vec<f64>,
    pub ranks: Option<Vec<Option<u32>>>,
}

/// State layout: header row of labels, one row of probabilities.
pub fn state_from_csv(rows: &[Vec<String>]) -> CliResult<StateInput> {
    if rows.len() != 2 {
        return Err(CliError::input(format!(
            "state input needs a label row and one probability row, found {} rows",
            rows.len()
        )));
    }
    let labels = rows[0].clone();
    let probs = rows[1]
        .iter()
        .enumerate()
        .map(|(i, c)| parse_prob(c, &format!("column {} ({})", i + 1, labels[i])))
        .collect::<CliResult<Vec<f64>>>()?;
    Ok(StateInput {
        labels,
        probs,
        ranks: None,
    })
}

pub fn state_from_json(input: &JsonInput) -> CliResult<StateInput> {
    let probs = input
        .probs
        .clone()
        .ok_or_else(|| CliError::input("state input needs a \"probs\" array"))?;
    let labels = match &input.candidates {
        Some(c) if c.len() == probs.len() => c.clone(),
        Some(c) => {
            return Err(CliError::input(format!(
                "{} candidates for {} probabilities",
                c.len(),
                probs.len()
            )))
        }
        None => (1..=probs.len()).map(|i| i.to_string()).collect(),
    };
    if let Some(r) = &input.ranks {
        if r.len() != probs.len() {
            return Err(CliError::input(format!(
                "{} ranks for {} probabilities",
                r.len(),
                probs.len()
            )));
        }
    }
    Ok(StateInput {
        labels,
        probs,
        ranks: input.ranks.clone(),
    })
}

/// A sequence of named belief states with resource readings.
pub struct TimelineInput {
    pub labels: Vec<String>,
    pub states: Vec<(String, f64, Vec<f64>)>,
    pub ranks: Option<Vec<Option<u32>>>,
}

/// Timeline layout: `state,resource,<label...>` header, one row per state.
pub fn timeline_from_csv(rows: &[Vec<String>]) -> CliResult<TimelineInput> {
    let header = &rows[0];
    if header.len() < 4 || header[0] != "state" || header[1] != "resource" {
        return Err(CliError::input(
            "timeline header must be: state,resource,<candidate labels...> (at least two candidates)",
        ));
    }
    let labels: Vec<String> = header[2..].to_vec();
    if rows.len() < 3 {
        return Err(CliError::input(format!(
            "timeline needs at least two state rows, found {}",
            rows.len() - 1
        )));
    }
    let mut states = Vec::new();
    for (i, row) in rows[1..].iter().enumerate() {
        let name = row[0].clone();
        let resource = parse_prob(&row[1], &format!("row {} resource", i + 2))?;
        let probs = row[2..]
            .iter()
            .enumerate()
            .map(|(j, c)| parse_prob(c, &format!("row {} column {}", i + 2, j + 3)))
            .collect::<CliResult<Vec<f64>>>()?;
        states.push((name, resource, probs));
    }
    Ok(TimelineInput {
        labels,
        states,
        ranks: None,
    })
}

pub fn timeline_from_json(input: &JsonInput) -> CliResult<TimelineInput> {
    let states = input
        .states
        .as_ref()
        .ok_or_else(|| CliError::input("timeline input needs a \"states\" array"))?;
    if states.len() < 2 {
        return Err(CliError::input(format!(
            "timeline needs at least two states, found {}",
            states.len()
        )));
    }
    let n = states[0].probs.len();
    let labels = match &input.candidates {
        Some(c) if c.len() == n => c.clone(),
        Some(c) => {
            return Err(CliError::input(format!(
                "{} candidates for {} probabilities",
                c.len(),
                n
            )))
        }
        None => (1..=n).map(|i| i.to_string()).collect(),
    };
    if let Some(r) = &input.ranks {
        if r.len() != n {
            return Err(CliError::input(format!(
                "{} ranks for {} candidates",
                r.len(),
                n
            )));
        }
    }
    let rows = states
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let name = s.name.clone().unwrap_or_else(|| format!("s{}", i + 1));
            (name, s.resource, s.probs.clone())
        })
        .collect();
    Ok(TimelineInput {
        labels,
        states: rows,
        ranks: input.ranks.clone(),
    })
}

/// Converts the JSON tree into library nodes. When every internal
/// probability is present the tree is taken as specified; when all of
/// them are omitted the internal masses are aggregated from the leaves.
/// A mixture is rejected as ambiguous.
pub fn tree_from_json(input: &JsonInput) -> CliResult<(ChoiceNode, bool)> {
    let root = input
        .tree
        .as_ref()
        .ok_or_else(|| CliError::input("tree input needs a \"tree\" object"))?;

    fn scan(node: &JsonNode, present: &mut u32, absent: &mut u32) -> CliResult<()> {
        if node.children.is_empty() {
            if node.prob.is_none() {
                return Err(CliError::input(format!(
                    "leaf {:?} has no probability",
                    node.label
                )));
            }
        } else {
            match node.prob {
                Some(_) => *present += 1,
                None => *absent += 1,
            }
            for c in &node.children {
                scan(c, present, absent)?;
            }
        }
        Ok(())
    }
    let (mut present, mut absent) = (0, 0);
    scan(root, &mut present, &mut absent)?;
    if present > 0 && absent > 0 {
        return Err(CliError::input(
            "tree mixes specified and omitted internal probabilities; give all or none",
        ));
    }

    fn convert(node: &JsonNode) -> ChoiceNode {
        ChoiceNode::new(
            node.label.clone(),
            node.prob.unwrap_or(0.0),
            node.children.iter().map(convert).collect(),
        )
    }
    Ok((convert(root), absent > 0))
}

/// Order layout: `label,rank,prob` header, empty rank marks an unranked
/// candidate.
pub fn order_from_csv(rows: &[Vec<String>], percent: bool) -> CliResult<Vec<RankedCandidate>> {
    let header = &rows[0];
    if header.len() != 3 || header[0] != "label" || header[1] != "rank" || header[2] != "prob" {
        return Err(CliError::input(
            "order header must be exactly: label,rank,prob",
        ));
    }
    let mut out = Vec::new();
    for (i, row) in rows[1..].iter().enumerate() {
        let rank =
            if row[1].is_empty() {
                None
            } else {
                Some(row[1].parse::<u32>().map_err(|_| {
                    CliError::input(format!("row {}: not a rank: {:?}", i + 2, row[1]))
                })?)
            };
        let mut prob = parse_prob(&row[2], &format!("row {} prob", i + 2))?;
        if percent {
            prob /= 100.0;
        }
        out.push(RankedCandidate::new(row[0].clone(), rank, prob)?);
    }
    Ok(out)
}

pub fn order_from_json(input: &JsonInput, percent: bool) -> CliResult<Vec<RankedCandidate>> {
    let state = state_from_json(input)?;
    let ranks = state
        .ranks
        .ok_or_else(|| CliError::input("order input needs a \"ranks\" array"))?;
    let scale = if percent { 100.0 } else { 1.0 };
    state
        .labels
        .iter()
        .zip(&state.probs)
        .zip(&ranks)
        .map(|((label, &prob), &rank)| {
            RankedCandidate::new(label.clone(), rank, prob / scale).map_err(CliError::from)
        })
        .collect()
}
