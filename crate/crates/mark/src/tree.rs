//! Choice trees: hierarchies of partial answers.
//!
//! Real searches rarely jump straight to the bottom candidates; they narrow
//! by stages (which branch, then which sub-branch). Each node carries the
//! probability that the right choice lies under it. Children need not
//! exhaust their parent: whatever is missing is mass the seeker has not
//! attributed to any listed branch.

use crate::belief::{DiscreteBelief, OrderingMode};
use crate::error::{Error, Result};
use crate::knowledge::{ark_nominal, KnowledgeScore};

const MASS_TOL: f64 = 1e-9;

/// One node: a label, the mass under it, and its sub-branches.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiceNode {
    label: String,
    prob: f64,
    children: Vec<ChoiceNode>,
}

impl ChoiceNode {
    pub fn new(label: impl Into<String>, prob: f64, children: Vec<ChoiceNode>) -> Self {
        Self {
            label: label.into(),
            prob,
            children,
        }
    }

    pub fn leaf(label: impl Into<String>, prob: f64) -> Self {
        Self::new(label, prob, Vec::new())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn prob(&self) -> f64 {
        self.prob
    }

    pub fn children(&self) -> &[ChoiceNode] {
        &self.children
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }
}

/// A validated tree: root mass 1, no node outweighed by its children, all
/// labels unique. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiceTree {
    root: ChoiceNode,
    depth: usize,
}

impl ChoiceTree {
    pub fn new(root: ChoiceNode) -> Result<Self> {
        if (root.prob - 1.0).abs() > MASS_TOL {
            return Err(Error::BadRoot(root.prob));
        }
        let mut labels = std::collections::BTreeSet::new();
        let mut depth = 0;
        let mut stack: Vec<(&ChoiceNode, usize)> = vec![(&root, 0)];
        while let Some((node, level)) = stack.pop() {
            depth = depth.max(level);
            if !node.prob.is_finite() || node.prob < 0.0 {
                return Err(Error::BadCandidateProbability {
                    label: node.label.clone(),
                    value: node.prob,
                });
            }
            if !labels.insert(node.label.as_str()) {
                return Err(Error::DuplicateLabel(node.label.clone()));
            }
            let child_sum: f64 = node.children.iter().map(|c| c.prob).sum();
            if child_sum > node.prob + MASS_TOL {
                return Err(Error::ProbabilityOverflow {
                    label: node.label.clone(),
                    children_sum: child_sum,
                    bound: node.prob,
                });
            }
            for c in &node.children {
                stack.push((c, level + 1));
            }
        }
        Ok(Self { root, depth })
    }

    /// Build the probabilities of internal nodes from their leaves: every
    /// non-leaf node's mass becomes the sum under it. Useful when only the
    /// bottom candidates have assessed probabilities.
    pub fn from_leaf_masses(root: ChoiceNode) -> Result<Self> {
        fn aggregate(node: &ChoiceNode) -> ChoiceNode {
            if node.is_leaf() {
                return node.clone();
            }
            let children: Vec<ChoiceNode> = node.children.iter().map(aggregate).collect();
            let prob = children.iter().map(|c| c.prob).sum();
            ChoiceNode {
                label: node.label.clone(),
                prob,
                children,
            }
        }
        Self::new(aggregate(&root))
    }

    pub fn root(&self) -> &ChoiceNode {
        &self.root
    }

    /// Deepest level present; the root is level 0.
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Nodes in depth-first order, children in listed order, each with its
    /// level. Deterministic, used for rendering.
    pub fn nodes(&self) -> Vec<(&ChoiceNode, usize)> {
        let mut out = Vec::new();
        fn walk<'a>(node: &'a ChoiceNode, level: usize, out: &mut Vec<(&'a ChoiceNode, usize)>) {
            out.push((node, level));
            for c in &node.children {
                walk(c, level + 1, out);
            }
        }
        walk(&self.root, 0, &mut out);
        out
    }

    pub fn find(&self, label: &str) -> Option<&ChoiceNode> {
        self.nodes()
            .into_iter()
            .map(|(n, _)| n)
            .find(|n| n.label == label)
    }

    /// The challenge posed at one node: which of its branches holds the
    /// right choice, or none of them?
    ///
    /// The belief lists each child's absolute mass plus an "elsewhere"
    /// entry for everything not under this node's children, and is arranged
    /// by descending probability, the canonical order for branch lines.
    pub fn node_challenge(&self, label: &str) -> Result<DiscreteBelief> {
        let node = self
            .find(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
        if node.is_leaf() {
            return Err(Error::LeafNode(label.to_string()));
        }
        let child_sum: f64 = node.children.iter().map(|c| c.prob).sum();
        if child_sum > 1.0 + MASS_TOL {
            return Err(Error::ProbabilityOverflow {
                label: label.to_string(),
                children_sum: child_sum,
                bound: 1.0,
            });
        }
        let mut probs: Vec<f64> = node.children.iter().map(|c| c.prob).collect();
        let mut labels: Vec<String> = node.children.iter().map(|c| c.label.clone()).collect();
        let mut elsewhere = String::from("elsewhere");
        while labels.iter().any(|l| l == &elsewhere) {
            elsewhere.push('*');
        }
        labels.push(elsewhere);
        probs.push((1.0 - child_sum).max(0.0));
        DiscreteBelief::with_labels(labels, probs, OrderingMode::ByProbability, false)
    }

    /// The challenge of naming the right node within one generation.
    ///
    /// Levels count from 1 (the root alone poses no challenge). The
    /// generation must carry the full mass, which holds whenever every
    /// branch is specified down to that level; partially specified
    /// generations fail the mass check.
    pub fn generational_belief(&self, level: usize) -> Result<DiscreteBelief> {
        if level < 1 || level > self.depth {
            return Err(Error::BadLevel {
                level,
                depth: self.depth,
            });
        }
        let mut probs = Vec::new();
        let mut labels = Vec::new();
        for (node, l) in self.nodes() {
            if l == level {
                probs.push(node.prob);
                labels.push(node.label.clone());
            }
        }
        DiscreteBelief::with_labels(labels, probs, OrderingMode::ByProbability, false)
    }
}

/// Knowledge in a pure partition question: "the answer is among `k` of the
/// `n` candidates". The two-entry line [k/n, (n-k)/n] (larger first) scores
/// its larger side, so an 80/20 split reads 0.8 and an even split reads the
/// ignorance floor 0.5.
pub fn grouping_knowledge(n: usize, k: usize) -> Result<KnowledgeScore> {
    if n < 2 || k < 1 || k >= n {
        return Err(Error::BadGroup { n, k });
    }
    let a = k as f64 / n as f64;
    let b = (n - k) as f64 / n as f64;
    let belief = DiscreteBelief::new(vec![a.max(b), a.min(b)], OrderingMode::Listed, false)?;
    ark_nominal(&belief)
}
