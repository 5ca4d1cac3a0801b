use thiserror::Error;

/// Everything that can go wrong while building belief states or evaluating
/// metrics over them. Inputs are validated eagerly at construction, so the
/// metric functions themselves mostly fail on window or argument problems.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A belief line needs at least two candidates to pose a challenge.
    #[error("need at least two candidates, got {0}")]
    EmptyOrSingleton(usize),

    /// Probabilities must be nonnegative.
    #[error("negative probability {value} at position {index}")]
    NegativeProbability { index: usize, value: f64 },

    /// Density samples must be nonnegative.
    #[error("negative density sample {value} at position {index}")]
    NegativeDensity { index: usize, value: f64 },

    /// NaN or infinite value where a finite number is required.
    #[error("non-finite value at position {index}")]
    NonFinite { index: usize },

    /// Total probability mass is off and renormalization was not requested.
    #[error("mass sums to {sum}, expected 1 within {tolerance}")]
    SumMismatch { sum: f64, tolerance: f64 },

    /// 1-based candidate index outside the line.
    #[error("candidate index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    /// Continuous support must be a finite segment with `hi > lo`.
    #[error("bad support [{lo}, {hi}]")]
    BadSupport { lo: f64, hi: f64 },

    /// A sampled density needs at least two grid points.
    #[error("need at least two density samples, got {0}")]
    TooFewSamples(usize),

    /// Window or column width outside the belief.
    #[error("bad width {width} for span {span}")]
    BadWidth { width: f64, span: f64 },

    /// Interest window violates `0 < ioi <= iof` or exceeds the belief span.
    #[error("bad interest window ioi={ioi}, iof={iof}")]
    BadWindow { ioi: f64, iof: f64 },

    /// The total-ignorance anchor is saturated, so the normalized scale
    /// collapses (only possible for windows pinned at the full span).
    #[error("normalization anchor saturated: uniform ark = 1 under this window")]
    DegenerateScale,

    /// Profile vectors are inconsistent or violate monotonicity.
    #[error("bad profile: {0}")]
    BadProfile(String),

    /// Candidate labels must be unique.
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),

    /// Nothing to order.
    #[error("need at least two candidates to order, got {0}")]
    NoCandidates(usize),

    /// Labels of two structures that must agree do not.
    #[error("label mismatch: {0}")]
    LabelMismatch(String),

    /// Candidate probability is NaN, infinite, or negative.
    #[error("candidate {label:?} has invalid probability {value}")]
    BadCandidateProbability { label: String, value: f64 },

    /// Challenge posed at a node with no children.
    #[error("node {0:?} is a leaf, no branch challenge exists")]
    LeafNode(String),

    /// Children carry more mass than their parent allows.
    #[error("children of {label:?} sum to {children_sum}, exceeding {bound}")]
    ProbabilityOverflow {
        label: String,
        children_sum: f64,
        bound: f64,
    },

    /// Root of a choice tree must carry the full mass.
    #[error("root probability {0} is not 1")]
    BadRoot(f64),

    /// No such node label in the tree.
    #[error("no node labeled {0:?}")]
    UnknownLabel(String),

    /// Generation level outside 1..=depth.
    #[error("level {level} out of range 1..={depth}")]
    BadLevel { level: usize, depth: usize },

    /// Group split must satisfy `2 <= n` and `1 <= k < n`.
    #[error("bad group split k={k} of n={n}")]
    BadGroup { n: usize, k: usize },

    /// Entropy order must be positive and not exactly 1.
    #[error("bad entropy order alpha={0}")]
    BadAlpha(f64),

    /// Spread asked of a belief with no numeric axis.
    #[error("belief has no numeric axis")]
    NoAxis,

    /// Knowledge did not increase between the two points.
    #[error("no progress: mark went from {m1} to {m2}")]
    NoProgress { m1: f64, m2: f64 },

    /// Resource must move strictly forward.
    #[error("resource not increasing: {t1} then {t2}")]
    BadOrder { t1: f64, t2: f64 },

    /// Resource spend must be nonnegative.
    #[error("negative resource {0}")]
    NegativeResource(f64),

    /// Too few points for the requested analysis.
    #[error("need at least two usable points, got {0}")]
    TooShort(usize),

    /// Signature does not cover the full-ignorance-to-certainty range.
    #[error("signature spans mark {start} to {end}, not 1 to 0 within {tolerance}")]
    IncompleteSpan {
        start: f64,
        end: f64,
        tolerance: f64,
    },

    /// States in a trajectory disagree on candidates or ordering.
    #[error("inconsistent trajectory: {0}")]
    InconsistentCandidates(String),

    /// Mark argument outside [0, 1].
    #[error("mark {0} outside [0, 1]")]
    BadMark(f64),

    /// Damage or opportunity parameters out of order.
    #[error("bad risk parameters: {0}")]
    BadRiskParams(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
