//! Knowledge metrics over ordered belief states.
//!
//! The score at the center of this crate asks one question: if a seeker
//! had to bet on a contiguous range of candidates instead of a single
//! one, how much probability could the best such range capture? Averaged
//! over a span of range widths this becomes a measure of acquired
//! knowledge (`ark`), and its complement measures the knowledge still
//! missing (`mark`). Unlike entropy, the score depends on how candidates
//! are arranged: mass split across adjacent candidates is nearly as good
//! as mass on one of them, while the same mass scattered to opposite
//! ends of the line is not. That sensitivity is the feature. Entropies
//! and other arrangement-blind measures live in [`comparators`] for
//! side-by-side contrast.
//!
//! The main pieces:
//!
//! - [`DiscreteBelief`] and [`ContinuousBelief`] hold probability lines
//!   and sampled densities, validated at construction.
//! - [`pi_discrete`] and [`pi_continuous`] find the best window of a
//!   given width; [`pi_profile_discrete`] and [`pi_profile_continuous`]
//!   trace the whole width-to-mass curve.
//! - [`ark_discrete`], [`ark_continuous`], [`ark_nominal`], and
//!   [`ark_higher_order`] average a profile over an
//!   [`InterestWindow`] of widths; [`mark_normalized`] rescales the
//!   complement so uniform ignorance reads 1.
//! - [`order_composite`] and [`apply_ordering`] arrange candidates from
//!   expert rankings with probability tie-breaks.
//! - [`ChoiceTree`] scores hierarchical candidate spaces level by level
//!   and node by node.
//! - [`tracking`] follows the score across a solving effort: signatures,
//!   intractability readings, risk pricing, and curve distances.

pub mod belief;
pub mod comparators;
pub mod error;
pub mod knowledge;
mod numeric;
pub mod ordering;
pub mod pi;
pub mod tracking;
pub mod tree;
pub mod window;

pub use belief::{ContinuousBelief, DiscreteBelief, OrderingMode};
pub use comparators::{
    entropy_report, renyi, shannon_continuous, shannon_discrete, shannon_normalized,
    std_dev_continuous, std_dev_discrete, tsallis, AlphaValue, EntropyReport,
};
pub use error::{Error, Result};
pub use knowledge::{
    ark_continuous, ark_discrete, ark_higher_order, ark_nominal, mark_normalized, KnowledgeScore,
};
pub use ordering::{apply_ordering, order_composite, OrderedLine, Provenance, RankedCandidate};
pub use pi::{
    pi_continuous, pi_discrete, pi_profile_continuous, pi_profile_discrete, PiProfile, ProfileKind,
};
pub use tracking::{
    apparent_intractability, expected_damage, expected_opportunity, local_intractability,
    mark_series, overall_intractability, overall_intractability_with_tol, signature_distance,
    signature_distance_raw, LocalIntractability, LocalSegment, RiskParams, Signature,
    SignaturePoint, TrajectoryPoint,
};
pub use tree::{grouping_knowledge, ChoiceNode, ChoiceTree};
pub use window::InterestWindow;
