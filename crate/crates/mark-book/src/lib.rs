//! Doc-test harness for the guide under `book/`.
//!
//! mdbook renders the chapters but cannot compile their code blocks
//! against the workspace crates, so each chapter is also included here as
//! a module doc comment. `cargo test --doc` then builds and runs every
//! `rust` block, keeping the guide honest. One module per chapter, so a
//! failing test names the chapter it came from.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/belief-states.md")]
pub mod belief_states {}

#[doc = include_str!("../../../book/src/windows-and-pi.md")]
pub mod windows_and_pi {}

#[doc = include_str!("../../../book/src/knowledge-metrics.md")]
pub mod knowledge_metrics {}

#[doc = include_str!("../../../book/src/ordering.md")]
pub mod ordering {}

#[doc = include_str!("../../../book/src/choice-trees.md")]
pub mod choice_trees {}

#[doc = include_str!("../../../book/src/comparators.md")]
pub mod comparators {}

#[doc = include_str!("../../../book/src/tracking.md")]
pub mod tracking {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
