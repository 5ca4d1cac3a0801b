//! Implementation of the `mark` command line tool, exposed as a library
//! so integration tests can parse its reports back into typed form.

pub mod commands;
pub mod error;
pub mod input;
pub mod render;
pub mod report;
