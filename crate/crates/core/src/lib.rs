//! Rotation groups of the regular convex polytopes, their mixes and comixes,
//! and the structure of the resulting (pre-)polytopes.

pub mod analyzer;
pub mod closed_form;
pub mod coset;
pub mod error;
pub mod group;
pub mod mixer;
pub mod oracle;
pub mod parse;
pub mod perm;
pub mod presentation;
pub mod report;
pub mod tables;

pub use error::{Error, Result};
