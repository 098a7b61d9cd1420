//! Positive allowable Lefschetz fibrations on resolutions and fillings of
//! quotient surface singularities, with a certifying word-problem engine for
//! planar pages.

pub mod chains;
pub mod invariants;
pub mod par;
pub mod plumbing;
pub mod mcg;
pub mod palf;
pub mod relations;
pub mod text;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("certificate rejected: {0}")]
    Certificate(String),
}
