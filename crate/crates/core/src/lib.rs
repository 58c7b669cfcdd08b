//! Analysis of complete choice datasets under models of limited consideration.

pub mod axioms;
pub mod classify;
pub mod cli;
pub mod consideration;
pub mod domain;
pub mod error;
pub mod oracle;
pub mod parse;
pub mod relations;
pub mod report;
pub mod revealed;

pub use error::{Error, Result};
