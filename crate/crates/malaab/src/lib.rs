//! File formats, resource bundles and the command line for `malaab-core`.

pub mod bundle;
pub mod cli;
pub mod corpus;
pub mod render;
