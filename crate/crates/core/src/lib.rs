//! Rule-based recognition of Arabic sport-venue names and their French rendering.
//!
//! The pipeline is a cascade over immutable resources:
//!
//! 1. [`recognizer::tokenize`] normalizes and segments every word against the
//!    Arabic [`lexicon::Lexicon`] (see [`morphology`]),
//! 2. [`grammar::scan`] runs the local-grammar transducers leftmost-longest,
//! 3. [`recognizer::recognize`] turns each match into a typed
//!    [`recognizer::ComponentTree`],
//! 4. [`translator::Translator`] transfers, reorders and agrees the components
//!    into a French name.
//!
//! Everything here is `no_std` with `alloc`; file and process IO live in the
//! `malaab` crate.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod evaluation;
pub mod grammar;
pub mod lexicon;
pub mod morphology;
pub mod pipeline;
pub mod recognizer;
pub mod resources;
pub mod token;
pub mod translator;

pub use pipeline::{Pipeline, PipelineError, TaggedDocument};
pub use resources::{ResourceError, Resources, Sources};
