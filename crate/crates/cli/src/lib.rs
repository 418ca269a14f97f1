//! Analysis documents, renderers, verifiers and the corpus runner behind the
//! `cdscope` binary.

pub mod corpus;
pub mod document;
pub mod dot;
pub mod names;
pub mod verify;
