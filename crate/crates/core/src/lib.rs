//! A compiler from module-structured Prolog to JavaScript.
//!
//! The pipeline reads `.pl` modules ([`reader`]), normalizes clauses into
//! plain Horn clauses ([`normalize`]), resolves goals against module
//! imports ([`resolve`]), compiles each predicate into chunked code
//! ([`codegen`]) and serializes it as JavaScript that links against the
//! symbol-table runtime ([`emit`]). Foreign declarations are handled by
//! [`ffi`].
//!
//! [`interp`] is a small reference interpreter over source clauses and
//! [`machine`] executes the chunk IR directly; both are used to check the
//! compiler's transformations.

pub mod builtins;
pub mod bundle;
pub mod codegen;
pub mod emit;
pub mod error;
pub mod ffi;
pub mod interp;
pub mod lexer;
pub mod machine;
pub mod normalize;
pub mod ops;
pub mod parser;
pub mod pipeline;
pub mod prims;
pub mod reader;
pub mod resolve;
pub mod store;
pub mod term;
pub mod writer;

pub use error::{Error, Result, Warning};
