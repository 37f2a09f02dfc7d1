//! Exact analysis of sign descriptions of simple linear recurrence
//! sequences, and model checking of prefix-independent omega-regular
//! properties against them.
//!
//! The crate is organised around a pipeline:
//!
//! * [`algebra`] — exact rational, polynomial and algebraic-number
//!   arithmetic with certified complex root isolation,
//! * [`lrs`] — recurrence sequences with exact term and sign evaluation
//!   and the usual closure operations (sum, product, polynomial images,
//!   arithmetic subsequences),
//! * [`spectrum`] — characteristic-root analysis: degeneracy period,
//!   normalized roots, dominant roots, and the asymptotic sign predictor,
//! * [`torus`] — multiplicative relations of the normalized roots and the
//!   orbit of the induced rotation on the torus subgroup they cut out,
//! * [`words`] — patterns, ultimately periodic words and the word-oracle
//!   interface,
//! * [`oracle`] — the word oracle for sign descriptions of simple LRS,
//! * [`automata`] — deterministic Muller automata, their transition
//!   monoid, and the fixpoint model-checking algorithm,
//! * [`formulas`] — semi-algebraic descriptions of the torus and of
//!   pattern-occurrence sets, emitted as SMT-LIB 2 text for an external
//!   solver.
//!
//! The crate is `no_std` + `alloc`; everything that needs an operating
//! system (files, subprocesses, the CLI) lives in the companion crate.

#![cfg_attr(not(any(test, feature = "std")), no_std)]
#![allow(clippy::new_without_default)]

extern crate alloc;

pub mod algebra;
pub mod automata;
pub mod formulas;
pub mod lrs;
pub mod oracle;
pub mod spectrum;
pub mod torus;
pub mod words;

pub use algebra::rational::Rational;

pub use lrs::{Lrs, Sign};
