//! Synthesis and repair of finite state transducers from examples, regular
//! input/output types and edit-distance bounds.
//!
//! Specifications are compiled to quantifier-free integer constraints,
//! handed to an external SMT-LIB solver, and every decoded machine is
//! re-checked by the exact procedures in [`oracle`].

pub mod alphabet;
pub mod automata;
pub mod driver;
pub mod encoder;
pub mod error;
pub mod fixtures;
pub mod oracle;
pub mod random;
pub mod repair;
pub mod smt;
pub mod symbolic;

pub use alphabet::{Alphabet, Sym};
pub use automata::{compile_regex, restrict_union, BoolOp, Dfa, DomainRestrictedFt, Ft, LookaheadFt, Nfa, Regex};
pub use driver::{
    deepening_synthesize, synthesize, synthesize_with_lookahead, AlphabetSpec, Deepening, DistanceBound, Outcome,
    PinnedTransition, Solution, SynthesisResult, SynthesisSpec, TypeSpec,
};
pub use error::{Error, Result};
pub use repair::{
    localize_faults, repair_from_input, repair_with_template, Faulty, RepairOutcome, RepairProblem, RepairResult,
};
pub use smt::{Machine, SolverConfig};

/// Exact rationals used for mean distance bounds.
pub type Rational = num_rational::Ratio<i64>;
