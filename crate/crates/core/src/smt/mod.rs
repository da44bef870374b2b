//! SMT-LIB serialization, solver processes and model decoding.

mod decode;
mod emit;
mod process;
pub mod sexp;

pub use decode::{decode_model, Machine};
pub use emit::emit_smtlib;
pub use process::{
    parse_response, solve, solve_cancellable, Model, SolverConfig, SolverOutcome, Value, Verdict, SOLVER_ENV,
};
