//! Symbolic automata and transducers with interval guards, and their
//! finitization over minterms.

pub mod interval;
pub mod minterm;
pub mod sfa;
pub mod sft;

pub use interval::{IntervalPred, ASCII};
pub use minterm::{compute_minterms, MintermMap};
pub use sfa::{finitize_sfa, finitize_sfa_with, Sfa, SfaTransition};
pub use sft::{finitize_sft, finitize_sft_with, recover_sft, OutputFunc, Sft, SftTransition};
