//! Finite automata, transducers and regular expressions over a finite
//! alphabet.

pub mod dfa;
pub mod ft;
pub mod lookahead;
pub mod nfa;
pub mod regex;
pub mod restrict;

pub use dfa::{BoolOp, Dfa};
pub use ft::{Ft, Transition};
pub use lookahead::LookaheadFt;
pub use nfa::Nfa;
pub use regex::Regex;
pub use restrict::{restrict_union, DomainRestrictedFt};

use crate::alphabet::Alphabet;
use crate::error::Result;

/// Parses `pattern` and compiles it to a minimized total DFA.
pub fn compile_regex(pattern: &str, alphabet: &Alphabet) -> Result<Dfa> {
    Regex::parse(pattern, alphabet)?.compile(alphabet)
}
