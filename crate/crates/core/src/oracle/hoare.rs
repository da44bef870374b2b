use crate::automata::{Dfa, Ft, LookaheadFt};
use crate::error::Result;
use crate::oracle::language::{bad_inputs_lookahead, violation_product};

/// Outcome of checking `{P} T {Q}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HoareVerdict {
    Holds,
    /// A shortest input in `L(P)` whose image lies outside `L(Q)`.
    Counterexample(String),
}

impl HoareVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, HoareVerdict::Holds)
    }
}

/// Decides `{P} T {Q}` by BFS over the product of `P`, `T` and `Q`, where
/// `Q` is advanced through each transition's output.
pub fn hoare_check(p: &Dfa, t: &Ft, q: &Dfa) -> Result<HoareVerdict> {
    let prod = violation_product(p, t, q)?;
    Ok(match prod.witness() {
        None => HoareVerdict::Holds,
        Some(w) => HoareVerdict::Counterexample(w),
    })
}

/// [`hoare_check`] for transducers with lookahead.
pub fn hoare_check_lookahead(p: &Dfa, t: &LookaheadFt, q: &Dfa) -> Result<HoareVerdict> {
    Ok(match bad_inputs_lookahead(p, t, q)?.witness() {
        None => HoareVerdict::Holds,
        Some(w) => HoareVerdict::Counterexample(w),
    })
}
