//! Independent decision procedures used to verify synthesized machines.

pub mod edit;
pub mod energy;
pub mod equiv;
pub mod hoare;
pub mod language;

pub use edit::{edit_distance, edit_distance_syms, mean_edit_distance};
pub use energy::{
    check_mean_aggregate, check_mean_aggregate_lookahead, check_total_aggregate, check_total_aggregate_lookahead,
    CostVerdict,
};
pub use equiv::find_distinguishing_input;
pub use hoare::{hoare_check, hoare_check_lookahead, HoareVerdict};
pub use language::{bad_inputs, bad_inputs_lookahead, output_language};
