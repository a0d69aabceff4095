//! Payoffs, best responses, equilibrium tests, the anti-coordination
//! potential, theorem-condition checkers and `(lambda, beta)` contour grids.

mod contour;
mod payoff;
mod potential;
mod report;
mod theorems;

pub use contour::{contour, ContourFn, ContourGrid};
pub use payoff::{
    best_response_set, is_best_response, is_nash, optimal_opinion, payoff, BestResponse, NashReport, ResponseOption,
    NASH_TOL,
};
pub use potential::{eta, potential, Potential};
pub use report::{ConditionRow, PartitionDegrees, Relation, TheoremId, TheoremReport, Verdict};
pub use theorems::{
    check, check_coordination_polarized, check_thm2, check_thm3, check_thm5, check_thm6, check_thm7, eq22_threshold,
    partition_degrees, thm2_thresholds, thm3_vn_threshold, thm3_vp_threshold, thm5_rhs, thm6_lhs, thm7_interval,
};
