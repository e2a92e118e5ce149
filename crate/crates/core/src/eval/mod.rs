//! Exact evaluation: best response and exploitability, seeded breadth-first
//! policy composition for search agents, head-to-head matches, and relative
//! ratings.

mod best_response;
mod ratings;

pub use best_response::{
    best_response_value, expected_value, sequence_form_best_response, uniform_policy_table,
};
pub use ratings::{relative_ratings, RatingReport};

use crate::cfr::PolicyTable;
use crate::error::Result;
use crate::games::Game;

/// Average best-response gain of both players against a joint policy:
/// (max_{pi_1'} u_1(pi_1', pi_2) + max_{pi_2'} u_2(pi_1, pi_2')) / 2.
/// Zero exactly at a Nash equilibrium; reported in chips (multiply by 1000
/// for Leduc milli-chips).
pub fn exploitability(game: &Game, policy: &PolicyTable) -> Result<f64> {
    let bv1 = best_response_value(game, policy, crate::games::Seat::P1)?;
    let bv2 = best_response_value(game, policy, crate::games::Seat::P2)?;
    Ok((bv1 + bv2) / 2.0)
}
