//! Growing-tree CFR with counterfactual value-and-policy learning on small
//! perfect- and imperfect-information games.
//!
//! The crate provides:
//! - four factored-observation games (Kuhn poker, Leduc poker, glasses-map
//!   Scotland Yard, tic-tac-toe) behind one interface ([`games`]),
//! - public belief states and the growing public tree ([`tree`]),
//! - public-tree CFR with regret-matching+ and a full-tree solver ([`cfr`]),
//! - GT-CFR search with PUCT-guided expansion ([`gtcfr`]),
//! - safe continual re-solving via the gadget game ([`resolving`]),
//! - a from-scratch value-and-policy network, training losses, optimizers,
//!   checkpoints, and exact oracle evaluators ([`net`]),
//! - sound self-play data generation with replay and query buffers
//!   ([`selfplay`]),
//! - exact best response, exploitability, seeded breadth-first policy
//!   composition, match running, and ratings ([`eval`]).
//!
//! Data-parallel sections run on rayon with the default `parallel` feature
//! and fall back to sequential execution without it.

pub mod cfr;
pub mod error;
pub mod exec;
pub mod eval;
pub mod games;
pub mod tree;

pub use error::{Error, Result};

/// Mix a base seed with a stream id into an independent 64-bit seed
/// (splitmix64 finalizer).
pub fn derive_seed(base: u64, stream: u64) -> u64 {
    let mut z = base ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
