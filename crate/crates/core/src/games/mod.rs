//! Factored-observation game interface and the four concrete games.
//!
//! Every transition emits a private observation per player plus a public
//! observation. Information-state and public-state identity are running
//! 64-bit hashes over those observation byte sequences, so two histories
//! share a key exactly when the corresponding observation sequences match.

mod kuhn;
mod leduc;
mod scotland_yard;
mod tictactoe;

pub use scotland_yard::GLASSES_STATIONS;

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// One of the two players.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Seat {
    P1,
    P2,
}

impl Seat {
    pub fn other(self) -> Seat {
        match self {
            Seat::P1 => Seat::P2,
            Seat::P2 => Seat::P1,
        }
    }
    pub fn index(self) -> usize {
        match self {
            Seat::P1 => 0,
            Seat::P2 => 1,
        }
    }
    pub fn from_index(i: usize) -> Seat {
        match i {
            0 => Seat::P1,
            1 => Seat::P2,
            _ => panic!("bad seat index {i}"),
        }
    }
}

/// Who moves next in a world state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ToAct {
    Player(Seat),
    Chance,
    Terminal,
}

impl ToAct {
    pub fn player(self) -> Option<Seat> {
        match self {
            ToAct::Player(s) => Some(s),
            _ => None,
        }
    }
    pub fn is_terminal(self) -> bool {
        matches!(self, ToAct::Terminal)
    }
    pub fn is_chance(self) -> bool {
        matches!(self, ToAct::Chance)
    }
}

/// Game action identifier. Per-game meaning, with a fixed canonical ordering
/// documented in each game module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Action(pub u16);

/// Poker action ids shared by Kuhn and Leduc: fold < call < raise.
pub const FOLD: Action = Action(0);
pub const CALL: Action = Action(1);
pub const RAISE: Action = Action(2);

/// Factored observation emitted by one transition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Observation {
    pub private: [Vec<u8>; 2],
    pub public: Vec<u8>,
}

impl Observation {
    fn public_only(public: Vec<u8>) -> Self {
        Observation {
            private: [Vec::new(), Vec::new()],
            public,
        }
    }
}

/// Hashed identity of a history from each player's and the public view.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StateKeys {
    /// Per-player information-state key (hash of that player's private and
    /// public observation sequence).
    pub info: [u64; 2],
    /// Public-state key (hash of the public observation sequence).
    pub public: u64,
}

/// Fixed seed for observation hashing so keys are stable across runs.
pub const KEY_SEED: u64 = 0x9e37_79b9_7f4a_7c15;

const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;
const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;

#[inline]
fn fnv_init(seed: u64) -> u64 {
    FNV_OFFSET ^ seed
}

/// Extend a running FNV-1a hash with one length-prefixed byte chunk.
#[inline]
fn fnv_extend(mut h: u64, bytes: &[u8]) -> u64 {
    let len = bytes.len() as u64;
    for b in len.to_le_bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(FNV_PRIME);
    }
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(FNV_PRIME);
    }
    h
}

/// Full environment state. Replaying `history` from the initial state
/// reproduces the payload and all keys exactly.
#[derive(Debug, Clone)]
pub struct WorldState {
    pub(crate) to_act: ToAct,
    pub(crate) info_hash: [u64; 2],
    pub(crate) pub_hash: u64,
    pub(crate) history: Vec<Action>,
    pub(crate) payload: Payload,
}

#[derive(Debug, Clone)]
pub(crate) enum Payload {
    Kuhn(kuhn::KuhnState),
    Leduc(leduc::LeducState),
    Sy(scotland_yard::SyState),
    Ttt(tictactoe::TttState),
}

impl WorldState {
    pub fn to_act(&self) -> ToAct {
        self.to_act
    }
    pub fn is_terminal(&self) -> bool {
        self.to_act.is_terminal()
    }
    pub fn history(&self) -> &[Action] {
        &self.history
    }
    pub fn keys(&self) -> StateKeys {
        StateKeys {
            info: self.info_hash,
            public: self.pub_hash,
        }
    }
    pub fn public_key(&self) -> u64 {
        self.pub_hash
    }
    pub fn info_key(&self, seat: Seat) -> u64 {
        self.info_hash[seat.index()]
    }

    fn apply_observation(&mut self, obs: &Observation) {
        // Empty private chunks are skipped so that in perfect-information
        // games each player's observation stream equals the public stream
        // (and the keys coincide). Observation encodings are tag-prefixed,
        // which keeps interleaved streams unambiguous.
        for i in 0..2 {
            if !obs.private[i].is_empty() {
                self.info_hash[i] = fnv_extend(self.info_hash[i], &obs.private[i]);
            }
            self.info_hash[i] = fnv_extend(self.info_hash[i], &obs.public);
        }
        self.pub_hash = fnv_extend(self.pub_hash, &obs.public);
    }
}

/// Which game, plus per-game parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "id", rename_all = "snake_case")]
pub enum GameConfig {
    Kuhn,
    Leduc {
        /// Number of betting rounds (1..=4); standard Leduc is 2.
        #[serde(default = "leduc::default_rounds")]
        rounds: u8,
    },
    GlassesSy {
        /// Rounds before Mr. X wins by evasion; the glasses map uses 5.
        #[serde(default = "scotland_yard::default_round_limit")]
        round_limit: u8,
    },
    Tictactoe,
}

impl GameConfig {
    pub fn name(&self) -> &'static str {
        match self {
            GameConfig::Kuhn => "kuhn",
            GameConfig::Leduc { .. } => "leduc",
            GameConfig::GlassesSy { .. } => "glasses_sy",
            GameConfig::Tictactoe => "tictactoe",
        }
    }

    pub fn from_id(id: &str) -> Result<GameConfig> {
        match id {
            "kuhn" => Ok(GameConfig::Kuhn),
            "leduc" => Ok(GameConfig::Leduc { rounds: 2 }),
            "glasses_sy" => Ok(GameConfig::GlassesSy { round_limit: 5 }),
            "tictactoe" => Ok(GameConfig::Tictactoe),
            other => Err(Error::config(format!("unknown game id `{other}`"))),
        }
    }
}

/// A concrete game instance. All methods are pure functions of
/// (state, action); the instance itself is immutable and freely shared
/// across concurrent workers.
#[derive(Debug, Clone)]
pub struct Game {
    cfg: GameConfig,
}

impl Game {
    pub fn new(cfg: GameConfig) -> Result<Game> {
        match &cfg {
            GameConfig::Leduc { rounds } => {
                if !(1..=4).contains(rounds) {
                    return Err(Error::config(format!(
                        "leduc rounds must be in 1..=4, got {rounds}"
                    )));
                }
            }
            GameConfig::GlassesSy { round_limit } => {
                if !(1..=10).contains(round_limit) {
                    return Err(Error::config(format!(
                        "glasses_sy round_limit must be in 1..=10, got {round_limit}"
                    )));
                }
            }
            _ => {}
        }
        Ok(Game { cfg })
    }

    pub fn config(&self) -> &GameConfig {
        &self.cfg
    }

    pub fn name(&self) -> &'static str {
        self.cfg.name()
    }

    /// Initial world state: empty history, chance to act for the card games,
    /// player 1 for tic-tac-toe, Mr. X (player 1) for glasses Scotland Yard.
    pub fn initial_state(&self) -> WorldState {
        let (payload, to_act) = match &self.cfg {
            GameConfig::Kuhn => (Payload::Kuhn(kuhn::initial()), ToAct::Chance),
            GameConfig::Leduc { rounds } => (Payload::Leduc(leduc::initial(*rounds)), ToAct::Chance),
            GameConfig::GlassesSy { round_limit } => (
                Payload::Sy(scotland_yard::initial(*round_limit)),
                ToAct::Player(Seat::P1),
            ),
            GameConfig::Tictactoe => (Payload::Ttt(tictactoe::initial()), ToAct::Player(Seat::P1)),
        };
        WorldState {
            to_act,
            info_hash: [fnv_init(KEY_SEED), fnv_init(KEY_SEED)],
            pub_hash: fnv_init(KEY_SEED),
            history: Vec::new(),
            payload,
        }
    }

    /// Legal actions in canonical order (documented per game). Errors on
    /// terminal states.
    pub fn legal_actions(&self, w: &WorldState) -> Result<Vec<Action>> {
        if w.is_terminal() {
            return Err(Error::contract("legal_actions called on terminal state"));
        }
        Ok(match &w.payload {
            Payload::Kuhn(s) => kuhn::legal_actions(s),
            Payload::Leduc(s) => leduc::legal_actions(s),
            Payload::Sy(s) => scotland_yard::legal_actions(s),
            Payload::Ttt(s) => tictactoe::legal_actions(s),
        })
    }

    /// Apply an action, producing the successor state and the factored
    /// observations of the transition.
    pub fn step(&self, w: &WorldState, a: Action) -> Result<(WorldState, Observation)> {
        let legal = self.legal_actions(w)?;
        if !legal.contains(&a) {
            return Err(Error::contract(format!(
                "illegal action {:?} in {} state (legal: {:?})",
                a,
                self.name(),
                legal
            )));
        }
        let mut next = w.clone();
        next.history.push(a);
        let obs = match &mut next.payload {
            Payload::Kuhn(s) => kuhn::step(s, a, &mut next.to_act),
            Payload::Leduc(s) => leduc::step(s, a, &mut next.to_act),
            Payload::Sy(s) => scotland_yard::step(s, a, &mut next.to_act),
            Payload::Ttt(s) => tictactoe::step(s, a, &mut next.to_act),
        };
        next.apply_observation(&obs);
        Ok((next, obs))
    }

    /// Chance outcome distribution; probabilities sum to 1 within 1e-12.
    pub fn chance_outcomes(&self, w: &WorldState) -> Result<Vec<(Action, f64)>> {
        if !w.to_act.is_chance() {
            return Err(Error::contract("chance_outcomes called on non-chance state"));
        }
        Ok(match &w.payload {
            Payload::Kuhn(s) => kuhn::chance_outcomes(s),
            Payload::Leduc(s) => leduc::chance_outcomes(s),
            Payload::Sy(_) | Payload::Ttt(_) => unreachable!("no chance nodes in this game"),
        })
    }

    /// Per-player terminal utility; exactly zero-sum in all four games.
    pub fn terminal_utility(&self, w: &WorldState) -> Result<[f64; 2]> {
        if !w.is_terminal() {
            return Err(Error::contract("terminal_utility called on non-terminal state"));
        }
        Ok(match &w.payload {
            Payload::Kuhn(s) => kuhn::terminal_utility(s),
            Payload::Leduc(s) => leduc::terminal_utility(s),
            Payload::Sy(s) => scotland_yard::terminal_utility(s),
            Payload::Ttt(s) => tictactoe::terminal_utility(s),
        })
    }

    /// Keys derived from the full observation sequences since the initial
    /// state; deterministic across runs under the fixed hash seed.
    pub fn state_keys(&self, w: &WorldState) -> StateKeys {
        w.keys()
    }

    /// Largest absolute terminal utility; used to normalize value targets.
    pub fn max_abs_utility(&self) -> f64 {
        match &self.cfg {
            GameConfig::Kuhn => 2.0,
            GameConfig::Leduc { rounds } => {
                // Ante plus two raises per round at the per-round bet size.
                let mut commit = 1.0;
                for r in 0..*rounds {
                    commit += 2.0 * leduc::bet_size(r);
                }
                commit
            }
            GameConfig::GlassesSy { .. } => 1.0,
            GameConfig::Tictactoe => 1.0,
        }
    }

    /// Index of the belief-feature slot an information state occupies in
    /// network encodings (e.g. the private card, or Mr. X's station).
    pub fn info_slot(&self, w: &WorldState, seat: Seat) -> u16 {
        match &w.payload {
            Payload::Kuhn(s) => kuhn::info_slot(s, seat),
            Payload::Leduc(s) => leduc::info_slot(s, seat),
            Payload::Sy(s) => scotland_yard::info_slot(s, seat),
            Payload::Ttt(_) => 0,
        }
    }

    /// Number of belief-feature slots for a player.
    pub fn belief_slots(&self, seat: Seat) -> usize {
        match &self.cfg {
            GameConfig::Kuhn => 3,
            GameConfig::Leduc { .. } => 6,
            GameConfig::GlassesSy { .. } => match seat {
                Seat::P1 => GLASSES_STATIONS,
                Seat::P2 => 1,
            },
            GameConfig::Tictactoe => 1,
        }
    }

    /// Size of the action universe used for policy-head columns.
    pub fn action_universe(&self, seat: Seat) -> usize {
        match &self.cfg {
            GameConfig::Kuhn | GameConfig::Leduc { .. } => 3,
            GameConfig::GlassesSy { .. } => match seat {
                Seat::P1 => GLASSES_STATIONS,
                Seat::P2 => (GLASSES_STATIONS + 1) * (GLASSES_STATIONS + 1),
            },
            GameConfig::Tictactoe => 9,
        }
    }

    /// Column of an action in the policy-head universe.
    pub fn action_col(&self, seat: Seat, a: Action) -> usize {
        match &self.cfg {
            GameConfig::Kuhn | GameConfig::Leduc { .. } => a.0 as usize,
            GameConfig::GlassesSy { .. } => match seat {
                Seat::P1 => a.0 as usize - 1,
                Seat::P2 => a.0 as usize,
            },
            GameConfig::Tictactoe => a.0 as usize,
        }
    }

    /// Public-state feature vector; identical across all histories that share
    /// a public key.
    pub fn public_features(&self, w: &WorldState) -> Vec<f64> {
        match &w.payload {
            Payload::Kuhn(s) => kuhn::public_features(s, w.to_act),
            Payload::Leduc(s) => leduc::public_features(s, w.to_act),
            Payload::Sy(s) => scotland_yard::public_features(s, w.to_act),
            Payload::Ttt(s) => tictactoe::public_features(s, w.to_act),
        }
    }

    pub fn public_feature_len(&self) -> usize {
        match &self.cfg {
            GameConfig::Kuhn => kuhn::FEATURE_LEN,
            GameConfig::Leduc { .. } => leduc::FEATURE_LEN,
            GameConfig::GlassesSy { .. } => scotland_yard::FEATURE_LEN,
            GameConfig::Tictactoe => tictactoe::FEATURE_LEN,
        }
    }
}
