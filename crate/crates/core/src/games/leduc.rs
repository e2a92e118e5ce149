//! Leduc poker: 6-card deck in two suits (J, Q, K), one-chip ante.
//!
//! Each player receives one private card, then `rounds` betting rounds with
//! a public board card revealed between rounds. The bet size is 2 chips in
//! the first round and doubles each round; at most two raises per round.
//! `fold`, `call` and `raise` are all offered whenever legal (folding with no
//! outstanding bet surrenders the pot). A pair with any board card beats a
//! high card; ties split. Action order is fold < call < raise; chance actions
//! are card ids 0..6 ascending (rank = id / 2, suit = id % 2).

use super::{Action, Observation, Seat, ToAct, CALL, FOLD, RAISE};

const NO_CARD: u8 = 0xff;
pub(crate) const DECK: usize = 6;

pub(crate) fn default_rounds() -> u8 {
    2
}

pub(crate) fn bet_size(round: u8) -> f64 {
    2.0 * f64::powi(2.0, round as i32)
}

#[derive(Debug, Clone)]
pub(crate) struct LeducState {
    pub rounds: u8,
    pub cards: [u8; 2],
    pub board: [u8; 3],
    pub board_len: u8,
    pub round: u8,
    pub commits: [f64; 2],
    pub raises_this_round: u8,
    /// Actions taken so far in the current betting round (0 = check).
    pub round_actions: u8,
    pub next_seat: Seat,
    pub winner: Option<Seat>,
    pub showdown: bool,
}

pub(crate) fn initial(rounds: u8) -> LeducState {
    LeducState {
        rounds,
        cards: [NO_CARD, NO_CARD],
        board: [NO_CARD; 3],
        board_len: 0,
        round: 0,
        commits: [1.0, 1.0],
        raises_this_round: 0,
        round_actions: 0,
        next_seat: Seat::P1,
        winner: None,
        showdown: false,
    }
}

#[derive(PartialEq)]
enum DealStage {
    Player(usize),
    Board,
    None,
}

fn deal_stage(s: &LeducState) -> DealStage {
    if s.cards[0] == NO_CARD {
        DealStage::Player(0)
    } else if s.cards[1] == NO_CARD {
        DealStage::Player(1)
    } else if (s.board_len as usize) < s.round as usize {
        DealStage::Board
    } else {
        DealStage::None
    }
}

fn remaining_deck(s: &LeducState) -> Vec<Action> {
    (0..DECK as u16)
        .filter(|&c| {
            let c = c as u8;
            s.cards[0] != c && s.cards[1] != c && !s.board[..s.board_len as usize].contains(&c)
        })
        .map(Action)
        .collect()
}

pub(crate) fn legal_actions(s: &LeducState) -> Vec<Action> {
    match deal_stage(s) {
        DealStage::Player(_) | DealStage::Board => remaining_deck(s),
        DealStage::None => {
            let mut acts = vec![FOLD, CALL];
            if s.raises_this_round < 2 {
                acts.push(RAISE);
            }
            acts
        }
    }
}

pub(crate) fn chance_outcomes(s: &LeducState) -> Vec<(Action, f64)> {
    let acts = remaining_deck(s);
    let p = 1.0 / acts.len() as f64;
    acts.into_iter().map(|a| (a, p)).collect()
}

fn facing_bet(s: &LeducState) -> bool {
    s.commits[0] != s.commits[1]
}

fn end_round(s: &mut LeducState, to_act: &mut ToAct) {
    if s.round + 1 < s.rounds {
        s.round += 1;
        s.raises_this_round = 0;
        s.round_actions = 0;
        s.next_seat = Seat::P1;
        *to_act = ToAct::Chance; // board card for the new round
    } else {
        s.showdown = true;
        *to_act = ToAct::Terminal;
    }
}

pub(crate) fn step(s: &mut LeducState, a: Action, to_act: &mut ToAct) -> Observation {
    match deal_stage(s) {
        DealStage::Player(i) => {
            s.cards[i] = a.0 as u8;
            let mut private = [Vec::new(), Vec::new()];
            private[i] = vec![1, i as u8, a.0 as u8];
            let public = vec![1, i as u8];
            *to_act = if i == 0 {
                ToAct::Chance
            } else {
                ToAct::Player(Seat::P1)
            };
            return Observation { private, public };
        }
        DealStage::Board => {
            s.board[s.board_len as usize] = a.0 as u8;
            s.board_len += 1;
            *to_act = ToAct::Player(s.next_seat);
            return Observation::public_only(vec![2, a.0 as u8]);
        }
        DealStage::None => {}
    }

    let seat = s.next_seat;
    let me = seat.index();
    match a {
        FOLD => {
            s.winner = Some(seat.other());
            *to_act = ToAct::Terminal;
        }
        CALL => {
            let was_facing = facing_bet(s);
            let owed = s.commits[1 - me] - s.commits[me];
            s.commits[me] += owed;
            s.round_actions += 1;
            if was_facing || s.round_actions >= 2 {
                end_round(s, to_act);
            } else {
                s.next_seat = seat.other();
                *to_act = ToAct::Player(s.next_seat);
            }
        }
        RAISE => {
            s.commits[me] = s.commits[1 - me] + bet_size(s.round);
            s.raises_this_round += 1;
            s.round_actions += 1;
            s.next_seat = seat.other();
            *to_act = ToAct::Player(s.next_seat);
        }
        _ => unreachable!(),
    }
    Observation::public_only(vec![3, seat.index() as u8, a.0 as u8])
}

fn rank(card: u8) -> u8 {
    card / 2
}

/// Hand strength: a pair with any board card outranks every high card.
fn strength(s: &LeducState, seat: Seat) -> u8 {
    let r = rank(s.cards[seat.index()]);
    let paired = s.board[..s.board_len as usize].iter().any(|&b| rank(b) == r);
    if paired {
        100 + r
    } else {
        r
    }
}

pub(crate) fn terminal_utility(s: &LeducState) -> [f64; 2] {
    if let Some(winner) = s.winner {
        let loser = winner.other();
        let pot_won = s.commits[loser.index()];
        let mut u = [0.0; 2];
        u[winner.index()] = pot_won;
        u[loser.index()] = -pot_won;
        return u;
    }
    debug_assert!(s.showdown);
    let (s1, s2) = (strength(s, Seat::P1), strength(s, Seat::P2));
    if s1 == s2 {
        return [0.0, 0.0];
    }
    let winner = if s1 > s2 { Seat::P1 } else { Seat::P2 };
    let loser = winner.other();
    let pot_won = s.commits[loser.index()];
    let mut u = [0.0; 2];
    u[winner.index()] = pot_won;
    u[loser.index()] = -pot_won;
    u
}

pub(crate) fn info_slot(s: &LeducState, seat: Seat) -> u16 {
    let c = s.cards[seat.index()];
    if c == NO_CARD {
        0
    } else {
        c as u16
    }
}

/// Board one-hots (3 slots x 6 cards + presence), commitments, raise count,
/// player to act.
pub(crate) const FEATURE_LEN: usize = 3 * (DECK + 1) + 2 + 3 + 3;

pub(crate) fn public_features(s: &LeducState, to_act: ToAct) -> Vec<f64> {
    let mut f = vec![0.0; FEATURE_LEN];
    for i in 0..s.board_len as usize {
        f[i * (DECK + 1) + s.board[i] as usize] = 1.0;
        f[i * (DECK + 1) + DECK] = 1.0;
    }
    let base = 3 * (DECK + 1);
    let scale = {
        let mut c = 1.0;
        for r in 0..s.rounds {
            c += 2.0 * bet_size(r);
        }
        c
    };
    f[base] = s.commits[0] / scale;
    f[base + 1] = s.commits[1] / scale;
    f[base + 2 + (s.raises_this_round.min(2) as usize)] = 1.0;
    let ta = base + 5;
    match to_act {
        ToAct::Player(Seat::P1) => f[ta] = 1.0,
        ToAct::Player(Seat::P2) => f[ta + 1] = 1.0,
        ToAct::Chance => f[ta + 2] = 1.0,
        ToAct::Terminal => {}
    }
    f
}

#[cfg(test)]
mod tests {
    use super::super::{Game, GameConfig};
    use super::*;

    fn game() -> Game {
        Game::new(GameConfig::Leduc { rounds: 2 }).unwrap()
    }

    #[test]
    fn deal_sequence_probabilities() {
        let g = game();
        let w = g.initial_state();
        let outs = g.chance_outcomes(&w).unwrap();
        assert_eq!(outs.len(), 6);
        assert!(outs.iter().all(|(_, p)| (p - 1.0 / 6.0).abs() < 1e-12));

        let (w, _) = g.step(&w, Action(0)).unwrap();
        let outs = g.chance_outcomes(&w).unwrap();
        assert_eq!(outs.len(), 5);
        assert!(outs.iter().all(|(_, p)| (p - 1.0 / 5.0).abs() < 1e-12));
    }

    #[test]
    fn board_after_two_private_cards_has_four_outcomes() {
        let g = game();
        let w = g.initial_state();
        let (w, _) = g.step(&w, Action(0)).unwrap();
        let (w, _) = g.step(&w, Action(1)).unwrap();
        // Round 1: both check to reach the board deal.
        let (w, _) = g.step(&w, CALL).unwrap();
        let (w, _) = g.step(&w, CALL).unwrap();
        assert!(w.to_act().is_chance());
        let outs = g.chance_outcomes(&w).unwrap();
        assert_eq!(outs.len(), 4);
        assert!(outs.iter().all(|(_, p)| (p - 0.25).abs() < 1e-12));
    }

    #[test]
    fn first_decision_offers_three_actions() {
        let g = game();
        let w = g.initial_state();
        let (w, _) = g.step(&w, Action(0)).unwrap();
        let (w, _) = g.step(&w, Action(2)).unwrap();
        assert_eq!(g.legal_actions(&w).unwrap(), vec![FOLD, CALL, RAISE]);
    }

    #[test]
    fn two_raises_cap_the_round() {
        let g = game();
        let w = g.initial_state();
        let (w, _) = g.step(&w, Action(0)).unwrap();
        let (w, _) = g.step(&w, Action(2)).unwrap();
        let (w, _) = g.step(&w, RAISE).unwrap();
        let (w, _) = g.step(&w, RAISE).unwrap();
        assert_eq!(g.legal_actions(&w).unwrap(), vec![FOLD, CALL]);
    }

    #[test]
    fn fold_pre_raise_loses_the_ante() {
        let g = game();
        let w = g.initial_state();
        let (w, _) = g.step(&w, Action(0)).unwrap();
        let (w, _) = g.step(&w, Action(2)).unwrap();
        let (w, _) = g.step(&w, FOLD).unwrap();
        assert_eq!(g.terminal_utility(&w).unwrap(), [-1.0, 1.0]);
    }

    #[test]
    fn pair_beats_high_card_at_showdown() {
        let g = game();
        let w = g.initial_state();
        let (w, _) = g.step(&w, Action(0)).unwrap(); // P1: J first suit
        let (w, _) = g.step(&w, Action(4)).unwrap(); // P2: K first suit
        let (w, _) = g.step(&w, CALL).unwrap();
        let (w, _) = g.step(&w, CALL).unwrap();
        let (w, _) = g.step(&w, Action(1)).unwrap(); // board: J second suit
        let (w, _) = g.step(&w, CALL).unwrap();
        let (w, _) = g.step(&w, CALL).unwrap();
        // P1 pairs the board with a jack and wins the antes.
        assert_eq!(g.terminal_utility(&w).unwrap(), [1.0, -1.0]);
    }

    #[test]
    fn raise_sizes_double_by_round() {
        let g = game();
        let w = g.initial_state();
        let (w, _) = g.step(&w, Action(0)).unwrap();
        let (w, _) = g.step(&w, Action(2)).unwrap();
        let (w, _) = g.step(&w, RAISE).unwrap(); // +2 in round 1
        let (w, _) = g.step(&w, CALL).unwrap();
        let (w, _) = g.step(&w, Action(4)).unwrap(); // board
        let (w, _) = g.step(&w, RAISE).unwrap(); // +4 in round 2
        let (w, _) = g.step(&w, CALL).unwrap();
        // commits: 1 ante + 2 + 4 each; P2 holds K high vs P1 J high.
        assert_eq!(g.terminal_utility(&w).unwrap(), [-7.0, 7.0]);
    }
}
