//! Kuhn poker: 3-card deck (J, Q, K), one-chip ante, one-chip bet.
//!
//! Chance deals one private card to each player in turn, then a single
//! betting round. With no outstanding bet the actions are `call` (check) and
//! `raise` (bet); facing a bet they are `fold` and `call`. Action order is
//! fold < call < raise; chance actions are card ids 0..3 in ascending order.

use super::{Action, Observation, Seat, ToAct, CALL, FOLD, RAISE};

const NO_CARD: u8 = 0xff;

#[derive(Debug, Clone)]
pub(crate) struct KuhnState {
    pub cards: [u8; 2],
    pub commits: [f64; 2],
    /// Betting line so far: empty, [check], [bet], [check, bet].
    pub line: Vec<u8>,
    pub winner: Option<Seat>,
    pub showdown: bool,
}

pub(crate) fn initial() -> KuhnState {
    KuhnState {
        cards: [NO_CARD, NO_CARD],
        commits: [1.0, 1.0],
        line: Vec::new(),
        winner: None,
        showdown: false,
    }
}

fn deal_stage(s: &KuhnState) -> Option<usize> {
    (0..2).find(|&i| s.cards[i] == NO_CARD)
}

fn facing_bet(s: &KuhnState) -> bool {
    s.line.last() == Some(&1)
}

pub(crate) fn legal_actions(s: &KuhnState) -> Vec<Action> {
    if let Some(i) = deal_stage(s) {
        return (0..3u16)
            .filter(|&c| s.cards[1 - i] != c as u8)
            .map(Action)
            .collect();
    }
    if facing_bet(s) {
        vec![FOLD, CALL]
    } else {
        vec![CALL, RAISE]
    }
}

pub(crate) fn chance_outcomes(s: &KuhnState) -> Vec<(Action, f64)> {
    let acts = legal_actions(s);
    let p = 1.0 / acts.len() as f64;
    acts.into_iter().map(|a| (a, p)).collect()
}

fn actor(s: &KuhnState) -> Seat {
    if s.line.len() % 2 == 0 {
        Seat::P1
    } else {
        Seat::P2
    }
}

pub(crate) fn step(s: &mut KuhnState, a: Action, to_act: &mut ToAct) -> Observation {
    if let Some(i) = deal_stage(s) {
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

    let seat = actor(s);
    let me = seat.index();
    match a {
        FOLD => {
            s.winner = Some(seat.other());
            *to_act = ToAct::Terminal;
        }
        CALL => {
            let owed = s.commits[1 - me] - s.commits[me];
            s.commits[me] += owed;
            if facing_bet(s) || !s.line.is_empty() {
                // Calling a bet, or a check behind, ends the hand.
                s.showdown = true;
                *to_act = ToAct::Terminal;
            } else {
                s.line.push(0);
                *to_act = ToAct::Player(seat.other());
            }
        }
        RAISE => {
            s.commits[me] = s.commits[1 - me] + 1.0;
            s.line.push(1);
            *to_act = ToAct::Player(seat.other());
        }
        _ => unreachable!(),
    }
    Observation::public_only(vec![2, seat.index() as u8, a.0 as u8])
}

pub(crate) fn terminal_utility(s: &KuhnState) -> [f64; 2] {
    let winner = if s.showdown {
        if s.cards[0] > s.cards[1] {
            Seat::P1
        } else {
            Seat::P2
        }
    } else {
        s.winner.expect("terminal kuhn state without outcome")
    };
    let loser = winner.other();
    let pot_won = s.commits[loser.index()];
    let mut u = [0.0; 2];
    u[winner.index()] = pot_won;
    u[loser.index()] = -pot_won;
    u
}

pub(crate) fn info_slot(s: &KuhnState, seat: Seat) -> u16 {
    let c = s.cards[seat.index()];
    if c == NO_CARD {
        0
    } else {
        c as u16
    }
}

pub(crate) const FEATURE_LEN: usize = 5;

pub(crate) fn public_features(s: &KuhnState, to_act: ToAct) -> Vec<f64> {
    let mut f = vec![0.0; FEATURE_LEN];
    f[0] = s.commits[0] / 2.0;
    f[1] = s.commits[1] / 2.0;
    match to_act {
        ToAct::Player(Seat::P1) => f[2] = 1.0,
        ToAct::Player(Seat::P2) => f[3] = 1.0,
        ToAct::Chance => f[4] = 1.0,
        ToAct::Terminal => {}
    }
    f
}

#[cfg(test)]
mod tests {
    use super::super::{Game, GameConfig};
    use super::*;

    fn game() -> Game {
        Game::new(GameConfig::Kuhn).unwrap()
    }

    #[test]
    fn initial_deal_is_uniform_over_three_cards() {
        let g = game();
        let w = g.initial_state();
        let outs = g.chance_outcomes(&w).unwrap();
        assert_eq!(outs.len(), 3);
        for (_, p) in &outs {
            assert!((p - 1.0 / 3.0).abs() < 1e-12);
        }
        let total: f64 = outs.iter().map(|(_, p)| p).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn second_deal_excludes_first_card() {
        let g = game();
        let w = g.initial_state();
        let (w, _) = g.step(&w, Action(1)).unwrap();
        let outs = g.chance_outcomes(&w).unwrap();
        assert_eq!(outs.len(), 2);
        assert!(outs.iter().all(|(a, _)| a.0 != 1));
    }

    #[test]
    fn betting_lines_and_utilities() {
        let g = game();
        let w = g.initial_state();
        let (w, _) = g.step(&w, Action(2)).unwrap(); // P1 gets K
        let (w, _) = g.step(&w, Action(0)).unwrap(); // P2 gets J
        assert_eq!(w.to_act(), ToAct::Player(Seat::P1));
        assert_eq!(g.legal_actions(&w).unwrap(), vec![CALL, RAISE]);

        // check, bet, fold: P2 wins the bettor pot? No: P1 checks, P2 bets, P1 folds.
        let (w1, _) = g.step(&w, CALL).unwrap();
        assert_eq!(g.legal_actions(&w1).unwrap(), vec![CALL, RAISE]);
        let (w2, _) = g.step(&w1, RAISE).unwrap();
        assert_eq!(g.legal_actions(&w2).unwrap(), vec![FOLD, CALL]);
        let (w3, _) = g.step(&w2, FOLD).unwrap();
        assert_eq!(g.terminal_utility(&w3).unwrap(), [-1.0, 1.0]);

        // bet, call: showdown for 2 chips, K beats J.
        let (b1, _) = g.step(&w, RAISE).unwrap();
        let (b2, _) = g.step(&b1, CALL).unwrap();
        assert_eq!(g.terminal_utility(&b2).unwrap(), [2.0, -2.0]);

        // check, check: showdown for 1 chip.
        let (c1, _) = g.step(&w, CALL).unwrap();
        let (c2, _) = g.step(&c1, CALL).unwrap();
        assert_eq!(g.terminal_utility(&c2).unwrap(), [1.0, -1.0]);
    }

    #[test]
    fn opponent_card_is_hidden() {
        let g = game();
        let w = g.initial_state();
        // Two deals differing only in P2's card give P1 the same info key.
        let (a, _) = g.step(&w, Action(2)).unwrap();
        let (a1, _) = g.step(&a, Action(0)).unwrap();
        let (a2, _) = g.step(&a, Action(1)).unwrap();
        assert_eq!(a1.info_key(Seat::P1), a2.info_key(Seat::P1));
        assert_ne!(a1.info_key(Seat::P2), a2.info_key(Seat::P2));
        assert_eq!(a1.public_key(), a2.public_key());
    }
}
