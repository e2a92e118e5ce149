//! Tic-tac-toe. All information is public; private observations are empty.
//! Actions are cell indices 0..9 in ascending order (row-major).

use super::{Action, Observation, Seat, ToAct};

#[derive(Debug, Clone)]
pub(crate) struct TttState {
    pub board: [u8; 9], // 0 empty, 1 = P1, 2 = P2
    pub next: Seat,
    pub winner: Option<Seat>,
}

pub(crate) fn initial() -> TttState {
    TttState {
        board: [0; 9],
        next: Seat::P1,
        winner: None,
    }
}

pub(crate) fn legal_actions(s: &TttState) -> Vec<Action> {
    (0..9u16).filter(|&c| s.board[c as usize] == 0).map(Action).collect()
}

const LINES: [[usize; 3]; 8] = [
    [0, 1, 2],
    [3, 4, 5],
    [6, 7, 8],
    [0, 3, 6],
    [1, 4, 7],
    [2, 5, 8],
    [0, 4, 8],
    [2, 4, 6],
];

fn line_won(board: &[u8; 9], mark: u8) -> bool {
    LINES
        .iter()
        .any(|l| l.iter().all(|&i| board[i] == mark))
}

pub(crate) fn step(s: &mut TttState, a: Action, to_act: &mut ToAct) -> Observation {
    let seat = s.next;
    let mark = seat.index() as u8 + 1;
    s.board[a.0 as usize] = mark;
    if line_won(&s.board, mark) {
        s.winner = Some(seat);
        *to_act = ToAct::Terminal;
    } else if s.board.iter().all(|&c| c != 0) {
        *to_act = ToAct::Terminal;
    } else {
        s.next = seat.other();
        *to_act = ToAct::Player(s.next);
    }
    Observation::public_only(vec![seat.index() as u8, a.0 as u8])
}

pub(crate) fn terminal_utility(s: &TttState) -> [f64; 2] {
    match s.winner {
        Some(Seat::P1) => [1.0, -1.0],
        Some(Seat::P2) => [-1.0, 1.0],
        None => [0.0, 0.0],
    }
}

pub(crate) const FEATURE_LEN: usize = 27 + 3;

pub(crate) fn public_features(s: &TttState, to_act: ToAct) -> Vec<f64> {
    let mut f = vec![0.0; FEATURE_LEN];
    for (i, &c) in s.board.iter().enumerate() {
        f[i * 3 + c as usize] = 1.0;
    }
    match to_act {
        ToAct::Player(Seat::P1) => f[27] = 1.0,
        ToAct::Player(Seat::P2) => f[28] = 1.0,
        ToAct::Chance => f[29] = 1.0,
        ToAct::Terminal => {}
    }
    f
}

#[cfg(test)]
mod tests {
    use super::super::{Game, GameConfig};
    use super::*;

    fn game() -> Game {
        Game::new(GameConfig::Tictactoe).unwrap()
    }

    #[test]
    fn empty_board_nine_actions_p1_to_act() {
        let g = game();
        let w = g.initial_state();
        assert_eq!(w.to_act(), ToAct::Player(Seat::P1));
        assert_eq!(g.legal_actions(&w).unwrap().len(), 9);
    }

    #[test]
    fn perfect_information_keys_coincide() {
        let g = game();
        let w = g.initial_state();
        let (w, obs) = g.step(&w, Action(4)).unwrap();
        assert!(obs.private[0].is_empty() && obs.private[1].is_empty());
        assert_eq!(obs.public, vec![0, 4]);
        // Private sequences are empty, so both info keys equal the public key.
        let keys = g.state_keys(&w);
        assert_eq!(keys.info[0], keys.public);
        assert_eq!(keys.info[1], keys.public);
        // Replays are bit-identical.
        let (w2, _) = g.step(&g.initial_state(), Action(4)).unwrap();
        assert_eq!(keys.info, g.state_keys(&w2).info);
        assert_eq!(keys.public, w2.public_key());
    }

    #[test]
    fn win_and_draw_utilities() {
        let g = game();
        let mut w = g.initial_state();
        for a in [0u16, 3, 1, 4, 2] {
            w = g.step(&w, Action(a)).unwrap().0;
        }
        assert!(w.is_terminal());
        assert_eq!(g.terminal_utility(&w).unwrap(), [1.0, -1.0]);

        let mut d = g.initial_state();
        for a in [0u16, 4, 8, 1, 7, 6, 2, 5, 3] {
            d = g.step(&d, Action(a)).unwrap().0;
        }
        assert!(d.is_terminal());
        assert_eq!(g.terminal_utility(&d).unwrap(), [0.0, 0.0]);
    }
}
