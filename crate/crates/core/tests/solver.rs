//! Full-tree solver checks against independent oracles.

use gtcfr::cfr::{solve_full, SolveOptions};
use gtcfr::eval::{
    best_response_value, exploitability, sequence_form_best_response, uniform_policy_table,
};
use gtcfr::games::{Game, GameConfig, Seat};

#[test]
fn kuhn_value_and_convergence() {
    let game = Game::new(GameConfig::Kuhn).unwrap();
    let opts = SolveOptions {
        iterations: 10_000,
        target_exploitability: None,
        check_every: 0,
    };
    let report = solve_full(&game, &opts).unwrap();
    let e = exploitability(&game, &report.policy).unwrap();
    assert!(e < 1e-3, "kuhn exploitability {e}");

    // Game value for player 1 is -1/18 chips; bracket it with both players'
    // best responses (the bracket width is twice the exploitability).
    let v = report.game_value;
    assert!((v[0] + v[1]).abs() < 1e-12);
    assert!(
        (v[0] + 1.0 / 18.0).abs() < 1e-3,
        "kuhn value {} vs -1/18",
        v[0]
    );
    let bv1 = best_response_value(&game, &report.policy, Seat::P1).unwrap();
    let bv2 = best_response_value(&game, &report.policy, Seat::P2).unwrap();
    assert!(-bv2 - 1e-9 <= -1.0 / 18.0 + e && -1.0 / 18.0 <= bv1 + 1e-9);
}

#[test]
fn best_response_implementations_agree() {
    let game = Game::new(GameConfig::Kuhn).unwrap();
    let table = uniform_policy_table(&game).unwrap();
    for seat in [Seat::P1, Seat::P2] {
        let a = best_response_value(&game, &table, seat).unwrap();
        let b = sequence_form_best_response(&game, &table, seat).unwrap();
        assert!((a - b).abs() < 1e-9, "{a} vs {b}");
    }

    let leduc = Game::new(GameConfig::Leduc { rounds: 2 }).unwrap();
    let table = uniform_policy_table(&leduc).unwrap();
    for seat in [Seat::P1, Seat::P2] {
        let a = best_response_value(&leduc, &table, seat).unwrap();
        let b = sequence_form_best_response(&leduc, &table, seat).unwrap();
        assert!((a - b).abs() < 1e-9, "{a} vs {b}");
    }
}

#[test]
fn always_fold_is_exploited_for_the_antes() {
    let game = Game::new(GameConfig::Leduc { rounds: 2 }).unwrap();
    // A player that folds at every decision loses their ante.
    let mut table = uniform_policy_table(&game).unwrap();
    for row in table.values_mut() {
        for (i, a) in row.actions.iter().enumerate() {
            row.probs[i] = if *a == gtcfr::games::FOLD { 1.0 } else { 0.0 };
        }
    }
    let bv1 = best_response_value(&game, &table, Seat::P1).unwrap();
    let bv2 = best_response_value(&game, &table, Seat::P2).unwrap();
    assert!((bv1 - 1.0).abs() < 1e-9, "bv1 {bv1}");
    assert!((bv2 - 1.0).abs() < 1e-9, "bv2 {bv2}");
}
