//! Exact best response by expectimax over the responder's information-state
//! tree, plus an independent sequence-form evaluation used to cross-check
//! golden results.

use std::collections::HashMap;

use crate::cfr::{PolicyRow, PolicyTable};
use crate::error::{Error, Result};
use crate::games::{Game, Seat, ToAct, WorldState};

fn policy_probs(
    table: &PolicyTable,
    key: u64,
    n_actions: usize,
    reached: bool,
) -> Result<Vec<f64>> {
    match table.get(&key) {
        Some(row) => {
            if row.probs.len() != n_actions {
                return Err(Error::contract(format!(
                    "policy row for {key:#x} has {} probs for {n_actions} actions",
                    row.probs.len()
                )));
            }
            Ok(row.probs.clone())
        }
        None if !reached => Ok(vec![1.0 / n_actions as f64; n_actions]),
        None => Err(Error::contract(format!(
            "missing policy row for reached information state {key:#x}"
        ))),
    }
}

struct BrArena {
    states: Vec<WorldState>,
    /// Child index plus the opponent/chance weight on that edge (1.0 on
    /// responder edges).
    kids: Vec<Vec<(usize, f64)>>,
    /// Opponent-and-chance counterfactual reach of each history.
    reach_oc: Vec<f64>,
    /// Responder info key at responder decision nodes.
    info_key: Vec<u64>,
    /// All histories of each responder information state.
    groups: HashMap<u64, Vec<usize>>,
}

fn build_arena(
    game: &Game,
    opp_policy: &PolicyTable,
    responder: Seat,
) -> Result<BrArena> {
    let mut arena = BrArena {
        states: vec![game.initial_state()],
        kids: Vec::new(),
        reach_oc: vec![1.0],
        info_key: Vec::new(),
        groups: HashMap::new(),
    };
    let mut i = 0;
    while i < arena.states.len() {
        let state = arena.states[i].clone();
        let w = arena.reach_oc[i];
        let mut kids = Vec::new();
        let mut ikey = 0;
        match state.to_act() {
            ToAct::Terminal => {}
            ToAct::Chance => {
                for (a, p) in game.chance_outcomes(&state)? {
                    let (next, _) = game.step(&state, a)?;
                    let id = arena.states.len();
                    arena.states.push(next);
                    arena.reach_oc.push(w * p);
                    kids.push((id, p));
                }
            }
            ToAct::Player(seat) if seat == responder => {
                ikey = state.info_key(responder);
                arena.groups.entry(ikey).or_default().push(i);
                for a in game.legal_actions(&state)? {
                    let (next, _) = game.step(&state, a)?;
                    let id = arena.states.len();
                    arena.states.push(next);
                    arena.reach_oc.push(w);
                    kids.push((id, 1.0));
                }
            }
            ToAct::Player(opp) => {
                let actions = game.legal_actions(&state)?;
                let probs =
                    policy_probs(opp_policy, state.info_key(opp), actions.len(), w > 0.0)?;
                for (slot, a) in actions.iter().enumerate() {
                    let (next, _) = game.step(&state, *a)?;
                    let id = arena.states.len();
                    arena.states.push(next);
                    arena.reach_oc.push(w * probs[slot]);
                    kids.push((id, probs[slot]));
                }
            }
        }
        arena.kids.push(kids);
        arena.info_key.push(ikey);
        i += 1;
    }
    Ok(arena)
}

struct BrSolver<'a> {
    game: &'a Game,
    arena: &'a BrArena,
    responder: Seat,
    value: Vec<Option<f64>>,
    chosen: HashMap<u64, usize>,
}

impl<'a> BrSolver<'a> {
    fn value_of(&mut self, id: usize) -> Result<f64> {
        if let Some(v) = self.value[id] {
            return Ok(v);
        }
        let state = &self.arena.states[id];
        let v = match state.to_act() {
            ToAct::Terminal => {
                self.game.terminal_utility(state)?[self.responder.index()]
            }
            ToAct::Player(seat) if seat == self.responder => {
                let slot = self.chosen_action(self.arena.info_key[id])?;
                let (kid, _) = self.arena.kids[id][slot];
                self.value_of(kid)?
            }
            _ => {
                let mut total = 0.0;
                for &(kid, p) in &self.arena.kids[id] {
                    if p > 0.0 {
                        total += p * self.value_of(kid)?;
                    }
                }
                total
            }
        };
        self.value[id] = Some(v);
        Ok(v)
    }

    /// The best-response action maximizes the reach-weighted value across
    /// every history of the information state (the same action must be
    /// chosen everywhere in the state).
    fn chosen_action(&mut self, key: u64) -> Result<usize> {
        if let Some(&slot) = self.chosen.get(&key) {
            return Ok(slot);
        }
        let hists = self.arena.groups[&key].clone();
        let n_actions = self.arena.kids[hists[0]].len();
        let mut best = (0usize, f64::NEG_INFINITY);
        for a in 0..n_actions {
            let mut total = 0.0;
            for &h in &hists {
                let (kid, _) = self.arena.kids[h][a];
                total += self.arena.reach_oc[h] * self.value_of(kid)?;
            }
            if total > best.1 {
                best = (a, total);
            }
        }
        self.chosen.insert(key, best.0);
        Ok(best.0)
    }
}

/// Expected utility of the responder playing an exact best response against
/// the table's other-player policy.
pub fn best_response_value(game: &Game, opp_policy: &PolicyTable, responder: Seat) -> Result<f64> {
    let arena = build_arena(game, opp_policy, responder)?;
    let n = arena.states.len();
    let mut solver = BrSolver {
        game,
        arena: &arena,
        responder,
        value: vec![None; n],
        chosen: HashMap::new(),
    };
    solver.value_of(0)
}

/// Independent best-response evaluation in sequence form: dynamic program
/// over the responder's information-state tree, aggregating terminal payoffs
/// per (information state, action) sequence.
pub fn sequence_form_best_response(
    game: &Game,
    opp_policy: &PolicyTable,
    responder: Seat,
) -> Result<f64> {
    // Walk from a weighted set of histories through opponent and chance
    // segments: returns the terminal payoff collected plus the responder
    // information states encountered, each with its weighted histories.
    type Buckets = Vec<(u64, Vec<(WorldState, f64)>)>;
    fn walk_segment(
        game: &Game,
        opp_policy: &PolicyTable,
        responder: Seat,
        mut queue: Vec<(WorldState, f64)>,
    ) -> Result<(f64, Buckets)> {
        let mut constant = 0.0;
        let mut buckets: HashMap<u64, Vec<(WorldState, f64)>> = HashMap::new();
        let mut order: Vec<u64> = Vec::new();
        while let Some((state, w)) = queue.pop() {
            match state.to_act() {
                ToAct::Terminal => {
                    constant += w * game.terminal_utility(&state)?[responder.index()];
                }
                ToAct::Chance => {
                    for (a, p) in game.chance_outcomes(&state)? {
                        let (next, _) = game.step(&state, a)?;
                        queue.push((next, w * p));
                    }
                }
                ToAct::Player(seat) if seat == responder => {
                    let key = state.info_key(responder);
                    if !buckets.contains_key(&key) {
                        order.push(key);
                    }
                    buckets.entry(key).or_default().push((state, w));
                }
                ToAct::Player(opp) => {
                    let actions = game.legal_actions(&state)?;
                    let probs =
                        policy_probs(opp_policy, state.info_key(opp), actions.len(), w > 0.0)?;
                    for (slot, a) in actions.iter().enumerate() {
                        if probs[slot] > 0.0 || w == 0.0 {
                            let (next, _) = game.step(&state, *a)?;
                            queue.push((next, w * probs[slot]));
                        }
                    }
                }
            }
        }
        let out = order
            .into_iter()
            .map(|k| (k, buckets.remove(&k).unwrap()))
            .collect();
        Ok((constant, out))
    }

    fn infostate_value(
        game: &Game,
        opp_policy: &PolicyTable,
        responder: Seat,
        entries: &[(WorldState, f64)],
        memo: &mut HashMap<u64, f64>,
    ) -> Result<f64> {
        let key = entries[0].0.info_key(responder);
        if let Some(&v) = memo.get(&key) {
            return Ok(v);
        }
        let actions = game.legal_actions(&entries[0].0)?;
        let mut best = f64::NEG_INFINITY;
        for &a in &actions {
            let mut next_entries = Vec::with_capacity(entries.len());
            for (state, w) in entries {
                let (next, _) = game.step(state, a)?;
                next_entries.push((next, *w));
            }
            let (mut q, buckets) =
                walk_segment(game, opp_policy, responder, next_entries)?;
            for (_, group) in &buckets {
                q += infostate_value(game, opp_policy, responder, group, memo)?;
            }
            if q > best {
                best = q;
            }
        }
        memo.insert(key, best);
        Ok(best)
    }

    let init = vec![(game.initial_state(), 1.0)];
    let (mut value, buckets) = walk_segment(game, opp_policy, responder, init)?;
    let mut memo = HashMap::new();
    for (_, group) in &buckets {
        value += infostate_value(game, opp_policy, responder, group, &mut memo)?;
    }
    Ok(value)
}

/// Expected utility of both players under a joint policy table (uniform at
/// missing rows).
pub fn expected_value(game: &Game, policy: &PolicyTable) -> Result<[f64; 2]> {
    fn walk(game: &Game, policy: &PolicyTable, state: &WorldState, w: f64, acc: &mut [f64; 2]) -> Result<()> {
        if w == 0.0 {
            return Ok(());
        }
        match state.to_act() {
            ToAct::Terminal => {
                let u = game.terminal_utility(state)?;
                acc[0] += w * u[0];
                acc[1] += w * u[1];
            }
            ToAct::Chance => {
                for (a, p) in game.chance_outcomes(state)? {
                    let (next, _) = game.step(state, a)?;
                    walk(game, policy, &next, w * p, acc)?;
                }
            }
            ToAct::Player(seat) => {
                let actions = game.legal_actions(state)?;
                let probs = policy_probs(policy, state.info_key(seat), actions.len(), false)?;
                for (slot, a) in actions.iter().enumerate() {
                    let (next, _) = game.step(state, *a)?;
                    walk(game, policy, &next, w * probs[slot], acc)?;
                }
            }
        }
        Ok(())
    }
    let mut acc = [0.0; 2];
    walk(game, policy, &game.initial_state(), 1.0, &mut acc)?;
    Ok(acc)
}

/// A complete uniform-random policy table for the game.
pub fn uniform_policy_table(game: &Game) -> Result<PolicyTable> {
    let mut table = PolicyTable::new();
    let mut stack = vec![game.initial_state()];
    while let Some(state) = stack.pop() {
        match state.to_act() {
            ToAct::Terminal => {}
            ToAct::Chance => {
                for (a, _) in game.chance_outcomes(&state)? {
                    stack.push(game.step(&state, a)?.0);
                }
            }
            ToAct::Player(seat) => {
                let actions = game.legal_actions(&state)?;
                table.entry(state.info_key(seat)).or_insert_with(|| PolicyRow {
                    actions: actions.clone(),
                    probs: vec![1.0 / actions.len() as f64; actions.len()],
                });
                for a in actions {
                    stack.push(game.step(&state, a)?.0);
                }
            }
        }
    }
    Ok(table)
}
