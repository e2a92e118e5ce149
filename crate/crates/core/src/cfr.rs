//! Public-tree CFR: regret-matching(+), one simultaneous down-up iteration
//! with linearly weighted policy averaging, and a standalone full-tree
//! solver used as an oracle.

use std::collections::HashMap;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::games::{Action, Game, Seat, ToAct};
use crate::tree::{
    leaf_view, LeafEvaluator, LeafValues, LeafView, NodeKind, PublicNode, SearchTree, NO_PARENT,
};

/// Regret-matching: positive-part normalization, uniform when all regrets
/// are non-positive. Invariant under positive rescaling of the regrets.
pub fn regret_matching(regrets: &[f64]) -> Result<Vec<f64>> {
    if regrets.is_empty() {
        return Err(Error::contract("regret_matching on empty action set"));
    }
    let total: f64 = regrets.iter().map(|r| r.max(0.0)).sum();
    if total > 0.0 {
        Ok(regrets.iter().map(|r| r.max(0.0) / total).collect())
    } else {
        Ok(vec![1.0 / regrets.len() as f64; regrets.len()])
    }
}

/// Regret-matching+ update: clamp the accumulator at zero after adding the
/// instantaneous regrets, then normalize. Returns the new policy.
pub fn regret_matching_plus_update(q: &mut [f64], r: &[f64]) -> Vec<f64> {
    debug_assert_eq!(q.len(), r.len());
    for (qi, ri) in q.iter_mut().zip(r) {
        *qi = (*qi + ri).max(0.0);
    }
    let total: f64 = q.iter().sum();
    if total > 0.0 {
        q.iter().map(|qi| qi / total).collect()
    } else {
        vec![1.0 / q.len() as f64; q.len()]
    }
}

/// A (β, v, p) record of one value-function call, sufficient to rebuild the
/// queried subgame later.
#[derive(Debug, Clone)]
pub struct QuerySnapshot {
    pub public_key: u64,
    pub info_keys: [Vec<u64>; 2],
    pub ranges: [Vec<f64>; 2],
    /// Action history and chance reach of every world state in the public
    /// state (replayable from the initial state).
    pub histories: Vec<(Vec<Action>, f64)>,
    pub values: [Vec<f64>; 2],
    pub priors: Vec<Vec<f64>>,
}

/// Collects value-function queries issued during a search.
#[derive(Debug)]
pub enum QuerySink {
    /// Discard queries (evaluation-time searches).
    None,
    /// Keep every query (tests, diagnostics).
    All(Vec<QuerySnapshot>),
    /// Uniform reservoir sample of `k` queries.
    Reservoir {
        k: usize,
        seen: u64,
        rng: ChaCha8Rng,
        buf: Vec<QuerySnapshot>,
    },
}

impl QuerySink {
    pub fn reservoir(k: usize, seed: u64) -> QuerySink {
        QuerySink::Reservoir {
            k,
            seen: 0,
            rng: ChaCha8Rng::seed_from_u64(seed),
            buf: Vec::with_capacity(k),
        }
    }

    pub fn offer_with(&mut self, make: impl FnOnce() -> QuerySnapshot) {
        match self {
            QuerySink::None => {}
            QuerySink::All(buf) => buf.push(make()),
            QuerySink::Reservoir { k, seen, rng, buf } => {
                *seen += 1;
                if buf.len() < *k {
                    buf.push(make());
                } else if *k > 0 {
                    let j = rng.gen_range(0..*seen);
                    if (j as usize) < *k {
                        buf[j as usize] = make();
                    }
                }
            }
        }
    }

    pub fn queries_seen(&self) -> u64 {
        match self {
            QuerySink::None => 0,
            QuerySink::All(buf) => buf.len() as u64,
            QuerySink::Reservoir { seen, .. } => *seen,
        }
    }

    pub fn into_vec(self) -> Vec<QuerySnapshot> {
        match self {
            QuerySink::None => Vec::new(),
            QuerySink::All(buf) => buf,
            QuerySink::Reservoir { buf, .. } => buf,
        }
    }
}

fn snapshot(node: &PublicNode, vals: &LeafValues) -> QuerySnapshot {
    QuerySnapshot {
        public_key: node.key,
        info_keys: [
            node.infos[0].iter().map(|i| i.key).collect(),
            node.infos[1].iter().map(|i| i.key).collect(),
        ],
        ranges: [node.range[0].clone(), node.range[1].clone()],
        histories: node
            .hists
            .iter()
            .map(|h| (h.state.history().to_vec(), h.chance_reach))
            .collect(),
        values: [vals.values[0].clone(), vals.values[1].clone()],
        priors: vals.priors.clone(),
    }
}

/// Exact evaluation of a terminal public state:
/// v_i(s_i) = sum over h in s_i of chance(h) * r_{-i}(s_{-i}(h)) * u_i(h).
pub fn terminal_values(node: &PublicNode, r1: &[f64], r2: &[f64]) -> Result<[Vec<f64>; 2]> {
    if node.kind != NodeKind::Terminal {
        return Err(Error::contract("terminal_values on non-terminal public state"));
    }
    let mut v = [vec![0.0; node.infos[0].len()], vec![0.0; node.infos[1].len()]];
    for h in &node.hists {
        let (i1, i2) = (h.info[0] as usize, h.info[1] as usize);
        v[0][i1] += h.chance_reach * r2[i2] * h.util[0];
        v[1][i2] += h.chance_reach * r1[i1] * h.util[1];
    }
    Ok(v)
}

/// Assign a node's ranges by propagating its parent's ranges through the
/// parent's current policy (acting player) or unchanged (the other player
/// and chance). Applies the node's range mix if present.
pub fn propagate_ranges_into(tree: &mut SearchTree, id: usize) -> Result<()> {
    if id == 0 {
        let root_ranges = tree.root_ranges.clone();
        let node = &mut tree.nodes[0];
        for p in 0..2 {
            node.range[p].copy_from_slice(&root_ranges[p]);
        }
        return Ok(());
    }
    let parent = tree.nodes[id]
        .parent
        .ok_or_else(|| Error::search("non-root node without parent"))?;
    debug_assert!(parent < id);
    let (head, tail) = tree.nodes.split_at_mut(id);
    let pnode = &head[parent];
    let node = &mut tail[0];
    for p in 0..2 {
        for j in 0..node.infos[p].len() {
            let info = &node.infos[p][j];
            debug_assert!(info.parent_info != NO_PARENT);
            let base = pnode.range[p][info.parent_info as usize];
            let factor = if info.parent_action != NO_PARENT {
                pnode.rows[info.parent_info as usize].current[info.parent_action as usize]
            } else {
                1.0
            };
            node.range[p][j] = base * factor;
        }
    }
    if let Some(mix) = node.mix.clone() {
        let p = mix.seat.index();
        for j in 0..node.range[p].len() {
            node.range[p][j] = mix.alpha * node.range[p][j] + (1.0 - mix.alpha) * mix.target[j];
        }
    }
    Ok(())
}

/// One simultaneous public-tree CFR iteration: ranges root-to-leaves,
/// terminal and frontier evaluation, counterfactual values leaves-to-root,
/// regret-matching+ updates and linear policy averaging (weight = iteration
/// index within this tree's run).
pub fn cfr_iteration(
    tree: &mut SearchTree,
    evaluator: &dyn LeafEvaluator,
    sink: &mut QuerySink,
) -> Result<()> {
    let t = (tree.iters_done + 1) as f64;
    pass(tree, evaluator, sink, None, t)?;
    tree.iters_done += 1;
    tree.weight_sum += t;
    Ok(())
}

/// One alternating CFR+ iteration: a full pass updating player 1's tables
/// against player 2's current policy, then the reverse. The faster-converging
/// classic solver rule, used by the full-tree oracle solver; GT-CFR's regret
/// phase uses the simultaneous rule.
pub fn cfr_iteration_alternating(
    tree: &mut SearchTree,
    evaluator: &dyn LeafEvaluator,
    sink: &mut QuerySink,
) -> Result<()> {
    let t = (tree.iters_done + 1) as f64;
    pass(tree, evaluator, sink, Some(Seat::P1), t / 2.0)?;
    pass(tree, evaluator, sink, Some(Seat::P2), t / 2.0)?;
    tree.iters_done += 1;
    tree.weight_sum += t;
    Ok(())
}

fn pass(
    tree: &mut SearchTree,
    evaluator: &dyn LeafEvaluator,
    sink: &mut QuerySink,
    update: Option<Seat>,
    avg_weight: f64,
) -> Result<()> {
    let t = (tree.iters_done + 1) as f64;
    let n = tree.nodes.len();

    // Downward: ranges and accumulator reset.
    for id in 0..n {
        propagate_ranges_into(tree, id)?;
        tree.nodes[id].zero_accumulators();
    }

    // Upward: values, regrets, policy updates.
    for id in (0..n).rev() {
        match tree.nodes[id].kind {
            NodeKind::Terminal => {
                let node = &mut tree.nodes[id];
                for hi in 0..node.hists.len() {
                    let h = &node.hists[hi];
                    let (i1, i2) = (h.info[0] as usize, h.info[1] as usize);
                    let add0 = h.chance_reach * node.range[1][i2] * h.util[0];
                    let add1 = h.chance_reach * node.range[0][i1] * h.util[1];
                    node.cfv[0][i1] += add0;
                    node.cfv[1][i2] += add1;
                }
            }
            NodeKind::Frontier => {
                let vals = {
                    let view = leaf_view(tree, id);
                    let vals = evaluator.evaluate(&view)?;
                    validate_leaf_values(&view, &vals)?;
                    vals
                };
                sink.offer_with(|| snapshot(&tree.nodes[id], &vals));
                let node = &mut tree.nodes[id];
                node.cfv[0].copy_from_slice(&vals.values[0]);
                node.cfv[1].copy_from_slice(&vals.values[1]);
                if !node.priors_set && !vals.priors.is_empty() {
                    set_priors(node, &vals.priors);
                }
            }
            NodeKind::Interior => {
                let node = &mut tree.nodes[id];
                if let ToAct::Player(seat) = node.to_act {
                    let s = seat.index();
                    let do_update = update.map_or(true, |u| u == seat);
                    for j in 0..node.rows.len() {
                        let reach = node.range[s][j];
                        let row = &mut node.rows[j];
                        let mut v_s = 0.0;
                        for a in 0..row.num_actions() {
                            if row.live[a] {
                                v_s += row.current[a] * row.cfv_action[a];
                            }
                        }
                        if do_update {
                            for a in 0..row.num_actions() {
                                if !row.live[a] {
                                    continue;
                                }
                                let r = row.cfv_action[a] - v_s;
                                row.regret[a] += r;
                                row.cum_policy[a] += t * reach * row.current[a];
                                row.qplus[a] = (row.qplus[a] + r).max(0.0);
                            }
                            // Next policy from the updated accumulator, masked
                            // to live actions; uniform over live when all zero.
                            let total: f64 = row
                                .qplus
                                .iter()
                                .zip(&row.live)
                                .filter(|(_, &l)| l)
                                .map(|(q, _)| *q)
                                .sum();
                            if total > 0.0 {
                                for a in 0..row.num_actions() {
                                    row.current[a] =
                                        if row.live[a] { row.qplus[a] / total } else { 0.0 };
                                }
                            } else {
                                let live_n = row.live.iter().filter(|&&l| l).count().max(1);
                                for a in 0..row.num_actions() {
                                    row.current[a] =
                                        if row.live[a] { 1.0 / live_n as f64 } else { 0.0 };
                                }
                            }
                        }
                        node.cfv[s][j] = v_s;
                    }
                }
                // Chance nodes and the non-acting player already accumulated
                // child values via pushes.
            }
        }

        // Weighted value averaging and push into the parent.
        let (parent, contributions) = {
            let node = &mut tree.nodes[id];
            for p in 0..2 {
                for j in 0..node.cfv[p].len() {
                    node.cfv_avg[p][j] += avg_weight * node.cfv[p][j];
                }
            }
            match node.parent {
                Some(pid) => {
                    let mut contribs: Vec<(usize, usize, u32, u32, f64)> = Vec::new();
                    for p in 0..2 {
                        for j in 0..node.infos[p].len() {
                            let info = &node.infos[p][j];
                            contribs.push((
                                p,
                                j,
                                info.parent_info,
                                info.parent_action,
                                node.cfv[p][j],
                            ));
                        }
                    }
                    (pid, contribs)
                }
                None => continue,
            }
        };
        for (p, _j, pi, pa, v) in contributions {
            let pnode = &mut tree.nodes[parent];
            if pa != NO_PARENT {
                pnode.rows[pi as usize].cfv_action[pa as usize] += v;
            } else {
                pnode.cfv[p][pi as usize] += v;
            }
        }
    }
    Ok(())
}

fn set_priors(node: &mut PublicNode, priors: &[Vec<f64>]) {
    if priors.len() != node.rows.len() {
        return;
    }
    for (row, p) in node.rows.iter_mut().zip(priors) {
        if p.len() == row.num_actions() {
            row.prior.copy_from_slice(p);
        }
    }
    node.priors_set = true;
}

fn validate_leaf_values(view: &LeafView<'_>, vals: &LeafValues) -> Result<()> {
    for p in 0..2 {
        if vals.values[p].len() != view.info_keys[p].len() {
            return Err(Error::search(format!(
                "evaluator returned {} values for {} information states",
                vals.values[p].len(),
                view.info_keys[p].len()
            )));
        }
        if vals.values[p].iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("leaf evaluator values".into()));
        }
    }
    Ok(())
}

/// Per-information-state policy row keyed by information-state key.
#[derive(Debug, Clone, PartialEq)]
pub struct PolicyRow {
    pub actions: Vec<Action>,
    pub probs: Vec<f64>,
}

/// A joint policy table over information-state keys.
pub type PolicyTable = HashMap<u64, PolicyRow>;

/// Extract the linearly averaged policy of every acting information state in
/// the tree. Rows sum to 1 within 1e-9; untouched rows fall back to uniform
/// over live actions.
pub fn average_policy(tree: &SearchTree) -> Result<PolicyTable> {
    if tree.iters_done == 0 {
        return Err(Error::contract("average_policy before any iteration"));
    }
    let mut table = PolicyTable::new();
    collect_average_policy(tree, &mut table);
    Ok(table)
}

pub(crate) fn collect_average_policy(tree: &SearchTree, table: &mut PolicyTable) {
    for node in &tree.nodes {
        if let ToAct::Player(seat) = node.to_act {
            for (j, row) in node.rows.iter().enumerate() {
                let key = node.infos[seat.index()][j].key;
                table.insert(key, average_row(row));
            }
        }
    }
}

pub(crate) fn average_row(row: &crate::tree::DecisionRow) -> PolicyRow {
    let total: f64 = row.cum_policy.iter().sum();
    let probs = if total > 0.0 {
        row.cum_policy.iter().map(|c| c / total).collect()
    } else {
        let live_n = row.live.iter().filter(|&&l| l).count();
        if live_n > 0 {
            row.live
                .iter()
                .map(|&l| if l { 1.0 / live_n as f64 } else { 0.0 })
                .collect()
        } else {
            vec![1.0 / row.num_actions() as f64; row.num_actions()]
        }
    };
    PolicyRow {
        actions: row.actions.clone(),
        probs,
    }
}

/// Linearly averaged counterfactual values at a node.
pub fn average_values(tree: &SearchTree, id: usize) -> [Vec<f64>; 2] {
    let node = &tree.nodes[id];
    let w = tree.weight_sum.max(1.0);
    [
        node.cfv_avg[0].iter().map(|v| v / w).collect(),
        node.cfv_avg[1].iter().map(|v| v / w).collect(),
    ]
}

/// Evaluator for trees with no frontier leaves (full trees); any call is a
/// structural bug.
pub struct NoLeaves;

impl LeafEvaluator for NoLeaves {
    fn evaluate(&self, view: &LeafView<'_>) -> Result<LeafValues> {
        Err(Error::search(format!(
            "unexpected frontier leaf {:#x} in a full tree",
            view.public_key
        )))
    }
}

/// Options for the standalone full-tree solver.
#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub iterations: u64,
    /// Stop early once average-policy exploitability falls below this.
    pub target_exploitability: Option<f64>,
    /// Exploitability check cadence (0 = never during the run).
    pub check_every: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            iterations: 10_000,
            target_exploitability: None,
            check_every: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub iterations: u64,
    pub policy: PolicyTable,
    /// Expected utility of the average policy profile.
    pub game_value: [f64; 2],
    /// Final average-policy exploitability, when measured.
    pub exploitability: Option<f64>,
    /// (iteration, exploitability) checkpoints.
    pub trace: Vec<(u64, f64)>,
}

/// Full-tree CFR+ solve from the start of the game.
pub fn solve_full(game: &Game, opts: &SolveOptions) -> Result<SolveReport> {
    let mut tree = SearchTree::from_game_root(game.clone())?;
    tree.expand_full()?;
    solve_tree(game, &mut tree, opts)
}

/// Run alternating CFR+ on an already-built full tree.
pub fn solve_tree(game: &Game, tree: &mut SearchTree, opts: &SolveOptions) -> Result<SolveReport> {
    let mut sink = QuerySink::None;
    let mut trace = Vec::new();
    let mut reached_target = false;
    for it in 1..=opts.iterations {
        cfr_iteration_alternating(tree, &NoLeaves, &mut sink)?;
        let should_check = opts.check_every > 0 && it % opts.check_every == 0;
        if should_check || (it == opts.iterations && opts.target_exploitability.is_some()) {
            let table = average_policy(tree)?;
            let e = crate::eval::exploitability(game, &table)?;
            trace.push((it, e));
            if let Some(target) = opts.target_exploitability {
                if e <= target {
                    reached_target = true;
                    break;
                }
            }
        }
    }
    let policy = average_policy(tree)?;
    let exploitability = trace.last().map(|&(_, e)| e);
    if let (Some(target), Some(e)) = (opts.target_exploitability, exploitability) {
        if !reached_target && e > target {
            return Err(Error::search(format!(
                "solver did not reach exploitability {target:.3e} within {} iterations (final {e:.3e})",
                opts.iterations
            )));
        }
    }
    let game_value = crate::eval::expected_value(game, &policy)?;
    Ok(SolveReport {
        iterations: tree.iters_done,
        policy,
        game_value,
        exploitability,
        trace,
    })
}

/// Sum over information states of max positive cumulative regret, divided by
/// T (the Theorem-1-style diagnostic on the vanilla regret tables).
pub fn average_max_regret(tree: &SearchTree, seat: Seat) -> f64 {
    let mut total = 0.0;
    for node in &tree.nodes {
        if node.to_act == ToAct::Player(seat) {
            for row in &node.rows {
                total += row
                    .regret
                    .iter()
                    .fold(0.0f64, |m, &r| m.max(r));
            }
        }
    }
    total / tree.iters_done.max(1) as f64
}
