//! Public belief states and the growing public tree.
//!
//! A [`SearchTree`] is an arena of [`PublicNode`]s keyed by public-state
//! hash. Each node groups the world histories that share a public
//! observation sequence, holds both players' information-state tables with
//! parallel range vectors, and (at decision nodes) the per-information-state
//! regret, policy, counterfactual value and PUCT statistics.
//!
//! Nodes are created in parent-before-child order, so a forward sweep can
//! propagate ranges from parents and a reverse sweep can push counterfactual
//! values back into parents without explicit link tables.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::games::{Action, Game, Seat, ToAct, WorldState};

pub type NodeId = usize;

pub const NO_PARENT: u32 = u32::MAX;

/// Pair (public-state key, per-player unnormalized range vectors over
/// lexicographically ordered information-state keys).
#[derive(Debug, Clone, PartialEq)]
pub struct PublicBeliefState {
    pub public_key: u64,
    pub info_keys: [Vec<u64>; 2],
    pub ranges: [Vec<f64>; 2],
}

impl PublicBeliefState {
    /// Normalized view of one player's range; sums to 1 within 1e-9 when any
    /// entry is positive.
    pub fn normalized(&self, seat: Seat) -> Vec<f64> {
        normalize(&self.ranges[seat.index()])
    }
}

pub fn normalize(range: &[f64]) -> Vec<f64> {
    let sum: f64 = range.iter().sum();
    if sum > 0.0 {
        range.iter().map(|r| r / sum).collect()
    } else {
        range.to_vec()
    }
}

/// Node kind; the only legal transition is frontier-leaf -> interior.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Frontier,
    Interior,
    Terminal,
}

/// One world history inside a public node.
#[derive(Debug, Clone)]
pub struct HistEntry {
    pub state: WorldState,
    /// Product of chance probabilities along the history (relative to the
    /// tree root).
    pub chance_reach: f64,
    /// Information-state index per player within this node.
    pub info: [u32; 2],
    /// Terminal utility (real or gadget-synthetic); only for terminal nodes.
    pub util: [f64; 2],
    /// Per action-slot (decision) or per chance-outcome edge targets;
    /// `None` until the target public state is expanded.
    pub edges: Vec<Option<(NodeId, u32)>>,
    /// Chance outcome probabilities aligned with `edges` (chance nodes only).
    pub chance_probs: Vec<f64>,
}

/// One information state of one player within a node.
#[derive(Debug, Clone)]
pub struct InfoSet {
    pub key: u64,
    /// Belief-feature slot in network encodings.
    pub slot: u16,
    /// Index into the parent node's same-player table (NO_PARENT at root).
    pub parent_info: u32,
    /// Action slot in the parent's decision row when this player acted
    /// there; NO_PARENT otherwise.
    pub parent_action: u32,
    pub hists: Vec<u32>,
}

/// Regret/policy/value/PUCT tables for one acting-player information state.
#[derive(Debug, Clone)]
pub struct DecisionRow {
    pub actions: Vec<Action>,
    /// Action is live once every successor public state is in the tree.
    pub live: Vec<bool>,
    /// Outstanding unexpanded (history, action) groups per action.
    pending: Vec<u32>,
    /// Vanilla cumulative regrets (diagnostics, Theorem-1-style).
    pub regret: Vec<f64>,
    /// Regret-matching+ accumulator; entries stay non-negative.
    pub qplus: Vec<f64>,
    /// Linearly weighted cumulative policy (weight t x own reach).
    pub cum_policy: Vec<f64>,
    pub current: Vec<f64>,
    pub cfv_action: Vec<f64>,
    pub prior: Vec<f64>,
    pub visits: Vec<f64>,
    pub vloss: Vec<f64>,
    pub value_sum: Vec<f64>,
}

impl DecisionRow {
    fn new(actions: Vec<Action>) -> DecisionRow {
        let n = actions.len();
        let uniform = 1.0 / n as f64;
        DecisionRow {
            actions,
            live: vec![false; n],
            pending: vec![0; n],
            regret: vec![0.0; n],
            qplus: vec![0.0; n],
            cum_policy: vec![0.0; n],
            current: vec![uniform; n],
            cfv_action: vec![0.0; n],
            prior: vec![uniform; n],
            visits: vec![0.0; n],
            vloss: vec![0.0; n],
            value_sum: vec![0.0; n],
        }
    }

    pub fn num_actions(&self) -> usize {
        self.actions.len()
    }

    pub fn action_slot(&self, a: Action) -> Option<usize> {
        self.actions.iter().position(|&b| b == a)
    }
}

#[derive(Debug, Clone)]
struct PendingEntry {
    parent_hist: u32,
    parent_slot: u32,
    state: WorldState,
    chance_reach: f64,
}

/// Optional convex blend applied to one player's range after propagation
/// (the re-solving gadget's follow-range mixing).
#[derive(Debug, Clone)]
pub struct RangeMix {
    pub seat: Seat,
    pub alpha: f64,
    pub target: Vec<f64>,
}

/// One public state in the tree.
#[derive(Debug)]
pub struct PublicNode {
    pub key: u64,
    pub parent: Option<NodeId>,
    pub kind: NodeKind,
    pub to_act: ToAct,
    pub hists: Vec<HistEntry>,
    pub infos: [Vec<InfoSet>; 2],
    /// Per acting-player information state (decision nodes only).
    pub rows: Vec<DecisionRow>,
    pub children: BTreeMap<u64, NodeId>,
    pending: BTreeMap<u64, Vec<PendingEntry>>,
    materialized: bool,
    /// Ranges from the most recent propagation pass.
    pub range: [Vec<f64>; 2],
    /// Counterfactual values from the most recent pass.
    pub cfv: [Vec<f64>; 2],
    /// Linearly weighted sums of counterfactual values across passes.
    pub cfv_avg: [Vec<f64>; 2],
    pub mix: Option<RangeMix>,
    /// Set once the node has received network priors.
    pub priors_set: bool,
}

impl PublicNode {
    pub fn num_infos(&self, seat: Seat) -> usize {
        self.infos[seat.index()].len()
    }

    pub fn info_index(&self, seat: Seat, key: u64) -> Option<usize> {
        self.infos[seat.index()]
            .binary_search_by_key(&key, |i| i.key)
            .ok()
    }

    pub fn is_materialized(&self) -> bool {
        self.materialized
    }

    pub fn beliefs(&self) -> PublicBeliefState {
        PublicBeliefState {
            public_key: self.key,
            info_keys: [
                self.infos[0].iter().map(|i| i.key).collect(),
                self.infos[1].iter().map(|i| i.key).collect(),
            ],
            ranges: [self.range[0].clone(), self.range[1].clone()],
        }
    }

    /// Sum of the opponent's reach at this node (PUCT value normalizer).
    pub fn opp_reach_sum(&self, seat: Seat) -> f64 {
        self.range[seat.other().index()].iter().sum()
    }

    pub(crate) fn zero_accumulators(&mut self) {
        for p in 0..2 {
            for v in self.cfv[p].iter_mut() {
                *v = 0.0;
            }
        }
        for row in self.rows.iter_mut() {
            for v in row.cfv_action.iter_mut() {
                *v = 0.0;
            }
        }
    }
}

/// Grouping of raw histories into a public-state skeleton: deduplicated
/// information states for both players plus each history's (s1, s2) cell.
#[derive(Debug, Clone)]
pub struct PublicStateSkeleton {
    pub public_key: u64,
    pub info_keys: [Vec<u64>; 2],
    pub cells: Vec<[u32; 2]>,
}

pub fn enumerate_public_state(game: &Game, hists: &[WorldState]) -> Result<PublicStateSkeleton> {
    if hists.is_empty() {
        return Err(Error::contract("enumerate_public_state on empty history set"));
    }
    let public_key = hists[0].public_key();
    for h in hists {
        if h.public_key() != public_key {
            return Err(Error::contract(
                "histories with mixed public keys in one public state",
            ));
        }
    }
    let mut info_keys = [Vec::new(), Vec::new()];
    for p in 0..2 {
        let mut keys: Vec<u64> = hists.iter().map(|h| h.info_key(Seat::from_index(p))).collect();
        keys.sort_unstable();
        keys.dedup();
        info_keys[p] = keys;
    }
    let cells = hists
        .iter()
        .map(|h| {
            [
                info_keys[0].binary_search(&h.info_key(Seat::P1)).unwrap() as u32,
                info_keys[1].binary_search(&h.info_key(Seat::P2)).unwrap() as u32,
            ]
        })
        .collect();
    let _ = game;
    Ok(PublicStateSkeleton {
        public_key,
        info_keys,
        cells,
    })
}

/// The growing public tree for one search or one full-game solve.
///
/// A tree and its tables are owned by exactly one search instance; only the
/// immutable [`Game`] is shared across instances.
#[derive(Debug)]
pub struct SearchTree {
    pub game: Game,
    pub nodes: Vec<PublicNode>,
    by_key: HashMap<u64, NodeId>,
    pub root_ranges: [Vec<f64>; 2],
    /// Completed regret-update iterations (linear-averaging weight counter).
    pub iters_done: u64,
    /// Sum of linear weights 1 + 2 + ... + iters_done.
    pub weight_sum: f64,
}

impl SearchTree {
    /// Build a tree rooted at the public state containing `hists`
    /// (with per-history chance reach) and fixed root ranges.
    pub fn new_root(
        game: Game,
        hists: Vec<(WorldState, f64)>,
        root_ranges: [Vec<f64>; 2],
    ) -> Result<SearchTree> {
        let mut tree = SearchTree {
            game,
            nodes: Vec::new(),
            by_key: HashMap::new(),
            root_ranges,
            iters_done: 0,
            weight_sum: 0.0,
        };
        let entries: Vec<PendingEntry> = hists
            .into_iter()
            .map(|(state, chance_reach)| PendingEntry {
                parent_hist: NO_PARENT,
                parent_slot: NO_PARENT,
                state,
                chance_reach,
            })
            .collect();
        let root = tree.add_node(None, entries)?;
        debug_assert_eq!(root, 0);
        for p in 0..2 {
            if tree.root_ranges[p].len() != tree.nodes[0].infos[p].len() {
                return Err(Error::contract(format!(
                    "root range length {} does not match {} information states",
                    tree.root_ranges[p].len(),
                    tree.nodes[0].infos[p].len()
                )));
            }
        }
        Ok(tree)
    }

    /// Tree rooted at the true start of the game.
    pub fn from_game_root(game: Game) -> Result<SearchTree> {
        let init = game.initial_state();
        SearchTree::new_root(game, vec![(init, 1.0)], [vec![1.0], vec![1.0]])
    }

    pub fn root(&self) -> &PublicNode {
        &self.nodes[0]
    }

    pub fn node(&self, id: NodeId) -> &PublicNode {
        &self.nodes[id]
    }

    pub fn node_mut(&mut self, id: NodeId) -> &mut PublicNode {
        &mut self.nodes[id]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn lookup(&self, public_key: u64) -> Option<NodeId> {
        self.by_key.get(&public_key).copied()
    }

    /// Number of non-terminal leaves currently in the tree.
    pub fn frontier_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| n.kind == NodeKind::Frontier)
            .count()
    }

    fn add_node(&mut self, parent: Option<NodeId>, entries: Vec<PendingEntry>) -> Result<NodeId> {
        debug_assert!(!entries.is_empty());
        let states: Vec<&WorldState> = entries.iter().map(|e| &e.state).collect();
        let public_key = states[0].public_key();
        let to_act = states[0].to_act();
        let n_terminal = states.iter().filter(|s| s.is_terminal()).count();
        if n_terminal > 0 && n_terminal < states.len() {
            return Err(Error::game(
                "public state mixes terminal and non-terminal histories",
            ));
        }
        for s in &states {
            if s.public_key() != public_key {
                return Err(Error::game("pending group with mixed public keys"));
            }
            if s.to_act() != to_act {
                return Err(Error::game("public state with ambiguous player to act"));
            }
        }

        // Group histories into information states, ordered by key.
        let mut info_keys = [Vec::new(), Vec::new()];
        for p in 0..2 {
            let mut keys: Vec<u64> = states
                .iter()
                .map(|s| s.info_key(Seat::from_index(p)))
                .collect();
            keys.sort_unstable();
            keys.dedup();
            info_keys[p] = keys;
        }
        let mut infos: [Vec<InfoSet>; 2] = [Vec::new(), Vec::new()];
        for p in 0..2 {
            infos[p] = info_keys[p]
                .iter()
                .map(|&key| InfoSet {
                    key,
                    slot: 0,
                    parent_info: NO_PARENT,
                    parent_action: NO_PARENT,
                    hists: Vec::new(),
                })
                .collect();
        }

        let parent_actor = parent.map(|pid| self.nodes[pid].to_act);
        let mut hists = Vec::with_capacity(entries.len());
        for (idx, e) in entries.iter().enumerate() {
            let mut cell = [0u32; 2];
            for p in 0..2 {
                let seat = Seat::from_index(p);
                let j = info_keys[p].binary_search(&e.state.info_key(seat)).unwrap();
                cell[p] = j as u32;
                let slot = if e.state.is_terminal() {
                    0
                } else {
                    self.game.info_slot(&e.state, seat)
                };
                let info = &mut infos[p][j];
                info.hists.push(idx as u32);
                info.slot = slot;
                if let Some(pid) = parent {
                    let pnode = &self.nodes[pid];
                    let pseat_idx = pnode.hists[e.parent_hist as usize].info[p];
                    debug_assert!(
                        info.parent_info == NO_PARENT || info.parent_info == pseat_idx,
                        "perfect recall violated: child infostate with two parents"
                    );
                    info.parent_info = pseat_idx;
                    if parent_actor == Some(ToAct::Player(seat)) {
                        debug_assert!(
                            info.parent_action == NO_PARENT
                                || info.parent_action == e.parent_slot
                        );
                        info.parent_action = e.parent_slot;
                    }
                }
            }
            let util = if e.state.is_terminal() {
                self.game.terminal_utility(&e.state)?
            } else {
                [0.0, 0.0]
            };
            hists.push(HistEntry {
                state: e.state.clone(),
                chance_reach: e.chance_reach,
                info: cell,
                util,
                edges: Vec::new(),
                chance_probs: Vec::new(),
            });
        }

        let kind = if n_terminal > 0 {
            NodeKind::Terminal
        } else {
            NodeKind::Frontier
        };

        // Decision rows for the acting player's information states.
        let mut rows = Vec::new();
        if let ToAct::Player(seat) = to_act {
            for info in &infos[seat.index()] {
                let rep = &hists[info.hists[0] as usize].state;
                let actions = self.game.legal_actions(rep)?;
                debug_assert!(info.hists.iter().all(|&h| {
                    self.game.legal_actions(&hists[h as usize].state).unwrap() == actions
                }));
                rows.push(DecisionRow::new(actions));
            }
        }

        let n1 = infos[0].len();
        let n2 = infos[1].len();
        let node = PublicNode {
            key: public_key,
            parent,
            kind,
            to_act,
            hists,
            infos,
            rows,
            children: BTreeMap::new(),
            pending: BTreeMap::new(),
            materialized: kind == NodeKind::Terminal,
            range: [vec![0.0; n1], vec![0.0; n2]],
            cfv: [vec![0.0; n1], vec![0.0; n2]],
            cfv_avg: [vec![0.0; n1], vec![0.0; n2]],
            mix: None,
            priors_set: false,
        };
        let id = self.nodes.len();
        self.nodes.push(node);
        if self.by_key.insert(public_key, id).is_some() {
            return Err(Error::game(
                "duplicate public key: public observation sequences must form a tree",
            ));
        }
        if let Some(pid) = parent {
            self.nodes[pid].children.insert(public_key, id);
            for (child_idx, e) in entries.iter().enumerate() {
                let ph = &mut self.nodes[pid].hists[e.parent_hist as usize];
                ph.edges[e.parent_slot as usize] = Some((id, child_idx as u32));
            }
        }
        Ok(id)
    }

    /// Compute all one-step successors of a node's histories and stage them
    /// as pending children grouped by public key. Idempotent.
    pub fn materialize(&mut self, id: NodeId) -> Result<()> {
        if self.nodes[id].materialized {
            return Ok(());
        }
        let game = self.game.clone();
        let n_hists = self.nodes[id].hists.len();
        let to_act = self.nodes[id].to_act;
        let mut pending: BTreeMap<u64, Vec<PendingEntry>> = BTreeMap::new();

        for hi in 0..n_hists {
            let (state, chance_reach, info) = {
                let h = &self.nodes[id].hists[hi];
                (h.state.clone(), h.chance_reach, h.info)
            };
            let (actions, probs): (Vec<Action>, Vec<f64>) = match to_act {
                ToAct::Chance => {
                    let outs = game.chance_outcomes(&state)?;
                    (outs.iter().map(|o| o.0).collect(), outs.iter().map(|o| o.1).collect())
                }
                ToAct::Player(seat) => {
                    let row = &self.nodes[id].rows[info[seat.index()] as usize];
                    (row.actions.clone(), Vec::new())
                }
                ToAct::Terminal => {
                    return Err(Error::contract("materialize on terminal node"))
                }
            };
            let mut edges = vec![None; actions.len()];
            for (slot, &a) in actions.iter().enumerate() {
                let (next, _) = game.step(&state, a)?;
                let reach = if probs.is_empty() {
                    chance_reach
                } else {
                    chance_reach * probs[slot]
                };
                pending.entry(next.public_key()).or_default().push(PendingEntry {
                    parent_hist: hi as u32,
                    parent_slot: slot as u32,
                    state: next,
                    chance_reach: reach,
                });
                edges[slot] = None;
            }
            let h = &mut self.nodes[id].hists[hi];
            h.edges = edges;
            h.chance_probs = probs;
        }

        // Track how many unexpanded successor groups each (info, action)
        // slot still has; the action goes live when the count hits zero.
        if let ToAct::Player(seat) = to_act {
            let s = seat.index();
            let mut counts: HashMap<(u32, u32), u32> = HashMap::new();
            for group in pending.values() {
                for e in group {
                    let info = self.nodes[id].hists[e.parent_hist as usize].info[s];
                    *counts.entry((info, e.parent_slot)).or_insert(0) += 1;
                }
            }
            for ((info, slot), c) in counts {
                self.nodes[id].rows[info as usize].pending[slot as usize] = c;
            }
        }

        self.nodes[id].pending = pending;
        self.nodes[id].materialized = true;
        Ok(())
    }

    /// Expand one staged child public state. The node transitions
    /// frontier-leaf -> interior on its first expansion. Newly created
    /// chance nodes are expanded in full immediately (they are never
    /// frontier leaves). Returns ids of all nodes added.
    pub fn expand_child(&mut self, id: NodeId, child_key: u64) -> Result<Vec<NodeId>> {
        self.materialize(id)?;
        let entries = match self.nodes[id].pending.remove(&child_key) {
            Some(e) => e,
            None => return Ok(Vec::new()), // already expanded or unreachable
        };
        // Decrement pending counts; mark live actions.
        if let ToAct::Player(seat) = self.nodes[id].to_act {
            let s = seat.index();
            for e in &entries {
                let info = self.nodes[id].hists[e.parent_hist as usize].info[s] as usize;
                let row = &mut self.nodes[id].rows[info];
                let slot = e.parent_slot as usize;
                row.pending[slot] = row.pending[slot].saturating_sub(1);
            }
            // A slot with staged entries was counted above; recompute liveness.
            for row in self.nodes[id].rows.iter_mut() {
                for a in 0..row.num_actions() {
                    if !row.live[a] && row.pending[a] == 0 {
                        row.live[a] = true;
                    }
                }
            }
        } else {
            // Chance edges are live implicitly once expanded.
        }
        if self.nodes[id].kind == NodeKind::Frontier {
            self.nodes[id].kind = NodeKind::Interior;
            self.init_interior_policy(id);
        }
        let child = self.add_node(Some(id), entries)?;
        let mut added = vec![child];
        if self.nodes[child].to_act.is_chance() {
            added.extend(self.expand_all_children(child)?);
        }
        Ok(added)
    }

    /// Expand every staged child of a node (used for roots, chance nodes and
    /// full-tree construction).
    pub fn expand_all_children(&mut self, id: NodeId) -> Result<Vec<NodeId>> {
        self.materialize(id)?;
        let keys: Vec<u64> = self.nodes[id].pending.keys().copied().collect();
        let mut added = Vec::new();
        for k in keys {
            added.extend(self.expand_child(id, k)?);
        }
        Ok(added)
    }

    /// Expand the entire reachable public tree (full-tree solver mode).
    pub fn expand_full(&mut self) -> Result<()> {
        let mut i = 0;
        while i < self.nodes.len() {
            if self.nodes[i].kind != NodeKind::Terminal {
                self.expand_all_children(i)?;
            }
            i += 1;
        }
        Ok(())
    }

    /// Seed the current policy of a node that just became interior from its
    /// prior, masked to live actions.
    fn init_interior_policy(&mut self, id: NodeId) {
        let node = &mut self.nodes[id];
        for row in node.rows.iter_mut() {
            let mut total = 0.0;
            for a in 0..row.num_actions() {
                row.current[a] = if row.live[a] { row.prior[a].max(1e-12) } else { 0.0 };
                total += row.current[a];
            }
            if total > 0.0 {
                for v in row.current.iter_mut() {
                    *v /= total;
                }
            } else {
                let live_n = row.live.iter().filter(|&&l| l).count().max(1);
                for a in 0..row.num_actions() {
                    row.current[a] = if row.live[a] { 1.0 / live_n as f64 } else { 0.0 };
                }
            }
        }
    }

    /// Refresh live-action policies after an expansion made new actions
    /// live at an already-interior node: newly live actions get zero current
    /// probability until the next regret pass reconsiders them.
    pub(crate) fn refresh_liveness(&mut self, id: NodeId) {
        let node = &mut self.nodes[id];
        for row in node.rows.iter_mut() {
            let total: f64 = row
                .current
                .iter()
                .zip(&row.live)
                .filter(|(_, &l)| l)
                .map(|(c, _)| *c)
                .sum();
            if total <= 0.0 {
                let live_n = row.live.iter().filter(|&&l| l).count().max(1);
                for a in 0..row.num_actions() {
                    row.current[a] = if row.live[a] { 1.0 / live_n as f64 } else { 0.0 };
                }
            }
        }
    }

    /// Remaining staged (unexpanded) child public keys of a node.
    pub fn pending_keys(&self, id: NodeId) -> Vec<u64> {
        self.nodes[id].pending.keys().copied().collect()
    }

    /// Successor public keys of `(hist, slot)` without expanding: scans the
    /// staged groups.
    pub(crate) fn staged_child_key(&self, id: NodeId, hist: u32, slot: u32) -> Option<u64> {
        for (k, group) in &self.nodes[id].pending {
            if group
                .iter()
                .any(|e| e.parent_hist == hist && e.parent_slot == slot)
            {
                return Some(*k);
            }
        }
        None
    }

    /// All staged child keys reachable through `slot` from any history of
    /// the acting information state `info`.
    pub(crate) fn staged_keys_for_action(&self, id: NodeId, seat: Seat, info: u32, slot: u32) -> Vec<u64> {
        let node = &self.nodes[id];
        let mut keys = Vec::new();
        for (k, group) in &node.pending {
            if group.iter().any(|e| {
                e.parent_slot == slot
                    && node.hists[e.parent_hist as usize].info[seat.index()] == info
            }) {
                keys.push(*k);
            }
        }
        keys
    }
}

/// View of a frontier leaf passed to value functions.
pub struct LeafView<'a> {
    pub game: &'a Game,
    pub public_key: u64,
    pub to_act: ToAct,
    pub info_keys: [Vec<u64>; 2],
    pub info_slots: [Vec<u16>; 2],
    pub ranges: [&'a [f64]; 2],
    /// Representative world state (public features are shared).
    pub state: &'a WorldState,
    /// Action lists per acting-player information state (empty for chance).
    pub actions: Vec<&'a [Action]>,
    /// Histories with chance reach and info cell, for oracle evaluators that
    /// need to reconstruct the subgame.
    pub hists: &'a [HistEntry],
}

/// Counterfactual values for both players plus priors for the acting player.
#[derive(Debug, Clone)]
pub struct LeafValues {
    pub values: [Vec<f64>; 2],
    /// One distribution per acting-player information state (may be empty
    /// when the evaluator provides no prior, e.g. at chance leaves).
    pub priors: Vec<Vec<f64>>,
}

/// A counterfactual value function over public belief states.
///
/// Implementations must be callable concurrently from many search instances.
pub trait LeafEvaluator: Send + Sync {
    fn evaluate(&self, view: &LeafView<'_>) -> Result<LeafValues>;

    /// Network evaluations performed so far (cache-miss count for evaluators
    /// that cache; diagnostic only).
    fn calls(&self) -> u64 {
        0
    }
}

pub(crate) fn leaf_view<'a>(tree: &'a SearchTree, id: NodeId) -> LeafView<'a> {
    let node = &tree.nodes[id];
    let actions: Vec<&[Action]> = node.rows.iter().map(|r| r.actions.as_slice()).collect();
    LeafView {
        game: &tree.game,
        public_key: node.key,
        to_act: node.to_act,
        info_keys: [
            node.infos[0].iter().map(|i| i.key).collect(),
            node.infos[1].iter().map(|i| i.key).collect(),
        ],
        info_slots: [
            node.infos[0].iter().map(|i| i.slot).collect(),
            node.infos[1].iter().map(|i| i.slot).collect(),
        ],
        ranges: [&node.range[0], &node.range[1]],
        state: &node.hists[0].state,
        actions,
        hists: &node.hists,
    }
}
