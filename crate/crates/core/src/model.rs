//! The retweet-graph growth process.
//!
//! Every time step adds either a node or an edge:
//!
//! * **T1** (prob. `λ/(λ+1)`): a new user tweets on the topic. It becomes the
//!   root of a new message tree and a new singleton component.
//! * **T2** (prob. `p/(λ+1)`): a new user `v` retweets an existing user `u`.
//! * **T3** (prob. `(1-p)/(λ+1)`): an existing user `v` retweets `u`, which may
//!   merge two components.
//!
//! For T2 and T3 the source `u` is found by picking a message tree with
//! probability proportional to its size and then applying the superstar rule
//! inside that tree: the root with probability `q`, otherwise a non-root
//! member with probability proportional to one plus the number of earlier
//! attachments it received in that tree. The T3 retweeter is uniform over all
//! nodes except `u`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::rng::{seeded, SimRng};
use crate::sampling::WeightIndex;
use crate::union_find::Components;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TreeId(pub u32);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ArrivalKind {
    T1,
    T2,
    T3,
}

impl ArrivalKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ArrivalKind::T1 => "T1",
            ArrivalKind::T2 => "T2",
            ArrivalKind::T3 => "T3",
        }
    }
}

/// One step of the process.
///
/// `source` is the retweeted user `u`, `target` the retweeter `v`; the new
/// edge is `(source, target)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrivalEvent {
    pub time: u64,
    pub kind: ArrivalKind,
    pub new_node: Option<NodeId>,
    pub source: Option<NodeId>,
    pub target: Option<NodeId>,
    pub tree: Option<TreeId>,
}

/// Draws the arrival type from `(λ/(λ+1), p/(λ+1), (1-p)/(λ+1))`.
///
/// Sampled in two stages (new topic or retweet, then new or existing user),
/// which gives the same law and makes `p = 1` rule out T3 exactly.
pub fn sample_arrival_type<R: Rng + ?Sized>(params: &ModelParams, rng: &mut R) -> ArrivalKind {
    if rng.gen_bool(params.equivalent_p_bar()) {
        ArrivalKind::T1
    } else if rng.gen_bool(params.p) {
        ArrivalKind::T2
    } else {
        ArrivalKind::T3
    }
}

/// Arrival type conditioned on T3 being impossible.
fn sample_feasible_without_t3<R: Rng + ?Sized>(params: &ModelParams, rng: &mut R) -> ArrivalKind {
    if rng.gen_bool(params.lambda / (params.lambda + params.p)) {
        ArrivalKind::T1
    } else {
        ArrivalKind::T2
    }
}

/// A message tree: the root tweeter plus everyone who retweeted into it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MessageTree {
    root: NodeId,
    members: Vec<NodeId>,
    // One entry per non-root member plus one per attachment it received, so a
    // uniform pick is proportional to (member_degree + 1).
    tickets: Vec<NodeId>,
}

impl MessageTree {
    pub fn new(root: NodeId) -> Self {
        MessageTree {
            root,
            members: vec![root],
            tickets: Vec::new(),
        }
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn members(&self) -> &[NodeId] {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Within-tree attachment count of a non-root member (0 for the root or
    /// for non-members).
    pub fn member_degree(&self, node: NodeId) -> usize {
        self.tickets.iter().filter(|&&n| n == node).count().saturating_sub(1)
    }

    /// Adds a member. The caller guarantees it is not already present.
    pub fn add_member(&mut self, node: NodeId) {
        self.members.push(node);
        if node != self.root {
            self.tickets.push(node);
        }
    }

    /// Records that `node` was chosen as a retweet source in this tree.
    pub fn record_attachment(&mut self, node: NodeId) {
        if node != self.root {
            self.tickets.push(node);
        }
    }

    /// Superstar source selection.
    pub fn select_source<R: Rng + ?Sized>(&self, q: f64, rng: &mut R) -> NodeId {
        if self.tickets.is_empty() || rng.gen_bool(q) {
            self.root
        } else {
            self.tickets[rng.gen_range(0..self.tickets.len())]
        }
    }
}

pub fn select_source_in_tree<R: Rng + ?Sized>(tree: &MessageTree, q: f64, rng: &mut R) -> NodeId {
    tree.select_source(q, rng)
}

/// Running totals of arrivals, used by the structural invariants.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventCounts {
    pub t1: u64,
    pub t2: u64,
    pub t3: u64,
    /// T3 arrivals whose endpoints were in different components.
    pub merges: u64,
}

#[derive(Debug, Clone)]
pub struct RetweetGraph {
    params: ModelParams,
    time: u64,
    edges: Vec<(NodeId, NodeId)>,
    components: Components,
    trees: Vec<MessageTree>,
    tree_index: WeightIndex<u64>,
    membership: HashSet<(TreeId, NodeId)>,
    counts: EventCounts,
}

impl RetweetGraph {
    /// `G_0`: a single node that roots the first message tree.
    pub fn new(params: ModelParams) -> Result<Self> {
        params.validate()?;
        let mut graph = RetweetGraph {
            params,
            time: 0,
            edges: Vec::new(),
            components: Components::new(),
            trees: Vec::new(),
            tree_index: WeightIndex::new(),
            membership: HashSet::new(),
            counts: EventCounts::default(),
        };
        graph.add_topic();
        Ok(graph)
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    pub fn node_count(&self) -> usize {
        self.components.len()
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn trees(&self) -> &[MessageTree] {
        &self.trees
    }

    pub fn tree(&self, id: TreeId) -> &MessageTree {
        &self.trees[id.0 as usize]
    }

    pub fn counts(&self) -> EventCounts {
        self.counts
    }

    pub fn component_count(&self) -> usize {
        self.components.component_count()
    }

    pub fn component_of(&self, node: NodeId) -> u32 {
        self.components.find_const(node.0)
    }

    pub fn is_tree_member(&self, tree: TreeId, node: NodeId) -> bool {
        self.membership.contains(&(tree, node))
    }

    /// Component sizes, largest first.
    pub fn component_sizes(&self) -> Vec<u64> {
        let mut sizes: Vec<u64> = self.components.sizes().collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }

    /// Size → number of components, maintained incrementally.
    pub fn component_size_counts(&self) -> &BTreeMap<u64, u64> {
        self.components.size_counts()
    }

    pub fn largest_component(&self) -> u64 {
        self.components.largest()
    }

    /// Share of all nodes that sit in the largest component.
    pub fn lcc_fraction(&self) -> f64 {
        self.largest_component() as f64 / self.node_count() as f64
    }

    /// Tree chosen with probability `|H_i| / Σ_j |H_j|`.
    pub fn select_message_tree<R: Rng + ?Sized>(&self, rng: &mut R) -> TreeId {
        TreeId(self.tree_index.sample(rng) as u32)
    }

    /// Uniform node other than `source`.
    pub fn select_t3_target<R: Rng + ?Sized>(&self, source: NodeId, rng: &mut R) -> Result<NodeId> {
        let n = self.node_count() as u32;
        if n < 2 {
            return Err(Error::InfeasibleArrival);
        }
        let pick = rng.gen_range(0..n - 1);
        Ok(NodeId(if pick >= source.0 { pick + 1 } else { pick }))
    }

    /// Applies one arrival. A T3 draw on a single-node graph is redrawn from
    /// the law conditioned on {T1, T2}.
    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<ArrivalEvent> {
        let params = self.params;
        let mut kind = sample_arrival_type(&params, rng);
        if kind == ArrivalKind::T3 && self.node_count() < 2 {
            kind = sample_feasible_without_t3(&params, rng);
        }
        self.time += 1;
        let time = self.time;

        let event = match kind {
            ArrivalKind::T1 => {
                let node = self.add_topic();
                self.counts.t1 += 1;
                ArrivalEvent {
                    time,
                    kind,
                    new_node: Some(node),
                    source: None,
                    target: None,
                    tree: None,
                }
            }
            ArrivalKind::T2 => {
                let tree = self.select_message_tree(rng);
                let source = self.pick_source(tree, rng);
                let target = NodeId(self.components.add());
                self.link(source, target);
                self.join_tree(tree, target);
                self.counts.t2 += 1;
                ArrivalEvent {
                    time,
                    kind,
                    new_node: Some(target),
                    source: Some(source),
                    target: Some(target),
                    tree: Some(tree),
                }
            }
            ArrivalKind::T3 => {
                let tree = self.select_message_tree(rng);
                let source = self.pick_source(tree, rng);
                let target = self.select_t3_target(source, rng)?;
                if self.link(source, target) {
                    self.counts.merges += 1;
                }
                if !self.membership.contains(&(tree, target)) {
                    self.join_tree(tree, target);
                }
                self.counts.t3 += 1;
                ArrivalEvent {
                    time,
                    kind,
                    new_node: None,
                    source: Some(source),
                    target: Some(target),
                    tree: Some(tree),
                }
            }
        };
        Ok(event)
    }

    fn add_topic(&mut self) -> NodeId {
        let node = NodeId(self.components.add());
        let tree = TreeId(self.trees.len() as u32);
        self.trees.push(MessageTree::new(node));
        self.tree_index.push(1);
        self.membership.insert((tree, node));
        node
    }

    fn pick_source<R: Rng + ?Sized>(&mut self, tree: TreeId, rng: &mut R) -> NodeId {
        let q = self.params.q;
        let h = &mut self.trees[tree.0 as usize];
        let source = h.select_source(q, rng);
        h.record_attachment(source);
        source
    }

    fn join_tree(&mut self, tree: TreeId, node: NodeId) {
        self.trees[tree.0 as usize].add_member(node);
        self.tree_index.add(tree.0 as usize, 1);
        self.membership.insert((tree, node));
    }

    /// Adds the edge and merges components; returns whether a merge happened.
    fn link(&mut self, source: NodeId, target: NodeId) -> bool {
        self.edges.push((source, target));
        self.components.union(source.0, target.0)
    }
}

pub fn new_graph(params: ModelParams) -> Result<RetweetGraph> {
    RetweetGraph::new(params)
}

pub fn step<R: Rng + ?Sized>(graph: &mut RetweetGraph, rng: &mut R) -> Result<ArrivalEvent> {
    graph.step(rng)
}

/// Runs `params.steps` arrivals from `G_0`, calling `observe` after each.
pub fn run_with<F>(params: ModelParams, mut observe: F) -> Result<RetweetGraph>
where
    F: FnMut(&RetweetGraph, &ArrivalEvent),
{
    let mut graph = RetweetGraph::new(params)?;
    let mut rng: SimRng = seeded(params.seed);
    for _ in 0..params.steps {
        let event = graph.step(&mut rng)?;
        observe(&graph, &event);
    }
    Ok(graph)
}

/// Runs `params.steps` arrivals and keeps the full event log.
pub fn run(params: ModelParams) -> Result<(RetweetGraph, Vec<ArrivalEvent>)> {
    let mut log = Vec::with_capacity(params.steps.min(1 << 24) as usize);
    let graph = run_with(params, |_, e| log.push(e.clone()))?;
    Ok((graph, log))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;
    use std::collections::HashMap;

    fn params(lambda: f64, p: f64, q: f64) -> ModelParams {
        ModelParams::new(lambda, p, q).unwrap()
    }

    fn frequencies<T: std::hash::Hash + Eq>(draws: impl Iterator<Item = T>) -> HashMap<T, usize> {
        let mut out = HashMap::new();
        for d in draws {
            *out.entry(d).or_insert(0) += 1;
        }
        out
    }

    /// Pearson statistic against expected probabilities; fails at 0.001.
    fn assert_chi_square(observed: &[usize], probs: &[f64]) {
        use statrs::distribution::{ChiSquared, ContinuousCDF};
        let n: usize = observed.iter().sum();
        let stat: f64 = observed
            .iter()
            .zip(probs)
            .map(|(&o, &p)| {
                let e = p * n as f64;
                (o as f64 - e).powi(2) / e
            })
            .sum();
        let pval = ChiSquared::new((probs.len() - 1) as f64).unwrap().sf(stat);
        assert!(pval > 1e-3, "chi-square {stat} (p = {pval}) for {observed:?} vs {probs:?}");
    }

    #[test]
    fn initial_graph_is_a_single_tree() {
        let g = RetweetGraph::new(params(1.0 / 3.0, 1.0, 0.9)).unwrap();
        assert_eq!(g.node_count(), 1);
        assert_eq!(g.trees().len(), 1);
        assert_eq!(g.component_count(), 1);
        assert_eq!(g.time(), 0);
        assert_eq!(g.component_sizes(), [1]);
        assert_eq!(g.lcc_fraction(), 1.0);
        assert_eq!(g.tree(TreeId(0)).members(), &[NodeId(0)]);
    }

    #[test]
    fn invalid_params_are_rejected() {
        let bad = ModelParams {
            lambda: 1.0,
            p: 2.0,
            q: 0.5,
            steps: 0,
            seed: 0,
        };
        assert!(matches!(RetweetGraph::new(bad), Err(Error::InvalidParam { name: "p", .. })));
    }

    #[test]
    fn p_one_never_draws_t3() {
        let pr = params(1.0 / 3.0, 1.0, 0.9);
        let mut rng = seeded(1);
        assert!((0..200_000).all(|_| sample_arrival_type(&pr, &mut rng) != ArrivalKind::T3));
    }

    #[test]
    fn arrival_frequencies_match_law() {
        let pr = params(1.0 / 3.0, 0.8, 0.9);
        let mut rng = seeded(11);
        let f = frequencies((0..200_000).map(|_| sample_arrival_type(&pr, &mut rng)));
        let obs = [ArrivalKind::T1, ArrivalKind::T2, ArrivalKind::T3].map(|k| f[&k]);
        assert_chi_square(&obs, &[0.25, 0.6, 0.15]);
    }

    #[test]
    fn tree_selection_single_tree() {
        let g = RetweetGraph::new(params(1.0, 1.0, 0.5)).unwrap();
        let mut rng = seeded(3);
        assert!((0..100).all(|_| g.select_message_tree(&mut rng) == TreeId(0)));
    }

    fn graph_with_tree_sizes(sizes: &[usize]) -> RetweetGraph {
        let mut g = RetweetGraph::new(params(1.0, 1.0, 0.5)).unwrap();
        for _ in 1..sizes.len() {
            g.add_topic();
        }
        for (t, &s) in sizes.iter().enumerate() {
            for _ in 1..s {
                let root = g.tree(TreeId(t as u32)).root();
                let v = NodeId(g.components.add());
                g.link(root, v);
                g.join_tree(TreeId(t as u32), v);
            }
        }
        g
    }

    #[test]
    fn tree_selection_is_size_proportional() {
        let g = graph_with_tree_sizes(&[3, 1]);
        let mut rng = seeded(5);
        let f = frequencies((0..100_000).map(|_| g.select_message_tree(&mut rng)));
        assert_chi_square(&[f[&TreeId(0)], f[&TreeId(1)]], &[0.75, 0.25]);

        let g = graph_with_tree_sizes(&[5, 2, 4, 2]);
        assert_eq!(g.component_sizes(), [5, 4, 2, 2]);
        assert!((g.lcc_fraction() - 5.0 / 13.0).abs() < 1e-15);
        let f = frequencies((0..200_000).map(|_| g.select_message_tree(&mut rng)));
        let obs: Vec<usize> = (0..4).map(|t| f[&TreeId(t)]).collect();
        assert_chi_square(&obs, &[5.0 / 13.0, 2.0 / 13.0, 4.0 / 13.0, 2.0 / 13.0]);
    }

    #[test]
    fn superstar_rule() {
        let mut rng = seeded(8);
        let single = MessageTree::new(NodeId(0));
        assert!((0..100).all(|_| single.select_source(0.0, &mut rng) == NodeId(0)));

        let mut tree = MessageTree::new(NodeId(0));
        tree.add_member(NodeId(1));
        tree.add_member(NodeId(2));
        assert!((0..1000).all(|_| tree.select_source(1.0, &mut rng) == NodeId(0)));

        // Weights (degree + 1): a = n1 has one prior attachment, b = n2 none.
        tree.record_attachment(NodeId(1));
        assert_eq!(tree.member_degree(NodeId(1)), 1);
        assert_eq!(tree.member_degree(NodeId(2)), 0);
        let f = frequencies((0..90_000).map(|_| tree.select_source(0.0, &mut rng)));
        assert!(!f.contains_key(&NodeId(0)));
        assert_chi_square(&[f[&NodeId(1)], f[&NodeId(2)]], &[2.0 / 3.0, 1.0 / 3.0]);

        let f = frequencies((0..90_000).map(|_| tree.select_source(0.9, &mut rng)));
        assert_chi_square(
            &[f[&NodeId(0)], f[&NodeId(1)], f[&NodeId(2)]],
            &[0.9, 0.1 * 2.0 / 3.0, 0.1 / 3.0],
        );
    }

    #[test]
    fn t3_target_excludes_source() {
        let g = graph_with_tree_sizes(&[2]);
        let mut rng = seeded(2);
        assert!((0..100).all(|_| g.select_t3_target(NodeId(0), &mut rng).unwrap() == NodeId(1)));

        let g = graph_with_tree_sizes(&[5]);
        let f = frequencies((0..80_000).map(|_| g.select_t3_target(NodeId(2), &mut rng).unwrap()));
        assert!(!f.contains_key(&NodeId(2)));
        let obs: Vec<usize> = [0, 1, 3, 4].iter().map(|&i| f[&NodeId(i)]).collect();
        assert_chi_square(&obs, &[0.25; 4]);

        let g = RetweetGraph::new(params(1.0, 0.0, 0.5)).unwrap();
        assert_eq!(g.select_t3_target(NodeId(0), &mut rng), Err(Error::InfeasibleArrival));
    }

    #[test]
    fn first_step_law() {
        let pr = params(1.0 / 3.0, 1.0, 0.9);
        let mut rng = seeded(21);
        let n = 100_000;
        let mut singles = 0;
        for _ in 0..n {
            let mut g = RetweetGraph::new(pr).unwrap();
            g.step(&mut rng).unwrap();
            match g.component_sizes().as_slice() {
                [1, 1] => singles += 1,
                [2] => {}
                other => panic!("unexpected state {other:?}"),
            }
        }
        assert_chi_square(&[singles, n - singles], &[0.25, 0.75]);
    }

    #[test]
    fn single_node_never_attempts_t3() {
        // p = 0: every retweet is T3, so the first step must fall back to T1.
        let pr = params(0.5, 0.0, 0.5);
        let mut rng = seeded(4);
        for _ in 0..1000 {
            let mut g = RetweetGraph::new(pr).unwrap();
            let e = g.step(&mut rng).unwrap();
            assert_eq!(e.kind, ArrivalKind::T1);
        }
        // p = 0.5, λ = 0.5: renormalized over {T1, T2} gives (1/2, 1/2).
        let pr = params(0.5, 0.5, 0.5);
        let f = frequencies((0..40_000).map(|_| RetweetGraph::new(pr).unwrap().step(&mut rng).unwrap().kind));
        assert!(!f.contains_key(&ArrivalKind::T3));
        assert_chi_square(&[f[&ArrivalKind::T1], f[&ArrivalKind::T2]], &[0.5, 0.5]);
    }

    #[test]
    fn events_respect_kind_shape() {
        let pr = params(0.7, 0.5, 0.6).with_steps(5_000).with_seed(17);
        let mut before = 1usize;
        let g = run_with(pr, |g, e| {
            match e.kind {
                ArrivalKind::T1 => {
                    assert!(e.new_node.is_some() && e.source.is_none() && e.target.is_none() && e.tree.is_none());
                    assert_eq!(g.node_count(), before + 1);
                }
                ArrivalKind::T2 => {
                    assert_eq!(e.new_node, e.target);
                    assert!(e.source.is_some() && e.tree.is_some());
                    assert_eq!(g.node_count(), before + 1);
                }
                ArrivalKind::T3 => {
                    assert!(e.new_node.is_none());
                    let (u, v) = (e.source.unwrap(), e.target.unwrap());
                    assert_ne!(u, v);
                    assert!((u.0 as usize) < before && (v.0 as usize) < before);
                    assert_eq!(g.node_count(), before);
                    assert!(g.is_tree_member(e.tree.unwrap(), v));
                }
            }
            before = g.node_count();
        })
        .unwrap();
        assert_eq!(g.time(), 5_000);
    }

    #[test]
    fn merge_reduces_component_count_by_one() {
        let pr = params(1.0, 0.3, 0.5).with_steps(3_000).with_seed(99);
        let mut prev = 1usize;
        let mut seen = 0;
        run_with(pr, |g, e| {
            if e.kind == ArrivalKind::T3 {
                let crossing = g.component_count() + 1 == prev;
                let same = g.component_count() == prev;
                assert!(crossing || same);
                if crossing {
                    seen += 1;
                }
            }
            prev = g.component_count();
        })
        .unwrap();
        assert!(seen > 0);
    }

    #[test]
    fn zero_steps_and_determinism() {
        let pr = params(1.0 / 3.0, 0.8, 0.9).with_seed(42);
        let (g, log) = run(pr).unwrap();
        assert!(log.is_empty());
        assert_eq!(g.component_sizes(), [1]);

        let pr = pr.with_steps(20_000);
        let (a, la) = run(pr).unwrap();
        let (b, lb) = run(pr).unwrap();
        assert_eq!(la, lb);
        assert_eq!(a.edges(), b.edges());
        let (_, lc) = run(pr.with_seed(43)).unwrap();
        assert_ne!(la, lc);
    }

    #[test]
    fn tree_members_stay_in_root_component() {
        let pr = params(0.5, 0.4, 0.3).with_steps(4_000).with_seed(5);
        let g = run(pr).unwrap().0;
        for (i, tree) in g.trees().iter().enumerate() {
            let root_comp = g.component_of(tree.root());
            assert_eq!(tree.members()[0], tree.root());
            let mut uniq: Vec<NodeId> = tree.members().to_vec();
            uniq.sort();
            uniq.dedup();
            assert_eq!(uniq.len(), tree.size(), "tree {i} has duplicate members");
            for &m in tree.members() {
                assert_eq!(g.component_of(m), root_comp);
                assert!(g.is_tree_member(TreeId(i as u32), m));
            }
        }
    }
}
