//! Reverse-search enumeration.
//!
//! Both object families carry a parent rule that strictly climbs towards a
//! unique root, so the parent links form a spanning tree (the family tree)
//! of the reconfiguration graph. The enumerators walk that tree depth first
//! keeping only the current root-to-node path, and emit in prepostorder:
//! nodes at odd depth before their subtree, nodes at even depth after it.
//! Between two emissions the walk then makes at most two moves, where a move
//! is descending to a first child, stepping to the next sibling, or climbing
//! back to the parent.
//!
//! Lotteries of one class are rooted at the lottery without left tangled
//! triples; the parent braids the smallest minimal left triple. Optimal
//! displacement vectors are rooted at the lexicographically largest one; the
//! parent applies `T_{β(x) α(x)}`.

use crate::displacement::{optimal_dv, DisplacementVector};
use crate::lottery::{construct_lottery, Chirality, CyclicLadderLottery};
use crate::perm::Permutation;
use crate::{Error, Result};

/// Counters kept by a traversal.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TraversalStats {
    pub outputs: u64,
    /// Tree moves: first-child descents, sibling steps and climbs.
    pub moves: u64,
    pub max_moves_between_outputs: u64,
    /// Largest number of max-min index sequence entries read while producing
    /// one child (vector enumeration only).
    pub max_sequence_reads_per_step: u64,
}

impl TraversalStats {
    fn merge(&mut self, other: &TraversalStats) {
        self.outputs += other.outputs;
        self.moves += other.moves;
        self.max_moves_between_outputs = self
            .max_moves_between_outputs
            .max(other.max_moves_between_outputs);
        self.max_sequence_reads_per_step = self
            .max_sequence_reads_per_step
            .max(other.max_sequence_reads_per_step);
    }
}

/// An emitted object together with its depth in the family tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyTreeNode<T> {
    pub object: T,
    pub depth: usize,
}

/// Child generation for one family tree.
trait ReverseSearch {
    type Node;
    type Cursor;
    type Output;

    fn children(&mut self, node: &Self::Node) -> Self::Cursor;
    fn next_child(&mut self, node: &Self::Node, cursor: &mut Self::Cursor) -> Option<Self::Node>;
    /// Called when the walk climbs out of `node`.
    fn leave(&mut self, _node: &Self::Node) {}
    fn output(&self, node: &Self::Node) -> Self::Output;
    fn reads(&self) -> u64 {
        0
    }
}

struct Frame<S: ReverseSearch> {
    node: S::Node,
    cursor: Option<S::Cursor>,
    depth: usize,
    children_seen: usize,
}

struct PrePostOrder<S: ReverseSearch> {
    source: S,
    root: Option<S::Node>,
    stack: Vec<Frame<S>>,
    since_output: u64,
    stats: TraversalStats,
}

impl<S: ReverseSearch> PrePostOrder<S> {
    fn new(source: S, root: S::Node) -> Self {
        PrePostOrder {
            source,
            root: Some(root),
            stack: Vec::new(),
            since_output: 0,
            stats: TraversalStats::default(),
        }
    }

    fn emit(&mut self, object: S::Output, depth: usize) -> FamilyTreeNode<S::Output> {
        self.stats.outputs += 1;
        self.stats.max_moves_between_outputs =
            self.stats.max_moves_between_outputs.max(self.since_output);
        self.stats.max_sequence_reads_per_step = self.source.reads();
        self.since_output = 0;
        FamilyTreeNode { object, depth }
    }

    fn next_node(&mut self) -> Option<FamilyTreeNode<S::Output>> {
        if let Some(root) = self.root.take() {
            self.stack.push(Frame {
                node: root,
                cursor: None,
                depth: 0,
                children_seen: 0,
            });
        }
        loop {
            let top = self.stack.last_mut()?;
            if top.cursor.is_none() {
                top.cursor = Some(self.source.children(&top.node));
                if top.depth % 2 == 1 {
                    let (out, depth) = (self.source.output(&top.node), top.depth);
                    return Some(self.emit(out, depth));
                }
                continue;
            }
            let cursor = top.cursor.as_mut().expect("entered");
            if let Some(child) = self.source.next_child(&top.node, cursor) {
                // a sibling step was already counted when its predecessor was left
                if top.children_seen == 0 {
                    self.since_output += 1;
                    self.stats.moves += 1;
                }
                top.children_seen += 1;
                let depth = top.depth + 1;
                self.stack.push(Frame {
                    node: child,
                    cursor: None,
                    depth,
                    children_seen: 0,
                });
                continue;
            }
            let frame = self.stack.pop().expect("non-empty");
            let out = frame
                .depth
                .is_multiple_of(2)
                .then(|| self.source.output(&frame.node));
            self.source.leave(&frame.node);
            let emitted = out.map(|o| self.emit(o, frame.depth));
            if !self.stack.is_empty() {
                self.since_output += 1;
                self.stats.moves += 1;
            }
            if emitted.is_some() {
                return emitted;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Lotteries of a fixed class

fn smallest_minimal_left(l: &CyclicLadderLottery) -> Result<Option<[usize; 3]>> {
    Ok(l.minimal_triples(Chirality::Left)?.into_iter().next())
}

/// Parent in the family tree: braid the smallest minimal left triple.
pub fn cll_parent(l: &CyclicLadderLottery) -> Result<CyclicLadderLottery> {
    let triples = l.tangled_triples()?;
    if triples.iter().all(|t| t.chirality != Chirality::Left) {
        return Err(Error::IsRoot);
    }
    let t = triples
        .iter()
        .find(|t| t.minimal && t.chirality == Chirality::Left)
        .ok_or_else(|| Error::Internal(format!("{l:?} has left triples but no minimal one")))?;
    l.apply_braid(t.elements)
}

/// The lottery of `(π, y)` without left tangled triples.
pub fn cll_root(perm: &Permutation, y: &DisplacementVector) -> Result<CyclicLadderLottery> {
    let mut l = construct_lottery(perm, y)?;
    loop {
        match cll_parent(&l) {
            Ok(p) => l = p,
            Err(Error::IsRoot) => return Ok(l),
            Err(e) => return Err(e),
        }
    }
}

/// `L(t)` when it is a child of `l`, i.e. when `t` is the smallest minimal
/// left triple of `L(t)`.
fn child_via(l: &CyclicLadderLottery, t: [usize; 3]) -> Result<Option<CyclicLadderLottery>> {
    let child = l.apply_braid(t)?;
    Ok((smallest_minimal_left(&child)? == Some(t)).then_some(child))
}

/// Children in the family tree, by increasing braided triple.
pub fn cll_children(l: &CyclicLadderLottery) -> Result<Vec<CyclicLadderLottery>> {
    let mut out = Vec::new();
    for t in l.minimal_triples(Chirality::Right)? {
        if let Some(c) = child_via(l, t)? {
            out.push(c);
        }
    }
    Ok(out)
}

struct CllSource;

impl ReverseSearch for CllSource {
    type Node = CyclicLadderLottery;
    type Cursor = std::vec::IntoIter<[usize; 3]>;
    type Output = CyclicLadderLottery;

    fn children(&mut self, node: &CyclicLadderLottery) -> Self::Cursor {
        node.minimal_triples(Chirality::Right)
            .expect("family tree members are at-most-once")
            .into_iter()
    }

    fn next_child(
        &mut self,
        node: &CyclicLadderLottery,
        cursor: &mut Self::Cursor,
    ) -> Option<CyclicLadderLottery> {
        cursor.find_map(|t| child_via(node, t).expect("minimal right triples braid"))
    }

    fn output(&self, node: &CyclicLadderLottery) -> CyclicLadderLottery {
        node.clone()
    }
}

/// Prepostorder stream of every lottery of `π` with displacement vector `y`
/// in which no two routes cross twice.
pub struct CllEnumerator {
    walk: PrePostOrder<CllSource>,
}

impl CllEnumerator {
    pub fn stats(&self) -> TraversalStats {
        self.walk.stats
    }

    pub fn next_node(&mut self) -> Option<FamilyTreeNode<CyclicLadderLottery>> {
        self.walk.next_node()
    }
}

impl Iterator for CllEnumerator {
    type Item = CyclicLadderLottery;

    fn next(&mut self) -> Option<CyclicLadderLottery> {
        self.walk.next_node().map(|n| n.object)
    }
}

pub fn enum_cll(perm: &Permutation, y: &DisplacementVector) -> Result<CllEnumerator> {
    let root = cll_root(perm, y)?;
    Ok(CllEnumerator {
        walk: PrePostOrder::new(CllSource, root),
    })
}

// ---------------------------------------------------------------------------
// Optimal displacement vectors

/// Positions of the maximum and minimum entries of a vector whose extremes
/// differ by exactly `n`, with the ranks of `α(x)` (first minimum) and
/// `β(x)` (first maximum after `α`). Ranks are 1-based; `q = ℓ + 1` when
/// `β` does not exist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxMinIndexSequence {
    pub indices: Vec<usize>,
    pub p: usize,
    pub q: usize,
}

impl MaxMinIndexSequence {
    /// `None` when `max(x) - min(x) < n`: no contraction applies.
    pub fn of(x: &DisplacementVector) -> Option<Self> {
        let (hi, lo) = (x.max_entry(), x.min_entry());
        if hi - lo != x.n() as i64 {
            return None;
        }
        let indices: Vec<usize> = (1..=x.n())
            .filter(|&i| x.get(i) == hi || x.get(i) == lo)
            .collect();
        let p = 1 + indices
            .iter()
            .position(|&i| x.get(i) == lo)
            .expect("minimum present");
        let q = indices[p..]
            .iter()
            .position(|&i| x.get(i) == hi)
            .map_or(indices.len() + 1, |k| p + k + 1);
        Some(MaxMinIndexSequence { indices, p, q })
    }

    pub fn alpha(&self) -> usize {
        self.indices[self.p - 1]
    }

    pub fn beta(&self) -> Option<usize> {
        self.indices.get(self.q - 1).copied()
    }
}

/// Parent `T_{β(x) α(x)}(x)`; lexicographically larger than `x`.
pub fn dv_parent(x: &DisplacementVector) -> Result<DisplacementVector> {
    let seq = MaxMinIndexSequence::of(x).ok_or(Error::IsRoot)?;
    let beta = seq.beta().ok_or(Error::IsRoot)?;
    x.contract(beta, seq.alpha())
}

/// Lexicographically largest optimal displacement vector of `π`.
pub fn dv_root(perm: &Permutation) -> DisplacementVector {
    let mut x = optimal_dv(perm);
    while let Ok(p) = dv_parent(&x) {
        x = p;
    }
    x
}

/// Children `T_{m_{p-1} m_j}(x)` for `j = p, ..., q - 1`.
pub fn dv_children(x: &DisplacementVector) -> Vec<DisplacementVector> {
    let Some(seq) = MaxMinIndexSequence::of(x) else {
        return vec![];
    };
    if seq.p < 2 {
        return vec![];
    }
    let hi = seq.indices[seq.p - 2];
    (seq.p..seq.q)
        .map(|j| x.contract(hi, seq.indices[j - 1]).expect("max-min pair"))
        .collect()
}

struct DvNode {
    p: usize,
    q: usize,
    applied: Option<(usize, usize)>,
}

/// Vector enumeration state: one vector mutated in place, the shared
/// max-min index sequence, and per-node ranks `p`, `q`.
struct DvSource {
    x: DisplacementVector,
    indices: Vec<usize>,
    step_reads: u64,
    max_reads: u64,
}

impl ReverseSearch for DvSource {
    type Node = DvNode;
    type Cursor = usize;
    type Output = DisplacementVector;

    fn children(&mut self, node: &DvNode) -> usize {
        node.p
    }

    fn next_child(&mut self, node: &DvNode, j: &mut usize) -> Option<DvNode> {
        if node.p < 2 || *j >= node.q {
            return None;
        }
        self.step_reads = 0;
        let a = self.indices[node.p - 2];
        let b = self.indices[*j - 1];
        self.step_reads += 2;
        self.max_reads = self.max_reads.max(self.step_reads);
        let n = self.x.n() as i64;
        let e = self.x.entries_mut();
        e[a - 1] -= n;
        e[b - 1] += n;
        let child = DvNode {
            p: node.p - 1,
            q: *j,
            applied: Some((a, b)),
        };
        *j += 1;
        Some(child)
    }

    fn leave(&mut self, node: &DvNode) {
        if let Some((a, b)) = node.applied {
            let n = self.x.n() as i64;
            let e = self.x.entries_mut();
            e[a - 1] += n;
            e[b - 1] -= n;
        }
    }

    fn output(&self, _node: &DvNode) -> DisplacementVector {
        self.x.clone()
    }

    fn reads(&self) -> u64 {
        self.max_reads
    }
}

/// Prepostorder stream of the optimal displacement vectors of `π`.
pub struct DvEnumerator {
    walk: PrePostOrder<DvSource>,
}

impl DvEnumerator {
    pub fn stats(&self) -> TraversalStats {
        self.walk.stats
    }

    pub fn next_node(&mut self) -> Option<FamilyTreeNode<DisplacementVector>> {
        self.walk.next_node()
    }
}

impl Iterator for DvEnumerator {
    type Item = DisplacementVector;

    fn next(&mut self) -> Option<DisplacementVector> {
        self.walk.next_node().map(|n| n.object)
    }
}

pub fn enum_dv(perm: &Permutation) -> DvEnumerator {
    let root = dv_root(perm);
    let (indices, p, q) = match MaxMinIndexSequence::of(&root) {
        Some(s) => (s.indices, s.p, s.q),
        None => (vec![], 1, 1),
    };
    let source = DvSource {
        x: root,
        indices,
        step_reads: 0,
        max_reads: 0,
    };
    DvEnumerator {
        walk: PrePostOrder::new(
            source,
            DvNode {
                p,
                q,
                applied: None,
            },
        ),
    }
}

// ---------------------------------------------------------------------------
// All optimal lotteries

/// Every optimal lottery of `π`: the lottery streams of each optimal vector,
/// in vector enumeration order.
pub struct AllLotteries {
    perm: Permutation,
    vectors: DvEnumerator,
    current: Option<CllEnumerator>,
    finished: TraversalStats,
}

impl AllLotteries {
    /// Vector-level stats merged with those of every finished lottery stream.
    pub fn stats(&self) -> TraversalStats {
        let mut s = self.finished;
        s.merge(&self.vectors.stats());
        if let Some(c) = &self.current {
            s.merge(&c.stats());
        }
        s
    }
}

impl Iterator for AllLotteries {
    type Item = CyclicLadderLottery;

    fn next(&mut self) -> Option<CyclicLadderLottery> {
        loop {
            if let Some(cur) = self.current.as_mut() {
                if let Some(l) = cur.next() {
                    return Some(l);
                }
                let done = self.current.take().expect("present").stats();
                self.finished.merge(&done);
            }
            let x = self.vectors.next()?;
            let stream = enum_cll(&self.perm, &x).expect("optimal vectors construct");
            self.current = Some(stream);
        }
    }
}

pub fn enum_all(perm: &Permutation) -> AllLotteries {
    AllLotteries {
        perm: perm.clone(),
        vectors: enum_dv(perm),
        current: None,
        finished: TraversalStats::default(),
    }
}
