//! Maximum matchings: an Edmonds blossom implementation (the performance
//! path, O(V^3)) and a brute-force oracle used to cross-check it on small
//! graphs.

use crate::graph::Graph;
use crate::{Error, Result};

/// Largest order accepted by [`matching_oracle`]; the branching recursion is
/// exponential and meant only for cross-checks.
pub const ORACLE_MAX_N: usize = 14;

/// A maximum matching: pairwise vertex-disjoint edges of the source graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingResult {
    edges: Vec<(u32, u32)>,
}

impl MatchingResult {
    /// Matching size, i.e. the matching number when produced by
    /// [`max_matching`].
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` pairs with `u < v`, sorted.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Validates that `edges` is a matching of `g` (edges exist, no shared
    /// endpoints).
    pub fn from_edges<I>(g: &Graph, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut seen = vec![false; g.n()];
        let mut out = Vec::new();
        for (u, v) in edges {
            if !g.has_edge(u, v) {
                return Err(Error::NotAMatching(format!("{u}-{v} is not an edge")));
            }
            if seen[u as usize] || seen[v as usize] {
                return Err(Error::NotAMatching(format!("{u}-{v} reuses a vertex")));
            }
            seen[u as usize] = true;
            seen[v as usize] = true;
            out.push((u.min(v), u.max(v)));
        }
        out.sort_unstable();
        Ok(MatchingResult { edges: out })
    }

    /// True when the matching saturates all but at most one vertex of `g`.
    pub fn is_nearly_perfect(&self, g: &Graph) -> bool {
        2 * self.size() >= g.n().saturating_sub(1)
    }
}

/// Computes a maximum matching with the blossom algorithm.
pub fn max_matching(g: &Graph) -> MatchingResult {
    let mut ws = Blossom::new(g.n());
    let mates = ws.run(g.adj());
    let mut edges = Vec::new();
    for (v, &u) in mates.iter().enumerate() {
        if u >= 0 && (u as usize) > v {
            edges.push((v as u32, u as u32));
        }
    }
    let result = MatchingResult { edges };
    debug_assert!(MatchingResult::from_edges(g, result.edges.iter().copied()).is_ok());
    result
}

/// Exact matching number by exhaustive branching on the lowest-indexed
/// vertex that still has an edge: either that vertex is unmatched, or it is
/// matched along one of its incident edges. No memoization; refuses graphs
/// with more than [`ORACLE_MAX_N`] vertices.
pub fn matching_oracle(g: &Graph) -> Result<usize> {
    if g.n() > ORACLE_MAX_N {
        return Err(Error::SizeCap {
            op: "matching_oracle",
            max: ORACLE_MAX_N,
            n: g.n(),
        });
    }
    let mut adj = [0u16; ORACLE_MAX_N];
    for (u, v) in g.edges() {
        adj[u as usize] |= 1 << v;
        adj[v as usize] |= 1 << u;
    }
    let alive = if g.n() == 0 {
        0
    } else {
        (1u16 << g.n()) - 1
    };
    Ok(oracle_masks(&adj, alive))
}

/// Branching recursion over bitmask adjacency; `alive` marks the remaining
/// vertices. Shared with the enumeration kernel.
pub(crate) fn oracle_masks(adj: &[u16], alive: u16) -> usize {
    let mut rest = alive;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        let nbrs = adj[v] & alive;
        if nbrs != 0 {
            let without_v = alive & !(1u16 << v);
            let mut best = oracle_masks(adj, without_v);
            let mut e = nbrs;
            while e != 0 {
                let u = e.trailing_zeros();
                e &= e - 1;
                best = best.max(1 + oracle_masks(adj, without_v & !(1u16 << u)));
            }
            return best;
        }
        rest &= rest - 1;
    }
    0
}

/// Reusable blossom state. The enumeration kernel calls [`Blossom::run`]
/// millions of times; keeping the buffers avoids per-graph allocation.
pub(crate) struct Blossom {
    mate: Vec<i32>,
    parent: Vec<i32>,
    base: Vec<u32>,
    queue: Vec<u32>,
    used: Vec<bool>,
    blossom: Vec<bool>,
    on_path: Vec<bool>,
}

impl Blossom {
    pub(crate) fn new(capacity: usize) -> Self {
        Blossom {
            mate: vec![-1; capacity],
            parent: vec![-1; capacity],
            base: (0..capacity as u32).collect(),
            queue: Vec::with_capacity(capacity),
            used: vec![false; capacity],
            blossom: vec![false; capacity],
            on_path: vec![false; capacity],
        }
    }

    fn ensure(&mut self, n: usize) {
        if self.mate.len() < n {
            *self = Blossom::new(n);
        }
    }

    /// Returns the mate array (`-1` for unmatched) for the given adjacency.
    pub(crate) fn run(&mut self, adj: &[Vec<u32>]) -> &[i32] {
        let n = adj.len();
        self.ensure(n);
        self.mate[..n].fill(-1);
        // Greedy seed matching; the augmenting search then only runs from
        // the vertices the greedy phase missed.
        for (v, nbrs) in adj.iter().enumerate() {
            if self.mate[v] < 0 {
                for &u in nbrs {
                    if self.mate[u as usize] < 0 {
                        self.mate[v] = u as i32;
                        self.mate[u as usize] = v as i32;
                        break;
                    }
                }
            }
        }
        for v in 0..n {
            if self.mate[v] < 0 {
                self.augment_from(v as u32, adj);
            }
        }
        &self.mate[..n]
    }

    /// Matching number of the given adjacency.
    pub(crate) fn matching_size(&mut self, adj: &[Vec<u32>]) -> usize {
        self.run(adj).iter().filter(|&&m| m >= 0).count() / 2
    }

    fn lca(&mut self, mut a: u32, mut b: u32) -> u32 {
        self.on_path.fill(false);
        loop {
            a = self.base[a as usize];
            self.on_path[a as usize] = true;
            if self.mate[a as usize] < 0 {
                break;
            }
            a = self.parent[self.mate[a as usize] as usize] as u32;
        }
        loop {
            b = self.base[b as usize];
            if self.on_path[b as usize] {
                return b;
            }
            b = self.parent[self.mate[b as usize] as usize] as u32;
        }
    }

    fn mark_path(&mut self, mut v: u32, b: u32, mut child: u32) {
        while self.base[v as usize] != b {
            self.blossom[self.base[v as usize] as usize] = true;
            let mv = self.mate[v as usize] as u32;
            self.blossom[self.base[mv as usize] as usize] = true;
            self.parent[v as usize] = child as i32;
            child = mv;
            v = self.parent[mv as usize] as u32;
        }
    }

    fn augment_from(&mut self, root: u32, adj: &[Vec<u32>]) -> bool {
        let n = adj.len();
        self.used[..n].fill(false);
        self.parent[..n].fill(-1);
        for (i, b) in self.base[..n].iter_mut().enumerate() {
            *b = i as u32;
        }
        self.used[root as usize] = true;
        self.queue.clear();
        self.queue.push(root);
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            for &to in &adj[v as usize] {
                if self.base[v as usize] == self.base[to as usize]
                    || self.mate[v as usize] == to as i32
                {
                    continue;
                }
                if to == root
                    || (self.mate[to as usize] >= 0
                        && self.parent[self.mate[to as usize] as usize] >= 0)
                {
                    // Odd cycle: contract the blossom to its base.
                    let curbase = self.lca(v, to);
                    self.blossom[..n].fill(false);
                    self.mark_path(v, curbase, to);
                    self.mark_path(to, curbase, v);
                    for i in 0..n {
                        if self.blossom[self.base[i] as usize] {
                            self.base[i] = curbase;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push(i as u32);
                            }
                        }
                    }
                } else if self.parent[to as usize] < 0 {
                    self.parent[to as usize] = v as i32;
                    if self.mate[to as usize] < 0 {
                        // Augmenting path found; flip matched edges along it.
                        let mut v = to as i32;
                        while v >= 0 {
                            let pv = self.parent[v as usize];
                            let ppv = self.mate[pv as usize];
                            self.mate[v as usize] = pv;
                            self.mate[pv as usize] = v;
                            v = ppv;
                        }
                        return true;
                    }
                    let mv = self.mate[to as usize] as usize;
                    if !self.used[mv] {
                        self.used[mv] = true;
                        self.queue.push(mv as u32);
                    }
                }
            }
        }
        false
    }
}
