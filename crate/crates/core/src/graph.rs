//! Immutable simple undirected graphs with vertex ids `0..n-1`.
//!
//! Graphs are value types: every edit returns a new graph, so values can be
//! shared and sent across threads freely. Adjacency is stored as one sorted
//! neighbor list per vertex; constructions in this crate are sparse, and the
//! enumeration kernel in [`crate::search`] uses packed bitmasks internally
//! and converts.

use crate::{Error, Result};

/// A simple undirected graph: no loops, no multi-edges, symmetric adjacency.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
    m: usize,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges collapse; loops are
    /// rejected, as are endpoints outside `0..n`.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidParameter(format!("loop at vertex {u}")));
            }
            if u as usize >= n || v as usize >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge {u}-{v} out of range for n={n}"
                )));
            }
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        let mut m = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        let g = Graph { adj, m: m / 2 };
        debug_assert!(g.invariants_hold());
        Ok(g)
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Degree of `v`.
    ///
    /// Panics if `v` is not a vertex; vertex ids are internal values, not
    /// user data.
    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    /// Sorted neighbor list of `v`. Panics if `v` is out of range.
    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        u != v
            && (u as usize) < self.n()
            && (v as usize) < self.n()
            && self.adj[u as usize].binary_search(&v).is_ok()
    }

    /// All edges as pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, nbrs)| {
            let u = u as u32;
            nbrs.iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn vertices(&self) -> std::ops::Range<u32> {
        0..self.n() as u32
    }

    /// Degree sequence indexed by vertex id.
    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(|l| l.len()).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|l| l.len()).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(|l| l.len()).min().unwrap_or(0)
    }

    /// Induced subgraph on `s`, relabeled `0..|s|-1` preserving id order.
    ///
    /// Panics if `s` contains a non-vertex.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Graph {
        for &v in s.iter() {
            assert!(
                (v as usize) < self.n(),
                "vertex {v} not in graph of order {}",
                self.n()
            );
        }
        let mut adj = vec![Vec::new(); s.len()];
        let mut m = 0;
        for (new_u, &u) in s.iter().enumerate() {
            for &v in &self.adj[u as usize] {
                if let Some(new_v) = s.rank(v) {
                    adj[new_u].push(new_v as u32);
                }
            }
            m += adj[new_u].len();
        }
        let g = Graph { adj, m: m / 2 };
        debug_assert!(g.invariants_hold());
        g
    }

    /// Removes the vertices in `s`, compacting the survivors in id order.
    pub fn remove_vertices(&self, s: &VertexSet) -> Graph {
        let keep: VertexSet = self.vertices().filter(|v| !s.contains(*v)).collect();
        self.induced_subgraph(&keep)
    }

    /// Replaces the edge `uv` by a path `u - w - v` through a new vertex
    /// `w = n`. Errors if `uv` is not an edge.
    pub fn subdivide_edge(&self, u: u32, v: u32) -> Result<Graph> {
        if !self.has_edge(u, v) {
            return Err(Error::NotAnEdge { u, v });
        }
        let w = self.n() as u32;
        let mut adj = self.adj.clone();
        adj.push(vec![u.min(v), u.max(v)]);
        let pos = adj[u as usize].binary_search(&v).unwrap();
        adj[u as usize].remove(pos);
        adj[u as usize].push(w); // w is the largest id, list stays sorted
        let pos = adj[v as usize].binary_search(&u).unwrap();
        adj[v as usize].remove(pos);
        adj[v as usize].push(w);
        let g = Graph { adj, m: self.m + 1 };
        debug_assert!(g.invariants_hold());
        Ok(g)
    }

    /// Disjoint union; ids of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n() as u32;
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|l| l.iter().map(|&v| v + shift).collect::<Vec<_>>()),
        );
        let g = Graph {
            adj,
            m: self.m + other.m,
        };
        debug_assert!(g.invariants_hold());
        g
    }

    /// Graph join: disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Graph {
        let shift = self.n() as u32;
        let mut adj = self.adj.clone();
        for list in adj.iter_mut() {
            list.extend((0..other.n() as u32).map(|v| v + shift));
        }
        for list in &other.adj {
            let mut new_list: Vec<u32> = (0..shift).collect();
            new_list.extend(list.iter().map(|&w| w + shift));
            debug_assert!(new_list.windows(2).all(|w| w[0] < w[1]));
            adj.push(new_list);
        }
        let g = Graph {
            adj,
            m: self.m + other.m + self.n() * other.n(),
        };
        debug_assert!(g.invariants_hold());
        g
    }

    /// Connected components as sorted vertex lists, ordered by smallest
    /// member.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.clear();
            queue.push(start as u32);
            let mut comp = vec![start as u32];
            while let Some(v) = queue.pop() {
                for &w in &self.adj[v as usize] {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        comp.push(w);
                        queue.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// True when the graph has at most one component (vacuously true for the
    /// empty graph).
    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// Raw adjacency lists, for algorithm kernels inside this crate.
    pub(crate) fn adj(&self) -> &[Vec<u32>] {
        &self.adj
    }

    /// Crate-internal: refills this value from bitmask adjacency, reusing
    /// list capacity. The enumeration kernel owns a private scratch graph
    /// and rebuilds it per mask; such a scratch value is never shared while
    /// dirty, so the public immutability contract is unaffected.
    pub(crate) fn rebuild_from_bits(&mut self, bits: &[u16], n: usize) {
        self.adj.truncate(n);
        while self.adj.len() < n {
            self.adj.push(Vec::new());
        }
        let mut m2 = 0usize;
        for (list, &b) in self.adj.iter_mut().zip(bits) {
            list.clear();
            let mut b = b;
            while b != 0 {
                let w = b.trailing_zeros();
                b &= b - 1;
                list.push(w);
            }
            m2 += list.len();
        }
        self.m = m2 / 2;
    }

    fn invariants_hold(&self) -> bool {
        let n = self.n();
        let mut m2 = 0;
        for (u, list) in self.adj.iter().enumerate() {
            if !list.windows(2).all(|w| w[0] < w[1]) {
                return false; // sorted, no duplicates
            }
            for &v in list {
                if v as usize >= n || v as usize == u {
                    return false;
                }
                if self.adj[v as usize].binary_search(&(u as u32)).is_err() {
                    return false; // symmetry
                }
            }
            m2 += list.len();
        }
        m2 == 2 * self.m
    }
}

/// A set of vertex ids, stored sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexSet {
    members: Vec<u32>,
}

impl VertexSet {
    pub fn new<I: IntoIterator<Item = u32>>(members: I) -> Self {
        let mut members: Vec<u32> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        VertexSet { members }
    }

    pub fn full(n: usize) -> Self {
        VertexSet {
            members: (0..n as u32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// Position of `v` in the sorted member list; this is the new id of `v`
    /// after an order-preserving relabeling.
    pub fn rank(&self, v: u32) -> Option<usize> {
        self.members.binary_search(&v).ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, u32> {
        self.members.iter()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.members
    }
}

impl FromIterator<u32> for VertexSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        VertexSet::new(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{broken_windmill, complete, cycle, path, star};

    #[test]
    fn degree_examples() {
        let s = star(5).unwrap();
        assert_eq!(s.degree(0), 4);
        let k2 = complete(2).unwrap();
        assert_eq!(k2.degree(0), 1);
        assert_eq!(k2.degree(1), 1);
        // hub of BW(3,2) touches both ends of 3 edges and one end of 2 more
        let bw = broken_windmill(3, 2).unwrap();
        assert_eq!(bw.degree(0), 2 * 3 + 2);
    }

    #[test]
    #[should_panic]
    fn degree_out_of_range_panics() {
        let g = Graph::empty(2);
        let _ = g.degree(2);
    }

    #[test]
    fn induced_subgraph_examples() {
        let k3 = complete(3).unwrap();
        let sub = k3.induced_subgraph(&VertexSet::new([0, 1]));
        assert_eq!(sub, complete(2).unwrap());

        let any = path(4).unwrap();
        let empty = any.induced_subgraph(&VertexSet::default());
        assert_eq!(empty.n(), 0);
        assert_eq!(empty.m(), 0);

        // dropping the hub of BW(3,2) leaves 5 independent edges
        let bw = broken_windmill(3, 2).unwrap();
        let rest = bw.remove_vertices(&VertexSet::new([0]));
        assert_eq!(rest.n(), 10);
        assert_eq!(rest.m(), 5);
        assert!(rest.vertices().all(|v| rest.degree(v) == 1));
    }

    #[test]
    #[should_panic]
    fn induced_subgraph_invalid_member_panics() {
        let g = Graph::empty(2);
        let _ = g.induced_subgraph(&VertexSet::new([5]));
    }

    #[test]
    fn remove_vertices_examples() {
        let p3 = path(3).unwrap();
        let g = p3.remove_vertices(&VertexSet::new([1]));
        assert_eq!(g.n(), 2);
        assert_eq!(g.m(), 0);

        let k2 = complete(2).unwrap();
        let g = k2.remove_vertices(&VertexSet::new([0]));
        assert_eq!(g.n(), 1);
    }

    #[test]
    fn subdivide_examples() {
        let k2 = complete(2).unwrap();
        // a path through the fresh middle vertex 2
        let p3 = Graph::from_edges(3, [(0, 2), (2, 1)]).unwrap();
        assert_eq!(k2.subdivide_edge(0, 1).unwrap(), p3);

        let c3 = cycle(3).unwrap();
        let c4 = c3.subdivide_edge(0, 1).unwrap();
        assert_eq!(c4.n(), 4);
        assert_eq!(c4.m(), 4);
        assert!(c4.vertices().all(|v| c4.degree(v) == 2));

        assert_eq!(
            path(3).unwrap().subdivide_edge(0, 2),
            Err(Error::NotAnEdge { u: 0, v: 2 })
        );
    }

    #[test]
    fn union_and_join() {
        let k2 = complete(2).unwrap();
        let two_k2 = k2.disjoint_union(&k2);
        assert_eq!(two_k2.n(), 4);
        assert_eq!(two_k2.m(), 2);
        assert!(!two_k2.is_connected());

        let g = path(4).unwrap();
        assert_eq!(g.disjoint_union(&Graph::empty(0)), g);

        let k1 = Graph::empty(1);
        assert_eq!(k1.join(&k1), complete(2).unwrap());

        // |E(g join h)| = |E(g)| + |E(h)| + |g||h|
        let h = cycle(3).unwrap();
        let j = g.join(&h);
        assert_eq!(j.m(), g.m() + h.m() + g.n() * h.n());
        assert!(j.is_connected());
    }

    #[test]
    fn join_edges_empty_degrees() {
        // join of l independent edges with the empty graph on r-1 vertices:
        // matched vertices have degree r, empty-class vertices degree 2l
        let (l, r) = (4usize, 5usize);
        let lk2 = Graph::from_edges(2 * l, (0..l).map(|i| (2 * i as u32, 2 * i as u32 + 1)))
            .unwrap();
        let j = lk2.join(&Graph::empty(r - 1));
        for v in 0..2 * l as u32 {
            assert_eq!(j.degree(v), r);
        }
        for v in 2 * l as u32..j.n() as u32 {
            assert_eq!(j.degree(v), 2 * l);
        }
    }

    #[test]
    fn components_and_handshake() {
        let g = path(3).unwrap().disjoint_union(&cycle(4).unwrap());
        let comps = g.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0], vec![0, 1, 2]);
        assert_eq!(comps[1], vec![3, 4, 5, 6]);
        let degree_sum: usize = g.vertices().map(|v| g.degree(v)).sum();
        assert_eq!(degree_sum, 2 * g.m());
    }

    #[test]
    fn induced_on_full_set_is_identity() {
        let g = broken_windmill(2, 3).unwrap();
        assert_eq!(g.induced_subgraph(&VertexSet::full(g.n())), g);
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert!(Graph::from_edges(3, [(0, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
        // duplicate edges collapse
        let g = Graph::from_edges(2, [(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.m(), 1);
    }
}
