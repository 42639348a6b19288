//! Numeric graph invariants: Randic-type indices, excess, cores, degree
//! statistics and the local quantities used by the near-perfect matching
//! bound.

use std::collections::BTreeMap;

use crate::graph::{Graph, VertexSet};
use crate::matching::MatchingResult;
use crate::{Error, Result};

/// Largest order accepted by [`max_induced_average_degree`], which scans all
/// non-empty vertex subsets.
pub const INDUCED_DENSITY_MAX_N: usize = 20;

/// Weight `1/sqrt(d(u) d(v))` of the edge `uv`.
pub fn edge_weight(g: &Graph, u: u32, v: u32) -> Result<f64> {
    if !g.has_edge(u, v) {
        return Err(Error::NotAnEdge { u, v });
    }
    Ok(1.0 / ((g.degree(u) * g.degree(v)) as f64).sqrt())
}

/// The Randic index: the sum of edge weights. Zero for edgeless graphs.
pub fn randic_index(g: &Graph) -> f64 {
    randic_on_adj(g.adj())
}

/// Shared with the enumeration kernel; iterates edges as `u < v` in
/// lexicographic order so repeated evaluations are bit-identical.
pub(crate) fn randic_on_adj(adj: &[Vec<u32>]) -> f64 {
    let mut sum = 0.0;
    for (u, nbrs) in adj.iter().enumerate() {
        let du = nbrs.len() as f64;
        for &v in nbrs {
            if (v as usize) > u {
                sum += 1.0 / (du * adj[v as usize].len() as f64).sqrt();
            }
        }
    }
    sum
}

/// General Randic index `sum (d(u) d(v))^a`; `a = -1/2` recovers
/// [`randic_index`] and `a = 0` counts edges.
pub fn general_randic_index(g: &Graph, a: f64) -> f64 {
    let mut sum = 0.0;
    for (u, v) in g.edges() {
        sum += ((g.degree(u) * g.degree(v)) as f64).powf(a);
    }
    sum
}

/// Excess (cyclomatic number) `|E| - |V| + 1`. Zero exactly for trees among
/// connected graphs; may be negative for forests.
pub fn excess(g: &Graph) -> i64 {
    g.m() as i64 - g.n() as i64 + 1
}

/// A k-core together with the order-preserving map back to the original
/// vertex ids (`old_ids[new] = old`).
#[derive(Clone, Debug)]
pub struct KCore {
    pub graph: Graph,
    pub old_ids: Vec<u32>,
}

/// Largest induced subgraph of minimum degree >= k, obtained by iteratively
/// deleting low-degree vertices. The fixed point does not depend on the
/// deletion order.
pub fn k_core(g: &Graph, k: usize) -> KCore {
    let n = g.n();
    let mut deg = g.degrees();
    let mut alive = vec![true; n];
    let mut queue: Vec<u32> = (0..n as u32).filter(|&v| deg[v as usize] < k).collect();
    while let Some(v) = queue.pop() {
        if !alive[v as usize] {
            continue;
        }
        alive[v as usize] = false;
        for &w in g.neighbors(v) {
            if alive[w as usize] {
                deg[w as usize] -= 1;
                if deg[w as usize] < k {
                    queue.push(w);
                }
            }
        }
    }
    let survivors: VertexSet = (0..n as u32).filter(|&v| alive[v as usize]).collect();
    KCore {
        graph: g.induced_subgraph(&survivors),
        old_ids: survivors.as_slice().to_vec(),
    }
}

/// Maximum over non-empty vertex subsets S of the average degree of the
/// induced subgraph on S. Brute force over all subsets; refuses graphs with
/// more than [`INDUCED_DENSITY_MAX_N`] vertices.
pub fn max_induced_average_degree(g: &Graph) -> Result<f64> {
    let n = g.n();
    if n > INDUCED_DENSITY_MAX_N {
        return Err(Error::SizeCap {
            op: "max_induced_average_degree",
            max: INDUCED_DENSITY_MAX_N,
            n,
        });
    }
    if n == 0 {
        return Ok(0.0);
    }
    let mut adj_mask = vec![0u32; n];
    for (u, v) in g.edges() {
        adj_mask[u as usize] |= 1 << v;
        adj_mask[v as usize] |= 1 << u;
    }
    let mut scratch = Vec::new();
    Ok(max_induced_avg_on_bits(&adj_mask, n, &mut scratch))
}

/// Subset-DP core of [`max_induced_average_degree`]; `edges[s]` is the edge
/// count of the subgraph induced by subset `s`, built by peeling the lowest
/// vertex. The scratch buffer is reused by the enumeration kernel.
pub(crate) fn max_induced_avg_on_bits(adj_mask: &[u32], n: usize, scratch: &mut Vec<u16>) -> f64 {
    scratch.clear();
    scratch.resize(1usize << n, 0);
    let mut best = 0.0f64;
    for s in 1usize..1 << n {
        let v = s.trailing_zeros() as usize;
        let e = scratch[s & (s - 1)] + (adj_mask[v] & s as u32).count_ones() as u16;
        scratch[s] = e;
        let avg = 2.0 * e as f64 / s.count_ones() as f64;
        if avg > best {
            best = avg;
        }
    }
    best
}

/// Per-matching-edge local weights for a nearly-perfect matching: the edge's
/// own weight plus half the weight of every other edge at its endpoints.
/// Their sum never exceeds the Randic index, since a non-matching edge is
/// counted at most twice at half weight.
pub fn nearly_perfect_local_terms(g: &Graph, m: &MatchingResult) -> Result<Vec<f64>> {
    // Revalidate against g: the matching may come from a different graph.
    MatchingResult::from_edges(g, m.edges().iter().copied())?;
    if !m.is_nearly_perfect(g) {
        return Err(Error::NotNearlyPerfect(format!(
            "matching of size {} saturates {} of {} vertices",
            m.size(),
            2 * m.size(),
            g.n()
        )));
    }
    let mut terms = Vec::with_capacity(m.size());
    for &(u, v) in m.edges() {
        let mut r = edge_weight(g, u, v)?;
        for &w in g.neighbors(u) {
            if w != v {
                r += 0.5 * edge_weight(g, u, w)?;
            }
        }
        for &w in g.neighbors(v) {
            if w != u {
                r += 0.5 * edge_weight(g, v, w)?;
            }
        }
        terms.push(r);
    }
    Ok(terms)
}

/// Evaluates `a1/sqrt(3) + 2 a2/sqrt(6) + (|E| - a1 - 2 a2)/3` from the
/// degree histogram of a subcubic graph in which every pendant vertex hangs
/// off a degree-3 vertex, no two degree-2 vertices are adjacent, and no two
/// pendants share a neighbor. Under those conditions every edge weight is
/// `1/sqrt(3)`, `1/sqrt(6)` or `1/3`, so the value equals the Randic index.
pub fn subcubic_randic_decomposition(g: &Graph) -> Result<f64> {
    if g.max_degree() > 3 {
        return Err(Error::SubcubicPrecondition("maximum degree exceeds 3"));
    }
    let mut pendant_neighbor_seen = vec![false; g.n()];
    for v in g.vertices() {
        match g.degree(v) {
            1 => {
                let w = g.neighbors(v)[0];
                if g.degree(w) != 3 {
                    return Err(Error::SubcubicPrecondition(
                        "a pendant vertex is not adjacent to a degree-3 vertex",
                    ));
                }
                if pendant_neighbor_seen[w as usize] {
                    return Err(Error::SubcubicPrecondition(
                        "two pendant vertices share a neighbor",
                    ));
                }
                pendant_neighbor_seen[w as usize] = true;
            }
            2 if g.neighbors(v).iter().any(|&w| g.degree(w) == 2) => {
                return Err(Error::SubcubicPrecondition(
                    "two adjacent vertices of degree 2",
                ));
            }
            _ => {}
        }
    }
    let hist = DegreeHistogram::of(g);
    let a1 = hist.count(1) as f64;
    let a2 = hist.count(2) as f64;
    Ok(a1 / 3f64.sqrt() + 2.0 * a2 / 6f64.sqrt() + (g.m() as f64 - a1 - 2.0 * a2) / 3.0)
}

/// Vertex counts per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeHistogram {
    counts: BTreeMap<usize, usize>,
    n: usize,
    m: usize,
}

impl DegreeHistogram {
    pub fn of(g: &Graph) -> Self {
        let mut counts = BTreeMap::new();
        for v in g.vertices() {
            *counts.entry(g.degree(v)).or_insert(0) += 1;
        }
        let hist = DegreeHistogram {
            counts,
            n: g.n(),
            m: g.m(),
        };
        debug_assert_eq!(hist.counts.values().sum::<usize>(), hist.n);
        debug_assert_eq!(
            hist.counts.iter().map(|(d, c)| d * c).sum::<usize>(),
            2 * hist.m
        );
        hist
    }

    /// Number of vertices of the given degree.
    pub fn count(&self, degree: usize) -> usize {
        self.counts.get(&degree).copied().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.counts.keys().next_back().copied().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.counts.keys().next().copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.counts.iter().map(|(&d, &c)| (d, c))
    }
}
