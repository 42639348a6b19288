//! Leaf-removal reduction: repeatedly strip a leaf whose removal keeps the
//! matching number (rule i), otherwise a leaf together with its degree-2
//! neighbor (rule ii), until neither applies. Each step loses a certified
//! minimum amount of Randic index relative to the matching number it gives
//! up, and the excess never changes, which is what makes the terminal graph
//! comparable to the 2-core of the input.

use std::fmt;

use crate::graph::{Graph, VertexSet};
use crate::invariants::{excess, randic_index};
use crate::matching::max_matching;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionRule {
    /// Remove a leaf `u` with `alpha'(G - u) = alpha'(G)`.
    LeafSameMatching,
    /// Remove a leaf `u` and its degree-2 neighbor `v`.
    LeafDegreeTwoNeighbor,
}

impl fmt::Display for ReductionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionRule::LeafSameMatching => write!(f, "leaf-same-matching"),
            ReductionRule::LeafDegreeTwoNeighbor => write!(f, "leaf-degree-two-neighbor"),
        }
    }
}

/// One applied reduction step. `removed` uses the labels of the graph the
/// step was applied to, `removed_original` the labels of the input graph.
#[derive(Clone, Debug)]
pub struct ReductionStep {
    pub rule: ReductionRule,
    pub removed: Vec<u32>,
    pub removed_original: Vec<u32>,
    pub delta_randic: f64,
    pub delta_matching: usize,
    /// Order of the graph the step was applied to.
    pub n_at_step: usize,
}

/// A full reduction run, with enough bookkeeping to replay it and to chase
/// vertices of the input through the relabelings.
#[derive(Clone, Debug)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub final_graph: Graph,
    /// `final_original_ids[v]` is the input label of final vertex `v`.
    pub final_original_ids: Vec<u32>,
    pub initial_n: usize,
    pub initial_randic: f64,
    pub initial_matching: usize,
    pub final_randic: f64,
    pub final_matching: usize,
}

impl ReductionTrace {
    pub fn step_count(&self) -> usize {
        self.steps.len()
    }

    /// Line-oriented log: step index, rule, removed input labels, the Randic
    /// loss to 12 decimals, and the matching-number loss.
    pub fn log_lines(&self) -> String {
        let mut out = String::new();
        for (i, step) in self.steps.iter().enumerate() {
            let ids: Vec<String> = step.removed_original.iter().map(u32::to_string).collect();
            out.push_str(&format!(
                "{i} {} {} {:.12} {}\n",
                step.rule,
                ids.join(","),
                step.delta_randic,
                step.delta_matching
            ));
        }
        out
    }
}

/// Picks the next reduction step, if any: the lowest-id leaf qualifying for
/// rule (i), otherwise the lexicographically first `(leaf, degree-2
/// neighbor)` pair for rule (ii). Determinism here is what makes traces
/// reproducible; the sequence itself is not mathematically unique.
pub fn reduction_step(g: &Graph) -> Option<(ReductionRule, Vec<u32>)> {
    let alpha = max_matching(g).size();
    for u in g.vertices() {
        if g.degree(u) == 1 {
            let without = g.remove_vertices(&VertexSet::new([u]));
            if max_matching(&without).size() == alpha {
                return Some((ReductionRule::LeafSameMatching, vec![u]));
            }
        }
    }
    for u in g.vertices() {
        if g.degree(u) == 1 {
            let v = g.neighbors(u)[0];
            if g.degree(v) == 2 {
                return Some((ReductionRule::LeafDegreeTwoNeighbor, vec![u, v]));
            }
        }
    }
    None
}

/// Runs the reduction to its terminal graph, asserting the per-step
/// certificates: constant excess, `delta_alpha` as dictated by the rule, and
/// the step-wise Randic losses `> 1/(2 sqrt(n))` for rule (i) and
/// `> 1/sqrt(2) + 1/(4 sqrt(n))` for rule (ii), with `n` the input order.
/// For trees the terminal graph has at most 2 vertices.
pub fn run_reduction(g: &Graph) -> Result<ReductionTrace> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n0 = g.n() as f64;
    let initial_excess = excess(g);
    let initial_randic = randic_index(g);
    let initial_matching = max_matching(g).size();

    let mut current = g.clone();
    let mut original_ids: Vec<u32> = g.vertices().collect();
    let mut randic = initial_randic;
    let mut alpha = initial_matching;
    let mut steps = Vec::new();

    while let Some((rule, removed)) = reduction_step(&current) {
        let removed_original: Vec<u32> = removed
            .iter()
            .map(|&v| original_ids[v as usize])
            .collect();
        let n_at_step = current.n();
        let set = VertexSet::new(removed.iter().copied());
        let next = current.remove_vertices(&set);
        let next_randic = randic_index(&next);
        let next_alpha = max_matching(&next).size();

        assert_eq!(
            excess(&next),
            initial_excess,
            "excess must be invariant along the trace"
        );
        let delta_randic = randic - next_randic;
        let delta_matching = alpha - next_alpha;
        match rule {
            ReductionRule::LeafSameMatching => {
                assert_eq!(delta_matching, 0, "rule (i) preserves the matching number");
                assert!(
                    delta_randic > 1.0 / (2.0 * n0.sqrt()),
                    "rule (i) loses more than 1/(2 sqrt(n)): {delta_randic}"
                );
            }
            ReductionRule::LeafDegreeTwoNeighbor => {
                assert_eq!(delta_matching, 1, "rule (ii) drops the matching number by 1");
                assert!(
                    delta_randic > 1.0 / 2f64.sqrt() + 1.0 / (4.0 * n0.sqrt()),
                    "rule (ii) loses more than 1/sqrt(2) + 1/(4 sqrt(n)): {delta_randic}"
                );
            }
        }

        original_ids = original_ids
            .iter()
            .enumerate()
            .filter(|(v, _)| !set.contains(*v as u32))
            .map(|(_, &orig)| orig)
            .collect();
        steps.push(ReductionStep {
            rule,
            removed,
            removed_original,
            delta_randic,
            delta_matching,
            n_at_step,
        });
        current = next;
        randic = next_randic;
        alpha = next_alpha;
    }

    if initial_excess == 0 && g.n() >= 1 {
        assert!(
            current.n() <= 2,
            "tree reduction must end with at most 2 vertices, got {}",
            current.n()
        );
    }

    Ok(ReductionTrace {
        steps,
        final_original_ids: original_ids,
        initial_n: g.n(),
        initial_randic,
        initial_matching,
        final_randic: randic,
        final_matching: alpha,
        final_graph: current,
    })
}

/// Removes every leaf whose neighbor has degree exactly 3, degrees measured
/// in the input graph. Applied to a terminal graph of [`run_reduction`],
/// the result keeps at least half the vertices and every surviving leaf
/// hangs off its own vertex of degree at least 4.
pub fn strip_leaves_at_degree3(g: &Graph) -> Graph {
    let doomed: VertexSet = g
        .vertices()
        .filter(|&v| g.degree(v) == 1 && g.degree(g.neighbors(v)[0]) == 3)
        .collect();
    g.remove_vertices(&doomed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{leaves_anchored_at_degree4, BoundChecker};
    use crate::constructions::{corona_k1, cycle, path, star};
    use crate::invariants::k_core;
    use crate::matching::matching_oracle;

    #[test]
    fn step_selection_examples() {
        // every leaf of a star keeps alpha' = 1 when removed
        let (rule, removed) = reduction_step(&star(5).unwrap()).unwrap();
        assert_eq!(rule, ReductionRule::LeafSameMatching);
        assert_eq!(removed, vec![1]); // lowest qualifying leaf

        // P4: dropping either end loses a matching edge, so rule (ii) fires
        assert_eq!(matching_oracle(&path(3).unwrap()).unwrap(), 1);
        assert_eq!(matching_oracle(&path(4).unwrap()).unwrap(), 2);
        let (rule, removed) = reduction_step(&path(4).unwrap()).unwrap();
        assert_eq!(rule, ReductionRule::LeafDegreeTwoNeighbor);
        assert_eq!(removed, vec![0, 1]);

        assert_eq!(reduction_step(&cycle(5).unwrap()), None);
    }

    #[test]
    fn tree_traces_end_small() {
        for g in [
            path(9).unwrap(),
            star(8).unwrap(),
            corona_k1(&path(4).unwrap()),
        ] {
            let trace = run_reduction(&g).unwrap();
            assert!(trace.final_graph.n() <= 2, "{:?}", trace.final_graph);
        }
    }

    #[test]
    fn telescoping_and_display_bound() {
        let g = corona_k1(&cycle(5).unwrap());
        let trace = run_reduction(&g).unwrap();
        let sum_dr: f64 = trace.steps.iter().map(|s| s.delta_randic).sum();
        let sum_da: usize = trace.steps.iter().map(|s| s.delta_matching).sum();
        assert!((trace.initial_randic - trace.final_randic - sum_dr).abs() < 1e-9);
        assert_eq!(trace.initial_matching - trace.final_matching, sum_da);

        // R(G) >= alpha'(G)/sqrt(2) + R(G_r) - alpha'(G_r)/sqrt(2)
        //         + (n - |G_r|)/(8 sqrt(n))
        let n = trace.initial_n as f64;
        let rhs = trace.initial_matching as f64 / 2f64.sqrt() + trace.final_randic
            - trace.final_matching as f64 / 2f64.sqrt()
            + (n - trace.final_graph.n() as f64) / (8.0 * n.sqrt());
        assert!(trace.initial_randic >= rhs - 1e-9);
    }

    #[test]
    fn rejects_disconnected() {
        let g = path(3).unwrap().disjoint_union(&path(3).unwrap());
        assert!(matches!(run_reduction(&g), Err(Error::Disconnected)));
    }

    #[test]
    fn terminal_graph_contains_two_core() {
        // pentagon with a tail of length 3: the 2-core is the pentagon
        let mut edges: Vec<(u32, u32)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        edges.extend([(0, 5), (5, 6), (6, 7)]);
        let g = Graph::from_edges(8, edges).unwrap();
        let trace = run_reduction(&g).unwrap();
        let core = k_core(&g, 2);
        for &orig in &core.old_ids {
            assert!(
                trace.final_original_ids.contains(&orig),
                "2-core vertex {orig} must survive"
            );
        }
        // at most one leaf next to each vertex of the terminal 2-core
        let fin = &trace.final_graph;
        for v in fin.vertices() {
            let leaf_neighbors = fin
                .neighbors(v)
                .iter()
                .filter(|&&w| fin.degree(w) == 1)
                .count();
            assert!(leaf_neighbors <= 1);
        }
    }

    #[test]
    fn strip_examples() {
        let g = corona_k1(&cycle(5).unwrap());
        assert_eq!(strip_leaves_at_degree3(&g), cycle(5).unwrap());
        let c5 = cycle(5).unwrap();
        assert_eq!(strip_leaves_at_degree3(&c5), c5);
    }

    #[test]
    fn stripped_terminal_satisfies_leaf_anchoring() {
        // hub with two triangles and one pendant: terminal, leaf at degree 4
        let g = Graph::from_edges(
            6,
            [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4), (0, 5)],
        )
        .unwrap();
        let trace = run_reduction(&g).unwrap();
        let h = strip_leaves_at_degree3(&trace.final_graph);
        assert!(h.n() * 2 >= trace.final_graph.n());
        assert!(leaves_anchored_at_degree4(&h));
        let report = BoundChecker::default().check_leaf_anchored_excess(&h);
        assert!(report.bound_held);
    }

    #[test]
    fn log_format() {
        let trace = run_reduction(&path(4).unwrap()).unwrap();
        let log = trace.log_lines();
        let first = log.lines().next().unwrap();
        let fields: Vec<&str> = first.split(' ').collect();
        assert_eq!(fields.len(), 5);
        assert_eq!(fields[0], "0");
        assert_eq!(fields[1], "leaf-degree-two-neighbor");
        assert_eq!(fields[2], "0,1");
        assert_eq!(fields[4], "1");
        let dr: f64 = fields[3].parse().unwrap();
        assert!(dr > 1.0 / 2f64.sqrt());
        assert_eq!(fields[3].split('.').nth(1).unwrap().len(), 12);
    }
}
