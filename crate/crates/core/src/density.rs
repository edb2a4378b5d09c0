//! Average and maximum average degree in exact rational arithmetic.
//!
//! The densest subgraph is found by parametric min-cut: for a trial density
//! `a/b`, the closure network below yields a vertex set maximizing
//! `b·|E(H)| - a·|V(H)|`. Starting from the whole graph's density, each cut
//! either certifies optimality (maximum 0) or returns a strictly denser
//! subgraph, whose density becomes the next trial value. Densities are
//! fractions with denominator at most `n`, so the sequence is finite.

use std::collections::VecDeque;

use crate::graph::Graph;
use crate::Rational;

/// `2|E| / |V|`; zero for the empty graph.
pub fn average_degree(g: &Graph) -> Rational {
    if g.n() == 0 {
        return Rational::from_integer(0);
    }
    Rational::new(2 * g.m() as i64, g.n() as i64)
}

/// Maximum over nonempty subgraphs `H` of `2|E(H)| / |V(H)|`.
pub fn mad_exact(g: &Graph) -> Rational {
    densest_subgraph(g).0
}

/// Returns `mad(g)` together with a vertex set attaining it.
pub fn densest_subgraph(g: &Graph) -> (Rational, Vec<usize>) {
    if g.n() == 0 {
        return (Rational::from_integer(0), Vec::new());
    }
    let mut best_set: Vec<usize> = g.vertices().collect();
    // edges per vertex, as num / den
    let (mut num, mut den) = (g.m() as i64, g.n() as i64);
    loop {
        let (gain, set) = max_closure(g, num, den);
        if gain == 0 {
            break;
        }
        let edges_in = count_edges_within(g, &set) as i64;
        num = edges_in;
        den = set.len() as i64;
        best_set = set;
    }
    (Rational::new(2 * num, den), best_set)
}

fn count_edges_within(g: &Graph, set: &[usize]) -> usize {
    let mut inside = vec![false; g.n()];
    for &v in set {
        inside[v] = true;
    }
    g.edges().filter(|&(u, v)| inside[u] && inside[v]).count()
}

/// Maximizes `den·|E(H)| - num·|V(H)|` over vertex sets `H`; returns the
/// optimum and a maximizing set (empty when the optimum is 0).
fn max_closure(g: &Graph, num: i64, den: i64) -> (i64, Vec<usize>) {
    let m = g.m();
    let n = g.n();
    let source = 0;
    let sink = 1;
    let edge_node = |i: usize| 2 + i;
    let vertex_node = |v: usize| 2 + m + v;
    let mut net = FlowNetwork::new(2 + m + n);
    let inf = den * (m as i64 + 1);
    for (i, (u, v)) in g.edges().enumerate() {
        net.add_arc(source, edge_node(i), den);
        net.add_arc(edge_node(i), vertex_node(u), inf);
        net.add_arc(edge_node(i), vertex_node(v), inf);
    }
    for v in g.vertices() {
        net.add_arc(vertex_node(v), sink, num);
    }
    let cut = net.max_flow(source, sink);
    let gain = den * m as i64 - cut;
    if gain == 0 {
        return (0, Vec::new());
    }
    let reach = net.residual_reachable(source);
    let set = g.vertices().filter(|&v| reach[vertex_node(v)]).collect();
    (gain, set)
}

struct Arc {
    to: usize,
    cap: i64,
}

/// Dinic's algorithm over an arc list where arc `2i+1` is the reverse of `2i`.
struct FlowNetwork {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
    level: Vec<i32>,
    next: Vec<usize>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork {
            arcs: Vec::new(),
            out: vec![Vec::new(); nodes],
            level: vec![0; nodes],
            next: vec![0; nodes],
        }
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: i64) {
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc { to: from, cap: 0 });
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &a in &self.out[x] {
                let to = self.arcs[a].to;
                if self.arcs[a].cap > 0 && self.level[to] < 0 {
                    self.level[to] = self.level[x] + 1;
                    queue.push_back(to);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, x: usize, t: usize, pushed: i64) -> i64 {
        if x == t {
            return pushed;
        }
        while self.next[x] < self.out[x].len() {
            let a = self.out[x][self.next[x]];
            let to = self.arcs[a].to;
            if self.arcs[a].cap > 0 && self.level[to] == self.level[x] + 1 {
                let got = self.dfs(to, t, pushed.min(self.arcs[a].cap));
                if got > 0 {
                    self.arcs[a].cap -= got;
                    self.arcs[a ^ 1].cap += got;
                    return got;
                }
            }
            self.next[x] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut flow = 0;
        while self.bfs(s, t) {
            self.next.iter_mut().for_each(|i| *i = 0);
            loop {
                let f = self.dfs(s, t, i64::MAX);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
        flow
    }

    fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &a in &self.out[x] {
                let to = self.arcs[a].to;
                if self.arcs[a].cap > 0 && !seen[to] {
                    seen[to] = true;
                    stack.push(to);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn small_known_values() {
        let c5 = Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert_eq!(mad_exact(&c5), r(2, 1));
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(mad_exact(&star), r(3, 2));
        assert_eq!(mad_exact(&Graph::empty(3)), r(0, 1));
    }

    #[test]
    fn dense_part_dominates() {
        // K4 plus a long pendant path: mad is K4's average degree 3.
        let mut edges = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        edges.extend((3..10).map(|i| (i, i + 1)));
        let g = Graph::from_edges(11, edges).unwrap();
        let (mad, set) = densest_subgraph(&g);
        assert_eq!(mad, r(3, 1));
        assert_eq!(set, vec![0, 1, 2, 3]);
        assert!(average_degree(&g) < mad);
    }

    #[test]
    fn disconnected_takes_max_component() {
        // Triangle and K4 as separate components.
        let edges = [(0, 1), (1, 2), (2, 0), (3, 4), (3, 5), (3, 6), (4, 5), (4, 6), (5, 6)];
        let g = Graph::from_edges(7, edges).unwrap();
        assert_eq!(mad_exact(&g), r(3, 1));
    }
}
