//! Simple undirected graphs over contiguous vertex ids, the canonical
//! edge-list format, and the structural metrics used throughout the crate.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
}

/// Simple undirected graph. Neighbor lists are kept sorted; the structure is
/// immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    /// Builds a graph from an edge iterator, rejecting loops, duplicates and
    /// out-of-range ids. Errors carry the 1-based position of the bad edge.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let numbered = edges.into_iter().enumerate().map(|(i, e)| (i + 1, e));
        Self::build(n, numbered)
    }

    fn build<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (usize, (Vertex, Vertex))>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut m = 0;
        for (line, (u, v)) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { line, vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { line, vertex: u });
            }
            let list: &mut Vec<Vertex> = &mut adj[u];
            match list.binary_search(&v) {
                Ok(_) => {
                    return Err(GraphError::DuplicateEdge { line, u: u.min(v), v: u.max(v) });
                }
                Err(pos) => list.insert(pos, v),
            }
            let list = &mut adj[v];
            let pos = list.binary_search(&u).unwrap_err();
            list.insert(pos, u);
            m += 1;
        }
        Ok(Graph { adj, m })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Copy of this graph with one more edge.
    pub fn with_edge(&self, u: Vertex, v: Vertex) -> Result<Graph, GraphError> {
        let n = self.n();
        Graph::from_edges(n, self.edges().chain(std::iter::once((u, v))))
    }

    /// Deletes the flagged vertices. Returns the remaining graph and, for each
    /// new id, the id it had in `self`.
    pub fn remove_vertices(&self, removed: &[bool]) -> (Graph, Vec<Vertex>) {
        assert_eq!(removed.len(), self.n());
        let old_of_new: Vec<Vertex> = self.vertices().filter(|&v| !removed[v]).collect();
        let mut new_of_old = vec![usize::MAX; self.n()];
        for (new, &old) in old_of_new.iter().enumerate() {
            new_of_old[old] = new;
        }
        let adj: Vec<Vec<Vertex>> = old_of_new
            .iter()
            .map(|&old| {
                self.adj[old]
                    .iter()
                    .filter(|&&w| !removed[w])
                    .map(|&w| new_of_old[w])
                    .collect()
            })
            .collect();
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        (Graph { adj, m }, old_of_new)
    }

    /// Subgraph induced by `keep` (in the given order): vertex `i` of the
    /// result is `keep[i]`.
    pub fn induced(&self, keep: &[Vertex]) -> Graph {
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let adj: Vec<Vec<Vertex>> = keep
            .iter()
            .map(|&v| {
                let mut ns: Vec<Vertex> = self.adj[v]
                    .iter()
                    .filter(|&&w| pos[w] != usize::MAX)
                    .map(|&w| pos[w])
                    .collect();
                ns.sort_unstable();
                ns
            })
            .collect();
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Graph { adj, m }
    }

    /// Canonical edge-list document: header `n m`, then edges sorted
    /// lexicographically, LF line endings.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.m());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Breadth-first distances from `src`; unreachable vertices get `None`.
    pub fn distances_from(&self, src: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges().collect::<Vec<_>>())
    }
}

impl FromStr for Graph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Graph, GraphError> {
        parse_edge_list(s)
    }
}

/// Parses the canonical edge-list format. Lines starting with `#` are
/// comments; endpoints may appear in either order.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
        .filter(|(_, l)| !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(GraphError::Parse {
        line: 1,
        msg: "missing header line \"n m\"".into(),
    })?;
    let (n, m) = parse_pair(header_line, header)?;

    let mut edges = Vec::with_capacity(m);
    let mut last_line = header_line;
    for (line, text) in lines {
        if text.trim().is_empty() {
            continue;
        }
        if edges.len() == m {
            return Err(GraphError::Parse {
                line,
                msg: format!("more than the declared {m} edges"),
            });
        }
        edges.push((line, parse_pair(line, text)?));
        last_line = line;
    }
    if edges.len() != m {
        return Err(GraphError::Parse {
            line: last_line,
            msg: format!("declared {m} edges but found {}", edges.len()),
        });
    }
    Graph::build(n, edges)
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize), GraphError> {
    let bad = |msg: &str| GraphError::Parse { line, msg: format!("{msg}: {text:?}") };
    let mut it = text.split_whitespace();
    let a = it.next().ok_or_else(|| bad("expected two integers"))?;
    let b = it.next().ok_or_else(|| bad("expected two integers"))?;
    if it.next().is_some() {
        return Err(bad("trailing tokens"));
    }
    let a = a.parse().map_err(|_| bad("not a non-negative integer"))?;
    let b = b.parse().map_err(|_| bad("not a non-negative integer"))?;
    Ok((a, b))
}

/// Length of a shortest cycle, `None` for forests.
///
/// For each edge `uv`, a breadth-first search from `u` that may not use `uv`
/// finds the shortest cycle through that edge.
pub fn girth(g: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; g.n()];
    let mut touched = Vec::new();
    let mut queue = VecDeque::new();
    for (u, v) in g.edges() {
        // A cycle through uv has length dist(u, v in g - uv) + 1.
        let limit = best.map_or(usize::MAX, |b| b - 1);
        dist[u] = 0;
        touched.push(u);
        queue.push_back(u);
        let mut found = None;
        'bfs: while let Some(x) = queue.pop_front() {
            let dx = dist[x];
            if dx + 1 >= limit {
                break;
            }
            for &y in g.neighbors(x) {
                if (x == u && y == v) || dist[y] != usize::MAX {
                    continue;
                }
                dist[y] = dx + 1;
                touched.push(y);
                if y == v {
                    found = Some(dx + 2);
                    break 'bfs;
                }
                queue.push_back(y);
            }
        }
        for &t in &touched {
            dist[t] = usize::MAX;
        }
        touched.clear();
        queue.clear();
        if let Some(len) = found {
            best = Some(best.map_or(len, |b| b.min(len)));
            if len == 3 {
                break;
            }
        }
    }
    best
}

/// Vertices at distance 1 or 2 from `v`, sorted, excluding `v`.
pub fn two_distance_neighbors(g: &Graph, v: Vertex) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = g.neighbors(v).to_vec();
    for &w in g.neighbors(v) {
        out.extend(g.neighbors(w).iter().copied().filter(|&x| x != v));
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// The square of `g`: `u ~ v` iff `1 <= dist(u, v) <= 2`.
pub fn square(g: &Graph) -> Graph {
    let adj: Vec<Vec<Vertex>> = g.vertices().map(|v| two_distance_neighbors(g, v)).collect();
    let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
    Graph { adj, m }
}

/// A maximal run of 2-vertices between two 3⁺-vertices. A 0-path (an edge
/// between two 3⁺-vertices) has no internal vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathThread {
    pub ends: (Vertex, Vertex),
    /// Internal 2-vertices in order from `ends.0` to `ends.1`.
    pub internals: Vec<Vertex>,
}

impl PathThread {
    /// Length class: the number of internal 2-vertices.
    pub fn k(&self) -> usize {
        self.internals.len()
    }
}

/// Partition of the graph's 2-vertices into threads, runs hanging off a
/// vertex of degree at most 1, and components that are cycles of 2-vertices.
#[derive(Debug, Clone, Default)]
pub struct PathDecomposition {
    pub threads: Vec<PathThread>,
    /// Runs of 2-vertices with at least one end at a vertex of degree ≤ 1.
    pub dangling: Vec<Vec<Vertex>>,
    pub cycle_components: Vec<Vec<Vertex>>,
}

impl PathDecomposition {
    pub fn has_cycle_component(&self) -> bool {
        !self.cycle_components.is_empty()
    }
}

/// Walk from `start` into `first`, continuing through 2-vertices.
/// Returns the 2-vertices passed and the first vertex of degree ≠ 2 reached.
pub fn walk_arm(g: &Graph, start: Vertex, first: Vertex) -> (Vec<Vertex>, Vertex) {
    let mut internals = Vec::new();
    let (mut prev, mut cur) = (start, first);
    while g.degree(cur) == 2 && cur != start {
        internals.push(cur);
        let ns = g.neighbors(cur);
        let next = if ns[0] == prev { ns[1] } else { ns[0] };
        prev = cur;
        cur = next;
    }
    (internals, cur)
}

pub fn enumerate_paths(g: &Graph) -> PathDecomposition {
    let mut dec = PathDecomposition::default();
    let mut seen = vec![false; g.n()];
    for a in g.vertices().filter(|&a| g.degree(a) >= 3) {
        for &b in g.neighbors(a) {
            let (internals, end) = walk_arm(g, a, b);
            if g.degree(end) < 3 {
                if !internals.is_empty() {
                    for &x in &internals {
                        seen[x] = true;
                    }
                    dec.dangling.push(internals);
                }
                continue;
            }
            let last = internals.last().copied().unwrap_or(a);
            // Each thread is met once from each end; keep the smaller key.
            if (a, b) > (end, last) {
                continue;
            }
            for &x in &internals {
                seen[x] = true;
            }
            dec.threads.push(PathThread { ends: (a, end), internals });
        }
    }
    // Remaining 2-vertices sit in components with no 3⁺-vertex.
    for v in g.vertices() {
        if g.degree(v) != 2 || seen[v] {
            continue;
        }
        let mut comp = Vec::new();
        let mut stack = vec![v];
        seen[v] = true;
        let mut is_cycle = true;
        while let Some(x) = stack.pop() {
            comp.push(x);
            for &y in g.neighbors(x) {
                if g.degree(y) != 2 {
                    is_cycle = false;
                } else if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        comp.sort_unstable();
        if is_cycle {
            dec.cycle_components.push(comp);
        } else {
            dec.dangling.push(comp);
        }
    }
    dec
}
