//! Constructors for the example graphs and a seeded generator of sparse
//! graphs with maximum degree 4, large girth and `mad < 5/2`.
//!
//! The Wegner graphs hang three vertex groups on the pairs of `x, y, z`;
//! `wegner_g3` adds the edge `xy`, `wegner_g4` does not.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::density::{densest_subgraph, mad_exact};
use crate::graph::{girth, Graph};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("cycle needs at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("maximum degree must be at least {min}, got {delta}")]
    DeltaTooSmall { delta: usize, min: usize },
    #[error("odd maximum degree {0} is not supported")]
    OddDelta(usize),
    #[error("n must be at least 10, got {0}")]
    TooSmall(usize),
    #[error("target girth must be 9 or 10, got {0}")]
    UnsupportedGirth(usize),
    #[error("no graph found within {attempts} attempts for n = {n}; try a larger n")]
    BudgetExhausted { n: usize, attempts: usize },
    #[error("generated graph violates a hypothesis: {0}")]
    Hypothesis(String),
    #[error("unknown generator `{0}`")]
    Unknown(String),
}

fn build(n: usize, edges: Vec<(usize, usize)>) -> Graph {
    Graph::from_edges(n, edges).expect("generator edges are simple")
}

pub fn cycle(n: usize) -> Result<Graph, GeneratorError> {
    if n < 3 {
        return Err(GeneratorError::CycleTooShort(n));
    }
    Ok(build(n, (0..n).map(|i| (i, (i + 1) % n)).collect()))
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i -- i+5`.
pub fn petersen() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((5 + i, 5 + (i + 2) % 5));
        e.push((i, 5 + i));
    }
    build(10, e)
}

/// Pentagons `P_h` on `5h..5h+5`, pentagrams `Q_i` on `25+5i..`; vertex `j`
/// of `P_h` is joined to vertex `(h*i + j) mod 5` of `Q_i`.
pub fn hoffman_singleton() -> Graph {
    let p = |h: usize, j: usize| 5 * h + j;
    let q = |i: usize, j: usize| 25 + 5 * i + j;
    let mut e = Vec::new();
    for h in 0..5 {
        for j in 0..5 {
            e.push((p(h, j), p(h, (j + 1) % 5)));
            e.push((q(h, j), q(h, (j + 2) % 5)));
            for i in 0..5 {
                e.push((p(h, j), q(i, (h * i + j) % 5)));
            }
        }
    }
    build(50, e)
}

/// `u = 0` and `v = 1` share the common neighbors `2..=delta` and are joined
/// by the path `u - b - a - v` with `b = delta + 1`, `a = delta + 2`.
pub fn fig4_girth4(delta: usize) -> Result<Graph, GeneratorError> {
    if delta < 2 {
        return Err(GeneratorError::DeltaTooSmall { delta, min: 2 });
    }
    let (b, a) = (delta + 1, delta + 2);
    let mut e: Vec<(usize, usize)> = (2..=delta).flat_map(|c| [(0, c), (1, c)]).collect();
    e.extend([(0, b), (b, a), (a, 1)]);
    Ok(build(delta + 3, e))
}

/// Labels of `fig4_girth5()` in vertex order.
pub const FIG4_GIRTH5_LABELS: [&str; 11] = ["u1", "u2", "u3", "u4", "u5", "u6", "u2'", "u7", "w1", "w2", "w3"];

pub fn fig4_girth5() -> Graph {
    build(
        11,
        vec![
            (0, 1),
            (0, 4),
            (0, 5),
            (1, 2),
            (2, 3),
            (2, 7),
            (2, 8),
            (3, 4),
            (3, 9),
            (4, 6),
            (5, 7),
            (5, 9),
            (5, 10),
            (6, 7),
            (8, 10),
        ],
    )
}

/// The structural facts the argument for `chi2 >= 7` needs, each checked on
/// `fig4_girth5()`.
pub fn fig4_girth5_checklist() -> Vec<(String, bool)> {
    let g = fig4_girth5();
    let d: Vec<Vec<Option<usize>>> = g.vertices().map(|v| g.distances_from(v)).collect();
    let near = |a: usize, b: usize| d[a][b].is_some_and(|x| x <= 2);
    let all_near = |a: usize, bs: &[usize]| bs.iter().all(|&b| near(a, b));
    let cycle = [0, 1, 2, 3, 4];
    vec![
        ("11 vertices".into(), g.n() == 11),
        ("maximum degree 4".into(), g.max_degree() == 4),
        ("girth 5".into(), girth(&g) == Some(5)),
        (
            "u1..u5 form a 5-cycle".into(),
            (0..5).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % 5])),
        ),
        ("u6 is within distance 2 of u1..u5".into(), all_near(5, &cycle)),
        ("u2' is within distance 2 of u1,u3,u4,u5,u6".into(), all_near(6, &[0, 2, 3, 4, 5])),
        ("u2' is at distance at least 3 from u2".into(), !near(6, 1)),
        ("u7 is within distance 2 of u1,u3,u4,u5,u6,u2'".into(), all_near(7, &[0, 2, 3, 4, 5, 6])),
        ("u7 is within distance 2 of u2".into(), near(7, 1)),
    ]
}

/// Group sizes for the pairs `xy`, `zx`, `yz`.
pub fn wegner_group_sizes(delta: usize) -> Result<[usize; 3], GeneratorError> {
    if delta % 2 == 1 {
        return Err(GeneratorError::OddDelta(delta));
    }
    if delta < 4 {
        return Err(GeneratorError::DeltaTooSmall { delta, min: 4 });
    }
    Ok([delta / 2 - 1, delta.div_ceil(2), delta / 2])
}

fn wegner(delta: usize, with_xy: bool) -> Result<Graph, GeneratorError> {
    let sizes = wegner_group_sizes(delta)?;
    let (x, y, z) = (0, 1, 2);
    let mut e = Vec::new();
    let mut next = 3;
    for (&(a, b), &size) in [(x, y), (z, x), (y, z)].iter().zip(&sizes) {
        for _ in 0..size {
            e.extend([(a, next), (b, next)]);
            next += 1;
        }
    }
    if with_xy {
        e.push((x, y));
    }
    Ok(build(next, e))
}

pub fn wegner_g3(delta: usize) -> Result<Graph, GeneratorError> {
    wegner(delta, true)
}

pub fn wegner_g4(delta: usize) -> Result<Graph, GeneratorError> {
    wegner(delta, false)
}

const SPARSE_ATTEMPTS: usize = 200;

/// A connected graph with at most `n` vertices, minimum degree 2, maximum
/// degree 4, girth at least `target_girth` and `mad < 5/2`, obtained by
/// subdividing a random piece of the square grid. Deterministic per seed.
pub fn random_sparse(n: usize, target_girth: usize, seed: u64) -> Result<Graph, GeneratorError> {
    if n < 10 {
        return Err(GeneratorError::TooSmall(n));
    }
    if !(9..=10).contains(&target_girth) {
        return Err(GeneratorError::UnsupportedGirth(target_girth));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cells = (n / 3).max(7);
    for attempt in 0..SPARSE_ATTEMPTS {
        if let Some(g) = sparse_attempt(&mut rng, cells, n, target_girth) {
            check_sparse(&g, target_girth)?;
            return Ok(g);
        }
        if attempt % 3 == 2 {
            cells = (cells * 4 / 5).max(7);
        }
    }
    Err(GeneratorError::BudgetExhausted { n, attempts: SPARSE_ATTEMPTS })
}

/// Checks every property `random_sparse` promises.
pub fn check_sparse(g: &Graph, target_girth: usize) -> Result<(), GeneratorError> {
    let fail = |s: String| Err(GeneratorError::Hypothesis(s));
    if g.min_degree() < 2 {
        return fail(format!("minimum degree {}", g.min_degree()));
    }
    if g.max_degree() != 4 {
        return fail(format!("maximum degree {}", g.max_degree()));
    }
    if g.distances_from(0).iter().any(Option::is_none) {
        return fail("disconnected".into());
    }
    match girth(g) {
        Some(x) if x < target_girth => return fail(format!("girth {x}")),
        _ => {}
    }
    let mad = mad_exact(g);
    if mad >= Rational::new(5, 2) {
        return fail(format!("mad {mad}"));
    }
    Ok(())
}

struct Skeleton {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Skeleton {
    /// Length of a shortest cycle when edge `i` stands for a path of
    /// `k[i] + 1` edges, with the skeleton edges on it.
    fn weighted_girth(&self, k: &[usize]) -> Option<(usize, Vec<usize>)> {
        let mut inc: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.n];
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            inc[a].push((b, i));
            inc[b].push((a, i));
        }
        let mut best: Option<(usize, Vec<usize>)> = None;
        for (skip, &(a, b)) in self.edges.iter().enumerate() {
            let mut dist = vec![usize::MAX; self.n];
            let mut via = vec![usize::MAX; self.n];
            let mut heap = BinaryHeap::new();
            dist[a] = 0;
            heap.push(Reverse((0, a)));
            while let Some(Reverse((d, x))) = heap.pop() {
                if d > dist[x] || x == b {
                    continue;
                }
                for &(y, e) in &inc[x] {
                    let nd = d + k[e] + 1;
                    if e != skip && nd < dist[y] {
                        dist[y] = nd;
                        via[y] = e;
                        heap.push(Reverse((nd, y)));
                    }
                }
            }
            if dist[b] == usize::MAX {
                continue;
            }
            let len = dist[b] + k[skip] + 1;
            if best.as_ref().is_none_or(|(l, _)| len < *l) {
                let mut cyc = vec![skip];
                let mut x = b;
                while x != a {
                    let e = via[x];
                    cyc.push(e);
                    let (p, q) = self.edges[e];
                    x = if p == x { q } else { p };
                }
                best = Some((len, cyc));
            }
        }
        best
    }

    /// The subdivided graph, plus for every vertex the skeleton edge it
    /// subdivides (or `None` for skeleton vertices).
    fn subdivide(&self, k: &[usize]) -> (Graph, Vec<Option<usize>>) {
        let mut owner = vec![None; self.n];
        let mut e = Vec::new();
        let mut next = self.n;
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            let mut prev = a;
            for _ in 0..k[i] {
                e.push((prev, next));
                owner.push(Some(i));
                prev = next;
                next += 1;
            }
            e.push((prev, b));
        }
        (build(next, e), owner)
    }
}

fn grid_skeleton(rng: &mut ChaCha8Rng, cells: usize, brick: bool) -> Option<Skeleton> {
    let side = (cells as f64).sqrt().ceil() as usize + 2;
    let id = |r: usize, c: usize| r * side + c;
    let grid_nbrs = |v: usize| {
        let (r, c) = (v / side, v % side);
        let mut out = Vec::with_capacity(4);
        if r > 0 {
            out.push(id(r - 1, c));
        }
        if r + 1 < side {
            out.push(id(r + 1, c));
        }
        if c > 0 {
            out.push(id(r, c - 1));
        }
        if c + 1 < side {
            out.push(id(r, c + 1));
        }
        out
    };
    let mut chosen = vec![false; side * side];
    let start = id(rng.gen_range(0..side), rng.gen_range(0..side));
    chosen[start] = true;
    let mut order = vec![start];
    while order.len() < cells.min(side * side) {
        let frontier: Vec<usize> =
            order.iter().flat_map(|&v| grid_nbrs(v).into_iter().filter(|&w| !chosen[w])).collect();
        let &w = frontier.choose(rng)?;
        chosen[w] = true;
        order.push(w);
    }
    // Either a thinned square grid, or a brick wall (hexagonal faces) with a
    // matching of edges contracted into 4-vertices.
    let keep_p = if brick { rng.gen_range(0.95..1.0) } else { rng.gen_range(0.6..0.95) };
    let mut edges = Vec::new();
    for &v in &order {
        for w in grid_nbrs(v) {
            let rung = w == v + side && (v / side + v % side) % 2 == 1;
            if v < w && chosen[w] && !(brick && rung) && rng.gen_bool(keep_p) {
                edges.push((v, w));
            }
        }
    }
    if brick {
        let contract_p = rng.gen_range(0.03..0.2);
        let mut merged = vec![false; side * side];
        let mut into: Vec<usize> = (0..side * side).collect();
        for &(a, b) in &edges {
            if !merged[a] && !merged[b] && rng.gen_bool(contract_p) {
                merged[a] = true;
                merged[b] = true;
                into[b] = a;
            }
        }
        edges = edges.into_iter().map(|(a, b)| (into[a], into[b])).filter(|&(a, b)| a != b).collect();
    }
    // 2-core
    let total = side * side;
    let mut deg = vec![0usize; total];
    for &(a, b) in &edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    let mut alive: Vec<bool> = deg.iter().map(|&d| d >= 2).collect();
    loop {
        let before = edges.len();
        edges.retain(|&(a, b)| alive[a] && alive[b]);
        deg.iter_mut().for_each(|d| *d = 0);
        for &(a, b) in &edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        alive = deg.iter().map(|&d| d >= 2).collect();
        if edges.len() == before && edges.iter().all(|&(a, b)| alive[a] && alive[b]) {
            break;
        }
    }
    // keep the largest component holding a 4-vertex
    let mut comp = vec![usize::MAX; total];
    let mut adj = vec![Vec::new(); total];
    for &(a, b) in &edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut best: Option<(usize, usize)> = None;
    for s in 0..total {
        if comp[s] != usize::MAX || deg[s] < 2 {
            continue;
        }
        let mut stack = vec![s];
        comp[s] = s;
        let (mut size, mut has4) = (0, false);
        while let Some(x) = stack.pop() {
            size += 1;
            has4 |= deg[x] == 4;
            for &y in &adj[x] {
                if comp[y] == usize::MAX {
                    comp[y] = s;
                    stack.push(y);
                }
            }
        }
        if has4 && best.is_none_or(|(sz, _)| size > sz) {
            best = Some((size, s));
        }
    }
    let (_, root) = best?;
    // Smooth away 2-vertices; the result may have parallel edges and loops.
    let mut edge_ids: Vec<Vec<(usize, usize)>> = vec![Vec::new(); total];
    for (i, &(a, b)) in edges.iter().enumerate() {
        edge_ids[a].push((b, i));
        edge_ids[b].push((a, i));
    }
    let mut relabel = vec![usize::MAX; total];
    let mut keep: Vec<usize> = (0..total).filter(|&v| comp[v] == root && deg[v] >= 3).collect();
    keep.shuffle(rng);
    for (i, &v) in keep.iter().enumerate() {
        relabel[v] = i;
    }
    let mut used = vec![false; edges.len()];
    let mut smooth = Vec::new();
    for &b in &keep {
        for &(first, e0) in &edge_ids[b] {
            if used[e0] {
                continue;
            }
            used[e0] = true;
            let mut x = first;
            while deg[x] == 2 {
                let &(y, e) = edge_ids[x].iter().find(|&&(_, e)| !used[e]).unwrap();
                used[e] = true;
                x = y;
            }
            smooth.push((relabel[b], relabel[x]));
        }
    }
    Some(Skeleton { n: keep.len(), edges: smooth })
}

fn sparse_attempt(rng: &mut ChaCha8Rng, cells: usize, n: usize, target: usize) -> Option<Graph> {
    let brick = rng.gen_bool(0.7);
    let sk = grid_skeleton(rng, if brick { cells * 2 } else { cells }, brick)?;
    let mut k: Vec<usize> = sk.edges.iter().map(|_| if brick { 1 } else { rng.gen_range(0..=2) }).collect();
    let budget = n.checked_sub(sk.n)?;
    let girth_ok = |k: &[usize]| sk.weighted_girth(k).is_none_or(|(l, _)| l >= target);
    while let Some((len, cyc)) = sk.weighted_girth(&k) {
        if len >= target {
            break;
        }
        let low = cyc.iter().map(|&e| k[e]).min().unwrap();
        let lows: Vec<usize> = cyc.into_iter().filter(|&e| k[e] == low).collect();
        k[*lows.choose(rng).unwrap()] += 1;
        if k.iter().sum::<usize>() > budget {
            return None;
        }
    }
    loop {
        let (g, owner) = sk.subdivide(&k);
        let (mad, set) = densest_subgraph(&g);
        if mad < Rational::new(5, 2) {
            break;
        }
        let inside: Vec<usize> = set.iter().filter_map(|&v| owner[v]).collect();
        let pick = match inside.choose(rng) {
            Some(&e) => e,
            None => {
                let mut in_set = vec![false; g.n()];
                set.iter().for_each(|&v| in_set[v] = true);
                *(0..sk.edges.len())
                    .filter(|&i| in_set[sk.edges[i].0] && in_set[sk.edges[i].1])
                    .collect::<Vec<_>>()
                    .choose(rng)?
            }
        };
        k[pick] += 1;
        if k.iter().sum::<usize>() > budget {
            return None;
        }
    }
    let mut order: Vec<usize> = (0..k.len()).collect();
    order.shuffle(rng);
    for i in order {
        if k[i] == 0 || rng.gen_bool(0.2) {
            continue;
        }
        k[i] -= 1;
        let ok = girth_ok(&k) && (target >= 10 || mad_exact(&sk.subdivide(&k).0) < Rational::new(5, 2));
        if !ok {
            k[i] += 1;
        }
    }
    let total = sk.n + k.iter().sum::<usize>();
    if total > n || total < 10 {
        return None;
    }
    Some(sk.subdivide(&k).0)
}

/// Builds a named generator from a spec such as `petersen`, `cycle:7`,
/// `wegner_g3:8` or `random_sparse:60:10` (the seed comes separately).
pub fn from_spec(spec: &str, seed: u64) -> Result<Graph, GeneratorError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let arg = |i: usize| -> Result<usize, GeneratorError> {
        parts.get(i).and_then(|s| s.parse().ok()).ok_or_else(|| GeneratorError::Unknown(spec.to_string()))
    };
    match parts[0] {
        "cycle" => cycle(arg(1)?),
        "petersen" => Ok(petersen()),
        "hoffman_singleton" => Ok(hoffman_singleton()),
        "fig4_girth4" => fig4_girth4(arg(1)?),
        "fig4_girth5" => Ok(fig4_girth5()),
        "wegner_g3" => wegner_g3(arg(1)?),
        "wegner_g4" => wegner_g4(arg(1)?),
        "random_sparse" => random_sparse(arg(1)?, parts.get(2).map_or(Ok(10), |_| arg(2))?, seed),
        _ => Err(GeneratorError::Unknown(spec.to_string())),
    }
}
