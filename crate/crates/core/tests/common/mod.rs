//! Brute-force oracles and the shared corpus for integration tests.
#![allow(dead_code)]

use distcolor::coloring::{Color, ListAssignment};
use distcolor::generators::random_sparse;
use distcolor::{Graph, Rational};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Vertex count used for corpus instance `seed`, between 40 and 200.
pub fn corpus_n(seed: u64) -> usize {
    40 + (seed.wrapping_mul(37) % 161) as usize
}

pub fn corpus(count: u64, girth: usize) -> Vec<(u64, Graph)> {
    (0..count)
        .map(|s| (s, random_sparse(corpus_n(s), girth, s).unwrap_or_else(|e| panic!("seed {s}: {e}"))))
        .collect()
}

pub fn random_six_lists(n: usize, seed: u64) -> ListAssignment {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lists = (0..n)
        .map(|_| {
            let mut pool: Vec<Color> = (0..12).collect();
            pool.shuffle(&mut rng);
            pool.truncate(6);
            pool
        })
        .collect();
    ListAssignment::new(lists).unwrap()
}

pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// All-pairs distances by repeated relaxation over the edge set.
pub fn distance_matrix(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let inf = usize::MAX / 2;
    let mut d = vec![vec![inf; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for (u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Shortest cycle: for every edge `uv`, the shortest `u`-`v` path avoiding it.
pub fn girth_oracle(g: &Graph) -> Option<usize> {
    let mut best = None;
    for (u, v) in g.edges() {
        let rest = Graph::from_edges(g.n(), g.edges().filter(|&e| e != (u, v))).unwrap();
        if let Some(d) = rest.distances_from(u)[v] {
            best = Some(best.map_or(d + 1, |b: usize| b.min(d + 1)));
        }
    }
    best
}

/// Fewest independent blocks over all set partitions of the vertex set.
pub fn chromatic_oracle(g: &Graph) -> usize {
    fn go(g: &Graph, v: usize, blocks: &mut Vec<Vec<usize>>, best: &mut usize) {
        if blocks.len() >= *best {
            return;
        }
        if v == g.n() {
            *best = blocks.len();
            return;
        }
        for i in 0..blocks.len() {
            if blocks[i].iter().all(|&w| !g.has_edge(v, w)) {
                blocks[i].push(v);
                go(g, v + 1, blocks, best);
                blocks[i].pop();
            }
        }
        blocks.push(vec![v]);
        go(g, v + 1, blocks, best);
        blocks.pop();
    }
    let mut best = g.n() + 1;
    go(g, 0, &mut Vec::new(), &mut best);
    best.min(g.n())
}

/// Tries every combination of list entries.
pub fn list_colorable_oracle(g: &Graph, lists: &ListAssignment) -> bool {
    let n = g.n();
    let mut idx = vec![0usize; n];
    loop {
        let pick = |v: usize| lists.list(v)[idx[v]];
        if g.edges().all(|(u, v)| pick(u) != pick(v)) {
            return true;
        }
        let mut i = 0;
        while i < n {
            idx[i] += 1;
            if idx[i] < lists.list(i).len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        if i == n {
            return false;
        }
    }
}

/// Maximum average degree over all nonempty vertex subsets.
pub fn mad_oracle(g: &Graph) -> Rational {
    let n = g.n();
    assert!(n <= 16);
    let mut best = Rational::from_integer(0);
    for mask in 1u32..(1 << n) {
        let k = mask.count_ones() as i64;
        let m = g.edges().filter(|&(u, v)| mask >> u & 1 == 1 && mask >> v & 1 == 1).count() as i64;
        best = best.max(Rational::new(2 * m, k));
    }
    best
}
