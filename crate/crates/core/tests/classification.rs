//! Vertex classes recomputed from raw adjacency and compared with `analyze`.

mod common;

use distcolor::graph::Graph;
use distcolor::reducibility::{analyze, Flavor};

/// (k, far end) for each neighbor of `v`, walking through 2-vertices.
fn paths(g: &Graph, v: usize) -> Vec<(usize, usize)> {
    g.neighbors(v)
        .iter()
        .map(|&first| {
            let (mut prev, mut cur, mut k) = (v, first, 0);
            while g.degree(cur) == 2 && cur != v {
                let next = g.neighbors(cur).iter().copied().find(|&x| x != prev).unwrap();
                prev = cur;
                cur = next;
                k += 1;
            }
            (k, cur)
        })
        .collect()
}

fn sig(g: &Graph, v: usize) -> Vec<usize> {
    let mut s: Vec<usize> = paths(g, v).iter().map(|p| p.0).collect();
    s.sort_unstable_by(|a, b| b.cmp(a));
    s
}

/// Number of far ends of degree 4, for a (1,1,1) 3-vertex.
fn fours(g: &Graph, v: usize) -> Option<usize> {
    (g.degree(v) == 3 && sig(g, v) == [1, 1, 1]).then(|| paths(g, v).iter().filter(|p| g.degree(p.1) == 4).count())
}

#[test]
fn classes_match_independent_walk() {
    for (s, g) in common::corpus(60, 10).into_iter().chain(common::corpus(20, 9)) {
        let a = analyze(&g);
        for v in g.vertices() {
            let c = &a.classes[v];
            assert_eq!(c.degree, g.degree(v));
            if g.degree(v) >= 3 {
                assert_eq!(c.signature, sig(&g, v), "seed {s} vertex {v}");
            }
            let expected = fours(&g, v).map(|f| [Flavor::Small, Flavor::Medium, Flavor::Large, Flavor::Huge][f]);
            assert_eq!(c.flavor, expected, "seed {s} vertex {v}");
            let light = g.degree(v) == 2 || matches!(fours(&g, v), Some(1 | 2));
            assert_eq!(c.light, light, "seed {s} vertex {v}");
            let special = g.degree(v) == 3
                && sig(&g, v) == [1, 1, 0]
                && paths(&g, v).iter().any(|&(k, end)| k == 0 && g.degree(end) == 3)
                && paths(&g, v).iter().any(|&(k, end)| k == 1 && fours(&g, end) == Some(0));
            assert_eq!(c.special, special, "seed {s} vertex {v}");
        }
    }
}

#[test]
fn every_class_occurs_in_corpus() {
    let (mut flavors, mut special, mut light) = ([0usize; 4], 0, 0);
    for (_, g) in common::corpus(100, 10) {
        for c in analyze(&g).classes {
            if let Some(f) = c.flavor {
                flavors[f as usize] += 1;
            }
            special += usize::from(c.special);
            light += usize::from(c.light);
        }
    }
    assert!(flavors.iter().all(|&x| x > 0), "{flavors:?}");
    assert!(special > 0 && light > 0);
}
