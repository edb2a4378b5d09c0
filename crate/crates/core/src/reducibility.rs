//! Vertex taxonomy, detectors for the reducible configurations, and the
//! recursive 6-list-colorer for graphs with maximum average degree below
//! 5/2, girth at least 10 and maximum degree at most 4.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::coloring::{is_valid_list_coloring, list_color, Color, Coloring, ListAssignment, Radius};
use crate::density::mad_exact;
use crate::gadgets::{build_gadget, GadgetId};
use crate::graph::{girth, square, two_distance_neighbors, walk_arm, Graph, Vertex};
use crate::Rational;

/// Graphs this small are colored directly.
pub const BASE_CASE_MAX_N: usize = 12;

/// A walk from a 3⁺-vertex through 2-vertices to the next vertex of degree
/// other than 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arm {
    pub internals: Vec<Vertex>,
    pub end: Vertex,
}

impl Arm {
    pub fn k(&self) -> usize {
        self.internals.len()
    }

    /// The neighbor of the start vertex on this arm.
    pub fn first(&self) -> Vertex {
        self.internals.first().copied().unwrap_or(self.end)
    }

    /// The vertex at distance 2 along the arm.
    pub fn second(&self) -> Vertex {
        if self.k() >= 2 {
            self.internals[1]
        } else {
            self.end
        }
    }
}

/// Arms of `v` in neighbor order; empty unless `d(v) ≥ 3`.
pub fn arms(g: &Graph, v: Vertex) -> Vec<Arm> {
    if g.degree(v) < 3 {
        return Vec::new();
    }
    g.neighbors(v)
        .iter()
        .map(|&w| {
            let (internals, end) = walk_arm(g, v, w);
            Arm { internals, end }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    Small,
    Medium,
    Large,
    Huge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexClass {
    pub degree: usize,
    /// Arm lengths, largest first; empty for vertices of degree below 3.
    pub signature: Vec<usize>,
    pub flavor: Option<Flavor>,
    pub special: bool,
    pub light: bool,
    /// Degree at most 1, or a 2-vertex on a cycle component.
    pub degenerate: bool,
}

impl VertexClass {
    pub fn is(&self, sig: &[usize]) -> bool {
        self.signature == sig
    }

    pub fn is_111(&self) -> bool {
        self.degree == 3 && self.is(&[1, 1, 1])
    }

    pub fn is_110(&self) -> bool {
        self.degree == 3 && self.is(&[1, 1, 0])
    }

    /// Name such as `(1,1,0)` or `2-vertex`.
    pub fn describe(&self) -> String {
        if self.degree < 3 {
            return format!("{}-vertex", self.degree);
        }
        let ks: Vec<String> = self.signature.iter().map(usize::to_string).collect();
        let mut s = format!("({})", ks.join(","));
        if let Some(f) = self.flavor {
            s = format!("{} {s}", format!("{f:?}").to_lowercase());
        }
        if self.special {
            s = format!("special {s}");
        }
        s
    }
}

/// Arms and classes of every vertex.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub arms: Vec<Vec<Arm>>,
    pub classes: Vec<VertexClass>,
}

pub fn analyze(g: &Graph) -> Analysis {
    let arms: Vec<Vec<Arm>> = g.vertices().map(|v| arms(g, v)).collect();
    let mut classes: Vec<VertexClass> = g
        .vertices()
        .map(|v| {
            let degree = g.degree(v);
            let mut signature: Vec<usize> = arms[v].iter().map(Arm::k).collect();
            signature.sort_unstable_by(|a, b| b.cmp(a));
            let flavor = if degree == 3 && signature == [1, 1, 1] {
                let fours = arms[v].iter().filter(|a| g.degree(a.end) == 4).count();
                Some([Flavor::Small, Flavor::Medium, Flavor::Large, Flavor::Huge][fours])
            } else {
                None
            };
            let degenerate = degree <= 1 || (degree == 2 && walk_arm(g, v, g.neighbors(v)[0]).1 == v);
            VertexClass { degree, signature, flavor, special: false, light: false, degenerate }
        })
        .collect();
    for v in g.vertices() {
        let c = &classes[v];
        let special = c.is_110()
            && arms[v].iter().any(|a| a.k() == 0 && g.degree(a.end) == 3)
            && arms[v].iter().any(|a| a.k() == 1 && classes[a.end].flavor == Some(Flavor::Small));
        let light = c.degree == 2 || matches!(c.flavor, Some(Flavor::Medium | Flavor::Large));
        classes[v].special = special;
        classes[v].light = light;
    }
    Analysis { arms, classes }
}

pub fn classify_vertex(g: &Graph, v: Vertex) -> VertexClass {
    analyze(g).classes.swap_remove(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Lemma {
    L8,
    L9,
    L10,
    L11,
    L12,
    L13,
    L14,
}

impl Lemma {
    pub const ALL: [Lemma; 7] = [Lemma::L8, Lemma::L9, Lemma::L10, Lemma::L11, Lemma::L12, Lemma::L13, Lemma::L14];
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// How to color the removed and uncolored vertices once the rest is colored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtensionStep {
    /// Smallest remaining color.
    Greedy(Vertex),
    /// Solve a gadget whose vertices map, in gadget order, to `hosts`.
    Gadget { id: GadgetId, hosts: Vec<Vertex> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recipe {
    /// Lower bounds on remaining list sizes at the start of the extension.
    pub minimums: Vec<(Vertex, usize)>,
    pub steps: Vec<ExtensionStep>,
}

impl Recipe {
    pub fn gadget(&self) -> Option<GadgetId> {
        self.steps.iter().find_map(|s| match s {
            ExtensionStep::Gadget { id, .. } => Some(*id),
            ExtensionStep::Greedy(_) => None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigurationMatch {
    pub lemma: Lemma,
    pub anchor: Vertex,
    /// Figure label to host vertex.
    pub mapping: Vec<(&'static str, Vertex)>,
    pub removal: Vec<Vertex>,
    pub uncolor: Vec<Vertex>,
    pub recipe: Recipe,
    fingerprint: u64,
}

impl ConfigurationMatch {
    pub fn describe(&self) -> String {
        let map: Vec<String> = self.mapping.iter().map(|(l, v)| format!("{l}={v}")).collect();
        let ext = match self.recipe.gadget() {
            Some(id) => format!("gadget ({id})"),
            None => "greedy".to_string(),
        };
        format!(
            "{} anchor={} map[{}] remove={:?} uncolor={:?} extend={}",
            self.lemma,
            self.anchor,
            map.join(" "),
            self.removal,
            self.uncolor,
            ext
        )
    }
}

fn fingerprint(g: &Graph) -> u64 {
    let mut h = DefaultHasher::new();
    g.hash(&mut h);
    h.finish()
}

fn distinct(vs: &[Vertex]) -> bool {
    let mut s = vs.to_vec();
    s.sort_unstable();
    s.windows(2).all(|w| w[0] != w[1])
}

struct Builder<'a> {
    g: &'a Graph,
    lemma: Lemma,
    anchor: Vertex,
    mapping: Vec<(&'static str, Vertex)>,
}

impl<'a> Builder<'a> {
    fn new(g: &'a Graph, lemma: Lemma, anchor: Vertex) -> Self {
        Builder { g, lemma, anchor, mapping: Vec::new() }
    }

    fn map(mut self, pairs: &[(&'static str, Vertex)]) -> Self {
        self.mapping.extend_from_slice(pairs);
        self
    }

    fn host(&self, label: &str) -> Vertex {
        self.mapping.iter().find(|(l, _)| *l == label).expect("label mapped").1
    }

    /// Finishes with `pre` followed by a gadget extension. Vertices in
    /// `uncolor` stay in the reduced graph and lose their color before the
    /// extension.
    fn gadget(self, id: GadgetId, uncolor: &[Vertex], pre: Vec<ExtensionStep>) -> Option<ConfigurationMatch> {
        let gadget = build_gadget(id);
        let hosts: Vec<Vertex> = gadget.labels.iter().map(|l| self.host(l)).collect();
        let mut removal: Vec<Vertex> = hosts.iter().copied().filter(|v| !uncolor.contains(v)).collect();
        for s in &pre {
            if let ExtensionStep::Greedy(v) = s {
                removal.push(*v);
            }
        }
        let mut steps = pre;
        steps.push(ExtensionStep::Gadget { id, hosts });
        self.finish(removal, uncolor.to_vec(), Recipe { minimums: Vec::new(), steps })
    }

    fn finish(self, mut removal: Vec<Vertex>, mut uncolor: Vec<Vertex>, recipe: Recipe) -> Option<ConfigurationMatch> {
        let all: Vec<Vertex> = self.mapping.iter().map(|&(_, v)| v).collect();
        if !distinct(&all) {
            return None;
        }
        removal.sort_unstable();
        uncolor.sort_unstable();
        Some(ConfigurationMatch {
            lemma: self.lemma,
            anchor: self.anchor,
            mapping: self.mapping,
            removal,
            uncolor,
            recipe,
            fingerprint: fingerprint(self.g),
        })
    }
}

/// First reducible configuration in lemma order, lowest anchor first.
pub fn find_configuration(g: &Graph) -> Option<ConfigurationMatch> {
    let a = analyze(g);
    find_l8(g)
        .or_else(|| find_l9(g))
        .or_else(|| find_l10(g, &a))
        .or_else(|| find_l11(g, &a))
        .or_else(|| find_l12(g, &a))
        .or_else(|| find_l13(g, &a))
        .or_else(|| find_l14(g, &a))
}

/// The match of `lemma` with the lowest anchor.
pub fn find_lemma(g: &Graph, lemma: Lemma) -> Option<ConfigurationMatch> {
    find_with(g, &analyze(g), lemma)
}

/// First match when the lemmas are tried in the given order.
pub fn find_configuration_in(g: &Graph, order: &[Lemma]) -> Option<ConfigurationMatch> {
    let a = analyze(g);
    order.iter().find_map(|&l| find_with(g, &a, l))
}

fn find_with(g: &Graph, a: &Analysis, lemma: Lemma) -> Option<ConfigurationMatch> {
    match lemma {
        Lemma::L8 => find_l8(g),
        Lemma::L9 => find_l9(g),
        Lemma::L10 => find_l10(g, a),
        Lemma::L11 => find_l11(g, a),
        Lemma::L12 => find_l12(g, a),
        Lemma::L13 => find_l13(g, a),
        Lemma::L14 => find_l14(g, a),
    }
}

fn find_l8(g: &Graph) -> Option<ConfigurationMatch> {
    let v = g.vertices().find(|&v| g.degree(v) <= 1)?;
    Builder::new(g, Lemma::L8, v).map(&[("v", v)]).finish(
        vec![v],
        Vec::new(),
        Recipe { minimums: vec![(v, 2)], steps: vec![ExtensionStep::Greedy(v)] },
    )
}

fn find_l9(g: &Graph) -> Option<ConfigurationMatch> {
    g.vertices().find_map(|v| {
        if g.degree(v) != 2 {
            return None;
        }
        let (u, w) = (g.neighbors(v)[0], g.neighbors(v)[1]);
        if g.degree(u) != 2 || g.degree(w) != 2 {
            return None;
        }
        Builder::new(g, Lemma::L9, v).map(&[("u", u), ("v", v), ("w", w)]).finish(
            vec![u, v, w],
            Vec::new(),
            Recipe {
                minimums: vec![(u, 2), (v, 4), (w, 2)],
                steps: vec![ExtensionStep::Greedy(u), ExtensionStep::Greedy(w), ExtensionStep::Greedy(v)],
            },
        )
    })
}

fn find_l10(g: &Graph, a: &Analysis) -> Option<ConfigurationMatch> {
    g.vertices().filter(|&u| g.degree(u) == 3).find_map(|u| {
        a.arms[u].iter().filter(|arm| arm.k() == 2).find_map(|arm| {
            let (v, w, x) = (arm.internals[0], arm.internals[1], arm.end);
            Builder::new(g, Lemma::L10, u).map(&[("u", u), ("v", v), ("w", w), ("x", x)]).finish(
                vec![v, w],
                Vec::new(),
                Recipe {
                    minimums: vec![(w, 1), (v, 2)],
                    steps: vec![ExtensionStep::Greedy(w), ExtensionStep::Greedy(v)],
                },
            )
        })
    })
}

fn find_l11(g: &Graph, a: &Analysis) -> Option<ConfigurationMatch> {
    g.vertices().find_map(|u| {
        let c = &a.classes[u];
        if !c.is_111() || c.flavor == Some(Flavor::Large) {
            return None;
        }
        let arms = &a.arms[u];
        (0..3).find_map(|i| {
            let v = arms[i].end;
            if !a.classes[v].is_111() {
                return None;
            }
            let others: Vec<usize> = (0..3).filter(|&j| j != i).collect();
            let &j = others.iter().find(|&&j| g.degree(arms[j].end) == 3)?;
            let l = others.into_iter().find(|&x| x != j).unwrap();
            let (u1, u2, u3, w) = (arms[i].first(), arms[j].first(), arms[l].first(), arms[j].end);
            let b = Builder::new(g, Lemma::L11, u)
                .map(&[("u", u), ("u1", u1), ("u2", u2), ("u3", u3), ("v", v), ("w", w)]);
            let mut m = Builder::new(g, Lemma::L11, u)
                .map(&[("u1", u2), ("u2", u), ("u3", u1), ("u4", v)])
                .gadget(GadgetId::A, &[v], vec![ExtensionStep::Greedy(u3)])?;
            m.mapping = b.mapping;
            m.recipe.minimums.push((u3, 2));
            if !distinct(&m.mapping.iter().map(|p| p.1).collect::<Vec<_>>()) {
                return None;
            }
            Some(m)
        })
    })
}

fn find_l12(g: &Graph, a: &Analysis) -> Option<ConfigurationMatch> {
    g.vertices().find_map(|u2| {
        if !a.classes[u2].special {
            return None;
        }
        let ones: Vec<&Arm> = a.arms[u2].iter().filter(|arm| arm.k() == 1).collect();
        (0..2).find_map(|i| {
            let (to_small, other) = (ones[i], ones[1 - i]);
            if a.classes[to_small.end].flavor != Some(Flavor::Small) || g.degree(other.end) != 3 {
                return None;
            }
            let (u1, u3, u4, w) = (other.first(), to_small.first(), to_small.end, other.end);
            let t = a.arms[u2].iter().find(|arm| arm.k() == 0).unwrap().end;
            let b = Builder::new(g, Lemma::L12, u2)
                .map(&[("u1", u1), ("u2", u2), ("u3", u3), ("u4", u4), ("w", w), ("t", t)]);
            let mut m = Builder::new(g, Lemma::L12, u2)
                .map(&[("u1", u1), ("u2", u2), ("u3", u3), ("u4", u4)])
                .gadget(GadgetId::A, &[u4], Vec::new())?;
            if !distinct(&b.mapping.iter().map(|p| p.1).collect::<Vec<_>>()) {
                return None;
            }
            m.mapping = b.mapping;
            Some(m)
        })
    })
}

/// The two 2-neighbors of a (1,1,1)-vertex `x` other than `from`, ordered
/// so that the first one leads to a 3-vertex (preferring lower ids).
fn pendant_pair(g: &Graph, a: &Analysis, x: Vertex, from: Vertex) -> (Vertex, Vertex) {
    let mut rest: Vec<&Arm> = a.arms[x].iter().filter(|arm| arm.first() != from).collect();
    rest.sort_by_key(|arm| (g.degree(arm.end) != 3, arm.first()));
    (rest[0].first(), rest[1].first())
}

fn is_111_light(a: &Analysis, v: Vertex) -> bool {
    a.classes[v].is_111() && a.classes[v].light
}

/// Ordered pairs of arm indices whose second vertices are both light.
fn light_pairs(a: &Analysis, arms: &[&Arm]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..arms.len() {
        for j in i + 1..arms.len() {
            if a.classes[arms[i].second()].light && a.classes[arms[j].second()].light {
                // The (1,1,1) one, if exactly one, goes second.
                if is_111_light(a, arms[i].second()) && !is_111_light(a, arms[j].second()) {
                    out.push((j, i));
                } else {
                    out.push((i, j));
                }
            }
        }
    }
    out
}

/// Labels shared by the 4-vertex configurations: the arm with v1 (u4, u5 and
/// pendants v5, v5') and the arm with v2 (u3', u3'' and pendants v3, v3').
fn light_arms(
    g: &Graph,
    a: &Analysis,
    u: Vertex,
    arm1: &Arm,
    arm2: &Arm,
) -> Vec<(&'static str, Vertex)> {
    let (v1, v2) = (arm1.second(), arm2.second());
    let mut map = vec![("u3", u), ("u4", arm1.first()), ("u5", v1), ("u3'", arm2.first()), ("u3''", v2)];
    if is_111_light(a, v2) {
        let (p, q) = pendant_pair(g, a, v2, arm2.first());
        map.extend([("v3", p), ("v3'", q)]);
    }
    if is_111_light(a, v1) {
        let (p, q) = pendant_pair(g, a, v1, arm1.first());
        map.extend([("v5", p), ("v5'", q)]);
    }
    map
}

fn pick_gadget(a: &Analysis, v1: Vertex, v2: Vertex, ids: [GadgetId; 3]) -> GadgetId {
    match (is_111_light(a, v1), is_111_light(a, v2)) {
        (false, false) => ids[0],
        (false, true) => ids[1],
        _ => ids[2],
    }
}

fn find_l13(g: &Graph, a: &Analysis) -> Option<ConfigurationMatch> {
    g.vertices().filter(|&u| g.degree(u) == 4).find_map(|u| {
        if a.arms[u].iter().any(|arm| arm.k() == 0) {
            return None;
        }
        let arms: Vec<&Arm> = a.arms[u].iter().collect();
        light_pairs(a, &arms).into_iter().find_map(|(i, j)| {
            let rest: Vec<usize> = (0..4).filter(|&x| x != i && x != j).collect();
            let l = *rest.iter().find(|&&x| g.degree(arms[x].second()) <= 3)?;
            let m = rest.into_iter().find(|&x| x != l).unwrap();
            let (v1, v2) = (arms[i].second(), arms[j].second());
            let id = pick_gadget(a, v1, v2, [GadgetId::B, GadgetId::C, GadgetId::D]);
            let mut map = light_arms(g, a, u, arms[i], arms[j]);
            map.extend([("u1", arms[l].first()), ("u2", arms[m].first())]);
            Builder::new(g, Lemma::L13, u).map(&map).gadget(id, &[], Vec::new())
        })
    })
}

fn find_l14(g: &Graph, a: &Analysis) -> Option<ConfigurationMatch> {
    g.vertices().filter(|&u| g.degree(u) == 4).find_map(|u| {
        let zero: Vec<&Arm> = a.arms[u].iter().filter(|arm| arm.k() == 0).collect();
        if zero.len() != 1 || g.degree(zero[0].end) != 3 {
            return None;
        }
        let arms: Vec<&Arm> = a.arms[u].iter().filter(|arm| arm.k() >= 1).collect();
        light_pairs(a, &arms).into_iter().find_map(|(i, j)| {
            let l = (0..3).find(|&x| x != i && x != j).unwrap();
            let v3 = arms[l].second();
            let c3 = &a.classes[v3];
            if !(c3.degree == 2 || c3.special || c3.is_111()) {
                return None;
            }
            let (v1, v2) = (arms[i].second(), arms[j].second());
            let mut map = light_arms(g, a, u, arms[i], arms[j]);
            map.extend([("u2", arms[l].first()), ("u1", v3)]);
            let huge = c3.flavor == Some(Flavor::Huge);
            let (ids, uncolor) = if c3.degree == 2 || huge {
                ([GadgetId::E, GadgetId::F, GadgetId::G], if huge { vec![v3] } else { Vec::new() })
            } else {
                let via = arms[l].first();
                let v = a.arms[v3]
                    .iter()
                    .filter(|arm| arm.k() == 1 && arm.first() != via && g.degree(arm.end) == 3)
                    .map(Arm::first)
                    .min()?;
                map.push(("u0", v));
                ([GadgetId::H, GadgetId::I, GadgetId::J], Vec::new())
            };
            let id = pick_gadget(a, v1, v2, ids);
            Builder::new(g, Lemma::L14, u).map(&map).gadget(id, &uncolor, Vec::new())
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("stale match: the graph differs from the one the match was found in")]
    Stale,
}

/// The graph with the match's removal set deleted, plus the original id of
/// each surviving vertex.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub graph: Graph,
    pub original: Vec<Vertex>,
    pub recipe: Recipe,
}

pub fn reduce(g: &Graph, m: &ConfigurationMatch) -> Result<Reduction, ReduceError> {
    if fingerprint(g) != m.fingerprint {
        return Err(ReduceError::Stale);
    }
    let mut removed = vec![false; g.n()];
    for &v in &m.removal {
        removed[v] = true;
    }
    let (graph, original) = g.remove_vertices(&removed);
    Ok(Reduction { graph, original, recipe: m.recipe.clone() })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructiveError {
    #[error("hypothesis not met: {0}")]
    Precondition(String),
    #[error("no reducible configuration in a graph on {} vertices; this would contradict the theorem", graph.n())]
    TheoremFalsifying { graph: Graph },
    #[error("{lemma}: vertex {vertex} keeps {have} colors, expected at least {need}")]
    ListShortfall { lemma: Lemma, vertex: Vertex, have: usize, need: usize },
    #[error("{lemma}: host neighborhood does not match gadget ({gadget})")]
    ShapeMismatch { lemma: Lemma, gadget: GadgetId },
    #[error("{lemma}: gadget ({gadget}) has no coloring from the remaining lists")]
    ExtensionFailed { lemma: Lemma, gadget: GadgetId },
    #[error("base case on {0} vertices has no coloring")]
    BaseCaseUnsolvable(usize),
    #[error("coloring check failed after {0}")]
    Invalid(String),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ConstructiveOptions {
    /// Accept girth 9 instead of 10.
    pub girth_nine_ok: bool,
    /// Delete a huge (1,1,1) v3 outright instead of keeping it and
    /// uncoloring it. Runs can then end in `Invalid`.
    pub uniform_huge_removal: bool,
    /// Try the configurations from L14 down to L8.
    pub reverse_order: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub depth: usize,
    pub n: usize,
    /// `None` for the base case.
    pub lemma: Option<Lemma>,
    pub anchor: Option<Vertex>,
    pub gadget: Option<GadgetId>,
}

#[derive(Debug, Clone)]
pub struct ConstructiveRun {
    pub coloring: Coloring,
    pub trace: Vec<TraceEntry>,
}

/// Checks degree, girth, mad and list-size hypotheses.
pub fn check_hypotheses(g: &Graph, lists: &ListAssignment, girth_nine_ok: bool) -> Result<(), ConstructiveError> {
    let bad = |s: String| Err(ConstructiveError::Precondition(s));
    if lists.len() != g.n() {
        return bad(format!("{} lists for {} vertices", lists.len(), g.n()));
    }
    if g.max_degree() > 4 {
        return bad(format!("maximum degree {} exceeds 4", g.max_degree()));
    }
    let need = if girth_nine_ok { 9 } else { 10 };
    if let Some(gi) = girth(g) {
        if gi < need {
            return bad(format!("girth {gi} below {need}"));
        }
    }
    let mad = mad_exact(g);
    if mad >= Rational::new(5, 2) {
        return bad(format!("mad {mad} is not below 5/2"));
    }
    if let Some(v) = g.vertices().find(|&v| lists.list(v).len() < 6) {
        return bad(format!("list of vertex {v} has fewer than 6 colors"));
    }
    Ok(())
}

pub fn color_constructive(g: &Graph, lists: &ListAssignment) -> Result<ConstructiveRun, ConstructiveError> {
    color_constructive_with(g, lists, ConstructiveOptions::default())
}

pub fn color_constructive_with(
    g: &Graph,
    lists: &ListAssignment,
    opts: ConstructiveOptions,
) -> Result<ConstructiveRun, ConstructiveError> {
    check_hypotheses(g, lists, opts.girth_nine_ok)?;
    let mut trace = Vec::new();
    let coloring = solve(g, lists, 0, opts, &mut trace)?;
    if !is_valid_list_coloring(g, &coloring, lists, Radius::Two) {
        return Err(ConstructiveError::Invalid("final assembly".into()));
    }
    Ok(ConstructiveRun { coloring, trace })
}

fn solve(
    g: &Graph,
    lists: &ListAssignment,
    depth: usize,
    opts: ConstructiveOptions,
    trace: &mut Vec<TraceEntry>,
) -> Result<Coloring, ConstructiveError> {
    if g.n() <= BASE_CASE_MAX_N {
        trace.push(TraceEntry { depth, n: g.n(), lemma: None, anchor: None, gadget: None });
        return list_color(&square(g), lists).ok_or(ConstructiveError::BaseCaseUnsolvable(g.n()));
    }
    let found = if opts.reverse_order {
        find_configuration_in(g, &Lemma::ALL.iter().rev().copied().collect::<Vec<_>>())
    } else {
        find_configuration(g)
    };
    let mut m = found.ok_or_else(|| ConstructiveError::TheoremFalsifying { graph: g.clone() })?;
    if opts.uniform_huge_removal && m.lemma == Lemma::L14 && !m.uncolor.is_empty() {
        m.removal.append(&mut m.uncolor);
        m.removal.sort_unstable();
    }
    trace.push(TraceEntry {
        depth,
        n: g.n(),
        lemma: Some(m.lemma),
        anchor: Some(m.anchor),
        gadget: m.recipe.gadget(),
    });
    let red = reduce(g, &m)?;
    let sub_lists = ListAssignment::new(red.original.iter().map(|&v| lists.list(v).to_vec()).collect())
        .expect("lists stay nonempty");
    let sub = solve(&red.graph, &sub_lists, depth + 1, opts, trace)?;
    let mut coloring = Coloring::uncolored(g.n());
    for (i, &v) in red.original.iter().enumerate() {
        coloring.set(v, sub.get(i).expect("sub-solution is total"));
    }
    for &v in &m.uncolor {
        coloring.clear(v);
    }
    extend(g, lists, &mut coloring, &m)?;
    if !is_valid_list_coloring(g, &coloring, lists, Radius::Two) {
        return Err(ConstructiveError::Invalid(m.describe()));
    }
    Ok(coloring)
}

fn remaining(g: &Graph, lists: &ListAssignment, c: &Coloring, v: Vertex) -> Vec<Color> {
    let seen: Vec<Color> = two_distance_neighbors(g, v).into_iter().filter_map(|w| c.get(w)).collect();
    lists.list(v).iter().copied().filter(|x| !seen.contains(x)).collect()
}

fn extend(g: &Graph, lists: &ListAssignment, c: &mut Coloring, m: &ConfigurationMatch) -> Result<(), ConstructiveError> {
    for &(v, need) in &m.recipe.minimums {
        let have = remaining(g, lists, c, v).len();
        if have < need {
            return Err(ConstructiveError::ListShortfall { lemma: m.lemma, vertex: v, have, need });
        }
    }
    for step in &m.recipe.steps {
        match step {
            ExtensionStep::Greedy(v) => {
                let r = remaining(g, lists, c, *v);
                let &x = r
                    .first()
                    .ok_or(ConstructiveError::ListShortfall { lemma: m.lemma, vertex: *v, have: 0, need: 1 })?;
                c.set(*v, x);
            }
            ExtensionStep::Gadget { id, hosts } => {
                let gadget = build_gadget(*id);
                for i in 0..hosts.len() {
                    let near = two_distance_neighbors(g, hosts[i]);
                    for (j, h) in hosts.iter().enumerate().skip(i + 1) {
                        if gadget.constraints.has_edge(i, j) != near.contains(h) {
                            return Err(ConstructiveError::ShapeMismatch { lemma: m.lemma, gadget: *id });
                        }
                    }
                }
                let mut sub = Vec::with_capacity(hosts.len());
                for (i, &v) in hosts.iter().enumerate() {
                    let r = remaining(g, lists, c, v);
                    let need = gadget.profile.sizes()[i];
                    if r.len() < need {
                        return Err(ConstructiveError::ListShortfall { lemma: m.lemma, vertex: v, have: r.len(), need });
                    }
                    sub.push(r);
                }
                let sub = ListAssignment::new(sub).expect("remaining lists meet the profile");
                let col = list_color(&gadget.constraints, &sub)
                    .ok_or(ConstructiveError::ExtensionFailed { lemma: m.lemma, gadget: *id })?;
                for (i, &v) in hosts.iter().enumerate() {
                    c.set(v, col.get(i).unwrap());
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    /// Joins `center` to each of `ends` through one new 2-vertex.
    fn spider(center: usize, ends: &[usize], edges: &mut Vec<(usize, usize)>, next: &mut usize) {
        for &e in ends {
            edges.push((center, *next));
            edges.push((*next, e));
            *next += 1;
        }
    }

    /// Vertex 3 reaches 0, 1, 2 through one 2-vertex each; leaves pad the
    /// far ends to the given degrees.
    fn one_one_one(far_degrees: [usize; 3]) -> (Graph, Vertex) {
        let mut edges = Vec::new();
        let mut next = 4;
        spider(3, &[0, 1, 2], &mut edges, &mut next);
        for (i, &d) in far_degrees.iter().enumerate() {
            for _ in 1..d {
                edges.push((i, next));
                next += 1;
            }
        }
        (Graph::from_edges(next, edges).unwrap(), 3)
    }

    #[test]
    fn flavors_by_far_degrees() {
        for (degs, flavor) in [
            ([3, 3, 3], Flavor::Small),
            ([3, 3, 4], Flavor::Medium),
            ([4, 3, 4], Flavor::Large),
            ([4, 4, 4], Flavor::Huge),
        ] {
            let (g, v) = one_one_one(degs);
            let c = classify_vertex(&g, v);
            assert_eq!(c.flavor, Some(flavor));
            assert_eq!(c.light, matches!(flavor, Flavor::Medium | Flavor::Large));
            assert!(c.is_111());
        }
        let (g, _) = one_one_one([3, 3, 3]);
        assert!(classify_vertex(&g, 4).light);
        assert_eq!(classify_vertex(&g, 4).degree, 2);
    }

    #[test]
    fn cycle_vertices_are_degenerate() {
        let c = classify_vertex(&cycle(6), 0);
        assert!(c.degenerate && c.light);
    }

    #[test]
    fn special_110_detected() {
        // u2 = 0 with 3-neighbor t = 1, 1-path to small u4 = 2, 1-path to w = 3.
        let mut edges = vec![(0, 1)];
        let mut next = 4;
        spider(0, &[2, 3], &mut edges, &mut next);
        // t and w get degree 3 with pendant vertices.
        for x in [1, 1, 3, 3] {
            edges.push((x, next));
            next += 1;
        }
        // u4 small: two more 1-paths to 3-vertices.
        let a = next;
        let b = next + 1;
        next += 2;
        spider(2, &[a, b], &mut edges, &mut next);
        for x in [a, a, b, b] {
            edges.push((x, next));
            next += 1;
        }
        let g = Graph::from_edges(next, edges).unwrap();
        assert_eq!(classify_vertex(&g, 2).flavor, Some(Flavor::Small));
        let c = classify_vertex(&g, 0);
        assert!(c.is_110() && c.special);
        // Leaves make L8 fire first; L12 is found when asked for directly.
        assert_eq!(find_configuration(&g).unwrap().lemma, Lemma::L8);
        let m = find_lemma(&g, Lemma::L12).unwrap();
        assert_eq!(m.anchor, 0);
        assert_eq!(m.uncolor, vec![2]);
        assert_eq!(m.recipe.gadget(), Some(GadgetId::A));
    }

    #[test]
    fn three_path_is_l9() {
        // Two 3-vertices joined by three 2-vertices, plus extra 1-paths.
        let edges = vec![(0, 2), (2, 3), (3, 4), (4, 1), (0, 5), (5, 1), (0, 6), (6, 1)];
        let g = Graph::from_edges(7, edges).unwrap();
        let m = find_configuration(&g).unwrap();
        assert_eq!(m.lemma, Lemma::L9);
        assert_eq!(m.removal, vec![2, 3, 4]);
        assert_eq!(m.anchor, 3);
    }

    #[test]
    fn leaf_is_l8() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let m = find_configuration(&g).unwrap();
        assert_eq!((m.lemma, m.removal.clone()), (Lemma::L8, vec![0]));
    }

    #[test]
    fn stale_match_rejected() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let m = find_configuration(&g).unwrap();
        let g2 = g.with_edge(0, 2).unwrap();
        assert_eq!(reduce(&g2, &m).unwrap_err(), ReduceError::Stale);
        let r = reduce(&g, &m).unwrap();
        assert_eq!(r.graph.n(), 2);
        assert_eq!(r.original, vec![1, 2]);
    }

    #[test]
    fn constructive_on_cycles_and_trees() {
        let g = cycle(10);
        let lists = ListAssignment::uniform(10, &[1, 2, 3, 4, 5, 6]);
        let run = color_constructive(&g, &lists).unwrap();
        assert!(is_valid_list_coloring(&g, &run.coloring, &lists, Radius::Two));

        let c20 = cycle(20);
        let lists = ListAssignment::uniform(20, &[1, 2, 3, 4, 5, 6]);
        let run = color_constructive(&c20, &lists).unwrap();
        assert!(run.trace.iter().any(|t| t.lemma == Some(Lemma::L9)));

        // Complete ternary-ish tree with max degree 4.
        let mut edges = Vec::new();
        let mut next = 1;
        let mut frontier = vec![0];
        while next < 40 {
            let p = frontier.remove(0);
            for _ in 0..3 {
                edges.push((p, next));
                frontier.push(next);
                next += 1;
            }
        }
        let t = Graph::from_edges(next, edges).unwrap();
        let lists = ListAssignment::uniform(next, &[0, 1, 2, 3, 4, 5]);
        let run = color_constructive(&t, &lists).unwrap();
        assert!(is_valid_list_coloring(&t, &run.coloring, &lists, Radius::Two));
    }

    #[test]
    fn hypotheses_enforced() {
        let g = cycle(5);
        let lists = ListAssignment::uniform(5, &[1, 2, 3, 4, 5, 6]);
        assert!(matches!(color_constructive(&g, &lists), Err(ConstructiveError::Precondition(_))));
        let c9 = cycle(9);
        let lists = ListAssignment::uniform(9, &[1, 2, 3, 4, 5, 6]);
        assert!(color_constructive(&c9, &lists).is_err());
        let opts = ConstructiveOptions { girth_nine_ok: true, ..Default::default() };
        assert!(color_constructive_with(&c9, &lists, opts).is_ok());
        let short = ListAssignment::uniform(10, &[1, 2, 3, 4, 5]);
        assert!(color_constructive(&cycle(10), &short).is_err());
    }
}
