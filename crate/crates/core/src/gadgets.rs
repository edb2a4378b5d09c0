//! The ten list-colorable gadgets (a)–(j) and their hand proofs replayed as
//! executable coloring procedures.
//!
//! Vertex labels are ASCII: `u3'` and `u3''` stand for u'₃ and u''₃, and so
//! on. Every gadget's constraint graph is the square of its drawn graph.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::coloring::{
    check_choosable, is_valid_list_coloring, list_color, random_lists, ChoosabilityMode, ChoosabilityReport, Color,
    Coloring, ColoringError, ListAssignment, Radius, SizeProfile,
};
use crate::graph::{square, Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GadgetId {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
    J,
}

impl GadgetId {
    pub const ALL: [GadgetId; 10] = [
        GadgetId::A,
        GadgetId::B,
        GadgetId::C,
        GadgetId::D,
        GadgetId::E,
        GadgetId::F,
        GadgetId::G,
        GadgetId::H,
        GadgetId::I,
        GadgetId::J,
    ];

    pub fn letter(self) -> char {
        (b'a' + self as u8) as char
    }

    /// Names of the decision branches the procedure can take, in the order
    /// its claims are tested.
    pub fn branches(self) -> &'static [&'static str] {
        use GadgetId::*;
        match self {
            A => &["equal-lists", "distinct-lists"],
            B => &["u5-meets-u1", "u5-meets-u2", "u5-meets-u3'", "u5-meets-u3", "final"],
            C | F | I => &["v3'-outside-v3", "final"],
            D | G | J => &["v5'-outside-v5", "v3'-outside-v3", "final"],
            E => &["u2-meets-u5", "u2-meets-u3''", "u3-escapes", "u3'-meets-u5", "u4-meets-u3''", "final"],
            H => &["u0-differs", "u5-meets-u2'", "u5-meets-u3'", "u5-meets-u3", "final"],
        }
    }
}

impl fmt::Display for GadgetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("unknown gadget {0:?}; expected one of a..j")]
    UnknownId(String),
}

impl FromStr for GadgetId {
    type Err = GadgetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        match t.as_bytes() {
            [c @ b'a'..=b'j'] => Ok(GadgetId::ALL[(c - b'a') as usize]),
            [c @ b'A'..=b'J'] => Ok(GadgetId::ALL[(c - b'A') as usize]),
            _ => Err(GadgetError::UnknownId(s.to_string())),
        }
    }
}

/// A gadget: drawn graph, per-vertex list-size lower bounds, and the
/// distance-2 constraint graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadget {
    pub id: GadgetId,
    pub labels: Vec<&'static str>,
    pub graph: Graph,
    pub profile: SizeProfile,
    pub constraints: Graph,
}

impl Gadget {
    pub fn vertex(&self, label: &str) -> Option<Vertex> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Edge list loadable by the graph parser, with labels and profile as
    /// comment lines.
    pub fn dump(&self) -> String {
        let mut out = format!("# gadget {}\n", self.id);
        out.push_str("# vertex label size\n");
        for (v, (l, s)) in self.labels.iter().zip(self.profile.sizes()).enumerate() {
            out.push_str(&format!("# {v} {l} {s}\n"));
        }
        out.push_str(&self.graph.to_edge_list());
        out
    }
}

type Spec = (&'static [(&'static str, usize)], &'static [(&'static str, &'static str)]);

fn spec(id: GadgetId) -> Spec {
    use GadgetId::*;
    const B_EDGES: &[(&str, &str)] =
        &[("u1", "u3"), ("u3", "u4"), ("u4", "u5"), ("u3''", "u3'"), ("u3'", "u3"), ("u3", "u2")];
    const C_EDGES: &[(&str, &str)] = &[
        ("u1", "u3"),
        ("u3", "u4"),
        ("u4", "u5"),
        ("u3''", "u3'"),
        ("u3'", "u3"),
        ("u3", "u2"),
        ("u3''", "v3"),
        ("u3''", "v3'"),
    ];
    const D_EDGES: &[(&str, &str)] = &[
        ("u1", "u3"),
        ("u3", "u4"),
        ("u4", "u5"),
        ("u3''", "u3'"),
        ("u3'", "u3"),
        ("u3", "u2"),
        ("u3''", "v3"),
        ("u3''", "v3'"),
        ("u5", "v5"),
        ("u5", "v5'"),
    ];
    const E_EDGES: &[(&str, &str)] =
        &[("u1", "u2"), ("u2", "u3"), ("u3", "u4"), ("u4", "u5"), ("u3", "u3'"), ("u3'", "u3''")];
    const F_EDGES: &[(&str, &str)] = &[
        ("u1", "u2"),
        ("u2", "u3"),
        ("u3", "u4"),
        ("u4", "u5"),
        ("u3", "u3'"),
        ("u3'", "u3''"),
        ("u3''", "v3"),
        ("u3''", "v3'"),
    ];
    const G_EDGES: &[(&str, &str)] = &[
        ("u1", "u2"),
        ("u2", "u3"),
        ("u3", "u4"),
        ("u4", "u5"),
        ("u3", "u3'"),
        ("u3'", "u3''"),
        ("u3''", "v3"),
        ("u3''", "v3'"),
        ("u5", "v5"),
        ("u5", "v5'"),
    ];
    const H_EDGES: &[(&str, &str)] =
        &[("u0", "u1"), ("u1", "u2"), ("u2", "u3"), ("u3", "u4"), ("u4", "u5"), ("u3", "u3'"), ("u3'", "u3''")];
    const I_EDGES: &[(&str, &str)] = &[
        ("u0", "u1"),
        ("u1", "u2"),
        ("u2", "u3"),
        ("u3", "u4"),
        ("u4", "u5"),
        ("u3", "u3'"),
        ("u3'", "u3''"),
        ("u3''", "v3"),
        ("u3''", "v3'"),
    ];
    const J_EDGES: &[(&str, &str)] = &[
        ("u0", "u1"),
        ("u1", "u2"),
        ("u2", "u3"),
        ("u3", "u4"),
        ("u4", "u5"),
        ("u3", "u3'"),
        ("u3'", "u3''"),
        ("u3''", "v3"),
        ("u3''", "v3'"),
        ("u5", "v5"),
        ("u5", "v5'"),
    ];
    match id {
        A => (&[("u1", 2), ("u2", 2), ("u3", 3), ("u4", 2)], &[("u1", "u2"), ("u2", "u3"), ("u3", "u4")]),
        B => (&[("u1", 3), ("u2", 2), ("u3", 3), ("u4", 5), ("u5", 2), ("u3'", 5), ("u3''", 2)], B_EDGES),
        C => (
            &[
                ("u1", 3),
                ("u2", 2),
                ("u3", 4),
                ("u4", 5),
                ("u5", 2),
                ("u3'", 6),
                ("u3''", 4),
                ("v3", 3),
                ("v3'", 2),
            ],
            C_EDGES,
        ),
        D => (
            &[
                ("u1", 3),
                ("u2", 2),
                ("u3", 4),
                ("u4", 6),
                ("u5", 4),
                ("u3'", 6),
                ("u3''", 4),
                ("v3", 3),
                ("v3'", 2),
                ("v5", 3),
                ("v5'", 2),
            ],
            D_EDGES,
        ),
        E => (&[("u1", 2), ("u2", 3), ("u3", 3), ("u4", 4), ("u5", 2), ("u3'", 4), ("u3''", 2)], E_EDGES),
        F => (
            &[
                ("u1", 2),
                ("u2", 3),
                ("u3", 3),
                ("u4", 4),
                ("u5", 2),
                ("u3'", 5),
                ("u3''", 4),
                ("v3", 3),
                ("v3'", 2),
            ],
            F_EDGES,
        ),
        G => (
            &[
                ("u1", 2),
                ("u2", 3),
                ("u3", 3),
                ("u4", 5),
                ("u5", 4),
                ("u3'", 5),
                ("u3''", 4),
                ("v3", 3),
                ("v3'", 2),
                ("v5", 3),
                ("v5'", 2),
            ],
            G_EDGES,
        ),
        H => (
            &[("u0", 2), ("u1", 2), ("u2", 4), ("u3", 3), ("u4", 4), ("u5", 2), ("u3'", 4), ("u3''", 2)],
            H_EDGES,
        ),
        I => (
            &[
                ("u0", 2),
                ("u1", 2),
                ("u2", 4),
                ("u3", 3),
                ("u4", 4),
                ("u5", 2),
                ("u3'", 5),
                ("u3''", 4),
                ("v3", 3),
                ("v3'", 2),
            ],
            I_EDGES,
        ),
        J => (
            &[
                ("u0", 2),
                ("u1", 2),
                ("u2", 4),
                ("u3", 3),
                ("u4", 5),
                ("u5", 4),
                ("u3'", 5),
                ("u3''", 4),
                ("v3", 3),
                ("v3'", 2),
                ("v5", 3),
                ("v5'", 2),
            ],
            J_EDGES,
        ),
    }
}

pub fn build_gadget(id: GadgetId) -> Gadget {
    let (vertices, edges) = spec(id);
    let labels: Vec<&'static str> = vertices.iter().map(|&(l, _)| l).collect();
    let index = |l: &str| labels.iter().position(|&x| x == l).expect("edge endpoint is a gadget label");
    let graph = Graph::from_edges(labels.len(), edges.iter().map(|&(a, b)| (index(a), index(b))))
        .expect("gadget edges form a simple graph");
    let profile = SizeProfile::new(vertices.iter().map(|&(_, s)| s).collect()).expect("sizes are positive");
    let constraints = square(&graph);
    Gadget { id, labels, graph, profile, constraints }
}

/// Choosability check of the gadget's constraint graph at its profile.
pub fn verify_gadget(id: GadgetId, mode: ChoosabilityMode) -> Result<ChoosabilityReport, ColoringError> {
    let g = build_gadget(id);
    check_choosable(&g.constraints, &g.profile, mode)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProcedureError {
    #[error("expected lists for {expected} vertices, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("list of {label} has {got} colors, fewer than the required {need}")]
    ListTooShort { label: &'static str, got: usize, need: usize },
    #[error("procedure ({gadget}) stuck at: {step}")]
    Stuck { gadget: GadgetId, step: String, trace: Vec<String>, lists: ListAssignment },
}

/// Outcome of a successful procedure run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProcedureRun {
    pub coloring: Coloring,
    pub branch: &'static str,
    pub trace: Vec<String>,
}

/// Colors the gadget from `lists` by replaying its proof: claims are tested
/// in order, a failed claim runs that claim's direct coloring order, and
/// when all claims hold the final order is used. Lists longer than the
/// profile lose their largest colors first.
pub fn extend_procedure(id: GadgetId, lists: &ListAssignment) -> Result<ProcedureRun, ProcedureError> {
    let gadget = build_gadget(id);
    if lists.len() != gadget.n() {
        return Err(ProcedureError::LengthMismatch { expected: gadget.n(), got: lists.len() });
    }
    let mut trimmed = Vec::with_capacity(gadget.n());
    for (v, &need) in gadget.profile.sizes().iter().enumerate() {
        let l = lists.list(v);
        if l.len() < need {
            return Err(ProcedureError::ListTooShort { label: gadget.labels[v], got: l.len(), need });
        }
        trimmed.push(l[..need].to_vec());
    }
    let mut run = Run { gadget: &gadget, lists: trimmed, coloring: Coloring::uncolored(gadget.n()), trace: Vec::new() };
    let branch = match id {
        GadgetId::A => proc_a(&mut run),
        GadgetId::B => proc_b(&mut run),
        GadgetId::C => proc_three_pendant(&mut run, GadgetId::B, &["u2", "u1", "u3", "u5", "u4", "u3'", "v3'", "v3"]),
        GadgetId::D => proc_five_pendant(&mut run, GadgetId::C, &["u3", "u2", "u1", "u3'", "v3'", "v3", "u4", "v5'", "v5"], false),
        GadgetId::E => proc_e(&mut run),
        GadgetId::F => proc_three_pendant(&mut run, GadgetId::E, &["u1", "u3", "u2", "u5", "u4", "u3'", "v3'", "v3"]),
        GadgetId::G => proc_five_pendant(&mut run, GadgetId::F, &["u3", "u1", "u2", "u3'", "v3'", "v3", "u4", "v5'", "v5"], false),
        GadgetId::H => proc_h(&mut run),
        GadgetId::I => {
            proc_three_pendant(&mut run, GadgetId::H, &["u0", "u1", "u3", "u2", "u5", "u4", "u3'", "v3'", "v3"])
        }
        GadgetId::J => proc_five_pendant(
            &mut run,
            GadgetId::I,
            &["u3", "u1", "u0", "u2", "u3'", "v3'", "v3", "u4", "v5'", "v5"],
            true,
        ),
    }?;
    let final_lists = ListAssignment::new(run.lists.clone()).expect("trimmed lists are nonempty");
    if !run.coloring.is_total()
        || !is_valid_list_coloring(&gadget.constraints, &run.coloring, &final_lists, Radius::One)
    {
        return Err(run.stuck("final coloring check".to_string()));
    }
    Ok(ProcedureRun { coloring: run.coloring, branch, trace: run.trace })
}

fn inter(a: &[Color], b: &[Color]) -> Vec<Color> {
    a.iter().copied().filter(|c| b.contains(c)).collect()
}

fn minus(a: &[Color], b: &[Color]) -> Vec<Color> {
    a.iter().copied().filter(|c| !b.contains(c)).collect()
}

type Step<T = ()> = Result<T, ProcedureError>;

struct Run<'g> {
    gadget: &'g Gadget,
    lists: Vec<Vec<Color>>,
    coloring: Coloring,
    trace: Vec<String>,
}

impl Run<'_> {
    fn v(&self, label: &str) -> Vertex {
        self.gadget.vertex(label).expect("procedure uses gadget labels")
    }

    fn list(&self, label: &str) -> Vec<Color> {
        self.lists[self.v(label)].clone()
    }

    fn stuck(&self, step: String) -> ProcedureError {
        let mut trace = self.trace.clone();
        trace.push(format!("stuck: {step}"));
        ProcedureError::Stuck {
            gadget: self.gadget.id,
            step,
            trace,
            lists: ListAssignment::new(self.lists.clone()).expect("trimmed lists are nonempty"),
        }
    }

    fn note(&mut self, s: String) {
        self.trace.push(s);
    }

    fn available(&self, v: Vertex) -> Vec<Color> {
        let seen: Vec<Color> =
            self.gadget.constraints.neighbors(v).iter().filter_map(|&w| self.coloring.get(w)).collect();
        minus(&self.lists[v], &seen)
    }

    /// Colors `label` with the smallest color of `from` still available.
    fn color_from(&mut self, label: &str, from: &[Color]) -> Step {
        let v = self.v(label);
        if self.coloring.get(v).is_some() {
            return Err(self.stuck(format!("{label} colored twice")));
        }
        match inter(&self.available(v), from).first() {
            Some(&c) => {
                self.coloring.set(v, c);
                self.note(format!("color {label} = {c}"));
                Ok(())
            }
            None => Err(self.stuck(format!("no color left for {label} in {from:?}"))),
        }
    }

    fn color(&mut self, label: &str) -> Step {
        let all = self.list(label);
        self.color_from(label, &all)
    }

    fn color_with(&mut self, label: &str, x: Color) -> Step {
        self.color_from(label, &[x])
    }

    fn order(&mut self, labels: &[&str]) -> Step {
        labels.iter().try_for_each(|l| self.color(l))
    }

    /// Colors the vertices named in `mapping` by running the procedure of
    /// `sub` on their remaining lists. Pairs are (sub-gadget label, label
    /// here).
    fn sub(&mut self, sub: GadgetId, mapping: &[(&str, &str)]) -> Step {
        let target = build_gadget(sub);
        let mut lists = vec![Vec::new(); target.n()];
        for &(sl, hl) in mapping {
            let sv = target.vertex(sl).expect("sub-gadget label");
            let need = target.profile.sizes()[sv];
            let avail = self.available(self.v(hl));
            if avail.len() < need {
                return Err(self.stuck(format!("{hl} keeps {} colors, gadget ({sub}) needs {need} at {sl}", avail.len())));
            }
            lists[sv] = avail;
        }
        let lists = ListAssignment::new(lists).expect("mapping covers the sub-gadget");
        self.note(format!("apply ({sub})"));
        match extend_procedure(sub, &lists) {
            Ok(r) => {
                for &(sl, hl) in mapping {
                    let c = r.coloring.get(target.vertex(sl).unwrap()).unwrap();
                    let v = self.v(hl);
                    self.coloring.set(v, c);
                }
                self.trace.extend(r.trace.into_iter().map(|s| format!("  ({sub}) {s}")));
                Ok(())
            }
            Err(e) => Err(self.stuck(format!("sub-gadget ({sub}) failed: {e}"))),
        }
    }

    fn claim(&mut self, name: &str, holds: bool) {
        self.note(format!("claim {name}: {}", if holds { "holds" } else { "fails" }));
    }
}

/// Identity mapping for every label of `sub`.
fn same(sub: GadgetId) -> Vec<(&'static str, &'static str)> {
    build_gadget(sub).labels.iter().map(|&l| (l, l)).collect()
}

/// Sub-gadget labels with the two arms at u3 swapped: u4/u5 play u3'/u3''
/// and the v5 pendants play the v3 pendants.
fn mirrored(sub: GadgetId) -> Vec<(&'static str, &'static str)> {
    same(sub)
        .into_iter()
        .map(|(l, _)| {
            let h = match l {
                "u4" => "u3'",
                "u5" => "u3''",
                "u3'" => "u4",
                "u3''" => "u5",
                "v3" => "v5",
                "v3'" => "v5'",
                other => other,
            };
            (l, h)
        })
        .collect()
}

fn proc_a(r: &mut Run) -> Step<&'static str> {
    let (l1, l2, l3) = (r.list("u1"), r.list("u2"), r.list("u3"));
    if l1 == l2 {
        r.claim("L(u1) = L(u2)", true);
        r.color_from("u3", &minus(&l3, &l2))?;
        r.order(&["u4", "u2", "u1"])?;
        Ok("equal-lists")
    } else {
        r.claim("L(u1) = L(u2)", false);
        r.color_from("u2", &minus(&l2, &l1))?;
        r.order(&["u4", "u3", "u1"])?;
        Ok("distinct-lists")
    }
}

fn proc_b(r: &mut Run) -> Step<&'static str> {
    let l5 = r.list("u5");
    if let Some(&x) = inter(&l5, &r.list("u1")).first() {
        r.claim("L(u5) ∩ L(u1) = ∅", false);
        r.color_with("u1", x)?;
        r.color_with("u5", x)?;
        r.order(&["u2", "u3", "u3''", "u3'", "u4"])?;
        return Ok("u5-meets-u1");
    }
    r.claim("L(u5) ∩ L(u1) = ∅", true);
    if let Some(&x) = inter(&l5, &r.list("u2")).first() {
        r.claim("L(u5) ∩ L(u2) = ∅", false);
        r.color_with("u2", x)?;
        r.color_with("u5", x)?;
        r.order(&["u1", "u3", "u3''", "u3'", "u4"])?;
        return Ok("u5-meets-u2");
    }
    r.claim("L(u5) ∩ L(u2) = ∅", true);
    if let Some(&x) = inter(&l5, &r.list("u3'")).first() {
        r.claim("L(u5) ∩ L(u3') = ∅", false);
        r.color_with("u3'", x)?;
        r.color_with("u5", x)?;
        r.order(&["u3''", "u3", "u2", "u1", "u4"])?;
        return Ok("u5-meets-u3'");
    }
    r.claim("L(u5) ∩ L(u3') = ∅", true);
    if let Some(&x) = inter(&l5, &r.list("u3")).first() {
        r.claim("L(u5) ∩ L(u3) = ∅", false);
        r.color_with("u3", x)?;
        r.order(&["u5", "u3''", "u2", "u1", "u4", "u3'"])?;
        return Ok("u5-meets-u3");
    }
    r.claim("L(u5) ∩ L(u3) = ∅", true);
    r.order(&["u2", "u1", "u3", "u3''", "u3'", "u4", "u5"])?;
    Ok("final")
}

/// Gadgets (c), (f), (i): a pendant pair v3, v3' on u3''.
fn proc_three_pendant(r: &mut Run, base: GadgetId, last: &[&str]) -> Step<&'static str> {
    let (lv, lv_) = (r.list("v3"), r.list("v3'"));
    if let Some(&x) = minus(&lv_, &lv).first() {
        r.claim("L(v3') ⊆ L(v3)", false);
        r.color_with("v3'", x)?;
        r.sub(base, &same(base))?;
        r.color("v3")?;
        return Ok("v3'-outside-v3");
    }
    r.claim("L(v3') ⊆ L(v3)", true);
    r.color_from("u3''", &minus(&r.list("u3''"), &lv))?;
    r.order(last)?;
    Ok("final")
}

/// Gadgets (d), (g), (j): pendant pairs on both u3'' and u5.
fn proc_five_pendant(r: &mut Run, base: GadgetId, last: &[&str], avoid_both: bool) -> Step<&'static str> {
    let (lv5, lv5_) = (r.list("v5"), r.list("v5'"));
    if let Some(&x) = minus(&lv5_, &lv5).first() {
        r.claim("L(v5') ⊆ L(v5)", false);
        r.color_with("v5'", x)?;
        r.sub(base, &same(base))?;
        r.color("v5")?;
        return Ok("v5'-outside-v5");
    }
    r.claim("L(v5') ⊆ L(v5)", true);
    let (lv3, lv3_) = (r.list("v3"), r.list("v3'"));
    if let Some(&x) = minus(&lv3_, &lv3).first() {
        r.claim("L(v3') ⊆ L(v3)", false);
        r.color_with("v3'", x)?;
        r.sub(base, &mirrored(base))?;
        r.color("v3")?;
        return Ok("v3'-outside-v3");
    }
    r.claim("L(v3') ⊆ L(v3)", true);
    r.color_from("u3''", &minus(&r.list("u3''"), &lv3))?;
    let blocked = if avoid_both {
        let mut b = lv5.clone();
        b.extend(lv5_);
        b
    } else {
        lv5
    };
    let pool = minus(&r.list("u5"), &blocked);
    if pool.is_empty() {
        return Err(r.stuck("L(u5) minus the pendant lists at u5 is empty".to_string()));
    }
    r.color_from("u5", &pool)?;
    r.order(last)?;
    Ok("final")
}

fn proc_e(r: &mut Run) -> Step<&'static str> {
    let (l2, l3, l5, l3_, l3__, l4) =
        (r.list("u2"), r.list("u3"), r.list("u5"), r.list("u3'"), r.list("u3''"), r.list("u4"));
    if let Some(&x) = inter(&l2, &l5).first() {
        r.claim("L(u2) ∩ L(u5) = ∅", false);
        r.color_with("u2", x)?;
        r.color_with("u5", x)?;
        r.order(&["u1", "u3", "u3''", "u3'", "u4"])?;
        return Ok("u2-meets-u5");
    }
    r.claim("L(u2) ∩ L(u5) = ∅", true);
    if let Some(&x) = inter(&l2, &l3__).first() {
        r.claim("L(u2) ∩ L(u3'') = ∅", false);
        r.color_with("u2", x)?;
        r.color_with("u3''", x)?;
        r.order(&["u1", "u3", "u5", "u4", "u3'"])?;
        return Ok("u2-meets-u3''");
    }
    r.claim("L(u2) ∩ L(u3'') = ∅", true);
    let mut arms = l5.clone();
    arms.extend(&l3__);
    if let Some(&x) = minus(&l3, &arms).first() {
        r.claim("L(u3) ⊆ L(u5) ∪ L(u3'')", false);
        r.color_with("u3", x)?;
        r.order(&["u1", "u2", "u3'", "u3''", "u4", "u5"])?;
        return Ok("u3-escapes");
    }
    r.claim("L(u3) ⊆ L(u5) ∪ L(u3'')", true);
    if let Some(&x) = inter(&l3_, &l5).first() {
        r.claim("L(u3') ∩ L(u5) = ∅", false);
        r.color_with("u3'", x)?;
        r.color_with("u5", x)?;
        r.order(&["u3''", "u3", "u1", "u2", "u4"])?;
        return Ok("u3'-meets-u5");
    }
    r.claim("L(u3') ∩ L(u5) = ∅", true);
    if let Some(&x) = inter(&l4, &l3__).first() {
        r.claim("L(u4) ∩ L(u3'') = ∅", false);
        r.color_with("u4", x)?;
        r.color_with("u3''", x)?;
        r.order(&["u5", "u3", "u1", "u2", "u3'"])?;
        return Ok("u4-meets-u3''");
    }
    r.claim("L(u4) ∩ L(u3'') = ∅", true);
    let Some(&x) = inter(&l5, &l3).first() else {
        return Err(r.stuck("L(u5) ∩ L(u3) is empty".to_string()));
    };
    r.color_with("u3", x)?;
    r.order(&["u1", "u2", "u5", "u4", "u3''", "u3'"])?;
    Ok("final")
}

fn proc_h(r: &mut Run) -> Step<&'static str> {
    let (l0, l1) = (r.list("u0"), r.list("u1"));
    if let Some(&x) = minus(&l0, &l1).first() {
        r.claim("L(u0) = L(u1)", false);
        r.color_with("u0", x)?;
        let rest: Vec<_> = same(GadgetId::E);
        r.sub(GadgetId::E, &rest)?;
        return Ok("u0-differs");
    }
    r.claim("L(u0) = L(u1)", true);
    let l2 = minus(&r.list("u2"), &l1);
    let (l3, l5, l3_) = (r.list("u3"), r.list("u5"), r.list("u3'"));
    let branch = if let Some(&x) = inter(&l5, &l2).first() {
        r.claim("L(u5) ∩ L'(u2) = ∅", false);
        r.color_with("u2", x)?;
        r.color_with("u5", x)?;
        r.order(&["u3", "u3''", "u3'", "u4"])?;
        "u5-meets-u2'"
    } else if let Some(&x) = inter(&l5, &l3_).first() {
        r.claim("L(u5) ∩ L'(u2) = ∅", true);
        r.claim("L(u5) ∩ L(u3') = ∅", false);
        r.color_with("u3'", x)?;
        r.color_with("u5", x)?;
        r.order(&["u3''", "u3"])?;
        r.color_from("u2", &l2)?;
        r.color("u4")?;
        "u5-meets-u3'"
    } else if let Some(&x) = inter(&l5, &l3).first() {
        r.claim("L(u5) ∩ L'(u2) = ∅", true);
        r.claim("L(u5) ∩ L(u3') = ∅", true);
        r.claim("L(u5) ∩ L(u3) = ∅", false);
        r.color_with("u3", x)?;
        r.order(&["u5", "u3''"])?;
        r.color_from("u2", &l2)?;
        r.order(&["u4", "u3'"])?;
        "u5-meets-u3"
    } else {
        r.claim("L(u5) ∩ L(u3) = ∅", true);
        r.color_from("u2", &l2)?;
        r.order(&["u3", "u3''", "u3'", "u4", "u5"])?;
        "final"
    };
    r.order(&["u1", "u0"])?;
    Ok(branch)
}

/// Result of comparing the procedures with the backtracking solver on
/// random assignments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheckReport {
    pub gadget: GadgetId,
    pub trials: u64,
    pub seed: u64,
    pub valid: u64,
    pub agreements: u64,
    pub coverage: Vec<(&'static str, u64)>,
    pub failures: Vec<(ListAssignment, String)>,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.valid == self.trials && self.agreements == self.trials
    }

    pub fn uncovered(&self) -> Vec<&'static str> {
        self.coverage.iter().filter(|(_, c)| *c == 0).map(|(b, _)| *b).collect()
    }
}

pub fn cross_check_procedure(id: GadgetId, trials: u64, seed: u64) -> CrossCheckReport {
    let gadget = build_gadget(id);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coverage: Vec<(&'static str, u64)> = id.branches().iter().map(|&b| (b, 0)).collect();
    let (mut valid, mut agreements) = (0, 0);
    let mut failures = Vec::new();
    for _ in 0..trials {
        let lists = random_lists(&gadget.profile, &mut rng);
        let solvable = list_color(&gadget.constraints, &lists).is_some();
        match extend_procedure(id, &lists) {
            Ok(run) => {
                if is_valid_list_coloring(&gadget.constraints, &run.coloring, &lists, Radius::One) {
                    valid += 1;
                } else {
                    failures.push((lists.clone(), "procedure output invalid".to_string()));
                }
                if solvable {
                    agreements += 1;
                } else {
                    failures.push((lists.clone(), "solver found no coloring".to_string()));
                }
                if let Some(slot) = coverage.iter_mut().find(|(b, _)| *b == run.branch) {
                    slot.1 += 1;
                }
            }
            Err(e) => {
                if !solvable {
                    agreements += 1;
                }
                failures.push((lists, e.to_string()));
            }
        }
    }
    CrossCheckReport { gadget: id, trials, seed, valid, agreements, coverage, failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::girth;

    fn lists(ls: &[&[Color]]) -> ListAssignment {
        ListAssignment::new(ls.iter().map(|l| l.to_vec()).collect()).unwrap()
    }

    #[test]
    fn sizes_and_shapes() {
        let expect = [(GadgetId::A, 4, 3), (GadgetId::B, 7, 6), (GadgetId::C, 9, 8), (GadgetId::D, 11, 10)];
        for (id, n, m) in expect {
            let g = build_gadget(id);
            assert_eq!((g.graph.n(), g.graph.m()), (n, m), "gadget {id}");
        }
        for id in GadgetId::ALL {
            let g = build_gadget(id);
            assert_eq!(g.graph.m(), g.graph.n() - 1, "gadget {id} is a tree");
            assert_eq!(girth(&g.graph), None);
            assert_eq!(g.constraints, square(&g.graph));
            assert_eq!(build_gadget(id), g);
        }
        assert_eq!(build_gadget(GadgetId::A).profile.sizes(), &[2, 2, 3, 2]);
        let j = build_gadget(GadgetId::J);
        let size = |l| j.profile.sizes()[j.vertex(l).unwrap()];
        assert_eq!((size("u4"), size("u5"), size("v5"), size("v5'")), (5, 4, 3, 2));
        assert_eq!(j.n(), 12);
    }

    #[test]
    fn ids_parse() {
        assert_eq!("c".parse::<GadgetId>().unwrap(), GadgetId::C);
        assert_eq!("(j)".parse::<GadgetId>().unwrap(), GadgetId::J);
        assert!("k".parse::<GadgetId>().is_err());
    }

    #[test]
    fn procedure_a_examples() {
        let run = extend_procedure(GadgetId::A, &lists(&[&[1, 2], &[1, 2], &[1, 2, 3], &[1, 3]])).unwrap();
        assert_eq!(run.branch, "equal-lists");
        assert_eq!(run.coloring.get(2), Some(3));

        let run = extend_procedure(GadgetId::A, &lists(&[&[1, 2], &[2, 3], &[2, 3, 4], &[4, 5]])).unwrap();
        assert_eq!(run.branch, "distinct-lists");
        assert_eq!(run.coloring.get(1), Some(3));
    }

    #[test]
    fn disjoint_lists_always_work() {
        for id in GadgetId::ALL {
            let g = build_gadget(id);
            let mut next = 0;
            let ls = g
                .profile
                .sizes()
                .iter()
                .map(|&s| {
                    let l: Vec<Color> = (next..next + s as Color).collect();
                    next += s as Color;
                    l
                })
                .collect();
            let ls = ListAssignment::new(ls).unwrap();
            let run = extend_procedure(id, &ls).unwrap();
            assert!(is_valid_list_coloring(&g.constraints, &run.coloring, &ls, Radius::One));
        }
    }

    #[test]
    fn long_lists_are_trimmed() {
        let run = extend_procedure(GadgetId::A, &lists(&[&[1, 2, 9], &[1, 2], &[1, 2, 3, 7], &[1, 3]])).unwrap();
        assert_eq!(run.branch, "equal-lists");
        assert!(extend_procedure(GadgetId::A, &lists(&[&[1], &[1, 2], &[1, 2, 3], &[1, 3]])).is_err());
    }

    #[test]
    fn cross_check_small_runs() {
        for id in GadgetId::ALL {
            let report = cross_check_procedure(id, 200, 3);
            assert!(report.passed(), "gadget {id}: {:?}", report.failures.first());
        }
    }

    #[test]
    fn dump_is_loadable() {
        let g = build_gadget(GadgetId::B);
        let parsed: Graph = g.dump().parse().unwrap();
        assert_eq!(parsed, g.graph);
        assert!(g.dump().contains("# 5 u3' 5"));
    }
}
