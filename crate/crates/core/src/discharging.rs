//! Charges μ(u) = 4d(u) − 10, the redistribution rules R0, R1, R2(i)–(v),
//! and a per-vertex check of the final charges against the case analysis.
//!
//! In the (1,1,0) case the inflow from a 4-vertex to a special vertex is
//! rule R2(v), whatever other labels it may carry.

use std::fmt;

use thiserror::Error;

use crate::density::mad_exact;
use crate::graph::{enumerate_paths, Graph, Vertex};
use crate::reducibility::{analyze, Analysis, Flavor, Lemma};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    R0,
    R1,
    R2i,
    R2ii,
    R2iii,
    R2iv,
    R2v,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::R0 => "R0",
            Rule::R1 => "R1",
            Rule::R2i => "R2(i)",
            Rule::R2ii => "R2(ii)",
            Rule::R2iii => "R2(iii)",
            Rule::R2iv => "R2(iv)",
            Rule::R2v => "R2(v)",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transfer {
    pub from: Vertex,
    pub to: Vertex,
    pub amount: Rational,
    pub rule: Rule,
    /// The 2-vertex of the 1-path crossed by an R2 transfer.
    pub via: Option<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeLedger {
    pub initial: Vec<Rational>,
    pub transfers: Vec<Transfer>,
    pub final_charges: Vec<Rational>,
}

impl ChargeLedger {
    pub fn total_initial(&self) -> Rational {
        self.initial.iter().sum()
    }

    pub fn total_final(&self) -> Rational {
        self.final_charges.iter().sum()
    }

    pub fn conserved(&self) -> bool {
        self.total_initial() == self.total_final()
    }

    /// One line per transfer: `u -> v : p/q : RULE`.
    pub fn transfer_lines(&self) -> String {
        self.transfers.iter().map(|t| format!("{} -> {} : {} : {}\n", t.from, t.to, t.amount, t.rule)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DischargeError {
    #[error("vertex {vertex} has degree {degree}; minimum degree 2 is required")]
    MinDegree { vertex: Vertex, degree: usize },
    #[error("vertex {vertex} has degree {degree}; maximum degree 4 is required")]
    MaxDegree { vertex: Vertex, degree: usize },
    #[error("component {0:?} is a cycle of 2-vertices")]
    CycleComponent(Vec<Vertex>),
}

pub fn initial_charges(g: &Graph) -> Vec<Rational> {
    g.vertices().map(|v| Rational::from_integer(4 * g.degree(v) as i64 - 10)).collect()
}

pub fn run_discharging(g: &Graph) -> Result<ChargeLedger, DischargeError> {
    for v in g.vertices() {
        let degree = g.degree(v);
        if degree < 2 {
            return Err(DischargeError::MinDegree { vertex: v, degree });
        }
        if degree > 4 {
            return Err(DischargeError::MaxDegree { vertex: v, degree });
        }
    }
    if let Some(c) = enumerate_paths(g).cycle_components.into_iter().next() {
        return Err(DischargeError::CycleComponent(c));
    }
    let a = analyze(g);
    let one = Rational::from_integer(1);
    let mut transfers = Vec::new();
    for v in g.vertices().filter(|&v| g.degree(v) >= 3) {
        for arm in &a.arms[v] {
            for &x in &arm.internals {
                transfers.push(Transfer { from: v, to: x, amount: one, rule: Rule::R0, via: None });
            }
        }
    }
    for v in g.vertices().filter(|&v| g.degree(v) == 4) {
        for &w in g.neighbors(v).iter().filter(|&&w| g.degree(w) == 3) {
            transfers.push(Transfer { from: v, to: w, amount: one, rule: Rule::R1, via: None });
        }
    }
    for v in g.vertices() {
        for arm in a.arms[v].iter().filter(|arm| arm.k() == 1 && arm.end != v) {
            if let Some((rule, amount)) = r2(g, &a, v, arm.end) {
                transfers.push(Transfer { from: v, to: arm.end, amount, rule, via: Some(arm.internals[0]) });
            }
        }
    }
    let initial = initial_charges(g);
    let mut final_charges = initial.clone();
    for t in &transfers {
        final_charges[t.from] -= t.amount;
        final_charges[t.to] += t.amount;
    }
    Ok(ChargeLedger { initial, transfers, final_charges })
}

/// R2 across a 1-path from `v` to `u`.
fn r2(g: &Graph, a: &Analysis, v: Vertex, u: Vertex) -> Option<(Rule, Rational)> {
    let (cv, cu) = (&a.classes[v], &a.classes[u]);
    let third = Rational::new(1, 3);
    if cv.degree == 3 && (cv.is(&[1, 1, 0]) || cv.is(&[1, 0, 0])) && cu.flavor == Some(Flavor::Small) {
        return Some((Rule::R2i, third));
    }
    if g.degree(v) != 4 {
        return None;
    }
    match cu.flavor {
        Some(Flavor::Medium) => Some((Rule::R2ii, Rational::from_integer(1))),
        Some(Flavor::Large) => Some((Rule::R2iii, Rational::new(1, 2))),
        Some(Flavor::Huge) => Some((Rule::R2iv, third)),
        _ if cu.special => Some((Rule::R2v, third)),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexCertificate {
    pub vertex: Vertex,
    pub mu: Rational,
    pub mu_star: Rational,
    pub case: String,
    /// Lower bound the case analysis gives; `None` when outside it.
    pub bound: Option<Rational>,
    /// The configuration whose absence the case analysis relies on.
    pub outside: Option<Lemma>,
}

impl VertexCertificate {
    pub fn meets_bound(&self) -> bool {
        self.bound.is_none_or(|b| self.mu_star >= b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateReport {
    pub vertices: Vec<VertexCertificate>,
}

impl CertificateReport {
    pub fn all_nonnegative(&self) -> bool {
        self.vertices.iter().all(|c| c.mu_star >= Rational::from_integer(0))
    }

    pub fn violators(&self) -> Vec<Vertex> {
        self.vertices.iter().filter(|c| c.mu_star < Rational::from_integer(0)).map(|c| c.vertex).collect()
    }

    /// Vertices whose final charge is below their case's bound.
    pub fn bound_failures(&self) -> Vec<Vertex> {
        self.vertices.iter().filter(|c| !c.meets_bound()).map(|c| c.vertex).collect()
    }

    pub fn outside(&self) -> Vec<(Vertex, Lemma)> {
        self.vertices.iter().filter_map(|c| c.outside.map(|l| (c.vertex, l))).collect()
    }

    /// Lines `v : mu : mu_star : case`.
    pub fn table(&self) -> String {
        self.vertices
            .iter()
            .map(|c| {
                let case = match c.outside {
                    Some(l) => format!("{} [outside: {l}]", c.case),
                    None => c.case.clone(),
                };
                format!("{} : {} : {} : {}\n", c.vertex, c.mu, c.mu_star, case)
            })
            .collect()
    }
}

pub fn certify_nonnegative(g: &Graph, ledger: &ChargeLedger) -> CertificateReport {
    let a = analyze(g);
    let vertices = g
        .vertices()
        .map(|v| {
            let (case, bound, outside) = classify_case(g, &a, v);
            VertexCertificate {
                vertex: v,
                mu: ledger.initial[v],
                mu_star: ledger.final_charges[v],
                case,
                bound: if outside.is_some() { None } else { bound },
                outside,
            }
        })
        .collect();
    CertificateReport { vertices }
}

fn r(p: i64, q: i64) -> Option<Rational> {
    Some(Rational::new(p, q))
}

fn path_lemma(k: usize) -> Lemma {
    if k >= 3 {
        Lemma::L9
    } else {
        Lemma::L10
    }
}

fn classify_case(g: &Graph, a: &Analysis, v: Vertex) -> (String, Option<Rational>, Option<Lemma>) {
    let c = &a.classes[v];
    let arms = &a.arms[v];
    match c.degree {
        0 | 1 => ("degree below 2".into(), None, Some(Lemma::L8)),
        2 => {
            if c.degenerate {
                ("2-vertex on a cycle component".into(), None, Some(Lemma::L9))
            } else {
                ("case 1: 2-vertex".into(), r(0, 1), None)
            }
        }
        3 => {
            if let Some(k) = arms.iter().map(|x| x.k()).filter(|&k| k >= 2).max() {
                return ("case 2: 3-vertex on a 2+-path".into(), None, Some(path_lemma(k)));
            }
            if c.is(&[1, 1, 1]) {
                let flavor = c.flavor.expect("(1,1,1) has a flavor");
                let name = format!("case 2: {} (1,1,1)", format!("{flavor:?}").to_lowercase());
                if flavor == Flavor::Small {
                    for arm in arms {
                        let far = &a.classes[arm.end];
                        if far.is_111() {
                            return (name, None, Some(Lemma::L11));
                        }
                        if let Some(k) = a.arms[arm.end].iter().map(|x| x.k()).filter(|&k| k >= 2).max() {
                            return (name, None, Some(path_lemma(k)));
                        }
                    }
                }
                (name, r(0, 1), None)
            } else if c.is(&[1, 1, 0]) {
                let t = arms.iter().find(|x| x.k() == 0).unwrap().end;
                let ones: Vec<Vertex> = arms.iter().filter(|x| x.k() == 1).map(|x| x.end).collect();
                let small = |x: Vertex| a.classes[x].flavor == Some(Flavor::Small);
                if !ones.iter().any(|&x| small(x)) {
                    return ("case 2: (1,1,0) without small far end".into(), r(0, 1), None);
                }
                if g.degree(t) == 4 {
                    return ("case 2: (1,1,0) with a small far end and a 4-neighbor".into(), r(1, 3), None);
                }
                let name = "case 2: special (1,1,0)".to_string();
                let other_ok = (0..2).any(|i| small(ones[i]) && g.degree(ones[1 - i]) == 4);
                if other_ok {
                    (name, r(0, 1), None)
                } else {
                    (name, None, Some(Lemma::L12))
                }
            } else if c.is(&[1, 0, 0]) {
                ("case 2: (1,0,0)".into(), r(2, 3), None)
            } else {
                ("case 2: (0,0,0)".into(), r(2, 1), None)
            }
        }
        4 => {
            if let Some(k) = arms.iter().map(|x| x.k()).filter(|&k| k >= 3).max() {
                return ("case 3: 4-vertex on a 3+-path".into(), None, Some(path_lemma(k)));
            }
            let zeros = arms.iter().filter(|x| x.k() == 0).count();
            let long: Vec<Vertex> = arms.iter().filter(|x| x.k() >= 1).map(|x| x.second()).collect();
            let light = |x: Vertex| a.classes[x].light;
            let light_count = long.iter().filter(|&&x| light(x)).count();
            match zeros {
                0 => {
                    let name = "case 3: (1+,1+,1+,1+)".to_string();
                    let clash = (0..4).any(|l| {
                        g.degree(long[l]) <= 3 && long.iter().enumerate().filter(|&(x, &w)| x != l && light(w)).count() >= 2
                    });
                    if clash {
                        return (name, None, Some(Lemma::L13));
                    }
                    (name, r(0, 1), None)
                }
                1 => {
                    let t = arms.iter().find(|x| x.k() == 0).unwrap().end;
                    if g.degree(t) == 4 {
                        return ("case 3: (1+,1+,1+,0) with a 4-neighbor".into(), r(0, 1), None);
                    }
                    let name = "case 3: (1+,1+,1+,0) with a 3-neighbor".to_string();
                    if light_count <= 1 {
                        return (name, r(1, 3), None);
                    }
                    let bad = |x: Vertex| {
                        let cx = &a.classes[x];
                        cx.degree == 2 || cx.special || cx.is_111()
                    };
                    // Any choice of two light ones leaves a third that must not be bad.
                    let clash = (0..3).any(|l| {
                        let others: Vec<usize> = (0..3).filter(|&x| x != l).collect();
                        others.iter().all(|&x| light(long[x])) && bad(long[l])
                    });
                    if clash {
                        (name, None, Some(Lemma::L14))
                    } else {
                        (name, r(0, 1), None)
                    }
                }
                _ => ("case 3: (0+,0+,0,0)".into(), r(0, 1), None),
            }
        }
        _ => ("degree above 4".into(), None, None),
    }
}

/// Σ (4d(u) − 10) = 8|E| − 10|V|, and whether `mad < 5/2` implies it is
/// negative on this graph.
pub fn check_equation_1(g: &Graph) -> (Rational, bool) {
    let sum = Rational::from_integer(8 * g.m() as i64 - 10 * g.n() as i64);
    let consistent = g.n() == 0 || mad_exact(g) >= Rational::new(5, 2) || sum < Rational::from_integer(0);
    (sum, consistent)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d)
    }

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges.iter().copied()).unwrap()
    }

    /// Adds a path of `k` new 2-vertices between `a` and `b`.
    fn thread(edges: &mut Vec<(usize, usize)>, next: &mut usize, a: usize, b: usize, k: usize) {
        let mut prev = a;
        for _ in 0..k {
            edges.push((prev, *next));
            prev = *next;
            *next += 1;
        }
        edges.push((prev, b));
    }

    #[test]
    fn initial_charge_values() {
        let g = graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2)]);
        let mu = initial_charges(&g);
        assert_eq!(mu[0], q(6, 1));
        assert_eq!(mu[1], q(-2, 1));
        assert_eq!(mu[3], q(-6, 1));
    }

    #[test]
    fn theta_graph_rules() {
        // Two 3-vertices joined by three 1-paths: both are small (1,1,1).
        let mut edges = Vec::new();
        let mut next = 2;
        for _ in 0..3 {
            thread(&mut edges, &mut next, 0, 1, 1);
        }
        let g = graph(next, &edges);
        let ledger = run_discharging(&g).unwrap();
        assert!(ledger.conserved());
        assert_eq!(ledger.final_charges[2], q(0, 1));
        assert_eq!(ledger.final_charges[0], q(-1, 1));
        let cert = certify_nonnegative(&g, &ledger);
        assert_eq!(cert.outside(), vec![(0, Lemma::L11), (1, Lemma::L11)]);
    }

    #[test]
    fn small_111_gets_thirds() {
        // Center 0 is small; far ends 1,2,3 are (1,0,0) with 4-neighbors
        // taken from a K3,3 core.
        let mut edges = Vec::new();
        let mut next = 4;
        for x in 1..=3 {
            thread(&mut edges, &mut next, 0, x, 1);
        }
        let core: Vec<usize> = (next..next + 6).collect();
        next += 6;
        for i in 0..3 {
            for j in 3..6 {
                edges.push((core[i], core[j]));
            }
        }
        for x in 1..=3 {
            edges.push((x, core[x - 1]));
            edges.push((x, core[x + 2]));
        }
        let g = graph(next, &edges);
        let ledger = run_discharging(&g).unwrap();
        assert_eq!(ledger.final_charges[0], q(0, 1));
        let thirds = ledger.transfers.iter().filter(|t| t.rule == Rule::R2i && t.to == 0).count();
        assert_eq!(thirds, 3);
        let cert = certify_nonnegative(&g, &ledger);
        assert_eq!(cert.vertices[0].bound, Some(q(0, 1)));
        assert_eq!(cert.vertices[1].case, "case 2: (1,0,0)");
        assert!(cert.vertices[1].mu_star >= q(2, 3));
    }

    #[test]
    fn zero_zero_zero_keeps_charge() {
        let k4: Vec<(usize, usize)> = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let g = graph(4, &k4);
        let ledger = run_discharging(&g).unwrap();
        assert!(ledger.transfers.is_empty());
        assert_eq!(ledger.final_charges, vec![q(2, 1); 4]);
        let cert = certify_nonnegative(&g, &ledger);
        assert!(cert.all_nonnegative());
        assert_eq!(cert.vertices[0].case, "case 2: (0,0,0)");
    }

    #[test]
    fn refusals() {
        let c5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert!(matches!(run_discharging(&c5), Err(DischargeError::CycleComponent(_))));
        let p = graph(2, &[(0, 1)]);
        assert!(matches!(run_discharging(&p), Err(DischargeError::MinDegree { .. })));
    }

    #[test]
    fn equation_one() {
        let c5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(check_equation_1(&c5), (q(-10, 1), true));
        let k5: Vec<(usize, usize)> = (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
        assert_eq!(check_equation_1(&graph(5, &k5)), (q(30, 1), true));
    }

    #[test]
    fn ledger_text() {
        let mut edges = Vec::new();
        let mut next = 2;
        for _ in 0..3 {
            thread(&mut edges, &mut next, 0, 1, 1);
        }
        let g = graph(next, &edges);
        let ledger = run_discharging(&g).unwrap();
        assert!(ledger.transfer_lines().starts_with("0 -> 2 : 1 : R0\n"));
    }
}
