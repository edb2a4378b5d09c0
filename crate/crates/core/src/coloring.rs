//! Exact proper coloring, 2-distance coloring, list coloring and
//! choosability checks. Everything else in the crate is validated against
//! these solvers.

use std::fmt;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{square, two_distance_neighbors, Graph, Vertex};

pub type Color = u32;

/// Default cap on the number of list assignments an exhaustive
/// choosability check may enumerate.
pub const DEFAULT_EXHAUSTIVE_BUDGET: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("coloring is partial; unassigned vertices: {0:?}")]
    Partial(Vec<Vertex>),
    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("vertex {0} has an empty list")]
    EmptyList(Vertex),
    #[error("vertex {0} has list size 0 in the profile")]
    ZeroSize(Vertex),
    #[error("exhaustive enumeration needs {bound} assignments, above the budget of {budget}; use randomized mode")]
    BudgetExceeded { bound: u128, budget: u128 },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Per-vertex optional color.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coloring(Vec<Option<Color>>);

impl Coloring {
    pub fn uncolored(n: usize) -> Coloring {
        Coloring(vec![None; n])
    }

    pub fn from_total(colors: Vec<Color>) -> Coloring {
        Coloring(colors.into_iter().map(Some).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: Vertex) -> Option<Color> {
        self.0[v]
    }

    pub fn set(&mut self, v: Vertex, c: Color) {
        self.0[v] = Some(c);
    }

    pub fn clear(&mut self, v: Vertex) {
        self.0[v] = None;
    }

    pub fn is_total(&self) -> bool {
        self.0.iter().all(Option::is_some)
    }

    pub fn unassigned(&self) -> Vec<Vertex> {
        (0..self.len()).filter(|&v| self.0[v].is_none()).collect()
    }

    pub fn as_slice(&self) -> &[Option<Color>] {
        &self.0
    }

    /// Number of distinct colors used.
    pub fn num_colors(&self) -> usize {
        let mut used: Vec<Color> = self.0.iter().flatten().copied().collect();
        used.sort_unstable();
        used.dedup();
        used.len()
    }

    /// Lines `v c` for every assigned vertex.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (v, c) in self.0.iter().enumerate() {
            if let Some(c) = c {
                out.push_str(&format!("{v} {c}\n"));
            }
        }
        out
    }
}

impl fmt::Debug for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Per-vertex color lists, each sorted and free of duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ListAssignment {
    lists: Vec<Vec<Color>>,
}

impl ListAssignment {
    pub fn new(lists: Vec<Vec<Color>>) -> Result<ListAssignment, ColoringError> {
        let mut lists = lists;
        for (v, l) in lists.iter_mut().enumerate() {
            l.sort_unstable();
            l.dedup();
            if l.is_empty() {
                return Err(ColoringError::EmptyList(v));
            }
        }
        Ok(ListAssignment { lists })
    }

    /// Every vertex gets the same list.
    pub fn uniform(n: usize, list: &[Color]) -> ListAssignment {
        ListAssignment::new(vec![list.to_vec(); n]).expect("uniform list must be nonempty")
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn list(&self, v: Vertex) -> &[Color] {
        &self.lists[v]
    }

    pub fn lists(&self) -> &[Vec<Color>] {
        &self.lists
    }

    /// Applies a color renaming to every list.
    pub fn renamed(&self, rename: impl Fn(Color) -> Color) -> ListAssignment {
        ListAssignment::new(
            self.lists.iter().map(|l| l.iter().map(|&c| rename(c)).collect()).collect(),
        )
        .expect("renaming keeps lists nonempty")
    }

    /// Lines `v: c1,c2,...`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (v, l) in self.lists.iter().enumerate() {
            let cs: Vec<String> = l.iter().map(Color::to_string).collect();
            out.push_str(&format!("{v}: {}\n", cs.join(",")));
        }
        out
    }

    /// Parses the `v: c1,c2,...` format for a graph on `n` vertices; every
    /// vertex must appear exactly once.
    pub fn parse(text: &str, n: usize) -> Result<ListAssignment, ColoringError> {
        let mut lists: Vec<Option<Vec<Color>>> = vec![None; n];
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let bad = |msg: String| ColoringError::Parse { line: line_no, msg };
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (v, rest) = line.split_once(':').ok_or_else(|| bad("expected \"v: colors\"".into()))?;
            let v: usize = v.trim().parse().map_err(|_| bad(format!("bad vertex {v:?}")))?;
            if v >= n {
                return Err(bad(format!("vertex {v} out of range for n = {n}")));
            }
            if lists[v].is_some() {
                return Err(bad(format!("vertex {v} listed twice")));
            }
            let colors = rest
                .split(',')
                .map(|c| c.trim().parse::<Color>().map_err(|_| bad(format!("bad color {c:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            lists[v] = Some(colors);
        }
        let lists = lists
            .into_iter()
            .enumerate()
            .map(|(v, l)| {
                l.ok_or(ColoringError::Parse { line: 0, msg: format!("vertex {v} has no list") })
            })
            .collect::<Result<Vec<_>, _>>()?;
        ListAssignment::new(lists)
    }
}

/// Minimum list length per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SizeProfile(Vec<usize>);

impl SizeProfile {
    pub fn new(sizes: Vec<usize>) -> Result<SizeProfile, ColoringError> {
        if let Some(v) = sizes.iter().position(|&s| s == 0) {
            return Err(ColoringError::ZeroSize(v));
        }
        Ok(SizeProfile(sizes))
    }

    pub fn sizes(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Radius {
    One,
    Two,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    /// Two distinct vertices within the radius sharing a color.
    Violation(Vertex, Vertex),
}

/// Checks a total coloring; the witness is the lexicographically smallest
/// conflicting pair.
pub fn verify_coloring(g: &Graph, c: &Coloring, radius: Radius) -> Result<Verdict, ColoringError> {
    if c.len() != g.n() {
        return Err(ColoringError::LengthMismatch { expected: g.n(), got: c.len() });
    }
    let missing = c.unassigned();
    if !missing.is_empty() {
        return Err(ColoringError::Partial(missing));
    }
    for u in g.vertices() {
        let near = match radius {
            Radius::One => g.neighbors(u).to_vec(),
            Radius::Two => two_distance_neighbors(g, u),
        };
        if let Some(&v) = near.iter().find(|&&v| v > u && c.get(v) == c.get(u)) {
            return Ok(Verdict::Violation(u, v));
        }
    }
    Ok(Verdict::Valid)
}

/// True when `c` is total, proper at `radius`, and respects `lists`.
pub fn is_valid_list_coloring(g: &Graph, c: &Coloring, lists: &ListAssignment, radius: Radius) -> bool {
    matches!(verify_coloring(g, c, radius), Ok(Verdict::Valid))
        && g.vertices().all(|v| lists.list(v).binary_search(&c.get(v).unwrap()).is_ok())
}

/// Greedy 2-distance coloring in vertex order, smallest free color first.
pub fn greedy_two_distance(g: &Graph) -> Coloring {
    let mut c = Coloring::uncolored(g.n());
    for v in g.vertices() {
        let taken: Vec<Color> =
            two_distance_neighbors(g, v).into_iter().filter_map(|w| c.get(w)).collect();
        let color = (0..).find(|k| !taken.contains(k)).unwrap();
        c.set(v, color);
    }
    c
}

/// Decides whether `g` has a proper coloring with at most `budget` colors,
/// by saturation-degree branch and bound. Returns a witness or `None`.
pub fn chromatic_exact(g: &Graph, budget: usize) -> Option<Coloring> {
    assert!(budget >= 1, "budget must be at least 1");
    let mut search = Dsatur::new(g, budget);
    if search.run() {
        Some(Coloring::from_total(search.color.iter().map(|c| c.unwrap() as Color).collect()))
    } else {
        None
    }
}

struct Dsatur<'a> {
    g: &'a Graph,
    budget: usize,
    color: Vec<Option<usize>>,
    /// neighbor_count[v][c]: neighbors of v currently colored c
    neighbor_count: Vec<Vec<u32>>,
    saturation: Vec<usize>,
    used: usize,
}

impl<'a> Dsatur<'a> {
    fn new(g: &'a Graph, budget: usize) -> Self {
        Dsatur {
            g,
            budget,
            color: vec![None; g.n()],
            neighbor_count: vec![vec![0; budget]; g.n()],
            saturation: vec![0; g.n()],
            used: 0,
        }
    }

    fn pick(&self) -> Option<Vertex> {
        self.g
            .vertices()
            .filter(|&v| self.color[v].is_none())
            .max_by(|&a, &b| {
                (self.saturation[a], self.g.degree(a), std::cmp::Reverse(a))
                    .cmp(&(self.saturation[b], self.g.degree(b), std::cmp::Reverse(b)))
            })
    }

    fn assign(&mut self, v: Vertex, c: usize) {
        self.color[v] = Some(c);
        for &w in self.g.neighbors(v) {
            self.neighbor_count[w][c] += 1;
            if self.neighbor_count[w][c] == 1 {
                self.saturation[w] += 1;
            }
        }
    }

    fn unassign(&mut self, v: Vertex, c: usize) {
        self.color[v] = None;
        for &w in self.g.neighbors(v) {
            self.neighbor_count[w][c] -= 1;
            if self.neighbor_count[w][c] == 0 {
                self.saturation[w] -= 1;
            }
        }
    }

    fn run(&mut self) -> bool {
        let Some(v) = self.pick() else { return true };
        if self.saturation[v] >= self.budget {
            return false;
        }
        // A fresh color is interchangeable with any other unused one.
        let limit = (self.used + 1).min(self.budget);
        for c in 0..limit {
            if self.neighbor_count[v][c] > 0 {
                continue;
            }
            let prev_used = self.used;
            self.used = self.used.max(c + 1);
            self.assign(v, c);
            if self.run() {
                return true;
            }
            self.unassign(v, c);
            self.used = prev_used;
        }
        false
    }
}

/// Size of a maximum clique (Bron–Kerbosch with pivoting).
pub fn clique_number(g: &Graph) -> usize {
    fn expand(g: &Graph, size: usize, p: Vec<Vertex>, x: Vec<Vertex>, best: &mut usize) {
        if p.is_empty() {
            if x.is_empty() {
                *best = (*best).max(size);
            }
            return;
        }
        if size + p.len() <= *best {
            return;
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .copied()
            .max_by_key(|&u| p.iter().filter(|&&w| g.has_edge(u, w)).count())
            .unwrap();
        let candidates: Vec<Vertex> = p.iter().copied().filter(|&w| !g.has_edge(pivot, w)).collect();
        let (mut p, mut x) = (p, x);
        for v in candidates {
            let np = p.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
            let nx = x.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
            expand(g, size + 1, np, nx, best);
            p.retain(|&w| w != v);
            x.push(v);
        }
    }
    let mut best = 0;
    expand(g, 0, g.vertices().collect(), Vec::new(), &mut best);
    best
}

/// Chromatic number of `g` with an optimal coloring.
pub fn chromatic_number(g: &Graph) -> (usize, Coloring) {
    if g.n() == 0 {
        return (0, Coloring::uncolored(0));
    }
    if g.m() == g.n() * (g.n() - 1) / 2 {
        return (g.n(), Coloring::from_total((0..g.n() as Color).collect()));
    }
    let lower = clique_number(g).max(1);
    for k in lower..g.n() {
        if let Some(c) = chromatic_exact(g, k) {
            return (k, c);
        }
    }
    (g.n(), Coloring::from_total((0..g.n() as Color).collect()))
}

/// 2-distance chromatic number: the chromatic number of the square.
pub fn two_distance_chromatic(g: &Graph) -> (usize, Coloring) {
    chromatic_number(&square(g))
}

/// Finds a proper coloring of `constraints` choosing each vertex's color from
/// its list, or `None` if none exists. Exhaustive backtracking over the
/// smallest remaining domain, with forward pruning of neighbor domains.
pub fn list_color(constraints: &Graph, lists: &ListAssignment) -> Option<Coloring> {
    assert_eq!(constraints.n(), lists.len(), "graph and lists must share the vertex set");
    let mut search = ListSearch {
        g: constraints,
        domains: lists.lists().to_vec(),
        assigned: vec![None; constraints.n()],
        trail: Vec::new(),
    };
    if search.solve() {
        Some(Coloring(search.assigned))
    } else {
        None
    }
}

struct ListSearch<'a> {
    g: &'a Graph,
    domains: Vec<Vec<Color>>,
    assigned: Vec<Option<Color>>,
    trail: Vec<(Vertex, Color)>,
}

impl ListSearch<'_> {
    fn solve(&mut self) -> bool {
        let next = (0..self.g.n())
            .filter(|&v| self.assigned[v].is_none())
            .min_by_key(|&v| (self.domains[v].len(), v));
        let Some(v) = next else { return true };
        let choices = self.domains[v].clone();
        for c in choices {
            self.assigned[v] = Some(c);
            let mark = self.trail.len();
            let mut wiped = false;
            for &w in self.g.neighbors(v) {
                if self.assigned[w].is_some() {
                    continue;
                }
                if let Ok(pos) = self.domains[w].binary_search(&c) {
                    self.domains[w].remove(pos);
                    self.trail.push((w, c));
                    if self.domains[w].is_empty() {
                        wiped = true;
                        break;
                    }
                }
            }
            if !wiped && self.solve() {
                return true;
            }
            while self.trail.len() > mark {
                let (w, c) = self.trail.pop().unwrap();
                let pos = self.domains[w].binary_search(&c).unwrap_err();
                self.domains[w].insert(pos, c);
            }
            self.assigned[v] = None;
        }
        false
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChoosabilityMode {
    Exhaustive,
    Randomized { trials: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChoosabilityVerdict {
    /// Every assignment meeting the profile is colorable (exhaustive mode).
    Choosable,
    /// Sampling found no failing assignment (randomized mode).
    NoFailureFound,
    /// An assignment with no valid coloring, already re-checked.
    Counterexample(ListAssignment),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChoosabilityReport {
    pub verdict: ChoosabilityVerdict,
    pub mode: ChoosabilityMode,
    /// Assignments enumerated or sampled before stopping.
    pub checked: u64,
    /// Exhaustive mode: size of the canonical enumeration.
    pub enumeration_bound: Option<u128>,
}

impl ChoosabilityReport {
    pub fn is_failure(&self) -> bool {
        matches!(self.verdict, ChoosabilityVerdict::Counterexample(_))
    }
}

/// Number of assignments the canonical exhaustive enumeration visits.
///
/// Colors are introduced in first-use order: a list picks some of the colors
/// already used by earlier vertices plus a block of fresh colors, which are
/// always the next unused names. The universe therefore never exceeds the sum
/// of the profile sizes.
pub fn enumeration_bound(profile: &SizeProfile) -> u128 {
    let sizes = profile.sizes();
    let total: usize = sizes.iter().sum();
    // ways[used] for the suffix starting at vertex i
    let mut ways = vec![1u128; total + 1];
    for &s in sizes.iter().rev() {
        let mut next = vec![0u128; total + 1];
        for used in 0..=total {
            let mut acc: u128 = 0;
            for fresh in 0..=s {
                if used + fresh > total || s - fresh > used {
                    continue;
                }
                let term = binomial(used, s - fresh).saturating_mul(ways[used + fresh]);
                acc = acc.saturating_add(term);
            }
            next[used] = acc;
        }
        ways = next;
    }
    ways[0]
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// Checks whether every list assignment with `|L(v)| = profile(v)` admits a
/// proper coloring of `constraints`.
pub fn check_choosable(
    constraints: &Graph,
    profile: &SizeProfile,
    mode: ChoosabilityMode,
) -> Result<ChoosabilityReport, ColoringError> {
    check_choosable_with_budget(constraints, profile, mode, DEFAULT_EXHAUSTIVE_BUDGET)
}

pub fn check_choosable_with_budget(
    constraints: &Graph,
    profile: &SizeProfile,
    mode: ChoosabilityMode,
    budget: u128,
) -> Result<ChoosabilityReport, ColoringError> {
    if profile.len() != constraints.n() {
        return Err(ColoringError::LengthMismatch { expected: constraints.n(), got: profile.len() });
    }
    match mode {
        ChoosabilityMode::Exhaustive => {
            let bound = enumeration_bound(profile);
            if bound > budget {
                return Err(ColoringError::BudgetExceeded { bound, budget });
            }
            let mut walk = Enumeration {
                g: constraints,
                sizes: profile.sizes(),
                lists: Vec::with_capacity(profile.len()),
                checked: 0,
            };
            let failure = walk.run(0);
            let verdict = match failure {
                Some(l) => ChoosabilityVerdict::Counterexample(confirm_counterexample(constraints, l)),
                None => ChoosabilityVerdict::Choosable,
            };
            Ok(ChoosabilityReport { verdict, mode, checked: walk.checked, enumeration_bound: Some(bound) })
        }
        ChoosabilityMode::Randomized { trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut checked = 0;
            for _ in 0..trials {
                let lists = random_lists(profile, &mut rng);
                checked += 1;
                if list_color(constraints, &lists).is_none() {
                    let verdict = ChoosabilityVerdict::Counterexample(confirm_counterexample(constraints, lists));
                    return Ok(ChoosabilityReport { verdict, mode, checked, enumeration_bound: None });
                }
            }
            Ok(ChoosabilityReport {
                verdict: ChoosabilityVerdict::NoFailureFound,
                mode,
                checked,
                enumeration_bound: None,
            })
        }
    }
}

fn confirm_counterexample(g: &Graph, lists: ListAssignment) -> ListAssignment {
    assert!(list_color(g, &lists).is_none(), "counterexample failed re-verification");
    lists
}

/// Random assignment meeting `profile` exactly. The universe size is drawn
/// between the largest list size and the sum of sizes, so both heavily
/// overlapping and nearly disjoint lists occur.
pub fn random_lists<R: Rng>(profile: &SizeProfile, rng: &mut R) -> ListAssignment {
    let sizes = profile.sizes();
    let lo = sizes.iter().copied().max().unwrap_or(1);
    let hi = sizes.iter().sum::<usize>().max(lo);
    let universe = rng.gen_range(lo..=hi);
    let lists = sizes
        .iter()
        .map(|&s| sample(rng, universe, s).into_iter().map(|c| c as Color).collect())
        .collect();
    ListAssignment::new(lists).expect("profile sizes are positive")
}

struct Enumeration<'a> {
    g: &'a Graph,
    sizes: &'a [usize],
    lists: Vec<Vec<Color>>,
    checked: u64,
}

impl Enumeration<'_> {
    /// Depth-first over vertices; returns the first failing assignment in
    /// canonical order.
    fn run(&mut self, used: usize) -> Option<ListAssignment> {
        let v = self.lists.len();
        if v == self.sizes.len() {
            self.checked += 1;
            let lists = ListAssignment::new(self.lists.clone()).unwrap();
            return if list_color(self.g, &lists).is_none() { Some(lists) } else { None };
        }
        let s = self.sizes[v];
        for fresh in 0..=s {
            let old = s - fresh;
            if old > used {
                continue;
            }
            let mut combo: Vec<usize> = (0..old).collect();
            loop {
                let mut list: Vec<Color> = combo.iter().map(|&c| c as Color).collect();
                list.extend((used..used + fresh).map(|c| c as Color));
                self.lists.push(list);
                let found = self.run(used + fresh);
                self.lists.pop();
                if found.is_some() {
                    return found;
                }
                if !next_combination(&mut combo, used) {
                    break;
                }
            }
        }
        None
    }
}

/// Advances `combo` (strictly increasing, values < n) to the next
/// k-combination in lexicographic order.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    for i in (0..k).rev() {
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
