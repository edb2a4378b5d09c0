mod common;

use distcolor::coloring::{is_valid_list_coloring, ListAssignment, Radius};
use distcolor::generators::{petersen, random_sparse};
use distcolor::reducibility::{
    color_constructive, color_constructive_with, find_lemma, ConstructiveError, ConstructiveOptions, Lemma,
};

fn run_corpus(count: u64, girth: usize, opts: ConstructiveOptions) -> Vec<Lemma> {
    let mut used = Vec::new();
    for (s, g) in common::corpus(count, girth) {
        for lists in [ListAssignment::uniform(g.n(), &[0, 1, 2, 3, 4, 5]), common::random_six_lists(g.n(), s)] {
            let run = color_constructive_with(&g, &lists, opts).unwrap_or_else(|e| panic!("seed {s}: {e}"));
            assert!(is_valid_list_coloring(&g, &run.coloring, &lists, Radius::Two), "seed {s}");
            used.extend(run.trace.iter().filter_map(|t| t.lemma));
        }
    }
    used
}

#[test]
fn reverse_order_reaches_every_configuration() {
    let opts = ConstructiveOptions { reverse_order: true, ..Default::default() };
    let used = run_corpus(150, 10, opts);
    for l in Lemma::ALL {
        assert!(used.contains(&l), "{l} never reduced");
    }
}

#[test]
fn girth_nine_variant() {
    let opts = ConstructiveOptions { girth_nine_ok: true, ..Default::default() };
    run_corpus(60, 9, opts);
    run_corpus(60, 9, ConstructiveOptions { reverse_order: true, ..opts });
}

/// Keeping the huge v3 and uncoloring it always works. Deleting it instead
/// loses the distance-2 constraint between its other two neighbors; those
/// runs must end in a detected `Invalid`, never in a wrong coloring.
#[test]
fn huge_v3_split_versus_uniform_removal() {
    let split = ConstructiveOptions { reverse_order: true, ..Default::default() };
    let uniform = ConstructiveOptions { uniform_huge_removal: true, ..split };
    let (mut exercised, mut disagreements) = (0, Vec::new());
    for (s, g) in common::corpus(800, 10) {
        // In reverse order the top-level match is this one.
        if !find_lemma(&g, Lemma::L14).is_some_and(|m| !m.uncolor.is_empty()) {
            continue;
        }
        exercised += 1;
        for seed in 0..5 {
            let lists = common::random_six_lists(g.n(), s * 10 + seed);
            let run = color_constructive_with(&g, &lists, split).unwrap_or_else(|e| panic!("seed {s}: {e}"));
            assert_eq!(run.trace[0].lemma, Some(Lemma::L14));
            assert!(is_valid_list_coloring(&g, &run.coloring, &lists, Radius::Two));
            match color_constructive_with(&g, &lists, uniform) {
                Ok(run) => assert!(is_valid_list_coloring(&g, &run.coloring, &lists, Radius::Two)),
                Err(ConstructiveError::Invalid(_)) => disagreements.push((s, seed)),
                Err(e) => panic!("seed {s}: unexpected {e}"),
            }
        }
    }
    println!("uniform removal disagrees on (graph seed, list seed) {disagreements:?}");
    assert!(exercised > 0);
    assert!(!disagreements.is_empty());
}

#[test]
fn deterministic_runs() {
    let g = random_sparse(120, 10, 5).unwrap();
    let lists = common::random_six_lists(g.n(), 5);
    let a = color_constructive(&g, &lists).unwrap();
    let b = color_constructive(&g, &lists).unwrap();
    assert_eq!(a.coloring, b.coloring);
    assert_eq!(a.trace, b.trace);
}

#[test]
fn hypotheses_are_checked() {
    let p = petersen();
    let six = ListAssignment::uniform(p.n(), &[0, 1, 2, 3, 4, 5]);
    assert!(matches!(color_constructive(&p, &six), Err(ConstructiveError::Precondition(_))));
    let g = random_sparse(60, 10, 2).unwrap();
    let five = ListAssignment::uniform(g.n(), &[0, 1, 2, 3, 4]);
    assert!(matches!(color_constructive(&g, &five), Err(ConstructiveError::Precondition(_))));
    let short = ListAssignment::uniform(g.n() - 1, &[0, 1, 2, 3, 4, 5]);
    assert!(matches!(color_constructive(&g, &short), Err(ConstructiveError::Precondition(_))));
}
