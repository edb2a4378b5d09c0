use distcolor::coloring::{
    check_choosable, check_choosable_with_budget, list_color, ChoosabilityMode, ChoosabilityVerdict, SizeProfile,
};
use distcolor::gadgets::{build_gadget, cross_check_procedure, extend_procedure, GadgetId};
use distcolor::graph::{parse_edge_list, square};

#[test]
fn constraints_are_the_square() {
    for id in GadgetId::ALL {
        let g = build_gadget(id);
        assert_eq!(g.constraints, square(&g.graph), "({id})");
        assert_eq!(parse_edge_list(&g.dump()).unwrap(), g.graph, "({id})");
    }
}

#[test]
fn randomized_choosability_other_seeds() {
    for id in GadgetId::ALL {
        for seed in [11, 12] {
            let r = distcolor::gadgets::verify_gadget(id, ChoosabilityMode::Randomized { trials: 3000, seed }).unwrap();
            assert_eq!(r.verdict, ChoosabilityVerdict::NoFailureFound, "({id}) seed {seed}");
        }
    }
}

#[test]
fn gadget_a_needs_its_three_list() {
    let a = build_gadget(GadgetId::A);
    let r = check_choosable(&a.constraints, &SizeProfile::new(vec![2, 2, 2, 2]).unwrap(), ChoosabilityMode::Exhaustive)
        .unwrap();
    match r.verdict {
        ChoosabilityVerdict::Counterexample(l) => {
            assert!(list_color(&a.constraints, &l).is_none());
            assert!(extend_procedure(GadgetId::A, &l).is_err());
        }
        v => panic!("expected a counterexample, got {v:?}"),
    }
}

#[test]
fn cross_check_is_reproducible() {
    for id in [GadgetId::B, GadgetId::E, GadgetId::H] {
        assert_eq!(cross_check_procedure(id, 500, 3), cross_check_procedure(id, 500, 3));
    }
}

/// Full enumeration for the two 7-vertex gadgets; several minutes in release.
#[test]
#[ignore]
fn exhaustive_seven_vertex_gadgets() {
    for id in [GadgetId::E, GadgetId::B] {
        let g = build_gadget(id);
        let r = check_choosable_with_budget(&g.constraints, &g.profile, ChoosabilityMode::Exhaustive, 10_000_000_000)
            .unwrap();
        println!("({id}) checked {} -> {:?}", r.checked, r.verdict);
        assert_eq!(r.verdict, ChoosabilityVerdict::Choosable, "({id})");
    }
}
