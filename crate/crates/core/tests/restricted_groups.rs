use bolkit::nets::{gamma_group, reflection_line_action};
use bolkit::perm::Permutation;
use bolkit::quandle::{core, rstr_order, rstr_presentation};
use bolkit::{fixtures, Error, Identity, Loop};

const BUDGET: usize = 20_000;

fn bol_loops_with_inverses() -> Vec<Loop> {
    fixtures::corpus()
        .into_iter()
        .filter(|l| l.satisfies(Identity::RightBol) && l.inverses().is_ok())
        .collect()
}

#[test]
fn reflections_satisfy_the_core_presentation() {
    for l in bol_loops_with_inverses() {
        let p = rstr_presentation(&core(&l).unwrap()).unwrap();
        let sigmas: Vec<Permutation> = l.elements().map(|d| reflection_line_action(&l, d).unwrap()).collect();
        assert!(p.is_satisfied_by(&sigmas), "{:?}", l.name());
    }
}

#[test]
fn reflection_group_order_divides_restricted_group_order() {
    let mut checked = 0;
    for l in bol_loops_with_inverses() {
        let order = match rstr_order(&core(&l).unwrap(), BUDGET) {
            Ok(o) => o,
            Err(Error::CosetBudgetExceeded { .. }) => continue,
            Err(e) => panic!("{e}"),
        };
        let gamma = gamma_group(&l).unwrap().order().unwrap();
        assert_eq!(order % gamma, 0, "{:?}: {order} vs {gamma}", l.name());
        checked += 1;
    }
    assert!(checked >= 8);
}
