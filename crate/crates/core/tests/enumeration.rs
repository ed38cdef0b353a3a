use bolkit::catalog::{enumerate, EnumerationOptions, ValueOrder};
use bolkit::loops::{are_isomorphic, canonical_form};
use bolkit::{fixtures, Identity, Loop};

fn tables(loops: &[Loop]) -> Vec<Vec<Vec<usize>>> {
    loops.iter().map(Loop::rows).collect()
}

fn run(opts: &EnumerationOptions) -> Vec<Loop> {
    let e = enumerate(opts).unwrap();
    assert!(e.complete);
    e.loops
}

#[test]
fn value_order_does_not_change_results() {
    for n in [6, 8] {
        let mut opts = EnumerationOptions::new(n);
        let up = run(&opts);
        opts.value_order = ValueOrder::Descending;
        assert_eq!(tables(&up), tables(&run(&opts)), "order {n}");
    }
}

#[test]
fn thread_count_does_not_change_results() {
    let mut opts = EnumerationOptions::new(8);
    opts.nonassociative_only = true;
    let pooled = run(&opts);
    opts.jobs = Some(1);
    assert_eq!(tables(&pooled), tables(&run(&opts)));
    opts.jobs = Some(3);
    assert_eq!(tables(&pooled), tables(&run(&opts)));
}

#[test]
fn results_are_canonical_distinct_right_bol_loops() {
    let loops = run(&EnumerationOptions::new(8));
    assert_eq!(loops.len(), 11);
    for (i, l) in loops.iter().enumerate() {
        assert!(l.satisfies(Identity::RightBol));
        assert_eq!(canonical_form(l).rows(), l.rows());
        for m in &loops[..i] {
            assert!(are_isomorphic(l, m).is_none());
        }
    }
}

#[test]
fn group_count_at_order_8() {
    let loops = run(&EnumerationOptions::new(8));
    let groups = loops.iter().filter(|l| l.satisfies(Identity::Associative)).count();
    assert_eq!(groups, 5);
    // every order-8 group fixture appears
    for g in fixtures::groups_up_to_8().into_iter().filter(|g| g.order() == 8) {
        assert!(loops.iter().any(|l| are_isomorphic(l, &g).is_some()));
    }
}

#[test]
fn central_squares_filter_is_a_subset() {
    let mut opts = EnumerationOptions::new(8);
    let all = run(&opts);
    opts.central_squares_only = true;
    let filtered = run(&opts);
    let expected: Vec<Loop> = all.iter().filter(|l| l.has_central_squares()).cloned().collect();
    assert_eq!(tables(&filtered), tables(&expected));
}

#[test]
fn shipped_order8_catalog_matches_a_fresh_search() {
    let mut opts = EnumerationOptions::new(8);
    opts.nonassociative_only = true;
    let fresh = run(&opts);
    let shipped = fixtures::right_bol_order8();
    assert_eq!(tables(&fresh), tables(&shipped));
    assert_eq!(
        fresh.iter().map(|l| l.name()).collect::<Vec<_>>(),
        shipped.iter().map(|l| l.name()).collect::<Vec<_>>()
    );
}
