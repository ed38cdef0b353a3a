use bolkit::fixtures;
use bolkit::nets::{
    bol_reflection, envelope, gamma_group, is_bol_folder, is_collineation, lambda, line_action, loop_of_folder,
    reflection_image, reflection_line_action, sigma_set, FolderCheck, NetPoint, DEFAULT_FOLDER_BUDGET,
};
use bolkit::perm::Permutation;
use bolkit::{Identity, Loop};

fn bol_loops() -> Vec<Loop> {
    fixtures::corpus()
        .into_iter()
        .filter(|l| l.satisfies(Identity::RightBol))
        .collect()
}

fn sigma(l: &Loop, d: usize) -> Permutation {
    reflection_line_action(l, d).unwrap()
}

#[test]
fn reflection_at_unit_in_groups_swaps_first_and_third_coordinates() {
    for g in fixtures::groups_up_to_8() {
        let n = g.order();
        let s = bol_reflection(&g, g.unit()).unwrap();
        for x in 0..n {
            for y in 0..n {
                let p = NetPoint { x, y };
                let img = NetPoint::from_index(s.apply(p.index(n)), n);
                let expected = NetPoint {
                    x: g.mul(x, y),
                    y: g.inverse(y).unwrap(),
                };
                assert_eq!(img, expected);
                assert_eq!(reflection_image(&g, g.unit(), p), expected);
                // third coordinate of the image is x
                assert_eq!(g.mul(img.x, img.y), x);
            }
        }
    }
}

#[test]
fn conjugate_reflections_on_points_and_lines() {
    for l in bol_loops() {
        let inv = l.inverses().unwrap();
        for a in l.elements() {
            let sa = bol_reflection(&l, a).unwrap();
            for b in l.elements() {
                let sb = bol_reflection(&l, b).unwrap();
                let c = l.mul(l.mul(a, inv[b]), a);
                assert_eq!(sa.then(&sb).then(&sa), bol_reflection(&l, c).unwrap(), "{:?}", l.name());
                assert_eq!(sigma(&l, a).then(&sigma(&l, b)).then(&sigma(&l, a)), sigma(&l, c));
            }
        }
    }
}

#[test]
fn reflection_times_unit_reflection() {
    for l in bol_loops() {
        let s1 = sigma(&l, l.unit());
        for d in l.elements() {
            let d_inv = l.inverse(d).unwrap();
            assert_eq!(sigma(&l, d).then(&s1), s1.then(&sigma(&l, d_inv)));
        }
    }
}

#[test]
fn products_with_unit_reflection_preserve_pencils() {
    for l in fixtures::right_bol_order8() {
        let n = l.order();
        let s1 = sigma(&l, l.unit());
        for d in l.elements() {
            let p = s1.then(&sigma(&l, d));
            assert!((0..n).all(|t| p.apply(t) < n));
            assert!((n..2 * n).all(|v| p.apply(v) >= n));
        }
    }
}

#[test]
fn reflection_swaps_vertical_and_transversal_lines() {
    // σ_b sends v_a to t_{ab}
    for l in fixtures::right_bol_order8() {
        let n = l.order();
        for b in l.elements() {
            let s = sigma(&l, b);
            for a in l.elements() {
                assert_eq!(s.apply(n + a), l.mul(a, b));
            }
        }
    }
}

#[test]
fn sigma_has_no_duplicates() {
    for l in fixtures::right_bol_order8() {
        let s = sigma_set(&l).unwrap();
        let distinct: std::collections::BTreeSet<_> = s.iter().collect();
        assert_eq!(distinct.len(), 2 * l.order());
    }
}

#[test]
fn twisted_products_stay_in_sigma() {
    for l in fixtures::right_bol_order8() {
        let s1 = sigma(&l, l.unit());
        let inv = l.inverses().unwrap();
        for a in l.elements() {
            for b in l.elements() {
                let sa = sigma(&l, a);
                let sb = sigma(&l, b);
                let lhs = s1.then(&sa).then(&s1).then(&sb).then(&s1).then(&sa);
                let aba = l.mul(l.mul(a, b), a);
                assert_eq!(lhs, s1.then(&sigma(&l, aba)));
                let lhs = s1.then(&sa).then(&sb).then(&s1).then(&sa);
                assert_eq!(lhs, sigma(&l, l.mul(l.mul(inv[a], b), a)));
            }
        }
    }
}

#[test]
fn twisted_product_leaves_sigma_without_central_squares() {
    let s3 = fixtures::symmetric3();
    assert!(!s3.has_central_squares());
    let set = sigma_set(&s3).unwrap();
    let s1 = sigma(&s3, s3.unit());
    let escapes = s3.elements().any(|a| {
        s3.elements().any(|b| {
            let sa = sigma(&s3, a);
            let p = s1.then(&sa).then(&sigma(&s3, b)).then(&s1).then(&sa);
            !set.contains(&p)
        })
    });
    assert!(escapes);
}

#[test]
fn bol_autotopisms() {
    for l in bol_loops() {
        for d in l.elements() {
            assert!(l.is_autotopism(&l.bol_autotopism(d).unwrap()));
        }
    }
    let non_bol = fixtures::order5_non_bol_with_inverses();
    assert!(non_bol
        .elements()
        .any(|d| !non_bol.is_autotopism(&non_bol.bol_autotopism(d).unwrap())));
}

#[test]
fn line_action_is_a_homomorphism() {
    for l in fixtures::right_bol_order8() {
        let points: Vec<Permutation> = l.elements().map(|d| bol_reflection(&l, d).unwrap()).collect();
        for f in &points {
            assert!(is_collineation(&l, f));
            for g in &points {
                let composed = line_action(&l, &f.then(g)).unwrap();
                assert_eq!(composed, line_action(&l, f).unwrap().then(&line_action(&l, g).unwrap()));
            }
        }
    }
}

#[test]
fn lambda_rebuilds_every_extension() {
    for l in bol_loops().into_iter().filter(Loop::has_central_squares) {
        let g = gamma_group(&l).unwrap();
        let s = sigma_set(&l).unwrap();
        let ext = bolkit::extension::extend(&l).unwrap();
        assert_eq!(lambda(&g, &s, l.unit()).unwrap(), *ext.carrier());
    }
}

#[test]
fn lambda_rejects_non_sharply_transitive_sets() {
    let l = fixtures::quaternion();
    let g = gamma_group(&l).unwrap();
    let mut s = sigma_set(&l).unwrap();
    s.pop();
    assert!(lambda(&g, &s, l.unit()).is_err());
}

#[test]
fn envelopes_are_bol_folders_and_round_trip() {
    for l in bol_loops() {
        let env = envelope(&l).unwrap();
        assert_eq!(env.verify(DEFAULT_FOLDER_BUDGET).unwrap(), FolderCheck::Complete);
        assert!(is_bol_folder(&env), "{:?}", l.name());
        assert_eq!(loop_of_folder(&env).unwrap(), l);
    }
}

#[test]
fn dropping_an_inverse_breaks_the_bol_folder() {
    let l = fixtures::right_bol_order8()[0].clone();
    let mut env = envelope(&l).unwrap();
    // swap R_a for R_a², so the section no longer closes under inverses
    let a = l
        .elements()
        .find(|&a| l.mul(a, a) != l.unit())
        .expect("an element of order 4");
    env.section[a] = env.section[a].then(&env.section[a]);
    assert!(!is_bol_folder(&env));
}
