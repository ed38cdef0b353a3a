use bolkit::extension::{extend, extension_is_right_bol_predicted};
use bolkit::{fixtures, Identity, Loop};

fn squares_in_full_nucleus(l: &Loop) -> bool {
    let nuc = l.full_nucleus();
    l.elements().all(|x| nuc.contains(&l.mul(x, x)))
}

#[test]
fn bol_extension_forces_squares_into_every_nucleus() {
    let mut seen = 0;
    for l in fixtures::corpus() {
        let Ok(ext) = extend(&l) else { continue };
        if ext.carrier().satisfies(Identity::RightBol) {
            assert!(squares_in_full_nucleus(&l), "{:?}", l.name());
            assert!(l.has_central_squares());
            seen += 1;
        }
    }
    assert!(seen >= 10);
}

#[test]
fn extension_of_s3_is_not_bol_and_squares_leave_the_center() {
    let s3 = fixtures::symmetric3();
    assert!(squares_in_full_nucleus(&s3));
    assert!(!s3.has_central_squares());
    assert!(!extension_is_right_bol_predicted(&s3));
    assert!(!extend(&s3).unwrap().carrier().satisfies(Identity::RightBol));
}

#[test]
fn extension_doubles_the_order_and_keeps_the_unit() {
    for l in fixtures::corpus() {
        let Ok(ext) = extend(&l) else { continue };
        assert_eq!(ext.carrier().order(), 2 * l.order());
        assert_eq!(ext.carrier().unit(), ext.t(l.unit()));
    }
}
