use super::*;
use crate::catalog::{builtin, NAMES};

fn closed(name: &str) -> MatrixGroup {
    close_group(&builtin(name).unwrap().generators, DEFAULT_CAP).unwrap()
}

#[test]
fn catalog_facts_match_expectations() {
    for name in NAMES {
        let e = builtin(name).unwrap().expected;
        let g = closed(name);
        let cd = conjugacy_classes(g.group());
        let ext = scalar_subgroup(&g, &cd).unwrap();
        assert_eq!(g.order(), e.order, "{name}");
        assert_eq!(Some(cd.len()), e.class_count, "{name}");
        assert_eq!(Some(ext.scalar_order), e.scalar_order, "{name}");
        assert_eq!(ext.projective_order, e.projective_order, "{name}");
        assert_eq!(cd.class_sizes.iter().sum::<usize>(), g.order());
    }
}

#[test]
fn h8_classes_and_orders() {
    let g = closed("H8_regular");
    let cd = conjugacy_classes(g.group());
    assert_eq!(cd.class_sizes, vec![1, 1, 2, 2, 2]);
    assert_eq!(cd.exponent, 4);
    let orders: Vec<usize> = cd.representatives.iter().map(|&r| g.group().element_order(r)).collect();
    assert_eq!(orders, vec![1, 2, 4, 4, 4]);
    assert_eq!(g.group().center().len(), 2);
    assert!(!g.group().is_abelian());
}

#[test]
fn power_maps_are_consistent() {
    let g = closed("G4");
    let fg = g.group();
    let cd = conjugacy_classes(fg);
    for c in 0..cd.len() {
        let r = cd.representatives[c];
        for k in [2i64, 3, -1] {
            let x = if k < 0 { fg.inv(r) } else { fg.pow(r, k as u64) };
            assert_eq!(cd.power(c, k), cd.class_of[x]);
        }
    }
    assert!((0..cd.len()).all(|c| cd.inverse_class(cd.inverse_class(c)) == c));
}

#[test]
fn g4_scalar_subgroup_is_i() {
    let g = closed("G4");
    let cd = conjugacy_classes(g.group());
    let ext = scalar_subgroup(&g, &cd).unwrap();
    assert_eq!(ext.scalar, crate::exact::Cyclotomic::root_of_unity(4, 1).lift(8).unwrap());
    let q = quotient_by_central(g.group(), &ext.scalar_elements).unwrap();
    assert_eq!(q.order(), 64);
    assert_eq!(conjugacy_classes(&q).len(), 28);
}

#[test]
fn cap_is_enforced() {
    let gens = builtin("G1").unwrap().generators;
    assert!(matches!(close_group(&gens, 100), Err(GroupError::CapExceeded(100))));
}
