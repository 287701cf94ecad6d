use super::*;
use crate::catalog::{builtin, g1_family_forms, g4_family_forms, sigma1_g4, sigma2_g4_variant, sigma3};
use crate::chartab::character_table;
use crate::exact::matrix::same_span;
use crate::groups::{close_group, conjugacy_classes, scalar_subgroup, DEFAULT_CAP};
use crate::lefschetz::lefschetz_check;

fn q(v: i64) -> Cyclotomic {
    Cyclotomic::from_int(8, v)
}

fn family_of(gens: &[CycMatrix]) -> (MatrixGroup, QuadricFamily) {
    let g = close_group(gens, DEFAULT_CAP).unwrap();
    let cd = conjugacy_classes(g.group());
    let t = character_table(g.group(), &cd).unwrap();
    let ext = scalar_subgroup(&g, &cd).unwrap();
    let v = lefschetz_check(&ext, &cd, &t).unwrap();
    assert!(v.pass);
    let fam = equivariant_quadric_family(&g, &cd, &t, v.v_multiplicities().unwrap()).unwrap();
    (g, fam)
}

fn preserved(g: &MatrixGroup, forms: &[QuadraticForm]) -> bool {
    let span: Vec<Vec<Cyclotomic>> = forms.iter().map(|f| f.coeffs()).collect();
    g.generator_indices().iter().all(|&k| {
        let img: Vec<Vec<Cyclotomic>> = span.iter().map(|c| sym2_apply(g.element(k), c)).collect();
        same_span(&span, &img, 8)
    })
}

#[test]
fn monomial_indexing_is_lexicographic() {
    let m = monomials(8);
    assert_eq!(m.len(), 36);
    for (k, &(i, j)) in m.iter().enumerate() {
        assert_eq!(monomial_index(8, i, j), k);
        assert_eq!(monomial_index(8, j, i), k);
    }
}

#[test]
fn coeff_round_trip_and_transform() {
    let f = QuadraticForm::from_terms(8, 4, &[(q(3), 1, 1), (Cyclotomic::root_of_unity(4, 1), 2, 7)]);
    assert_eq!(QuadraticForm::from_coeffs(8, &f.coeffs()), f);
    let m = sigma3();
    assert_eq!(f.transform(&m).coeffs(), sym2_apply(&m, &f.coeffs()));
    assert_eq!(f.to_polynomial_string(), "(3)*x1^2 + (z^2)*x2*x7");
}

#[test]
fn sym2_trace_matches_character_formula() {
    let g = close_group(&builtin("G4").unwrap().generators, DEFAULT_CAP).unwrap();
    let cd = conjugacy_classes(g.group());
    let direct = sym2_trace_vector(&g, &cd);
    let formula = crate::lefschetz::sym2_character(&defining_character(&g, &cd), &cd);
    assert_eq!(direct, formula);
}

#[test]
fn g4_family_contains_displayed_member() {
    let (g, fam) = family_of(&builtin("G4").unwrap().generators);
    assert_eq!(fam.shape_string(), "P^1 x P^1");
    let forms = g4_family_forms(&q(2), &q(3), &q(5), &q(7));
    assert!(preserved(&g, &forms));
    let params = displayed_parameters(&fam, &forms).expect("member lies in the family");
    let member = fam.specialize(&params).unwrap();
    let want: Vec<Vec<Cyclotomic>> = forms.iter().map(|f| f.coeffs()).collect();
    assert!(same_span(&member.coeffs, &want, 8));
}

#[test]
fn sigma2_variant_breaks_invariance() {
    let g = close_group(&[sigma1_g4(), sigma2_g4_variant(), sigma3()], DEFAULT_CAP).unwrap();
    assert_eq!(g.order(), 256);
    let forms = g4_family_forms(&q(2), &q(3), &q(5), &q(7));
    assert!(!preserved(&g, &forms));
    let (_, fam) = family_of(&[sigma1_g4(), sigma2_g4_variant(), sigma3()]);
    assert_eq!(fam.shape_string(), "P^1 x P^1");
    assert!(displayed_parameters(&fam, &forms).is_none());
}

#[test]
fn g5_groups_share_the_g4_family() {
    let forms = g4_family_forms(&q(2), &q(3), &q(5), &q(7));
    for name in ["G5", "G5prime"] {
        let (g, fam) = family_of(&builtin(name).unwrap().generators);
        assert!(preserved(&g, &forms), "{name}");
        assert!(displayed_parameters(&fam, &forms).is_some(), "{name}");
    }
}

#[test]
fn g1_family_uses_corrected_cross_term() {
    let g = close_group(&builtin("G1").unwrap().generators, DEFAULT_CAP).unwrap();
    assert!(preserved(&g, &g1_family_forms(&q(2), &q(3), &q(5), false)));
    assert!(!preserved(&g, &g1_family_forms(&q(2), &q(3), &q(5), true)));
}
