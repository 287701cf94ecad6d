use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::catalog::{builtin, g4_family_forms, g4_pencil, g5_pencil};
use crate::chartab::character_table;
use crate::exact::{Cyclotomic, Embedding, FieldElem};
use crate::groups::{close_group, conjugacy_classes, scalar_subgroup, MatrixGroup, DEFAULT_CAP};
use crate::lefschetz::lefschetz_check;
use crate::quadrics::{equivariant_quadric_family, QuadraticForm, QuadricFamily};

const P: u64 = 65537;

const PARAMS: [[u64; 4]; 5] =
    [[12345, 678, 9012, 3456], [2, 3, 5, 7], [40000, 123, 777, 31337], [1, 2, 3, 4], [65000, 17, 4242, 999]];

fn cyc(v: u64) -> Cyclotomic {
    Cyclotomic::from_int(8, v as i64)
}

fn g4_member(t: [u64; 4]) -> Vec<Vec<Cyclotomic>> {
    g4_family_forms(&cyc(t[0]), &cyc(t[1]), &cyc(t[2]), &cyc(t[3])).iter().map(QuadraticForm::coeffs).collect()
}

fn g4_forms_mod_p(t: [u64; 4]) -> Vec<Poly> {
    embed_forms(&g4_member(t), 8, &Embedding::standard(P, 8).unwrap()).unwrap()
}

fn group(name: &str) -> MatrixGroup {
    close_group(&builtin(name).unwrap().generators, DEFAULT_CAP).unwrap()
}

fn family(g: &MatrixGroup) -> QuadricFamily {
    let cd = conjugacy_classes(g.group());
    let t = character_table(g.group(), &cd).unwrap();
    let ext = scalar_subgroup(g, &cd).unwrap();
    let v = lefschetz_check(&ext, &cd, &t).unwrap();
    equivariant_quadric_family(g, &cd, &t, v.v_multiplicities().unwrap()).unwrap()
}

#[test]
fn g4_census_has_sixty_four_nodes() {
    let ring = PolyRing::new(8, P);
    let c = singular_census(&g4_forms_mod_p(PARAMS[0]), &ring, CensusMode::Diagonal).unwrap();
    let want: Vec<Vec<usize>> = vec![
        vec![1, 3, 5, 8],
        vec![1, 3, 6, 7],
        vec![1, 4, 5, 7],
        vec![1, 4, 6, 8],
        vec![2, 3, 5, 7],
        vec![2, 3, 6, 8],
        vec![2, 4, 5, 8],
        vec![2, 4, 6, 7],
    ];
    let pats = c.patterns();
    assert_eq!(pats.iter().map(|(p, _)| p.clone()).collect::<Vec<_>>(), want);
    assert!(pats.iter().all(|&(_, k)| k == 8));
    assert_eq!(c.points.len(), 64);
    assert_eq!(c.geometric_count, 64);
    assert!(c.all_odp());
}

#[test]
fn quartic_relation_on_one_pattern() {
    let ring = PolyRing::new(8, P);
    for t in PARAMS {
        let c = singular_census(&g4_forms_mod_p(t), &ring, CensusMode::Diagonal).unwrap();
        let pts: Vec<_> = c.points.iter().filter(|pt| pt.zero_pattern == [1, 4, 6, 8]).collect();
        assert_eq!(pts.len(), 8);
        for pt in pts {
            let y = |i: usize| pt.coords[i - 1].pow(4);
            assert_eq!(y(3) - y(7), y(2) - y(5));
            assert_ne!(y(3) - y(7), y(2) + y(5));
        }
    }
}

#[test]
fn diagonal_and_groebner_agree() {
    let ring = PolyRing::new(8, P);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..5 {
        let t: [u64; 4] = random_parameters(4, P, &mut rng).try_into().unwrap();
        let forms = g4_forms_mod_p(t);
        let d = singular_census(&forms, &ring, CensusMode::Diagonal).unwrap();
        let g = singular_census(&forms, &ring, CensusMode::Groebner).unwrap();
        assert_eq!(g.unresolved, 0);
        assert_eq!(g.geometric_count, 64);
        assert_eq!(d.points, g.points, "{t:?}");
    }
}

#[test]
fn equal_t_parameters_are_not_generic() {
    let ring = PolyRing::new(8, P);
    let forms = g4_forms_mod_p([1, 1, 2, 3]);
    let d = singular_census(&forms, &ring, CensusMode::Diagonal).unwrap();
    let g = singular_census(&forms, &ring, CensusMode::Groebner).unwrap();
    assert_eq!(d.points.len(), 80);
    assert_eq!(d.points, g.points);
}

#[test]
fn census_is_closed_under_g4_and_g5() {
    let ring = PolyRing::new(8, P);
    let c = singular_census(&g4_forms_mod_p(PARAMS[0]), &ring, CensusMode::Diagonal).unwrap();
    let emb = Embedding::standard(P, 8).unwrap();
    for name in ["G4", "G5", "G5prime"] {
        let gens = builtin(name).unwrap().generators;
        let orbits = census_orbits(&c, &gens, &emb).unwrap();
        assert_eq!(orbits.iter().map(Vec::len).sum::<usize>(), 64);
    }
    // the printed σ₂ does not preserve the family, so it moves the nodes off
    let bad = vec![crate::catalog::sigma2_g4_variant()];
    assert!(matches!(census_orbits(&c, &bad, &emb), Err(GeometryError::NotClosed(0))));
}

#[test]
fn g4_member_is_free() {
    let g = group("G4");
    for t in &PARAMS[..3] {
        let cert = freeness_check(&g, &g4_member(*t), t, P).unwrap();
        assert!(cert.is_free());
        assert_eq!(cert.classes.len(), 27);
        assert_eq!(cert.embedding_order, 8);
        for cc in &cert.classes {
            let dim: usize = cc.eigenspaces.iter().map(|e| e.basis.len()).sum();
            assert_eq!(dim, 8);
            assert!(cc.eigenspaces.iter().all(|e| e.outcome.is_empty()));
        }
    }
}

#[test]
fn sampled_families_are_free() {
    for name in ["G5", "G5prime", "H8_regular"] {
        let g = group(name);
        let fam = family(&g);
        let (summary, certs) = freeness_over_samples(&g, &fam, P, 7, 3).unwrap();
        assert_eq!(summary, FreenessSummary::Free, "{name}");
        assert_eq!(certs.len(), 3);
    }
}

#[test]
fn h8_member_is_smooth() {
    let g = group("H8_regular");
    let fam = family(&g);
    assert_eq!(fam.shape_string(), "P^4 x P^4 x P^4 x P^4");
    let (_, certs) = freeness_over_samples(&g, &fam, P, 11, 1).unwrap();
    let c = singular_census(&certs[0].forms, &PolyRing::new(8, P), CensusMode::Groebner).unwrap();
    assert!(c.points.is_empty());
    assert_eq!(c.geometric_count, 0);
}

#[test]
fn non_diagonal_forms_are_rejected_in_diagonal_mode() {
    let g = group("H8_regular");
    let (_, certs) = freeness_over_samples(&g, &family(&g), P, 11, 1).unwrap();
    let r = singular_census(&certs[0].forms, &PolyRing::new(8, P), CensusMode::Diagonal);
    assert!(matches!(r, Err(GeometryError::NotDiagonal)));
}

#[test]
fn pencils_meet_every_node() {
    let ring = PolyRing::new(8, P);
    let c = singular_census(&g4_forms_mod_p(PARAMS[2]), &ring, CensusMode::Diagonal).unwrap();
    let inc = divisor_incidence(&DivisorPencil::from_builder(g4_pencil), &c).unwrap();
    assert!(inc.holds && !inc.degenerate);
    // x3*x7 survives on the (1468) nodes
    let inc = divisor_incidence(&DivisorPencil::from_builder(g5_pencil), &c).unwrap();
    assert!(!inc.holds);
    assert_eq!(c.points[inc.violating_point.unwrap()].zero_pattern, vec![1, 3, 5, 8]);
    let zero = DivisorPencil::from_builder(|_, _| {
        let q = QuadraticForm::from_coeffs(8, &vec![Cyclotomic::zero(1); 36]);
        [q.clone(), q]
    });
    assert!(divisor_incidence(&zero, &c).unwrap().degenerate);
}

#[test]
fn pencil_invariance_by_group() {
    let g4 = builtin("G4").unwrap().generators;
    let g5 = builtin("G5").unwrap().generators;
    let p4 = DivisorPencil::from_builder(g4_pencil);
    let p5 = DivisorPencil::from_builder(g5_pencil);
    // each group moves the members of its own pencil around
    assert!(!pencil_invariance(&g4, &p4));
    assert!(!pencil_invariance(&g5, &p5));
    assert!(pencil_family_invariance(&g4, &p4));
    assert!(pencil_family_invariance(&g5, &p5));
    eprintln!("g4/p5 {} {}", pencil_invariance(&g4, &p5), pencil_family_invariance(&g4, &p5));
    eprintln!("g5/p4 {} {}", pencil_invariance(&g5, &p4), pencil_family_invariance(&g5, &p4));
    // the subgroup generated by σ₃ and σ₄ fixes every member of the G₅ pencil
    assert!(pencil_invariance(&g5[..2], &p5));
}

#[test]
fn eigenspaces_decompose_each_element() {
    let g = group("G4");
    for m in g.elements().iter().step_by(17) {
        let spaces = eigenspaces(m).unwrap();
        let dim: usize = spaces.iter().map(|(_, b)| b.len()).sum();
        assert_eq!(dim, 8);
        for (lambda, basis) in &spaces {
            for v in basis {
                let img = m.apply(v);
                let want: Vec<Cyclotomic> = v.iter().map(|x| x * lambda).collect();
                assert_eq!(img, want);
            }
        }
    }
}

#[test]
fn freeness_is_deterministic() {
    let g = group("G5");
    let fam = family(&g);
    let a = freeness_over_samples(&g, &fam, P, 99, 2).unwrap();
    let b = freeness_over_samples(&g, &fam, P, 99, 2).unwrap();
    assert_eq!(a, b);
}
