use super::*;
use crate::catalog::builtin;
use crate::groups::{close_group, conjugacy_classes, DEFAULT_CAP};

fn table(name: &str) -> (FiniteGroup, ConjugacyData, CharacterTable) {
    let g = close_group(&builtin(name).unwrap().generators, DEFAULT_CAP).unwrap();
    let fg = g.group().clone();
    let cd = conjugacy_classes(&fg);
    let t = character_table(&fg, &cd).unwrap();
    (fg, cd, t)
}

fn profile(t: &CharacterTable) -> Vec<(u64, usize)> {
    let mut prof = std::collections::BTreeMap::new();
    for d in &t.degrees {
        *prof.entry(*d).or_insert(0) += 1;
    }
    prof.into_iter().collect()
}

#[test]
fn degree_profiles() {
    for (name, want) in [
        ("H8_regular", vec![(1, 4), (2, 1)]),
        ("D8_regular", vec![(1, 4), (2, 1)]),
        ("Z8", vec![(1, 8)]),
        ("G3", vec![(1, 16), (2, 44), (4, 4), (8, 4)]),
        ("G4", vec![(1, 16), (2, 28), (8, 2)]),
        ("G5", vec![(1, 16), (2, 28), (8, 2)]),
    ] {
        let (_, _, t) = table(name);
        assert_eq!(profile(&t), want, "{name}");
        t.verify_orthogonality().unwrap();
        assert!(t.verify_column_orthogonality(), "{name}");
    }
}

#[test]
fn h8_table_values() {
    let (_, _, t) = table("H8_regular");
    // classes: 1, −1, i, j, k
    let two = t.irreducibles.iter().find(|c| c.values[0] == Cyclotomic::from_int(1, 2)).unwrap();
    assert_eq!(two.as_integers().unwrap(), vec![2.into(), (-2).into(), 0.into(), 0.into(), 0.into()]);
    assert!(t.trivial().values.iter().all(Cyclotomic::is_one));
}

#[test]
fn prime_choice_and_override() {
    let (fg, cd, t) = table("Z8");
    assert_eq!(t.prime, 17);
    assert_eq!(dixon_prime(8, 8), 17);
    let t2 = character_table_with_prime(&fg, &cd, 41).unwrap();
    assert_eq!(t2.irreducibles, t.irreducibles);
    assert!(matches!(character_table_with_prime(&fg, &cd, 13), Err(ChartabError::BadPrime(13))));
}

#[test]
fn decomposition_detects_non_characters() {
    let (_, _, t) = table("H8_regular");
    let reg = ClassFunction::from_ints(1, &[8, 0, 0, 0, 0]);
    assert_eq!(is_character(&reg, &t).unwrap().multiplicities().unwrap(), &[1, 1, 1, 1, 2]);
    let half = ClassFunction::from_ints(1, &[4, 0, 0, 0, 0]);
    assert!(!is_character(&half, &t).unwrap().is_character());
}
