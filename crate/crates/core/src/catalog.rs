//! Built-in groups given explicitly by generators.
//!
//! Matrix convention: column i holds the image of the coordinate x_i under
//! the substitution, so a generator written as
//! `(x_1,…,x_8) ↦ (a_1 x_{p(1)}, …)` has entry a_i at row p(i), column i.

use crate::exact::{CycMatrix, Cyclotomic};
use crate::quadrics::QuadraticForm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedFacts {
    pub order: usize,
    pub class_count: Option<usize>,
    pub scalar_order: Option<usize>,
    pub projective_order: usize,
    pub lefschetz_pass: bool,
    /// Multiplicities of the constituents of the quadric character.
    pub family_shape: Option<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    /// GAP-style label, informational only.
    pub label: &'static str,
    pub cyclotomic_order: u32,
    pub generators: Vec<CycMatrix>,
    pub expected: ExpectedFacts,
}

pub const NAMES: &[&str] = &[
    "H8_regular",
    "D8_regular",
    "Z8",
    "Z2xZ4",
    "Z2cubed",
    "Z4",
    "Z2",
    "Z2xZ2",
    "G1",
    "G2",
    "G3",
    "G4",
    "G5",
    "G5prime",
];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown catalog group {0:?}")]
pub struct UnknownGroup(pub String);

fn z(k: i64) -> Cyclotomic {
    Cyclotomic::root_of_unity(8, k)
}

/// Generator given as `x_i ↦ scalar · x_target` (1-based targets).
fn substitution(images: &[(i64, usize)]) -> CycMatrix {
    let perm: Vec<usize> = images.iter().map(|&(_, t)| t - 1).collect();
    let scalars: Vec<Cyclotomic> = images.iter().map(|&(k, _)| z(k)).collect();
    CycMatrix::monomial(8, &perm, &scalars).expect("valid monomial data")
}

/// Permutation of coordinates x_i ↦ x_{π(i)} from 1-based cycles.
fn from_cycles(cycles: &[&[usize]]) -> CycMatrix {
    let mut perm: Vec<usize> = (0..8).collect();
    for cyc in cycles {
        for (k, &a) in cyc.iter().enumerate() {
            perm[a - 1] = cyc[(k + 1) % cyc.len()] - 1;
        }
    }
    CycMatrix::monomial(8, &perm, &vec![Cyclotomic::one(8); 8]).unwrap()
}

fn tau() -> CycMatrix {
    let scalars: Vec<Cyclotomic> = (0..8).map(z).collect();
    CycMatrix::monomial(8, &(0..8).collect::<Vec<_>>(), &scalars).unwrap()
}

/// Left-regular representation, replicated to fill dimension 8. `mul` is
/// given on element indices 0..n with 0 the identity.
fn regular(n: usize, gens: &[usize], mul: impl Fn(usize, usize) -> usize) -> Vec<CycMatrix> {
    let copies = 8 / n;
    gens.iter()
        .map(|&g| {
            let mut perm = vec![0usize; 8];
            for c in 0..copies {
                for h in 0..n {
                    perm[c * n + h] = c * n + mul(g, h);
                }
            }
            CycMatrix::monomial(1, &perm, &vec![Cyclotomic::one(1); 8]).unwrap()
        })
        .collect()
}

/// Quaternion units in the order 1, i, j, k, −1, −i, −j, −k.
fn quaternion_mul(a: usize, b: usize) -> usize {
    // unit index u and sign s: element = (-1)^s · u, u ∈ {1,i,j,k}
    let (ua, sa) = (a % 4, a / 4);
    let (ub, sb) = (b % 4, b / 4);
    // products of 1, i, j, k as (unit, sign)
    const T: [[(usize, usize); 4]; 4] = [
        [(0, 0), (1, 0), (2, 0), (3, 0)],
        [(1, 0), (0, 1), (3, 0), (2, 1)],
        [(2, 0), (3, 1), (0, 1), (1, 0)],
        [(3, 0), (2, 0), (1, 1), (0, 1)],
    ];
    let (u, s) = T[ua][ub];
    u + 4 * ((s + sa + sb) % 2)
}

/// Dihedral group of order 8 in the order r^0..r^3, s, sr, sr^2, sr^3.
fn dihedral_mul(a: usize, b: usize) -> usize {
    let (fa, ra) = (a / 4, a % 4);
    let (fb, rb) = (b / 4, b % 4);
    // s^fa r^ra s^fb r^rb = s^(fa+fb) r^(±ra + rb)
    let r = if fb == 1 { (4 - ra + rb) % 4 } else { (ra + rb) % 4 };
    4 * ((fa + fb) % 2) + r
}

/// Abelian group Z/m1 × Z/m2 × … with mixed-radix element indices.
fn abelian_mul(moduli: &'static [usize]) -> impl Fn(usize, usize) -> usize {
    move |a, b| {
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        for &m in moduli {
            out += ((a % m + b % m) % m) * place;
            a /= m;
            b /= m;
            place *= m;
        }
        out
    }
}

fn abelian_generators(moduli: &[usize]) -> Vec<usize> {
    let mut place = 1;
    moduli
        .iter()
        .map(|&m| {
            let g = place;
            place *= m;
            g
        })
        .collect()
}

fn small(order: usize, classes: usize, pass: bool) -> ExpectedFacts {
    ExpectedFacts {
        order,
        class_count: Some(classes),
        scalar_order: Some(1),
        projective_order: order,
        lefschetz_pass: pass,
        family_shape: None,
    }
}

fn cover(order: usize, classes: Option<usize>, scalar: Option<usize>, shape: Option<Vec<usize>>) -> ExpectedFacts {
    ExpectedFacts {
        order,
        class_count: classes,
        scalar_order: scalar,
        projective_order: 64,
        lefschetz_pass: true,
        family_shape: shape,
    }
}

pub fn sigma1_g4() -> CycMatrix {
    substitution(&[(1, 7), (1, 8), (3, 5), (3, 6), (5, 3), (5, 4), (3, 1), (3, 2)])
}

/// σ₂ of G₄: (−x₂, x₁, −x₄, −x₃, −x₆, x₅, x₈, x₇).
pub fn sigma2_g4() -> CycMatrix {
    substitution(&[(4, 2), (0, 1), (4, 4), (4, 3), (4, 6), (0, 5), (0, 8), (0, 7)])
}

/// Variant (−x₂, i x₁, −x₄, −i x₃, −i x₆, x₅, i x₈, x₇). It generates a group
/// of the same order and class count but does not preserve the G₄ family.
pub fn sigma2_g4_variant() -> CycMatrix {
    substitution(&[(4, 2), (2, 1), (4, 4), (6, 3), (6, 6), (0, 5), (2, 8), (0, 7)])
}

pub fn sigma3() -> CycMatrix {
    substitution(&[(3, 5), (7, 6), (5, 7), (1, 8), (3, 1), (7, 2), (5, 3), (1, 4)])
}

pub fn sigma4() -> CycMatrix {
    substitution(&[(1, 7), (1, 8), (7, 5), (3, 6), (5, 3), (5, 4), (3, 1), (7, 2)])
}

pub fn sigma5() -> CycMatrix {
    substitution(&[(3, 6), (3, 5), (5, 8), (1, 7), (3, 2), (3, 1), (1, 4), (5, 3)])
}

pub fn builtin(name: &str) -> Result<CatalogEntry, UnknownGroup> {
    let entry = |label, order, generators, expected| CatalogEntry {
        name: NAMES.iter().find(|n| **n == name).copied().unwrap_or("custom"),
        label,
        cyclotomic_order: order,
        generators,
        expected,
    };
    Ok(match name {
        // i and j
        "H8_regular" => entry("(8,4)", 1, regular(8, &[1, 2], quaternion_mul), small(8, 5, true)),
        // r and s
        "D8_regular" => entry("(8,3)", 1, regular(8, &[1, 4], dihedral_mul), small(8, 5, false)),
        "Z8" => entry("(8,1)", 1, regular(8, &abelian_generators(&[8]), abelian_mul(&[8])), small(8, 8, true)),
        "Z2xZ4" => entry(
            "(8,2)",
            1,
            regular(8, &abelian_generators(&[2, 4]), abelian_mul(&[2, 4])),
            small(8, 8, true),
        ),
        "Z2cubed" => entry(
            "(8,5)",
            1,
            regular(8, &abelian_generators(&[2, 2, 2]), abelian_mul(&[2, 2, 2])),
            small(8, 8, true),
        ),
        "Z4" => entry("(4,1)", 1, regular(4, &abelian_generators(&[4]), abelian_mul(&[4])), small(4, 4, true)),
        "Z2" => entry("(2,1)", 1, regular(2, &abelian_generators(&[2]), abelian_mul(&[2])), small(2, 2, true)),
        "Z2xZ2" => entry(
            "(4,2)",
            1,
            regular(4, &abelian_generators(&[2, 2]), abelian_mul(&[2, 2])),
            small(4, 4, true),
        ),
        "G1" => entry(
            "(64,2)",
            8,
            vec![from_cycles(&[&[1, 2, 3, 4, 5, 6, 7, 8]]), tau()],
            cover(512, Some(92), Some(8), None),
        ),
        "G2" => entry(
            "(64,3)",
            8,
            vec![tau(), from_cycles(&[&[1, 8, 3, 2, 5, 4, 7, 6]])],
            cover(512, Some(92), Some(8), None),
        ),
        "G3" => entry(
            "(64,179)",
            8,
            vec![tau(), from_cycles(&[&[1, 3, 5, 7], &[2, 4, 6, 8]]), from_cycles(&[&[1, 2, 5, 6], &[4, 3, 8, 7]])],
            cover(512, Some(68), Some(8), None),
        ),
        "G4" => entry(
            "(64,68)",
            8,
            vec![sigma1_g4(), sigma2_g4(), sigma3()],
            cover(256, Some(46), Some(4), Some(vec![2, 2])),
        ),
        "G5" => entry(
            "(64,72)",
            8,
            vec![sigma3(), sigma4(), sigma5()],
            cover(256, Some(46), Some(4), Some(vec![2, 2])),
        ),
        "G5prime" => entry(
            "(64,72)",
            8,
            vec![sigma3(), sigma4(), sigma5().scale(&z(1))],
            cover(256, Some(46), Some(4), Some(vec![2, 2])),
        ),
        _ => return Err(UnknownGroup(name.to_string())),
    })
}

fn forms_from(order: u32, rows: Vec<Vec<(Cyclotomic, usize, usize)>>) -> Vec<QuadraticForm> {
    rows.iter().map(|terms| QuadraticForm::from_terms(8, order, terms)).collect()
}

/// The four quadrics of the (t₁:t₂),(s₁:s₂) family for G₄ and G₅.
pub fn g4_family_forms(t1: &Cyclotomic, t2: &Cyclotomic, s1: &Cyclotomic, s2: &Cyclotomic) -> Vec<QuadraticForm> {
    let o = [t1, t2, s1, s2].iter().fold(1, |m, c| crate::exact::lcm(m, c.order()));
    let sq = |c: &Cyclotomic, i: usize| (c.clone(), i, i);
    let neg = |c: &Cyclotomic| -c;
    // a(x1²±x2²) + b(x3²±x4²) + c(x5²±x6²) + d(x7²±x8²)
    let pattern = |a: Cyclotomic, b: Cyclotomic, c: Cyclotomic, d: Cyclotomic, minus: bool| {
        let s = |x: &Cyclotomic| if minus { -x } else { x.clone() };
        vec![
            sq(&a, 1),
            sq(&s(&a), 2),
            sq(&b, 3),
            sq(&s(&b), 4),
            sq(&c, 5),
            sq(&s(&c), 6),
            sq(&d, 7),
            sq(&s(&d), 8),
        ]
    };
    forms_from(
        o,
        vec![
            pattern(t1.clone(), neg(t2), t1.clone(), t2.clone(), false),
            pattern(neg(t2), t1.clone(), t2.clone(), t1.clone(), false),
            pattern(s1.clone(), neg(s2), s1.clone(), s2.clone(), true),
            pattern(neg(s2), s1.clone(), s2.clone(), s1.clone(), true),
        ],
    )
}

/// The (t₁,t₂,t₃) quadrics for G₁–G₃: q_{k+1} is q_1 with indices shifted by
/// k. With `literal` the cross term of q₁ is x₂x₇ as displayed; otherwise it
/// is x₃x₇, the term compatible with τ-semi-invariance.
pub fn g1_family_forms(t1: &Cyclotomic, t2: &Cyclotomic, t3: &Cyclotomic, literal: bool) -> Vec<QuadraticForm> {
    let o = [t1, t2, t3].iter().fold(1, |m, c| crate::exact::lcm(m, c.order()));
    let idx = |i: usize, k: usize| (i - 1 + k) % 8 + 1;
    let (a, b) = if literal { (2, 7) } else { (3, 7) };
    let rows = (0..4)
        .map(|k| {
            vec![
                (t1.clone(), idx(1, k), idx(1, k)),
                (t1.clone(), idx(5, k), idx(5, k)),
                (t2.clone(), idx(2, k), idx(8, k)),
                (t2.clone(), idx(4, k), idx(6, k)),
                (t3.clone(), idx(a, k), idx(b, k)),
            ]
        })
        .collect();
    forms_from(o, rows)
}

/// The divisor pencil f₁, f₂ for G₄.
pub fn g4_pencil(r1: &Cyclotomic, r2: &Cyclotomic) -> [QuadraticForm; 2] {
    let o = crate::exact::lcm(r1.order(), r2.order());
    let f = forms_from(
        o,
        vec![
            vec![(r1.clone(), 1, 2), (-r2, 3, 4), (r1.clone(), 5, 6), (r2.clone(), 7, 8)],
            vec![(-r2, 1, 2), (r1.clone(), 3, 4), (r2.clone(), 5, 6), (r1.clone(), 7, 8)],
        ],
    );
    [f[0].clone(), f[1].clone()]
}

/// The divisor pencil f₁, f₂ for G₅.
pub fn g5_pencil(r1: &Cyclotomic, r2: &Cyclotomic) -> [QuadraticForm; 2] {
    let o = crate::exact::lcm(r1.order(), r2.order());
    let f = forms_from(
        o,
        vec![
            vec![(r1.clone(), 1, 5), (-r2, 2, 6), (r1.clone(), 3, 7), (-r2, 4, 8)],
            vec![(-r1, 1, 5), (r2.clone(), 2, 6), (r1.clone(), 3, 7), (-r2, 4, 8)],
        ],
    );
    [f[0].clone(), f[1].clone()]
}

/// A family written out explicitly in terms of named parameters.
#[derive(Clone, Copy, Debug)]
pub struct DisplayedFamily {
    pub parameters: &'static [&'static str],
    pub build: fn(&[Cyclotomic]) -> Vec<QuadraticForm>,
}

fn build_g4(p: &[Cyclotomic]) -> Vec<QuadraticForm> {
    g4_family_forms(&p[0], &p[1], &p[2], &p[3])
}

fn build_g1(p: &[Cyclotomic]) -> Vec<QuadraticForm> {
    g1_family_forms(&p[0], &p[1], &p[2], false)
}

/// The explicit quadric family of a catalog group, if there is one.
pub fn displayed_family(name: &str) -> Option<DisplayedFamily> {
    match name {
        "G4" | "G5" | "G5prime" => Some(DisplayedFamily { parameters: &["t1", "t2", "s1", "s2"], build: build_g4 }),
        "G1" | "G2" | "G3" => Some(DisplayedFamily { parameters: &["t1", "t2", "t3"], build: build_g1 }),
        _ => None,
    }
}

pub type PencilBuilder = fn(&Cyclotomic, &Cyclotomic) -> [QuadraticForm; 2];

/// The divisor pencil attached to a catalog group, if there is one.
pub fn displayed_pencil(name: &str) -> Option<PencilBuilder> {
    match name {
        "G4" => Some(g4_pencil),
        "G5" | "G5prime" => Some(g5_pencil),
        _ => None,
    }
}
