use super::{ConjugacyData, FiniteGroup, GroupError, MatrixGroup};
use crate::exact::{Cyclotomic, CycMatrix};

/// The cyclic scalar subgroup ⟨σ⟩ with σ = ξ·I.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralExtensionData {
    pub scalar_generator: usize,
    /// ξ as the exact scalar of σ.
    pub scalar: Cyclotomic,
    pub scalar_order: usize,
    /// `scalar_elements[k]` is σ^k.
    pub scalar_elements: Vec<usize>,
    /// `scalar_classes[k]` is the class index of σ^k.
    pub scalar_classes: Vec<usize>,
    pub projective_order: usize,
}

impl CentralExtensionData {
    /// 2-adic valuation of the scalar order.
    pub fn d(&self) -> u32 {
        self.scalar_order.trailing_zeros()
    }
}

/// Find all scalar matrices, check they form a cyclic 2-group, and pick as
/// generator the primitive one ζ_m^j with the least j.
pub fn scalar_subgroup(g: &MatrixGroup, cd: &ConjugacyData) -> Result<CentralExtensionData, GroupError> {
    let scalars: Vec<(usize, Cyclotomic)> = g
        .elements()
        .iter()
        .enumerate()
        .filter_map(|(i, m)| m.scalar_value().map(|c| (i, c)))
        .collect();
    let count = scalars.len();
    if !count.is_power_of_two() {
        return Err(GroupError::ScalarNotCyclic2(count));
    }
    let n = g.field_order();
    let m = if n % 2 == 1 { 2 * n } else { n };
    let exponent_of = |c: &Cyclotomic| (0..m).find(|&j| Cyclotomic::root_of_unity(m, j as i64) == *c);
    let mut best: Option<(u32, usize, Cyclotomic)> = None;
    for (i, c) in &scalars {
        if g.group().element_order(*i) != count {
            continue;
        }
        let j = exponent_of(c).ok_or(GroupError::ScalarNotCyclic2(count))?;
        if best.as_ref().map_or(true, |b| j < b.0) {
            best = Some((j, *i, c.clone()));
        }
    }
    let (_, sigma, scalar) = best.ok_or(GroupError::ScalarNotCyclic2(count))?;
    let fg = g.group();
    let mut scalar_elements = vec![0usize];
    let mut x = sigma;
    while x != 0 {
        scalar_elements.push(x);
        x = fg.mul(x, sigma);
    }
    Ok(CentralExtensionData {
        scalar_generator: sigma,
        scalar,
        scalar_order: count,
        scalar_classes: scalar_elements.iter().map(|&e| cd.class_of[e]).collect(),
        scalar_elements,
        projective_order: g.order() / count,
    })
}

/// G/Z for a central subgroup Z. Cosets are numbered by their least element,
/// in increasing order, so the identity coset is 0.
pub fn quotient_by_central(g: &FiniteGroup, z: &[usize]) -> Result<FiniteGroup, GroupError> {
    let n = g.order();
    let mut inz = vec![false; n];
    for &x in z {
        inz[x] = true;
    }
    if !inz[0] || z.iter().any(|&a| z.iter().any(|&b| !inz[g.mul(a, b)])) {
        return Err(GroupError::NotSubgroup);
    }
    if z.iter().any(|&a| (0..n).any(|x| g.mul(a, x) != g.mul(x, a))) {
        return Err(GroupError::NotCentral);
    }
    let mut coset = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &s in z {
            coset[g.mul(x, s)] = id;
        }
    }
    let q = reps.len();
    let mut table = vec![0u32; q * q];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            table[i * q + j] = coset[g.mul(a, b)] as u32;
        }
    }
    let mut gens: Vec<usize> = g.generators().iter().map(|&x| coset[x]).filter(|&c| c != 0).collect();
    gens.dedup();
    Ok(FiniteGroup::from_table(q, table, gens))
}

/// Whether A·B⁻¹ is a scalar matrix.
pub fn projective_equal(a: &CycMatrix, b: &CycMatrix) -> bool {
    match b.inverse() {
        Some(binv) => a.mul(&binv).scalar_value().is_some_and(|c| !c.is_zero()),
        None => false,
    }
}

/// Coset map of a quotient built by [`quotient_by_central`].
pub fn coset_map(g: &FiniteGroup, z: &[usize]) -> Vec<usize> {
    let n = g.order();
    let mut coset = vec![usize::MAX; n];
    let mut next = 0;
    for x in 0..n {
        if coset[x] != usize::MAX {
            continue;
        }
        for &s in z {
            coset[g.mul(x, s)] = next;
        }
        next += 1;
    }
    coset
}
