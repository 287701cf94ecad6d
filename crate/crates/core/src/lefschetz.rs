//! Trace vectors of V and O(2) supported on the scalar classes, the quadric
//! character v = Sym²(t_V) − t_O(2), and the pass/fail decision.

use crate::chartab::{is_character, CharacterTable, ChartabError, ClassFunction, Decomposition};
use crate::exact::{Cyclotomic, Rational};
use crate::groups::{CentralExtensionData, ConjugacyData};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LefschetzError {
    #[error("ξ = {xi} is not a primitive root of unity of order {order}")]
    NotPrimitive { xi: String, order: usize },
    #[error(transparent)]
    Chartab(#[from] ChartabError),
}

/// (χ(g)² + χ(g²))/2 classwise.
pub fn sym2_character(chi: &ClassFunction, cd: &ConjugacyData) -> ClassFunction {
    square_part(chi, cd, true)
}

/// (χ(g)² − χ(g²))/2 classwise.
pub fn alt2_character(chi: &ClassFunction, cd: &ConjugacyData) -> ClassFunction {
    square_part(chi, cd, false)
}

fn square_part(chi: &ClassFunction, cd: &ConjugacyData, sym: bool) -> ClassFunction {
    let half = Rational::new(1.into(), 2.into());
    ClassFunction::new(
        (0..chi.len())
            .map(|c| {
                let sq = &chi.values[c] * &chi.values[c];
                let p2 = &chi.values[cd.power(c, 2)];
                let s = if sym { &sq + p2 } else { &sq - p2 };
                s.scale(&half)
            })
            .collect(),
    )
}

fn is_primitive(xi: &Cyclotomic, order: usize) -> bool {
    if !xi.pow(order as u64).is_one() {
        return false;
    }
    // primitive iff ξ^(order/q) ≠ 1 for each prime q | order; order is a 2-power here
    order == 1 || !xi.pow(order as u64 / 2).is_one()
}

/// c·ξ^(m·k) on the class of σ^k, zero elsewhere.
fn scalar_supported(
    ext: &CentralExtensionData,
    xi: &Cyclotomic,
    classes: usize,
    coeff: i64,
    m: u64,
) -> Result<ClassFunction, LefschetzError> {
    if !is_primitive(xi, ext.scalar_order) {
        return Err(LefschetzError::NotPrimitive { xi: xi.to_string(), order: ext.scalar_order });
    }
    let order = xi.order();
    let mut f = ClassFunction::zero(classes, order);
    for (k, &c) in ext.scalar_classes.iter().enumerate() {
        f.values[c] = xi.pow(m * k as u64).scale(&Rational::from_integer(coeff.into()));
    }
    Ok(f)
}

/// t_V: 8ξ^k on the class of σ^k.
pub fn scalar_trace_vector(ext: &CentralExtensionData, xi: &Cyclotomic, classes: usize) -> Result<ClassFunction, LefschetzError> {
    scalar_supported(ext, xi, classes, 8, 1)
}

/// t_O(2): 32ξ^(2k) on the class of σ^k.
pub fn o2_trace_vector(ext: &CentralExtensionData, xi: &Cyclotomic, classes: usize) -> Result<ClassFunction, LefschetzError> {
    scalar_supported(ext, xi, classes, 32, 2)
}

/// Candidate values of ξ: the realized scalar of σ first, then the remaining
/// primitive roots ζ^k (k odd) in increasing k.
pub fn xi_candidates(ext: &CentralExtensionData) -> Vec<Cyclotomic> {
    let n = ext.scalar_order;
    let order = crate::exact::lcm(n as u32, ext.scalar.order());
    let realized = ext.scalar.lift(order).expect("lcm is a multiple");
    let mut out = vec![realized.clone()];
    for k in 0..n {
        if n > 1 && k % 2 == 0 {
            continue;
        }
        let c = Cyclotomic::root_of_unity(n as u32, k as i64);
        if c != realized {
            out.push(c.lift(order).unwrap());
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GuardFailure {
    /// The projective order must divide 256.
    ProjectiveOrder(usize),
    /// Projective order 64 needs a scalar subgroup of order at least 4.
    ScalarTooSmall { projective_order: usize, scalar_order: usize },
}

impl std::fmt::Display for GuardFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GuardFailure::ProjectiveOrder(n) => write!(f, "projective order {n} does not divide 256"),
            GuardFailure::ScalarTooSmall { projective_order, scalar_order } => write!(
                f,
                "projective order {projective_order} requires scalar order at least 4, found {scalar_order}"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateResult {
    pub xi: Cyclotomic,
    pub tv: ClassFunction,
    pub to2: ClassFunction,
    pub v: ClassFunction,
    pub tv_decomposition: Decomposition,
    pub v_decomposition: Decomposition,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LefschetzVerdict {
    pub pass: bool,
    pub guard_failures: Vec<GuardFailure>,
    /// Index into `candidates` of the reported candidate: the first passing
    /// one, or the first one when none pass.
    pub chosen: usize,
    pub candidates: Vec<CandidateResult>,
}

impl LefschetzVerdict {
    pub fn chosen(&self) -> &CandidateResult {
        &self.candidates[self.chosen]
    }
    pub fn xi_used(&self) -> &Cyclotomic {
        &self.chosen().xi
    }
    pub fn v_multiplicities(&self) -> Option<&[u64]> {
        self.chosen().v_decomposition.multiplicities()
    }
}

fn check_candidate(
    ext: &CentralExtensionData,
    xi: &Cyclotomic,
    cd: &ConjugacyData,
    t: &CharacterTable,
) -> Result<CandidateResult, LefschetzError> {
    let r = cd.len();
    let tv = scalar_trace_vector(ext, xi, r)?;
    let to2 = o2_trace_vector(ext, xi, r)?;
    let v = sym2_character(&tv, cd).sub(&to2);
    let tv_decomposition = is_character(&tv, t)?;
    let v_decomposition = is_character(&v, t)?;
    let pass = tv_decomposition.is_character() && v_decomposition.is_character() && v.values[0] == Cyclotomic::from_int(1, 4);
    Ok(CandidateResult { xi: xi.clone(), tv, to2, v, tv_decomposition, v_decomposition, pass })
}

pub fn lefschetz_check(
    ext: &CentralExtensionData,
    cd: &ConjugacyData,
    t: &CharacterTable,
) -> Result<LefschetzVerdict, LefschetzError> {
    let mut guard_failures = Vec::new();
    let po = ext.projective_order;
    if 256 % po != 0 {
        guard_failures.push(GuardFailure::ProjectiveOrder(po));
    }
    if po == 64 && ext.scalar_order < 4 {
        guard_failures.push(GuardFailure::ScalarTooSmall { projective_order: po, scalar_order: ext.scalar_order });
    }
    let candidates: Vec<CandidateResult> = xi_candidates(ext)
        .iter()
        .map(|xi| check_candidate(ext, xi, cd, t))
        .collect::<Result<_, _>>()?;
    let chosen = candidates.iter().position(|c| c.pass).unwrap_or(0);
    let pass = guard_failures.is_empty() && candidates[chosen].pass;
    Ok(LefschetzVerdict { pass, guard_failures, chosen, candidates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;
    use crate::chartab::character_table;
    use crate::groups::{close_group, conjugacy_classes, scalar_subgroup, DEFAULT_CAP};

    fn verdict(name: &str) -> (ConjugacyData, CharacterTable, LefschetzVerdict) {
        let g = close_group(&builtin(name).unwrap().generators, DEFAULT_CAP).unwrap();
        let cd = conjugacy_classes(g.group());
        let t = character_table(g.group(), &cd).unwrap();
        let ext = scalar_subgroup(&g, &cd).unwrap();
        let v = lefschetz_check(&ext, &cd, &t).unwrap();
        (cd, t, v)
    }

    #[test]
    fn trivial_group_sym2() {
        let cd = conjugacy_classes(&crate::groups::FiniteGroup::from_table(1, vec![0], vec![]));
        let chi = ClassFunction::from_ints(1, &[8]);
        assert_eq!(sym2_character(&chi, &cd), ClassFunction::from_ints(1, &[36]));
    }

    #[test]
    fn verdicts_on_small_groups() {
        for name in ["H8_regular", "Z2", "Z4", "Z2xZ2", "Z8", "Z2xZ4", "Z2cubed"] {
            assert!(verdict(name).2.pass, "{name}");
        }
        let (_, _, d8) = verdict("D8_regular");
        assert!(!d8.pass);
        assert!(!d8.chosen().v_decomposition.is_character());
    }

    #[test]
    fn g4_passes_with_two_degree_two_constituents() {
        let (_, t, v) = verdict("G4");
        assert!(v.pass);
        let m = v.v_multiplicities().unwrap();
        let parts: Vec<u64> = m.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, _)| t.degrees[i]).collect();
        assert_eq!(parts, vec![2, 2]);
        let tvm = v.chosen().tv_decomposition.multiplicities().unwrap();
        let tv_parts: Vec<u64> = tvm.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, _)| t.degrees[i]).collect();
        assert_eq!(tv_parts, vec![8]);
    }
}
