//! The staged analysis: closure, character table, Lefschetz test, quadric
//! family, freeness and the singular census, with the final classification.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::catalog::{displayed_family, displayed_pencil};
use crate::chartab::{character_table, CharacterTable, ChartabError};
use crate::exact::fp::is_prime;
use crate::exact::{lcm, CycMatrix, Cyclotomic, Embedding};
use crate::geometry::{
    census_orbits, divisor_incidence, embed_forms, freeness_check, pencil_family_invariance, pencil_invariance,
    random_parameters, singular_census, CensusMode, DivisorPencil, GeometryError, Poly, PolyRing,
};
use crate::groups::{
    close_group, conjugacy_classes, quotient_by_central, scalar_subgroup, CentralExtensionData, ConjugacyData,
    GroupError, MatrixGroup, DEFAULT_CAP,
};
use crate::io::{GroupDefinition, IoError};
use crate::lefschetz::{lefschetz_check, LefschetzError, LefschetzVerdict};
use crate::quadrics::{defining_character, equivariant_quadric_family, sym2_trace_vector, FamilyError, QuadricFamily};
use crate::report::{
    common_order, exact_string, strings_at, witness_of, CandidateSummary, CensusReport, ChartableReport,
    Classification, ClosureReport, ConstituentSummary, FreenessReport, FullReport, LefschetzReport, MemberReport,
    PencilReport, QuadricsReport,
};

pub const DEFAULT_PRIME: u64 = 65537;
pub const DEFAULT_SEED: u64 = 0;

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Chartab(#[from] ChartabError),
    #[error(transparent)]
    Lefschetz(#[from] LefschetzError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("{prime} is not a usable prime: {reason}")]
    InvalidPrime { prime: u64, reason: String },
    #[error("bad parameters: {0}")]
    Parameters(String),
    #[error("the quadric character is not a character, so there is no family")]
    NoFamily,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub prime: u64,
    pub seed: u64,
    pub params: Option<Vec<i64>>,
    pub mode: Option<CensusMode>,
    pub cap: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { prime: DEFAULT_PRIME, seed: DEFAULT_SEED, params: None, mode: None, cap: DEFAULT_CAP }
    }
}

impl RunConfig {
    /// Checks what can be checked before the cyclotomic order is known.
    pub fn validate(&self) -> Result<(), PipelineError> {
        check_prime(self.prime, 1)
    }
}

/// A closed group with its classes, table and scalar subgroup.
pub struct Analysis {
    pub name: String,
    pub group: MatrixGroup,
    pub classes: ConjugacyData,
    pub table: CharacterTable,
    pub scalars: CentralExtensionData,
}

impl Analysis {
    pub fn new(def: &GroupDefinition, cap: usize) -> Result<Self, PipelineError> {
        let mut group = close_group(&def.generators, cap)?;
        group.name = def.name.clone();
        let classes = conjugacy_classes(group.group());
        let table = character_table(group.group(), &classes)?;
        let scalars = scalar_subgroup(&group, &classes)?;
        Ok(Analysis { name: def.name.clone(), group, classes, table, scalars })
    }

    pub fn generators(&self) -> Vec<CycMatrix> {
        self.group.generator_indices().iter().map(|&i| self.group.element(i).clone()).collect()
    }

    pub fn closure_report(&self) -> Result<ClosureReport, PipelineError> {
        let fg = self.group.group();
        let q = quotient_by_central(fg, &self.scalars.scalar_elements)?;
        let qcd = conjugacy_classes(&q);
        Ok(ClosureReport {
            group: self.name.clone(),
            order: self.group.order(),
            class_count: self.classes.len(),
            class_sizes: self.classes.class_sizes.clone(),
            class_orders: self.classes.element_orders.clone(),
            exponent: self.classes.exponent,
            abelian: fg.is_abelian(),
            scalar: self.scalars.scalar.to_string(),
            scalar_order: self.scalars.scalar_order,
            projective_order: q.order(),
            projective_class_count: qcd.len(),
            projective_exponent: qcd.exponent,
            projective_abelian: q.is_abelian(),
        })
    }

    pub fn chartable_report(&self) -> ChartableReport {
        ChartableReport::new(&self.name, &self.table, &self.classes.element_orders)
    }

    pub fn lefschetz(&self) -> Result<LefschetzVerdict, PipelineError> {
        Ok(lefschetz_check(&self.scalars, &self.classes, &self.table)?)
    }

    pub fn lefschetz_report(&self, verdict: &LefschetzVerdict) -> LefschetzReport {
        let c = verdict.chosen();
        let defining = defining_character(&self.group, &self.classes);
        let sym2 = sym2_trace_vector(&self.group, &self.classes);
        let all = [&defining, &sym2, &c.tv, &c.to2, &c.v];
        let order = common_order(
            lcm(self.table.conductor, c.xi.order()),
            all.iter().flat_map(|f| f.values.iter()),
        );
        let witness = witness_of("tv", &c.tv, &c.tv_decomposition, order)
            .or_else(|| witness_of("v", &c.v, &c.v_decomposition, order));
        LefschetzReport {
            group: self.name.clone(),
            pass: verdict.pass,
            value_order: order,
            guard_failures: verdict.guard_failures.iter().map(ToString::to_string).collect(),
            xi: exact_string(&c.xi, order),
            defining_character: strings_at(&defining.values, order),
            sym2_defining: strings_at(&sym2.values, order),
            tv: strings_at(&c.tv.values, order),
            to2: strings_at(&c.to2.values, order),
            v: strings_at(&c.v.values, order),
            tv_multiplicities: c.tv_decomposition.multiplicities().map(<[u64]>::to_vec),
            v_multiplicities: c.v_decomposition.multiplicities().map(<[u64]>::to_vec),
            witness,
            candidates: verdict
                .candidates
                .iter()
                .map(|k| CandidateSummary { xi: exact_string(&k.xi, lcm(order, k.xi.order())), pass: k.pass })
                .collect(),
            table: self.chartable_report(),
        }
    }

    pub fn family(&self, verdict: &LefschetzVerdict) -> Result<QuadricFamily, PipelineError> {
        let mult = verdict.v_multiplicities().ok_or(PipelineError::NoFamily)?;
        Ok(equivariant_quadric_family(&self.group, &self.classes, &self.table, mult)?)
    }

    /// The member chosen by the configuration: explicit parameters for the
    /// displayed family when the group has one, otherwise for the extracted
    /// family; random parameters from the seed when none are given.
    pub fn member(&self, family: &QuadricFamily, config: &RunConfig) -> Result<Member, PipelineError> {
        let displayed = displayed_family(&self.name);
        let p = config.prime;
        let params: Vec<i64> = match &config.params {
            Some(v) => v.clone(),
            None => {
                let count = displayed.map_or(family.parameter_count(), |d| d.parameters.len());
                let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
                random_parameters(count, p, &mut rng).into_iter().map(|x| x as i64).collect()
            }
        };
        let exact: Vec<Cyclotomic> = params.iter().map(|&v| Cyclotomic::from_int(1, v)).collect();
        let residues: Vec<u64> = params.iter().map(|&v| v.rem_euclid(p as i64) as u64).collect();
        if let Some(d) = displayed.filter(|d| d.parameters.len() == params.len()) {
            let forms = (d.build)(&exact);
            let coeffs: Vec<Vec<Cyclotomic>> = forms.iter().map(|q| q.coeffs()).collect();
            if family.parameters_of(&coeffs).is_none() {
                return Err(PipelineError::Parameters(format!(
                    "the displayed family of {} at these parameters is not in the extracted family",
                    self.name
                )));
            }
            let names = d.parameters.iter().map(|s| s.to_string()).collect();
            return Ok(Member::new(names, params, residues, coeffs));
        }
        if params.len() != family.parameter_count() {
            let mut msg = format!("expected {} parameters", family.parameter_count());
            if let Some(d) = displayed {
                msg.push_str(&format!(" (or {} for {})", d.parameters.len(), d.parameters.join(",")));
            }
            return Err(PipelineError::Parameters(msg));
        }
        let lifted: Vec<Cyclotomic> = exact.iter().map(|c| c.lift(family.order).expect("rational")).collect();
        let m = family.specialize(&lifted)?;
        Ok(Member::new(Vec::new(), params, residues, m.coeffs))
    }

    pub fn quadrics_report(&self, family: &QuadricFamily, member: Option<&Member>) -> QuadricsReport {
        let order = common_order(
            family.order,
            family.constituents.iter().flat_map(|c| c.blocks.iter().flatten().flatten()),
        );
        QuadricsReport {
            group: self.name.clone(),
            value_order: order,
            shape: family.shape_string(),
            parameter_count: family.parameter_count(),
            parameter_dimension: family.parameter_dimension(),
            constituents: family
                .constituents
                .iter()
                .map(|c| ConstituentSummary {
                    character: c.character,
                    degree: c.degree,
                    v_multiplicity: c.v_multiplicity,
                    multiplicity: c.multiplicity,
                    blocks: c.blocks.iter().map(|b| b.iter().map(|v| strings_at(v, order)).collect()).collect(),
                })
                .collect(),
            member: member.map(Member::report),
        }
    }

    /// The order of roots of unity needed to specialize `member` and the
    /// group mod p; checks the prime.
    pub fn embedding_order(&self, member: &Member, prime: u64) -> Result<u32, PipelineError> {
        let order = common_order(lcm(self.group.field_order(), self.classes.exponent as u32), member.coeffs.iter().flatten());
        check_prime(prime, order)?;
        Ok(order)
    }

    pub fn freeness(&self, member: &Member, prime: u64) -> Result<FreenessReport, PipelineError> {
        self.embedding_order(member, prime)?;
        let cert = freeness_check(&self.group, &member.coeffs, &member.residues, prime)?;
        let mats: Vec<CycMatrix> = cert.classes.iter().map(|c| self.group.element(c.element).clone()).collect();
        Ok(FreenessReport::new(&self.name, &cert, &mats))
    }

    pub fn singularities(&self, member: &Member, config: &RunConfig) -> Result<CensusReport, PipelineError> {
        let prime = config.prime;
        let order = self.embedding_order(member, prime)?;
        let emb = Embedding::standard(prime, order).map_err(GeometryError::from)?;
        let n = self.group.dim();
        let forms = embed_forms(&member.coeffs, n, &emb)?;
        let mode = config.mode.unwrap_or(if is_diagonal(&forms) { CensusMode::Diagonal } else { CensusMode::Groebner });
        let ring = PolyRing::new(n, prime);
        let census = singular_census(&forms, &ring, mode)?;
        let orbits = census_orbits(&census, &self.generators(), &emb)
            .ok()
            .map(|o| o.iter().map(Vec::len).collect());
        let mut report = CensusReport::new(&self.name, &census, &forms, orbits);
        if let Some(builder) = displayed_pencil(&self.name) {
            let pencil = DivisorPencil::from_builder(builder);
            let inc = divisor_incidence(&pencil, &census)?;
            let gens = self.generators();
            let text = |q: &crate::quadrics::QuadraticForm| q.to_polynomial_string();
            report.pencil = Some(PencilReport {
                r1_part: pencil.r1_part.iter().map(text).collect(),
                r2_part: pencil.r2_part.iter().map(text).collect(),
                incidence: inc.holds,
                degenerate: inc.degenerate,
                violating_point: inc.violating_point,
                invariance: pencil_invariance(&gens, &pencil),
                family_invariance: pencil_family_invariance(&gens, &pencil),
            });
        }
        Ok(report)
    }
}

/// A specialized member of a quadric family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Member {
    pub parameter_names: Vec<String>,
    pub params: Vec<i64>,
    pub residues: Vec<u64>,
    pub coeffs: Vec<Vec<Cyclotomic>>,
}

impl Member {
    fn new(parameter_names: Vec<String>, params: Vec<i64>, residues: Vec<u64>, coeffs: Vec<Vec<Cyclotomic>>) -> Self {
        Member { parameter_names, params, residues, coeffs }
    }

    fn report(&self) -> MemberReport {
        let order = common_order(1, self.coeffs.iter().flatten());
        let forms = self
            .coeffs
            .iter()
            .map(|c| crate::quadrics::QuadraticForm::from_coeffs(8, c).to_polynomial_string())
            .collect();
        MemberReport {
            parameter_names: self.parameter_names.clone(),
            params: self.params.iter().map(ToString::to_string).collect(),
            forms,
            coefficients: self.coeffs.iter().map(|c| strings_at(c, order)).collect(),
            degenerate: self.params.iter().any(|&v| v == 0),
        }
    }
}

fn is_diagonal(forms: &[Poly]) -> bool {
    forms.iter().all(|f| f.terms.iter().all(|&(m, _)| m.pure_power().is_some()))
}

pub fn check_prime(prime: u64, order: u32) -> Result<(), PipelineError> {
    if !is_prime(prime) {
        return Err(PipelineError::InvalidPrime { prime, reason: "not prime".into() });
    }
    if prime >= 1 << 31 {
        return Err(PipelineError::InvalidPrime { prime, reason: "must be below 2^31".into() });
    }
    if (prime - 1) % order as u64 != 0 {
        return Err(PipelineError::InvalidPrime { prime, reason: format!("not congruent to 1 mod {order}") });
    }
    Ok(())
}

/// Every stage in order, stopping at the first that rejects.
pub fn run_full(def: &GroupDefinition, config: &RunConfig) -> Result<FullReport, PipelineError> {
    config.validate()?;
    let a = Analysis::new(def, config.cap)?;
    let closure = a.closure_report()?;
    let verdict = a.lefschetz()?;
    let lefschetz = a.lefschetz_report(&verdict);
    let mut report = FullReport {
        group: a.name.clone(),
        classification: Classification::Rejected,
        decided_by: "lefschetz".into(),
        reason: String::new(),
        closure,
        lefschetz,
        quadrics: None,
        freeness: None,
        singularities: None,
    };
    if !verdict.pass {
        report.reason = match (&report.lefschetz.guard_failures[..], &report.lefschetz.witness) {
            ([first, ..], _) => first.clone(),
            ([], Some(w)) => format!("{} = [{}] is not a character", w.function, w.values.join(", ")),
            ([], None) => "the quadric character does not have degree 4".into(),
        };
        return Ok(report);
    }
    let family = match a.family(&verdict) {
        Ok(f) => f,
        Err(e) => {
            report.decided_by = "quadrics".into();
            report.reason = e.to_string();
            return Ok(report);
        }
    };
    let member = a.member(&family, config)?;
    report.quadrics = Some(a.quadrics_report(&family, Some(&member)));
    let freeness = a.freeness(&member, config.prime)?;
    let free = freeness.verdict.free;
    report.freeness = Some(freeness);
    if !free {
        report.decided_by = "freeness".into();
        report.reason = "a fixed locus meets the variety".into();
        return Ok(report);
    }
    report.decided_by = "singularities".into();
    match a.singularities(&member, config) {
        Ok(census) => {
            if census.point_count == 0 && census.geometric_count == 0 {
                report.classification = Classification::Allowable;
                report.reason = "free action on a smooth member".into();
            } else if census.all_odp && census.unresolved == 0 {
                report.classification = Classification::SemiAllowable;
                report.reason = format!("free action; {} ordinary double points", census.point_count);
            } else {
                report.reason = "singular points that are not ordinary double points".into();
            }
            report.singularities = Some(census);
        }
        Err(PipelineError::Geometry(GeometryError::PositiveDimensional(pattern))) => {
            report.reason = format!("positive-dimensional singular locus on pattern {pattern:?}");
        }
        Err(e) => return Err(e),
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;
    use crate::io::load_group;
    use crate::report::to_json;

    fn full(name: &str) -> FullReport {
        run_full(&load_group(name).unwrap(), &RunConfig::default()).unwrap()
    }

    #[test]
    fn d8_is_rejected_by_lefschetz() {
        let r = full("D8_regular");
        assert_eq!(r.classification, Classification::Rejected);
        assert_eq!(r.decided_by, "lefschetz");
        let w = r.lefschetz.witness.as_ref().unwrap();
        assert_eq!(w.function, "v");
        let mut sorted = w.values.clone();
        sorted.sort();
        assert_eq!(sorted, ["0", "4", "4", "4", "4"]);
        r.verify().unwrap();
    }

    #[test]
    fn h8_is_allowable() {
        let r = full("H8_regular");
        assert_eq!(r.classification, Classification::Allowable, "{}", r.reason);
        assert!(r.freeness.as_ref().unwrap().verdict.free);
        assert_eq!(r.singularities.as_ref().unwrap().point_count, 0);
        r.verify().unwrap();
    }

    #[test]
    fn g4_is_semi_allowable() {
        let r = full("G4");
        assert_eq!(r.classification, Classification::SemiAllowable, "{}", r.reason);
        let c = r.singularities.as_ref().unwrap();
        assert_eq!(c.point_count, 64);
        assert!(c.all_odp);
        let pencil = c.pencil.as_ref().unwrap();
        assert!(pencil.incidence);
        assert!(pencil.family_invariance);
        r.verify().unwrap();
    }

    #[test]
    fn reports_are_deterministic_and_round_trip() {
        let a = to_json(&full("G5"));
        let b = to_json(&full("G5"));
        assert_eq!(a, b);
        let back: FullReport = serde_json::from_str(&a).unwrap();
        back.verify().unwrap();
        assert_eq!(to_json(&back), a);
    }

    #[test]
    fn tampered_certificates_fail_verification() {
        let mut r = full("G4");
        let f = r.freeness.as_mut().unwrap();
        f.classes[3].eigenspaces[0].outcome.empty = false;
        assert!(r.verify().is_err());
        let mut r = full("G4");
        r.singularities.as_mut().unwrap().points[5].coords[1][0] += 1;
        assert!(r.verify().is_err());
        let mut r = full("D8_regular");
        r.lefschetz.pass = true;
        assert!(r.verify().is_err());
    }

    #[test]
    fn explicit_parameters_and_bad_primes() {
        let def = load_group("G4").unwrap();
        let a = Analysis::new(&def, DEFAULT_CAP).unwrap();
        let v = a.lefschetz().unwrap();
        let fam = a.family(&v).unwrap();
        let cfg = RunConfig { params: Some(vec![2, 3, 5, 7]), ..Default::default() };
        let m = a.member(&fam, &cfg).unwrap();
        assert_eq!(m.parameter_names, ["t1", "t2", "s1", "s2"]);
        let cfg = RunConfig { params: Some(vec![2, 3]), ..Default::default() };
        assert!(matches!(a.member(&fam, &cfg), Err(PipelineError::Parameters(_))));
        for bad in [65539, 65541, 1 << 40] {
            let cfg = RunConfig { prime: bad, ..Default::default() };
            let m = a.member(&fam, &RunConfig::default()).unwrap();
            assert!(matches!(a.freeness(&m, cfg.prime), Err(PipelineError::InvalidPrime { .. })));
        }
        let _ = builtin("G4").unwrap();
    }
}
