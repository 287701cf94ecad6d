//! Serializable stage reports with exact values as strings, and checks that
//! re-derive a report's verdicts from the data it carries.

use serde::{Deserialize, Serialize};

use crate::chartab::{is_character, CharacterTable, ClassFunction, Decomposition};
use crate::exact::linalg::rank;
use crate::exact::{CycMatrix, Cyclotomic, Embedding, ExactError, FieldElem, Fp2Elem, PrimeFieldElem};
use crate::geometry::{
    odp_test, projective_empty, restrict_forms, Emptiness, EigenCertificate, FreenessCertificate, FreenessVerdict, Mono,
    Poly, PolyRing, SingularCensus, SEMICONTINUITY_NOTE,
};

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error("bad exact value in report: {0}")]
    Exact(#[from] ExactError),
    #[error("report is inconsistent: {0}")]
    Mismatch(String),
}

fn mismatch<T>(msg: impl Into<String>) -> Result<T, VerifyError> {
    Err(VerifyError::Mismatch(msg.into()))
}

/// A polynomial over F_p as exponent vectors with coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyData {
    pub text: String,
    pub terms: Vec<(Vec<u32>, u32)>,
}

impl PolyData {
    pub fn new(f: &Poly, ring: &PolyRing) -> Self {
        let n = ring.nvars();
        PolyData { text: f.format(ring), terms: f.terms.iter().map(|&(m, c)| (m.exps(n), c)).collect() }
    }

    pub fn to_poly(&self, p: u32) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(e, c)| (Mono::from_exps(e), *c)).collect(), p)
    }
}

/// Text of `c` with `z` read as ζ_order; `order` must be a multiple of the
/// order of `c`.
pub fn exact_string(c: &Cyclotomic, order: u32) -> String {
    c.lift(order).expect("order is a common multiple").to_string()
}

pub fn strings_at(v: &[Cyclotomic], order: u32) -> Vec<String> {
    v.iter().map(|c| exact_string(c, order)).collect()
}

pub fn matrix_strings(m: &CycMatrix, order: u32) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| strings_at(r, order)).collect()
}

/// Least common multiple of `base` and the orders of all `values`.
pub fn common_order<'a>(base: u32, values: impl IntoIterator<Item = &'a Cyclotomic>) -> u32 {
    values.into_iter().fold(base, |m, c| crate::exact::lcm(m, c.order()))
}

pub fn parse_matrix(rows: &[Vec<String>], order: u32) -> Result<CycMatrix, ExactError> {
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|s| Cyclotomic::parse(s, order)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    CycMatrix::from_rows(order, parsed)
}

fn parse_vector(v: &[String], order: u32) -> Result<Vec<Cyclotomic>, ExactError> {
    v.iter().map(|s| Cyclotomic::parse(s, order)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub group: String,
    pub order: usize,
    pub class_count: usize,
    pub class_sizes: Vec<usize>,
    pub class_orders: Vec<usize>,
    pub exponent: usize,
    pub abelian: bool,
    pub scalar: String,
    pub scalar_order: usize,
    pub projective_order: usize,
    pub projective_class_count: usize,
    pub projective_exponent: usize,
    pub projective_abelian: bool,
}

/// Everything needed to rebuild a character table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartableReport {
    pub group: String,
    pub group_order: usize,
    pub prime: u64,
    pub conductor: u32,
    /// `z` in every value denotes ζ of this order.
    pub value_order: u32,
    pub class_sizes: Vec<usize>,
    pub class_orders: Vec<usize>,
    pub inverse_classes: Vec<usize>,
    pub degrees: Vec<u64>,
    pub characters: Vec<Vec<String>>,
}

impl ChartableReport {
    pub fn new(group: &str, t: &CharacterTable, class_orders: &[usize]) -> Self {
        let value_order = common_order(t.conductor, t.irreducibles.iter().flat_map(|c| &c.values));
        ChartableReport {
            group: group.to_string(),
            group_order: t.group_order,
            prime: t.prime,
            conductor: t.conductor,
            value_order,
            class_sizes: t.class_sizes.clone(),
            class_orders: class_orders.to_vec(),
            inverse_classes: t.inverse_classes.clone(),
            degrees: t.degrees.clone(),
            characters: t.irreducibles.iter().map(|c| strings_at(&c.values, value_order)).collect(),
        }
    }

    pub fn to_table(&self) -> Result<CharacterTable, VerifyError> {
        let irreducibles = self
            .characters
            .iter()
            .map(|c| parse_vector(c, self.value_order).map(ClassFunction::new))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CharacterTable {
            group_order: self.group_order,
            class_sizes: self.class_sizes.clone(),
            inverse_classes: self.inverse_classes.clone(),
            conductor: self.conductor,
            irreducibles,
            degrees: self.degrees.clone(),
            prime: self.prime,
        })
    }

    /// Aligned text grid: a header of class orders and sizes, then one row
    /// per irreducible.
    pub fn grid(&self) -> String {
        let r = self.class_sizes.len();
        let mut rows: Vec<Vec<String>> = Vec::new();
        rows.push(std::iter::once("order".to_string()).chain(self.class_orders.iter().map(|o| o.to_string())).collect());
        rows.push(std::iter::once("size".to_string()).chain(self.class_sizes.iter().map(|s| s.to_string())).collect());
        for (i, c) in self.characters.iter().enumerate() {
            rows.push(std::iter::once(format!("X{}", i + 1)).chain(c.iter().cloned()).collect());
        }
        let widths: Vec<usize> = (0..=r).map(|j| rows.iter().map(|row| row[j].chars().count()).max().unwrap_or(0)).collect();
        let mut out = String::new();
        for (k, row) in rows.iter().enumerate() {
            let cells: Vec<String> = row.iter().zip(&widths).map(|(c, &w)| format!("{c:>w$}")).collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
            if k == 1 {
                let total = widths.iter().sum::<usize>() + 2 * r;
                out.push_str(&"-".repeat(total));
                out.push('\n');
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateSummary {
    pub xi: String,
    pub pass: bool,
}

/// Why a class function is not a character: its values and the offending
/// inner product with an irreducible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonCharacterWitness {
    pub function: String,
    pub values: Vec<String>,
    pub irreducible: usize,
    pub inner_product: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LefschetzReport {
    pub group: String,
    pub pass: bool,
    /// `z` in every value denotes ζ of this order.
    pub value_order: u32,
    pub guard_failures: Vec<String>,
    pub xi: String,
    pub defining_character: Vec<String>,
    pub sym2_defining: Vec<String>,
    pub tv: Vec<String>,
    pub to2: Vec<String>,
    pub v: Vec<String>,
    pub tv_multiplicities: Option<Vec<u64>>,
    pub v_multiplicities: Option<Vec<u64>>,
    pub witness: Option<NonCharacterWitness>,
    pub candidates: Vec<CandidateSummary>,
    pub table: ChartableReport,
}

pub fn witness_of(name: &str, f: &ClassFunction, d: &Decomposition, order: u32) -> Option<NonCharacterWitness> {
    match d {
        Decomposition::Character { .. } => None,
        Decomposition::NotCharacter { index, value, .. } => Some(NonCharacterWitness {
            function: name.to_string(),
            values: strings_at(&f.values, order),
            irreducible: *index,
            inner_product: exact_string(value, crate::exact::lcm(order, value.order())),
        }),
    }
}

impl LefschetzReport {
    /// Re-derive the decompositions of tV and v from the table in the report.
    pub fn verify(&self) -> Result<(), VerifyError> {
        let t = self.table.to_table()?;
        t.verify_orthogonality().map_err(|e| VerifyError::Mismatch(e.to_string()))?;
        let tv = ClassFunction::new(parse_vector(&self.tv, self.value_order)?);
        let v = ClassFunction::new(parse_vector(&self.v, self.value_order)?);
        let dtv = is_character(&tv, &t).map_err(|e| VerifyError::Mismatch(e.to_string()))?;
        let dv = is_character(&v, &t).map_err(|e| VerifyError::Mismatch(e.to_string()))?;
        if dtv.multiplicities().map(<[u64]>::to_vec) != self.tv_multiplicities {
            return mismatch("tV decomposition");
        }
        if dv.multiplicities().map(<[u64]>::to_vec) != self.v_multiplicities {
            return mismatch("v decomposition");
        }
        let four = v.values.first().is_some_and(|x| *x == Cyclotomic::from_int(1, 4));
        let pass = self.guard_failures.is_empty() && dtv.is_character() && dv.is_character() && four;
        if pass != self.pass {
            return mismatch("verdict");
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstituentSummary {
    pub character: usize,
    pub degree: u64,
    pub v_multiplicity: u64,
    pub multiplicity: usize,
    /// `blocks[j][a]`: the a-th basis vector of the j-th copy, as Sym²
    /// coefficients in the lexicographic monomial order.
    pub blocks: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberReport {
    /// Names of the parameters when the member comes from a displayed
    /// family, otherwise empty.
    pub parameter_names: Vec<String>,
    pub params: Vec<String>,
    pub forms: Vec<String>,
    pub coefficients: Vec<Vec<String>>,
    pub degenerate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadricsReport {
    pub group: String,
    pub shape: String,
    pub parameter_count: usize,
    pub parameter_dimension: usize,
    /// Order of the root of unity `z` in every exact string below.
    pub value_order: u32,
    pub constituents: Vec<ConstituentSummary>,
    pub member: Option<MemberReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmptinessData {
    pub empty: bool,
    pub leading_terms: Vec<String>,
    pub pure_powers: Vec<(usize, u32)>,
    pub unit_charts: Vec<usize>,
    pub witness: Option<Vec<u32>>,
    pub nonunit_chart: Option<usize>,
}

impl From<&Emptiness> for EmptinessData {
    fn from(e: &Emptiness) -> Self {
        match e {
            Emptiness::Empty(c) => EmptinessData {
                empty: true,
                leading_terms: c.leading_terms.clone(),
                pure_powers: c.pure_powers.clone(),
                unit_charts: c.charts.iter().filter(|x| x.unit).map(|x| x.chart).collect(),
                witness: None,
                nonunit_chart: None,
            },
            Emptiness::NonEmpty { witness, chart, leading_terms } => EmptinessData {
                empty: false,
                leading_terms: leading_terms.clone(),
                pure_powers: Vec::new(),
                unit_charts: Vec::new(),
                witness: witness.clone(),
                nonunit_chart: *chart,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenData {
    pub eigenvalue: String,
    pub basis: Vec<Vec<String>>,
    pub restricted: Vec<PolyData>,
    pub outcome: EmptinessData,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassData {
    pub class: usize,
    pub element: usize,
    pub order: usize,
    pub matrix: Vec<Vec<String>>,
    pub eigenspaces: Vec<EigenData>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictData {
    pub free: bool,
    pub class: Option<usize>,
    pub eigenvalue: Option<String>,
    pub witness: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreenessReport {
    pub group: String,
    pub prime: u64,
    pub embedding_order: u32,
    pub embedding_root: u64,
    pub params: Vec<u64>,
    pub forms: Vec<PolyData>,
    pub classes: Vec<ClassData>,
    pub verdict: VerdictData,
    pub note: String,
}

impl FreenessReport {
    pub fn new(group: &str, cert: &FreenessCertificate, matrices: &[CycMatrix]) -> Self {
        let n = matrices.first().map_or(8, CycMatrix::rows);
        let ring = PolyRing::new(n, cert.prime);
        let order = cert.embedding_order;
        let eigen = |e: &EigenCertificate| {
            let sub = PolyRing::with_prefix(e.basis.len(), cert.prime, "y");
            EigenData {
                eigenvalue: exact_string(&e.eigenvalue, order),
                basis: e.basis.iter().map(|v| strings_at(v, order)).collect(),
                restricted: e.restricted.iter().map(|f| PolyData::new(f, &sub)).collect(),
                outcome: (&e.outcome).into(),
            }
        };
        let classes = cert
            .classes
            .iter()
            .zip(matrices)
            .map(|(c, m)| ClassData {
                class: c.class,
                element: c.element,
                order: c.order,
                matrix: matrix_strings(m, order),
                eigenspaces: c.eigenspaces.iter().map(eigen).collect(),
            })
            .collect();
        let verdict = match &cert.verdict {
            FreenessVerdict::Free => VerdictData { free: true, class: None, eigenvalue: None, witness: None },
            FreenessVerdict::NotFree { class, eigenvalue, witness } => VerdictData {
                free: false,
                class: Some(*class),
                eigenvalue: Some(exact_string(eigenvalue, order)),
                witness: witness.clone(),
            },
        };
        FreenessReport {
            group: group.to_string(),
            prime: cert.prime,
            embedding_order: cert.embedding_order,
            embedding_root: cert.embedding_root,
            params: cert.params.clone(),
            forms: cert.forms.iter().map(|f| PolyData::new(f, &ring)).collect(),
            classes,
            verdict,
            note: SEMICONTINUITY_NOTE.to_string(),
        }
    }

    /// Check every eigenbasis against its matrix, re-restrict the forms,
    /// rerun the emptiness test and confirm the verdict.
    pub fn verify(&self) -> Result<(), VerifyError> {
        let order = self.embedding_order;
        let emb = Embedding::new(self.prime, order, self.embedding_root)?;
        let p = self.prime as u32;
        let forms: Vec<Poly> = self.forms.iter().map(|f| f.to_poly(p)).collect();
        let mut first_bad = None;
        for c in &self.classes {
            let m = parse_matrix(&c.matrix, order)?;
            let n = m.rows();
            let mt = m.transpose();
            let mut dim = 0;
            for e in &c.eigenspaces {
                let lam = Cyclotomic::parse(&e.eigenvalue, order)?;
                let basis: Vec<Vec<Cyclotomic>> =
                    e.basis.iter().map(|v| parse_vector(v, order)).collect::<Result<_, _>>()?;
                for v in &basis {
                    let want: Vec<Cyclotomic> = v.iter().map(|x| x * &lam).collect();
                    if mt.apply(v) != want {
                        return mismatch(format!("class {}: basis vector is not an eigenvector", c.class));
                    }
                }
                let fb: Vec<Vec<PrimeFieldElem>> = basis
                    .iter()
                    .map(|v| v.iter().map(|x| emb.apply(x)).collect::<Result<_, _>>())
                    .collect::<Result<_, _>>()?;
                if rank(&fb) != basis.len() {
                    return mismatch(format!("class {}: eigenbasis is dependent mod p", c.class));
                }
                dim += basis.len();
                let restricted = restrict_forms(&forms, &fb, p);
                let stored: Vec<Poly> = e.restricted.iter().map(|f| f.to_poly(p)).collect();
                if restricted != stored {
                    return mismatch(format!("class {}: restricted forms differ", c.class));
                }
                let ring = PolyRing::with_prefix(basis.len(), self.prime, "y");
                let out = EmptinessData::from(&projective_empty(&restricted, &ring));
                if out != e.outcome {
                    return mismatch(format!("class {}: emptiness outcome differs", c.class));
                }
                if !out.empty && first_bad.is_none() {
                    first_bad = Some(c.class);
                }
            }
            if dim != n {
                return mismatch(format!("class {}: eigenspaces span {dim} of {n} dimensions", c.class));
            }
        }
        if self.verdict.free != first_bad.is_none() || self.verdict.class != first_bad {
            return mismatch("verdict");
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointData {
    /// Each coordinate a + b·w as [a, b].
    pub coords: Vec<[u64; 2]>,
    pub zero_pattern: Vec<usize>,
    pub odp: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternCount {
    pub pattern: Vec<usize>,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PencilReport {
    pub r1_part: Vec<String>,
    pub r2_part: Vec<String>,
    pub incidence: bool,
    pub degenerate: bool,
    pub violating_point: Option<usize>,
    /// A fixed generic member is carried to itself by every generator.
    pub invariance: bool,
    /// The pencil is carried to itself as a family.
    pub family_invariance: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub group: String,
    pub mode: String,
    pub prime: u64,
    pub nonresidue: u64,
    pub forms: Vec<PolyData>,
    pub geometric_count: usize,
    pub unresolved: usize,
    pub point_count: usize,
    pub all_odp: bool,
    pub patterns: Vec<PatternCount>,
    pub points: Vec<PointData>,
    /// Orbit sizes under the group generators, when the set is closed.
    pub orbit_sizes: Option<Vec<usize>>,
    pub pencil: Option<PencilReport>,
}

impl CensusReport {
    pub fn new(group: &str, census: &SingularCensus, forms: &[Poly], orbits: Option<Vec<usize>>) -> Self {
        let ring = PolyRing::new(8, census.prime);
        CensusReport {
            group: group.to_string(),
            mode: match census.mode {
                crate::geometry::CensusMode::Diagonal => "diagonal",
                crate::geometry::CensusMode::Groebner => "groebner",
            }
            .to_string(),
            prime: census.prime,
            nonresidue: census.nonresidue,
            forms: forms.iter().map(|f| PolyData::new(f, &ring)).collect(),
            geometric_count: census.geometric_count,
            unresolved: census.unresolved,
            point_count: census.points.len(),
            all_odp: census.all_odp(),
            patterns: census.patterns().into_iter().map(|(pattern, count)| PatternCount { pattern, count }).collect(),
            points: census
                .points
                .iter()
                .map(|pt| PointData {
                    coords: pt.coords.iter().map(|c| [c.a, c.b]).collect(),
                    zero_pattern: pt.zero_pattern.clone(),
                    odp: pt.odp,
                })
                .collect(),
            orbit_sizes: orbits,
            pencil: None,
        }
    }

    /// Each point lies on the forms, is singular, and has the recorded zero
    /// pattern and node verdict; counts agree with the point list.
    pub fn verify(&self) -> Result<(), VerifyError> {
        let p = self.prime as u32;
        let forms: Vec<Poly> = self.forms.iter().map(|f| f.to_poly(p)).collect();
        for (i, pt) in self.points.iter().enumerate() {
            let coords: Vec<Fp2Elem> =
                pt.coords.iter().map(|&[a, b]| Fp2Elem::new(a, b, self.prime, self.nonresidue)).collect();
            if forms.iter().any(|f| !f.eval(&coords).is_zero()) {
                return mismatch(format!("point {i} is not on the variety"));
            }
            let pattern: Vec<usize> = (0..coords.len()).filter(|&k| coords[k].is_zero()).map(|k| k + 1).collect();
            if pattern != pt.zero_pattern {
                return mismatch(format!("point {i}: zero pattern"));
            }
            let odp = match odp_test(&coords, &forms) {
                Ok(r) => Some(r.is_odp),
                Err(crate::geometry::GeometryError::JacobianRank(r)) if r == 4 => {
                    return mismatch(format!("point {i} is a smooth point"));
                }
                Err(_) => None,
            };
            if odp != pt.odp {
                return mismatch(format!("point {i}: node verdict"));
            }
        }
        if self.point_count != self.points.len() || self.all_odp != self.points.iter().all(|p| p.odp == Some(true)) {
            return mismatch("point summary");
        }
        if self.patterns.iter().map(|c| c.count).sum::<usize>() != self.points.len() {
            return mismatch("pattern counts");
        }
        if self.geometric_count != self.points.len() + self.unresolved {
            return mismatch("geometric count");
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Allowable,
    SemiAllowable,
    Rejected,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Classification::Allowable => "allowable",
            Classification::SemiAllowable => "semi-allowable",
            Classification::Rejected => "rejected",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullReport {
    pub group: String,
    pub classification: Classification,
    /// The stage that decided the classification.
    pub decided_by: String,
    pub reason: String,
    pub closure: ClosureReport,
    pub lefschetz: LefschetzReport,
    pub quadrics: Option<QuadricsReport>,
    pub freeness: Option<FreenessReport>,
    pub singularities: Option<CensusReport>,
}

impl FullReport {
    /// Re-verify every certificate the report carries.
    pub fn verify(&self) -> Result<(), VerifyError> {
        self.lefschetz.verify()?;
        if let Some(f) = &self.freeness {
            f.verify()?;
        }
        if let Some(c) = &self.singularities {
            c.verify()?;
        }
        Ok(())
    }
}

pub fn to_json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}
