use super::census::SingularCensus;
use super::freeness::embed_forms;
use super::GeometryError;
use crate::exact::matrix::span_rank;
use crate::exact::{lcm, CycMatrix, Cyclotomic, Embedding, Fp2Elem};
use crate::quadrics::QuadraticForm;

/// f_i = r1·a_i + r2·b_i for a symbolic parameter (r1 : r2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorPencil {
    pub r1_part: [QuadraticForm; 2],
    pub r2_part: [QuadraticForm; 2],
}

impl DivisorPencil {
    /// Split a pencil given as a function of (r1, r2), linear in both.
    pub fn from_builder(f: impl Fn(&Cyclotomic, &Cyclotomic) -> [QuadraticForm; 2]) -> Self {
        let (one, zero) = (Cyclotomic::one(1), Cyclotomic::zero(1));
        DivisorPencil { r1_part: f(&one, &zero), r2_part: f(&zero, &one) }
    }

    pub fn forms(&self, r1: &Cyclotomic, r2: &Cyclotomic) -> [QuadraticForm; 2] {
        let f = |i: usize| {
            let a = self.r1_part[i].gram.scale(r1);
            let b = self.r2_part[i].gram.scale(r2);
            QuadraticForm { gram: a.add(&b) }
        };
        [f(0), f(1)]
    }

    pub fn is_zero(&self) -> bool {
        self.parts().iter().all(|q| q.iter().all(Cyclotomic::is_zero))
    }

    fn parts(&self) -> Vec<Vec<Cyclotomic>> {
        self.r1_part.iter().chain(&self.r2_part).map(QuadraticForm::coeffs).collect()
    }

    fn order(&self) -> u32 {
        self.r1_part.iter().chain(&self.r2_part).fold(1, |m, q| lcm(m, q.gram.order()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub holds: bool,
    /// The pencil is identically zero.
    pub degenerate: bool,
    /// Index of the first census point where some part does not vanish.
    pub violating_point: Option<usize>,
}

/// Whether every census point kills the r1-part and r2-part of both forms.
pub fn divisor_incidence(pencil: &DivisorPencil, census: &SingularCensus) -> Result<Incidence, GeometryError> {
    if pencil.is_zero() {
        return Ok(Incidence { holds: true, degenerate: true, violating_point: None });
    }
    let order = pencil.order();
    let emb = Embedding::standard(census.prime, order)?;
    let n = pencil.r1_part[0].gram.rows();
    let forms = embed_forms(&pencil.parts(), n, &emb)?;
    let violating = census
        .points
        .iter()
        .position(|pt| forms.iter().any(|f| !crate::exact::FieldElem::is_zero(&f.eval::<Fp2Elem>(&pt.coords))));
    Ok(Incidence { holds: violating.is_none(), degenerate: false, violating_point: violating })
}

fn stacked(q: &[QuadraticForm]) -> Vec<Vec<Cyclotomic>> {
    q.iter().map(QuadraticForm::coeffs).collect()
}

/// Whether every generator carries span{f1, f2} to itself at a generic
/// member (r1 : r2) = (1 : t). The 3×3 minors of [f1; f2; g·f_i] have
/// degree at most 3 in t, so vanishing at four values of t is an identity.
pub fn pencil_invariance(generators: &[CycMatrix], pencil: &DivisorPencil) -> bool {
    if pencil.is_zero() {
        return true;
    }
    let order = generators.iter().fold(pencil.order(), |m, g| lcm(m, g.order()));
    let one = Cyclotomic::one(1);
    let members: Vec<[QuadraticForm; 2]> =
        (1..=4).map(|t| pencil.forms(&one, &Cyclotomic::from_int(1, t))).collect();
    if members.iter().all(|f| span_rank(&stacked(f), order) < 2) {
        return false;
    }
    generators.iter().all(|g| {
        members.iter().all(|f| {
            let base = stacked(f);
            f.iter().all(|q| {
                let mut rows = base.clone();
                rows.push(q.transform(g).coeffs());
                span_rank(&rows, order) <= 2
            })
        })
    })
}

/// Whether every generator maps the pencil to itself as a family: the span
/// of the four parts is preserved, so members are permuted.
pub fn pencil_family_invariance(generators: &[CycMatrix], pencil: &DivisorPencil) -> bool {
    let parts = pencil.parts();
    let order = generators.iter().fold(pencil.order(), |m, g| lcm(m, g.order()));
    let r = span_rank(&parts, order);
    generators.iter().all(|g| {
        pencil.r1_part.iter().chain(&pencil.r2_part).all(|q| {
            let mut rows = parts.clone();
            rows.push(q.transform(g).coeffs());
            span_rank(&rows, order) == r
        })
    })
}
