use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::eigen::{eigenspaces, element_order};
use super::emptiness::{projective_empty, Emptiness};
use super::poly::{quadric_from_coeffs, Mono, Poly, PolyRing};
use super::GeometryError;
use crate::exact::{lcm, Cyclotomic, Embedding, PrimeFieldElem};
use crate::groups::{conjugacy_classes, coset_map, quotient_by_central, scalar_subgroup, MatrixGroup};
use crate::quadrics::QuadricFamily;

/// Recorded in every certificate.
pub const SEMICONTINUITY_NOTE: &str = "emptiness over F_p at these parameters implies emptiness at generic \
characteristic-zero parameters by semicontinuity of fibre dimension";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenCertificate {
    pub eigenvalue: Cyclotomic,
    pub basis: Vec<Vec<Cyclotomic>>,
    /// The quadrics restricted to the eigenspace, in variables y1..yk.
    pub restricted: Vec<Poly>,
    pub outcome: Emptiness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCertificate {
    /// Index of the class in the projective quotient.
    pub class: usize,
    /// Element index of the matrix representative.
    pub element: usize,
    pub order: usize,
    pub eigenspaces: Vec<EigenCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FreenessVerdict {
    Free,
    NotFree { class: usize, eigenvalue: Cyclotomic, witness: Option<Vec<u32>> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessCertificate {
    pub prime: u64,
    pub embedding_order: u32,
    pub embedding_root: u64,
    pub params: Vec<u64>,
    pub forms: Vec<Poly>,
    pub classes: Vec<ClassCertificate>,
    pub verdict: FreenessVerdict,
}

impl FreenessCertificate {
    pub fn is_free(&self) -> bool {
        self.verdict == FreenessVerdict::Free
    }
}

/// Outcome over several parameter samples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FreenessSummary {
    /// Free at every sample.
    Free,
    /// Free at some samples; the listed samples hit a non-generic locus.
    FreeWithNonGenericHits(Vec<usize>),
    /// Not free at any sample.
    StructurallyNotFree,
}

/// `count` parameters uniform in [1, p).
pub fn random_parameters(count: usize, prime: u64, rng: &mut ChaCha8Rng) -> Vec<u64> {
    (0..count).map(|_| rng.gen_range(1..prime)).collect()
}

/// Quadrics (coefficient vectors on the monomial basis) reduced mod p.
pub fn embed_forms(coeffs: &[Vec<Cyclotomic>], n: usize, emb: &Embedding) -> Result<Vec<Poly>, GeometryError> {
    let p = emb.prime as u32;
    coeffs
        .iter()
        .map(|c| {
            let v: Vec<PrimeFieldElem> = c.iter().map(|x| emb.apply(x)).collect::<Result<_, _>>()?;
            Ok(quadric_from_coeffs(n, &v, p))
        })
        .collect()
}

/// Substitute x = Σ_a y_a·basis[a] into each form.
pub fn restrict_forms(forms: &[Poly], basis: &[Vec<PrimeFieldElem>], p: u32) -> Vec<Poly> {
    let n = basis[0].len();
    let k = basis.len();
    let linear: Vec<Poly> = (0..n)
        .map(|i| {
            let terms = (0..k).map(|a| (Mono::var(a), basis[a][i].value as u32)).filter(|t| t.1 != 0).collect();
            Poly::from_terms(terms, p)
        })
        .collect();
    forms
        .iter()
        .map(|f| {
            let mut acc = Poly::zero();
            for &(m, c) in &f.terms {
                let mut t = Poly::constant(c);
                for (i, lin) in linear.iter().enumerate() {
                    for _ in 0..m.exp(i) {
                        t = t.mul(lin, p);
                    }
                }
                acc = acc.add(&t, p);
            }
            acc
        })
        .collect()
}

/// One matrix representative (element index) per nontrivial conjugacy class
/// of the projective quotient G/Z, Z the scalar subgroup.
pub fn projective_class_representatives(g: &MatrixGroup) -> Result<Vec<(usize, usize)>, GeometryError> {
    let fg = g.group();
    let cd = conjugacy_classes(fg);
    let ext = scalar_subgroup(g, &cd)?;
    let q = quotient_by_central(fg, &ext.scalar_elements)?;
    let coset = coset_map(fg, &ext.scalar_elements);
    let mut least = vec![usize::MAX; q.order()];
    for (x, &c) in coset.iter().enumerate() {
        if least[c] == usize::MAX {
            least[c] = x;
        }
    }
    let qcd = conjugacy_classes(&q);
    Ok(qcd
        .representatives
        .iter()
        .enumerate()
        .filter(|&(_, &r)| r != q.identity())
        .map(|(c, &r)| (c, least[r]))
        .collect())
}

/// Fixed loci of every nontrivial projective class against the member
/// spanned by `member` (exact quadric coefficient vectors).
pub fn freeness_check(
    g: &MatrixGroup,
    member: &[Vec<Cyclotomic>],
    params: &[u64],
    prime: u64,
) -> Result<FreenessCertificate, GeometryError> {
    let n = g.dim();
    let exponent = conjugacy_classes(g.group()).exponent as u32;
    let order = member.iter().flatten().fold(lcm(g.field_order(), exponent), |m, c| lcm(m, c.order()));
    if (prime - 1) % order as u64 != 0 {
        return Err(GeometryError::BadPrime { prime, order });
    }
    let emb = Embedding::standard(prime, order)?;
    let p = prime as u32;
    let forms = embed_forms(member, n, &emb)?;
    let mut classes = Vec::new();
    let mut verdict = FreenessVerdict::Free;
    for (class, element) in projective_class_representatives(g)? {
        let m = g.element(element);
        let o = element_order(m)?;
        let mut certs = Vec::new();
        for (lam, basis) in eigenspaces(&m.transpose())? {
            let fb: Vec<Vec<PrimeFieldElem>> = basis
                .iter()
                .map(|v| v.iter().map(|x| emb.apply(x)).collect::<Result<_, _>>())
                .collect::<Result<_, _>>()?;
            let restricted = restrict_forms(&forms, &fb, p);
            let ring = PolyRing::with_prefix(basis.len(), prime, "y");
            let outcome = projective_empty(&restricted, &ring);
            if let (FreenessVerdict::Free, Emptiness::NonEmpty { witness, .. }) = (&verdict, &outcome) {
                verdict = FreenessVerdict::NotFree { class, eigenvalue: lam.clone(), witness: witness.clone() };
            }
            certs.push(EigenCertificate { eigenvalue: lam, basis, restricted, outcome });
        }
        classes.push(ClassCertificate { class, element, order: o, eigenspaces: certs });
    }
    Ok(FreenessCertificate {
        prime,
        embedding_order: order,
        embedding_root: emb.root,
        params: params.to_vec(),
        forms,
        classes,
        verdict,
    })
}

/// Run [`freeness_check`] on `samples` random members of `family`.
pub fn freeness_over_samples(
    g: &MatrixGroup,
    family: &QuadricFamily,
    prime: u64,
    seed: u64,
    samples: usize,
) -> Result<(FreenessSummary, Vec<FreenessCertificate>), GeometryError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut certs = Vec::new();
    for _ in 0..samples {
        let params = random_parameters(family.parameter_count(), prime, &mut rng);
        let exact: Vec<Cyclotomic> = params.iter().map(|&v| Cyclotomic::from_int(family.order, v as i64)).collect();
        let member = family.specialize(&exact).map_err(|_| GeometryError::FormCount { expected: 4, found: 0 })?;
        certs.push(freeness_check(g, &member.coeffs, &params, prime)?);
    }
    let bad: Vec<usize> = certs.iter().enumerate().filter(|(_, c)| !c.is_free()).map(|(i, _)| i).collect();
    let summary = if bad.is_empty() {
        FreenessSummary::Free
    } else if bad.len() == certs.len() {
        FreenessSummary::StructurallyNotFree
    } else {
        FreenessSummary::FreeWithNonGenericHits(bad)
    };
    Ok((summary, certs))
}
