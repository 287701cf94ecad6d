use super::{isotypic_component, sym2_apply, QuadraticForm};
use crate::chartab::CharacterTable;
use crate::exact::matrix::{rref_cyc, span_basis, span_rank};
use crate::exact::{lcm, Cyclotomic, Rational};
use crate::groups::{ConjugacyData, MatrixGroup};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("isotypic component of character {character} has dimension {found}, expected {expected}")]
    Inconsistent { character: usize, found: usize, expected: usize },
    #[error("could not isolate a multiplicity space for character {0}")]
    SliceFailed(usize),
    #[error("character {character} occurs {wanted} times in the quadric character but only {available} times in Sym²")]
    NotEnoughCopies { character: usize, wanted: u64, available: usize },
    #[error("expected {expected} parameters, got {found}")]
    ParameterCount { expected: usize, found: usize },
    #[error("parameters for constituent {0} do not define a point of the parameter space")]
    DegenerateParameters(usize),
}

/// One irreducible constituent χ of the quadric character, occurring
/// `v_multiplicity` times there and `multiplicity` times in Sym².
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constituent {
    pub character: usize,
    pub degree: u64,
    pub v_multiplicity: u64,
    pub multiplicity: usize,
    /// Basis s_1..s_m of u₀ ⊗ C^m for a fixed vector u₀ of the irreducible.
    pub slice: Vec<Vec<Cyclotomic>>,
    /// Group elements g_a with ρ(g_a)·s_1 a basis of the first block.
    pub orbit_elements: Vec<usize>,
    /// `blocks[j]` = ρ(g_a)·s_j for each a; compatible bases of the copies.
    pub blocks: Vec<Vec<Vec<Cyclotomic>>>,
}

impl Constituent {
    /// (k, m): this constituent is parameterized by Gr(k, m).
    pub fn shape(&self) -> (usize, usize) {
        (self.v_multiplicity as usize, self.multiplicity)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricFamily {
    pub n_vars: usize,
    pub order: u32,
    pub constituents: Vec<Constituent>,
    /// Images ρ(g_a)·(Σ t_j s_j) need the group matrices.
    orbit_matrices: Vec<Vec<crate::exact::CycMatrix>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializedMember {
    pub forms: Vec<QuadraticForm>,
    pub coeffs: Vec<Vec<Cyclotomic>>,
    /// Some parameter coordinate vanishes: the member may be non-generic.
    pub degenerate: bool,
}

impl QuadricFamily {
    /// Number of parameters expected by [`QuadricFamily::specialize`].
    pub fn parameter_count(&self) -> usize {
        self.constituents.iter().map(|c| c.shape().0 * c.shape().1).sum()
    }

    /// Σ k(m−k) over constituents; Σ (m−1) for the projective case.
    pub fn parameter_dimension(&self) -> usize {
        self.constituents.iter().map(|c| c.shape().0 * (c.shape().1 - c.shape().0)).sum()
    }

    /// Human-readable shape such as `P^1 x P^1` or `Gr(2,5)`.
    pub fn shape_string(&self) -> String {
        self.constituents
            .iter()
            .map(|c| match c.shape() {
                (1, m) => format!("P^{}", m - 1),
                (k, m) => format!("Gr({k},{m})"),
            })
            .collect::<Vec<_>>()
            .join(" x ")
    }

    /// The 4-dimensional member at the given parameters: per constituent,
    /// k·m coordinates (k points of C^m).
    pub fn specialize(&self, params: &[Cyclotomic]) -> Result<SpecializedMember, FamilyError> {
        let expected = self.parameter_count();
        if params.len() != expected {
            return Err(FamilyError::ParameterCount { expected, found: params.len() });
        }
        let mut vectors: Vec<Vec<Cyclotomic>> = Vec::new();
        let mut offset = 0;
        let mut degenerate = false;
        for (ci, c) in self.constituents.iter().enumerate() {
            let (k, m) = c.shape();
            let chunk = &params[offset..offset + k * m];
            offset += k * m;
            degenerate |= chunk.iter().any(Cyclotomic::is_zero);
            let points: Vec<Vec<Cyclotomic>> = chunk.chunks(m).map(<[Cyclotomic]>::to_vec).collect();
            if span_rank(&points, self.order) != k {
                return Err(FamilyError::DegenerateParameters(ci));
            }
            for t in &points {
                let seed = combine(&c.slice, t, self.order);
                for mat in &self.orbit_matrices[ci] {
                    vectors.push(sym2_apply(mat, &seed));
                }
            }
        }
        let forms = vectors.iter().map(|v| QuadraticForm::from_coeffs(self.n_vars, v)).collect();
        Ok(SpecializedMember { forms, coeffs: vectors, degenerate })
    }

    /// Recover the parameters of a member given by spanning vectors: for each
    /// constituent, intersect the span with the slice. `None` when the span is
    /// not a member of the family.
    pub fn parameters_of(&self, span: &[Vec<Cyclotomic>]) -> Option<Vec<Cyclotomic>> {
        let mut params = Vec::new();
        for c in &self.constituents {
            let (k, m) = c.shape();
            let coords = intersection_coordinates(span, &c.slice, self.order);
            if coords.len() != k {
                return None;
            }
            for v in coords {
                debug_assert_eq!(v.len(), m);
                params.extend(v);
            }
        }
        let member = self.specialize(&params).ok()?;
        crate::exact::matrix::same_span(&member.coeffs, span, self.order).then_some(params)
    }
}

fn combine(basis: &[Vec<Cyclotomic>], t: &[Cyclotomic], order: u32) -> Vec<Cyclotomic> {
    let dim = basis[0].len();
    let mut out = vec![Cyclotomic::zero(order); dim];
    for (b, c) in basis.iter().zip(t) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(b) {
            if !x.is_zero() {
                *o += &(c * x);
            }
        }
    }
    out
}

/// Coordinates (in `basis_b`) of a basis of span(a) ∩ span(b), row-reduced.
fn intersection_coordinates(a: &[Vec<Cyclotomic>], basis_b: &[Vec<Cyclotomic>], order: u32) -> Vec<Vec<Cyclotomic>> {
    let dim = basis_b[0].len();
    let (na, nb) = (a.len(), basis_b.len());
    // columns: a_1..a_na, b_1..b_nb; solve Σ α a − Σ β b = 0
    let mut rows: Vec<Vec<Cyclotomic>> = (0..dim)
        .map(|r| a.iter().map(|v| v[r].clone()).chain(basis_b.iter().map(|v| -&v[r])).collect())
        .collect();
    let piv = rref_cyc(&mut rows, order);
    let kernel = crate::exact::matrix::kernel_from_rref(&rows, &piv, na + nb, order);
    let betas: Vec<Vec<Cyclotomic>> = kernel.into_iter().map(|v| v[na..].to_vec()).collect();
    span_basis(&betas, order)
}

/// Multiplicity of the eigenvalue ζ_o^k of element h on the representation
/// with character χ (values per class).
fn eigen_multiplicity(g: &MatrixGroup, cd: &ConjugacyData, chi: &[Cyclotomic], h: usize, o: usize, k: usize) -> Rational {
    let fg = g.group();
    let mut acc = Cyclotomic::zero(1);
    let mut x = 0usize;
    for l in 0..o {
        let w = Cyclotomic::root_of_unity(o as u32, -((k * l) as i64));
        acc += &(&chi[cd.class_of[x]] * &w);
        x = fg.mul(x, h);
    }
    acc.as_rational().cloned().unwrap_or_default() / Rational::from_integer((o as i64).into())
}

/// Isolate u₀ ⊗ C^m inside the isotypic component by intersecting with
/// eigenspaces of group elements.
fn extract_slice(
    g: &MatrixGroup,
    cd: &ConjugacyData,
    t: &CharacterTable,
    chi: usize,
    component: &[Vec<Cyclotomic>],
    order: u32,
) -> Result<Vec<Vec<Cyclotomic>>, FamilyError> {
    let d = t.degrees[chi] as usize;
    let m = component.len() / d;
    let mut s = component.to_vec();
    let values = &t.irreducibles[chi].values;
    for h in 1..g.order() {
        if s.len() == m {
            break;
        }
        if g.element(h).scalar_value().is_some() {
            continue;
        }
        let o = cd.element_orders[cd.class_of[h]];
        for k in 0..o {
            let mu = eigen_multiplicity(g, cd, values, h, o, k);
            if mu == Rational::from_integer(0.into()) || mu == Rational::from_integer((d as i64).into()) {
                continue;
            }
            let lam = Cyclotomic::root_of_unity(o as u32, k as i64);
            let images: Vec<Vec<Cyclotomic>> = s
                .iter()
                .map(|v| {
                    let img = sym2_apply(g.element(h), v);
                    img.iter().zip(v).map(|(a, b)| a - &(&lam * b)).collect()
                })
                .collect();
            // kernel of the columns `images`
            let dim = images[0].len();
            let mut rows: Vec<Vec<Cyclotomic>> =
                (0..dim).map(|r| images.iter().map(|v| v[r].clone()).collect()).collect();
            let ord = lcm(order, lam.order());
            let piv = rref_cyc(&mut rows, ord);
            let kernel = crate::exact::matrix::kernel_from_rref(&rows, &piv, s.len(), ord);
            if !kernel.is_empty() && kernel.len() < s.len() {
                let next: Vec<Vec<Cyclotomic>> = kernel.iter().map(|c| combine(&s, c, ord)).collect();
                s = span_basis(&next, ord);
                break;
            }
        }
    }
    if s.len() != m {
        return Err(FamilyError::SliceFailed(chi));
    }
    Ok(s)
}

/// Build the family from the multiplicities of the quadric character.
pub fn equivariant_quadric_family(
    g: &MatrixGroup,
    cd: &ConjugacyData,
    t: &CharacterTable,
    v_multiplicities: &[u64],
) -> Result<QuadricFamily, FamilyError> {
    let order = lcm(t.conductor, g.field_order());
    let mut constituents = Vec::new();
    let mut orbit_matrices = Vec::new();
    for (chi, &k) in v_multiplicities.iter().enumerate() {
        if k == 0 {
            continue;
        }
        let d = t.degrees[chi] as usize;
        let component = isotypic_component(g, cd, t, chi);
        if component.len() % d != 0 {
            return Err(FamilyError::Inconsistent { character: chi, found: component.len(), expected: d });
        }
        let m = component.len() / d;
        if (m as u64) < k {
            return Err(FamilyError::NotEnoughCopies { character: chi, wanted: k, available: m });
        }
        let slice = extract_slice(g, cd, t, chi, &component, order)?;
        let mut orbit_elements = Vec::new();
        let mut images: Vec<Vec<Cyclotomic>> = Vec::new();
        for (idx, mat) in g.elements().iter().enumerate() {
            if orbit_elements.len() == d {
                break;
            }
            let img = sym2_apply(mat, &slice[0]);
            let mut trial = images.clone();
            trial.push(img.clone());
            if span_rank(&trial, order) > images.len() {
                images.push(img);
                orbit_elements.push(idx);
            }
        }
        let mats: Vec<_> = orbit_elements.iter().map(|&i| g.element(i).clone()).collect();
        let blocks: Vec<Vec<Vec<Cyclotomic>>> =
            slice.iter().map(|s| mats.iter().map(|mat| sym2_apply(mat, s)).collect()).collect();
        let all: Vec<Vec<Cyclotomic>> = blocks.iter().flatten().cloned().collect();
        let rank = span_rank(&all, order);
        if orbit_elements.len() != d || rank != d * m {
            return Err(FamilyError::Inconsistent { character: chi, found: rank, expected: d * m });
        }
        orbit_matrices.push(mats);
        constituents.push(Constituent {
            character: chi,
            degree: d as u64,
            v_multiplicity: k,
            multiplicity: m,
            slice,
            orbit_elements,
            blocks,
        });
    }
    Ok(QuadricFamily { n_vars: g.dim(), order, constituents, orbit_matrices })
}

/// Parameters of the member spanned by explicit quadrics, if it belongs to
/// the family.
pub fn displayed_parameters(family: &QuadricFamily, forms: &[QuadraticForm]) -> Option<Vec<Cyclotomic>> {
    let span: Vec<Vec<Cyclotomic>> = forms.iter().map(QuadraticForm::coeffs).collect();
    family.parameters_of(&span)
}
