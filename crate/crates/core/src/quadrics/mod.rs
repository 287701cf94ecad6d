//! Quadratic forms, the induced action on Sym², isotypic projection and the
//! equivariant family of four quadrics.

mod family;

pub use family::{equivariant_quadric_family, displayed_parameters, Constituent, FamilyError, QuadricFamily, SpecializedMember};

use crate::chartab::{CharacterTable, ClassFunction};
use crate::exact::matrix::span_basis;
use crate::exact::{lcm, CycMatrix, Cyclotomic, Rational};
use crate::groups::{ConjugacyData, MatrixGroup};

pub const N_VARS: usize = 8;

/// Index of the monomial x_i x_j (i ≤ j) in the lexicographic basis of
/// quadratic monomials in `n` variables.
pub fn monomial_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * n - i * (i + 1) / 2 + j
}

/// The lexicographic list of pairs (i, j), i ≤ j.
pub fn monomials(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

/// A quadric x ↦ xᵀ·gram·x. The coefficient of x_i x_j (i < j) is
/// 2·gram[i][j].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    pub gram: CycMatrix,
}

impl QuadraticForm {
    /// From coefficients on the monomial basis.
    pub fn from_coeffs(n: usize, coeffs: &[Cyclotomic]) -> Self {
        let order = coeffs.iter().fold(1, |m, c| lcm(m, c.order()));
        let mut gram = CycMatrix::zeros(n, n, order);
        let half = Rational::new(1.into(), 2.into());
        for (k, (i, j)) in monomials(n).into_iter().enumerate() {
            if i == j {
                gram.set(i, i, coeffs[k].clone());
            } else {
                let h = coeffs[k].scale(&half);
                gram.set(i, j, h.clone());
                gram.set(j, i, h);
            }
        }
        QuadraticForm { gram }
    }

    /// Coefficients on the monomial basis.
    pub fn coeffs(&self) -> Vec<Cyclotomic> {
        let n = self.gram.rows();
        let two = Rational::from_integer(2.into());
        monomials(n)
            .into_iter()
            .map(|(i, j)| {
                if i == j {
                    self.gram.get(i, i).clone()
                } else {
                    self.gram.get(i, j).scale(&two)
                }
            })
            .collect()
    }

    /// Build from (coefficient, i, j) terms with 1-based variable indices.
    pub fn from_terms(n: usize, order: u32, terms: &[(Cyclotomic, usize, usize)]) -> Self {
        let mut c = vec![Cyclotomic::zero(order); n * (n + 1) / 2];
        for (coef, i, j) in terms {
            c[monomial_index(n, i - 1, j - 1)] += coef;
        }
        Self::from_coeffs(n, &c)
    }

    /// Substitution x_i ↦ (image of x_i) under `m`: gram ↦ m·gram·mᵀ.
    pub fn transform(&self, m: &CycMatrix) -> Self {
        QuadraticForm { gram: m.mul(&self.gram).mul(&m.transpose()) }
    }

    /// Human-readable polynomial such as `(z^2)*x1*x2 + x3^2`.
    pub fn to_polynomial_string(&self) -> String {
        let n = self.gram.rows();
        let mut parts = Vec::new();
        for ((i, j), c) in monomials(n).into_iter().zip(self.coeffs()) {
            if c.is_zero() {
                continue;
            }
            let mono = if i == j { format!("x{}^2", i + 1) } else { format!("x{}*x{}", i + 1, j + 1) };
            parts.push(if c.is_one() { mono } else { format!("({c})*{mono}") });
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// Image of a coefficient vector under the Sym² action of `m`.
pub fn sym2_apply(m: &CycMatrix, coeffs: &[Cyclotomic]) -> Vec<Cyclotomic> {
    let n = m.rows();
    let order = lcm(m.order(), coeffs.iter().fold(1, |a, c| lcm(a, c.order())));
    let mut out = vec![Cyclotomic::zero(order); n * (n + 1) / 2];
    let cols: Vec<Vec<(usize, &Cyclotomic)>> = (0..n)
        .map(|j| (0..n).filter(|&r| !m.get(r, j).is_zero()).map(|r| (r, m.get(r, j))).collect())
        .collect();
    for (k, (i, j)) in monomials(n).into_iter().enumerate() {
        let c = &coeffs[k];
        if c.is_zero() {
            continue;
        }
        for &(r, a) in &cols[i] {
            let ca = c * a;
            for &(s, b) in &cols[j] {
                out[monomial_index(n, r, s)] += &(&ca * b);
            }
        }
    }
    out
}

/// The Sym² representation matrix of `m` on the monomial basis.
pub fn sym2_rep(m: &CycMatrix) -> CycMatrix {
    let n = m.rows();
    let dim = n * (n + 1) / 2;
    let mut out = CycMatrix::zeros(dim, dim, m.order());
    for k in 0..dim {
        let mut e = vec![Cyclotomic::zero(m.order()); dim];
        e[k] = Cyclotomic::one(m.order());
        for (r, v) in sym2_apply(m, &e).into_iter().enumerate() {
            if !v.is_zero() {
                out.set(r, k, v);
            }
        }
    }
    out
}

/// Trace of the Sym² action of each class representative.
pub fn sym2_trace_vector(g: &MatrixGroup, cd: &ConjugacyData) -> ClassFunction {
    ClassFunction::new(cd.representatives.iter().map(|&r| sym2_rep(g.element(r)).trace()).collect())
}

/// Trace of each class representative on V.
pub fn defining_character(g: &MatrixGroup, cd: &ConjugacyData) -> ClassFunction {
    ClassFunction::new(cd.representatives.iter().map(|&r| g.element(r).trace()).collect())
}

/// The projector (d/|G|) Σ conj(χ(g)) ρ(g) on Sym², as a dense matrix.
pub fn isotypic_projector(g: &MatrixGroup, cd: &ConjugacyData, t: &CharacterTable, chi: usize) -> CycMatrix {
    let n = g.dim();
    let dim = n * (n + 1) / 2;
    let order = lcm(t.conductor, g.field_order());
    let mut acc: Vec<Vec<Cyclotomic>> = vec![vec![Cyclotomic::zero(order); dim]; dim];
    let values = &t.irreducibles[chi].values;
    for (idx, m) in g.elements().iter().enumerate() {
        let w = values[cd.class_of[idx]].conj();
        if w.is_zero() {
            continue;
        }
        for (k, col) in acc.iter_mut().enumerate() {
            let mut e = vec![Cyclotomic::zero(g.field_order()); dim];
            e[k] = Cyclotomic::one(g.field_order());
            for (r, v) in sym2_apply(m, &e).into_iter().enumerate() {
                if !v.is_zero() {
                    col[r] += &(&w * &v);
                }
            }
        }
    }
    let s = Rational::new((t.degrees[chi] as i64).into(), (g.order() as i64).into());
    // acc holds columns; transpose into rows
    let rows = (0..dim).map(|r| (0..dim).map(|k| acc[k][r].scale(&s)).collect()).collect();
    CycMatrix::from_rows(order, rows).unwrap()
}

/// Exact basis (coefficient vectors) of the χ-isotypic part of Sym².
pub fn isotypic_component(g: &MatrixGroup, cd: &ConjugacyData, t: &CharacterTable, chi: usize) -> Vec<Vec<Cyclotomic>> {
    let p = isotypic_projector(g, cd, t, chi);
    let cols: Vec<Vec<Cyclotomic>> = p.transpose().to_rows();
    span_basis(&cols, p.order())
}

#[cfg(test)]
mod tests;
