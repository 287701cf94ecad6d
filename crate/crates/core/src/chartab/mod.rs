//! Character tables and class-function arithmetic.

mod dixon;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Signed;

pub use dixon::dixon_prime;

use crate::exact::{lcm, Cyclotomic, ExactError, Rational};
use crate::groups::{ConjugacyData, FiniteGroup};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChartabError {
    #[error("prime {0} is unusable (needs p ≡ 1 mod exponent and p > 2|G|)")]
    BadPrime(u64),
    #[error("eigenvector separation failed mod {0}")]
    SeparationFailed(u64),
    #[error("could not lift character values at class {class}")]
    LiftFailed { class: usize },
    #[error("computed table is not orthonormal")]
    NotOrthonormal,
    #[error("class function length {0} does not match {1} classes")]
    GroupMismatch(usize, usize),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// One cyclotomic value per conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    pub values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn new(values: Vec<Cyclotomic>) -> Self {
        ClassFunction { values }
    }

    pub fn from_ints(order: u32, v: &[i64]) -> Self {
        Self::new(v.iter().map(|&x| Cyclotomic::from_int(order, x)).collect())
    }

    pub fn zero(len: usize, order: u32) -> Self {
        Self::new(vec![Cyclotomic::zero(order); len])
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect())
    }

    /// Values as integers, when all are rational integers.
    pub fn as_integers(&self) -> Option<Vec<BigInt>> {
        self.values.iter().map(Cyclotomic::as_integer).collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.values.iter().map(ToString::to_string).collect()
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.values.iter().zip(&other.values) {
            match a.canonical_cmp(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    pub group_order: usize,
    pub class_sizes: Vec<usize>,
    pub inverse_classes: Vec<usize>,
    /// Values lie in Q(ζ_conductor); the conductor is the group exponent.
    pub conductor: u32,
    pub irreducibles: Vec<ClassFunction>,
    pub degrees: Vec<u64>,
    pub prime: u64,
}

/// Outcome of [`is_character`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    Character { multiplicities: Vec<u64> },
    NotCharacter { index: usize, value: Cyclotomic, inner_products: Vec<Cyclotomic> },
}

impl Decomposition {
    pub fn is_character(&self) -> bool {
        matches!(self, Decomposition::Character { .. })
    }
    pub fn multiplicities(&self) -> Option<&[u64]> {
        match self {
            Decomposition::Character { multiplicities } => Some(multiplicities),
            _ => None,
        }
    }
}

impl CharacterTable {
    fn new(group_order: usize, cd: &ConjugacyData, irreducibles: Vec<ClassFunction>, prime: u64) -> Self {
        let degrees = irreducibles
            .iter()
            .map(|c| c.values[0].as_integer().and_then(|d| u64::try_from(d).ok()).unwrap_or(0))
            .collect();
        CharacterTable {
            group_order,
            class_sizes: cd.class_sizes.clone(),
            inverse_classes: (0..cd.len()).map(|c| cd.inverse_class(c)).collect(),
            conductor: cd.exponent as u32,
            irreducibles,
            degrees,
            prime,
        }
    }

    /// Degree order, the trivial character first, ties by canonical values.
    fn sort(&mut self) {
        let mut idx: Vec<usize> = (0..self.irreducibles.len()).collect();
        let trivial = |c: &ClassFunction| c.values.iter().all(Cyclotomic::is_one);
        idx.sort_by(|&a, &b| {
            let (x, y) = (&self.irreducibles[a], &self.irreducibles[b]);
            self.degrees[a]
                .cmp(&self.degrees[b])
                .then(trivial(y).cmp(&trivial(x)))
                .then(x.canonical_cmp(y))
        });
        self.irreducibles = idx.iter().map(|&i| self.irreducibles[i].clone()).collect();
        self.degrees = idx.iter().map(|&i| self.degrees[i]).collect();
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    /// ⟨f, g⟩ = (1/|G|) Σ |C| f(C) conj(g(C)).
    pub fn inner_product(&self, f: &ClassFunction, g: &ClassFunction) -> Result<Cyclotomic, ChartabError> {
        let r = self.class_sizes.len();
        if f.len() != r {
            return Err(ChartabError::GroupMismatch(f.len(), r));
        }
        if g.len() != r {
            return Err(ChartabError::GroupMismatch(g.len(), r));
        }
        let order = f.values.iter().chain(&g.values).fold(self.conductor, |m, x| lcm(m, x.order()));
        let mut acc = Cyclotomic::zero(order);
        for c in 0..r {
            let (a, b) = (&f.values[c], &g.values[c]);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let term = (a * &b.conj()).scale(&Rational::from_integer(self.class_sizes[c].into()));
            acc += &term;
        }
        Ok(acc.scale(&Rational::new(1.into(), self.group_order.into())))
    }

    pub fn verify_orthogonality(&self) -> Result<(), ChartabError> {
        let total: u64 = self.degrees.iter().map(|d| d * d).sum();
        if total != self.group_order as u64 || self.irreducibles.len() != self.class_sizes.len() {
            return Err(ChartabError::NotOrthonormal);
        }
        for (i, a) in self.irreducibles.iter().enumerate() {
            for (j, b) in self.irreducibles.iter().enumerate().skip(i) {
                let ip = self.inner_product(a, b)?;
                let ok = if i == j { ip.is_one() } else { ip.is_zero() };
                if !ok {
                    return Err(ChartabError::NotOrthonormal);
                }
            }
        }
        Ok(())
    }

    /// Column orthogonality: Σ_χ χ(a) conj χ(b) = δ_ab |G|/|C_a|.
    pub fn verify_column_orthogonality(&self) -> bool {
        let r = self.class_sizes.len();
        for a in 0..r {
            for b in a..r {
                let mut acc = Cyclotomic::zero(self.conductor);
                for chi in &self.irreducibles {
                    acc += &(&chi.values[a] * &chi.values[b].conj());
                }
                let expect = if a == b { (self.group_order / self.class_sizes[a]) as i64 } else { 0 };
                if acc != Cyclotomic::from_int(self.conductor, expect) {
                    return false;
                }
            }
        }
        true
    }

    pub fn trivial(&self) -> &ClassFunction {
        &self.irreducibles[0]
    }
}

pub fn character_table(g: &FiniteGroup, cd: &ConjugacyData) -> Result<CharacterTable, ChartabError> {
    dixon::compute(g, cd, None)
}

/// As [`character_table`] with an explicit prime.
pub fn character_table_with_prime(
    g: &FiniteGroup,
    cd: &ConjugacyData,
    prime: u64,
) -> Result<CharacterTable, ChartabError> {
    dixon::compute(g, cd, Some(prime))
}

pub fn inner_product(f: &ClassFunction, g: &ClassFunction, t: &CharacterTable) -> Result<Cyclotomic, ChartabError> {
    t.inner_product(f, g)
}

/// Multiplicities ⟨f, χ_i⟩; a character iff all are nonnegative integers.
pub fn is_character(f: &ClassFunction, t: &CharacterTable) -> Result<Decomposition, ChartabError> {
    let ips: Vec<Cyclotomic> = t
        .irreducibles
        .iter()
        .map(|chi| t.inner_product(f, chi))
        .collect::<Result<_, _>>()?;
    for (i, m) in ips.iter().enumerate() {
        let ok = m.as_integer().is_some_and(|v| !v.is_negative());
        if !ok {
            return Ok(Decomposition::NotCharacter { index: i, value: m.clone(), inner_products: ips });
        }
    }
    let multiplicities = ips
        .iter()
        .map(|m| u64::try_from(m.as_integer().unwrap()).unwrap_or(u64::MAX))
        .collect();
    Ok(Decomposition::Character { multiplicities })
}

#[cfg(test)]
mod tests;
