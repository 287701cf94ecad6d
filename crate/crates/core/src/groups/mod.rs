//! Finite groups: matrix closure, Cayley tables, conjugacy classes, the
//! central scalar subgroup and central quotients.

mod classes;
mod closure;
mod central;

pub use central::{coset_map, projective_equal, quotient_by_central, scalar_subgroup, CentralExtensionData};
pub use classes::{conjugacy_classes, ConjugacyData};
pub use closure::{close_group, MatrixGroup, DEFAULT_CAP};

use crate::exact::ExactError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("closure exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("generator {0} is not invertible")]
    NotInvertible(usize),
    #[error("generator {0} has the wrong shape")]
    BadShape(usize),
    #[error("no generators given")]
    NoGenerators,
    #[error("scalar subgroup is not cyclic of 2-power order (order {0})")]
    ScalarNotCyclic2(usize),
    #[error("subset is not a subgroup")]
    NotSubgroup,
    #[error("subgroup is not central")]
    NotCentral,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// An abstract finite group given by its Cayley table. Element 0 is the
/// identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    generators: Vec<usize>,
}

impl FiniteGroup {
    /// Build from a full multiplication table (row-major, `a*b` at `a*n+b`).
    /// The identity must be element 0.
    pub fn from_table(order: usize, table: Vec<u32>, generators: Vec<usize>) -> Self {
        assert_eq!(table.len(), order * order);
        let mut inverse = vec![0u32; order];
        for a in 0..order {
            inverse[a] = (0..order)
                .find(|&b| table[a * order + b] == 0)
                .expect("every element has an inverse") as u32;
        }
        FiniteGroup { order, table, inverse, generators }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order)
            .map(|a| self.element_order(a))
            .fold(1, num_integer::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&z| self.generators.iter().all(|&g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }
}

#[cfg(test)]
mod tests;
