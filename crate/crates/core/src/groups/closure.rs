use std::collections::HashMap;
use std::collections::VecDeque;

use super::{FiniteGroup, GroupError};
use crate::exact::CycMatrix;

pub const DEFAULT_CAP: usize = 4096;

/// A finite group of square matrices over Q(ζ_n) with its Cayley table.
/// Element 0 is the identity; elements are in breadth-first discovery order.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    pub name: String,
    dim: usize,
    order_field: u32,
    elements: Vec<CycMatrix>,
    group: FiniteGroup,
    generator_indices: Vec<usize>,
}

impl MatrixGroup {
    pub fn dim(&self) -> usize {
        self.dim
    }
    /// The cyclotomic order n of the matrix entries.
    pub fn field_order(&self) -> u32 {
        self.order_field
    }
    pub fn order(&self) -> usize {
        self.elements.len()
    }
    pub fn elements(&self) -> &[CycMatrix] {
        &self.elements
    }
    pub fn element(&self, i: usize) -> &CycMatrix {
        &self.elements[i]
    }
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }
    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }
}

/// Breadth-first closure. Products are formed as (known element)·(generator),
/// and the full table is filled from each element's generator word.
pub fn close_group(generators: &[CycMatrix], cap: usize) -> Result<MatrixGroup, GroupError> {
    let first = generators.first().ok_or(GroupError::NoGenerators)?;
    let dim = first.rows();
    let order = generators.iter().fold(1, |acc, g| crate::exact::lcm(acc, g.order()));
    let gens: Vec<CycMatrix> = generators
        .iter()
        .enumerate()
        .map(|(i, g)| {
            if g.rows() != dim || g.cols() != dim {
                return Err(GroupError::BadShape(i));
            }
            if g.rank() != dim {
                return Err(GroupError::NotInvertible(i));
            }
            Ok(g.lift(order)?)
        })
        .collect::<Result<_, _>>()?;

    let identity = CycMatrix::identity(dim, order);
    let mut index: HashMap<_, usize> = HashMap::new();
    index.insert(identity.canonical_key(), 0);
    let mut elements = vec![identity];
    // word[e] = generator indices whose product (left to right) is e
    let mut words: Vec<Vec<u8>> = vec![vec![]];
    let mut right: Vec<Vec<u32>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(e) = queue.pop_front() {
        let mut row = Vec::with_capacity(gens.len());
        for (gi, g) in gens.iter().enumerate() {
            let prod = elements[e].mul(g);
            let key = prod.canonical_key();
            let idx = match index.get(&key) {
                Some(&i) => i,
                None => {
                    let i = elements.len();
                    if i >= cap {
                        return Err(GroupError::CapExceeded(cap));
                    }
                    index.insert(key, i);
                    elements.push(prod);
                    let mut w = words[e].clone();
                    w.push(gi as u8);
                    words.push(w);
                    queue.push_back(i);
                    i
                }
            };
            row.push(idx as u32);
        }
        if right.len() <= e {
            right.resize(e + 1, Vec::new());
        }
        right[e] = row;
    }

    let n = elements.len();
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            let mut x = a;
            for &g in &words[b] {
                x = right[x][g as usize] as usize;
            }
            table[a * n + b] = x as u32;
        }
    }
    let generator_indices: Vec<usize> = (0..gens.len()).map(|gi| right[0][gi] as usize).collect();
    let mut gens_distinct = generator_indices.clone();
    gens_distinct.dedup();
    let group = FiniteGroup::from_table(n, table, gens_distinct);
    Ok(MatrixGroup {
        name: String::new(),
        dim,
        order_field: order,
        elements,
        group,
        generator_indices,
    })
}
