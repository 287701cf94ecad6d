//! Dense matrices over a single cyclotomic field Q(ζ_n).

use std::fmt;

use super::cyclotomic::lcm;
use super::{Cyclotomic, ExactError, Rational};

/// Row-major matrix whose entries all live in Q(ζ_order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    order: u32,
    data: Vec<Cyclotomic>,
}

impl CycMatrix {
    pub fn zeros(rows: usize, cols: usize, order: u32) -> Self {
        CycMatrix {
            rows,
            cols,
            order,
            data: vec![Cyclotomic::zero(order); rows * cols],
        }
    }

    pub fn identity(n: usize, order: u32) -> Self {
        let mut m = Self::zeros(n, n, order);
        for i in 0..n {
            m.data[i * n + i] = Cyclotomic::one(order);
        }
        m
    }

    pub fn scalar(n: usize, c: &Cyclotomic) -> Self {
        let mut m = Self::zeros(n, n, c.order());
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    /// Entries are lifted to the lcm of their orders and `order`.
    pub fn from_rows(order: u32, rows: Vec<Vec<Cyclotomic>>) -> Result<Self, ExactError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(ExactError::Shape(format!("ragged rows in {r}-row matrix")));
        }
        let order = rows.iter().flatten().fold(order, |acc, x| lcm(acc, x.order()));
        let mut data = Vec::with_capacity(r * c);
        for x in rows.into_iter().flatten() {
            data.push(x.lift(order)?);
        }
        Ok(CycMatrix { rows: r, cols: c, order, data })
    }

    /// Monomial matrix: column j has `scalars[j]` in row `perm[j]`.
    pub fn monomial(order: u32, perm: &[usize], scalars: &[Cyclotomic]) -> Result<Self, ExactError> {
        let n = perm.len();
        let mut rows = vec![vec![Cyclotomic::zero(order); n]; n];
        for (j, (&i, s)) in perm.iter().zip(scalars).enumerate() {
            rows[i][j] = s.clone();
        }
        Self::from_rows(order, rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cyclotomic) {
        let v = if v.order() == self.order {
            v
        } else {
            let m = lcm(self.order, v.order());
            if m != self.order {
                *self = self.lift(m).expect("lcm is a multiple");
            }
            v.lift(m).expect("lcm is a multiple")
        };
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Cyclotomic] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Cyclotomic>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn lift(&self, m: u32) -> Result<Self, ExactError> {
        Ok(CycMatrix {
            rows: self.rows,
            cols: self.cols,
            order: m,
            data: self.data.iter().map(|x| x.lift(m)).collect::<Result<_, _>>()?,
        })
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        let m = lcm(a.order, b.order);
        (a.lift(m).unwrap(), b.lift(m).unwrap())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        if self.order != other.order {
            let (a, b) = Self::aligned(self, other);
            return a.mul(&b);
        }
        let mut out = Self::zeros(self.rows, other.cols, self.order);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] += &(a * b);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = Self::aligned(self, other);
        CycMatrix {
            data: a.data.iter().zip(&b.data).map(|(x, y)| x + y).collect(),
            ..a
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b) = Self::aligned(self, other);
        CycMatrix {
            data: a.data.iter().zip(&b.data).map(|(x, y)| x - y).collect(),
            ..a
        }
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        let m = lcm(self.order, c.order());
        let a = self.lift(m).unwrap();
        let c = c.lift(m).unwrap();
        CycMatrix {
            data: a.data.iter().map(|x| x * &c).collect(),
            ..a
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows, self.order);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn trace(&self) -> Cyclotomic {
        let mut t = Cyclotomic::zero(self.order);
        for i in 0..self.rows.min(self.cols) {
            t += self.get(i, i);
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        self.scalar_value().is_some_and(|c| c.is_one())
    }

    /// `Some(c)` when the matrix is c·I.
    pub fn scalar_value(&self) -> Option<Cyclotomic> {
        if self.rows != self.cols || self.rows == 0 {
            return None;
        }
        let c = self.get(0, 0);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if (i == j && x != c) || (i != j && !x.is_zero()) {
                    return None;
                }
            }
        }
        Some(c.clone())
    }

    pub fn apply(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        (0..self.rows)
            .map(|i| {
                let mut acc = Cyclotomic::zero(self.order);
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Hashable key of the canonical entries (valid within one order).
    pub fn canonical_key(&self) -> Vec<Vec<(usize, num_bigint::BigInt, num_bigint::BigInt)>> {
        self.data.iter().map(Cyclotomic::canonical_key).collect()
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.to_rows();
        rref_cyc(&mut rows, self.order).len()
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug: Vec<Vec<Cyclotomic>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| {
                    if i == j {
                        Cyclotomic::one(self.order)
                    } else {
                        Cyclotomic::zero(self.order)
                    }
                }));
                r
            })
            .collect();
        let piv = rref_cyc(&mut aug, self.order);
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let rows = aug.into_iter().map(|r| r[n..].to_vec()).collect();
        Some(CycMatrix { rows: n, cols: n, order: self.order, data: flatten(rows) })
    }

    /// Basis of {x : self·x = 0}.
    pub fn nullspace(&self) -> Vec<Vec<Cyclotomic>> {
        let mut rows = self.to_rows();
        let piv = rref_cyc(&mut rows, self.order);
        kernel_from_rref(&rows, &piv, self.cols, self.order)
    }

    /// Canonical text: entries joined by ", ", rows by newlines.
    pub fn canonical_string(&self) -> String {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

fn flatten(rows: Vec<Vec<Cyclotomic>>) -> Vec<Cyclotomic> {
    rows.into_iter().flatten().collect()
}

impl fmt::Display for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

/// Reduced row echelon form over Q(ζ_order), in place. Returns pivot columns.
pub fn rref_cyc(m: &mut [Vec<Cyclotomic>], order: u32) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    for row in m.iter_mut() {
        for x in row.iter_mut() {
            if x.order() != order {
                *x = x.lift(lcm(order, x.order())).unwrap();
            }
        }
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // prefer a rational pivot: cheaper inverse and smaller growth
        let cand: Vec<usize> = (r..rows).filter(|&i| !m[i][c].is_zero()).collect();
        let Some(&p) = cand.iter().find(|&&i| m[i][c].is_rational()).or(cand.first()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in m[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn kernel_from_rref(
    rref: &[Vec<Cyclotomic>],
    pivots: &[usize],
    ncols: usize,
    order: u32,
) -> Vec<Vec<Cyclotomic>> {
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![Cyclotomic::zero(order); ncols];
            v[f] = Cyclotomic::one(order);
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -&rref[i][f];
            }
            v
        })
        .collect()
}

/// Rank of a list of vectors over Q(ζ_order).
pub fn span_rank(vectors: &[Vec<Cyclotomic>], order: u32) -> usize {
    let mut m = vectors.to_vec();
    rref_cyc(&mut m, order).len()
}

/// A row-reduced basis of the span of `vectors`.
pub fn span_basis(vectors: &[Vec<Cyclotomic>], order: u32) -> Vec<Vec<Cyclotomic>> {
    let mut m = vectors.to_vec();
    let k = rref_cyc(&mut m, order).len();
    m.truncate(k);
    m
}

/// Whether two lists of vectors span the same subspace.
pub fn same_span(a: &[Vec<Cyclotomic>], b: &[Vec<Cyclotomic>], order: u32) -> bool {
    let ra = span_rank(a, order);
    let rb = span_rank(b, order);
    if ra != rb {
        return false;
    }
    let mut all = a.to_vec();
    all.extend_from_slice(b);
    span_rank(&all, order) == ra
}

pub fn rational_matrix(order: u32, rows: &[Vec<i64>]) -> CycMatrix {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|&v| Cyclotomic::from_rational(order, Rational::from_integer(v.into()))).collect())
        .collect();
    CycMatrix::from_rows(order, rows).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_rank() {
        let z = |k| Cyclotomic::root_of_unity(8, k);
        let m = CycMatrix::from_rows(
            8,
            vec![
                vec![z(1), Cyclotomic::one(8)],
                vec![Cyclotomic::zero(8), z(3)],
            ],
        )
        .unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert_eq!(m.rank(), 2);
        let sing = rational_matrix(8, &[vec![1, 2], vec![2, 4]]);
        assert_eq!(sing.rank(), 1);
        assert!(sing.inverse().is_none());
        assert_eq!(sing.nullspace().len(), 1);
    }

    #[test]
    fn scalar_detection() {
        let s = CycMatrix::scalar(3, &Cyclotomic::root_of_unity(8, 2));
        assert_eq!(s.scalar_value(), Some(Cyclotomic::root_of_unity(8, 2)));
        assert!(rational_matrix(8, &[vec![1, 0], vec![0, 2]]).scalar_value().is_none());
    }

    #[test]
    fn canonical_string_layout() {
        let m = rational_matrix(4, &[vec![1, 0], vec![-1, 2]]);
        assert_eq!(m.canonical_string(), "1, 0\n-1, 2");
    }
}
