//! Dense linear algebra and univariate polynomials over a finite field.

use super::fp::FieldElem;

pub type FMatrix<F> = Vec<Vec<F>>;

/// Row-reduce in place; returns pivot columns.
pub fn rref<F: FieldElem>(m: &mut FMatrix<F>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().unwrap();
        for v in m[r].iter_mut() {
            *v = *v * inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                    *x = *x - f * *y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: FieldElem>(m: &FMatrix<F>) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Basis of the right kernel {x : m·x = 0}.
pub fn nullspace<F: FieldElem>(m: &FMatrix<F>, ncols: usize, sample: F) -> Vec<Vec<F>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let zero = sample.zero_like();
    let one = sample.one_like();
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![zero; ncols];
            v[f] = one;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[i][f];
            }
            v
        })
        .collect()
}

pub fn mat_mul<F: FieldElem>(a: &FMatrix<F>, b: &FMatrix<F>) -> FMatrix<F> {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let zero = if n > 0 && !a[0].is_empty() { a[0][0].zero_like() } else { return vec![vec![]; n] };
    let mut out = vec![vec![zero; m]; n];
    for i in 0..n {
        for l in 0..k {
            let x = a[i][l];
            if x.is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] = out[i][j] + x * b[l][j];
            }
        }
    }
    out
}

pub fn transpose<F: FieldElem>(a: &FMatrix<F>) -> FMatrix<F> {
    if a.is_empty() {
        return vec![];
    }
    (0..a[0].len()).map(|j| a.iter().map(|row| row[j]).collect()).collect()
}

/// Characteristic polynomial det(xI − A), coefficients lowest degree first,
/// via reduction to upper Hessenberg form.
pub fn charpoly<F: FieldElem>(a: &FMatrix<F>, sample: F) -> Vec<F> {
    let n = a.len();
    let zero = sample.zero_like();
    let one = sample.one_like();
    if n == 0 {
        return vec![one];
    }
    let mut h = a.clone();
    for m in 1..n.saturating_sub(1) {
        let Some(piv) = (m..n).find(|&i| !h[i][m - 1].is_zero()) else {
            continue;
        };
        if piv != m {
            h.swap(piv, m);
            for row in h.iter_mut() {
                row.swap(piv, m);
            }
        }
        let inv = h[m][m - 1].inv().unwrap();
        for i in (m + 1)..n {
            if h[i][m - 1].is_zero() {
                continue;
            }
            let f = h[i][m - 1] * inv;
            for j in 0..n {
                let t = f * h[m][j];
                h[i][j] = h[i][j] - t;
            }
            for row in h.iter_mut() {
                let t = f * row[i];
                row[m] = row[m] + t;
            }
        }
    }
    // p_k = charpoly of leading k×k block
    let mut polys: Vec<Vec<F>> = vec![vec![one]];
    for k in 0..n {
        // p_{k+1} = (x - h[k][k]) p_k - Σ_{i<k} h[i][k] (Π_{j=i+1..k} h[j][j-1]) p_i
        let mut next = vec![zero; k + 2];
        for (d, &c) in polys[k].iter().enumerate() {
            next[d + 1] = next[d + 1] + c;
            next[d] = next[d] - h[k][k] * c;
        }
        let mut prod = one;
        for i in (0..k).rev() {
            prod = prod * h[i + 1][i];
            let coef = h[i][k] * prod;
            if coef.is_zero() {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = next[d] - coef * c;
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

// ---- univariate polynomials (lowest degree first, no trailing zeros) ----

pub fn poly_trim<F: FieldElem>(p: &mut Vec<F>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn poly_eval<F: FieldElem>(p: &[F], x: F) -> F {
    let mut acc = x.zero_like();
    for &c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn poly_mul<F: FieldElem>(a: &[F], b: &[F]) -> Vec<F> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![a[0].zero_like(); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = out[i + j] + x * y;
        }
    }
    out
}

/// (quotient, remainder)
fn poly_divrem<F: FieldElem>(a: &[F], b: &[F]) -> (Vec<F>, Vec<F>) {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = b[db].inv().expect("nonzero divisor");
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![b[0].zero_like(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db] * lead_inv;
        q[k] = c;
        if !c.is_zero() {
            for (j, &bj) in b.iter().enumerate() {
                r[k + j] = r[k + j] - c * bj;
            }
        }
    }
    r.truncate(db);
    poly_trim(&mut r);
    (q, r)
}

fn poly_monic<F: FieldElem>(p: &[F]) -> Vec<F> {
    let inv = p.last().unwrap().inv().unwrap();
    p.iter().map(|&c| c * inv).collect()
}

pub fn poly_gcd<F: FieldElem>(a: &[F], b: &[F]) -> Vec<F> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !y.is_empty() {
        let (_, r) = poly_divrem(&x, &y);
        x = y;
        y = r;
    }
    if x.is_empty() {
        x
    } else {
        poly_monic(&x)
    }
}

/// base^e mod m
fn poly_powmod<F: FieldElem>(base: &[F], mut e: u128, m: &[F]) -> Vec<F> {
    let one = m[0].one_like();
    let mut acc = vec![one];
    let (_, mut b) = poly_divrem(base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_divrem(&poly_mul(&acc, &b), m).1;
        }
        b = poly_divrem(&poly_mul(&b, &b), m).1;
        e >>= 1;
    }
    acc
}

/// Distinct roots of `p` lying in the field of `sample` (odd characteristic).
pub fn poly_roots<F: FieldElem>(p: &[F], sample: F) -> Vec<F> {
    let mut f = p.to_vec();
    poly_trim(&mut f);
    if f.len() <= 1 {
        return vec![];
    }
    let q = sample.field_size();
    let zero = sample.zero_like();
    let one = sample.one_like();
    let f = poly_monic(&f);
    // product of the distinct linear factors: gcd(f, x^q - x)
    let x = vec![zero, one];
    let mut xq = poly_powmod(&x, q, &f);
    while xq.len() < 2 {
        xq.push(zero);
    }
    xq[1] = xq[1] - one;
    poly_trim(&mut xq);
    let g = if xq.is_empty() { f.clone() } else { poly_gcd(&f, &xq) };
    let mut roots = Vec::new();
    split_linear(&g, q, sample, 1, &mut roots);
    roots
}

fn split_linear<F: FieldElem>(g: &[F], q: u128, sample: F, mut shift: u64, out: &mut Vec<F>) {
    let deg = g.len().saturating_sub(1);
    if deg == 0 {
        return;
    }
    if deg == 1 {
        // x + c  => root -c
        out.push(-g[0] * g[1].inv().unwrap());
        return;
    }
    let zero = sample.zero_like();
    let one = sample.one_like();
    loop {
        // walk shifts with a stride so extension fields get non-base shifts
        let a = sample.element_from_index(shift.wrapping_mul(0x9E37_79B9));
        shift += 1;
        let base = vec![a, one];
        let mut h = poly_powmod(&base, (q - 1) / 2, g);
        if h.is_empty() {
            h.push(zero);
        }
        h[0] = h[0] - one;
        poly_trim(&mut h);
        if h.is_empty() {
            continue;
        }
        let d = poly_gcd(g, &h);
        let dd = d.len() - 1;
        if dd > 0 && dd < deg {
            let (rest, _) = poly_divrem(g, &d);
            split_linear(&d, q, sample, shift, out);
            split_linear(&poly_monic(&rest), q, sample, shift, out);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::fp::{smallest_nonresidue, Fp2Elem, PrimeFieldElem};

    fn f(v: u64) -> PrimeFieldElem {
        PrimeFieldElem::new(v, 101)
    }

    #[test]
    fn charpoly_matches_brute_force_determinant() {
        let a = vec![
            vec![f(2), f(3), f(5)],
            vec![f(7), f(11), f(13)],
            vec![f(17), f(19), f(23)],
        ];
        let cp = charpoly(&a, f(0));
        // det(λI - A) via 3x3 cofactor expansion at several λ
        for lam in [0u64, 1, 2, 50, 99] {
            let l = f(lam);
            let m: Vec<Vec<PrimeFieldElem>> = (0..3)
                .map(|i| (0..3).map(|j| if i == j { l - a[i][j] } else { -a[i][j] }).collect())
                .collect();
            let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
            assert_eq!(poly_eval(&cp, l), det);
        }
    }

    #[test]
    fn roots_in_prime_field() {
        // (x-3)(x-5)(x^2+1) with -1 a nonsquare mod 103
        let p = 103u64;
        let g = |v: u64| PrimeFieldElem::new(v, p);
        let poly = poly_mul(&poly_mul(&[-g(3), g(1)], &[-g(5), g(1)]), &[g(1), g(0), g(1)]);
        let mut r: Vec<u64> = poly_roots(&poly, g(0)).iter().map(|x| x.value).collect();
        r.sort();
        assert_eq!(r, vec![3, 5]);
    }

    #[test]
    fn roots_in_quadratic_extension() {
        let p = 103u64;
        let nr = smallest_nonresidue(p);
        let g = |v: u64| Fp2Elem::new(v, 0, p, nr);
        let poly = vec![g(1), g(0), g(1)]; // x^2 + 1
        let r = poly_roots(&poly, g(0));
        assert_eq!(r.len(), 2);
        for x in r {
            assert!((x * x + g(1)).is_zero());
        }
    }

    #[test]
    fn nullspace_dimension() {
        let a = vec![vec![f(1), f(2), f(3)], vec![f(2), f(4), f(6)]];
        let ns = nullspace(&a, 3, f(0));
        assert_eq!(ns.len(), 2);
        for v in ns {
            let dot = a[0][0] * v[0] + a[0][1] * v[1] + a[0][2] * v[2];
            assert!(dot.is_zero());
        }
    }
}
