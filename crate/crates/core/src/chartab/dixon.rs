//! Dixon–Schneider: common eigenvectors of the class matrices over F_p, then
//! lifting each character to Q(ζ_e) from its eigenvalue multiplicities.

use num_traits::Zero;

use super::{CharacterTable, ChartabError, ClassFunction};
use crate::exact::fp::{is_prime, powmod, prime_congruent_one};
use crate::exact::linalg::{charpoly, nullspace, poly_roots, rref};
use crate::exact::{Cyclotomic, Embedding, FieldElem, PrimeFieldElem, Rational};
use crate::groups::{ConjugacyData, FiniteGroup};

/// Smallest prime p ≡ 1 (mod exponent) with p > 2|G|.
pub fn dixon_prime(group_order: usize, exponent: usize) -> u64 {
    prime_congruent_one(exponent as u64, 2 * group_order as u64)
}

/// a[j][i][k] = #{x ∈ C_i : x⁻¹ z_k ∈ C_j}.
fn class_coefficients(g: &FiniteGroup, cd: &ConjugacyData) -> Vec<Vec<Vec<u64>>> {
    let r = cd.len();
    let mut a = vec![vec![vec![0u64; r]; r]; r];
    for (k, &zk) in cd.representatives.iter().enumerate() {
        for x in 0..g.order() {
            let i = cd.class_of[x];
            let j = cd.class_of[g.mul(g.inv(x), zk)];
            a[j][i][k] += 1;
        }
    }
    a
}

type Vect = Vec<PrimeFieldElem>;

fn mat_vec(m: &[Vec<u64>], v: &[PrimeFieldElem], p: u64) -> Vect {
    m.iter()
        .map(|row| {
            let mut acc = 0u128;
            for (&c, x) in row.iter().zip(v) {
                acc += c as u128 * x.value as u128;
            }
            PrimeFieldElem::new((acc % p as u128) as u64, p)
        })
        .collect()
}

/// Coordinates of each vector of `targets` in the basis `basis` (assumed to
/// span them).
fn coordinates(basis: &[Vect], targets: &[Vect], p: u64) -> Vec<Vect> {
    let d = basis.len();
    let n = basis[0].len();
    let zero = PrimeFieldElem::new(0, p);
    // augmented [B | T] with basis vectors as columns
    let mut aug: Vec<Vect> = (0..n)
        .map(|row| {
            let mut r: Vect = basis.iter().map(|b| b[row]).collect();
            r.extend(targets.iter().map(|t| t[row]));
            r
        })
        .collect();
    rref(&mut aug);
    targets
        .iter()
        .enumerate()
        .map(|(ti, _)| (0..d).map(|i| if i < aug.len() { aug[i][d + ti] } else { zero }).collect())
        .collect()
}

/// Split F_p^r into common eigenspaces of all class matrices.
fn split_eigenspaces(a: &[Vec<Vec<u64>>], r: usize, p: u64) -> Result<Vec<Vect>, ChartabError> {
    let zero = PrimeFieldElem::new(0, p);
    let one = PrimeFieldElem::new(1, p);
    let id: Vec<Vect> = (0..r)
        .map(|i| (0..r).map(|j| if i == j { one } else { zero }).collect())
        .collect();
    let mut spaces: Vec<Vec<Vect>> = vec![id];
    for aj in a.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            let images: Vec<Vect> = space.iter().map(|b| mat_vec(aj, b, p)).collect();
            // restricted matrix R with columns = coordinates of the images
            let cols = coordinates(&space, &images, p);
            let d = space.len();
            let rmat: Vec<Vect> = (0..d).map(|i| (0..d).map(|c| cols[c][i]).collect()).collect();
            let cp = charpoly(&rmat, zero);
            let roots = poly_roots(&cp, zero);
            let mut total = 0;
            let mut pieces = Vec::new();
            for lam in roots {
                let shifted: Vec<Vect> = (0..d)
                    .map(|i| (0..d).map(|c| if i == c { rmat[i][c] - lam } else { rmat[i][c] }).collect())
                    .collect();
                let ker = nullspace(&shifted, d, zero);
                total += ker.len();
                let sub: Vec<Vect> = ker
                    .iter()
                    .map(|coef| {
                        (0..r)
                            .map(|row| {
                                coef.iter().zip(&space).fold(zero, |acc, (&c, b)| acc + c * b[row])
                            })
                            .collect()
                    })
                    .collect();
                pieces.push(sub);
            }
            if total != d {
                return Err(ChartabError::SeparationFailed(p));
            }
            next.extend(pieces);
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(ChartabError::SeparationFailed(p));
    }
    Ok(spaces.into_iter().map(|mut s| s.pop().unwrap()).collect())
}

pub(super) fn compute(g: &FiniteGroup, cd: &ConjugacyData, prime: Option<u64>) -> Result<CharacterTable, ChartabError> {
    let n = g.order();
    let r = cd.len();
    let e = cd.exponent;
    let p = prime.unwrap_or_else(|| dixon_prime(n, e));
    if !is_prime(p) || (p - 1) % e as u64 != 0 || p <= 2 * n as u64 {
        return Err(ChartabError::BadPrime(p));
    }
    let emb = Embedding::standard(p, e as u32)?;
    let a = class_coefficients(g, cd);
    let vecs = split_eigenspaces(&a, r, p)?;
    let fp = |v: u64| PrimeFieldElem::new(v % p, p);
    let sizes: Vec<PrimeFieldElem> = cd.class_sizes.iter().map(|&s| fp(s as u64)).collect();
    let mut chars = Vec::with_capacity(r);
    for w in vecs {
        let w0inv = w[0].inv().ok_or(ChartabError::SeparationFailed(p))?;
        let omega: Vect = w.iter().map(|&x| x * w0inv).collect();
        let mut s = fp(0);
        for i in 0..r {
            s = s + omega[i] * omega[cd.inverse_class(i)] * sizes[i].inv().unwrap();
        }
        let d2 = fp(n as u64) * s.inv().ok_or(ChartabError::SeparationFailed(p))?;
        let d = (1..=(n as f64).sqrt() as u64 + 1)
            .find(|&d| fp(d * d) == d2)
            .ok_or(ChartabError::SeparationFailed(p))?;
        let modp: Vect = (0..r).map(|i| omega[i] * fp(d) * sizes[i].inv().unwrap()).collect();
        chars.push(lift_character(&modp, d, cd, &emb)?);
    }
    let mut table = CharacterTable::new(n, cd, chars, p);
    table.sort();
    table.verify_orthogonality()?;
    Ok(table)
}

/// Recover χ over Q(ζ_e) from χ mod p using the eigenvalue multiplicities of
/// each class representative.
fn lift_character(
    modp: &[PrimeFieldElem],
    degree: u64,
    cd: &ConjugacyData,
    emb: &Embedding,
) -> Result<ClassFunction, ChartabError> {
    let e = cd.exponent as u32;
    let p = emb.prime;
    let mut values = Vec::with_capacity(modp.len());
    for c in 0..modp.len() {
        let o = cd.element_orders[c] as u64;
        let ro = powmod(emb.root, e as u64 / o, p);
        let oinv = PrimeFieldElem::new(o, p).inv().unwrap();
        let mut coeffs = vec![Rational::zero(); e as usize];
        let mut total = 0u64;
        for k in 0..o {
            let mut acc = PrimeFieldElem::new(0, p);
            for l in 0..o {
                let chi = modp[cd.power(c, l as i64)];
                // r_o^{-kl}
                let exp = (o - (k * l) % o) % o;
                acc = acc + chi * PrimeFieldElem::new(powmod(ro, exp, p), p);
            }
            let m = (acc * oinv).value;
            if m > degree {
                return Err(ChartabError::LiftFailed { class: c });
            }
            total += m;
            coeffs[(k * (e as u64 / o)) as usize] = Rational::from_integer(m.into());
        }
        if total != degree {
            return Err(ChartabError::LiftFailed { class: c });
        }
        values.push(Cyclotomic::from_coeffs(e, coeffs));
    }
    Ok(ClassFunction::new(values))
}
