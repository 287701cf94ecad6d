//! Elements of the cyclotomic field Q(ζ_n).
//!
//! An element is stored as a dense vector of `n` rational coefficients of
//! `1, ζ, ζ², …, ζ^{n-1}`, reduced modulo the n-th cyclotomic polynomial Φ_n.
//! After reduction only the first φ(n) coefficients can be nonzero, so the
//! vector is a canonical form: two elements of the same order are equal iff
//! their coefficient vectors are equal.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ExactError, Rational};

/// Largest conductor accepted anywhere in the crate.
pub const MAX_ORDER: u32 = 1024;

/// Integer coefficients of Φ_n, lowest degree first (monic, length φ(n)+1).
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num: Vec<i64> = vec![0; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            num = exact_poly_div(&num, &phi_d);
        }
    }
    let out = Arc::new(num);
    cache.lock().unwrap().insert(n, out.clone());
    out
}

fn exact_poly_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    let qlen = rem.len() - dd;
    let mut q = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dd];
        q[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    (cyclotomic_polynomial(n).len() - 1) as u32
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero(order: u32) -> Self {
        assert!((1..=MAX_ORDER).contains(&order), "cyclotomic order {order} out of range");
        Cyclotomic {
            order,
            coeffs: vec![Rational::zero(); order as usize],
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, Rational::one())
    }

    pub fn from_int(order: u32, v: i64) -> Self {
        Self::from_rational(order, Rational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(order: u32, q: Rational) -> Self {
        let mut c = Self::zero(order);
        c.coeffs[0] = q;
        c
    }

    /// ζ_n^k for any integer k.
    pub fn root_of_unity(order: u32, k: i64) -> Self {
        let mut c = Self::zero(order);
        let idx = k.rem_euclid(order as i64) as usize;
        c.coeffs[idx] = Rational::one();
        c.reduce();
        c
    }

    /// Build from an arbitrary coefficient list (index = power of ζ_n); the
    /// list may be longer or shorter than `order`.
    pub fn from_coeffs(order: u32, raw: Vec<Rational>) -> Self {
        let mut c = Self::zero(order);
        for (k, q) in raw.into_iter().enumerate() {
            if !q.is_zero() {
                c.coeffs[k % order as usize] += q;
            }
        }
        c.reduce();
        c
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Canonical coefficient vector (length `order`).
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    fn reduce(&mut self) {
        let n = self.order as usize;
        let phi = cyclotomic_polynomial(self.order);
        let deg = phi.len() - 1;
        for k in (deg..n).rev() {
            if self.coeffs[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut self.coeffs[k]);
            for (j, &pj) in phi.iter().enumerate().take(deg) {
                if pj != 0 {
                    let t = &c * Rational::from_integer(BigInt::from(pj));
                    self.coeffs[k - deg + j] -= t;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then(|| &self.coeffs[0])
    }

    /// The value as an integer, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    /// Express the element in Q(ζ_m) for a multiple `m` of the order.
    pub fn lift(&self, m: u32) -> Result<Self, ExactError> {
        if m % self.order != 0 {
            return Err(ExactError::MismatchedOrders(self.order, m));
        }
        if m == self.order {
            return Ok(self.clone());
        }
        let step = (m / self.order) as usize;
        let mut c = Self::zero(m);
        for (k, q) in self.coeffs.iter().enumerate() {
            if !q.is_zero() {
                c.coeffs[k * step] = q.clone();
            }
        }
        c.reduce();
        Ok(c)
    }

    fn lifted_pair(a: &Self, b: &Self) -> (Self, Self) {
        let m = lcm(a.order, b.order);
        (
            a.lift(m).expect("lcm is a multiple"),
            b.lift(m).expect("lcm is a multiple"),
        )
    }

    fn add_same(&self, other: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(x, y)| x + y)
            .collect();
        Cyclotomic {
            order: self.order,
            coeffs,
        }
    }

    fn sub_same(&self, other: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(x, y)| x - y)
            .collect();
        Cyclotomic {
            order: self.order,
            coeffs,
        }
    }

    fn mul_same(&self, other: &Self) -> Self {
        let n = self.order as usize;
        let mut out = Self::zero(self.order);
        // Rational scalars are common; avoid the convolution for them.
        if self.is_rational() {
            let s = &self.coeffs[0];
            if s.is_zero() {
                return out;
            }
            for (o, y) in out.coeffs.iter_mut().zip(&other.coeffs) {
                if !y.is_zero() {
                    *o = s * y;
                }
            }
            return out;
        }
        if other.is_rational() {
            return other.mul_same(self);
        }
        let a: Vec<(usize, &Rational)> = nonzero_terms(&self.coeffs);
        let b: Vec<(usize, &Rational)> = nonzero_terms(&other.coeffs);
        for &(i, x) in &a {
            for &(j, y) in &b {
                let k = (i + j) % n;
                out.coeffs[k] += x * y;
            }
        }
        out.reduce();
        out
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Complex conjugation ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// The Galois automorphism ζ ↦ ζ^m (m coprime to the order).
    pub fn galois(&self, m: i64) -> Self {
        let n = self.order as i64;
        debug_assert_eq!(m.rem_euclid(n).gcd(&n), 1);
        let mut c = Self::zero(self.order);
        for (k, q) in nonzero_terms(&self.coeffs) {
            let idx = ((k as i64) * m).rem_euclid(n) as usize;
            c.coeffs[idx] += q.clone();
        }
        c.reduce();
        c
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(Self::from_rational(self.order, q.recip()));
        }
        // Solve (multiplication by self) · x = 1 in the power basis.
        let d = euler_phi(self.order) as usize;
        let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(d);
        for j in 0..d {
            let prod = self.mul_same(&Self::root_of_unity(self.order, j as i64));
            cols.push(prod.coeffs[..d].to_vec());
        }
        let mut aug: Vec<Vec<Rational>> = (0..d)
            .map(|i| {
                let mut row: Vec<Rational> = (0..d).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        for col in 0..d {
            let piv = (col..d).find(|&r| !aug[r][col].is_zero())?;
            aug.swap(col, piv);
            let inv = aug[col][col].recip();
            for v in aug[col].iter_mut() {
                *v = &*v * &inv;
            }
            for r in 0..d {
                if r != col && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for k in col..=d {
                        let t = &f * &aug[col][k];
                        aug[r][k] -= t;
                    }
                }
            }
        }
        let sol: Vec<Rational> = aug.into_iter().map(|row| row[d].clone()).collect();
        Some(Self::from_coeffs(self.order, sol))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Total order used for deterministic sorting (not a field order).
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        if self.order != other.order {
            let m = lcm(self.order, other.order);
            return self.lift(m).unwrap().canonical_cmp(&other.lift(m).unwrap());
        }
        for (x, y) in self.coeffs.iter().zip(&other.coeffs) {
            match x.cmp(y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// Hashable key of the canonical coefficient vector.
    pub fn canonical_key(&self) -> Vec<(usize, BigInt, BigInt)> {
        nonzero_terms(&self.coeffs)
            .into_iter()
            .map(|(k, q)| (k, q.numer().clone(), q.denom().clone()))
            .collect()
    }

    /// Parse the textual form `3/2*z^3 - z + 1` where `z` is ζ_order.
    pub fn parse(s: &str, order: u32) -> Result<Self, ExactError> {
        super::parse::parse_cyclotomic(s, order)
    }
}

fn nonzero_terms(v: &[Rational]) -> Vec<(usize, &Rational)> {
    v.iter().enumerate().filter(|(_, q)| !q.is_zero()).collect()
}

/// The operation selector of [`cyc_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycOp {
    Add,
    Sub,
    Mul,
    Div,
    Conj,
}

/// Checked arithmetic: operands must share the same order; `Conj` ignores `b`.
pub fn cyc_arith(a: &Cyclotomic, b: &Cyclotomic, op: CycOp) -> Result<Cyclotomic, ExactError> {
    if op == CycOp::Conj {
        return Ok(a.conj());
    }
    if a.order != b.order {
        return Err(ExactError::MismatchedOrders(a.order, b.order));
    }
    Ok(match op {
        CycOp::Add => a.add_same(b),
        CycOp::Sub => a.sub_same(b),
        CycOp::Mul => a.mul_same(b),
        CycOp::Div => {
            let inv = b.inv().ok_or(ExactError::DivisionByZero)?;
            a.mul_same(&inv)
        }
        CycOp::Conj => unreachable!(),
    })
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = Self::lifted_pair(self, other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for Cyclotomic {}

macro_rules! lifting_binop {
    ($tr:ident, $m:ident, $same:ident) => {
        impl<'a> $tr<&'a Cyclotomic> for &'a Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                if self.order == rhs.order {
                    self.$same(rhs)
                } else {
                    let (a, b) = Cyclotomic::lifted_pair(self, rhs);
                    a.$same(&b)
                }
            }
        }
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                (&self).$m(rhs)
            }
        }
    };
}

lifting_binop!(Add, add, add_same);
lifting_binop!(Sub, sub, sub_same);
lifting_binop!(Mul, mul, mul_same);

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        if self.order == rhs.order {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                if !y.is_zero() {
                    *x += y;
                }
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        if self.order == rhs.order {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                if !y.is_zero() {
                    *x -= y;
                }
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl fmt::Display for Cyclotomic {
    /// Descending powers of `z`, e.g. `z^3 + 3/2*z - 1`; zero prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(usize, &Rational)> = nonzero_terms(&self.coeffs).into_iter().rev().collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, q)) in terms.iter().enumerate() {
            let neg = q.is_negative();
            let mag = q.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let unit = mag.is_one();
            match (*k, unit) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) => write!(f, "{mag}*")?,
            }
            match *k {
                0 => {}
                1 => write!(f, "z")?,
                k => write!(f, "z^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z8(k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(8, k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(16), 8);
        assert_eq!(euler_phi(15), 8);
    }

    #[test]
    fn zeta8_squared_squared_is_minus_one() {
        assert_eq!(&z8(2) * &z8(2), Cyclotomic::from_int(8, -1));
        assert_eq!(z8(4), Cyclotomic::from_int(8, -1));
    }

    #[test]
    fn cancellation() {
        let one = Cyclotomic::one(8);
        let a = &one + &z8(1);
        let b = &one - &z8(1);
        assert_eq!(a + b, Cyclotomic::from_int(8, 2));
    }

    #[test]
    fn norm_of_one_plus_zeta8() {
        // (1 + ζ)(1 + ζ^{-1}) = 2 + ζ + ζ^7 = 2 + ζ - ζ^3
        let a = &Cyclotomic::one(8) + &z8(1);
        let prod = &a * &a.conj();
        let expected = Cyclotomic::from_coeffs(
            8,
            vec![
                Rational::from_integer(2.into()),
                Rational::one(),
                Rational::zero(),
                -Rational::one(),
            ],
        );
        assert_eq!(prod, expected);
        assert_eq!(prod.to_string(), "-z^3 + z + 2");
        // ζ + ζ^{-1} = √2
        let sqrt2 = &z8(1) + &z8(-1);
        assert_eq!(&sqrt2 * &sqrt2, Cyclotomic::from_int(8, 2));
    }

    #[test]
    fn checked_arithmetic_errors() {
        let a = Cyclotomic::one(8);
        let b = Cyclotomic::one(4);
        assert!(matches!(
            cyc_arith(&a, &b, CycOp::Add),
            Err(ExactError::MismatchedOrders(8, 4))
        ));
        assert!(matches!(
            cyc_arith(&a, &Cyclotomic::zero(8), CycOp::Div),
            Err(ExactError::DivisionByZero)
        ));
        let q = cyc_arith(&z8(3), &z8(1), CycOp::Div).unwrap();
        assert_eq!(q, z8(2));
    }

    #[test]
    fn lifting_between_orders() {
        let i4 = Cyclotomic::root_of_unity(4, 1);
        assert_eq!(i4.lift(8).unwrap(), z8(2));
        assert_eq!(i4, z8(2));
        assert_eq!(&i4 * &z8(2), Cyclotomic::from_int(8, -1));
        let w3 = Cyclotomic::root_of_unity(3, 1);
        let w6 = w3.lift(6).unwrap();
        assert_eq!(w6, Cyclotomic::root_of_unity(6, 2));
        assert!(i4.lift(6).is_err());
    }

    #[test]
    fn inverse_in_order_15() {
        let a = &Cyclotomic::root_of_unity(15, 1) + &Cyclotomic::from_int(15, 3);
        let inv = a.inv().unwrap();
        assert!((&a * &inv).is_one());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Cyclotomic::zero(8).to_string(), "0");
        assert_eq!(z8(1).to_string(), "z");
        assert_eq!(z8(5).to_string(), "-z");
        let c = Cyclotomic::parse("3/2*z^3 - z + 1", 8).unwrap();
        assert_eq!(c.to_string(), "3/2*z^3 - z + 1");
    }
}
