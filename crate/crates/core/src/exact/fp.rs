//! Prime fields F_p, their quadratic extensions, and the specialization
//! Q(ζ_n) → F_p.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{Cyclotomic, ExactError};

/// Arithmetic shared by [`PrimeFieldElem`] and [`Fp2Elem`]. Elements carry
/// their field, so constants are produced from an existing element.
pub trait FieldElem:
    Copy
    + PartialEq
    + Eq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_u64_like(&self, v: u64) -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    /// Cardinality of the field.
    fn field_size(&self) -> u128;
    fn characteristic(&self) -> u64;
    /// A deterministic enumeration of the field's elements by index.
    fn element_from_index(&self, k: u64) -> Self;

    fn pow(&self, mut e: u128) -> Self {
        let mut base = *self;
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Multiplicative order of `a` modulo the prime `p`.
pub fn multiplicative_order(a: u64, p: u64) -> u64 {
    let mut ord = p - 1;
    for q in prime_factors(p - 1) {
        while ord % q == 0 && powmod(a, ord / q, p) == 1 {
            ord /= q;
        }
    }
    ord
}

/// Smallest generator of F_p^*.
pub fn primitive_root(p: u64) -> u64 {
    let fs = prime_factors(p - 1);
    (2..p)
        .find(|&g| fs.iter().all(|&q| powmod(g, (p - 1) / q, p) != 1))
        .unwrap_or(1)
}

/// Smallest prime `p ≡ 1 (mod n)` with `p > lower`.
pub fn prime_congruent_one(n: u64, lower: u64) -> u64 {
    let mut p = (lower / n) * n + 1;
    if p <= lower {
        p += n;
    }
    while !is_prime(p) {
        p += n;
    }
    p
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeFieldElem {
    pub value: u64,
    pub modulus: u64,
}

impl PrimeFieldElem {
    pub fn new(value: u64, modulus: u64) -> Self {
        PrimeFieldElem {
            value: value % modulus,
            modulus,
        }
    }

    pub fn from_i64(v: i64, modulus: u64) -> Self {
        Self::new(v.rem_euclid(modulus as i64) as u64, modulus)
    }

    pub fn from_bigint(v: &BigInt, modulus: u64) -> Self {
        let r = v.mod_floor(&BigInt::from(modulus));
        Self::new(r.to_u64().unwrap(), modulus)
    }

    /// Square root via Tonelli–Shanks, if one exists in F_p.
    pub fn sqrt(&self) -> Option<Self> {
        let p = self.modulus;
        let a = self.value;
        if a == 0 {
            return Some(*self);
        }
        if p == 2 {
            return Some(*self);
        }
        if powmod(a, (p - 1) / 2, p) != 1 {
            return None;
        }
        let mut q = p - 1;
        let mut s = 0;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let z = (2..p).find(|&z| powmod(z, (p - 1) / 2, p) == p - 1).unwrap();
        let mut m = s;
        let mut c = powmod(z, q, p);
        let mut t = powmod(a, q, p);
        let mut r = powmod(a, (q + 1) / 2, p);
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = mulmod(tt, tt, p);
                i += 1;
            }
            let b = powmod(c, 1 << (m - i - 1), p);
            m = i;
            c = mulmod(b, b, p);
            t = mulmod(t, c, p);
            r = mulmod(r, b, p);
        }
        Some(Self::new(r, p))
    }

    pub fn is_square(&self) -> bool {
        self.value == 0 || powmod(self.value, (self.modulus - 1) / 2, self.modulus) == 1
    }

    /// Signed representative in (-p/2, p/2].
    pub fn signed(&self) -> i64 {
        if self.value > self.modulus / 2 {
            self.value as i64 - self.modulus as i64
        } else {
            self.value as i64
        }
    }
}

impl fmt::Debug for PrimeFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Display for PrimeFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for PrimeFieldElem {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        debug_assert_eq!(self.modulus, o.modulus);
        let s = self.value + o.value;
        Self {
            value: if s >= self.modulus { s - self.modulus } else { s },
            modulus: self.modulus,
        }
    }
}

impl Sub for PrimeFieldElem {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        debug_assert_eq!(self.modulus, o.modulus);
        Self {
            value: if self.value >= o.value {
                self.value - o.value
            } else {
                self.value + self.modulus - o.value
            },
            modulus: self.modulus,
        }
    }
}

impl Mul for PrimeFieldElem {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        debug_assert_eq!(self.modulus, o.modulus);
        Self {
            value: mulmod(self.value, o.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Neg for PrimeFieldElem {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            value: if self.value == 0 { 0 } else { self.modulus - self.value },
            modulus: self.modulus,
        }
    }
}

impl FieldElem for PrimeFieldElem {
    fn zero_like(&self) -> Self {
        Self::new(0, self.modulus)
    }
    fn one_like(&self) -> Self {
        Self::new(1, self.modulus)
    }
    fn from_u64_like(&self, v: u64) -> Self {
        Self::new(v, self.modulus)
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn inv(&self) -> Option<Self> {
        (self.value != 0).then(|| Self::new(powmod(self.value, self.modulus - 2, self.modulus), self.modulus))
    }
    fn field_size(&self) -> u128 {
        self.modulus as u128
    }
    fn characteristic(&self) -> u64 {
        self.modulus
    }
    fn element_from_index(&self, k: u64) -> Self {
        Self::new(k % self.modulus, self.modulus)
    }
}

/// Element `a + b·w` of F_{p²} = F_p(w), `w² = nonresidue`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp2Elem {
    pub a: u64,
    pub b: u64,
    pub modulus: u64,
    pub nonresidue: u64,
}

/// Smallest quadratic nonresidue mod an odd prime.
pub fn smallest_nonresidue(p: u64) -> u64 {
    (2..p).find(|&z| powmod(z, (p - 1) / 2, p) == p - 1).expect("odd prime")
}

impl Fp2Elem {
    pub fn from_base(x: PrimeFieldElem, nonresidue: u64) -> Self {
        Fp2Elem {
            a: x.value,
            b: 0,
            modulus: x.modulus,
            nonresidue,
        }
    }

    pub fn new(a: u64, b: u64, modulus: u64, nonresidue: u64) -> Self {
        Fp2Elem {
            a: a % modulus,
            b: b % modulus,
            modulus,
            nonresidue,
        }
    }

    /// The generator `w` with `w² = nonresidue`.
    pub fn w(modulus: u64, nonresidue: u64) -> Self {
        Self::new(0, 1, modulus, nonresidue)
    }

    /// Some square root of a base-field element (always exists in F_{p²}).
    pub fn sqrt_of_base(x: PrimeFieldElem, nonresidue: u64) -> Self {
        let p = x.modulus;
        match x.sqrt() {
            Some(r) => Self::from_base(r, nonresidue),
            None => {
                // x = nonresidue · y with y a square
                let nr = PrimeFieldElem::new(nonresidue, p);
                let y = x * nr.inv().unwrap();
                let r = y.sqrt().expect("quotient of nonresidues is a square");
                Self::new(0, r.value, p, nonresidue)
            }
        }
    }

    pub fn in_base_field(&self) -> bool {
        self.b == 0
    }

    pub fn base(&self) -> Option<PrimeFieldElem> {
        self.in_base_field().then(|| PrimeFieldElem::new(self.a, self.modulus))
    }

    fn comp(&self, v: u64) -> PrimeFieldElem {
        PrimeFieldElem::new(v, self.modulus)
    }
}

impl fmt::Debug for Fp2Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Fp2Elem {
    /// `a` or `a+b*w`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b == 0 {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{}+{}*w", self.a, self.b)
        }
    }
}

impl Add for Fp2Elem {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let a = self.comp(self.a) + self.comp(o.a);
        let b = self.comp(self.b) + self.comp(o.b);
        Fp2Elem { a: a.value, b: b.value, ..self }
    }
}

impl Sub for Fp2Elem {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let a = self.comp(self.a) - self.comp(o.a);
        let b = self.comp(self.b) - self.comp(o.b);
        Fp2Elem { a: a.value, b: b.value, ..self }
    }
}

impl Mul for Fp2Elem {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a1, b1, a2, b2) = (self.comp(self.a), self.comp(self.b), self.comp(o.a), self.comp(o.b));
        let nr = self.comp(self.nonresidue);
        let a = a1 * a2 + b1 * b2 * nr;
        let b = a1 * b2 + b1 * a2;
        Fp2Elem { a: a.value, b: b.value, ..self }
    }
}

impl Neg for Fp2Elem {
    type Output = Self;
    fn neg(self) -> Self {
        Fp2Elem {
            a: (-self.comp(self.a)).value,
            b: (-self.comp(self.b)).value,
            ..self
        }
    }
}

impl FieldElem for Fp2Elem {
    fn zero_like(&self) -> Self {
        Fp2Elem { a: 0, b: 0, ..*self }
    }
    fn one_like(&self) -> Self {
        Fp2Elem { a: 1, b: 0, ..*self }
    }
    fn from_u64_like(&self, v: u64) -> Self {
        Fp2Elem {
            a: v % self.modulus,
            b: 0,
            ..*self
        }
    }
    fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // (a + bw)^{-1} = (a - bw) / (a² - nr·b²)
        let (a, b) = (self.comp(self.a), self.comp(self.b));
        let norm = a * a - b * b * self.comp(self.nonresidue);
        let ninv = norm.inv()?;
        Some(Fp2Elem {
            a: (a * ninv).value,
            b: (-(b * ninv)).value,
            ..*self
        })
    }
    fn field_size(&self) -> u128 {
        (self.modulus as u128) * (self.modulus as u128)
    }
    fn characteristic(&self) -> u64 {
        self.modulus
    }
    fn element_from_index(&self, k: u64) -> Self {
        let p = self.modulus;
        Fp2Elem {
            a: k % p,
            b: (k / p) % p,
            ..*self
        }
    }
}

/// A validated ring homomorphism Q(ζ_n) → F_p sending ζ_n to `root`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub prime: u64,
    pub order: u32,
    pub root: u64,
    powers: Vec<u64>,
}

impl Embedding {
    pub fn new(prime: u64, order: u32, root: u64) -> Result<Self, ExactError> {
        if !is_prime(prime) || prime > u32::MAX as u64 {
            return Err(ExactError::NotPrime(prime));
        }
        if (prime - 1) % order as u64 != 0 {
            return Err(ExactError::PrimeNotCongruent { prime, order });
        }
        if multiplicative_order(root % prime, prime) != order as u64 {
            return Err(ExactError::WrongRootOrder { root, order });
        }
        let powers = (0..order as u64).map(|k| powmod(root, k, prime)).collect();
        Ok(Embedding {
            prime,
            order,
            root,
            powers,
        })
    }

    /// The embedding whose root is `g^((p-1)/n)` for the smallest generator `g`.
    pub fn standard(prime: u64, order: u32) -> Result<Self, ExactError> {
        if !is_prime(prime) || prime > u32::MAX as u64 {
            return Err(ExactError::NotPrime(prime));
        }
        if (prime - 1) % order as u64 != 0 {
            return Err(ExactError::PrimeNotCongruent { prime, order });
        }
        let g = primitive_root(prime);
        Self::new(prime, order, powmod(g, (prime - 1) / order as u64, prime))
    }

    /// The same embedding restricted to Q(ζ_m) for a divisor m of the order.
    pub fn restrict(&self, m: u32) -> Result<Self, ExactError> {
        if self.order % m != 0 {
            return Err(ExactError::MismatchedOrders(m, self.order));
        }
        Self::new(self.prime, m, powmod(self.root, (self.order / m) as u64, self.prime))
    }

    pub fn elem(&self, v: u64) -> PrimeFieldElem {
        PrimeFieldElem::new(v, self.prime)
    }

    pub fn apply(&self, c: &Cyclotomic) -> Result<PrimeFieldElem, ExactError> {
        let c = if c.order() == self.order {
            std::borrow::Cow::Borrowed(c)
        } else {
            std::borrow::Cow::Owned(c.lift(self.order)?)
        };
        let p = self.prime;
        let mut acc = PrimeFieldElem::new(0, p);
        for (k, q) in c.coeffs().iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let den = PrimeFieldElem::from_bigint(q.denom(), p);
            let dinv = den.inv().ok_or(ExactError::DenominatorDivisibleByPrime(p))?;
            let num = PrimeFieldElem::from_bigint(q.numer(), p);
            acc = acc + num * dinv * PrimeFieldElem::new(self.powers[k], p);
        }
        Ok(acc)
    }
}

/// Specialize `c` to F_p via ζ_n ↦ `r`, validating all preconditions.
pub fn embed_mod_p(c: &Cyclotomic, p: u64, r: PrimeFieldElem) -> Result<PrimeFieldElem, ExactError> {
    if r.modulus != p {
        return Err(ExactError::NotPrime(r.modulus));
    }
    Embedding::new(p, c.order(), r.value)?.apply(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;

    #[test]
    fn zeta8_to_two_mod_17() {
        let z = Cyclotomic::root_of_unity(8, 1);
        let r = PrimeFieldElem::new(2, 17);
        assert_eq!(embed_mod_p(&z, 17, r).unwrap().value, 2);
    }

    #[test]
    fn three_halves_mod_17() {
        let c = Cyclotomic::from_rational(8, Rational::new(3.into(), 2.into()));
        assert_eq!(embed_mod_p(&c, 17, PrimeFieldElem::new(2, 17)).unwrap().value, 10);
    }

    #[test]
    fn zero_maps_to_zero() {
        let r = PrimeFieldElem::new(2, 17);
        assert_eq!(embed_mod_p(&Cyclotomic::zero(8), 17, r).unwrap().value, 0);
    }

    #[test]
    fn embedding_errors() {
        let z = Cyclotomic::root_of_unity(8, 1);
        // 4 has order 4 mod 17
        assert!(matches!(
            embed_mod_p(&z, 17, PrimeFieldElem::new(4, 17)),
            Err(ExactError::WrongRootOrder { .. })
        ));
        assert!(matches!(
            embed_mod_p(&z, 19, PrimeFieldElem::new(2, 19)),
            Err(ExactError::PrimeNotCongruent { .. })
        ));
        let half = Cyclotomic::from_rational(8, Rational::new(1.into(), 17.into()));
        assert!(matches!(
            embed_mod_p(&half, 17, PrimeFieldElem::new(2, 17)),
            Err(ExactError::DenominatorDivisibleByPrime(17))
        ));
    }

    #[test]
    fn primes_and_roots() {
        assert!(is_prime(65537));
        assert!(!is_prime(65535));
        assert_eq!(primitive_root(65537), 3);
        assert_eq!(prime_congruent_one(8, 1024), 1033);
        assert_eq!(multiplicative_order(2, 17), 8);
    }

    #[test]
    fn tonelli_shanks() {
        let p = 65537;
        for v in [2u64, 3, 5, 12345, 65536] {
            let x = PrimeFieldElem::new(v, p);
            match x.sqrt() {
                Some(r) => assert_eq!(r * r, x),
                None => assert!(!x.is_square()),
            }
        }
    }

    #[test]
    fn fp2_field_ops() {
        let p = 17;
        let nr = smallest_nonresidue(p);
        let w = Fp2Elem::w(p, nr);
        assert_eq!(w * w, Fp2Elem::new(nr, 0, p, nr));
        let x = Fp2Elem::new(5, 7, p, nr);
        assert!((x * x.inv().unwrap()) == x.one_like());
        let three = PrimeFieldElem::new(3, p);
        let s = Fp2Elem::sqrt_of_base(three, nr);
        assert_eq!(s * s, Fp2Elem::from_base(three, nr));
    }
}
