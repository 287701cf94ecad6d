//! Sparse polynomials over F_p in at most eight variables, degree-reverse-
//! lexicographic order with x1 > x2 > … > xn.

use std::cmp::Ordering;
use std::fmt;

use crate::exact::{FieldElem, PrimeFieldElem};

pub const MAX_VARS: usize = 8;
/// Exponents must stay below this for the packed divisibility test.
pub const MAX_EXPONENT: u32 = 127;

const LOW: u64 = (1 << 56) - 1;
const HIGH_BITS: u64 = 0x0080_8080_8080_8080;

/// A packed monomial: the top byte is the total degree, byte i−1 holds the
/// exponent of variable i for i ≥ 1. The exponent of x1 is implied.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Mono(u64);

impl Mono {
    pub const ONE: Mono = Mono(0);

    pub fn from_exps(exps: &[u32]) -> Mono {
        assert!(exps.len() <= MAX_VARS);
        let deg: u32 = exps.iter().sum();
        assert!(deg <= MAX_EXPONENT, "degree {deg} too large");
        let mut m = (deg as u64) << 56;
        for (i, &e) in exps.iter().enumerate().skip(1) {
            m |= (e as u64) << (8 * (i - 1));
        }
        Mono(m)
    }

    pub fn var(i: usize) -> Mono {
        let mut e = [0u32; MAX_VARS];
        e[i] = 1;
        Mono::from_exps(&e)
    }

    #[inline]
    pub fn degree(self) -> u32 {
        (self.0 >> 56) as u32
    }

    #[inline]
    fn low_sum(self) -> u32 {
        ((self.0 & LOW).wrapping_mul(0x0101_0101_0101_0101) >> 56) as u32
    }

    #[inline]
    pub fn exp(self, i: usize) -> u32 {
        if i == 0 {
            self.degree() - self.low_sum()
        } else {
            ((self.0 >> (8 * (i - 1))) & 0xff) as u32
        }
    }

    pub fn exps(self, n: usize) -> Vec<u32> {
        (0..n).map(|i| self.exp(i)).collect()
    }

    #[inline]
    pub fn mul(self, other: Mono) -> Mono {
        debug_assert!(self.degree() + other.degree() <= MAX_EXPONENT);
        Mono(self.0 + other.0)
    }

    /// Whether `self` divides `other`.
    #[inline]
    pub fn divides(self, other: Mono) -> bool {
        if self.degree() > other.degree() {
            return false;
        }
        let (a, b) = (self.0 & LOW, other.0 & LOW);
        if ((b | HIGH_BITS) - a) & HIGH_BITS != HIGH_BITS {
            return false;
        }
        self.exp(0) <= other.exp(0)
    }

    /// `other / self`, assuming divisibility.
    #[inline]
    pub fn quotient_of(self, other: Mono) -> Mono {
        Mono(other.0 - self.0)
    }

    pub fn lcm(self, other: Mono) -> Mono {
        let e: Vec<u32> = (0..MAX_VARS).map(|i| self.exp(i).max(other.exp(i))).collect();
        Mono::from_exps(&e)
    }

    pub fn coprime(self, other: Mono) -> bool {
        (0..MAX_VARS).all(|i| self.exp(i) == 0 || other.exp(i) == 0)
    }

    /// The single variable of a pure power x_i^e, if it is one.
    pub fn pure_power(self) -> Option<(usize, u32)> {
        let d = self.degree();
        if d == 0 {
            return None;
        }
        (0..MAX_VARS).find(|&i| self.exp(i) == d).map(|i| (i, d))
    }

    pub fn format(self, names: &[String]) -> String {
        let parts: Vec<String> = (0..names.len())
            .filter(|&i| self.exp(i) > 0)
            .map(|i| match self.exp(i) {
                1 => names[i].clone(),
                e => format!("{}^{e}", names[i]),
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Mono {
    #[inline]
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| (other.0 & LOW).cmp(&(self.0 & LOW)))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps(MAX_VARS))
    }
}

/// Coefficient field F_p and variable names. Monomial order is fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    pub names: Vec<String>,
    pub prime: u64,
}

impl PolyRing {
    pub fn new(nvars: usize, prime: u64) -> Self {
        Self::with_prefix(nvars, prime, "x")
    }

    pub fn with_prefix(nvars: usize, prime: u64, prefix: &str) -> Self {
        assert!(nvars <= MAX_VARS && nvars > 0);
        assert!(prime < (1 << 31), "prime must fit in 31 bits");
        PolyRing { names: (1..=nvars).map(|i| format!("{prefix}{i}")).collect(), prime }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn elem(&self, v: u64) -> PrimeFieldElem {
        PrimeFieldElem::new(v, self.prime)
    }
}

/// Terms sorted by strictly decreasing monomial, nonzero coefficients in
/// [1, p).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    pub terms: Vec<(Mono, u32)>,
}

#[inline]
fn mulp(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn inv_mod(a: u32, p: u32) -> u32 {
    crate::exact::fp::powmod(a as u64, p as u64 - 2, p as u64) as u32
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn constant(c: u32) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            Poly { terms: vec![(Mono::ONE, c)] }
        }
    }

    pub fn monomial(m: Mono, c: u32) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Build from unsorted terms, combining duplicates.
    pub fn from_terms(mut terms: Vec<(Mono, u32)>, p: u32) -> Self {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Mono, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = c % p;
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = (last.1 + c) % p,
                _ => out.push((m, c)),
            }
            if out.last().is_some_and(|t| t.1 == 0) {
                out.pop();
            }
        }
        Poly { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> Mono {
        self.terms[0].0
    }

    pub fn lc(&self) -> u32 {
        self.terms[0].1
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree())
    }

    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Mono::ONE
    }

    pub fn monic(&self, p: u32) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lc(), p), p)
    }

    pub fn scale(&self, c: u32, p: u32) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|&(m, a)| (m, mulp(a, c, p))).collect() }
    }

    pub fn neg(&self, p: u32) -> Poly {
        Poly { terms: self.terms.iter().map(|&(m, a)| (m, p - a)).collect() }
    }

    /// self + c·m·other.
    pub fn add_scaled(&self, other: &Poly, c: u32, m: Mono, p: u32) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            let take = if i == a.len() {
                Ordering::Less
            } else if j == b.len() {
                Ordering::Greater
            } else {
                a[i].0.cmp(&m.mul(b[j].0))
            };
            match take {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push((m.mul(b[j].0), mulp(b[j].1, c, p)));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = (a[i].1 + mulp(b[j].1, c, p)) % p;
                    if s != 0 {
                        out.push((a[i].0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { terms: out }
    }

    pub fn add(&self, other: &Poly, p: u32) -> Poly {
        self.add_scaled(other, 1, Mono::ONE, p)
    }

    pub fn sub(&self, other: &Poly, p: u32) -> Poly {
        self.add_scaled(other, p - 1, Mono::ONE, p)
    }

    pub fn mul(&self, other: &Poly, p: u32) -> Poly {
        let mut acc = Poly::zero();
        for &(m, c) in &other.terms {
            acc = acc.add_scaled(self, c, m, p);
        }
        acc
    }

    /// Value at a point over any extension of F_p.
    pub fn eval<F: FieldElem>(&self, point: &[F]) -> F {
        let zero = point[0].zero_like();
        let mut acc = zero;
        for &(m, c) in &self.terms {
            let mut t = zero.from_u64_like(c as u64);
            for (i, &x) in point.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t = t * x.pow(e as u128);
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitute constants for some variables (`None` keeps a variable).
    pub fn substitute(&self, values: &[Option<u32>], p: u32) -> Poly {
        let n = values.len();
        let terms = self
            .terms
            .iter()
            .filter_map(|&(m, c)| {
                let mut e = m.exps(n);
                let mut c = c;
                for i in 0..n {
                    if let Some(v) = values[i] {
                        c = mulp(c, crate::exact::fp::powmod(v as u64, e[i] as u64, p as u64) as u32, p);
                        e[i] = 0;
                    }
                }
                (c != 0).then(|| (Mono::from_exps(&e), c))
            })
            .collect();
        Poly::from_terms(terms, p)
    }

    /// Partial derivative with respect to variable i.
    pub fn derivative(&self, i: usize, n: usize, p: u32) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter_map(|&(m, c)| {
                let mut e = m.exps(n);
                if e[i] == 0 {
                    return None;
                }
                let c = mulp(c, e[i] % p, p);
                e[i] -= 1;
                (c != 0).then(|| (Mono::from_exps(&e), c))
            })
            .collect();
        Poly::from_terms(terms, p)
    }

    pub fn format(&self, ring: &PolyRing) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|&(m, c)| {
                if m == Mono::ONE {
                    c.to_string()
                } else if c == 1 {
                    m.format(&ring.names)
                } else {
                    format!("{c}*{}", m.format(&ring.names))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.terms.iter().map(|(m, c)| (m, c))).finish()
    }
}

/// The quadric Σ_{i≤j} c_ij x_i x_j from a coefficient vector on the
/// lexicographic monomial basis.
pub fn quadric_from_coeffs(n: usize, coeffs: &[PrimeFieldElem], p: u32) -> Poly {
    let mut terms = Vec::new();
    for (k, (i, j)) in crate::quadrics::monomials(n).into_iter().enumerate() {
        let c = coeffs[k].value as u32;
        if c != 0 {
            let mut e = [0u32; MAX_VARS];
            e[i] += 1;
            e[j] += 1;
            terms.push((Mono::from_exps(&e[..n]), c));
        }
    }
    Poly::from_terms(terms, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_order() {
        // x1 > x2 > x3; x2^2 > x1*x3 in grevlex
        let m = |e: &[u32]| Mono::from_exps(e);
        assert!(m(&[1, 0, 0]) > m(&[0, 1, 0]));
        assert!(m(&[0, 2, 0]) > m(&[1, 0, 1]));
        assert!(m(&[0, 0, 3]) > m(&[2, 0, 0]));
        assert!(m(&[1, 1, 0]) > m(&[0, 2, 0]));
    }

    #[test]
    fn packed_operations() {
        let a = Mono::from_exps(&[2, 0, 1, 0, 0, 0, 0, 3]);
        let b = Mono::from_exps(&[1, 0, 1, 0, 0, 0, 0, 1]);
        assert!(b.divides(a));
        assert!(!a.divides(b));
        assert_eq!(b.quotient_of(a), Mono::from_exps(&[1, 0, 0, 0, 0, 0, 0, 2]));
        assert_eq!(a.exp(0), 2);
        assert_eq!(a.mul(b).exps(8), vec![3, 0, 2, 0, 0, 0, 0, 4]);
        assert_eq!(Mono::from_exps(&[3, 0]).divides(Mono::from_exps(&[2, 5])), false);
        assert_eq!(Mono::from_exps(&[0, 0, 4]).pure_power(), Some((2, 4)));
        assert_eq!(a.lcm(Mono::from_exps(&[0, 5])).exps(8), vec![2, 5, 1, 0, 0, 0, 0, 3]);
    }

    #[test]
    fn arithmetic_mod_p() {
        let p = 17;
        let x = Poly::monomial(Mono::var(0), 1);
        let y = Poly::monomial(Mono::var(1), 1);
        let s = x.add(&y, p);
        let d = x.sub(&y, p);
        let prod = s.mul(&d, p);
        let want = x.mul(&x, p).sub(&y.mul(&y, p), p);
        assert_eq!(prod, want);
        let pt = [PrimeFieldElem::new(3, 17), PrimeFieldElem::new(5, 17)];
        assert_eq!(prod.eval(&pt), PrimeFieldElem::from_i64(9 - 25, 17));
        assert_eq!(prod.derivative(0, 2, p), x.scale(2, p));
    }
}
