//! Buchberger's algorithm with the Gebauer–Möller criteria and the sugar
//! selection strategy.

use std::collections::{BTreeMap, HashSet};

use super::poly::{Mono, Poly, PolyRing};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    /// Reduced, monic, sorted by increasing leading monomial.
    pub polys: Vec<Poly>,
    pub prime: u32,
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    sugar: u32,
}

/// Fully reduce `f` by the polynomials `basis[k]` for `k` in `reducers`. All
/// reducers must be monic.
fn reduce_by(f: &Poly, basis: &[Poly], reducers: &[usize], p: u32) -> Poly {
    if f.is_zero() {
        return Poly::zero();
    }
    let mut h: BTreeMap<Mono, u32> = f.terms.iter().copied().collect();
    let mut out = Vec::new();
    while let Some((m, c)) = h.pop_last() {
        let Some(&g) = reducers.iter().find(|&&k| basis[k].lm().divides(m)) else {
            out.push((m, c));
            continue;
        };
        let q = basis[g].lm().quotient_of(m);
        let neg = p - c;
        for &(gm, gc) in &basis[g].terms[1..] {
            let key = q.mul(gm);
            let add = ((neg as u64 * gc as u64) % p as u64) as u32;
            match h.entry(key) {
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let s = (*e.get() + add) % p;
                    if s == 0 {
                        e.remove();
                    } else {
                        *e.get_mut() = s;
                    }
                }
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(add);
                }
            }
        }
    }
    Poly { terms: out }
}

fn spoly(f: &Poly, g: &Poly, lcm: Mono, p: u32) -> Poly {
    let mf = f.lm().quotient_of(lcm);
    let mg = g.lm().quotient_of(lcm);
    // both monic: leading terms cancel
    let a = Poly { terms: f.terms[1..].to_vec() };
    let b = Poly { terms: g.terms[1..].to_vec() };
    Poly::zero().add_scaled(&a, 1, mf, p).add_scaled(&b, p - 1, mg, p)
}

struct Builder {
    p: u32,
    basis: Vec<Poly>,
    sugar: Vec<u32>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl Builder {
    fn insert(&mut self, h: Poly, sugar: u32) {
        let idx = self.basis.len();
        let t = h.lm();
        self.basis.push(h);
        self.sugar.push(sugar);
        let mut c: Vec<Pair> = self
            .active
            .iter()
            .map(|&g| {
                let lg = self.basis[g].lm();
                let lcm = lg.lcm(t);
                let s = (self.sugar[g] + lcm.degree() - lg.degree()).max(sugar + lcm.degree() - t.degree());
                Pair { i: g, j: idx, lcm, sugar: s }
            })
            .collect();
        let mut d: Vec<Pair> = Vec::new();
        while let Some(pr) = c.pop() {
            let coprime = self.basis[pr.i].lm().coprime(t);
            if coprime || (!c.iter().any(|q| q.lcm.divides(pr.lcm)) && !d.iter().any(|q| q.lcm.divides(pr.lcm))) {
                d.push(pr);
            }
        }
        d.retain(|pr| !self.basis[pr.i].lm().coprime(t));
        let basis = &self.basis;
        self.pairs.retain(|q| {
            !(t.divides(q.lcm)
                && basis[q.i].lm().lcm(t) != q.lcm
                && basis[q.j].lm().lcm(t) != q.lcm)
        });
        d.reverse();
        self.pairs.extend(d);
        self.active.retain(|&g| !t.divides(basis[g].lm()));
        self.active.push(idx);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (x, y) = (&self.pairs[a], &self.pairs[b]);
            x.sugar.cmp(&y.sugar).then(x.lcm.cmp(&y.lcm)).then((x.i, x.j).cmp(&(y.i, y.j)))
        })?;
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner(gens: &[Poly], ring: &PolyRing) -> GroebnerBasis {
    let p = ring.prime as u32;
    let unit = || GroebnerBasis { polys: vec![Poly::constant(1)], prime: p };
    let mut b = Builder { p, basis: Vec::new(), sugar: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    let mut input: Vec<&Poly> = gens.iter().filter(|g| !g.is_zero()).collect();
    input.sort_by(|a, c| a.lm().cmp(&c.lm()).then(a.len().cmp(&c.len())));
    for f in input {
        let r = reduce_by(f, &b.basis, &b.active, p);
        if r.is_zero() {
            continue;
        }
        if r.lm() == Mono::ONE {
            return unit();
        }
        let s = f.degree();
        b.insert(r.monic(p), s);
    }
    while let Some(pr) = b.next_pair() {
        let s = spoly(&b.basis[pr.i], &b.basis[pr.j], pr.lcm, b.p);
        let r = reduce_by(&s, &b.basis, &b.active, b.p);
        if r.is_zero() {
            continue;
        }
        if r.lm() == Mono::ONE {
            return unit();
        }
        b.insert(r.monic(b.p), pr.sugar);
    }
    // the active set is minimal; reduce tails
    let mut act = b.active.clone();
    act.sort_by(|&x, &y| b.basis[x].lm().cmp(&b.basis[y].lm()));
    let mut polys = Vec::with_capacity(act.len());
    for (k, &i) in act.iter().enumerate() {
        let others: Vec<usize> = act.iter().enumerate().filter(|&(l, _)| l != k).map(|(_, &j)| j).collect();
        let f = &b.basis[i];
        let tail = Poly { terms: f.terms[1..].to_vec() };
        let mut r = reduce_by(&tail, &b.basis, &others, p);
        r.terms.insert(0, f.terms[0]);
        polys.push(r);
    }
    GroebnerBasis { polys, prime: p }
}

impl GroebnerBasis {
    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_unit()
    }

    pub fn leading_monomials(&self) -> Vec<Mono> {
        self.polys.iter().map(Poly::lm).collect()
    }

    pub fn reduce(&self, f: &Poly) -> Poly {
        let idx: Vec<usize> = (0..self.polys.len()).collect();
        reduce_by(f, &self.polys, &idx, self.prime)
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.reduce(f).is_zero()
    }

    /// For each listed variable, the exponent of a pure power among the
    /// leading monomials, if any.
    pub fn pure_powers(&self, vars: &[usize]) -> Vec<Option<u32>> {
        vars.iter()
            .map(|&v| {
                self.polys
                    .iter()
                    .filter_map(|g| g.lm().pure_power())
                    .filter(|&(i, _)| i == v)
                    .map(|(_, e)| e)
                    .min()
            })
            .collect()
    }

    /// Monomials in `vars` outside the leading-term ideal, in increasing
    /// order; `None` if there are more than `limit`.
    pub fn standard_monomials(&self, vars: &[usize], limit: usize) -> Option<Vec<Mono>> {
        if self.is_unit() {
            return Some(Vec::new());
        }
        let lms = self.leading_monomials();
        let mut seen: HashSet<Mono> = HashSet::new();
        let mut frontier = vec![Mono::ONE];
        seen.insert(Mono::ONE);
        let mut out = vec![Mono::ONE];
        while let Some(m) = frontier.pop() {
            for &v in vars {
                let n = m.mul(Mono::var(v));
                if n.degree() > super::poly::MAX_EXPONENT - 1 {
                    return None;
                }
                if seen.contains(&n) || lms.iter().any(|l| l.divides(n)) {
                    continue;
                }
                seen.insert(n);
                out.push(n);
                if out.len() > limit {
                    return None;
                }
                frontier.push(n);
            }
        }
        out.sort();
        Some(out)
    }

    pub fn format_leading_terms(&self, ring: &PolyRing) -> Vec<String> {
        self.polys.iter().map(|g| g.lm().format(&ring.names)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> Poly {
        Poly::monomial(Mono::var(i), 1)
    }

    #[test]
    fn already_a_basis() {
        let r = PolyRing::new(2, 17);
        let p = 17;
        let gens = vec![v(0).mul(&v(0), p), v(0).mul(&v(1), p), v(1).mul(&v(1), p)];
        let gb = groebner(&gens, &r);
        let mut want = gens.clone();
        want.sort_by(|a, b| a.lm().cmp(&b.lm()));
        assert_eq!(gb.polys, want);
        let gens = vec![v(0).sub(&v(1), p), v(1).mul(&v(1), p)];
        let gb = groebner(&gens, &r);
        assert_eq!(gb.polys, vec![v(0).sub(&v(1), p), v(1).mul(&v(1), p)]);
    }

    #[test]
    fn unit_ideal_and_membership() {
        let r = PolyRing::new(2, 101);
        let p = 101;
        // x*y - 1 and x
        let gens = vec![v(0).mul(&v(1), p).sub(&Poly::constant(1), p), v(0)];
        assert!(groebner(&gens, &r).is_unit());
        // twisted cubic: 2x2 minors of [[x,y,z],[y,z,w]]
        let r4 = PolyRing::new(4, 101);
        let m = |a: usize, b: usize, c: usize, d: usize| v(a).mul(&v(b), p).sub(&v(c).mul(&v(d), p), p);
        let gens = vec![m(0, 2, 1, 1), m(0, 3, 1, 2), m(1, 3, 2, 2)];
        let gb = groebner(&gens, &r4);
        assert_eq!(gb.polys.len(), 3);
        let f = v(0).mul(&m(1, 3, 2, 2), p).add(&v(3).mul(&m(0, 2, 1, 1), p), p);
        assert!(gb.contains(&f));
        assert!(!gb.contains(&v(0)));
    }

    #[test]
    fn standard_monomials_of_points() {
        // {x^2 - 1, y - x} in two variables: two points
        let r = PolyRing::new(2, 17);
        let p = 17;
        let gens = vec![v(0).mul(&v(0), p).sub(&Poly::constant(1), p), v(1).sub(&v(0), p)];
        let gb = groebner(&gens, &r);
        assert_eq!(gb.standard_monomials(&[0, 1], 100).unwrap().len(), 2);
    }
}
