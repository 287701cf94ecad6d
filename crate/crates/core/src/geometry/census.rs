use std::collections::HashMap;

use super::emptiness::chart_forms;
use super::groebner::groebner;
use super::poly::{Mono, Poly, PolyRing};
use super::GeometryError;
use crate::exact::fp::smallest_nonresidue;
use crate::exact::linalg::{charpoly, nullspace, poly_roots, rank};
use crate::exact::{CycMatrix, Embedding, FieldElem, Fp2Elem, PrimeFieldElem};

/// Largest quotient dimension handled per chart in Gröbner mode.
const QUOTIENT_LIMIT: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CensusMode {
    /// Forms with square monomials only: solve for the squares on every
    /// coordinate support.
    Diagonal,
    /// Quadrics plus the 4×4 minors of the Jacobian, then point extraction
    /// chart by chart.
    Groebner,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPoint {
    /// Over F_{p²}; the first nonzero coordinate is 1.
    pub coords: Vec<Fp2Elem>,
    /// 1-based indices of the vanishing coordinates.
    pub zero_pattern: Vec<usize>,
    /// Node verdict; `None` when the Jacobian rank is not 3.
    pub odp: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularCensus {
    pub mode: CensusMode,
    pub prime: u64,
    /// F_{p²} = F_p(w) with w² = nonresidue.
    pub nonresidue: u64,
    pub points: Vec<SingularPoint>,
    /// Number of geometric singular points (length of the singular scheme in
    /// Gröbner mode).
    pub geometric_count: usize,
    /// Points counted but not extracted (not defined over F_{p²}).
    pub unresolved: usize,
}

impl SingularCensus {
    /// Distinct zero patterns with their point counts.
    pub fn patterns(&self) -> Vec<(Vec<usize>, usize)> {
        let mut m: std::collections::BTreeMap<Vec<usize>, usize> = Default::default();
        for pt in &self.points {
            *m.entry(pt.zero_pattern.clone()).or_default() += 1;
        }
        m.into_iter().collect()
    }

    pub fn all_odp(&self) -> bool {
        self.points.iter().all(|p| p.odp == Some(true))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OdpReport {
    pub is_odp: bool,
    pub jacobian_rank: usize,
    pub hessian_rank: usize,
    /// Index of the coordinate set to 1.
    pub chart: usize,
}

fn lift(x: PrimeFieldElem, nr: u64) -> Fp2Elem {
    Fp2Elem::from_base(x, nr)
}

fn zero_pattern<F: FieldElem>(coords: &[F]) -> Vec<usize> {
    (0..coords.len()).filter(|&i| coords[i].is_zero()).map(|i| i + 1).collect()
}

fn normalize<F: FieldElem>(v: &mut [F]) -> bool {
    let Some(k) = v.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    let inv = v[k].inv().unwrap();
    for x in v.iter_mut() {
        *x = *x * inv;
    }
    true
}

/// Node test at a point of the complete intersection: the Jacobian has rank
/// 3, and the Hessian of the relation among the differentials is
/// nondegenerate on the tangent space of the smooth fourfold cut by the
/// other three equations.
pub fn odp_test<F: FieldElem>(point: &[F], forms: &[Poly]) -> Result<OdpReport, GeometryError> {
    let n = point.len();
    let p = point[0].characteristic() as u32;
    let k = forms.len();
    let jac: Vec<Vec<F>> = forms
        .iter()
        .map(|f| (0..n).map(|i| f.derivative(i, n, p).eval(point)).collect())
        .collect();
    let jr = rank(&jac);
    if jr != 3 {
        return Err(GeometryError::JacobianRank(jr));
    }
    let sample = point[0];
    let jt: Vec<Vec<F>> = (0..n).map(|i| (0..k).map(|r| jac[r][i]).collect()).collect();
    let lam = nullspace(&jt, k, sample);
    let lam = &lam[0];
    let hess: Vec<Vec<F>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = sample.zero_like();
                    for (f, &l) in forms.iter().zip(lam) {
                        if !l.is_zero() {
                            acc = acc + l * f.derivative(i, n, p).derivative(j, n, p).eval(point);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let chart = (0..n).rev().find(|&i| !point[i].is_zero()).expect("nonzero point");
    let mut rows = jac.clone();
    let mut e = vec![sample.zero_like(); n];
    e[chart] = sample.one_like();
    rows.push(e);
    let tangent = nullspace(&rows, n, sample);
    let restricted: Vec<Vec<F>> = tangent
        .iter()
        .map(|u| {
            tangent
                .iter()
                .map(|v| {
                    let mut acc = sample.zero_like();
                    for i in 0..n {
                        for j in 0..n {
                            acc = acc + u[i] * hess[i][j] * v[j];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let hr = rank(&restricted);
    Ok(OdpReport { is_odp: hr == tangent.len(), jacobian_rank: jr, hessian_rank: hr, chart })
}

fn diagonal_matrix(forms: &[Poly], n: usize, p: u64) -> Result<Vec<Vec<PrimeFieldElem>>, GeometryError> {
    let mut a = vec![vec![PrimeFieldElem::new(0, p); n]; forms.len()];
    for (k, f) in forms.iter().enumerate() {
        for &(m, c) in &f.terms {
            match m.pure_power() {
                Some((i, 2)) => a[k][i] = PrimeFieldElem::new(c as u64, p),
                _ => return Err(GeometryError::NotDiagonal),
            }
        }
    }
    Ok(a)
}

fn diagonal_points(forms: &[Poly], n: usize, p: u64, nr: u64) -> Result<Vec<Vec<Fp2Elem>>, GeometryError> {
    let a = diagonal_matrix(forms, n, p)?;
    let sample = PrimeFieldElem::new(0, p);
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let support: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let sub: Vec<Vec<PrimeFieldElem>> = a.iter().map(|row| support.iter().map(|&i| row[i]).collect()).collect();
        let kernel = nullspace(&sub, support.len(), sample);
        if kernel.is_empty() {
            continue;
        }
        let full = (0..support.len()).all(|c| kernel.iter().any(|v| !v[c].is_zero()));
        if !full || support.len() - kernel.len() >= forms.len() {
            continue;
        }
        if kernel.len() > 1 {
            let zeros = (0..n).filter(|i| !support.contains(i)).map(|i| i + 1).collect();
            return Err(GeometryError::PositiveDimensional(zeros));
        }
        let y = &kernel[0];
        let y0inv = y[0].inv().unwrap();
        let roots: Vec<Fp2Elem> = y.iter().map(|&v| Fp2Elem::sqrt_of_base(v * y0inv, nr)).collect();
        let s = support.len();
        for signs in 0u32..(1 << (s - 1)) {
            let mut pt = vec![Fp2Elem::new(0, 0, p, nr); n];
            pt[support[0]] = Fp2Elem::new(1, 0, p, nr);
            for c in 1..s {
                let r = roots[c];
                pt[support[c]] = if signs >> (c - 1) & 1 == 1 { -r } else { r };
            }
            out.push(pt);
        }
    }
    Ok(out)
}

/// All 4×4 minors of the Jacobian of four forms.
fn jacobian_minors(forms: &[Poly], n: usize, p: u32) -> Vec<Poly> {
    let d: Vec<Vec<Poly>> = forms.iter().map(|f| (0..n).map(|i| f.derivative(i, n, p)).collect()).collect();
    let k = forms.len();
    let mut out = Vec::new();
    let mut cols: Vec<usize> = (0..k).collect();
    loop {
        out.push(det(&d, &cols, p));
        // next combination
        let mut i = k;
        while i > 0 && cols[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        cols[i - 1] += 1;
        for j in i..k {
            cols[j] = cols[j - 1] + 1;
        }
    }
    out.retain(|m| !m.is_zero());
    out
}

fn det(d: &[Vec<Poly>], cols: &[usize], p: u32) -> Poly {
    fn rec(d: &[Vec<Poly>], row: usize, cols: &[usize], used: &mut Vec<bool>, p: u32) -> Poly {
        if row == d.len() {
            return Poly::constant(1);
        }
        let mut acc = Poly::zero();
        let mut sign = true;
        for (ci, &c) in cols.iter().enumerate() {
            if used[ci] {
                continue;
            }
            if !d[row][c].is_zero() {
                used[ci] = true;
                let minor = rec(d, row + 1, cols, used, p);
                used[ci] = false;
                let term = d[row][c].mul(&minor, p);
                acc = if sign { acc.add(&term, p) } else { acc.sub(&term, p) };
            }
            sign = !sign;
        }
        acc
    }
    rec(d, 0, cols, &mut vec![false; cols.len()], p)
}

struct ChartPoints {
    length: usize,
    points: Vec<Vec<Fp2Elem>>,
}

fn chart_points(basis: &[Poly], ring: &PolyRing, chart: usize, nr: u64) -> Result<ChartPoints, GeometryError> {
    let n = ring.nvars();
    let p = ring.prime;
    let gb = groebner(&chart_forms(basis, n, chart, p as u32), ring);
    if gb.is_unit() {
        return Ok(ChartPoints { length: 0, points: Vec::new() });
    }
    let vars: Vec<usize> = (chart + 1..n).collect();
    if gb.pure_powers(&vars).iter().any(Option::is_none) {
        return Err(GeometryError::PositiveDimensional((1..=chart).collect()));
    }
    let std = gb.standard_monomials(&vars, QUOTIENT_LIMIT).ok_or(GeometryError::QuotientTooLarge(chart))?;
    let dim = std.len();
    let index: HashMap<Mono, usize> = std.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let zero = PrimeFieldElem::new(0, p);
    // mult[v][r][c]: coefficient of std[r] in NF(x_v · std[c])
    let mult: Vec<Vec<Vec<PrimeFieldElem>>> = vars
        .iter()
        .map(|&v| {
            let mut m = vec![vec![zero; dim]; dim];
            for (c, &b) in std.iter().enumerate() {
                let nf = gb.reduce(&Poly::monomial(b.mul(Mono::var(v)), 1));
                for &(mono, coef) in &nf.terms {
                    m[index[&mono]][c] = PrimeFieldElem::new(coef as u64, p);
                }
            }
            m
        })
        .collect();
    let mut generic = vec![vec![zero; dim]; dim];
    for (k, m) in mult.iter().enumerate() {
        let c = PrimeFieldElem::new(7 * k as u64 + 3, p);
        for r in 0..dim {
            for s in 0..dim {
                generic[r][s] = generic[r][s] + c * m[r][s];
            }
        }
    }
    let s2 = Fp2Elem::new(0, 0, p, nr);
    // left eigenvectors: transpose
    let gt: Vec<Vec<Fp2Elem>> = (0..dim).map(|r| (0..dim).map(|s| lift(generic[s][r], nr)).collect()).collect();
    let cp = charpoly(&gt, s2);
    let roots = poly_roots(&cp, s2);
    let mut points = Vec::new();
    for lam in roots {
        let shifted: Vec<Vec<Fp2Elem>> = gt
            .iter()
            .enumerate()
            .map(|(r, row)| row.iter().enumerate().map(|(s, &x)| if r == s { x - lam } else { x }).collect())
            .collect();
        let ker = nullspace(&shifted, dim, s2);
        if ker.len() != 1 || ker[0][0].is_zero() {
            continue;
        }
        let w0inv = ker[0][0].inv().unwrap();
        let w: Vec<Fp2Elem> = ker[0].iter().map(|&x| x * w0inv).collect();
        let mut pt = vec![s2; n];
        pt[chart] = s2.one_like();
        for (k, &v) in vars.iter().enumerate() {
            let mut acc = s2;
            for b in 0..dim {
                acc = acc + w[b] * lift(mult[k][b][0], nr);
            }
            pt[v] = acc;
        }
        points.push(pt);
    }
    Ok(ChartPoints { length: dim, points })
}

/// Singular points of the complete intersection of `forms` in P^(n−1).
pub fn singular_census(forms: &[Poly], ring: &PolyRing, mode: CensusMode) -> Result<SingularCensus, GeometryError> {
    let n = ring.nvars();
    let p = ring.prime;
    let nr = smallest_nonresidue(p);
    let (raw, geometric_count) = match mode {
        CensusMode::Diagonal => {
            let pts = diagonal_points(forms, n, p, nr)?;
            let c = pts.len();
            (pts, c)
        }
        CensusMode::Groebner => {
            let mut gens = forms.to_vec();
            gens.extend(jacobian_minors(forms, n, p as u32));
            let gb = groebner(&gens, ring);
            let mut pts = Vec::new();
            let mut length = 0;
            if !gb.is_unit() {
                for chart in 0..n {
                    let cp = chart_points(&gb.polys, ring, chart, nr)?;
                    length += cp.length;
                    pts.extend(cp.points);
                }
            }
            (pts, length)
        }
    };
    let mut points: Vec<SingularPoint> = raw
        .into_iter()
        .map(|coords| {
            let lifted: Vec<Poly> = forms.to_vec();
            let odp = odp_test(&coords, &lifted).ok().map(|r| r.is_odp);
            SingularPoint { zero_pattern: zero_pattern(&coords), coords, odp }
        })
        .collect();
    points.sort_by(|a, b| a.zero_pattern.cmp(&b.zero_pattern).then_with(|| a.coords.cmp(&b.coords)));
    let unresolved = geometric_count.saturating_sub(points.len());
    Ok(SingularCensus { mode, prime: p, nonresidue: nr, points, geometric_count, unresolved })
}

/// Orbits of the census points under the point maps x ↦ Mᵀx of the
/// generators; fails if some image is not a census point.
pub fn census_orbits(
    census: &SingularCensus,
    generators: &[CycMatrix],
    emb: &Embedding,
) -> Result<Vec<Vec<usize>>, GeometryError> {
    let nr = census.nonresidue;
    let index: HashMap<&[Fp2Elem], usize> =
        census.points.iter().enumerate().map(|(i, pt)| (pt.coords.as_slice(), i)).collect();
    let count = census.points.len();
    let mut parent: Vec<usize> = (0..count).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for (gi, m) in generators.iter().enumerate() {
        let n = m.rows();
        let mt: Vec<Vec<Fp2Elem>> = (0..n)
            .map(|i| (0..n).map(|j| emb.apply(m.get(j, i)).map(|x| lift(x, nr))).collect::<Result<_, _>>())
            .collect::<Result<_, _>>()?;
        for (pi, pt) in census.points.iter().enumerate() {
            let mut img: Vec<Fp2Elem> = (0..n)
                .map(|i| mt[i].iter().zip(&pt.coords).fold(pt.coords[0].zero_like(), |acc, (&a, &b)| acc + a * b))
                .collect();
            normalize(&mut img);
            let &qi = index.get(img.as_slice()).ok_or(GeometryError::NotClosed(gi))?;
            let (a, b) = (find(&mut parent, pi), find(&mut parent, qi));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut orbits: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..count {
        let r = find(&mut parent, i);
        orbits.entry(r).or_default().push(i);
    }
    Ok(orbits.into_values().collect())
}
