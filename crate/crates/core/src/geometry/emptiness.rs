use super::groebner::groebner;
use super::poly::{Poly, PolyRing};
use crate::exact::{FieldElem, PrimeFieldElem};

/// Largest number of projective points searched for an F_p witness.
const WITNESS_LIMIT: u128 = 1 << 22;

/// Chart x_i = 1, x_j = 0 for j < i, and whether the dehomogenized ideal is
/// the unit ideal there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartCertificate {
    pub chart: usize,
    pub unit: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmptinessCertificate {
    /// (variable, exponent) of a pure-power leading term for each variable.
    pub pure_powers: Vec<(usize, u32)>,
    pub leading_terms: Vec<String>,
    pub charts: Vec<ChartCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Emptiness {
    Empty(EmptinessCertificate),
    /// Nonempty over the algebraic closure. `witness` is an F_p-rational
    /// point when one was found; `chart` is the first chart with a nonunit
    /// dehomogenized ideal.
    NonEmpty { witness: Option<Vec<u32>>, chart: Option<usize>, leading_terms: Vec<String> },
}

impl Emptiness {
    pub fn is_empty(&self) -> bool {
        matches!(self, Emptiness::Empty(_))
    }
}

/// Dehomogenize on chart `i`: x_j = 0 for j < i and x_i = 1.
pub(super) fn chart_forms(forms: &[Poly], n: usize, i: usize, p: u32) -> Vec<Poly> {
    let values: Vec<Option<u32>> = (0..n)
        .map(|j| match j.cmp(&i) {
            std::cmp::Ordering::Less => Some(0),
            std::cmp::Ordering::Equal => Some(1),
            std::cmp::Ordering::Greater => None,
        })
        .collect();
    forms.iter().map(|f| f.substitute(&values, p)).collect()
}

/// Whether homogeneous `forms` have a common zero in P^(n−1) over the
/// algebraic closure of F_p.
pub fn projective_empty(forms: &[Poly], ring: &PolyRing) -> Emptiness {
    let n = ring.nvars();
    let p = ring.prime as u32;
    let gb = groebner(forms, ring);
    let leading_terms = gb.format_leading_terms(ring);
    let vars: Vec<usize> = (0..n).collect();
    let powers = gb.pure_powers(&vars);
    if gb.is_unit() || powers.iter().all(Option::is_some) {
        let pure_powers = if gb.is_unit() {
            vars.iter().map(|&v| (v, 0)).collect()
        } else {
            vars.iter().zip(&powers).map(|(&v, e)| (v, e.unwrap())).collect()
        };
        let charts = (0..n)
            .map(|i| ChartCertificate { chart: i, unit: groebner(&chart_forms(&gb.polys, n, i, p), ring).is_unit() })
            .collect();
        return Emptiness::Empty(EmptinessCertificate { pure_powers, leading_terms, charts });
    }
    let chart = (0..n).find(|&i| !groebner(&chart_forms(&gb.polys, n, i, p), ring).is_unit());
    let sample = PrimeFieldElem::new(0, ring.prime);
    let count = projective_point_count(sample.field_size(), n);
    let witness = if count <= WITNESS_LIMIT {
        projective_points(forms, n, sample, Some(1)).into_iter().next().map(|pt| pt.iter().map(|x| x.value as u32).collect())
    } else {
        None
    };
    Emptiness::NonEmpty { witness, chart, leading_terms }
}

fn projective_point_count(q: u128, n: usize) -> u128 {
    (0..n as u32).map(|k| q.pow(k)).sum()
}

/// Exhaustive enumeration of P^(n−1) over the field of `sample`, returning
/// the common zeros of `forms` (first nonzero coordinate 1). Stops after
/// `limit` points when given.
pub fn projective_points<F: FieldElem>(forms: &[Poly], n: usize, sample: F, limit: Option<usize>) -> Vec<Vec<F>> {
    let q = sample.field_size();
    let zero = sample.zero_like();
    let one = sample.one_like();
    let mut out = Vec::new();
    for lead in 0..n {
        let free = n - lead - 1;
        let total = q.pow(free as u32);
        let mut pt = vec![zero; n];
        pt[lead] = one;
        for code in 0..total {
            let mut c = code;
            for slot in pt.iter_mut().skip(lead + 1) {
                *slot = sample.element_from_index((c % q) as u64);
                c /= q;
            }
            if forms.iter().all(|f| f.eval(&pt).is_zero()) {
                out.push(pt.clone());
                if limit.is_some_and(|l| out.len() >= l) {
                    return out;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::poly::Mono;

    fn v(i: usize) -> Poly {
        Poly::monomial(Mono::var(i), 1)
    }

    #[test]
    fn squares_are_empty() {
        let r = PolyRing::new(2, 17);
        let e = projective_empty(&[v(0).mul(&v(0), 17), v(1).mul(&v(1), 17)], &r);
        let Emptiness::Empty(cert) = e else { panic!("expected empty") };
        assert_eq!(cert.pure_powers, vec![(0, 2), (1, 2)]);
        assert!(cert.charts.iter().all(|c| c.unit));
    }

    #[test]
    fn product_has_witness() {
        let r = PolyRing::new(2, 17);
        match projective_empty(&[v(0).mul(&v(1), 17)], &r) {
            Emptiness::NonEmpty { witness, chart, .. } => {
                assert_eq!(witness, Some(vec![1, 0]));
                assert_eq!(chart, Some(0));
            }
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn point_without_rational_witness() {
        // x^2 - 3y^2 over F_17: 3 is a nonresidue, so the two points are
        // conjugate over F_17
        let r = PolyRing::new(2, 17);
        let f = v(0).mul(&v(0), 17).sub(&v(1).mul(&v(1), 17).scale(3, 17), 17);
        match projective_empty(&[f], &r) {
            Emptiness::NonEmpty { witness, chart, .. } => {
                assert_eq!(witness, None);
                assert_eq!(chart, Some(0));
            }
            e => panic!("{e:?}"),
        }
    }
}
