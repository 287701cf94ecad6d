use super::GeometryError;
use crate::exact::matrix::span_basis;
use crate::exact::{lcm, CycMatrix, Cyclotomic, Rational};

const ORDER_CAP: usize = 4096;

/// Multiplicative order of a square matrix.
pub fn element_order(m: &CycMatrix) -> Result<usize, GeometryError> {
    let mut x = m.clone();
    for k in 1..=ORDER_CAP {
        if x.is_identity() {
            return Ok(k);
        }
        x = x.mul(m);
    }
    Err(GeometryError::InfiniteOrder(ORDER_CAP))
}

/// Eigenvalues ζ_o^k with their multiplicities, o the order of `m`, from
/// traces of powers.
pub fn spectrum(m: &CycMatrix) -> Result<Vec<(Cyclotomic, usize)>, GeometryError> {
    let o = element_order(m)?;
    let order = lcm(m.order(), o as u32);
    let mut traces = Vec::with_capacity(o);
    let mut x = CycMatrix::identity(m.rows(), m.order());
    for _ in 0..o {
        traces.push(x.trace());
        x = x.mul(m);
    }
    let mut out = Vec::new();
    for k in 0..o {
        let mut acc = Cyclotomic::zero(order);
        for (l, t) in traces.iter().enumerate() {
            acc += &(t * &Cyclotomic::root_of_unity(o as u32, -((k * l) as i64)));
        }
        let mult = acc.scale(&Rational::new(1.into(), (o as i64).into()));
        let n = mult.as_integer().and_then(|v| usize::try_from(v).ok()).unwrap_or(0);
        if n > 0 {
            out.push((Cyclotomic::root_of_unity(o as u32, k as i64), n));
        }
    }
    Ok(out)
}

fn projector(m: &CycMatrix, lambda: &Cyclotomic, others: &[Cyclotomic]) -> CycMatrix {
    let n = m.rows();
    let mut p = CycMatrix::identity(n, lcm(m.order(), lambda.order()));
    for mu in others {
        let factor = m.sub(&CycMatrix::scalar(n, mu));
        let denom = (lambda - mu).inv().expect("distinct eigenvalues");
        p = p.mul(&factor).scale(&denom);
    }
    p
}

fn columns(p: &CycMatrix) -> Vec<Vec<Cyclotomic>> {
    span_basis(&p.transpose().to_rows(), p.order())
}

/// Exact basis of ker(M − λI) via the spectral projector over the eigenvalues
/// present in M.
pub fn eigenspace(m: &CycMatrix, lambda: &Cyclotomic) -> Result<Vec<Vec<Cyclotomic>>, GeometryError> {
    let o = element_order(m)?;
    if !lambda.pow(o as u64).is_one() {
        return Err(GeometryError::NotRootOfUnity(lambda.to_string(), o));
    }
    let spec = spectrum(m)?;
    if !spec.iter().any(|(mu, _)| mu == lambda) {
        return Ok(Vec::new());
    }
    let others: Vec<Cyclotomic> = spec.iter().map(|(mu, _)| mu.clone()).filter(|mu| mu != lambda).collect();
    Ok(columns(&projector(m, lambda, &others)))
}

/// All nonzero eigenspaces, in the order of [`spectrum`].
pub fn eigenspaces(m: &CycMatrix) -> Result<Vec<(Cyclotomic, Vec<Vec<Cyclotomic>>)>, GeometryError> {
    let spec = spectrum(m)?;
    let values: Vec<Cyclotomic> = spec.iter().map(|(mu, _)| mu.clone()).collect();
    Ok(values
        .iter()
        .map(|lam| {
            let others: Vec<Cyclotomic> = values.iter().filter(|mu| *mu != lam).cloned().collect();
            (lam.clone(), columns(&projector(m, lam, &others)))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(8, k)
    }

    #[test]
    fn identity_has_full_eigenspace() {
        let id = CycMatrix::identity(8, 1);
        assert_eq!(eigenspace(&id, &Cyclotomic::one(1)).unwrap().len(), 8);
    }

    #[test]
    fn diagonal_tau() {
        let d: Vec<Cyclotomic> = (0..8).map(z).collect();
        let perm: Vec<usize> = (0..8).collect();
        let tau = CycMatrix::monomial(8, &perm, &d).unwrap();
        let e = eigenspace(&tau, &z(1)).unwrap();
        assert_eq!(e.len(), 1);
        let nz: Vec<usize> = (0..8).filter(|&i| !e[0][i].is_zero()).collect();
        assert_eq!(nz, vec![1]);
    }

    #[test]
    fn cyclic_shift_eigenvectors() {
        let perm: Vec<usize> = (0..8).map(|i| (i + 1) % 8).collect();
        let ones = vec![Cyclotomic::one(8); 8];
        let sigma = CycMatrix::monomial(8, &perm, &ones).unwrap();
        let all = eigenspaces(&sigma).unwrap();
        assert_eq!(all.len(), 8);
        for (lam, basis) in &all {
            assert_eq!(basis.len(), 1);
            let v = &basis[0];
            let mv = sigma.apply(v);
            let lv: Vec<Cyclotomic> = v.iter().map(|x| x * lam).collect();
            assert_eq!(mv, lv);
        }
        assert!(eigenspace(&sigma, &Cyclotomic::root_of_unity(16, 1)).is_err());
    }
}
