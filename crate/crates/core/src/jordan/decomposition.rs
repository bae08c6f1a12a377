use num_traits::Zero;

use super::poly::UPoly;
use crate::error::{Error, Result};
use crate::exactlin::{Rat, RatMatrix, SpanCoords};

/// Additive Jordan-Chevalley decomposition `M = S + N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanPair {
    pub semisimple: RatMatrix,
    pub nilpotent: RatMatrix,
    /// `S = p(M)` for this polynomial.
    pub poly: UPoly,
}

/// Minimal polynomial (monic), found as the first linear relation among
/// `I, M, M^2, ...`.
pub fn minimal_polynomial(m: &RatMatrix) -> UPoly {
    assert!(m.is_square(), "minimal polynomial of a non-square matrix");
    let n = m.rows();
    let mut powers: Vec<Vec<Rat>> = vec![RatMatrix::identity(n).as_slice().to_vec()];
    let mut cur = RatMatrix::identity(n);
    loop {
        cur = &cur * m;
        let flat = cur.as_slice().to_vec();
        let coords = SpanCoords::new(&powers).expect("powers below the minimal degree are independent");
        if let Some(c) = coords.coords(&flat) {
            let mut coeffs: Vec<Rat> = c.into_iter().map(|x| -x).collect();
            coeffs.push(Rat::from_integer(1.into()));
            return UPoly::new(coeffs);
        }
        powers.push(flat);
    }
}

/// Jordan-Chevalley decomposition over the rationals.
///
/// With `f` the minimal polynomial and `g = f / gcd(f, f')` its squarefree
/// part, Newton's iteration `a <- a - g(a) / g'(a) mod f` from `a = t`
/// converges to a polynomial with `g(a) = 0 mod f`; then `S = a(M)`.
pub fn jordan_chevalley(m: &RatMatrix) -> Result<JordanPair> {
    if !m.is_square() {
        return Err(Error::Precondition("Jordan decomposition of a non-square matrix".into()));
    }
    let n = m.rows();
    let f = minimal_polynomial(m);
    let g = f.divrem(&f.gcd(&f.derivative())).0.monic();
    let pair = if g == f {
        JordanPair {
            semisimple: m.clone(),
            nilpotent: RatMatrix::zeros(n, n),
            poly: UPoly::t(),
        }
    } else {
        let dg = g.derivative();
        let mut a = UPoly::t();
        loop {
            let ga = g.compose_mod(&a, &f);
            if ga.is_zero() {
                break;
            }
            let inv = dg
                .compose_mod(&a, &f)
                .inverse_mod(&f)
                .expect("g'(a) is a unit modulo f");
            a = a.sub(&ga.mul(&inv)).rem(&f);
        }
        let s = a.eval_matrix(m);
        let nil = m - &s;
        assert!(s.commutator(&nil).is_zero(), "Jordan parts must commute");
        assert!(nil.pow(n as u32).is_zero(), "nilpotent part must be nilpotent");
        JordanPair {
            semisimple: s,
            nilpotent: nil,
            poly: a,
        }
    };
    debug_assert!(minimal_polynomial(&pair.semisimple).is_squarefree());
    Ok(pair)
}

impl JordanPair {
    /// `S + N = M`, `SN = NS`, `N` nilpotent and `S` with squarefree
    /// minimal polynomial.
    pub fn check(&self, m: &RatMatrix) -> bool {
        let n = m.rows();
        &self.semisimple + &self.nilpotent == *m
            && self.semisimple.commutator(&self.nilpotent).is_zero()
            && self.nilpotent.pow(n as u32).is_zero()
            && minimal_polynomial(&self.semisimple).is_squarefree()
    }
}

/// Nilpotent elements of the span of a commuting family.
#[derive(Clone, Debug)]
pub struct NilpotentSubspace {
    pub dim: usize,
    /// Basis matrices of the nilpotent elements.
    pub basis: Vec<RatMatrix>,
    /// Their coefficients in the family.
    pub coefficients: Vec<Vec<Rat>>,
    /// Whether every Jordan part of a family member stays in the span of
    /// the family (always so for algebraic realizations); `None` when the
    /// Jordan parts were not computed.
    pub jordan_closed: Option<bool>,
}

fn check_commuting(family: &[RatMatrix]) -> Result<()> {
    for (i, a) in family.iter().enumerate() {
        if !a.is_square() || a.rows() != family[0].rows() {
            return Err(Error::Precondition("family must be square matrices of one size".into()));
        }
        for (j, b) in family.iter().enumerate().skip(i + 1) {
            if !a.commutator(b).is_zero() {
                return Err(Error::Precondition(format!("family members {i} and {j} do not commute")));
            }
        }
    }
    Ok(())
}

fn empty_subspace() -> NilpotentSubspace {
    NilpotentSubspace {
        dim: 0,
        basis: vec![],
        coefficients: vec![],
        jordan_closed: Some(true),
    }
}

fn combine(family: &[RatMatrix], c: &[Rat]) -> RatMatrix {
    let n = family[0].rows();
    let mut acc = RatMatrix::zeros(n, n);
    for (a, x) in family.iter().zip(c) {
        if !x.is_zero() {
            acc = &acc + &a.scale(x);
        }
    }
    acc
}

/// Dimension of the span of some matrices; a dependent family can produce
/// coefficient vectors that combine to the same (or zero) matrix.
fn span_dim(mats: &[RatMatrix]) -> usize {
    if mats.is_empty() {
        return 0;
    }
    let flat: Vec<Vec<Rat>> = mats.iter().map(|b| b.as_slice().to_vec()).collect();
    RatMatrix::from_rows(flat).expect("rectangular").rank()
}

fn trace_of_product(a: &RatMatrix, b: &RatMatrix) -> Rat {
    let n = a.rows();
    let mut t = Rat::zero();
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (a.get(i, j), b.get(j, i));
            if !x.is_zero() && !y.is_zero() {
                t += x * y;
            }
        }
    }
    t
}

pub fn is_nilpotent(m: &RatMatrix) -> bool {
    let mut p = m.clone();
    let mut e = 1;
    while e < m.rows() {
        p = &p * &p;
        e *= 2;
    }
    p.is_zero()
}

/// Nilpotent elements of the span of a commuting family.
///
/// Nilpotent elements always lie in the radical of the trace form
/// `tr(XY)` on the span, and the two coincide as soon as every radical
/// element is nilpotent. That holds whenever the span is closed under
/// Jordan parts, because the trace form is nondegenerate on a torus. If
/// some radical element is not nilpotent the full Jordan decomposition is
/// used instead.
pub fn nilpotent_subspace(family: &[RatMatrix]) -> Result<NilpotentSubspace> {
    check_commuting(family)?;
    if family.is_empty() {
        return Ok(empty_subspace());
    }
    let k = family.len();
    let mut gram = RatMatrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let t = trace_of_product(&family[i], &family[j]);
            gram.set(j, i, t.clone());
            gram.set(i, j, t);
        }
    }
    let coefficients = gram.kernel();
    let basis: Vec<RatMatrix> = coefficients.iter().map(|c| combine(family, c)).collect();
    if basis.iter().all(is_nilpotent) {
        return Ok(NilpotentSubspace {
            dim: span_dim(&basis),
            basis,
            coefficients,
            jordan_closed: None,
        });
    }
    nilpotent_subspace_jordan(family)
}

/// Nilpotent elements of the span of a commuting family, from the Jordan
/// decompositions of its members: on a commuting family `X -> N(X)` is
/// linear, so they are the kernel of `c -> sum c_i S(A_i)`. Exact for any
/// commuting family but slow when entries are large.
pub fn nilpotent_subspace_jordan(family: &[RatMatrix]) -> Result<NilpotentSubspace> {
    check_commuting(family)?;
    if family.is_empty() {
        return Ok(empty_subspace());
    }
    let pairs = family.iter().map(jordan_chevalley).collect::<Result<Vec<_>>>()?;
    let k = family.len();
    let len = family[0].as_slice().len();
    let mut sm = RatMatrix::zeros(len, k);
    for (j, p) in pairs.iter().enumerate() {
        for (i, x) in p.semisimple.as_slice().iter().enumerate() {
            sm.set(i, j, x.clone());
        }
    }
    let coefficients = sm.kernel();
    let basis: Vec<RatMatrix> = coefficients.iter().map(|c| combine(family, c)).collect();
    let dim = span_dim(&basis);
    let fam_flat: Vec<Vec<Rat>> = family.iter().map(|a| a.as_slice().to_vec()).collect();
    let jordan_closed = {
        let fam_rank = RatMatrix::from_rows(fam_flat.clone()).expect("rectangular").rank();
        let mut with_parts = fam_flat;
        with_parts.extend(pairs.iter().map(|p| p.nilpotent.as_slice().to_vec()));
        RatMatrix::from_rows(with_parts).expect("rectangular").rank() == fam_rank
    };
    Ok(NilpotentSubspace {
        dim,
        basis,
        coefficients,
        jordan_closed: Some(jordan_closed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;

    #[test]
    fn decomposition_examples() {
        let d = RatMatrix::diag(&[rat(1), rat(2)]);
        let p = jordan_chevalley(&d).unwrap();
        assert_eq!(p.semisimple, d);
        assert!(p.nilpotent.is_zero());

        let e12 = RatMatrix::unit(2, 0, 1);
        let p = jordan_chevalley(&e12).unwrap();
        assert!(p.semisimple.is_zero());
        assert_eq!(p.nilpotent, e12);

        let j = RatMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        let p = jordan_chevalley(&j).unwrap();
        assert_eq!(p.semisimple, RatMatrix::identity(2));
        assert_eq!(p.nilpotent, e12);
    }

    #[test]
    fn decomposition_with_irrational_eigenvalues() {
        // Block diag of a 2x2 Jordan block over t^2 - 2 and a 1x1 block 3.
        let c = RatMatrix::from_i64(&[&[0, 2], &[1, 0]]);
        let mut m = RatMatrix::zeros(5, 5);
        for i in 0..2 {
            for j in 0..2 {
                m.set(i, j, c.get(i, j).clone());
                m.set(i + 2, j + 2, c.get(i, j).clone());
            }
        }
        m.set(0, 2, rat(1));
        m.set(1, 3, rat(1));
        m.set(4, 4, rat(3));
        let p = jordan_chevalley(&m).unwrap();
        assert!(p.check(&m));
        assert!(!p.nilpotent.is_zero());
        assert_eq!(p.nilpotent.rank(), 2);
    }

    #[test]
    fn minimal_polynomial_examples() {
        let m = RatMatrix::diag(&[rat(2), rat(2), rat(3)]);
        assert_eq!(minimal_polynomial(&m), UPoly::new(vec![rat(6), rat(-5), rat(1)]));
        assert_eq!(minimal_polynomial(&RatMatrix::zeros(3, 3)), UPoly::t());
    }

    #[test]
    fn nilpotent_subspace_examples() {
        let d = RatMatrix::diag(&[rat(1), rat(2), rat(1)]);
        let e13 = RatMatrix::unit(3, 0, 2);
        let ns = nilpotent_subspace(&[d.clone(), e13.clone()]).unwrap();
        assert_eq!(ns.dim, 1);
        assert_eq!(ns.basis, vec![e13.clone()]);
        let ns = nilpotent_subspace_jordan(&[d, e13.clone()]).unwrap();
        assert_eq!(ns.dim, 1);
        assert_eq!(ns.basis, vec![e13]);
        assert_eq!(ns.jordan_closed, Some(true));

        assert_eq!(nilpotent_subspace(&[RatMatrix::identity(3)]).unwrap().dim, 0);

        let ns = nilpotent_subspace(&[RatMatrix::unit(3, 0, 1), RatMatrix::unit(3, 0, 2)]).unwrap();
        assert_eq!(ns.dim, 2);
    }

    #[test]
    fn non_commuting_family_rejected() {
        let err = nilpotent_subspace(&[RatMatrix::unit(2, 0, 1), RatMatrix::unit(2, 1, 0)]);
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn jordan_parts_outside_span_are_flagged() {
        // span{[[1,1],[0,1]]} is not closed under Jordan parts
        let m = RatMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        let ns = nilpotent_subspace_jordan(&[m.clone()]).unwrap();
        assert_eq!(ns.dim, 0);
        assert_eq!(ns.jordan_closed, Some(false));
        assert_eq!(nilpotent_subspace(&[m]).unwrap().dim, 0);
    }

    #[test]
    fn trace_radical_falls_back_when_not_nilpotent() {
        // semisimple with tr(A^2) = 0: eigenvalues 1 +- i
        let a = RatMatrix::from_i64(&[&[0, -2], &[1, 2]]);
        assert!(is_nilpotent(&RatMatrix::unit(3, 0, 2)));
        assert!(!is_nilpotent(&a));
        let ns = nilpotent_subspace(&[a]).unwrap();
        assert_eq!(ns.dim, 0);
        assert_eq!(ns.jordan_closed, Some(true));
    }

    #[test]
    fn dependent_family_counts_matrices() {
        // A, A^2 and I are dependent when A^2 = 2A - I
        let a = RatMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        let fam = vec![a.clone(), a.pow(2), RatMatrix::identity(2)];
        let fast = nilpotent_subspace(&fam).unwrap();
        let slow = nilpotent_subspace_jordan(&fam).unwrap();
        assert_eq!(fast.dim, 1);
        assert_eq!(slow.dim, 1);
    }
}
