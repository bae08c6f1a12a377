use num_traits::{One, Signed, Zero};

use super::forms::{is_generic_form, BilForm, Flag, FormKind};
use crate::error::{Error, Result};
use crate::exactlin::{rat, Rat, RatMatrix};
use crate::formulas::{tilde, RootSubset, Series};
use crate::liealg::LieAlgebra;

/// Hyperbolic basis `e_1..e_s, f_1..f_s` (and `u` when `q` is odd) of the
/// quadratic space of dimension `q`, with `B(e_i, f_j) = delta_ij` and
/// `B(u, u) = 1`. Coordinates follow that order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HyperbolicBasis {
    pub q: usize,
}

impl HyperbolicBasis {
    pub fn new(q: usize) -> Self {
        HyperbolicBasis { q }
    }

    /// Witt index `floor(q/2)`.
    pub fn s(&self) -> usize {
        self.q / 2
    }

    /// Coordinate of `e_i`, `i` 1-based.
    pub fn e(&self, i: usize) -> usize {
        assert!((1..=self.s()).contains(&i), "e_{i} outside the basis");
        i - 1
    }

    pub fn f(&self, i: usize) -> usize {
        assert!((1..=self.s()).contains(&i), "f_{i} outside the basis");
        self.s() + i - 1
    }

    pub fn u(&self) -> Option<usize> {
        (self.q % 2 == 1).then_some(2 * self.s())
    }

    pub fn label(&self, k: usize) -> String {
        let s = self.s();
        if k < s {
            format!("e{}", k + 1)
        } else if k < 2 * s {
            format!("f{}", k - s + 1)
        } else {
            "u".to_string()
        }
    }

    /// The basis vector swapped with `k` by the Gram matrix.
    fn partner(&self, k: usize) -> usize {
        let s = self.s();
        if k < s {
            k + s
        } else if k < 2 * s {
            k - s
        } else {
            k
        }
    }

    /// Gram matrix; it is an involution.
    pub fn gram(&self) -> RatMatrix {
        let mut g = RatMatrix::zeros(self.q, self.q);
        for k in 0..self.q {
            g.set(k, self.partner(k), Rat::one());
        }
        g
    }

    pub fn form(&self) -> BilForm {
        BilForm::symmetric(self.gram()).expect("hyperbolic Gram is symmetric")
    }

    pub fn vector(&self, k: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.q];
        v[k] = Rat::one();
        v
    }
}

/// `so(q)` for the hyperbolic form, with basis `G(E_ab - E_ba)` for
/// `a < b`, which are root vectors or Cartan elements for the diagonal
/// torus. Labels read `a^b`.
pub fn so_algebra(q: usize) -> Result<LieAlgebra> {
    if q < 3 {
        return Err(Error::Domain(format!("so({q}) needs q >= 3")));
    }
    let hb = HyperbolicBasis::new(q);
    let mut items: Vec<(usize, RatMatrix, String)> = Vec::new();
    for a in 0..q {
        for b in a + 1..q {
            let mut x = RatMatrix::zeros(q, q);
            x.set(hb.partner(a), b, rat(1));
            x.set(hb.partner(b), a, rat(-1));
            let lead = x.as_slice().iter().position(|v| !v.is_zero()).expect("nonzero");
            if x.as_slice()[lead].is_negative() {
                x = -&x;
            }
            items.push((lead, x, format!("{}^{}", hb.label(a), hb.label(b))));
        }
    }
    // disjoint supports, so sorting by leading entry gives echelon form
    items.sort_by_key(|(lead, _, _)| *lead);
    let (mats, labels) = items.into_iter().map(|(_, m, l)| (m, l)).unzip();
    LieAlgebra::from_matrices_labeled(mats, labels)
}

/// `sp(2n)` for the form `[[0, I], [-I, 0]]`.
pub fn sp_algebra(two_n: usize) -> Result<LieAlgebra> {
    if two_n == 0 || two_n % 2 == 1 {
        return Err(Error::Domain(format!("sp({two_n}) needs a positive even size")));
    }
    let j = symplectic_gram(two_n / 2);
    LieAlgebra::from_matrices(invariant_matrices(two_n, Some(&j), None, &[])?)
}

/// The Gram matrix `[[0, I], [-I, 0]]` of size `2n`.
pub fn symplectic_gram(n: usize) -> RatMatrix {
    let mut j = RatMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        j.set(i, n + i, rat(1));
        j.set(n + i, i, rat(-1));
    }
    j
}

pub fn gl_algebra(n: usize) -> Result<LieAlgebra> {
    if n == 0 {
        return Err(Error::Domain("gl(0) is empty".into()));
    }
    let mut mats = Vec::new();
    let mut labels = Vec::new();
    for i in 0..n {
        for j in 0..n {
            mats.push(RatMatrix::unit(n, i, j));
            labels.push(format!("E{}{}", i + 1, j + 1));
        }
    }
    LieAlgebra::from_matrices_labeled(mats, labels)
}

/// Basis (in reduced echelon form) of the `X` in `gl(n)` that preserve the
/// form `form`, stabilize every step of `flag` and kill every vector of
/// `fixed`.
pub fn invariant_matrices(
    n: usize,
    form: Option<&RatMatrix>,
    flag: Option<&Flag>,
    fixed: &[Vec<Rat>],
) -> Result<Vec<RatMatrix>> {
    let var = |k: usize, m: usize| k * n + m;
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    if let Some(g) = form {
        if g.rows() != n || g.cols() != n {
            return Err(Error::Shape(format!("form must be {n}x{n}")));
        }
        // (X^T G + G X)_ij = sum_k X_ki G_kj + G_ik X_kj
        for i in 0..n {
            for j in i..n {
                let mut row = vec![Rat::zero(); n * n];
                for k in 0..n {
                    row[var(k, i)] += g.get(k, j);
                    row[var(k, j)] += g.get(i, k);
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    if let Some(flag) = flag {
        if flag.ambient_dim() != n {
            return Err(Error::Shape(format!("flag lives in dimension {}, not {n}", flag.ambient_dim())));
        }
        for step in 1..=flag.len() {
            let b = flag.basis(step);
            if b.cols() == n {
                continue;
            }
            // c X v = 0 for c in the annihilator of V_i and v in V_i
            for c in b.transpose().kernel() {
                for v in &flag.vectors()[..b.cols()] {
                    let mut row = vec![Rat::zero(); n * n];
                    for (k, ck) in c.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                        for (m, vm) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                            row[var(k, m)] += ck * vm;
                        }
                    }
                    rows.push(row);
                }
            }
        }
    }
    for v in fixed {
        if v.len() != n {
            return Err(Error::Shape(format!("fixed vector must have length {n}")));
        }
        for k in 0..n {
            let mut row = vec![Rat::zero(); n * n];
            for (m, vm) in v.iter().enumerate() {
                row[var(k, m)] = vm.clone();
            }
            rows.push(row);
        }
    }
    let kernel = if rows.is_empty() {
        (0..n * n)
            .map(|i| {
                let mut e = vec![Rat::zero(); n * n];
                e[i] = Rat::one();
                e
            })
            .collect()
    } else {
        RatMatrix::from_rows(rows)?.kernel_rref()
    };
    if kernel.is_empty() {
        return Ok(vec![]);
    }
    let (ech, pivots) = RatMatrix::from_rows(kernel)?.rref();
    (0..pivots.len())
        .map(|i| RatMatrix::from_flat(n, n, ech.row(i).to_vec()))
        .collect()
}

/// The stabilizer of a flag inside the isometry algebra of an alternating
/// form `xi` of maximal rank, for which the flag is generic.
pub fn flag_stabilizer_sp(flag: &Flag, xi: &BilForm) -> Result<LieAlgebra> {
    let n = flag.ambient_dim();
    if xi.kind() != FormKind::Alternating || xi.dim() != n {
        return Err(Error::Domain(format!("need an alternating form on K^{n}")));
    }
    if xi.rank() != 2 * (n / 2) {
        return Err(Error::Domain("alternating form is not of maximal rank".into()));
    }
    if !is_generic_form(xi, flag) {
        return Err(Error::Domain(format!("form is not generic for the flag {:?}", flag.dims())));
    }
    LieAlgebra::from_matrices(invariant_matrices(n, Some(xi.gram()), Some(flag), &[])?)
}

/// The parabolic subalgebra of `so(q)` (hyperbolic form) stabilizing an
/// isotropic flag of `K^q`.
pub fn parabolic_so(q: usize, flag: &Flag) -> Result<LieAlgebra> {
    if q < 3 {
        return Err(Error::Domain(format!("so({q}) needs q >= 3")));
    }
    if flag.ambient_dim() != q {
        return Err(Error::Shape(format!("flag lives in dimension {}, not {q}", flag.ambient_dim())));
    }
    let hb = HyperbolicBasis::new(q);
    let form = hb.form();
    if !flag.is_empty() && !form.restricted(&flag.basis(flag.len())).is_zero() {
        return Err(Error::Domain(format!("flag {:?} is not isotropic", flag.dims())));
    }
    if flag.is_empty() {
        return so_algebra(q);
    }
    LieAlgebra::from_matrices(invariant_matrices(q, Some(form.gram()), Some(flag), &[])?)
}

/// The isotropic flag of a standard parabolic: `F_i = span(e_1..e_i)` for
/// `i` in the (tilde) root set, with `F_n^+ = span(e_1..e_n)` and
/// `F_n^- = span(e_1..e_{n-1}, f_n)` in type D.
pub fn flag_from_roots(roots: &RootSubset) -> Flag {
    let q = roots.q();
    let hb = HyperbolicBasis::new(q);
    let t = tilde(roots);
    let mut dims: Vec<usize> = t.numeric.iter().copied().collect();
    let top_numeric = dims.last().copied().unwrap_or(0);
    let mut vectors: Vec<Vec<Rat>> = (1..=top_numeric).map(|i| hb.vector(hb.e(i))).collect();
    if roots.series == Series::D && (t.plus || t.minus) {
        let n = roots.n;
        vectors.extend((top_numeric + 1..n).map(|i| hb.vector(hb.e(i))));
        vectors.push(hb.vector(if t.plus { hb.e(n) } else { hb.f(n) }));
        dims.push(n);
    }
    Flag::new(q, vectors, dims).expect("coordinate flag is valid")
}

pub fn parabolic_from_roots(roots: &RootSubset) -> Result<(Flag, LieAlgebra)> {
    let flag = flag_from_roots(roots);
    let alg = parabolic_so(roots.q(), &flag)?;
    Ok((flag, alg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::forms::generic_alternating_form;
    use crate::exactlin::SampleConfig;

    fn cfg() -> SampleConfig {
        SampleConfig::default()
    }

    #[test]
    fn hyperbolic_gram_is_an_involution() {
        for q in 3..8 {
            let g = HyperbolicBasis::new(q).gram();
            assert_eq!(&g * &g, RatMatrix::identity(q));
        }
    }

    #[test]
    fn classical_dimensions_and_indices() {
        let so7 = so_algebra(7).unwrap();
        assert_eq!(so7.dim(), 21);
        assert_eq!(so7.index(&cfg()).unwrap().index, 3);
        let sp4 = sp_algebra(4).unwrap();
        assert_eq!(sp4.dim(), 10);
        assert_eq!(sp4.index(&cfg()).unwrap().index, 2);
        let gl3 = gl_algebra(3).unwrap();
        assert_eq!(gl3.dim(), 9);
        assert_eq!(gl3.index(&cfg()).unwrap().index, 3);
        assert!(sp_algebra(3).is_err());
    }

    #[test]
    fn so_basis_preserves_the_form() {
        let hb = HyperbolicBasis::new(6);
        let g = hb.gram();
        for x in so_algebra(6).unwrap().realization().unwrap() {
            assert!((&(&x.transpose() * &g) + &(&g * x)).is_zero());
        }
    }

    #[test]
    fn flag_stabilizers_of_alternating_forms() {
        let f = Flag::standard(4, &[4]).unwrap();
        let (xi, _) = generic_alternating_form(&f);
        assert_eq!(flag_stabilizer_sp(&f, &xi).unwrap().dim(), 10);

        let f = Flag::standard(1, &[1]).unwrap();
        let (xi, _) = generic_alternating_form(&f);
        assert_eq!(flag_stabilizer_sp(&f, &xi).unwrap().dim(), 1);

        let f = Flag::standard(4, &[1, 4]).unwrap();
        let (xi, _) = generic_alternating_form(&f);
        let r = flag_stabilizer_sp(&f, &xi).unwrap();
        assert_eq!(r.index(&cfg()).unwrap().index, 1);

        let zero = BilForm::alternating(RatMatrix::zeros(4, 4)).unwrap();
        assert!(matches!(flag_stabilizer_sp(&f, &zero), Err(Error::Domain(_))));
    }

    #[test]
    fn parabolic_examples() {
        let b = parabolic_so(7, &Flag::standard(7, &[1, 2, 3]).unwrap()).unwrap();
        assert_eq!(b.dim(), 12);
        let p = parabolic_so(7, &Flag::standard(7, &[1]).unwrap()).unwrap();
        assert_eq!(p.dim(), 16);
        assert_eq!(p.center().dim(), 0);

        let hb = HyperbolicBasis::new(7);
        let v = vec![hb.vector(hb.e(1)), hb.vector(hb.f(1))];
        let bad = Flag::new(7, v, vec![2]).unwrap();
        assert!(matches!(parabolic_so(7, &bad), Err(Error::Domain(_))));
    }

    #[test]
    fn parabolics_from_roots() {
        let r = RootSubset::parse(Series::B, 3, "1,3").unwrap();
        let (f, _) = parabolic_from_roots(&r).unwrap();
        assert_eq!(f.dims(), &[1, 3]);

        let r = RootSubset::parse(Series::D, 4, "1,4+,4-").unwrap();
        assert_eq!(flag_from_roots(&r).dims(), &[1, 3]);

        let r = RootSubset::parse(Series::D, 5, "1,5-").unwrap();
        let f = flag_from_roots(&r);
        assert_eq!(f.dims(), &[1, 5]);
        let hb = HyperbolicBasis::new(10);
        assert_eq!(f.vectors()[4], hb.vector(hb.f(5)));

        for (series, n) in [(Series::B, 3), (Series::D, 4)] {
            let full = RootSubset::all(series, n).into_iter().find(RootSubset::is_full).unwrap();
            let (_, b) = parabolic_from_roots(&full).unwrap();
            let q = full.q();
            assert_eq!(b.dim(), (q * (q - 1) / 2 + q / 2) / 2);
        }
    }
}
