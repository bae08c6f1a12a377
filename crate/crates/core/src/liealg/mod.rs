//! Lie algebras given by structure constants, optionally with a faithful
//! matrix realization, and their coadjoint invariants.

mod coadjoint;
mod json;

pub use coadjoint::{IndexReport, RegularCertificate};
pub use json::LieAlgebraJson;

pub use crate::exactlin::SampleConfig;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::{Rat, RatMatrix, SpanCoords};

/// Sparse vector: `(basis index, coefficient)` with nonzero coefficients.
pub type SparseVec = Vec<(usize, Rat)>;

/// Finite-dimensional Lie algebra over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    labels: Vec<String>,
    /// `structure[i * dim + j]` is `[X_i, X_j]` in the basis.
    structure: Vec<SparseVec>,
    realization: Option<Vec<RatMatrix>>,
}

/// A linear form on a Lie algebra, in the dual basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    pub coeffs: Vec<Rat>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        LinearForm { coeffs }
    }

    pub fn zero(dim: usize) -> Self {
        LinearForm {
            coeffs: vec![Rat::zero(); dim],
        }
    }

    /// The dual basis vector `X_i^*`.
    pub fn dual(dim: usize, i: usize) -> Self {
        let mut g = Self::zero(dim);
        g.coeffs[i] = Rat::from_integer(1.into());
        g
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum()
    }
}

/// Subspace of a Lie algebra closed under the bracket.
#[derive(Clone, Debug)]
pub struct Subalgebra<'a> {
    parent: &'a LieAlgebra,
    basis: Vec<Vec<Rat>>,
}

pub(crate) fn default_labels(dim: usize) -> Vec<String> {
    (0..dim).map(|i| format!("X{i}")).collect()
}

fn sparse_from_dense(v: &[Rat]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

fn add_scaled(acc: &mut [Rat], v: &[(usize, Rat)], s: &Rat) {
    for (k, c) in v {
        acc[*k] += c * s;
    }
}

/// Sparse view of a square matrix, used for fast commutators.
struct SparseRows {
    n: usize,
    rows: Vec<SparseVec>,
}

impl SparseRows {
    fn new(m: &RatMatrix) -> Self {
        SparseRows {
            n: m.rows(),
            rows: (0..m.rows()).map(|i| sparse_from_dense(m.row(i))).collect(),
        }
    }

    /// Flattened `AB - BA`.
    fn commutator(&self, other: &SparseRows) -> Vec<Rat> {
        let n = self.n;
        let mut out = vec![Rat::zero(); n * n];
        for i in 0..n {
            for (k, a) in &self.rows[i] {
                for (j, b) in &other.rows[*k] {
                    out[i * n + j] += a * b;
                }
            }
            for (k, a) in &other.rows[i] {
                for (j, b) in &self.rows[*k] {
                    out[i * n + j] -= a * b;
                }
            }
        }
        out
    }
}

impl LieAlgebra {
    /// Builds an algebra from a bracket table. Each entry `(i, j, v)` sets
    /// `[X_i, X_j] = v`; unlisted pairs bracket to zero, and the entry for
    /// `(j, i)` is implied unless listed explicitly, in which case it must be
    /// the negative. Antisymmetry and the Jacobi identity are checked.
    pub fn from_structure_constants(
        labels: Vec<String>,
        table: Vec<(usize, usize, SparseVec)>,
    ) -> Result<Self> {
        let dim = labels.len();
        let mut dense: Vec<Option<Vec<Rat>>> = vec![None; dim * dim];
        for (i, j, v) in table {
            if i >= dim || j >= dim || v.iter().any(|(k, _)| *k >= dim) {
                return Err(Error::Shape(format!("bracket entry ({i},{j}) out of range")));
            }
            let mut row = vec![Rat::zero(); dim];
            for (k, c) in v {
                row[k] += c;
            }
            if i == j {
                if row.iter().any(|x| !x.is_zero()) {
                    return Err(Error::Antisymmetry(i, i));
                }
                continue;
            }
            let neg: Vec<Rat> = row.iter().map(|x| -x).collect();
            for (a, b, val) in [(i, j, row), (j, i, neg)] {
                match &dense[a * dim + b] {
                    Some(prev) if *prev != val => return Err(Error::Antisymmetry(i.min(j), i.max(j))),
                    _ => dense[a * dim + b] = Some(val),
                }
            }
        }
        let structure = dense
            .into_iter()
            .map(|v| v.map(|d| sparse_from_dense(&d)).unwrap_or_default())
            .collect();
        let alg = LieAlgebra {
            dim,
            labels,
            structure,
            realization: None,
        };
        alg.check_jacobi()?;
        Ok(alg)
    }

    /// Convenience constructor over small integers: `(i, j, [(k, c)])`.
    pub fn from_int_table(labels: &[&str], table: &[(usize, usize, &[(usize, i64)])]) -> Result<Self> {
        let table = table
            .iter()
            .map(|(i, j, v)| {
                (*i, *j, v.iter().map(|(k, c)| (*k, Rat::from_integer((*c).into()))).collect())
            })
            .collect();
        Self::from_structure_constants(labels.iter().map(|s| s.to_string()).collect(), table)
    }

    /// Structure constants of the span of linearly independent square
    /// matrices, which must be closed under the commutator. The matrices
    /// become the realization.
    pub fn from_matrices(mats: Vec<RatMatrix>) -> Result<Self> {
        let labels = default_labels(mats.len());
        Self::from_matrices_labeled(mats, labels)
    }

    pub fn from_matrices_labeled(mats: Vec<RatMatrix>, labels: Vec<String>) -> Result<Self> {
        let dim = mats.len();
        if labels.len() != dim {
            return Err(Error::Shape("one label per matrix".into()));
        }
        let size = mats.first().map_or(0, RatMatrix::rows);
        if mats.iter().any(|m| m.rows() != size || m.cols() != size) {
            return Err(Error::Shape("realization matrices must be square of one size".into()));
        }
        let flat: Vec<Vec<Rat>> = mats.iter().map(|m| m.as_slice().to_vec()).collect();
        let coords = SpanCoords::new(&flat)?;
        let sparse: Vec<SparseRows> = mats.iter().map(SparseRows::new).collect();
        let mut structure = vec![SparseVec::new(); dim * dim];
        for i in 0..dim {
            for j in i + 1..dim {
                let w = sparse[i].commutator(&sparse[j]);
                let c = coords.coords(&w).ok_or(Error::NotClosed(i, j))?;
                let s = sparse_from_dense(&c);
                structure[j * dim + i] = s.iter().map(|(k, x)| (*k, -x)).collect();
                structure[i * dim + j] = s;
            }
        }
        // Jacobi holds automatically for commutators.
        Ok(LieAlgebra {
            dim,
            labels,
            structure,
            realization: Some(mats),
        })
    }

    /// Attaches a realization after checking that it is injective and
    /// respects the bracket.
    pub fn with_realization(mut self, mats: Vec<RatMatrix>) -> Result<Self> {
        let from = Self::from_matrices_labeled(mats.clone(), self.labels.clone())?;
        if from.structure != self.structure {
            let bad = (0..self.dim * self.dim)
                .find(|&p| from.structure[p] != self.structure[p])
                .expect("differs somewhere");
            return Err(Error::Precondition(format!(
                "realization does not respect the bracket [{}, {}]",
                bad / self.dim,
                bad % self.dim
            )));
        }
        self.realization = Some(mats);
        Ok(self)
    }

    pub fn without_realization(mut self) -> Self {
        self.realization = None;
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::Shape("one label per basis vector".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn realization(&self) -> Option<&[RatMatrix]> {
        self.realization.as_deref()
    }

    pub fn require_realization(&self) -> Result<&[RatMatrix]> {
        self.realization().ok_or(Error::MissingRealization)
    }

    /// `[X_i, X_j]` in the basis.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, Rat)] {
        &self.structure[i * self.dim + j]
    }

    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                add_scaled(&mut out, self.bracket_basis(i, j), &(a * b));
            }
        }
        out
    }

    /// Matrix of `ad X_i` in the basis (column `k` holds `[X_i, X_k]`).
    pub fn ad(&self, i: usize) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.dim, self.dim);
        for k in 0..self.dim {
            for (r, c) in self.bracket_basis(i, k) {
                m.set(*r, k, c.clone());
            }
        }
        m
    }

    pub fn ad_of(&self, x: &[Rat]) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.dim, self.dim);
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            m = &m + &self.ad(i).scale(a);
        }
        m
    }

    /// The adjoint representation as a realization. Faithful only when the
    /// center is trivial, which is checked.
    pub fn with_adjoint_realization(self) -> Result<Self> {
        if self.center().dim() != 0 {
            return Err(Error::Precondition("adjoint realization needs a trivial center".into()));
        }
        let mats = (0..self.dim).map(|i| self.ad(i)).collect();
        self.with_realization(mats)
    }

    /// Image of a coordinate vector in the realization.
    pub fn realize(&self, x: &[Rat]) -> Option<RatMatrix> {
        let mats = self.realization.as_ref()?;
        let n = mats.first().map_or(0, RatMatrix::rows);
        let mut acc = RatMatrix::zeros(n, n);
        for (m, a) in mats.iter().zip(x).filter(|(_, a)| !a.is_zero()) {
            acc = &acc + &m.scale(a);
        }
        Some(acc)
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.iter().all(Vec::is_empty)
    }

    /// Direct product; realizations combine block-diagonally when both exist.
    pub fn direct_product(&self, other: &LieAlgebra) -> LieAlgebra {
        let (n, m) = (self.dim, other.dim);
        let dim = n + m;
        let mut structure = vec![SparseVec::new(); dim * dim];
        for i in 0..n {
            for j in 0..n {
                structure[i * dim + j] = self.bracket_basis(i, j).to_vec();
            }
        }
        for i in 0..m {
            for j in 0..m {
                structure[(n + i) * dim + n + j] =
                    other.bracket_basis(i, j).iter().map(|(k, c)| (n + k, c.clone())).collect();
            }
        }
        let realization = match (&self.realization, &other.realization) {
            (Some(a), Some(b)) => {
                let sa = a.first().map_or(0, RatMatrix::rows);
                let sb = b.first().map_or(0, RatMatrix::rows);
                let embed = |x: &RatMatrix, off: usize| {
                    let mut out = RatMatrix::zeros(sa + sb, sa + sb);
                    for r in 0..x.rows() {
                        for c in 0..x.cols() {
                            out.set(off + r, off + c, x.get(r, c).clone());
                        }
                    }
                    out
                };
                Some(a.iter().map(|x| embed(x, 0)).chain(b.iter().map(|x| embed(x, sa))).collect())
            }
            _ => None,
        };
        LieAlgebra {
            dim,
            labels: self.labels.iter().chain(&other.labels).cloned().collect(),
            structure,
            realization,
        }
    }

    fn check_jacobi(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut acc = vec![Rat::zero(); n];
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (m, s) in self.bracket_basis(a, b) {
                            add_scaled(&mut acc, self.bracket_basis(*m, c), s);
                        }
                    }
                    if acc.iter().any(|x| !x.is_zero()) {
                        return Err(Error::Jacobi(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// Bracket table as `(i, j, [X_i, X_j])` for `i < j` with nonzero bracket.
    pub fn table(&self) -> Vec<(usize, usize, SparseVec)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let b = self.bracket_basis(i, j);
                if !b.is_empty() {
                    out.push((i, j, b.to_vec()));
                }
            }
        }
        out
    }

    pub fn subalgebra(&self, basis: Vec<Vec<Rat>>) -> Result<Subalgebra<'_>> {
        Subalgebra::new(self, basis)
    }
}

impl<'a> Subalgebra<'a> {
    /// Validates independence and closure under the parent bracket.
    pub fn new(parent: &'a LieAlgebra, basis: Vec<Vec<Rat>>) -> Result<Self> {
        if basis.iter().any(|v| v.len() != parent.dim) {
            return Err(Error::Shape("basis vector length differs from the algebra dimension".into()));
        }
        if !basis.is_empty() {
            let coords = SpanCoords::new(&basis)?;
            for i in 0..basis.len() {
                for j in i + 1..basis.len() {
                    if coords.coords(&parent.bracket(&basis[i], &basis[j])).is_none() {
                        return Err(Error::NotClosed(i, j));
                    }
                }
            }
        }
        Ok(Subalgebra { parent, basis })
    }

    pub fn parent(&self) -> &LieAlgebra {
        self.parent
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.dim()).all(|i| {
            (i + 1..self.dim()).all(|j| {
                self.parent
                    .bracket(&self.basis[i], &self.basis[j])
                    .iter()
                    .all(Zero::is_zero)
            })
        })
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        if self.basis.is_empty() {
            return false;
        }
        SpanCoords::new(&self.basis).expect("independent").coords(v).is_some()
    }

    /// Contains every vector of `other`.
    pub fn contains_all(&self, other: &Subalgebra<'_>) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Realized basis matrices, when the parent has a realization.
    pub fn realized(&self) -> Option<Vec<RatMatrix>> {
        self.basis.iter().map(|v| self.parent.realize(v)).collect()
    }

    /// The subalgebra as a standalone Lie algebra in the given basis,
    /// carrying the restricted realization when one exists.
    pub fn to_lie_algebra(&self) -> Result<LieAlgebra> {
        let k = self.dim();
        let mut structure = vec![SparseVec::new(); k * k];
        if k > 0 {
            let coords = SpanCoords::new(&self.basis)?;
            for i in 0..k {
                for j in i + 1..k {
                    let w = self.parent.bracket(&self.basis[i], &self.basis[j]);
                    let c = coords.coords(&w).ok_or(Error::NotClosed(i, j))?;
                    let s = sparse_from_dense(&c);
                    structure[j * k + i] = s.iter().map(|(m, x)| (*m, -x)).collect();
                    structure[i * k + j] = s;
                }
            }
        }
        Ok(LieAlgebra {
            dim: k,
            labels: default_labels(k),
            structure,
            realization: self.realized(),
        })
    }
}
