use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::exactlin::{rat, Rat, RatMatrix};
use crate::formulas::FlagProfile;

/// A flag `0 = V_0 < V_1 < ... < V_t` in `K^ambient_dim`, stored as one
/// adapted basis: `V_i` is spanned by the first `dims[i]` vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag {
    ambient_dim: usize,
    dims: Vec<usize>,
    vectors: Vec<Vec<Rat>>,
}

impl Flag {
    pub fn new(ambient_dim: usize, vectors: Vec<Vec<Rat>>, dims: Vec<usize>) -> Result<Self> {
        FlagProfile::new(dims.clone())?;
        if dims.last().copied().unwrap_or(0) != vectors.len() {
            return Err(Error::Shape(format!(
                "flag of dims {dims:?} needs exactly {} adapted vectors, got {}",
                dims.last().copied().unwrap_or(0),
                vectors.len()
            )));
        }
        if vectors.iter().any(|v| v.len() != ambient_dim) {
            return Err(Error::Shape(format!("flag vectors must have length {ambient_dim}")));
        }
        if !vectors.is_empty() && RatMatrix::from_rows(vectors.clone())?.rank() < vectors.len() {
            return Err(Error::Dependent);
        }
        Ok(Flag {
            ambient_dim,
            dims,
            vectors,
        })
    }

    /// Flag of coordinate subspaces `span(e_1, ..., e_{d_i})`.
    pub fn standard(ambient_dim: usize, dims: &[usize]) -> Result<Self> {
        let top = dims.last().copied().unwrap_or(0);
        if top > ambient_dim {
            return Err(Error::Domain(format!("flag {dims:?} does not fit in dimension {ambient_dim}")));
        }
        let vectors = (0..top).map(|i| unit_vector(ambient_dim, i)).collect();
        Flag::new(ambient_dim, vectors, dims.to_vec())
    }

    /// From one basis per step (columns of each matrix), checking nesting.
    pub fn from_bases(ambient_dim: usize, bases: &[RatMatrix]) -> Result<Self> {
        let mut vectors: Vec<Vec<Rat>> = Vec::new();
        let mut dims = Vec::new();
        for (i, b) in bases.iter().enumerate() {
            if b.rows() != ambient_dim {
                return Err(Error::Shape(format!("basis {i} has {} rows, expected {ambient_dim}", b.rows())));
            }
            let cols: Vec<Vec<Rat>> = (0..b.cols()).map(|j| b.column(j)).collect();
            let step_rank = rank_of(&cols);
            let mut all = vectors.clone();
            all.extend(cols.iter().cloned());
            if rank_of(&all) != step_rank {
                return Err(Error::Domain(format!("step {i} does not contain the previous step")));
            }
            for c in cols {
                let mut trial = vectors.clone();
                trial.push(c);
                if rank_of(&trial) == trial.len() {
                    vectors = trial;
                }
            }
            dims.push(vectors.len());
        }
        Flag::new(ambient_dim, vectors, dims)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn top(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<Rat>] {
        &self.vectors
    }

    pub fn profile(&self) -> FlagProfile {
        FlagProfile::new(self.dims.clone()).expect("validated on construction")
    }

    /// Basis of `V_i` (1-based step index) as the columns of a matrix.
    pub fn basis(&self, i: usize) -> RatMatrix {
        let d = if i == 0 { 0 } else { self.dims[i - 1] };
        columns(self.ambient_dim, &self.vectors[..d])
    }

    /// The adapted vectors completed to a basis of the ambient space with
    /// coordinate vectors, as the columns of an invertible matrix.
    pub fn adapted_basis(&self) -> RatMatrix {
        let mut vs = self.vectors.clone();
        for i in 0..self.ambient_dim {
            let mut trial = vs.clone();
            trial.push(unit_vector(self.ambient_dim, i));
            if rank_of(&trial) == trial.len() {
                vs = trial;
            }
        }
        columns(self.ambient_dim, &vs)
    }
}

fn unit_vector(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

fn rank_of(vs: &[Vec<Rat>]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    RatMatrix::from_rows(vs.to_vec()).expect("rectangular").rank()
}

fn columns(n: usize, vs: &[Vec<Rat>]) -> RatMatrix {
    let mut m = RatMatrix::zeros(n, vs.len());
    for (j, v) in vs.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            m.set(i, j, x.clone());
        }
    }
    m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormKind {
    Symmetric,
    Alternating,
}

/// A bilinear form given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilForm {
    kind: FormKind,
    gram: RatMatrix,
}

impl BilForm {
    pub fn new(kind: FormKind, gram: RatMatrix) -> Result<Self> {
        let ok = gram.is_square()
            && match kind {
                FormKind::Symmetric => gram.is_symmetric(),
                FormKind::Alternating => gram.is_antisymmetric(),
            };
        if !ok {
            return Err(Error::Domain(format!("Gram matrix is not {kind:?}")));
        }
        Ok(BilForm { kind, gram })
    }

    pub fn symmetric(gram: RatMatrix) -> Result<Self> {
        Self::new(FormKind::Symmetric, gram)
    }

    pub fn alternating(gram: RatMatrix) -> Result<Self> {
        Self::new(FormKind::Alternating, gram)
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn eval(&self, u: &[Rat], v: &[Rat]) -> Rat {
        u.iter().zip(self.gram.mul_vec(v)).map(|(a, b)| a * b).sum()
    }

    pub fn rank(&self) -> usize {
        self.gram.rank()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.rank() == self.dim()
    }

    /// Gram matrix of the restriction to the column span of `basis`.
    pub fn restricted(&self, basis: &RatMatrix) -> RatMatrix {
        &(&basis.transpose() * &self.gram) * basis
    }
}

/// Standard alternating form `sum e*_{2i-1} ^ e*_{2i}` on `K^n`, of rank
/// `2 floor(n/2)`.
pub fn standard_alternating_gram(n: usize) -> RatMatrix {
    let mut j = RatMatrix::zeros(n, n);
    for i in 0..n / 2 {
        j.set(2 * i, 2 * i + 1, rat(1));
        j.set(2 * i + 1, 2 * i, rat(-1));
    }
    j
}

/// An alternating form of maximal rank that is generic for the flag: the
/// standard form in a basis adapted to the flag. Returns the form in
/// ambient coordinates and the adapted basis (as columns).
pub fn generic_alternating_form(flag: &Flag) -> (BilForm, RatMatrix) {
    let p = flag.adapted_basis();
    let pinv = p.inverse().expect("adapted basis is invertible");
    let j = standard_alternating_gram(flag.ambient_dim());
    let gram = &(&pinv.transpose() * &j) * &pinv;
    (BilForm::alternating(gram).expect("congruent to an alternating form"), p)
}

/// Random alternating forms with entries in `[-bound, bound]` until one is
/// of maximal rank and generic for the flag.
pub fn sample_generic_alternating_form<R: Rng>(flag: &Flag, rng: &mut R, bound: i64) -> BilForm {
    let n = flag.ambient_dim();
    loop {
        let mut g = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let x = rng.gen_range(-bound..=bound);
                g.set(i, j, rat(x));
                g.set(j, i, rat(-x));
            }
        }
        let xi = BilForm::alternating(g).expect("antisymmetric by construction");
        if xi.rank() == 2 * (n / 2) && is_generic_form(&xi, flag) {
            return xi;
        }
    }
}

/// Each restriction to `V_i` has maximal rank and its radical meets
/// `V_{i-1}` trivially.
pub fn is_generic_form(xi: &BilForm, flag: &Flag) -> bool {
    if xi.kind() != FormKind::Alternating || xi.dim() != flag.ambient_dim() {
        return false;
    }
    for i in 1..=flag.len() {
        let d = flag.dims()[i - 1];
        let b = flag.basis(i);
        let restr = xi.restricted(&b);
        if restr.rank() != 2 * (d / 2) {
            return false;
        }
        let prev = if i == 1 { 0 } else { flag.dims()[i - 2] };
        if prev == 0 {
            continue;
        }
        // radical of the restriction, in ambient coordinates
        let mut span: Vec<Vec<Rat>> = flag.vectors()[..prev].to_vec();
        for k in restr.kernel() {
            span.push(b.mul_vec(&k));
        }
        if rank_of(&span) < span.len() {
            return false;
        }
    }
    true
}
