use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{MPoly, Rat, RatMatrix};
use crate::error::{Error, Result};

/// Parameters for randomized genericity checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub trials: usize,
    /// Sample coordinates are uniform integers in `[-bound, bound]`.
    pub bound: u64,
    pub seed: u64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            trials: 3,
            bound: 1 << 31,
            seed: 0,
        }
    }
}

impl SampleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Precondition("trials must be at least 1".into()));
        }
        if self.bound == 0 || self.bound > i64::MAX as u64 / 2 {
            return Err(Error::Precondition("bound must be in 1..2^62".into()));
        }
        Ok(())
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    pub fn random_point(&self, rng: &mut ChaCha8Rng, len: usize) -> Vec<Rat> {
        let b = self.bound as i64;
        (0..len)
            .map(|_| Rat::from_integer(BigInt::from(rng.gen_range(-b..=b))))
            .collect()
    }

    /// Schwartz-Zippel bound for a single trial on a polynomial of the given
    /// degree: `degree / (2 * bound + 1)`, capped at 1.
    pub fn sz_per_trial(&self, degree: usize) -> Rat {
        let p = Rat::new(BigInt::from(degree), BigInt::from(2 * self.bound + 1));
        p.min(Rat::one())
    }
}

/// Square antisymmetric matrix whose entries are linear forms (no constant
/// term) in a fixed list of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMatrix {
    n: usize,
    vars: Arc<[String]>,
    entries: Vec<Vec<(usize, Rat)>>,
}

impl LinMatrix {
    /// `entries[i * n + j]` lists `(variable, coefficient)` pairs.
    pub fn new(n: usize, vars: Arc<[String]>, entries: Vec<Vec<(usize, Rat)>>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::Shape(format!("{} entries for size {n}", entries.len())));
        }
        let m = LinMatrix { n, vars, entries };
        for i in 0..n {
            for j in i..n {
                let a = m.entry(i, j);
                let b = m.entry(j, i);
                if !a.add(&b).is_zero() {
                    return Err(Error::Precondition(format!("entry ({i},{j}) breaks antisymmetry")));
                }
            }
        }
        if m.entries.iter().flatten().any(|(k, _)| *k >= m.vars.len()) {
            return Err(Error::Shape("variable index out of range".into()));
        }
        Ok(m)
    }

    pub fn zeros(n: usize, vars: Arc<[String]>) -> Self {
        LinMatrix {
            n,
            vars,
            entries: vec![Vec::new(); n * n],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn entry(&self, i: usize, j: usize) -> MPoly {
        MPoly::linear(self.vars.clone(), &self.entries[i * self.n + j])
    }

    pub fn eval(&self, point: &[Rat]) -> RatMatrix {
        assert_eq!(point.len(), self.vars.len(), "evaluation point length");
        let data = self
            .entries
            .iter()
            .map(|e| e.iter().map(|(k, c)| c * &point[*k]).sum())
            .collect();
        RatMatrix::from_flat(self.n, self.n, data).expect("shape")
    }

    pub fn to_polys(&self) -> Vec<Vec<MPoly>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    /// Principal submatrix on the given indices.
    pub fn restrict(&self, idx: &[usize]) -> LinMatrix {
        let m = idx.len();
        let mut entries = Vec::with_capacity(m * m);
        for &i in idx {
            for &j in idx {
                entries.push(self.entries[i * self.n + j].clone());
            }
        }
        LinMatrix {
            n: m,
            vars: self.vars.clone(),
            entries,
        }
    }
}

/// Result of a generic-rank computation with its sampling certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericRank {
    pub rank: usize,
    pub exact: bool,
    pub config: SampleConfig,
    /// Probability bound that the reported rank is below the true generic
    /// rank; zero in exact mode.
    pub failure_bound: Rat,
    /// A sample point achieving `rank` (empty in exact mode).
    pub witness: Vec<Rat>,
    /// Every sampled point with the rank it achieved.
    pub samples: Vec<(Vec<Rat>, usize)>,
}

/// Maximum rank over `cfg.trials` random integer points.
pub fn generic_rank(m: &LinMatrix, cfg: &SampleConfig) -> Result<GenericRank> {
    cfg.validate()?;
    let mut rng = cfg.rng();
    let mut samples = Vec::with_capacity(cfg.trials);
    for _ in 0..cfg.trials {
        let p = cfg.random_point(&mut rng, m.vars.len());
        let r = m.eval(&p).rank();
        samples.push((p, r));
    }
    let (witness, rank) = samples
        .iter()
        .max_by_key(|(_, r)| *r)
        .cloned()
        .expect("at least one trial");
    let per = cfg.sz_per_trial(m.n);
    let mut failure_bound = Rat::one();
    for _ in 0..cfg.trials {
        failure_bound *= &per;
    }
    if m.n == 0 || m.vars.is_empty() {
        failure_bound = Rat::zero();
    }
    Ok(GenericRank {
        rank,
        exact: false,
        config: *cfg,
        failure_bound,
        witness,
        samples,
    })
}

/// Deterministic generic rank by fraction-free elimination over the
/// polynomial ring, with full pivoting on nonzero polynomials.
pub fn generic_rank_exact(m: &LinMatrix) -> usize {
    let mut a = m.to_polys();
    let n = m.n;
    let mut prev = MPoly::constant(m.vars.clone(), Rat::one());
    let mut k = 0;
    while k < n {
        let Some((pi, pj)) = (k..n)
            .flat_map(|i| (k..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by_key(|&(i, j)| a[i][j].num_terms())
        else {
            break;
        };
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = v.exact_div(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = MPoly::zero(m.vars.clone());
        }
        prev = a[k][k].clone();
        k += 1;
    }
    k
}

/// Largest size accepted by [`pfaffian_poly`].
pub const PFAFFIAN_POLY_MAX: usize = 12;

/// Pfaffian of an antisymmetric polynomial matrix by expansion along the
/// first row.
pub fn pfaffian_poly(m: &[Vec<MPoly>], vars: Arc<[String]>) -> Result<MPoly> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Shape("Pfaffian of a non-square matrix".into()));
    }
    if n % 2 == 1 {
        return Err(Error::Precondition("Pfaffian needs even size".into()));
    }
    if n > PFAFFIAN_POLY_MAX {
        return Err(Error::Capacity(format!(
            "symbolic Pfaffian limited to size {PFAFFIAN_POLY_MAX}, got {n}"
        )));
    }
    for i in 0..n {
        for j in i..n {
            if !m[i][j].add(&m[j][i]).is_zero() {
                return Err(Error::Precondition(format!("entry ({i},{j}) breaks antisymmetry")));
            }
        }
    }
    let idx: Vec<usize> = (0..n).collect();
    Ok(pf_expand(m, &idx, &vars))
}

fn pf_expand(m: &[Vec<MPoly>], idx: &[usize], vars: &Arc<[String]>) -> MPoly {
    if idx.is_empty() {
        return MPoly::constant(vars.clone(), Rat::one());
    }
    let first = idx[0];
    let mut acc = MPoly::zero(vars.clone());
    for (pos, &j) in idx.iter().enumerate().skip(1) {
        let a = &m[first][j];
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx
            .iter()
            .enumerate()
            .filter(|&(p, _)| p != 0 && p != pos)
            .map(|(_, &i)| i)
            .collect();
        let term = a.mul(&pf_expand(m, &rest, vars));
        acc = if pos % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;

    fn names(n: &[&str]) -> Arc<[String]> {
        n.iter().map(|s| s.to_string()).collect()
    }

    fn heisenberg_beta() -> LinMatrix {
        // basis x, y, z with [x,y] = z; variables are the dual coordinates
        let mut e = vec![Vec::new(); 9];
        e[1] = vec![(2, rat(1))];
        e[3] = vec![(2, rat(-1))];
        LinMatrix::new(3, names(&["x", "y", "z"]), e).unwrap()
    }

    #[test]
    fn generic_rank_examples() {
        let cfg = SampleConfig::default();
        assert_eq!(generic_rank(&heisenberg_beta(), &cfg).unwrap().rank, 2);
        assert_eq!(generic_rank_exact(&heisenberg_beta()), 2);
        let z = LinMatrix::zeros(4, names(&["a", "b", "c", "d"]));
        assert_eq!(generic_rank(&z, &cfg).unwrap().rank, 0);
        assert_eq!(generic_rank_exact(&z), 0);
    }

    #[test]
    fn failure_bound_is_reported() {
        let cfg = SampleConfig {
            trials: 2,
            bound: 10,
            seed: 1,
        };
        let g = generic_rank(&heisenberg_beta(), &cfg).unwrap();
        assert_eq!(g.failure_bound, Rat::new(9.into(), 441.into()));
        assert_eq!(g.samples.len(), 2);
    }

    #[test]
    fn rejects_non_antisymmetric() {
        let mut e = vec![Vec::new(); 4];
        e[1] = vec![(0, rat(1))];
        e[2] = vec![(0, rat(1))];
        assert!(LinMatrix::new(2, names(&["x"]), e).is_err());
    }

    #[test]
    fn pfaffian_poly_examples() {
        let v = names(&["x"]);
        let x = MPoly::var(v.clone(), 0);
        let m = vec![vec![MPoly::zero(v.clone()), x.clone()], vec![x.neg(), MPoly::zero(v.clone())]];
        assert_eq!(pfaffian_poly(&m, v.clone()).unwrap(), x);

        let v = names(&["z"]);
        let z = MPoly::var(v.clone(), 0);
        let zero = MPoly::zero(v.clone());
        let mut m = vec![vec![zero.clone(); 4]; 4];
        m[0][1] = z.clone();
        m[1][0] = z.neg();
        m[2][3] = z.clone();
        m[3][2] = z.neg();
        assert_eq!(pfaffian_poly(&m, v).unwrap(), z.mul(&z));
    }

    #[test]
    fn pfaffian_poly_classical_identity() {
        let v = names(&["x12", "x13", "x14", "x23", "x24", "x34"]);
        let x = |k| MPoly::var(v.clone(), k);
        let zero = MPoly::zero(v.clone());
        let mut m = vec![vec![zero; 4]; 4];
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            m[i][j] = x(k);
            m[j][i] = x(k).neg();
        }
        let expected = x(0).mul(&x(5)).sub(&x(1).mul(&x(4))).add(&x(2).mul(&x(3)));
        assert_eq!(pfaffian_poly(&m, v).unwrap(), expected);
    }

    #[test]
    fn pfaffian_poly_capacity_guard() {
        let v = names(&["x"]);
        let m = vec![vec![MPoly::zero(v.clone()); 14]; 14];
        assert!(matches!(pfaffian_poly(&m, v), Err(Error::Capacity(_))));
    }
}
