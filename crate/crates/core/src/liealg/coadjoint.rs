use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{LieAlgebra, LinearForm, Subalgebra};
use crate::error::{Error, Result};
use crate::exactlin::{
    generic_rank, generic_rank_exact, pfaffian_poly, GenericRank, LinMatrix, MPoly, Rat, RatMatrix,
    SampleConfig,
};

/// Index together with the sampling data that produced it.
#[derive(Clone, Debug)]
pub struct IndexReport {
    pub index: usize,
    pub generic: GenericRank,
}

/// Evidence that a sampled form is regular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularCertificate {
    pub trials: usize,
    pub seed: u64,
    pub bound: u64,
    pub achieved_rank: usize,
    pub generic_rank: usize,
    pub failure_bound: Rat,
}

impl LieAlgebra {
    /// `{X : [X, X_i] = 0 for all i}`.
    pub fn center(&self) -> Subalgebra<'_> {
        let n = self.dim;
        // Row (j, m) holds the X_m-coefficient of [X_i, X_j] as i varies.
        let mut by_key: HashMap<(usize, usize), Vec<Rat>> = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                for (m, c) in self.bracket_basis(i, j) {
                    by_key.entry((j, *m)).or_insert_with(|| vec![Rat::zero(); n])[i] = c.clone();
                }
            }
        }
        let mut keys: Vec<_> = by_key.keys().copied().collect();
        keys.sort_unstable();
        let mut seen = HashSet::new();
        let rows: Vec<Vec<Rat>> = keys
            .into_iter()
            .filter_map(|k| by_key.remove(&k))
            .filter(|row| seen.insert(row.clone()))
            .collect();
        let basis = if rows.is_empty() {
            (0..n).map(|i| LinearForm::dual(n, i).coeffs).collect()
        } else {
            RatMatrix::from_rows(rows).expect("rectangular").kernel_rref()
        };
        Subalgebra { parent: self, basis }
    }

    /// Gram matrix of `(X, Y) -> g([X, Y])` in the basis.
    pub fn kirillov_form(&self, g: &LinearForm) -> RatMatrix {
        assert_eq!(g.coeffs.len(), self.dim, "form length");
        let n = self.dim;
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let v: Rat = self
                    .bracket_basis(i, j)
                    .iter()
                    .map(|(k, c)| c * &g.coeffs[*k])
                    .sum();
                m.set(i, j, v);
            }
        }
        m
    }

    /// The Kirillov form with the coordinates of `g` left as variables named
    /// after the basis labels.
    pub fn kirillov_symbolic(&self) -> LinMatrix {
        let vars: Arc<[String]> = self.labels.iter().cloned().collect();
        let entries = self.structure.clone();
        LinMatrix::new(self.dim, vars, entries).expect("structure constants are antisymmetric")
    }

    /// `dim - generic rank of the Kirillov form`, randomized.
    pub fn index(&self, cfg: &SampleConfig) -> Result<IndexReport> {
        let generic = generic_rank(&self.kirillov_symbolic(), cfg)?;
        Ok(IndexReport {
            index: self.dim - generic.rank,
            generic,
        })
    }

    /// Index by deterministic polynomial elimination. Practical for
    /// dimensions up to about 20.
    pub fn index_exact(&self) -> usize {
        self.dim - generic_rank_exact(&self.kirillov_symbolic())
    }

    /// The coadjoint stabilizer `g(g)`, the radical of the Kirillov form.
    pub fn stabilizer(&self, g: &LinearForm) -> Subalgebra<'_> {
        Subalgebra {
            parent: self,
            basis: self.kirillov_form(g).kernel(),
        }
    }

    /// Samples attaining the maximal rank, with the index report.
    pub fn regular_forms(&self, cfg: &SampleConfig) -> Result<(IndexReport, Vec<LinearForm>)> {
        let report = self.index(cfg)?;
        let forms = report
            .generic
            .samples
            .iter()
            .filter(|(_, r)| *r == report.generic.rank)
            .map(|(p, _)| LinearForm::new(p.clone()))
            .collect();
        Ok((report, forms))
    }

    /// A regular form and its certificate.
    pub fn sample_regular_form(&self, cfg: &SampleConfig) -> Result<(LinearForm, RegularCertificate)> {
        let report = self.index(cfg)?;
        let cert = RegularCertificate {
            trials: cfg.trials,
            seed: cfg.seed,
            bound: cfg.bound,
            achieved_rank: report.generic.rank,
            generic_rank: report.generic.rank,
            failure_bound: report.generic.failure_bound.clone(),
        };
        Ok((LinearForm::new(report.generic.witness), cert))
    }

    /// Draws forms until one reaches `target` rank (for instance a generic
    /// rank known from exact elimination).
    pub fn sample_regular_form_with_target(
        &self,
        cfg: &SampleConfig,
        target: usize,
    ) -> Result<(LinearForm, RegularCertificate)> {
        cfg.validate()?;
        let mut rng = cfg.rng();
        let mut best = 0;
        for _ in 0..cfg.trials {
            let g = LinearForm::new(cfg.random_point(&mut rng, self.dim));
            let r = self.kirillov_form(&g).rank();
            if r == target {
                let cert = RegularCertificate {
                    trials: cfg.trials,
                    seed: cfg.seed,
                    bound: cfg.bound,
                    achieved_rank: r,
                    generic_rank: target,
                    failure_bound: Rat::zero(),
                };
                return Ok((g, cert));
            }
            best = best.max(r);
        }
        Err(Error::Sampling {
            trials: cfg.trials,
            best,
            wanted: target,
        })
    }

    /// Every `ad X_i` is traceless.
    pub fn is_unimodular(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim)
                .flat_map(|k| self.bracket_basis(i, k).iter().filter(move |(m, _)| *m == k))
                .map(|(_, c)| c.clone())
                .sum::<Rat>()
                .is_zero()
        })
    }

    /// Indices of the standard basis vectors completing the center: the
    /// non-pivot columns of the echelonized center basis.
    pub fn center_complement(&self) -> Vec<usize> {
        let center = self.center();
        if center.dim() == 0 {
            return (0..self.dim).collect();
        }
        let m = RatMatrix::from_rows(center.basis().to_vec()).expect("rectangular");
        let (_, pivots) = m.rref();
        (0..self.dim).filter(|c| !pivots.contains(c)).collect()
    }

    /// Pfaffian of the symbolic Kirillov form restricted to the fixed
    /// complement of the center. Nonzero exactly for prehomogeneous
    /// algebras; defined up to the basis choice.
    pub fn psi_polynomial(&self) -> Result<MPoly> {
        let idx = self.center_complement();
        if idx.len() % 2 == 1 {
            return Err(Error::Domain("not prehomogeneous: odd complement of the center".into()));
        }
        let restricted = self.kirillov_symbolic().restrict(&idx);
        let vars = restricted.vars().clone();
        let psi = pfaffian_poly(&restricted.to_polys(), vars)?;
        if psi.is_zero() {
            return Err(Error::Domain("not prehomogeneous: index exceeds the center dimension".into()));
        }
        Ok(psi)
    }

    /// Numeric counterpart of [`LieAlgebra::psi_polynomial`] at one form.
    pub fn psi_at(&self, g: &LinearForm) -> Result<Rat> {
        let idx = self.center_complement();
        self.kirillov_form(g).submatrix(&idx, &idx).pfaffian()
    }

    pub fn is_prehomogeneous(&self, cfg: &SampleConfig) -> Result<bool> {
        Ok(self.index(cfg)?.index == self.center().dim())
    }

    pub fn is_frobenius(&self, cfg: &SampleConfig) -> Result<bool> {
        Ok(self.index(cfg)?.index == 0)
    }
}

impl RegularCertificate {
    pub fn is_regular(&self) -> bool {
        self.achieved_rank == self.generic_rank && !self.failure_bound.is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;
    use crate::liealg::tests::{heisenberg, sl2};

    fn cfg() -> SampleConfig {
        SampleConfig::default()
    }

    fn borel_sl2() -> LieAlgebra {
        LieAlgebra::from_int_table(&["h", "x"], &[(0, 1, &[(1, 2)])]).unwrap()
    }

    fn abelian(n: usize) -> LieAlgebra {
        let labels: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
        LieAlgebra::from_structure_constants(labels, vec![]).unwrap()
    }

    #[test]
    fn center_examples() {
        let h = heisenberg();
        let z = h.center();
        assert_eq!(z.basis(), &[vec![rat(0), rat(0), rat(1)]]);
        assert_eq!(sl2().center().dim(), 0);
        assert_eq!(abelian(4).center().dim(), 4);
    }

    #[test]
    fn kirillov_examples() {
        let h = heisenberg();
        let k = h.kirillov_form(&LinearForm::dual(3, 2));
        assert_eq!(k, RatMatrix::from_i64(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]]));
        assert!(sl2().kirillov_form(&LinearForm::zero(3)).is_zero());
        let a = abelian(3);
        assert!(a.kirillov_form(&LinearForm::new(vec![rat(1), rat(2), rat(3)])).is_zero());
    }

    #[test]
    fn index_examples() {
        assert_eq!(heisenberg().index(&cfg()).unwrap().index, 1);
        assert_eq!(borel_sl2().index(&cfg()).unwrap().index, 0);
        assert_eq!(sl2().index(&cfg()).unwrap().index, 1);
        assert_eq!(heisenberg().index_exact(), 1);
        assert_eq!(sl2().index_exact(), 1);
        assert_eq!(abelian(0).index(&cfg()).unwrap().index, 0);
    }

    #[test]
    fn stabilizer_examples() {
        let h = heisenberg();
        let s = h.stabilizer(&LinearForm::dual(3, 2));
        assert_eq!(s.basis(), &[vec![rat(0), rat(0), rat(1)]]);
        assert_eq!(h.stabilizer(&LinearForm::zero(3)).dim(), 3);
    }

    #[test]
    fn regular_sampling() {
        let (g, cert) = heisenberg().sample_regular_form(&cfg()).unwrap();
        assert!(!g.coeffs[2].is_zero());
        assert!(cert.is_regular());
        let (_, cert) = abelian(3).sample_regular_form_with_target(&cfg(), 0).unwrap();
        assert_eq!(cert.achieved_rank, 0);
        let (g, _) = sl2().sample_regular_form(&cfg()).unwrap();
        assert_eq!(sl2().stabilizer(&g).dim(), 1);
        let err = heisenberg().sample_regular_form_with_target(&cfg(), 3);
        assert!(matches!(err, Err(Error::Sampling { wanted: 3, .. })));
    }

    #[test]
    fn unimodularity() {
        assert!(heisenberg().is_unimodular());
        assert!(!borel_sl2().is_unimodular());
        assert!(sl2().is_unimodular());
    }

    #[test]
    fn psi_examples() {
        let psi = heisenberg().psi_polynomial().unwrap();
        assert_eq!(psi.to_string(), "z");
        let psi = borel_sl2().psi_polynomial().unwrap();
        assert_eq!(psi.to_string(), "2*x");
        assert!(matches!(sl2().psi_polynomial(), Err(Error::Domain(_))));
    }
}
