use std::fmt;

use num_traits::{One, Zero};
use serde_json::json;

use super::decomposition::nilpotent_subspace;
use crate::error::{Error, Result};
use crate::exactlin::{format_rat, Rat, RatMatrix, SampleConfig};
use crate::liealg::{LieAlgebra, LinearForm, Subalgebra};

/// Where a reported number came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Formula,
    Oracle,
    Both,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Formula => "formula",
            Method::Oracle => "oracle",
            Method::Both => "both",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplingInfo {
    pub seed: u64,
    pub trials: usize,
    pub bound: u64,
    /// Schwartz-Zippel bound on reporting a non-generic rank.
    pub sz_bound: Rat,
}

/// Coadjoint invariants of one algebra.
///
/// `index = rank_cd + defect + dim_uz`: the generic stabilizer splits into
/// a torus of dimension `rank_cd` and nilpotent elements, of which `dim_uz`
/// come from the center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisReport {
    pub index: usize,
    pub rank_cd: usize,
    pub defect: usize,
    pub quasi_reductive: bool,
    pub dim_uz: usize,
    pub method: Method,
    pub sampling: SamplingInfo,
    /// Set when some Jordan part left the realized span, i.e. the supplied
    /// realization is not algebraic and the verdicts depend on it.
    pub realization_dependent: bool,
}

impl AnalysisReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "index": self.index,
            "rank": self.rank_cd,
            "defect": self.defect,
            "qr": self.quasi_reductive,
            "dim_uz": self.dim_uz,
            "method": self.method.to_string(),
            "seed": self.sampling.seed,
            "trials": self.sampling.trials,
            "sz_bound": format_rat(&self.sampling.sz_bound),
        })
    }
}

/// Decomposition data of an abelian stabilizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerShape {
    pub dim: usize,
    pub nilpotent_dim: usize,
    pub torus_dim: usize,
    /// `Some(false)` when a Jordan part was found outside the span.
    pub jordan_closed: Option<bool>,
}

fn realized(sub: &Subalgebra<'_>) -> Result<Vec<RatMatrix>> {
    sub.realized().ok_or(Error::MissingRealization)
}

/// Torus and nilpotent dimensions of `g(g)`; needs an abelian stabilizer.
pub fn stabilizer_shape(alg: &LieAlgebra, g: &LinearForm) -> Result<StabilizerShape> {
    alg.require_realization()?;
    let stab = alg.stabilizer(g);
    if !stab.is_abelian() {
        return Err(Error::UnsupportedForm(format!(
            "stabilizer of dimension {} is not abelian (form not regular)",
            stab.dim()
        )));
    }
    let ns = nilpotent_subspace(&realized(&stab)?)?;
    Ok(StabilizerShape {
        dim: stab.dim(),
        nilpotent_dim: ns.dim,
        torus_dim: stab.dim() - ns.dim,
        jordan_closed: ns.jordan_closed,
    })
}

/// Dimension of the nilpotent part of the center, and whether it was
/// computed in a Jordan-closed realization.
pub fn unipotent_center_dim(alg: &LieAlgebra) -> Result<(usize, bool)> {
    alg.require_realization()?;
    let ns = nilpotent_subspace(&realized(&alg.center())?)?;
    Ok((ns.dim, ns.jordan_closed != Some(false)))
}

/// `dim u(g(g)) - dim u(z)` at a form with abelian stabilizer.
pub fn defect(alg: &LieAlgebra, g: &LinearForm) -> Result<usize> {
    let shape = stabilizer_shape(alg, g)?;
    let (uz, _) = unipotent_center_dim(alg)?;
    Ok(shape.nilpotent_dim - uz)
}

/// Full analysis from regular samples. The strongly regular sample is the
/// one whose stabilizer has the largest torus; rank and defect are read
/// there.
pub fn analyze(alg: &LieAlgebra, cfg: &SampleConfig) -> Result<AnalysisReport> {
    cfg.validate()?;
    if alg.dim() == 0 {
        return Ok(AnalysisReport {
            index: 0,
            rank_cd: 0,
            defect: 0,
            quasi_reductive: true,
            dim_uz: 0,
            method: Method::Oracle,
            sampling: SamplingInfo {
                seed: cfg.seed,
                trials: cfg.trials,
                bound: cfg.bound,
                sz_bound: Rat::zero(),
            },
            realization_dependent: false,
        });
    }
    alg.require_realization()?;
    let (report, forms) = alg.regular_forms(cfg)?;
    let (dim_uz, center_closed) = unipotent_center_dim(alg)?;
    let mut best: Option<StabilizerShape> = None;
    let mut closed = center_closed;
    for g in &forms {
        let shape = stabilizer_shape(alg, g)?;
        debug_assert_eq!(shape.dim, report.index);
        closed &= shape.jordan_closed != Some(false);
        let all_torus = shape.torus_dim == shape.dim;
        if best.as_ref().is_none_or(|b| shape.torus_dim > b.torus_dim) {
            best = Some(shape);
        }
        // the torus can not exceed the stabilizer, so nothing beats this sample
        if all_torus {
            break;
        }
    }
    let best = best.expect("at least one regular sample");
    let defect = best.nilpotent_dim - dim_uz;
    Ok(AnalysisReport {
        index: report.index,
        rank_cd: best.torus_dim,
        defect,
        quasi_reductive: defect == 0,
        dim_uz,
        method: Method::Oracle,
        sampling: SamplingInfo {
            seed: cfg.seed,
            trials: cfg.trials,
            bound: cfg.bound,
            sz_bound: report.generic.failure_bound,
        },
        realization_dependent: !closed,
    })
}

/// [`analyze`] with the index confirmed by polynomial elimination, so the
/// reported failure bound is zero. Practical up to dimension about 20.
pub fn analyze_exact(alg: &LieAlgebra, cfg: &SampleConfig) -> Result<AnalysisReport> {
    let mut report = analyze(alg, cfg)?;
    let exact = alg.index_exact();
    if exact != report.index {
        return Err(Error::Sampling {
            trials: cfg.trials,
            best: alg.dim() - report.index,
            wanted: alg.dim() - exact,
        });
    }
    report.sampling.sz_bound = Rat::zero();
    Ok(report)
}

/// Unipotent defect at a generic form: the minimum over regular samples.
pub fn generic_defect(alg: &LieAlgebra, cfg: &SampleConfig) -> Result<usize> {
    Ok(analyze(alg, cfg)?.defect)
}

/// Cartan-Duflo rank: torus dimension of a strongly regular stabilizer.
pub fn rank_cd(alg: &LieAlgebra, cfg: &SampleConfig) -> Result<usize> {
    Ok(analyze(alg, cfg)?.rank_cd)
}

pub fn is_quasi_reductive(alg: &LieAlgebra, cfg: &SampleConfig) -> Result<bool> {
    Ok(analyze(alg, cfg)?.quasi_reductive)
}

/// Unipotent radical of `g(g)` in the coordinates of the algebra.
///
/// For an algebraic stabilizer this is the largest ideal of nilpotent
/// elements, which equals the intersection of `g(g)` with the Jacobson
/// radical of the associative algebra `A` generated by `1` and `g(g)`. In
/// characteristic zero that radical is `{a : tr(ab) = 0 for all b in A}`,
/// so the intersection is a linear system.
pub fn stabilizer_unipotent_radical(alg: &LieAlgebra, g: &LinearForm) -> Result<Vec<Vec<Rat>>> {
    alg.require_realization()?;
    let stab = alg.stabilizer(g);
    let mats = realized(&stab)?;
    if stab.is_abelian() {
        let ns = nilpotent_subspace(&mats)?;
        return Ok(to_parent_coords(&stab, &ns.coefficients));
    }
    let envelope = associative_envelope(&mats);
    let k = mats.len();
    let mut sys = RatMatrix::zeros(envelope.len(), k);
    for (r, a) in envelope.iter().enumerate() {
        for (j, b) in mats.iter().enumerate() {
            sys.set(r, j, trace_product(b, a));
        }
    }
    Ok(to_parent_coords(&stab, &sys.kernel()))
}

fn to_parent_coords(stab: &Subalgebra<'_>, coeffs: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = stab.parent().dim();
    coeffs
        .iter()
        .map(|c| {
            let mut v = vec![Rat::zero(); n];
            for (x, b) in c.iter().zip(stab.basis()) {
                if x.is_zero() {
                    continue;
                }
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi += x * bi;
                }
            }
            v
        })
        .collect()
}

fn trace_product(a: &RatMatrix, b: &RatMatrix) -> Rat {
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

/// Basis of the unital associative algebra generated by the matrices.
fn associative_envelope(gens: &[RatMatrix]) -> Vec<RatMatrix> {
    let n = gens.first().map_or(0, RatMatrix::rows);
    let mut ech = Echelon::default();
    let mut basis = Vec::new();
    let mut queue = vec![RatMatrix::identity(n)];
    while let Some(m) = queue.pop() {
        if !ech.insert(m.as_slice()) {
            continue;
        }
        for gen in gens {
            queue.push(&m * gen);
        }
        basis.push(m);
    }
    basis
}

/// Incremental row echelon basis for membership tests.
#[derive(Default)]
struct Echelon {
    rows: Vec<(usize, Vec<Rat>)>,
}

impl Echelon {
    /// Adds `v` if it is independent of the stored rows.
    fn insert(&mut self, v: &[Rat]) -> bool {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        debug_assert!(v[p].is_one());
        self.rows.push((p, v));
        true
    }
}

/// Whether every nilpotent element of `g(g)` is central in the algebra.
pub fn is_reductive_type(alg: &LieAlgebra, g: &LinearForm) -> Result<bool> {
    let radical = stabilizer_unipotent_radical(alg, g)?;
    let center = alg.center();
    Ok(radical.iter().all(|v| center.contains(v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;

    fn heisenberg_realized() -> LieAlgebra {
        LieAlgebra::from_matrices_labeled(
            vec![RatMatrix::unit(3, 0, 1), RatMatrix::unit(3, 1, 2), RatMatrix::unit(3, 0, 2)],
            vec!["x".into(), "y".into(), "z".into()],
        )
        .unwrap()
    }

    #[test]
    fn heisenberg_reductive_type() {
        let h = heisenberg_realized();
        assert!(is_reductive_type(&h, &LinearForm::dual(3, 2)).unwrap());
        assert!(!is_reductive_type(&h, &LinearForm::dual(3, 0)).unwrap());
        assert_eq!(defect(&h, &LinearForm::dual(3, 2)).unwrap(), 0);
        let r = analyze(&h, &SampleConfig::default()).unwrap();
        assert_eq!((r.index, r.rank_cd, r.defect, r.dim_uz), (1, 0, 0, 1));
        assert!(r.quasi_reductive);
    }

    #[test]
    fn missing_realization_is_a_capability_error() {
        let h = heisenberg_realized().without_realization();
        assert_eq!(analyze(&h, &SampleConfig::default()).unwrap_err(), Error::MissingRealization);
        assert_eq!(
            is_reductive_type(&h, &LinearForm::dual(3, 2)).unwrap_err(),
            Error::MissingRealization
        );
    }

    #[test]
    fn non_regular_form_is_unsupported_for_defect() {
        let h = heisenberg_realized();
        assert!(matches!(
            defect(&h, &LinearForm::zero(3)),
            Err(Error::UnsupportedForm(_))
        ));
    }

    #[test]
    fn envelope_of_upper_triangular() {
        let env = associative_envelope(&[RatMatrix::unit(3, 0, 1), RatMatrix::unit(3, 1, 2)]);
        // 1, E01, E12, E02
        assert_eq!(env.len(), 4);
    }

    #[test]
    fn report_json_fields() {
        let r = analyze(&heisenberg_realized(), &SampleConfig::default()).unwrap();
        let j = r.to_json();
        for key in ["index", "rank", "defect", "qr", "dim_uz", "method", "seed", "trials", "sz_bound"] {
            assert!(j.get(key).is_some(), "{key}");
        }
        assert_eq!(j["method"], "oracle");
        let _ = rat(0);
    }
}
