//! Formula-versus-oracle tables: every standard parabolic of `so(q)`, and
//! every flag profile for stabilizers of alternating forms.

use rayon::prelude::*;
use serde_json::json;

use crate::classical::{flag_stabilizer_sp, generic_alternating_form, parabolic_from_roots, Flag};
use crate::error::{Error, Result};
use crate::exactlin::SampleConfig;
use crate::formulas::{
    defect_p_formula, defect_r_formula, h_from_root_complement, index_p_formula, index_r_formula, qr_p_formula,
    qr_roots, FlagProfile, RootSubset, Series,
};
use crate::jordan::{analyze, analyze_exact, AnalysisReport};
use crate::liealg::LieAlgebra;

/// How oracle values are computed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verify {
    pub sampling: SampleConfig,
    /// Confirm each index by polynomial elimination.
    pub exact: bool,
}

impl From<SampleConfig> for Verify {
    fn from(sampling: SampleConfig) -> Self {
        Verify { sampling, exact: false }
    }
}

impl Verify {
    pub fn run(&self, alg: &LieAlgebra) -> Result<AnalysisReport> {
        if self.exact {
            analyze_exact(alg, &self.sampling)
        } else {
            analyze(alg, &self.sampling)
        }
    }
}

/// One standard parabolic, with formula values and (optionally) the
/// values computed from its matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumRow {
    pub q: usize,
    pub series: Series,
    pub n: usize,
    pub roots: RootSubset,
    pub flag: FlagProfile,
    pub index_formula: usize,
    pub defect_formula: usize,
    pub qr_formula: bool,
    /// Verdict of the Dynkin-subset classifier.
    pub qr_classifier: bool,
    /// Count of even Levi intervals in the Dynkin diagram.
    pub h_roots: usize,
    pub oracle: Option<OracleValues>,
    /// Borderline row whose verdict is disputed; a mismatch here is
    /// reported but not counted as a failure.
    pub ambiguity: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleValues {
    pub dim: usize,
    pub index: usize,
    pub rank_cd: usize,
    pub defect: usize,
    pub qr: bool,
    pub seed: u64,
    pub trials: usize,
}

impl From<(usize, &AnalysisReport)> for OracleValues {
    fn from((dim, r): (usize, &AnalysisReport)) -> Self {
        OracleValues {
            dim,
            index: r.index,
            rank_cd: r.rank_cd,
            defect: r.defect,
            qr: r.quasi_reductive,
            seed: r.sampling.seed,
            trials: r.sampling.trials,
        }
    }
}

/// `so(10)` with roots `{1, 5-}`. The formulas and the Dynkin classifier
/// call it quasi-reductive, but it is sometimes listed as a non
/// quasi-reductive example, so the census logs it separately.
pub fn is_disputed_row(roots: &RootSubset) -> bool {
    roots.series == Series::D && roots.n == 5 && roots.numeric.iter().eq([1].iter()) && roots.minus && !roots.plus
}

impl EnumRow {
    pub fn formula(roots: &RootSubset) -> Result<EnumRow> {
        let q = roots.q();
        let flag = roots.flag_profile();
        Ok(EnumRow {
            q,
            series: roots.series,
            n: roots.n,
            roots: roots.clone(),
            index_formula: index_p_formula(q, &flag)?,
            defect_formula: defect_p_formula(q, &flag)?,
            qr_formula: qr_p_formula(q, &flag)?,
            qr_classifier: qr_roots(roots)?,
            h_roots: h_from_root_complement(roots),
            flag,
            oracle: None,
            ambiguity: is_disputed_row(roots),
        })
    }

    pub fn verified(roots: &RootSubset, verify: &Verify) -> Result<EnumRow> {
        let mut row = Self::formula(roots)?;
        let (_, alg) = parabolic_from_roots(roots)?;
        let report = verify.run(&alg)?;
        row.oracle = Some((alg.dim(), &report).into());
        Ok(row)
    }

    /// `None` without oracle values, otherwise whether index, defect and
    /// verdict all match.
    pub fn agree(&self) -> Option<bool> {
        self.oracle.as_ref().map(|o| {
            o.index == self.index_formula && o.defect == self.defect_formula && o.qr == self.qr_formula
        })
    }

    /// The formula side is self-consistent: the classifier, the defect
    /// formula and the Dynkin count all say the same thing.
    pub fn formulas_consistent(&self) -> bool {
        self.qr_classifier == self.qr_formula && self.h_roots == self.defect_formula
    }

    pub fn provenance(&self) -> String {
        match &self.oracle {
            None => "formula".into(),
            Some(o) => format!("oracle(seed={},trials={})", o.seed, o.trials),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let o = self.oracle.as_ref();
        json!({
            "q": self.q,
            "series": self.series.to_string(),
            "n": self.n,
            "root_set": self.roots.to_string(),
            "flag": self.flag.dims(),
            "index_formula": self.index_formula,
            "index_oracle": o.map(|o| o.index),
            "defect_formula": self.defect_formula,
            "defect_oracle": o.map(|o| o.defect),
            "qr_formula": self.qr_formula,
            "qr_oracle": o.map(|o| o.qr),
            "qr_classifier": self.qr_classifier,
            "agree": self.agree(),
            "ambiguity": self.ambiguity,
            "provenance": self.provenance(),
        })
    }

    pub const CSV_HEADER: &'static str = "q,series,n,root_set,flag,index_formula,index_oracle,defect_formula,\
defect_oracle,qr_formula,qr_oracle,qr_classifier,agree,ambiguity,provenance";

    pub fn to_csv(&self) -> String {
        let o = self.oracle.as_ref();
        let opt = |v: Option<String>| v.unwrap_or_default();
        [
            self.q.to_string(),
            self.series.to_string(),
            self.n.to_string(),
            format!("\"{}\"", self.roots),
            format!("\"{}\"", self.flag),
            self.index_formula.to_string(),
            opt(o.map(|o| o.index.to_string())),
            self.defect_formula.to_string(),
            opt(o.map(|o| o.defect.to_string())),
            self.qr_formula.to_string(),
            opt(o.map(|o| o.qr.to_string())),
            self.qr_classifier.to_string(),
            opt(self.agree().map(|a| a.to_string())),
            self.ambiguity.to_string(),
            format!("\"{}\"", self.provenance()),
        ]
        .join(",")
    }

    pub const MD_HEADER: &'static str = "| q | I | flag | index | defect | QR | classifier | oracle | agree | source |\n\
|---|---|------|-------|--------|----|------------|--------|-------|--------|";

    pub fn to_markdown(&self) -> String {
        let oracle = match &self.oracle {
            None => "-".to_string(),
            Some(o) => format!("{} / {} / {}", o.index, o.defect, if o.qr { "QR" } else { "non-QR" }),
        };
        let agree = match (self.agree(), self.ambiguity) {
            (None, _) => "-",
            (Some(true), _) => "yes",
            (Some(false), true) => "AMBIGUOUS",
            (Some(false), false) => "NO",
        };
        format!(
            "| {} | {}{} | {} | {} | {} | {} | {} | {} | {} | {} |",
            self.q,
            self.series,
            self.roots,
            self.flag,
            self.index_formula,
            self.defect_formula,
            if self.qr_formula { "QR" } else { "non-QR" },
            if self.qr_classifier { "QR" } else { "non-QR" },
            oracle,
            agree,
            self.provenance()
        )
    }
}

/// Series and rank of the standard parabolics of `so(q)`.
pub fn series_for(q: usize) -> Result<(Series, usize)> {
    if q < 7 {
        return Err(Error::Domain(format!("the census covers q >= 7, got {q}")));
    }
    Ok(if q % 2 == 1 { (Series::B, q / 2) } else { (Series::D, q / 2) })
}

/// All standard parabolics of `so(q)` in a fixed order. With a sampling
/// configuration the oracle columns are filled, in parallel.
pub fn enumerate(q: usize, verify: Option<&Verify>) -> Result<Vec<EnumRow>> {
    let (series, n) = series_for(q)?;
    let subsets = RootSubset::all(series, n);
    match verify {
        None => subsets.iter().map(EnumRow::formula).collect(),
        Some(v) => subsets.par_iter().map(|r| EnumRow::verified(r, v)).collect(),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CensusSummary {
    pub rows: usize,
    pub verified: usize,
    pub disagreements: usize,
    pub ambiguity_rows: usize,
    pub inconsistent_formulas: usize,
}

impl CensusSummary {
    pub fn of(rows: &[EnumRow]) -> Self {
        let mut s = CensusSummary {
            rows: rows.len(),
            ..Default::default()
        };
        for r in rows {
            if r.agree().is_some() {
                s.verified += 1;
            }
            if r.ambiguity {
                s.ambiguity_rows += 1;
            } else if r.agree() == Some(false) {
                s.disagreements += 1;
            }
            if !r.formulas_consistent() {
                s.inconsistent_formulas += 1;
            }
        }
        s
    }

    pub fn ok(&self) -> bool {
        self.disagreements == 0 && self.inconsistent_formulas == 0
    }
}

/// A flag stabilizer for an alternating form of maximal rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagRow {
    pub profile: FlagProfile,
    pub index_formula: usize,
    pub defect_formula: usize,
    pub oracle: OracleValues,
}

impl FlagRow {
    pub fn agree(&self) -> bool {
        self.oracle.index == self.index_formula && self.oracle.defect == self.defect_formula
    }
}

pub fn flag_row(profile: &FlagProfile, verify: &Verify) -> Result<FlagRow> {
    let flag = Flag::standard(profile.top(), profile.dims())?;
    let (xi, _) = generic_alternating_form(&flag);
    let alg = flag_stabilizer_sp(&flag, &xi)?;
    let report = verify.run(&alg)?;
    Ok(FlagRow {
        profile: profile.clone(),
        index_formula: index_r_formula(profile)?,
        defect_formula: defect_r_formula(profile)?,
        oracle: (alg.dim(), &report).into(),
    })
}

/// Every flag profile ending at `dim_v`, in parallel, in a fixed order.
pub fn flag_census(dim_v: usize, verify: &Verify) -> Result<Vec<FlagRow>> {
    FlagProfile::all_ending_at(dim_v)
        .par_iter()
        .map(|p| flag_row(p, verify))
        .collect()
}
