use serde::{Deserialize, Serialize};

use super::LieAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::{format_rat, parse_rat, RatMatrix};

/// On-disk form of a Lie algebra. Rationals are strings `"p/q"`, indices
/// are 0-based, and only brackets with `i < j` are listed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieAlgebraJson {
    pub dim: usize,
    pub labels: Vec<String>,
    pub structure: Vec<(usize, usize, Vec<(usize, String)>)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub realization: Option<Vec<Vec<Vec<String>>>>,
}

impl LieAlgebra {
    pub fn to_json_repr(&self) -> LieAlgebraJson {
        LieAlgebraJson {
            dim: self.dim,
            labels: self.labels.clone(),
            structure: self
                .table()
                .into_iter()
                .map(|(i, j, v)| (i, j, v.iter().map(|(k, c)| (*k, format_rat(c))).collect()))
                .collect(),
            realization: self.realization.as_ref().map(|mats| {
                mats.iter()
                    .map(|m| m.to_rows().iter().map(|r| r.iter().map(format_rat).collect()).collect())
                    .collect()
            }),
        }
    }

    pub fn from_json_repr(repr: &LieAlgebraJson) -> Result<Self> {
        if repr.labels.len() != repr.dim {
            return Err(Error::Parse(format!(
                "dim is {} but {} labels given",
                repr.dim,
                repr.labels.len()
            )));
        }
        let table = repr
            .structure
            .iter()
            .map(|(i, j, v)| {
                let v = v
                    .iter()
                    .map(|(k, c)| parse_rat(c).map(|c| (*k, c)))
                    .collect::<Result<Vec<_>>>()?;
                Ok((*i, *j, v))
            })
            .collect::<Result<Vec<_>>>()?;
        let alg = Self::from_structure_constants(repr.labels.clone(), table)?;
        match &repr.realization {
            None => Ok(alg),
            Some(mats) => {
                if mats.len() != repr.dim {
                    return Err(Error::Parse("one realization matrix per basis vector".into()));
                }
                let mats = mats
                    .iter()
                    .map(|m| {
                        let rows = m
                            .iter()
                            .map(|r| r.iter().map(|c| parse_rat(c)).collect::<Result<Vec<_>>>())
                            .collect::<Result<Vec<_>>>()?;
                        RatMatrix::from_rows(rows)
                    })
                    .collect::<Result<Vec<_>>>()?;
                alg.with_realization(mats)
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_repr()).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let repr: LieAlgebraJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json_repr(&repr)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::tests::heisenberg;

    #[test]
    fn heisenberg_document() {
        let text = r#"{ "dim": 3, "labels": ["x","y","z"], "structure": [[0, 1, [[2, "1"]]]],
                        "realization": [ [["0","1","0"],["0","0","0"],["0","0","0"]],
                                         [["0","0","0"],["0","0","1"],["0","0","0"]],
                                         [["0","0","1"],["0","0","0"],["0","0","0"]] ] }"#;
        let h = LieAlgebra::from_json(text).unwrap();
        assert_eq!(h.table(), heisenberg().table());
        assert!(h.realization().is_some());
        assert_eq!(LieAlgebra::from_json(&h.to_json()).unwrap(), h);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(LieAlgebra::from_json(r#"{"dim": 2, "labels": ["a"], "structure": []}"#).is_err());
        let bad_rat = r#"{"dim": 2, "labels": ["a","b"], "structure": [[0,1,[[1,"1/0"]]]]}"#;
        assert!(matches!(LieAlgebra::from_json(bad_rat), Err(Error::Parse(_))));
        assert!(LieAlgebra::from_json("not json").is_err());
    }
}
