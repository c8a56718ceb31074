//! The JSON problem format shared by the list and b-function commands.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::listmod::{assemble_a, decompose_a, MatrixList, PolyMatrix, TMatrix};
use crate::polyring::{CharConfig, Extra, Ring};

fn default_gamma() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ListEntryJson {
    pub k: u64,
    pub n: u64,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemJson {
    pub p: u64,
    #[serde(default = "default_gamma")]
    pub gamma: u32,
    pub num_vars: usize,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub list: Option<Vec<ListEntryJson>>,
}

/// A validated problem: the characteristic, the base ring and the generator.
#[derive(Clone, Debug)]
pub struct Problem {
    pub cfg: CharConfig,
    pub ring: Ring,
    pub a: TMatrix,
    pub list: MatrixList,
}

fn field_err(field: &str, e: Error) -> Error {
    Error::InvalidInput(format!("{field}: {e}"))
}

fn parse_grid(field: &str, rows: &[Vec<String>], rank: usize, ring: Ring) -> Result<PolyMatrix> {
    if rows.len() != rank {
        return Err(field_err(
            field,
            Error::RankMismatch {
                expected: rank,
                found: rows.len(),
            },
        ));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != rank {
            return Err(field_err(
                &format!("{field}[{i}]"),
                Error::RankMismatch {
                    expected: rank,
                    found: row.len(),
                },
            ));
        }
        for (j, cell) in row.iter().enumerate() {
            crate::polyring::Poly::parse(cell, ring)
                .map_err(|e| field_err(&format!("{field}[{i}][{j}]"), e))?;
        }
    }
    PolyMatrix::parse(ring, rows)
}

impl Problem {
    pub fn from_json_str(text: &str) -> Result<Problem> {
        let raw: ProblemJson = serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("problem file: {e}")))?;
        Problem::from_raw(&raw)
    }

    pub fn from_raw(raw: &ProblemJson) -> Result<Problem> {
        let cfg = CharConfig::new(raw.p, raw.gamma).map_err(|e| field_err("p/gamma", e))?;
        if raw.rank == 0 {
            return Err(Error::InvalidInput("rank: must be positive".into()));
        }
        let ring = Ring::new(&cfg, raw.num_vars);
        match (&raw.matrix, &raw.list) {
            (Some(rows), None) => {
                let m = parse_grid("matrix", rows, raw.rank, ring.with_extra(Extra::T))?;
                let a = TMatrix::new(m)?;
                let list = decompose_a(&a, &cfg);
                Ok(Problem { cfg, ring, a, list })
            }
            (None, Some(entries)) => {
                let mut list = MatrixList::new(ring, raw.rank);
                for (i, entry) in entries.iter().enumerate() {
                    let field = format!("list[{i}].matrix");
                    let m = parse_grid(&field, &entry.matrix, raw.rank, ring)?;
                    list.insert(BigUint::from(entry.k), entry.n, m, &cfg)
                        .map_err(|e| field_err(&format!("list[{i}]"), e))?;
                }
                let a = assemble_a(&list, &cfg);
                Ok(Problem { cfg, ring, a, list })
            }
            _ => Err(Error::InvalidInput(
                "exactly one of `matrix` and `list` must be present".into(),
            )),
        }
    }

    /// The problem written in `matrix` form.
    pub fn matrix_json(cfg: &CharConfig, num_vars: usize, a: &TMatrix) -> ProblemJson {
        ProblemJson {
            p: cfg.p(),
            gamma: cfg.gamma(),
            num_vars,
            rank: a.size(),
            matrix: Some(a.matrix().to_strings()),
            list: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_and_list_forms_agree() {
        let m = Problem::from_json_str(r#"{"p":3,"num_vars":1,"rank":1,"matrix":[["t"]]}"#).unwrap();
        let l = Problem::from_json_str(
            r#"{"p":3,"gamma":1,"num_vars":1,"rank":1,"list":[{"k":0,"n":1,"matrix":[["1"]]}]}"#,
        )
        .unwrap();
        assert_eq!(m.a, l.a);
        assert_eq!(m.list, l.list);
    }

    #[test]
    fn errors_name_the_field() {
        let err = Problem::from_json_str(r#"{"p":3,"num_vars":1,"rank":1,"matrix":[["x1"]]}"#)
            .unwrap_err()
            .to_string();
        assert!(err.contains("matrix[0][0]"), "{err}");
        let err = Problem::from_json_str(r#"{"p":3,"num_vars":1,"rank":2,"matrix":[["t"]]}"#)
            .unwrap_err()
            .to_string();
        assert!(err.contains("matrix"), "{err}");
        let err = Problem::from_json_str(r#"{"p":4,"num_vars":1,"rank":1,"matrix":[["t"]]}"#)
            .unwrap_err()
            .to_string();
        assert!(err.contains("not prime"), "{err}");
        let err = Problem::from_json_str(r#"{"p":3,"num_vars":1,"rank":1}"#)
            .unwrap_err()
            .to_string();
        assert!(err.contains("exactly one"), "{err}");
        let err = Problem::from_json_str("{\"p\":3,\n\"num_vars\":1,\n\"rank\":1,\n\"matrx\":[]}")
            .unwrap_err()
            .to_string();
        assert!(err.contains("line 4"), "{err}");
        let err = Problem::from_json_str(
            r#"{"p":2,"num_vars":1,"rank":1,"list":[{"k":0,"n":2,"matrix":[["1"]]}]}"#,
        )
        .unwrap_err()
        .to_string();
        assert!(err.contains("list[0]"), "{err}");
    }
}
