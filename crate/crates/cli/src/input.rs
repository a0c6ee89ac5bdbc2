use std::fs;
use std::io::Read;

use psc_stab::json::{matrix_from_json, FormJson, JsonInt};
use psc_stab::isometry::validate_isometry;
use psc_stab::stabilization::resolve_spin;
use psc_stab::{Error, FormIsometry, Result};
use serde::{Deserialize, Serialize};

/// One problem: a form, an integral isometry of it, and the hypotheses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemInput {
    pub form: FormJson,
    pub isometry: Vec<Vec<JsonInt>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spin: Option<bool>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub override_spin: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
}

/// A validated problem.
pub struct Problem {
    pub iso: FormIsometry,
    pub spin: bool,
}

impl ProblemInput {
    pub fn validate(&self) -> Result<Problem> {
        let form = self.form.to_form()?;
        let iso = validate_isometry(&form, matrix_from_json(&self.isometry)?)?;
        let spin = resolve_spin(&form, self.spin, self.override_spin)?;
        Ok(Problem { iso, spin })
    }
}

/// Reads `path`, or standard input for `-`.
pub fn read_source(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(format!("reading stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Error::Parse(format!("reading {path}: {e}")))
    }
}

pub fn parse_problem(text: &str) -> Result<ProblemInput> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}
