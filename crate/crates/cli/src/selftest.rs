use psc_stab::catalog::get_entry;
use psc_stab::suite::{run_all, PropertyRun};
use psc_stab::torus::phi_invariant;
use psc_stab::{PhiValue, Result};
use serde::Serialize;

/// The generator table: `(entry, isometry, expected φ)`.
pub const VECTORS: [(&str, &str, [u8; 3]); 3] =
    [("S2xS2", "flip", [0, 1, 0]), ("S2xS2", "neg_neg", [0, 0, 1]), ("CP2", "conjugation", [1, 1, 1])];

#[derive(Debug, Serialize)]
pub struct VectorResult {
    pub entry: &'static str,
    pub isometry: &'static str,
    pub expected: PhiValue,
    pub actual: PhiValue,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct RunSummary {
    pub property: &'static str,
    pub class: String,
    pub cases: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
    pub pass: bool,
}

impl From<PropertyRun> for RunSummary {
    fn from(r: PropertyRun) -> Self {
        RunSummary {
            pass: r.passed(),
            failures: r.failures.len(),
            first_failure: r.failures.into_iter().next(),
            property: r.property,
            class: r.class,
            cases: r.cases,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Extended {
    pub seed: u64,
    pub count: usize,
    pub runs: Vec<RunSummary>,
}

#[derive(Debug, Serialize)]
pub struct SelftestReport {
    pub vectors: Vec<VectorResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extended: Option<Extended>,
    pub pass: bool,
}

pub fn run(extended: Option<(u64, usize)>) -> Result<SelftestReport> {
    let mut vectors = Vec::new();
    for (entry, isometry, bits) in VECTORS {
        let e = get_entry(entry)?;
        let iso = e.isometry(isometry).expect("selftest vectors name catalog isometries");
        let actual = phi_invariant(iso)?;
        let expected = PhiValue::from_bits(bits);
        vectors.push(VectorResult { entry, isometry, expected, actual, pass: actual == expected });
    }
    let extended = match extended {
        Some((seed, count)) => {
            let runs = run_all(seed, count)?.into_iter().map(RunSummary::from).collect();
            Some(Extended { seed, count, runs })
        }
        None => None,
    };
    let pass = vectors.iter().all(|v| v.pass) && extended.as_ref().is_none_or(|e| e.runs.iter().all(|r| r.pass));
    Ok(SelftestReport { vectors, extended, pass })
}
