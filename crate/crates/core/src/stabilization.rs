//! Decision procedures for product stabilization of the pullback action on
//! psc metrics, and for stable existence of psc metrics.
//!
//! Both procedures only certify: when no sufficient condition applies the
//! outcome is `inconclusive`, never a negative answer.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{is_even, signature_of, SymForm};
use crate::isometry::{is_unit_component, FormIsometry, Isometry};
use crate::torus::w2w3_mapping_torus;
use crate::z2::Z2;

pub const CHECK_SPIN: &str = "spin";
pub const CHECK_N_AT_LEAST_2: &str = "n ≥ 2";
pub const CHECK_W2W3: &str = "w2w3 vanishes";
pub const CHECK_UNIT_COMPONENT: &str = "unit component";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Guaranteed,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    pub explanation: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabVerdict {
    pub verdict: Verdict,
    pub matched_case: Option<u8>,
    pub checks: Vec<Check>,
}

impl StabVerdict {
    pub fn is_guaranteed(&self) -> bool {
        self.verdict == Verdict::Guaranteed
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PscVerdict {
    pub stably_exists: bool,
    pub reason: String,
}

/// Resolves the spin hypothesis: an explicit flag must agree with the parity
/// of the form unless `override_spin` is set.
pub fn resolve_spin(form: &SymForm, spin: Option<bool>, override_spin: bool) -> Result<bool> {
    let even = is_even(form);
    match spin {
        None => Ok(even),
        Some(s) if s == even || override_spin => Ok(s),
        Some(s) => Err(Error::SpinParityMismatch { asserted: s, even }),
    }
}

/// Sufficient conditions for `(f × id_N)^*` to act trivially up to homotopy
/// on psc metrics of `M × N`, where `n = dim N`:
///
/// 1. `n ≥ 2` and `M` spin;
/// 2. `n ≥ 2`, `M` not spin and `w₂w₃[T(f)] = 0`;
/// 3. `n = 1`, `M` spin and `H²(f)` in the identity component;
/// 4. `n = 1`, `M` not spin, `w₂w₃[T(f)] = 0` and `H²(f)` in the identity
///    component.
pub fn theorem_b_check(iso: &FormIsometry, spin: bool, n: u64, override_spin: bool) -> Result<StabVerdict> {
    if n == 0 {
        return Err(Error::InvalidDimension(n));
    }
    resolve_spin(iso.form(), Some(spin), override_spin)?;
    let w2w3 = w2w3_mapping_torus(iso);
    let unit = is_unit_component(iso)?;
    Ok(decide(spin, n, w2w3, unit))
}

/// The decision itself, which sees the isometry only through `w₂w₃` and
/// identity-component membership.
pub fn decide(spin: bool, n: u64, w2w3: Z2, unit: bool) -> StabVerdict {
    let big_n = n >= 2;
    let w_ok = w2w3.is_zero();
    let matched_case = match (big_n, spin) {
        (true, true) => Some(1),
        (true, false) if w_ok => Some(2),
        (false, true) if unit => Some(3),
        (false, false) if w_ok && unit => Some(4),
        _ => None,
    };
    let checks = vec![
        Check {
            name: CHECK_SPIN.into(),
            holds: spin,
            explanation: if spin {
                "M is spin (even intersection form or asserted)".into()
            } else {
                "M is not spin".into()
            },
        },
        Check {
            name: CHECK_N_AT_LEAST_2.into(),
            holds: big_n,
            explanation: format!("dim N = {n}"),
        },
        Check {
            name: CHECK_W2W3.into(),
            holds: w_ok,
            explanation: format!(
                "w2w3[T(f)] = {w2w3}; the mapping torus is {} in oriented bordism",
                if w_ok { "null" } else { "nonzero" }
            ),
        },
        Check {
            name: CHECK_UNIT_COMPONENT.into(),
            holds: unit,
            explanation: if unit {
                "det = +1 and delta_plus = +1: H^2(f) lies in the identity component".into()
            } else {
                "det or delta_plus is -1: H^2(f) lies outside the identity component".into()
            },
        },
    ];
    StabVerdict {
        verdict: if matched_case.is_some() { Verdict::Guaranteed } else { Verdict::Inconclusive },
        matched_case,
        checks,
    }
}

/// Stable existence of a psc metric for a closed simply-connected
/// 4-manifold with the given signature.
///
/// Non-spin: always, since every oriented bordism class in dimension 4
/// contains a psc manifold. Spin: exactly when the signature vanishes; a
/// nonzero signature gives a nonzero index obstruction in spin bordism
/// (this branch rests on index theory rather than on the bordism
/// argument alone).
pub fn stable_psc_from_invariants(sigma: &BigInt, spin: bool) -> PscVerdict {
    if !spin {
        PscVerdict {
            stably_exists: true,
            reason: "non-spin: every class in oriented 4-dimensional bordism admits a psc representative".into(),
        }
    } else if sigma.is_zero() {
        PscVerdict {
            stably_exists: true,
            reason: "spin with signature 0: spin bordant to a psc manifold (relies on index theory)".into(),
        }
    } else {
        PscVerdict {
            stably_exists: false,
            reason: format!(
                "spin with signature {sigma}: the index obstruction of the spin bordism class is nonzero (relies on index theory)"
            ),
        }
    }
}

pub fn theorem_a_stable_psc(form: &SymForm, spin: bool) -> PscVerdict {
    stable_psc_from_invariants(&BigInt::from(signature_of(form).sigma), spin)
}
