//! Named intersection forms, their known diffeomorphism actions, and the
//! characteristic numbers of smooth hypersurfaces in CP³.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{direct_sum, e8, hyperbolic, is_even, negate, SymForm};
use crate::isometry::{validate_isometry, FormIsometry};
use crate::json::JsonInt;
use crate::linalg::IntMatrix;
use crate::stabilization::{stable_psc_from_invariants, PscVerdict};

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub form: SymForm,
    pub spin: bool,
    pub description: String,
    pub known_isometries: Vec<(String, FormIsometry)>,
}

impl CatalogEntry {
    pub fn isometry(&self, name: &str) -> Option<&FormIsometry> {
        self.known_isometries.iter().find(|(n, _)| n == name).map(|(_, i)| i)
    }
}

/// Names accepted by [`get_entry`]; the last is a template.
pub const ENTRY_NAMES: [&str; 7] = ["S2xS2", "CP2", "CP2bar", "K3", "Ruberman", "E8", "nCP2_mCP2bar(n,m)"];

pub fn list() -> &'static [&'static str] {
    &ENTRY_NAMES
}

fn int(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_i64_rows(rows).expect("static matrix is rectangular")
}

fn entry(name: &str, form: SymForm, description: &str, isometries: Vec<(&str, IntMatrix)>) -> CatalogEntry {
    let form = form.with_label(name);
    let mut known = vec![("identity".to_owned(), FormIsometry::identity(&form))];
    for (n, m) in isometries {
        let iso = validate_isometry(&form, m).expect("catalog isometries preserve their forms");
        known.push((n.to_owned(), iso));
    }
    CatalogEntry { name: name.to_owned(), spin: is_even(&form), form, description: description.to_owned(), known_isometries: known }
}

/// `n·CP² # m·(−CP²)`, i.e. `diag(1ⁿ, (−1)ᵐ)`.
pub fn connected_sum_cp2(n: usize, m: usize) -> Result<SymForm> {
    if n + m == 0 {
        return Err(Error::EmptyForm);
    }
    let d: Vec<i64> = std::iter::repeat(1).take(n).chain(std::iter::repeat(-1).take(m)).collect();
    SymForm::diagonal(&d)
}

/// `E8(−1) ⊕ E8(−1) ⊕ H ⊕ H ⊕ H`.
pub fn k3_form() -> SymForm {
    let ne8 = negate(&e8());
    let h = hyperbolic();
    [ne8.clone(), h.clone(), h.clone(), h].iter().fold(ne8, |acc, f| direct_sum(&acc, f))
}

fn parse_template(name: &str) -> Option<(usize, usize)> {
    let args = name.strip_prefix("nCP2_mCP2bar(")?.strip_suffix(')')?;
    let (n, m) = args.split_once(',')?;
    Some((n.trim().parse().ok()?, m.trim().parse().ok()?))
}

pub fn get_entry(name: &str) -> Result<CatalogEntry> {
    Ok(match name {
        "S2xS2" => entry(
            "S2xS2",
            hyperbolic(),
            "S^2 x S^2 with the hyperbolic intersection form; spin",
            vec![("flip", int(&[&[0, 1], &[1, 0]])), ("neg_neg", int(&[&[-1, 0], &[0, -1]]))],
        ),
        "CP2" => entry(
            "CP2",
            SymForm::diagonal(&[1]).expect("valid"),
            "complex projective plane; positive definite, not spin",
            vec![("conjugation", int(&[&[-1]]))],
        ),
        "CP2bar" => entry(
            "CP2bar",
            SymForm::diagonal(&[-1]).expect("valid"),
            "CP^2 with reversed orientation",
            vec![],
        ),
        "K3" => entry(
            "K3",
            k3_form(),
            "K3 surface (quartic in CP^3): E8(-1)^2 + 3H, signature -16, spin",
            vec![],
        ),
        "Ruberman" => entry(
            "Ruberman",
            connected_sum_cp2(4, 21)?,
            "4 CP^2 # 21 (-CP^2), carrier of Ruberman's psc isotopy examples; not spin",
            vec![],
        ),
        "E8" => entry(
            "E8",
            e8(),
            "E8 lattice, even unimodular positive definite of rank 8 (form only: not realized by a smooth manifold)",
            vec![],
        ),
        other => {
            let (n, m) = parse_template(other).ok_or_else(|| Error::UnknownEntry(other.to_owned()))?;
            let label = format!("nCP2_mCP2bar({n},{m})");
            entry(&label, connected_sum_cp2(n, m)?, &format!("{n} CP^2 # {m} (-CP^2)"), vec![])
        }
    })
}

/// Characteristic numbers of a smooth degree-`d` hypersurface in CP³.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypersurfaceInvariants {
    pub degree: u64,
    pub euler: JsonInt,
    pub signature: JsonInt,
    pub b2: JsonInt,
    pub b2_plus: JsonInt,
    pub b2_minus: JsonInt,
    pub spin: bool,
}

/// `χ = d³ − 4d² + 6d`, `σ = d(4 − d²)/3`, spin iff `d` even.
pub fn hypersurface(d: u64) -> Result<HypersurfaceInvariants> {
    if d == 0 {
        return Err(Error::InvalidDegree(d, "degree must be at least 1"));
    }
    let dd = BigInt::from(d);
    let euler = &dd * &dd * &dd - 4 * &dd * &dd + 6 * &dd;
    let numerator: BigInt = &dd * (4 - &dd * &dd);
    let (signature, rem) = numerator.div_rem(&BigInt::from(3));
    debug_assert!(rem.is_zero());
    // Simply connected: b1 = b3 = 0.
    let b2 = &euler - 2;
    let b2_plus = (&b2 + &signature) / 2;
    let b2_minus = &b2 - &b2_plus;
    Ok(HypersurfaceInvariants {
        degree: d,
        euler: JsonInt(euler),
        signature: JsonInt(signature),
        b2: JsonInt(b2),
        b2_plus: JsonInt(b2_plus),
        b2_minus: JsonInt(b2_minus),
        spin: d % 2 == 0,
    })
}

/// Stable psc verdict for a hypersurface from its invariants.
pub fn hypersurface_stable_psc(inv: &HypersurfaceInvariants) -> PscVerdict {
    stable_psc_from_invariants(&inv.signature.0, inv.spin)
}

/// A Kähler surface without psc metric (Seiberg–Witten obstruction of
/// Taubes, requiring non-spin and `b₂⁺ ≥ 2`) that nevertheless admits psc
/// metrics stably.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KahlerExampleReport {
    pub invariants: HypersurfaceInvariants,
    pub nonspin: bool,
    pub b2_plus_at_least_2: bool,
    pub taubes_obstruction_applies: bool,
    pub stable_psc: PscVerdict,
}

pub fn psc_obstructed_kahler_example(d: u64) -> Result<KahlerExampleReport> {
    if d % 2 == 0 {
        return Err(Error::InvalidDegree(d, "degree must be odd"));
    }
    if d < 5 {
        return Err(Error::InvalidDegree(d, "degree must be at least 5"));
    }
    let invariants = hypersurface(d)?;
    let nonspin = !invariants.spin;
    let b2_plus_at_least_2 = invariants.b2_plus.0 >= BigInt::from(2);
    let stable_psc = hypersurface_stable_psc(&invariants);
    Ok(KahlerExampleReport {
        nonspin,
        b2_plus_at_least_2,
        taubes_obstruction_applies: nonspin && b2_plus_at_least_2,
        stable_psc,
        invariants,
    })
}
