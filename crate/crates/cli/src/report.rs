//! Report types. Field order here is the key order of the JSON output.

use psc_stab::catalog::{self, CatalogEntry, HypersurfaceInvariants};
use psc_stab::forms::{definiteness, is_even, signature_of};
use psc_stab::isometry::{delta_pm, det, eig1_dim_mod2, eig1_dim_rational, pi0_class, Isometry};
use psc_stab::json::{matrix_to_json, FormJson, JsonInt};
use psc_stab::stabilization::{theorem_a_stable_psc, theorem_b_check, Check};
use psc_stab::torus::{in_spin_image, kervaire_semichar, phi_domain_warning, phi_invariant, w2w3_mapping_torus};
use psc_stab::{Definiteness, FieldChar, PhiValue, PscVerdict, Result, Sign, SymForm, Verdict, Z2};
use serde::Serialize;

use crate::input::ProblemInput;

#[derive(Debug, Serialize)]
pub struct SignatureJson {
    pub p: usize,
    pub q: usize,
    pub sigma: i64,
}

impl SignatureJson {
    fn of(form: &SymForm) -> Self {
        let s = signature_of(form);
        SignatureJson { p: s.p, q: s.q, sigma: s.sigma }
    }
}

#[derive(Debug, Serialize)]
pub struct PerField<T> {
    pub char0: T,
    pub char2: T,
}

#[derive(Debug, Serialize)]
pub struct Pi0Json {
    pub det_bit: Z2,
    pub delta_plus_bit: Z2,
}

#[derive(Debug, Serialize)]
pub struct Invariants {
    pub rank: usize,
    pub signature: SignatureJson,
    pub unimodular: bool,
    pub even: bool,
    pub definiteness: Definiteness,
    pub spin: bool,
    pub det: Sign,
    pub delta_plus: Sign,
    pub delta_minus: Sign,
    pub eig1_dim: PerField<usize>,
    pub kervaire: PerField<Z2>,
    pub w2w3: Z2,
    pub phi: PhiValue,
    pub pi0_class: Pi0Json,
    pub unit_component: bool,
    pub in_spin_image: bool,
}

#[derive(Debug, Serialize)]
pub struct StabReport {
    pub n: u64,
    pub verdict: Verdict,
    pub matched_case: Option<u8>,
    pub checks: Vec<Check>,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub input: ProblemInput,
    pub invariants: Invariants,
    pub stable_psc: PscVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stabilization: Option<StabReport>,
    pub warnings: Vec<String>,
}

impl Report {
    /// Whether the report carries a negative or inconclusive verdict.
    pub fn is_negative(&self) -> bool {
        self.stabilization.as_ref().is_some_and(|s| s.verdict == Verdict::Inconclusive)
    }
}

/// The invariants report, plus the stabilization verdict when `n` is given.
pub fn build_report(input: &ProblemInput, n: Option<u64>) -> Result<Report> {
    let problem = input.validate()?;
    let iso = &problem.iso;
    let form = iso.form();
    let (delta_plus, delta_minus) = delta_pm(iso)?;
    let pi0 = pi0_class(iso)?;
    let phi = phi_invariant(iso)?;
    let unit = pi0.det_bit.is_zero() && pi0.delta_plus_bit.is_zero();
    let invariants = Invariants {
        rank: form.rank(),
        signature: SignatureJson::of(form),
        unimodular: form.is_unimodular(),
        even: is_even(form),
        definiteness: definiteness(form),
        spin: problem.spin,
        det: det(iso),
        delta_plus,
        delta_minus,
        eig1_dim: PerField { char0: eig1_dim_rational(iso), char2: eig1_dim_mod2(iso) },
        kervaire: PerField {
            char0: kervaire_semichar(iso, FieldChar::Zero),
            char2: kervaire_semichar(iso, FieldChar::Two),
        },
        w2w3: w2w3_mapping_torus(iso),
        phi,
        pi0_class: Pi0Json { det_bit: pi0.det_bit, delta_plus_bit: pi0.delta_plus_bit },
        unit_component: unit,
        in_spin_image: in_spin_image(phi),
    };

    let mut warnings = Vec::new();
    warnings.extend(phi_domain_warning(iso));
    if input.override_spin && input.spin.is_some_and(|s| s != is_even(form)) {
        warnings.push("spin flag overrides the parity of the form".to_owned());
    }

    let stabilization = match n {
        Some(n) => {
            let v = theorem_b_check(iso, problem.spin, n, input.override_spin)?;
            Some(StabReport { n, verdict: v.verdict, matched_case: v.matched_case, checks: v.checks })
        }
        None => None,
    };

    let mut echo = input.clone();
    if n.is_some() {
        echo.n = n;
    }
    Ok(Report {
        input: echo,
        invariants,
        stable_psc: theorem_a_stable_psc(form, problem.spin),
        stabilization,
        warnings,
    })
}

#[derive(Debug, Serialize)]
pub struct NamedMatrix {
    pub name: String,
    pub matrix: Vec<Vec<JsonInt>>,
}

#[derive(Debug, Serialize)]
pub struct CatalogReport {
    pub name: String,
    pub description: String,
    pub spin: bool,
    pub form: FormJson,
    pub signature: SignatureJson,
    pub definiteness: Definiteness,
    pub known_isometries: Vec<NamedMatrix>,
}

impl CatalogReport {
    pub fn from_entry(e: &CatalogEntry) -> Self {
        CatalogReport {
            name: e.name.clone(),
            description: e.description.clone(),
            spin: e.spin,
            form: FormJson::from_form(&e.form),
            signature: SignatureJson::of(&e.form),
            definiteness: definiteness(&e.form),
            known_isometries: e
                .known_isometries
                .iter()
                .map(|(name, iso)| NamedMatrix { name: name.clone(), matrix: matrix_to_json(iso.matrix()) })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct KahlerJson {
    pub nonspin: bool,
    pub b2_plus_at_least_2: bool,
    pub taubes_obstruction_applies: bool,
}

#[derive(Debug, Serialize)]
pub struct HypersurfaceReport {
    pub invariants: HypersurfaceInvariants,
    pub stable_psc: PscVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kahler_example: Option<KahlerJson>,
}

pub fn build_hypersurface(d: u64) -> Result<HypersurfaceReport> {
    let invariants = catalog::hypersurface(d)?;
    let stable_psc = catalog::hypersurface_stable_psc(&invariants);
    let kahler_example = if d % 2 == 1 && d >= 5 {
        let k = catalog::psc_obstructed_kahler_example(d)?;
        Some(KahlerJson {
            nonspin: k.nonspin,
            b2_plus_at_least_2: k.b2_plus_at_least_2,
            taubes_obstruction_applies: k.taubes_obstruction_applies,
        })
    } else {
        None
    };
    Ok(HypersurfaceReport { invariants, stable_psc, kahler_example })
}
