//! Cross-module property runs over generated isometries.
//!
//! Used by the integration tests and by `psc-stab selftest --extended`. Each
//! run records how many cases were checked and a description of every
//! counterexample; an empty `failures` list means the property held.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::catalog;
use crate::error::Result;
use crate::forms::SymForm;
use crate::generate::{generate, signature_classes, GeneratedIsometry, GeneratorMode, IsometryGenerator};
use crate::isometry::{
    delta_pm, delta_pm_in_frame, det, eig1_dim_rational, pi0_class, FormIsometry, Isometry, Sign, SylvesterFrame,
};
use crate::torus::{kervaire_semichar, phi_invariant, w2w3_mapping_torus, wang_betti_oracle, FieldChar};
use crate::z2::Z2;

/// Samples per signature class for each property.
pub const DEFAULT_COUNT: usize = 500;

/// Samples used for the component-image check.
pub const PI0_SAMPLES: usize = 2000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyRun {
    pub property: &'static str,
    pub class: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl PropertyRun {
    fn new(property: &'static str, class: &str) -> Self {
        PropertyRun { property, class: class.to_owned(), cases: 0, failures: Vec::new() }
    }

    fn record(&mut self, holds: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !holds {
            self.failures.push(detail());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn seed_for(seed: u64, class: &str, salt: u64) -> u64 {
    // FNV-1a over the class name keeps per-class streams distinct.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in class.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    seed ^ h ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// A frame built from the reversed pivot order, for frame-independence.
pub fn alternate_frame(form: &SymForm) -> Result<SylvesterFrame> {
    let order: Vec<usize> = (0..form.rank()).rev().collect();
    SylvesterFrame::with_pivot_order(form, &order)
}

/// Rational-isometry samples: reflection products.
pub fn rational_samples(class: &str, form: &SymForm, seed: u64, count: usize) -> Result<Vec<GeneratedIsometry>> {
    generate(&IsometryGenerator::new(form.clone(), seed_for(seed, class, 1), GeneratorMode::Reflections), count)
}

/// Integral samples: catalog products.
pub fn integral_samples(class: &str, form: &SymForm, seed: u64, count: usize) -> Result<Vec<FormIsometry>> {
    let gen = IsometryGenerator::new(form.clone(), seed_for(seed, class, 2), GeneratorMode::CatalogProducts);
    Ok(generate(&gen, count)?.into_iter().filter_map(|g| g.as_integral().cloned()).collect())
}

fn gantmacher_holds(g: &impl Isometry) -> bool {
    Sign::from_parity(eig1_dim_rational(g) + g.rank()) == det(g)
}

/// Gantmacher identity, `δ₊δ₋ = det`, frame independence and the three
/// homomorphism laws on one class. Rational and integral samples both count.
pub fn isometry_properties(class: &str, form: &SymForm, seed: u64, count: usize) -> Result<Vec<PropertyRun>> {
    let mut samples = rational_samples(class, form, seed, count)?;
    samples.extend(integral_samples(class, form, seed, count)?.into_iter().map(GeneratedIsometry::Integral));
    let alt = alternate_frame(form)?;

    let mut gantmacher = PropertyRun::new("gantmacher", class);
    let mut delta_product = PropertyRun::new("delta_plus*delta_minus=det", class);
    let mut frame = PropertyRun::new("frame_independence", class);
    let mut signs = Vec::with_capacity(samples.len());
    for (i, g) in samples.iter().enumerate() {
        gantmacher.record(gantmacher_holds(g), || format!("sample {i}: {:?}", g.rational_matrix()));
        let d = det(g);
        let (dp, dm) = delta_pm(g)?;
        delta_product.record(dp * dm == d, || format!("sample {i}: ({dp},{dm}) vs det {d}"));
        let other = delta_pm_in_frame(g, &alt)?;
        frame.record(other == (dp, dm), || format!("sample {i}: ({dp},{dm}) vs {other:?}"));
        signs.push((d, dp, dm));
    }

    let mut hom_det = PropertyRun::new("hom_det", class);
    let mut hom_plus = PropertyRun::new("hom_delta_plus", class);
    let mut hom_minus = PropertyRun::new("hom_delta_minus", class);
    // Pair sample i with sample i + 1, wrapping, so there are as many pairs
    // as samples.
    for i in 0..samples.len() {
        let j = (i + 1) % samples.len();
        let ab = samples[i].to_rational().compose(&samples[j].to_rational())?;
        let ((ad, ap, am), (bd, bp, bm)) = (signs[i], signs[j]);
        let (abp, abm) = delta_pm(&ab)?;
        hom_det.record(det(&ab) == ad * bd, || format!("pair {i}"));
        hom_plus.record(abp == ap * bp, || format!("pair {i}"));
        hom_minus.record(abm == am * bm, || format!("pair {i}"));
    }
    Ok(vec![gantmacher, delta_product, frame, hom_det, hom_plus, hom_minus])
}

/// Wang oracle agreement in both characteristics, the Lusztig–Milnor–Peterson
/// relation and `φ₂ = κ₀ + rank`, on integral samples of one class.
pub fn torus_properties(class: &str, form: &SymForm, seed: u64, count: usize) -> Result<Vec<PropertyRun>> {
    let samples = integral_samples(class, form, seed, count)?;
    let mut oracle = PropertyRun::new("wang_oracle_agreement", class);
    let mut lmp = PropertyRun::new("lusztig_milnor_peterson", class);
    let mut phi2 = PropertyRun::new("phi2=kappa0+rank", class);
    for (i, g) in samples.iter().enumerate() {
        let k0 = kervaire_semichar(g, FieldChar::Zero);
        let k2 = kervaire_semichar(g, FieldChar::Two);
        let o0 = wang_betti_oracle(g, FieldChar::Zero).semicharacteristic();
        let o2 = wang_betti_oracle(g, FieldChar::Two).semicharacteristic();
        oracle.record(o0 == k0 && o2 == k2, || format!("sample {i}: kappa ({k0},{k2}) oracle ({o0},{o2})"));
        let w = w2w3_mapping_torus(g);
        lmp.record(w == k0 - k2, || format!("sample {i}: w2w3 {w}, kappa ({k0},{k2})"));
        let phi = phi_invariant(g)?;
        let expected = k0 + Z2::from_parity(g.rank());
        phi2.record(phi.phi2 == expected, || format!("sample {i}: phi2 {}", phi.phi2));
    }
    Ok(vec![oracle, lmp, phi2])
}

/// Distinct `(det, δ₊)` values over `samples` reflection products.
pub fn pi0_image(class: &str, form: &SymForm, seed: u64, samples: usize) -> Result<BTreeSet<(u8, u8)>> {
    let mut image = BTreeSet::new();
    for g in rational_samples(class, form, seed, samples)? {
        let c = pi0_class(&g)?;
        image.insert((c.det_bit.bit(), c.delta_plus_bit.bit()));
    }
    Ok(image)
}

/// `φ(ab) = φ(a) + φ(b)` over all ordered pairs of products of length ≤ 2
/// from the catalog isometries of `entry`.
pub fn phi_additivity(entry: &str) -> Result<PropertyRun> {
    let e = catalog::get_entry(entry)?;
    let gens: Vec<&FormIsometry> = e.known_isometries.iter().map(|(_, g)| g).collect();
    let mut words: Vec<FormIsometry> = gens.iter().map(|g| (*g).clone()).collect();
    for a in &gens {
        for b in &gens {
            words.push(a.compose(b)?);
        }
    }
    let mut run = PropertyRun::new("phi_additivity", entry);
    for a in &words {
        for b in &words {
            let lhs = phi_invariant(&a.compose(b)?)?;
            let rhs = phi_invariant(a)? + phi_invariant(b)?;
            run.record(lhs == rhs, || format!("{:?} * {:?}", a.matrix(), b.matrix()));
        }
    }
    Ok(run)
}

/// Every property on every signature class, plus the component-image sizes
/// and φ additivity on the realizable catalog generators.
pub fn run_all(seed: u64, count: usize) -> Result<Vec<PropertyRun>> {
    let mut runs = Vec::new();
    for (class, form) in signature_classes() {
        runs.extend(isometry_properties(class, &form, seed, count)?);
        runs.extend(torus_properties(class, &form, seed, count)?);
    }
    for (class, form, expect_exact) in pi0_targets() {
        let image = pi0_image(class, &form, seed, PI0_SAMPLES)?;
        let mut run = PropertyRun::new("pi0_image_size", class);
        let ok = if expect_exact { image.len() == 4 } else { image.len() <= 2 };
        run.record(ok, || format!("image {image:?}"));
        runs.push(run);
    }
    for entry in ["S2xS2", "CP2"] {
        runs.push(phi_additivity(entry)?);
    }
    Ok(runs)
}

/// Classes for the image-size check: indefinite `(2,2)` must hit all four
/// components, definite `(3,0)` at most two.
pub fn pi0_targets() -> Vec<(&'static str, SymForm, bool)> {
    signature_classes()
        .into_iter()
        .filter_map(|(c, f)| match c {
            "(2,2)" => Some((c, f, true)),
            "(3,0)" => Some((c, f, false)),
            _ => None,
        })
        .collect()
}
