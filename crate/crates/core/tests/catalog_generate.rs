use num_bigint::BigInt;
use num_traits::ToPrimitive;

use psc_stab::catalog::{get_entry, hypersurface, k3_form, list, psc_obstructed_kahler_example};
use psc_stab::forms::{is_even, signature_of, SymForm};
use psc_stab::generate::{generate, GeneratedIsometry, GeneratorMode, IsometryGenerator, DEFAULT_SEED};
use psc_stab::isometry::{validate_isometry, validate_rational_isometry, Isometry};
use psc_stab::json::IsometryJson;
use psc_stab::{Error, FormSignature};

fn concrete(name: &str) -> String {
    name.replace("(n,m)", "(3,5)")
}

/// Chern numbers of a degree-d surface in CP³: `c1 = (4 − d)h`,
/// `c2 = (d² − 4d + 6)h²`, `h² = d`; then `σ = (c1² − 2c2)/3`.
fn chern_oracle(d: i64) -> (i64, i64) {
    let c1sq = (4 - d) * (4 - d) * d;
    let c2 = (d * d - 4 * d + 6) * d;
    assert_eq!((c1sq - 2 * c2) % 3, 0);
    (c2, (c1sq - 2 * c2) / 3)
}

fn as_i64(x: &BigInt) -> i64 {
    x.to_i64().unwrap()
}

#[test]
fn every_catalog_isometry_validates() {
    for name in list() {
        let entry = get_entry(&concrete(name)).unwrap();
        assert_eq!(entry.spin, is_even(&entry.form), "{name}");
        assert!(entry.isometry("identity").is_some(), "{name}");
        for (iso_name, iso) in &entry.known_isometries {
            validate_isometry(&entry.form, iso.matrix().clone()).unwrap_or_else(|e| panic!("{name}/{iso_name}: {e}"));
        }
    }
}

#[test]
fn catalog_examples() {
    let s = get_entry("S2xS2").unwrap();
    assert!(s.spin);
    assert_eq!(s.isometry("flip").unwrap().matrix(), &psc_stab::IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]).unwrap());
    let r = get_entry("Ruberman").unwrap();
    assert_eq!(signature_of(&r.form), FormSignature::new(4, 21));
    assert!(!r.spin);
    let k3 = get_entry("K3").unwrap();
    assert_eq!((k3.form.rank(), signature_of(&k3.form)), (22, FormSignature::new(3, 19)));
    assert!(k3.spin);
    let t = get_entry("nCP2_mCP2bar(2,7)").unwrap();
    assert_eq!(signature_of(&t.form), FormSignature::new(2, 7));
    assert!(matches!(get_entry("T4"), Err(Error::UnknownEntry(_))));
}

#[test]
fn hypersurface_matches_chern_oracle() {
    for d in 1..=50 {
        let h = hypersurface(d as u64).unwrap();
        let (euler, sigma) = chern_oracle(d);
        assert_eq!((as_i64(&h.euler.0), as_i64(&h.signature.0)), (euler, sigma), "d = {d}");
        assert_eq!(as_i64(&h.b2.0), euler - 2);
        assert_eq!(as_i64(&h.b2_plus.0) * 2, euler - 2 + sigma);
        assert_eq!(h.spin, d % 2 == 0);
        if d % 2 == 0 {
            assert_eq!(sigma % 16, 0, "d = {d}");
        }
    }
    assert!(matches!(hypersurface(0), Err(Error::InvalidDegree(0, _))));
}

#[test]
fn hypersurface_anchors() {
    let cp2 = hypersurface(1).unwrap();
    let form = SymForm::diagonal(&[1]).unwrap();
    assert_eq!((as_i64(&cp2.euler.0), as_i64(&cp2.signature.0)), (3, 1));
    assert_eq!(as_i64(&cp2.b2_plus.0), signature_of(&form).p as i64);
    assert_eq!(cp2.spin, is_even(&form));

    let k3 = hypersurface(4).unwrap();
    let form = k3_form();
    let sig = signature_of(&form);
    assert_eq!((as_i64(&k3.euler.0), as_i64(&k3.signature.0)), (24, -16));
    assert_eq!((as_i64(&k3.b2_plus.0), as_i64(&k3.b2_minus.0)), (sig.p as i64, sig.q as i64));
    assert_eq!(k3.spin, is_even(&form));

    let quintic = hypersurface(5).unwrap();
    assert!(!quintic.spin);
    assert_eq!(as_i64(&quintic.b2_plus.0), 9);
}

#[test]
fn kahler_example() {
    for d in [5, 7, 9, 11] {
        let r = psc_obstructed_kahler_example(d).unwrap();
        assert!(r.nonspin && r.b2_plus_at_least_2 && r.taubes_obstruction_applies);
        assert!(r.stable_psc.stably_exists);
    }
    let r7 = psc_obstructed_kahler_example(7).unwrap();
    assert_eq!((as_i64(&r7.invariants.euler.0), as_i64(&r7.invariants.b2_plus.0)), (189, 41));
    for d in [4, 3, 1, 6] {
        assert!(matches!(psc_obstructed_kahler_example(d), Err(Error::InvalidDegree(..))));
    }
}

#[test]
fn generators_are_deterministic_per_seed_and_index() {
    let form = SymForm::diagonal(&[1, 1, -1]).unwrap();
    for mode in [GeneratorMode::Reflections, GeneratorMode::CatalogProducts, GeneratorMode::SignedPermutations] {
        let g = IsometryGenerator::new(form.clone(), 42, mode);
        let a = generate(&g, 20).unwrap();
        assert_eq!(a, generate(&g, 20).unwrap());
        // Longer streams extend shorter ones.
        assert_eq!(&generate(&g, 30).unwrap()[..20], &a[..]);
        for i in [0u64, 7, 19] {
            assert_eq!(g.nth(i).unwrap(), a[i as usize]);
        }
        let other = generate(&IsometryGenerator::new(form.clone(), 43, mode), 20).unwrap();
        assert_ne!(a, other, "{mode}");
    }
}

#[test]
fn generator_outputs_validate() {
    let form = SymForm::diagonal(&[1, 1, -1]).unwrap();
    for mode in [GeneratorMode::Reflections, GeneratorMode::CatalogProducts, GeneratorMode::SignedPermutations] {
        for g in generate(&IsometryGenerator::new(form.clone(), DEFAULT_SEED, mode), 50).unwrap() {
            match &g {
                GeneratedIsometry::Rational(r) => {
                    assert!(!mode.is_integral());
                    validate_rational_isometry(&form, r.matrix().clone()).unwrap();
                }
                GeneratedIsometry::Integral(i) => {
                    assert!(mode.is_integral());
                    validate_isometry(&form, i.matrix().clone()).unwrap();
                }
            }
        }
    }
}

#[test]
fn signed_permutations_on_split_diagonal_are_signed_diagonal() {
    let form = SymForm::diagonal(&[1, -1]).unwrap();
    for g in generate(&IsometryGenerator::new(form, 5, GeneratorMode::SignedPermutations), 4).unwrap() {
        let m = g.as_integral().unwrap().matrix();
        for i in 0..2 {
            assert_eq!(m.get(i, 1 - i), &BigInt::from(0));
            assert_eq!(m.get(i, i).magnitude(), &1u32.into());
        }
    }
    let single = IsometryGenerator::new(psc_stab::forms::hyperbolic(), 1, GeneratorMode::SignedPermutations);
    assert!(matches!(generate(&single, 3), Err(Error::IncompatibleMode { .. })));
}

#[test]
fn isometry_json_round_trip_on_generated() {
    let form = k3_form();
    for g in generate(&IsometryGenerator::new(form, 9, GeneratorMode::CatalogProducts), 10).unwrap() {
        let iso = g.as_integral().unwrap();
        let text = serde_json::to_string(&IsometryJson::from_isometry(iso)).unwrap();
        let back: IsometryJson = serde_json::from_str(&text).unwrap();
        assert_eq!(&back.to_isometry().unwrap(), iso);
        assert_eq!(back.to_isometry().unwrap().rank(), 22);
    }
}
