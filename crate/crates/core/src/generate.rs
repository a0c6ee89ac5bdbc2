//! Deterministic pseudo-random isometry generators for property checks.
//!
//! Each generated element depends only on `(seed, index)`: element `i` is
//! drawn from a ChaCha stream selected by `i`, so streams can be extended or
//! sampled in parallel without changing earlier elements.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog;
use crate::error::{Error, Result};
use crate::forms::{direct_sum, hyperbolic, SymForm};
use crate::isometry::{
    reflection, validate_isometry, validate_rational_isometry, FormIsometry, Isometry, RationalIsometry,
};
use crate::linalg::{IntMatrix, RatMatrix};

/// Seed used by the test suites and `selftest --extended` unless overridden.
pub const DEFAULT_SEED: u64 = 0x7073_632d_7374_6162;

/// Reflection vectors have entries in `-VECTOR_BOUND..=VECTOR_BOUND`.
pub const VECTOR_BOUND: i64 = 5;

const MAX_REFLECTIONS: usize = 4;
const MAX_PRODUCT_LEN: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorMode {
    /// Products of rational reflections in anisotropic vectors.
    Reflections,
    /// Products of integral generators: catalog isometries of the form, `−I`
    /// and integral reflections in short roots (`b(v,v) = ±1, ±2`).
    CatalogProducts,
    /// Signed permutations of the orthogonal blocks of the form.
    SignedPermutations,
}

impl GeneratorMode {
    pub fn name(self) -> &'static str {
        match self {
            GeneratorMode::Reflections => "reflections",
            GeneratorMode::CatalogProducts => "catalog-products",
            GeneratorMode::SignedPermutations => "signed-permutations",
        }
    }

    pub fn is_integral(self) -> bool {
        self != GeneratorMode::Reflections
    }
}

impl fmt::Display for GeneratorMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub struct IsometryGenerator {
    pub form: SymForm,
    pub seed: u64,
    pub mode: GeneratorMode,
}

/// Output of a generator: integral for the integral modes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratedIsometry {
    Rational(RationalIsometry),
    Integral(FormIsometry),
}

impl GeneratedIsometry {
    pub fn as_integral(&self) -> Option<&FormIsometry> {
        match self {
            GeneratedIsometry::Integral(i) => Some(i),
            GeneratedIsometry::Rational(_) => None,
        }
    }

    pub fn to_rational(&self) -> RationalIsometry {
        match self {
            GeneratedIsometry::Integral(i) => i.to_rational(),
            GeneratedIsometry::Rational(r) => r.clone(),
        }
    }
}

impl Isometry for GeneratedIsometry {
    fn form(&self) -> &SymForm {
        match self {
            GeneratedIsometry::Integral(i) => i.form(),
            GeneratedIsometry::Rational(r) => r.form(),
        }
    }

    fn rational_matrix(&self) -> &RatMatrix {
        match self {
            GeneratedIsometry::Integral(i) => i.rational_matrix(),
            GeneratedIsometry::Rational(r) => r.rational_matrix(),
        }
    }
}

fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn random_anisotropic_vector(form: &SymForm, rng: &mut impl Rng) -> Vec<BigInt> {
    loop {
        let v: Vec<BigInt> =
            (0..form.rank()).map(|_| BigInt::from(rng.gen_range(-VECTOR_BOUND..=VECTOR_BOUND))).collect();
        if !form.pair(&v, &v).is_zero() {
            return v;
        }
    }
}

/// `R_{v_k} ⋯ R_{v_1}` for anisotropic `v_i`, accumulated as an integral
/// numerator over the product of the `b(v_i, v_i)`.
fn reflection_product(form: &SymForm, vectors: &[Vec<BigInt>]) -> RatMatrix {
    let n = form.rank();
    let mut num = IntMatrix::identity(n);
    let mut den = BigInt::from(1);
    for v in vectors {
        let bvv = form.pair(v, v);
        let w = form.matrix().mul_vec(v);
        // bvv·N − 2·v·(wᵀN)
        let wn: Vec<BigInt> = (0..n)
            .map(|j| (0..n).filter(|&k| !w[k].is_zero()).map(|k| &w[k] * num.get(k, j)).sum())
            .collect();
        num = IntMatrix::from_fn(n, n, |i, j| &bvv * num.get(i, j) - BigInt::from(2) * &v[i] * &wn[j]);
        den *= bvv;
    }
    num.map(|x| BigRational::new(x.clone(), den.clone()))
}

/// Integral generators used by [`GeneratorMode::CatalogProducts`].
pub fn integral_generators(form: &SymForm) -> Vec<FormIsometry> {
    let mut gens = vec![FormIsometry::negative_identity(form)];
    for name in ["S2xS2", "CP2", "CP2bar"] {
        let entry = catalog::get_entry(name).expect("fixed catalog entry");
        if entry.form.matrix() == form.matrix() {
            for (_, iso) in &entry.known_isometries {
                gens.push(validate_isometry(form, iso.matrix().clone()).expect("same form"));
            }
        }
    }
    let n = form.rank();
    let unit = |i: usize| -> Vec<BigInt> { (0..n).map(|k| BigInt::from((k == i) as i64)).collect() };
    let mut candidates: Vec<Vec<BigInt>> = (0..n).map(unit).collect();
    for i in 0..n {
        for j in i + 1..n {
            for s in [1i64, -1] {
                let mut v = unit(i);
                v[j] = BigInt::from(s);
                candidates.push(v);
            }
        }
    }
    for v in candidates {
        let norm = form.pair(&v, &v);
        if norm.is_zero() || norm.abs() > BigInt::from(2) {
            continue;
        }
        let r = reflection(form, &v).expect("anisotropic");
        gens.push(r.to_integral().expect("reflections in roots of norm ±1, ±2 are integral"));
    }
    gens
}

/// Orthogonal decomposition into indecomposable blocks (connected components
/// of the support graph of the matrix), each block sorted.
fn blocks(form: &SymForm) -> Vec<Vec<usize>> {
    let n = form.rank();
    let m = form.matrix();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut block = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < block.len() {
            let i = block[k];
            for j in 0..n {
                if !seen[j] && !m.get(i, j).is_zero() {
                    seen[j] = true;
                    block.push(j);
                }
            }
            k += 1;
        }
        block.sort_unstable();
        out.push(block);
    }
    out
}

fn block_matrix(form: &SymForm, block: &[usize]) -> IntMatrix {
    IntMatrix::from_fn(block.len(), block.len(), |i, j| form.matrix().get(block[i], block[j]).clone())
}

fn signed_permutation(form: &SymForm, blocks: &[Vec<usize>], rng: &mut impl Rng) -> FormIsometry {
    // Group blocks with identical Gram matrices; BTreeMap keeps this deterministic.
    let mut classes: BTreeMap<Vec<Vec<BigInt>>, Vec<usize>> = BTreeMap::new();
    for (b, block) in blocks.iter().enumerate() {
        classes.entry(block_matrix(form, block).to_rows()).or_default().push(b);
    }
    let mut target = vec![0usize; blocks.len()];
    for members in classes.values() {
        let mut shuffled = members.clone();
        shuffled.shuffle(rng);
        for (&from, &to) in members.iter().zip(&shuffled) {
            target[from] = to;
        }
    }
    let n = form.rank();
    let mut a = IntMatrix::zeros(n, n);
    for (b, block) in blocks.iter().enumerate() {
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        for (k, &i) in block.iter().enumerate() {
            *a.get_mut(blocks[target[b]][k], i) = BigInt::from(sign);
        }
    }
    validate_isometry(form, a).expect("signed block permutations preserve the form")
}

fn catalog_product(form: &SymForm, gens: &[FormIsometry], rng: &mut impl Rng) -> Result<GeneratedIsometry> {
    let k = rng.gen_range(1..=MAX_PRODUCT_LEN);
    let mut acc = FormIsometry::identity(form);
    for _ in 0..k {
        acc = acc.compose(gens.choose(rng).expect("at least -I is a generator"))?;
    }
    Ok(GeneratedIsometry::Integral(validate_isometry(form, acc.matrix().clone())?))
}

impl IsometryGenerator {
    pub fn new(form: SymForm, seed: u64, mode: GeneratorMode) -> Self {
        IsometryGenerator { form, seed, mode }
    }

    /// The `index`-th element of the stream.
    pub fn nth(&self, index: u64) -> Result<GeneratedIsometry> {
        let mut rng = stream(self.seed, index);
        let form = &self.form;
        match self.mode {
            GeneratorMode::Reflections => {
                let k = rng.gen_range(1..=MAX_REFLECTIONS);
                let vectors: Vec<Vec<BigInt>> = (0..k).map(|_| random_anisotropic_vector(form, &mut rng)).collect();
                let checked = validate_rational_isometry(form, reflection_product(form, &vectors))?;
                Ok(GeneratedIsometry::Rational(checked))
            }
            GeneratorMode::CatalogProducts => catalog_product(form, &integral_generators(form), &mut rng),
            GeneratorMode::SignedPermutations => {
                let blocks = self.permutation_blocks()?;
                Ok(GeneratedIsometry::Integral(signed_permutation(form, &blocks, &mut rng)))
            }
        }
    }

    fn permutation_blocks(&self) -> Result<Vec<Vec<usize>>> {
        let b = blocks(&self.form);
        if b.len() < 2 {
            return Err(Error::IncompatibleMode {
                mode: self.mode.name(),
                reason: "form is a single indecomposable block".into(),
            });
        }
        Ok(b)
    }
}

/// `count` consecutive elements of the generator's stream.
pub fn generate(gen: &IsometryGenerator, count: usize) -> Result<Vec<GeneratedIsometry>> {
    if gen.mode == GeneratorMode::SignedPermutations {
        gen.permutation_blocks()?;
    }
    if gen.mode == GeneratorMode::CatalogProducts {
        // Build the generator set once instead of per element.
        let gens = integral_generators(&gen.form);
        return (0..count as u64)
            .map(|i| catalog_product(&gen.form, &gens, &mut stream(gen.seed, i)))
            .collect();
    }
    (0..count as u64).map(|i| gen.nth(i)).collect()
}

/// The signature classes exercised by the property suites, with a
/// representative form for each: `(1,1)`, `(2,1)`, `(2,2)`, `(3,0)`,
/// `(3,19)` and `(4,21)`.
pub fn signature_classes() -> Vec<(&'static str, SymForm)> {
    let d = |e: &[i64]| SymForm::diagonal(e).expect("valid diagonal form");
    vec![
        ("(1,1)", hyperbolic()),
        ("(2,1)", d(&[1, 1, -1])),
        ("(2,2)", direct_sum(&hyperbolic(), &hyperbolic())),
        ("(3,0)", d(&[1, 1, 1])),
        ("(3,19)", catalog::k3_form()),
        ("(4,21)", catalog::connected_sum_cp2(4, 21).expect("nonempty")),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::signature_of;
    use std::collections::BTreeSet;

    #[test]
    fn catalog_products_on_hyperbolic_plane() {
        let h = hyperbolic();
        let allowed: BTreeSet<Vec<Vec<i64>>> = [
            vec![vec![1, 0], vec![0, 1]],
            vec![vec![-1, 0], vec![0, -1]],
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![0, -1], vec![-1, 0]],
        ]
        .into_iter()
        .collect();
        let out = generate(&IsometryGenerator::new(h, 1, GeneratorMode::CatalogProducts), 10).unwrap();
        assert_eq!(out.len(), 10);
        for g in out {
            let m = g.as_integral().unwrap().matrix();
            let rows: Vec<Vec<i64>> =
                m.to_rows().iter().map(|r| r.iter().map(|x| x.try_into().unwrap()).collect()).collect();
            assert!(allowed.contains(&rows), "{rows:?}");
        }
    }

    #[test]
    fn reflections_are_rational_isometries() {
        let f = SymForm::diagonal(&[1, 1, -1]).unwrap();
        let out = generate(&IsometryGenerator::new(f.clone(), 7, GeneratorMode::Reflections), 5).unwrap();
        assert_eq!(out.len(), 5);
        for g in &out {
            validate_rational_isometry(&f, g.rational_matrix().clone()).unwrap();
        }
    }

    #[test]
    fn reflection_product_matches_explicit_reflections() {
        let f = SymForm::diagonal(&[1, 2, -3]).unwrap();
        let big = |xs: &[i64]| xs.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let vs = [big(&[1, 1, 2]), big(&[0, 2, 1]), big(&[3, -1, 0])];
        let mut expected = reflection(&f, &vs[0]).unwrap();
        for v in &vs[1..] {
            expected = reflection(&f, v).unwrap().compose(&expected).unwrap();
        }
        assert_eq!(&reflection_product(&f, &vs), expected.matrix());
    }

    #[test]
    fn signed_permutations_of_diagonal_form() {
        let f = SymForm::diagonal(&[1, -1]).unwrap();
        for seed in [0, 3, 99] {
            let out = generate(&IsometryGenerator::new(f.clone(), seed, GeneratorMode::SignedPermutations), 4).unwrap();
            for g in out {
                let m = g.as_integral().unwrap().matrix();
                assert!(m.get(0, 1).is_zero() && m.get(1, 0).is_zero());
                assert_eq!(m.get(0, 0).abs(), BigInt::from(1));
                assert_eq!(m.get(1, 1).abs(), BigInt::from(1));
            }
        }
    }

    #[test]
    fn signed_permutations_need_two_blocks() {
        let gen = IsometryGenerator::new(hyperbolic(), 0, GeneratorMode::SignedPermutations);
        assert!(matches!(generate(&gen, 1), Err(Error::IncompatibleMode { .. })));
        let k3 = IsometryGenerator::new(catalog::k3_form(), 0, GeneratorMode::SignedPermutations);
        assert_eq!(generate(&k3, 3).unwrap().len(), 3);
    }

    #[test]
    fn streams_are_deterministic_and_prefix_stable() {
        let gen = IsometryGenerator::new(SymForm::diagonal(&[1, 1, -1]).unwrap(), 42, GeneratorMode::Reflections);
        let a = generate(&gen, 6).unwrap();
        let b = generate(&gen, 6).unwrap();
        assert_eq!(a, b);
        assert_eq!(gen.nth(4).unwrap(), a[4]);
        let other = IsometryGenerator { seed: 43, ..gen.clone() };
        assert_ne!(generate(&other, 6).unwrap(), a);

        let cat = IsometryGenerator::new(catalog::k3_form(), 5, GeneratorMode::CatalogProducts);
        assert_eq!(generate(&cat, 3).unwrap()[2], cat.nth(2).unwrap());
    }

    #[test]
    fn signature_class_forms() {
        let expected = [(1, 1), (2, 1), (2, 2), (3, 0), (3, 19), (4, 21)];
        for ((name, form), (p, q)) in signature_classes().into_iter().zip(expected) {
            let s = signature_of(&form);
            assert_eq!((s.p, s.q), (p, q), "{name}");
        }
    }
}
