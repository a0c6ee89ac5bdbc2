//! Invariants of the mapping torus `T(f)` of a diffeomorphism of a closed
//! simply-connected 4-manifold, computed from the action on `H²`.
//!
//! The cohomology of `M` is `F` in degrees 0 and 4, `V = H²(M;F)` in degree
//! 2, and zero otherwise. Orientation preservation fixes the action on `H⁰`
//! and `H⁴` to the identity.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Result;
use crate::isometry::{self, FormIsometry, Isometry};
use crate::linalg::IntMatrix;
use crate::z2::Z2;

/// Characteristic of the coefficient field: ℚ (or ℝ) versus 𝔽₂.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldChar {
    Zero,
    Two,
}

impl FieldChar {
    pub fn value(self) -> u8 {
        match self {
            FieldChar::Zero => 0,
            FieldChar::Two => 2,
        }
    }
}

impl Serialize for FieldChar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.value())
    }
}

impl<'de> Deserialize<'de> for FieldChar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match u8::deserialize(d)? {
            0 => Ok(FieldChar::Zero),
            2 => Ok(FieldChar::Two),
            other => Err(serde::de::Error::custom(format!("field characteristic must be 0 or 2, got {other}"))),
        }
    }
}

/// Betti numbers of `T(f)` in degrees 0..=2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusBetti {
    pub field_char: FieldChar,
    pub b0: usize,
    pub b1: usize,
    pub b2: usize,
}

impl TorusBetti {
    /// Kervaire semicharacteristic `b0 + b1 + b2 mod 2`.
    pub fn semicharacteristic(&self) -> Z2 {
        Z2::from_parity(self.b0 + self.b1 + self.b2)
    }
}

/// `φ = (w₂w₃[T(f)], det, δ₊)` with signs encoded `+1 ↦ 0`, `−1 ↦ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PhiValue {
    pub phi1: Z2,
    pub phi2: Z2,
    pub phi3: Z2,
}

impl PhiValue {
    pub fn new(phi1: Z2, phi2: Z2, phi3: Z2) -> Self {
        PhiValue { phi1, phi2, phi3 }
    }

    pub fn from_bits(bits: [u8; 3]) -> Self {
        let z = |b: u8| Z2::from_parity(b as usize);
        PhiValue::new(z(bits[0]), z(bits[1]), z(bits[2]))
    }

    pub fn bits(&self) -> [u8; 3] {
        [self.phi1.bit(), self.phi2.bit(), self.phi3.bit()]
    }
}

impl std::ops::Add for PhiValue {
    type Output = PhiValue;
    fn add(self, rhs: PhiValue) -> PhiValue {
        PhiValue::new(self.phi1 + rhs.phi1, self.phi2 + rhs.phi2, self.phi3 + rhs.phi3)
    }
}

// Serialized as a three-element array, e.g. `[0,1,0]`.
impl Serialize for PhiValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.bits().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PhiValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b, c] = <[Z2; 3]>::deserialize(d)?;
        Ok(PhiValue::new(a, b, c))
    }
}

/// `κ_F(T(f)) = dim Eig₁(H²(f;F)) mod 2`.
pub fn kervaire_semichar(iso: &FormIsometry, field_char: FieldChar) -> Z2 {
    let dim = match field_char {
        FieldChar::Zero => isometry::eig1_dim_rational(iso),
        FieldChar::Two => isometry::eig1_dim_mod2(iso),
    };
    Z2::from_parity(dim)
}

/// `w₂w₃[T(f)] = dim Eig₁(H²(f;ℚ)) + dim Eig₁(H²(f;𝔽₂)) mod 2`.
pub fn w2w3_mapping_torus(iso: &FormIsometry) -> Z2 {
    Z2::from_parity(isometry::eig1_dim_rational(iso) + isometry::eig1_dim_mod2(iso))
}

pub fn phi_invariant(iso: &FormIsometry) -> Result<PhiValue> {
    let (plus, _) = isometry::delta_pm(iso)?;
    Ok(PhiValue::new(w2w3_mapping_torus(iso), isometry::det(iso).bit(), plus.bit()))
}

/// Set when `φ` is evaluated outside its intended domain (intersection forms
/// are unimodular).
pub fn phi_domain_warning(iso: &FormIsometry) -> Option<String> {
    (!iso.form().is_unimodular()).then(|| {
        format!(
            "form has determinant {}; phi is only meaningful for unimodular intersection forms",
            iso.form().det()
        )
    })
}

/// A class lifts to the spin bordism group iff its `w₂w₃` component vanishes.
pub fn in_spin_image(phi: PhiValue) -> bool {
    phi.phi1.is_zero()
}

// ---------------------------------------------------------------------------
// Wang-sequence oracle
//
// Independent of the eigenspace routines above: ranks are computed by plain
// Gauss-Jordan elimination over the field, and the Betti numbers of T(f) are
// assembled degree by degree from b_k = dim ker(f*−1 | H^k) +
// dim coker(f*−1 | H^{k−1}).
// ---------------------------------------------------------------------------

fn rank_over_q(m: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = m.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, rank);
        let inv = m[rank][c].recip();
        for x in m[rank].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn rank_over_f2(m: &[Vec<bool>]) -> usize {
    let mut m: Vec<Vec<bool>> = m.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c]) else {
            continue;
        };
        m.swap(p, rank);
        let pivot_row = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && row[c] {
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x ^= *y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `(dim ker, dim coker)` of `g − 1` for an action `g` on `F^n`.
fn fixed_and_coinvariant_dims(action: &IntMatrix, field_char: FieldChar) -> (usize, usize) {
    let n = action.rows();
    let rank = match field_char {
        FieldChar::Zero => {
            let rows: Vec<Vec<BigRational>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let x = action.get(i, j) - if i == j { BigInt::one() } else { BigInt::zero() };
                            BigRational::from_integer(x)
                        })
                        .collect()
                })
                .collect();
            rank_over_q(&rows)
        }
        FieldChar::Two => {
            let rows: Vec<Vec<bool>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let x = action.get(i, j) - if i == j { BigInt::one() } else { BigInt::zero() };
                            (x % 2u8) != BigInt::zero()
                        })
                        .collect()
                })
                .collect();
            rank_over_f2(&rows)
        }
    };
    (n - rank, n - rank)
}

/// Betti numbers of a mapping torus in every degree, from the actions of the
/// monodromy on the cohomology of the fibre (`actions[k]` acts on `H^k`).
pub fn wang_betti_numbers(actions: &[IntMatrix], field_char: FieldChar) -> Vec<usize> {
    let dims: Vec<(usize, usize)> = actions.iter().map(|a| fixed_and_coinvariant_dims(a, field_char)).collect();
    (0..=actions.len())
        .map(|k| {
            let ker = dims.get(k).map_or(0, |d| d.0);
            let coker = if k == 0 { 0 } else { dims[k - 1].1 };
            ker + coker
        })
        .collect()
}

/// The actions of an orientation-preserving map of a simply-connected
/// 4-manifold on `H⁰..H⁴`.
pub fn fibre_actions(iso: &FormIsometry) -> Vec<IntMatrix> {
    let one = IntMatrix::identity(1);
    let zero = IntMatrix::zeros(0, 0);
    vec![one.clone(), zero.clone(), iso.matrix().clone(), zero, one]
}

pub fn wang_betti_oracle(iso: &FormIsometry, field_char: FieldChar) -> TorusBetti {
    let b = wang_betti_numbers(&fibre_actions(iso), field_char);
    TorusBetti { field_char, b0: b[0], b1: b[1], b2: b[2] }
}
