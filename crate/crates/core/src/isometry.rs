//! Isometries of a form and their component invariants `det`, `δ₊`, `δ₋`.
//!
//! Vectors are coordinate columns and an isometry `A` acts on the left, so
//! preservation of the form `Q` reads `AᵀQA = Q`.
//!
//! `δ±` are read off in a Sylvester frame `P` (columns spanning a maximal
//! positive subspace first): with `B = P⁻¹AP`, `δ₊` is the sign of the
//! determinant of the upper-left `p×p` block and `δ₋` of the lower-right
//! `q×q` block. The frame is not normalized to `±1` on the diagonal; a
//! positive rescaling of frame vectors conjugates the corner blocks by
//! positive diagonal matrices and leaves the determinant signs unchanged.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::forms::{definiteness, SymForm};
use crate::linalg::{self, DetSign, IntMatrix, RatMatrix};
use crate::z2::Z2;

/// `±1`, serialized as the strings `"+1"` and `"-1"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `+1 ↦ 0`, `−1 ↦ 1`.
    pub fn bit(self) -> Z2 {
        match self {
            Sign::Plus => Z2::ZERO,
            Sign::Minus => Z2::ONE,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        }
    }

    pub fn from_parity(n: usize) -> Self {
        if n % 2 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    fn from_det(s: DetSign) -> Option<Self> {
        match s {
            DetSign::Plus => Some(Sign::Plus),
            DetSign::Minus => Some(Sign::Minus),
            DetSign::NoSign => None,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match String::deserialize(d)?.as_str() {
            "+1" => Ok(Sign::Plus),
            "-1" | "−1" => Ok(Sign::Minus),
            other => Err(serde::de::Error::custom(format!("expected \"+1\" or \"-1\", got {other:?}"))),
        }
    }
}

/// Common interface of integral and rational isometries.
pub trait Isometry {
    fn form(&self) -> &SymForm;
    fn rational_matrix(&self) -> &RatMatrix;

    fn rank(&self) -> usize {
        self.form().rank()
    }
}

/// An integral isometry of a form: the action of a diffeomorphism on `H²`.
#[derive(Clone, PartialEq, Eq)]
pub struct FormIsometry {
    form: SymForm,
    matrix: IntMatrix,
    rational: RatMatrix,
}

/// An isometry with rational entries. Only `det`, `δ±` and the rational
/// eigenspace are defined for these.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalIsometry {
    form: SymForm,
    matrix: RatMatrix,
}

impl Isometry for FormIsometry {
    fn form(&self) -> &SymForm {
        &self.form
    }

    fn rational_matrix(&self) -> &RatMatrix {
        &self.rational
    }
}

impl Isometry for RationalIsometry {
    fn form(&self) -> &SymForm {
        &self.form
    }

    fn rational_matrix(&self) -> &RatMatrix {
        &self.matrix
    }
}

fn check_shape(form: &SymForm, rows: usize, cols: usize) -> Result<()> {
    if rows != cols || rows != form.rank() {
        return Err(Error::Dimension(format!(
            "isometry is {rows}x{cols} but the form has rank {}",
            form.rank()
        )));
    }
    Ok(())
}

/// Validates an integral matrix as an isometry: `AᵀQA = Q` and `det A = ±1`.
pub fn validate_isometry(form: &SymForm, matrix: IntMatrix) -> Result<FormIsometry> {
    check_shape(form, matrix.rows(), matrix.cols())?;
    if matrix.transpose().mul_mat(form.matrix()).mul_mat(&matrix) != *form.matrix() {
        return Err(Error::NotAnIsometry);
    }
    let det = linalg::int_det(&matrix)?;
    if !det.abs().is_one() {
        return Err(Error::NonUnimodularIsometry(det.to_string()));
    }
    let rational = matrix.to_rational();
    Ok(FormIsometry { form: form.clone(), matrix, rational })
}

/// Rational counterpart of [`validate_isometry`].
pub fn validate_rational_isometry(form: &SymForm, matrix: RatMatrix) -> Result<RationalIsometry> {
    check_shape(form, matrix.rows(), matrix.cols())?;
    // With A = N/d: AᵀQA = Q iff NᵀQN = d²Q, and det A = ±1 iff det N = ±dⁿ.
    let (n, d) = matrix.common_denominator();
    let q = form.matrix();
    let d2 = &d * &d;
    if n.transpose().mul_mat(q).mul_mat(&n) != q.map(|x| x * &d2) {
        return Err(Error::NotAnIsometry);
    }
    let det = linalg::int_det(&n)?;
    let dn = d.pow(u32::try_from(n.rows()).expect("rank fits in u32"));
    if det.abs() != dn {
        return Err(Error::NonUnimodularIsometry(BigRational::new(det, dn).to_string()));
    }
    Ok(RationalIsometry { form: form.clone(), matrix })
}

fn check_same_form(a: &SymForm, b: &SymForm) -> Result<()> {
    if a != b {
        return Err(Error::Dimension("isometries act on different forms".into()));
    }
    Ok(())
}

impl FormIsometry {
    pub fn identity(form: &SymForm) -> Self {
        let matrix = IntMatrix::identity(form.rank());
        FormIsometry { form: form.clone(), rational: matrix.to_rational(), matrix }
    }

    pub fn negative_identity(form: &SymForm) -> Self {
        let matrix = -&IntMatrix::identity(form.rank());
        FormIsometry { form: form.clone(), rational: matrix.to_rational(), matrix }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `self ∘ other`, i.e. the matrix product `self · other`.
    pub fn compose(&self, other: &FormIsometry) -> Result<FormIsometry> {
        check_same_form(&self.form, &other.form)?;
        let matrix = self.matrix.mul_mat(&other.matrix);
        Ok(FormIsometry { form: self.form.clone(), rational: matrix.to_rational(), matrix })
    }

    pub fn to_rational(&self) -> RationalIsometry {
        RationalIsometry { form: self.form.clone(), matrix: self.rational.clone() }
    }
}

impl RationalIsometry {
    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn compose(&self, other: &RationalIsometry) -> Result<RationalIsometry> {
        check_same_form(&self.form, &other.form)?;
        Ok(RationalIsometry { form: self.form.clone(), matrix: self.matrix.product(&other.matrix) })
    }

    /// The integral isometry with the same matrix, if all entries are integers.
    pub fn to_integral(&self) -> Option<FormIsometry> {
        let matrix = self.matrix.to_integral()?;
        Some(FormIsometry { form: self.form.clone(), rational: self.matrix.clone(), matrix })
    }

    /// `R_v · self`, computed as a rank-one update.
    pub fn reflect_left(&self, v: &[BigInt]) -> Result<RationalIsometry> {
        let (v, w, bvv) = reflection_data(&self.form, v)?;
        // R_v M = M − (2/b(v,v)) v (wᵀ M) with w = Qv.
        let n = self.form.rank();
        let m = &self.matrix;
        let scale = BigRational::new(BigInt::from(2), bvv);
        let wm: Vec<BigRational> = (0..n)
            .map(|j| {
                (0..n)
                    .filter(|&k| !w[k].is_zero())
                    .fold(BigRational::zero(), |acc, k| acc + &w[k] * m.get(k, j))
            })
            .collect();
        let matrix = RatMatrix::from_fn(n, n, |i, j| {
            if v[i].is_zero() || wm[j].is_zero() {
                m.get(i, j).clone()
            } else {
                m.get(i, j) - &scale * &v[i] * &wm[j]
            }
        });
        Ok(RationalIsometry { form: self.form.clone(), matrix })
    }
}

impl fmt::Debug for FormIsometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FormIsometry").field("form", &self.form).field("matrix", &self.matrix).finish()
    }
}

impl fmt::Debug for RationalIsometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RationalIsometry").field("form", &self.form).field("matrix", &self.matrix).finish()
    }
}

type ReflectionData = (Vec<BigRational>, Vec<BigRational>, BigInt);

fn reflection_data(form: &SymForm, v: &[BigInt]) -> Result<ReflectionData> {
    if v.len() != form.rank() {
        return Err(Error::Dimension(format!(
            "reflection vector has length {} but the form has rank {}",
            v.len(),
            form.rank()
        )));
    }
    let bvv = form.pair(v, v);
    if bvv.is_zero() {
        return Err(Error::IsotropicVector);
    }
    let w = form.matrix().mul_vec(v);
    let to_rat = |x: &BigInt| BigRational::from_integer(x.clone());
    Ok((v.iter().map(to_rat).collect(), w.iter().map(to_rat).collect(), bvv))
}

/// Matrix of the reflection `x ↦ x − 2·b(x,v)/b(v,v)·v`.
pub fn reflection(form: &SymForm, v: &[BigInt]) -> Result<RationalIsometry> {
    let (v, w, bvv) = reflection_data(form, v)?;
    let n = form.rank();
    let scale = BigRational::new(BigInt::from(2), bvv);
    let matrix = RatMatrix::from_fn(n, n, |i, j| {
        let delta = if i == j { BigRational::one() } else { BigRational::zero() };
        delta - &scale * &v[i] * &w[j]
    });
    Ok(RationalIsometry { form: form.clone(), matrix })
}

/// A diagonalizing basis of a form with the positive part listed first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylvesterFrame {
    pub p_matrix: RatMatrix,
    pub pos_count: usize,
    pub neg_count: usize,
    pub diag: Vec<BigRational>,
    // D⁻¹PᵀQ, so that P⁻¹AP = projector·A·P.
    projector: RatMatrix,
}

impl SylvesterFrame {
    /// The frame computed when the form was validated.
    pub fn of(form: &SymForm) -> Self {
        let d = form.frame();
        Self::build(form, d.p.clone(), d.d.clone())
    }

    /// A frame obtained by diagonalizing with a different pivot order.
    pub fn with_pivot_order(form: &SymForm, order: &[usize]) -> Result<Self> {
        let d = linalg::congruent_diagonalize_with_order(&form.matrix().to_rational(), order)?;
        Ok(Self::build(form, d.p, d.d))
    }

    fn build(form: &SymForm, p: RatMatrix, diag: Vec<BigRational>) -> Self {
        let pos_count = diag.iter().filter(|x| x.is_positive()).count();
        let neg_count = diag.len() - pos_count;
        let inv_d: Vec<BigRational> = diag.iter().map(|x| x.recip()).collect();
        let projector = RatMatrix::diagonal(&inv_d)
            .product(&p.transpose())
            .product(&form.matrix().to_rational());
        SylvesterFrame { p_matrix: p, pos_count, neg_count, diag, projector }
    }

    /// `B = P⁻¹AP`, the isometry written in this frame.
    pub fn conjugate(&self, a: &RatMatrix) -> RatMatrix {
        self.projector.product(a).product(&self.p_matrix)
    }
}

/// Sign of `det A`.
pub fn det(iso: &impl Isometry) -> Sign {
    let s = linalg::det_sign(iso.rational_matrix()).expect("isometry matrices are square");
    Sign::from_det(s).expect("isometries are invertible")
}

/// `(δ₊, δ₋)` computed in the frame chosen when the form was validated.
pub fn delta_pm(iso: &impl Isometry) -> Result<(Sign, Sign)> {
    delta_pm_in_frame(iso, iso.form().sylvester_frame())
}

pub fn delta_pm_in_frame(iso: &impl Isometry, frame: &SylvesterFrame) -> Result<(Sign, Sign)> {
    let b = frame.conjugate(iso.rational_matrix());
    let n = b.rows();
    let block_sign = |start: usize, end: usize, name: &str| -> Result<Sign> {
        // 0×0 blocks have determinant 1.
        let s = linalg::det_sign(&b.principal_block(start, end))?;
        Sign::from_det(s).ok_or_else(|| Error::Internal(format!("{name} block of the isometry is singular")))
    };
    let plus = block_sign(0, frame.pos_count, "positive")?;
    let minus = block_sign(frame.pos_count, n, "negative")?;
    Ok((plus, minus))
}

/// Dimension of the fixed space `ker(A − I)` over ℚ.
pub fn eig1_dim_rational(iso: &impl Isometry) -> usize {
    let a = iso.rational_matrix();
    linalg::rat_kernel_dim(&a.sub_mat(&RatMatrix::identity(a.rows())))
}

/// Dimension of `ker(A − I)` over 𝔽₂.
pub fn eig1_dim_mod2(iso: &FormIsometry) -> usize {
    linalg::mod2_kernel_dim(&iso.matrix.reduce_mod2().add_identity())
}

/// Image of an isometry in `π₀(Aut Q)` under `(det, δ₊)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pi0Class {
    pub det_bit: Z2,
    pub delta_plus_bit: Z2,
    pub definite: bool,
}

pub fn pi0_class(iso: &impl Isometry) -> Result<Pi0Class> {
    let (plus, _) = delta_pm(iso)?;
    Ok(Pi0Class {
        det_bit: det(iso).bit(),
        delta_plus_bit: plus.bit(),
        definite: definiteness(iso.form()).is_definite(),
    })
}

/// Whether the isometry lies in the identity component of `Aut Q`.
pub fn is_unit_component(iso: &impl Isometry) -> Result<bool> {
    let c = pi0_class(iso)?;
    Ok(c.det_bit.is_zero() && c.delta_plus_bit.is_zero())
}
