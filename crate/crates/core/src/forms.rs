//! Integral symmetric bilinear forms modelling intersection forms of closed
//! oriented simply-connected 4-manifolds.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::isometry::SylvesterFrame;
use crate::linalg::{self, CongruentDiagonalization, IntMatrix};

/// A nondegenerate symmetric integral matrix. Cheap to clone.
#[derive(Clone)]
pub struct SymForm {
    inner: Arc<FormData>,
}

struct FormData {
    label: Option<String>,
    matrix: IntMatrix,
    det: BigInt,
    frame: CongruentDiagonalization,
    sylvester: OnceLock<SylvesterFrame>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FormSignature {
    pub p: usize,
    pub q: usize,
    pub sigma: i64,
    pub rank: usize,
}

impl FormSignature {
    pub fn new(p: usize, q: usize) -> Self {
        FormSignature { p, q, sigma: p as i64 - q as i64, rank: p + q }
    }
}

impl std::ops::Add for FormSignature {
    type Output = FormSignature;
    fn add(self, rhs: FormSignature) -> FormSignature {
        FormSignature::new(self.p + rhs.p, self.q + rhs.q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Definiteness {
    PositiveDefinite,
    NegativeDefinite,
    Indefinite,
}

impl Definiteness {
    pub fn is_definite(self) -> bool {
        self != Definiteness::Indefinite
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Definiteness::PositiveDefinite => "positive-definite",
            Definiteness::NegativeDefinite => "negative-definite",
            Definiteness::Indefinite => "indefinite",
        }
    }
}

/// Checks symmetry and nondegeneracy and returns the validated form.
pub fn validate_form(matrix: IntMatrix, label: Option<String>) -> Result<SymForm> {
    if !matrix.is_square() {
        return Err(Error::Dimension(format!("form matrix is {}x{}", matrix.rows(), matrix.cols())));
    }
    if matrix.rows() == 0 {
        return Err(Error::EmptyForm);
    }
    if let Some((row, col)) = matrix.first_asymmetry() {
        return Err(Error::Asymmetric { row, col });
    }
    let det = linalg::int_det(&matrix)?;
    if det.is_zero() {
        return Err(Error::Singular("determinant is 0".into()));
    }
    let frame = linalg::congruent_diagonalize(&matrix.to_rational())?;
    Ok(SymForm { inner: Arc::new(FormData { label, matrix, det, frame, sylvester: OnceLock::new() }) })
}

impl SymForm {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        validate_form(IntMatrix::from_i64_rows(rows)?, None)
    }

    /// Diagonal form `diag(entries)`.
    pub fn diagonal(entries: &[i64]) -> Result<Self> {
        let d: Vec<BigInt> = entries.iter().map(|&x| BigInt::from(x)).collect();
        validate_form(IntMatrix::diagonal(&d), None)
    }

    pub fn with_label(&self, label: impl Into<String>) -> Self {
        let d = &self.inner;
        SymForm {
            inner: Arc::new(FormData {
                label: Some(label.into()),
                matrix: d.matrix.clone(),
                det: d.det.clone(),
                frame: d.frame.clone(),
                sylvester: d.sylvester.clone(),
            }),
        }
    }

    pub fn label(&self) -> Option<&str> {
        self.inner.label.as_deref()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.inner.matrix
    }

    pub fn rank(&self) -> usize {
        self.inner.matrix.rows()
    }

    pub fn det(&self) -> &BigInt {
        &self.inner.det
    }

    pub fn is_unimodular(&self) -> bool {
        self.inner.det.abs().is_one()
    }

    /// The diagonalization computed at validation time (natural pivot order).
    pub fn frame(&self) -> &CongruentDiagonalization {
        &self.inner.frame
    }

    /// The Sylvester frame built from [`SymForm::frame`], cached.
    pub fn sylvester_frame(&self) -> &SylvesterFrame {
        self.inner.sylvester.get_or_init(|| SylvesterFrame::of(self))
    }

    /// `b(x, y) = xᵀ Q y`.
    pub fn pair(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let qy = self.inner.matrix.mul_vec(y);
        x.iter().zip(&qy).map(|(a, b)| a * b).sum()
    }

    pub fn signature(&self) -> FormSignature {
        signature_of(self)
    }
}

impl PartialEq for SymForm {
    fn eq(&self, other: &Self) -> bool {
        self.inner.matrix == other.inner.matrix
    }
}

impl Eq for SymForm {}

impl fmt::Debug for SymForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymForm")
            .field("label", &self.inner.label)
            .field("matrix", &self.inner.matrix)
            .finish()
    }
}

pub fn signature_of(form: &SymForm) -> FormSignature {
    let frame = form.frame();
    FormSignature::new(frame.positive_count(), frame.negative_count())
}

/// `x·x` is even for every integral `x` iff every diagonal entry is even.
pub fn is_even(form: &SymForm) -> bool {
    let m = form.matrix();
    (0..m.rows()).all(|i| m.get(i, i).is_even())
}

pub fn definiteness(form: &SymForm) -> Definiteness {
    let s = signature_of(form);
    if s.q == 0 {
        Definiteness::PositiveDefinite
    } else if s.p == 0 {
        Definiteness::NegativeDefinite
    } else {
        Definiteness::Indefinite
    }
}

/// Orthogonal direct sum; models the connected sum of the manifolds.
pub fn direct_sum(a: &SymForm, b: &SymForm) -> SymForm {
    let label = match (a.label(), b.label()) {
        (Some(x), Some(y)) => Some(format!("{x} # {y}")),
        _ => None,
    };
    validate_form(a.matrix().direct_sum(b.matrix()), label)
        .expect("direct sum of nondegenerate symmetric forms is nondegenerate and symmetric")
}

/// The hyperbolic plane `[[0,1],[1,0]]`.
pub fn hyperbolic() -> SymForm {
    SymForm::from_i64_rows(&[&[0, 1], &[1, 0]]).expect("hyperbolic plane is valid")
}

/// The Cartan matrix of `E8`, Bourbaki labelling (node 2 attached to node 4).
pub fn e8() -> SymForm {
    const EDGES: [(usize, usize); 7] = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
    let mut m = IntMatrix::diagonal(&vec![BigInt::from(2); 8]);
    for (i, j) in EDGES {
        *m.get_mut(i, j) = BigInt::from(-1);
        *m.get_mut(j, i) = BigInt::from(-1);
    }
    validate_form(m, None).expect("E8 Cartan matrix is valid")
}

/// The form with matrix `−Q`.
pub fn negate(form: &SymForm) -> SymForm {
    validate_form(-form.matrix(), None).expect("negation preserves validity")
}
