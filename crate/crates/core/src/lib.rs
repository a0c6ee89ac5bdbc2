//! Exact invariants of orientation-preserving diffeomorphisms of closed
//! simply-connected 4-manifolds, computed from their action on the
//! intersection form.
//!
//! A diffeomorphism is modelled by an integral isometry `A` of the
//! intersection form `Q` (`AᵀQA = Q`, vectors are coordinate columns). From
//! that data the crate computes:
//!
//! * the signature, parity and definiteness of the form ([`forms`]);
//! * `det`, the spinor-type signs `δ₊`/`δ₋` and the component of the
//!   isometry in `π₀(O(p,q))` ([`isometry`]);
//! * Kervaire semicharacteristics and the Stiefel–Whitney number `w₂w₃` of
//!   the mapping torus, and the `(ℤ/2)³`-valued invariant `φ` ([`torus`]);
//! * the product-stabilization and stable psc-existence decision procedures
//!   ([`stabilization`]).
//!
//! All arithmetic is exact ([`linalg`]); there is no floating point anywhere.

pub mod catalog;
pub mod error;
pub mod forms;
pub mod generate;
pub mod isometry;
pub mod json;
pub mod linalg;
pub mod stabilization;
pub mod suite;
pub mod torus;
pub mod z2;

pub use error::{Error, Result};
pub use forms::{Definiteness, FormSignature, SymForm};
pub use isometry::{FormIsometry, Isometry, Pi0Class, RationalIsometry, Sign, SylvesterFrame};
pub use linalg::{IntMatrix, Matrix, Mod2Matrix, RatMatrix};
pub use stabilization::{PscVerdict, StabVerdict, Verdict};
pub use torus::{FieldChar, PhiValue, TorusBetti};
pub use z2::Z2;
