//! Free generating systems for the field of U-invariants of equidimensional
//! quiver representations.
//!
//! A quiver `Q = (V, A)` with every vertex carrying `K^n` has representation
//! space `H = ⊕ Mat(n)`, and the product `U_Q` of unitriangular groups acts by
//! `g.h = (g_t(α) X_α g_s(α)⁻¹)`. Once a map `ψ : V → A` picking an incident
//! arrow at every vertex is fixed, this crate
//!
//! * builds the section `S = ⊕ S_α` ([`section`]),
//! * reduces points of the open set Ω into it ([`reduction`]),
//! * assembles the generator system `⋃ (P_α ⊔ D_α)` with its leading
//!   coordinates ([`assembly`]) and evaluates it exactly ([`invariants`]),
//! * checks invariance, triangularity, independence and reduction claims at
//!   random points ([`verify`]).
//!
//! Everything is exact: rationals, a prime field, and first-order dual numbers
//! over either for partial derivatives. The crate is `no_std` and only needs
//! `alloc`.
#![no_std]

extern crate alloc;

pub mod assembly;
pub mod error;
pub mod field;
pub mod invariants;
pub mod matrix;
pub mod quiver;
pub mod reduction;
pub mod section;
pub mod verify;

pub use assembly::{build_system, classify, expected_count, CaseTag, GeneratorSystem, LoopMode};
pub use error::Error;
pub use field::{Dual, Fp, PrimeField, Rational, Rationals, Scalar, DEFAULT_PRIME};
pub use invariants::{GeneratorDescriptor, GeneratorKind, LeadingCoordinate, Side};
pub use matrix::{IndexPair, Matrix, Shape};
pub use quiver::{ArrowId, GroupElement, PsiChoice, Quiver, RepPoint, VertexId};
pub use section::SectionSpec;
