//! Hochschild cohomology of the quiver algebras `Λ_q = kQ/⟨a², b², ab − qba, ac⟩`.
//!
//! The crate is organised bottom-up: [`field`] and [`algebra`] build `Λ_q`
//! over an exact field, [`resolution`] holds the minimal bimodule resolution
//! and its comultiplication, [`cochain`] computes `HH^n` from the induced
//! cochain complex, [`cup`] implements cup products and the quotient by
//! nilpotents, and [`bar_oracle`] recomputes low degrees from the reduced bar
//! complex as an independent check.

pub mod algebra;
pub mod bar_oracle;
pub mod cochain;
pub mod cup;
pub mod error;
pub mod field;
pub mod linalg;
pub mod report;
pub mod resolution;
pub mod verify;

pub use algebra::{AlgebraElement, BasisPath, Vertex};
pub use error::{Error, Result};
pub use field::{make_field, FieldContext, FieldSpec, Scalar};
