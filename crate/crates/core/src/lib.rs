//! Exact verification of trigonometric and root-of-unity sum identities.
//!
//! Sums over roots of unity are evaluated inside the cyclotomic field
//! `Q(ζ_N)` and compared with their rational closed forms by exact equality.
//! Statements about real angles that are not roots of unity are checked with
//! multiprecision floating point against an explicit tolerance.
//!
//! Layering, bottom up:
//!
//! * [`ratpoly`]: rationals and dense polynomials over them.
//! * [`cyclotomic`]: elements of `Q(ζ_N)` reduced modulo `Φ_N`.
//! * [`bernoulli`]: Bernoulli numbers and polynomials.
//! * [`numeric`]: multiprecision kernels and seeded sampling.
//! * [`laurent`]: integer Laurent polynomials in one variable.
//! * [`identities`]: one verifier per identity, each returning an [`IdentityReport`].
//! * [`acceptance`]: the grid-level acceptance suite shared by tests and the CLI.

pub mod acceptance;
pub mod bernoulli;
pub mod cyclotomic;
mod error;
pub mod identities;
pub mod laurent;
pub mod numeric;
pub mod ratpoly;
pub mod report;

pub use error::{Error, Result};
pub use report::{IdentityId, IdentityReport, Mode, ParamValue, Status};
