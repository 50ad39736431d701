//! Local nearrings on small p-groups.
//!
//! * [`pgroup`]: class-2 p-group presentations, collection arithmetic and a
//!   catalog of the groups of interest.
//! * [`nearring`]: dense multiplication tables, exhaustive axiom and locality
//!   verification, structure-map congruence checks and isomorphism testing.
//! * [`constructions`]: closed-form multiplications producing local nearrings
//!   on the class-2 groups of order p^4.
//! * [`search`]: exhaustive enumeration of nearrings with identity through
//!   monoids of additive endomorphisms, with budgets and checkpoints.

pub mod constructions;
pub mod error;
pub mod exec;
pub mod nearring;
pub mod pgroup;
pub mod search;

pub use error::{Error, Result};
pub use exec::Exec;
pub use nearring::{LocalityReport, Nearring};

pub use pgroup::{catalog, Element, GroupSpec, GroupTable};
