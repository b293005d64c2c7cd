//! Connected components and stabilizer groups of real realizations of
//! classifying stacks of finite groups with involution.
//!
//! The crate is organized by task:
//!
//! * [`group`]: finite groups with an involution, loaded from tables,
//!   permutation generators or built-in families.
//! * [`galois`]: 1-cocycles, twisted conjugacy classes (the Galois cohomology
//!   set), stabilizers, strong involutions, twisting.
//! * [`stack`]: fixed-point groupoids of equivariant actions, induction and
//!   quotient constructions.
//! * [`forms`]: signatures of real quadratic forms and component counts for
//!   orthogonal and spin groups.
//! * [`exact`]: exact ℚ(i) matrix arithmetic and scripted witness suites.
//! * [`cohomology`]: mod-2 group cohomology via the normalized bar complex.
//! * [`selftest`]: the bundled corpus of reference computations.

pub mod cohomology;
pub mod error;
pub mod exact;
pub mod forms;
pub mod galois;
pub mod group;
pub mod selftest;
pub mod stack;

pub use error::{Error, Result};
pub use group::{load_group, FiniteGroup, GroupSpec, Subgroup};
