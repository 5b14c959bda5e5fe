//! Set-theoretic solutions of the Yang–Baxter equation and finite skew braces.
//!
//! The crate is organised bottom-up:
//!
//! * [`perm`] and [`groups`]: permutations and finite groups (closure, quotients,
//!   exponents, solvability, Sylow cyclicity, powerfulness).
//! * [`solutions`]: verification, standard constructions, isomorphism and
//!   canonical forms, indecomposability, retraction and multipermutation level.
//! * [`braces`]: skew braces, their λ-action and star product, ideals, right
//!   nilpotency, radical rings and the solution attached to a brace.
//! * [`enumerate`]: isomorph-free enumeration of solutions and skew braces.
//! * [`structgroup`]: the structure group of an involutive solution as a group of
//!   affine integer matrices, ball growth, rational series guessing and the
//!   unique-product falsifier.
//! * [`format`]: the on-disk record format shared by the CLI and the FFI layer.

pub mod braces;
pub mod canon;
pub mod catalog;
pub mod enumerate;
pub mod error;
pub mod format;
pub mod groups;
pub mod perm;
pub mod solutions;
pub mod structgroup;

pub use error::{Error, Result};
pub use groups::FiniteGroup;
pub use perm::Perm;
