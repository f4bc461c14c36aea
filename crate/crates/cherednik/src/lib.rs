//! Exact-arithmetic engine for degenerate affine Hecke and Cherednik algebra
//! actions on explicitly based vector spaces, with a verification harness
//! that checks the defining relations, the Dunkl-operator representations,
//! the affine-module Cherednik operators, and the coinvariant equivalences
//! on small exact instances.
//!
//! Everything is computed over arbitrary-precision rationals; identity checks
//! are exact with zero tolerance. Operators are locally finite, so infinite-
//! dimensional spaces are handled key by key without truncation.

pub mod affine;
pub mod coinv;
pub mod dunkl;
pub mod fraction;
pub mod glmod;
pub mod hecke;
pub mod laurent;
pub mod linops;
pub mod perm;
pub mod report;
pub mod scalar;
pub mod suites;
pub mod wspace;
