//! Exact-arithmetic workbench for K3-surface lattice and motive identities:
//! integral lattices and their invariants, the rank-22 cohomology model with
//! a block-swap involution, Neron-Severi candidate lattices with glue-vector
//! overlattices, a symbolic valence/idempotent calculus, elliptic fibration
//! fiber tables with the 2-isogeny quotient, and a citation-carrying rule
//! engine over surface descriptors.
//!
//! All arithmetic is exact (arbitrary-precision integers and rationals); no
//! floating point anywhere.

pub mod acceptance;
pub mod classifier;
pub mod elliptic;
pub mod lattice;
pub mod matrix;
pub mod motive;
pub mod nikulin;
pub mod nsclass;
pub mod ratpoly;
pub mod report;
