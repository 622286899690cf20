//! Exact verification of eigenvalue-1 (unisingularity) claims for Specht
//! modules of symmetric groups and for permutation groups embedded in
//! `Sp_2g(F_2)` through their action on roots.
//!
//! The crate is organised bottom-up:
//!
//! * [`perm`]: permutations, partitions, closures and named groups
//! * [`exact`]: big-integer matrices, determinants, characteristic polynomials
//! * [`gf2`]: bit-packed GF(2) linear algebra and a MeatAxe
//! * [`specht`]: tableaux, Garnir straightening, Specht representation matrices
//! * [`symplectic`]: the permutation to `Sp_2g(F_2)` embedding
//! * [`audit`]: the eigenvalue-1 audits and the subgroup census
//! * [`arith`]: the degree-9 family, discriminants, factorization mod p, point counts
//! * [`report`] / [`commands`]: run reports and the subcommand drivers

pub mod arith;
pub mod audit;
pub mod commands;
pub mod error;
pub mod exact;
pub mod gf2;
pub mod perm;
pub mod report;
pub mod specht;
pub mod symplectic;

pub use error::{Error, Result};
