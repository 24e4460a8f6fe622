//! Exact-arithmetic computational homology engine.
//!
//! This crate computes two homology theories attached to the four-dimensional
//! Sklyanin family and verifies both against closed-form Poincaré series,
//! degree by degree:
//!
//! * **Poisson homology** of the Sklyanin bracket on `K[x0..x3]` — the Jacobian
//!   structure cut out by the two quadric Casimirs — via the Brylinski boundary
//!   on polynomial differential forms ([`poisson`]).
//! * **Hochschild homology** of the noncommutative Sklyanin algebra, computed on
//!   its Koszul complex `K_m(A) = A ⊗ (A^!_m)^*` ([`ncalg`], [`hochschild`]).
//!
//! All arithmetic is exact over the rationals ([`linalg`]); homology dimensions
//! are integers and no floating point appears anywhere. The [`series`] module
//! holds the reference generating functions and the comparison machinery.
//!
//! With the default `parallel` feature the per-degree homology jobs fan out
//! over rayon; building with `--no-default-features` gives a purely sequential
//! engine with identical output.

pub mod error;
pub mod hochschild;
pub mod linalg;
pub mod ncalg;
pub mod par;
pub mod poisson;
pub mod poly;
pub mod series;
pub mod table;

pub use error::Error;
pub use linalg::{Rational, SparseMatrix, Subspace};

/// Convenience result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
