//! Factorization types of polynomials with prescribed coefficients over
//! finite fields: exact arithmetic, equidistribution sweeps, and the
//! checkers for when `f(T) + sT + b` behaves like a random permutation.

pub mod bipoly;
pub mod cli;
pub mod criteria;
pub mod error;
pub mod gf;
pub mod parse;
pub mod rng;
pub mod stats;
pub mod unipoly;

pub use bipoly::BiPoly;
pub use error::{Error, Result};
pub use gf::{Elem, Embedding, Field};
pub use unipoly::{Factorization, Partition, UniPoly};
