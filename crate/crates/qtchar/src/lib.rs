//! Exact character theory for quantum affine algebras: q-characters, folded
//! and twisted t-characters, interpolating (q,t)-characters, monomial
//! crystals and Bethe Ansatz systems.

pub mod bae;
pub mod charalg;
pub mod corpus;
pub mod crystal;
pub mod error;
pub mod fold;
pub mod interp;
pub mod liealg;
pub mod poly;
pub mod ring;

pub use error::{Error, Result};
pub use liealg::{build_algebra, folding_data, AlgebraDatum, FoldingDatum};
