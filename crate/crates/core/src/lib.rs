//! Core library: a term language for finitary operation signatures in
//! braided monoidal settings, exact linear algebra, evaluation into concrete
//! finite-dimensional algebras, and a span-saturation engine that computes
//! the dimensions of the spaces of multilinear maps the operations generate.

pub mod algebra;
pub mod combin;
pub mod error;
pub mod eval;
pub mod kits;
pub mod matrix;
pub mod parser;
pub mod poly;
pub mod saturate;
pub mod scalar;
pub mod signature;
pub mod span;
pub mod term;
pub mod words;

pub use algebra::{Braiding, FiniteAlgebra};
pub use error::{Error, Result};
pub use eval::{check_identity, evaluate, evaluate_poly, Evaluator};
pub use matrix::{Matrix, SparseVec};
pub use parser::{parse_polynomial, parse_term};
pub use poly::Polynomial;
pub use saturate::{
    codim, codim_table, find_identities, saturate, Codim, SaturationOptions, SaturationState,
};
pub use scalar::{FieldKind, Scalar};
pub use signature::Signature;
pub use span::SpanBasis;
pub use term::{CanonicalTerm, Term};
