//! Exact computations with linear monads on P³.

pub mod arith;
pub mod cli;
pub mod error;
pub mod graded;
pub mod groebner;
pub mod linalg;
pub mod monad;
pub mod parse;
pub mod poly;
pub mod rank0;

pub use arith::{Field, NfElement, NumberField, Rational};
pub use poly::{Monomial, Polynomial, ProjectivePoint};

pub type QPolynomial = Polynomial<Rational>;
pub type NfPolynomial = Polynomial<NfElement>;
pub type QMatrix = linalg::Matrix<Rational>;
pub type QPolyMatrix = linalg::PolyMatrix<Rational>;
pub type NfPolyMatrix = linalg::PolyMatrix<NfElement>;
pub type QMonad = monad::MonadDatum<Rational>;
pub type NfMonad = monad::MonadDatum<NfElement>;
pub type QRank0 = rank0::Rank0Datum<Rational>;
pub type NfRank0 = rank0::Rank0Datum<NfElement>;
