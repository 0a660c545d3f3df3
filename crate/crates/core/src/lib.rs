//! Diagonal monomial ideals of a generic matrix: the ideals `J_{kl}` generated
//! by the diagonal monomials of maximal minors in a column window, their
//! products, colon ideals and linear quotients, Betti numbers, and a small
//! Gröbner engine for comparing initial ideals of products of determinantal
//! ideals with products of `J_{kl}`.
//!
//! Rows and columns are 1-based throughout. The term order is the
//! lexicographic order with `x[1,1] > x[1,2] > ... > x[m,n]`.

pub mod caps;
pub mod error;
pub mod exec;
pub mod field;
pub mod grid;
pub mod groebner;
pub mod ideal;
pub mod linalg;
pub mod linquot;
pub mod monomial;
pub mod poly;
pub mod replay;
pub mod resolution;
pub mod scan;
pub mod verify;

pub use caps::{Caps, Options};
pub use error::{Error, Result};
pub use exec::Execution;
pub use field::{Characteristic, Field, PrimeField, Rationals};
pub use grid::{
    diagonal_ideal, enumerate_diagonals, minor, ColumnSelection, GridShape, MinorPolynomial,
    TermOrder, VarIndex, Window, WindowChain,
};
pub use groebner::{buchberger, conjecture_check, ConjectureVerdict, GroebnerBasis};
pub use ideal::MonomialIdeal;
pub use linquot::{quotient_chain, verify_colon_lemma, QuotientChain};
pub use monomial::GridMonomial;
pub use poly::FieldPolynomial;
pub use resolution::{betti_table, mapping_cone_betti, regularity, BettiTable};
