//! Standard monomial theory for the invariants of `SL_n` and `GL_n` acting on
//! `m` vectors and `q` covectors.
//!
//! The crate builds the generator poset `H` of the invariant algebra `S`
//! (pairings minors `p(A,B)`, vector minors `u(I)`, covector minors `xi(J)`),
//! its completion `D` to a distributive lattice, the quadratic straightening
//! relations, and independent oracles that confirm the basis, presentation
//! and degeneration claims in exact rational arithmetic.
//!
//! Module map:
//!
//! - [`poset`]: index tuples, the orders on `H` and `D`, lattice coordinates,
//!   join/meet, the minor correspondences, maximal chains.
//! - [`polyring`]: sparse polynomials over `Q` in `u_ij`, `xi_kl`, minors and
//!   the infinitesimal `gl_n` action.
//! - [`generators`]: enumeration of `H`, standardness, standard monomials and
//!   content.
//! - [`straighten`]: straightening relations, weights, rewriting and the
//!   presentation check.
//! - [`hibi`]: finite distributive lattices and their binomial algebras.
//! - [`oracle`]: invariant dimensions from Lie-algebra kernels and exact ranks.
//! - [`verify`]: the batch verification suites used by the CLI.

pub mod error;
pub mod generators;
pub mod hibi;
pub mod linalg;
pub mod oracle;
pub mod params;
pub mod polyring;
pub mod poset;
pub mod straighten;
pub mod verify;

pub use error::{Error, Result};
pub use generators::{Content, DegreeSpec, GenMonomial, Mode};
pub use hibi::FiniteLattice;
pub use linalg::RationalMatrix;
pub use params::Params;
pub use polyring::{Bidegree, SparsePoly, Variable};
pub use poset::{ChainVector, DElement, HElement, IndexTuple};
pub use straighten::{Relation, RelationTable, Strategy, Weight};

/// Exact rational coefficient type used throughout.
pub type Rational = num_rational::BigRational;
