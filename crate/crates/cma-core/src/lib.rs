//! Exact graded commutative algebra over prime fields.
//!
//! The crate is organized bottom-up:
//! - [`field`], [`monomial`], [`poly`]: sparse multivariate polynomial arithmetic
//!   over `F_p` with degrevlex term order and weighted gradings.
//! - [`ring`], [`hilbert`]: graded quotient rings `A = P/I` with cached Groebner
//!   data, Krull dimension and multiplicity from the initial ideal.
//! - [`freemod`], [`groebner`]: Buchberger's algorithm for submodules of twisted
//!   free modules, normal forms, syzygies of explicit generators, kernels and
//!   lifting of module maps.
//! - [`module`], [`complex`], [`resolution`], [`homalg`]: finitely presented
//!   graded modules and degree-zero maps, pruning, chain complexes, minimal free
//!   resolutions, Hom/Ext/tensor and pushouts.
//! - [`canonical`], [`approx`], [`buchweitz`], [`rescomplex`], [`invariants`],
//!   [`fundamental`]: canonical modules, maximal Cohen-Macaulay approximations
//!   and hulls (two independent constructions), representing complexes of
//!   canonical-module powers, and the derived numerical invariants.

pub mod approx;
pub mod buchweitz;
pub mod canonical;
pub mod complex;
pub mod error;
pub mod expr;
pub mod field;
pub mod freemod;
pub mod fundamental;
pub mod groebner;
pub mod hilbert;
pub mod homalg;
pub mod invariants;
pub mod module;
pub mod monomial;
pub mod poly;
pub mod rescomplex;
pub mod resolution;
pub mod ring;

pub use error::CaError;
pub use ring::{GradedRing, PolyRing};
