//! Exact-arithmetic construction of vector-valued Siegel modular forms of
//! degree two and level two from covariants of six binary linear forms.
//!
//! The pipeline: theta constants and theta gradients give box-truncated
//! Fourier expansions ([`series::FourierSeries`]); covariants of six generic
//! linear forms live in a sparse polynomial ring ([`poly::SparsePoly`],
//! [`covariant`]); the bridge map sends a covariant of degree d to a
//! meromorphic modular form by substituting theta gradients for the linear
//! forms and dividing by the d-th power of the product of the even theta
//! constants ([`nu`]). Valuations along the ten boundary components
//! ([`valuation`]), divisor-class bookkeeping ([`divisor`]) and the action of
//! the symmetric group on six letters ([`s6`]) complete the toolkit.

pub mod covariant;
pub mod divisor;
pub mod expr;
pub mod gauss;
pub mod linalg;
pub mod nu;
pub mod poly;
pub mod s6;
pub mod series;
pub mod theta;
pub mod valuation;

pub use gauss::GaussRat;
pub use poly::{Monomial, SparsePoly};
pub use series::{FourierSeries, Laurent, SeriesError};
