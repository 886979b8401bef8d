//! Exact enumeration of integer compositions avoiding patterns by
//! containment.
//!
//! A pattern `b_1..b_a` occurs in a composition when some window of `a`
//! consecutive parts dominates it componentwise. Given a finite set of
//! equal-length forbidden patterns this crate computes, in exact rational
//! arithmetic:
//!
//! - the rational generating function of the avoiding compositions
//!   ([`cluster::avoider_gf`]), via a cluster/transfer-matrix state system;
//! - the multivariate generating function whose marker variables track how
//!   often each pattern occurs ([`cluster::joint_gf`]);
//! - series coefficients, asymptotic growth constants and amplitudes,
//!   occurrence moments and correlation, and a growth-constant ranking
//!   table (module [`analysis`]);
//! - brute-force enumeration oracles used to cross-check everything
//!   (module [`oracle`]).

pub mod analysis;
pub mod cluster;
pub mod composition;
pub mod linsys;
pub mod moments;
pub mod numeric;
pub mod oracle;
pub mod poly;
pub mod ratfun;
pub mod roots;
pub mod series;

pub use composition::{Composition, PatternSet};
pub use poly::{Poly, Var};
pub use ratfun::RatFun;
pub use series::SeriesPrefix;
