//! Exact symbolic engine for deformation-quantization star products and
//! their Borel-plane counterparts.
//!
//! * [`series`], [`poly`], [`text`]: exact rational series and polynomials
//!   with a shared text grammar.
//! * [`star`]: standard and Moyal star products, the Moyal commutator and the
//!   transition operator.
//! * [`borel`]: Borel transform, Borel-star products, Hadamard product and
//!   the `⊙_ij` pairing.
//! * [`integral_reps`]: exact termwise evaluation of the integral
//!   representations, used as independent oracles for [`borel`].
//! * [`poly_algebra`]: content, gcd, simple decomposition, resultants.
//! * [`locus`]: candidate singular varieties and membership tests.
//! * [`numeric`]: radius estimates, root finding and quadrature cross-checks.
//! * [`suites`]: the packaged verification suites behind `starborel verify`.

pub mod borel;
pub mod error;
pub mod families;
pub mod integral_reps;
pub mod laurent;
pub mod locus;
pub mod numeric;
pub mod poly;
pub mod poly_algebra;
pub mod random;
pub mod rational;
pub mod series;
pub mod star;
pub mod suites;
pub mod text;
pub mod vars;

pub use borel::BorelSeries;
pub use error::{Error, Result};
pub use poly::{Monomial, MultiPoly};
pub use rational::Rational;
pub use series::{FormalSeries, Truncation};
pub use star::StarKind;
pub use vars::VariableSet;
