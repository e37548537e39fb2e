//! Exact divisor-class arithmetic on trigonal plane curves.
//!
//! The curves are the two standard trigonal families
//!
//! ```text
//! 0 = f(x, y) = −y³ + y²·T(x) + y·Q(x) + P(x),
//! ```
//!
//! of type (3, 3m+1) (genus 3m) and (3, 3m+2) (genus 3m+1), over an exact
//! coefficient field — a prime field F_p (p > 3) or the rationals. A divisor
//! class is represented by a pair of small polynomials: a monic `H` of degree
//! g together with a function `I = y·ay(x) + ax(x)` vanishing on the divisor
//! (degree-(g+1) divisors use the analogous pair `(F, G)`). The reduction
//! engine turns any point divisor of degree ≥ g into the reduced
//! representative of its class, which yields addition and inversion of
//! divisor classes. An independent linear-algebra oracle certifies every
//! reduction after the fact.
//!
//! Modules:
//! - [`field`]: exact fields (F_p, ℚ) behind the [`FieldElement`] trait.
//! - [`poly`]: dense univariate polynomials over those fields.
//! - [`linalg`]: exact kernel computation.
//! - [`curve`]: the curve families, weighted coefficients, monomial order.
//! - [`linfun`]: functions linear in `y` built from point divisors.
//! - [`divisor`]: point divisors, `(H, I)` / `(F, G)` representations.
//! - [`reduction`]: the four-step reduction loop and the group law.
//! - [`oracle`]: independent principality verification and a census utility.
//! - [`cli`]: the JSON command-line front end.

pub mod cli;
pub mod curve;
pub mod divisor;
pub mod error;
pub mod field;
pub mod linalg;
pub mod linfun;
pub mod oracle;
pub mod poly;
pub mod reduction;

pub use curve::{Curve, Family, Monomial, Point};
pub use divisor::{DivisorClass, FRep, FiberRemoval, HRep, PointDivisor};
pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec, Fp, Rat};
pub use linfun::{CurveFun, YLinFun};
pub use oracle::{CensusReport, EquivalenceVerdict};
pub use poly::Poly;
pub use reduction::{ReductionStep, ReductionTrace};

/// Concrete instantiations over the prime-field backend.
pub type PrimePoly = Poly<Fp>;
pub type PrimeCurve = Curve<Fp>;
pub type PrimePoint = Point<Fp>;
pub type PrimeDivisor = PointDivisor<Fp>;
pub type PrimeHRep = HRep<Fp>;
pub type PrimeFRep = FRep<Fp>;

/// Concrete instantiations over the rational backend.
pub type RationalPoly = Poly<Rat>;
pub type RationalCurve = Curve<Rat>;
pub type RationalPoint = Point<Rat>;
pub type RationalDivisor = PointDivisor<Rat>;
pub type RationalHRep = HRep<Rat>;
pub type RationalFRep = FRep<Rat>;
