//! Exact symbolic computation with double Ore extensions.

pub mod catalog;
pub mod dcv;
pub mod doubleore;
pub mod exactfield;
mod memo;
pub mod presring;
pub mod report;
pub mod ringmaps;

pub use doubleore::{build_extension, AlgebraError, DoubleOreAlgebra, Exponent, ExtElement};
pub use exactfield::{solve_linear, Field, FieldError, FieldKind, Fp, Scalar, ScalarMatrix};
pub use presring::{PresentedRing, RingElement, RingError, Word};
pub use ringmaps::{Col2, DeltaColumn, Endomorphism, MapError, Mat2, SigmaMatrix, TwistedDerivation};

pub type Q = num_rational::BigRational;
pub type F3 = Fp<3>;
pub type F5 = Fp<5>;
pub type F13 = Fp<13>;
