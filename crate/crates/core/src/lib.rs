//! Exact analysis of planar fields `Ẋ = λX + Q(X)` where `λ > 0` and `Q` is
//! a homogeneous polynomial map of odd degree.
//!
//! When `Q` is contracting (`⟨X, Q(X)⟩ < 0` off the origin) the field has a
//! globally attracting invariant circle. The crate decides contraction
//! exactly, classifies the dynamics on that circle and at infinity through
//! the symbol sequence of the phase form `𝓛Q`, realizes any even form as the
//! phase form of a contracting field, and draws phase portraits.

pub mod catalog;
pub mod circle;
pub mod contraction;
pub mod error;
pub mod form;
pub mod parser;
pub mod poly;
pub mod poly2;
pub mod portrait;
pub mod rational;
pub mod realize;
pub mod roots;
pub mod starfield;

pub use error::{Error, Result};
pub use form::{BinaryForm, ProjectiveRoot, ProjectiveRootSet, RootKind};
pub use poly::UniPoly;
pub use poly2::Poly2;
pub use rational::Rational;
pub use starfield::{Decomposition, Matrix2, PhaseData, StarField};
