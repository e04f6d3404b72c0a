//! Exact skein-module computations for framed links and tangles in handlebodies.

pub mod bracket;
pub mod cli;
pub mod diagram;
pub mod error;
pub mod homology;
pub mod jones;
pub mod kauffman;
pub mod laurent;
pub mod suites;

pub use bracket::{bracket_classical, bracket_resolve, state_sum_oracle, BracketElement, LaminarMulticurve};
pub use diagram::{Event, Over, SlicedDiagram};
pub use error::{Result, SkeinError};
pub use homology::{omega, HomClass, ManifoldHomologyData};
pub use jones::{jones_polynomial, FormalTangleSum};
pub use kauffman::{kappa, przytycki_class, KappaImage, PrzytyckiClass};
pub use laurent::{JonesPoly, LaurentPoly, ReducedScalar};
