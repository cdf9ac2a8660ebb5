//! Exact arithmetic for Jacobi diagrams, Vogel's ring and Lie algebra
//! weight systems.

pub mod canon;
pub mod diagram;
pub mod eval;
pub mod error;
pub mod rational;
mod wiring;

pub use canon::{canonicalize, SignedCanonical};
pub use diagram::{Diagram, Leg, RawDiagram};
pub use error::{Error, Result};
pub use rational::Rational;
pub mod prop;
pub mod lambda;
pub mod lie;
pub mod linalg;
pub mod quotient;
pub mod report;
pub mod rw;
pub mod suites;
pub mod sum;
pub mod symfunc;
pub use sum::DiagramSum;
