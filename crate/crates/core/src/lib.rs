//! Executable finite domain theory.
//!
//! Finite predomains and their round ideal completions, c-space
//! topologies, preCuntz monoids, lower semicontinuous function spaces with
//! the envelope operator, dual cones of monoid homomorphisms, and a finite
//! commutative model of the positive cone `C₀(X)₊` with its traces. All
//! arithmetic is exact.

pub mod completion;
pub mod cstar;
pub mod cuntz;
pub mod dual;
pub mod enumerate;
pub mod error;
pub mod ext;
pub mod fixtures;
pub mod funcspace;
pub mod order;
pub mod predomain;
pub mod topology;

pub use completion::{Completion, RoundIdeal};
pub use cuntz::{MonoidTable, PreCuntz};
pub use error::{Error, Result};
pub use ext::{ExtRational, Rational, ScalarMode};
pub use funcspace::{FnOverP, FunctionSpace};
pub use order::{Carrier, ElemSet, Relation};
pub use predomain::Predomain;
pub use topology::FiniteTopology;
