//! Torsion functors, assassins and fairness predicates for cyclic modules
//! over quotients of polynomial rings by monomial rewrite systems.

pub mod crosscheck;
pub mod element;
pub mod error;
pub mod family;
pub mod harness;
pub mod ideal;
pub mod linalg;
pub mod monoideal;
pub mod monomial;
pub mod oracle;
pub mod pattern;
pub mod registry;
pub mod ring;
pub mod report;
pub mod spectrum;
pub mod torsion;

pub use element::Element;
pub use error::{Error, Result};
pub use ideal::{Bounds, Ideal, MembershipAnswer, Mode, Saturation, Verdict};
pub use monomial::{Monomial, VarSet, MAX_VARS};
pub use ring::{Coeff, RewriteRule, Rhs, Ring, RingPresentation};
pub use spectrum::{MonomialPrime, PrimeSet};
