//! Window-truncated doubly graded Lie algebras realized inside `sl_N` loop
//! algebras.

mod algebra;
mod element;
pub mod examples;
mod form;
mod twisted;

pub use algebra::{Degree, GradedAlgebra, Weight};
pub use element::{graded_form, AlgebraElement, Quadruple, Term};
pub use form::{check_graded_form, random_element, FormReport};
pub use twisted::{IdentityCheck, Involution, Twist, TwistedLoopPair};
