//! Relativistic velocity composition laws and a seeded checker for their
//! algebraic properties.
//!
//! Two binary operations on velocities are provided:
//!
//! * [`einstein::einstein_add`]: Lorentz–Einstein addition `a ⊕ b` on real
//!   subluminal velocities.
//! * [`recsym::rs_add`]: reciprocal-symmetric (RS) addition
//!   `a ⊞ b = (a + b + (i/c) a×b) / (1 + a·b/c²)` on complex 3-vectors, with a
//!   second route through the Pauli-quaternion product.
//!
//! [`lawlab`] samples velocity tuples and measures how far each algebraic law
//! (associativity, reciprocity, negation symmetry, ...) is from holding for
//! either operation, and shrinks violating tuples to small counterexamples.
//!
//! RS addition is also known as "reflection symmetric" addition; the two
//! names refer to the same operation.

pub mod algebra3;
pub mod einstein;
mod error;
pub mod lawlab;
pub mod recsym;

pub use algebra3::{CScalar, CVec3, LightSpeed, Velocity};
pub use error::CompositionError;
