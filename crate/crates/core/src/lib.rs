//! Numerical toolkit for quantum-style models on ultrametric (p-adic)
//! state spaces: exact base-p arithmetic, grid discretizations of balls in
//! Q_p^d, the p-adic Fourier transform, the Vladimirov pseudo-differential
//! operator and its spectrum, Schrodinger-type evolution, projective
//! measurement streams, entanglement analysis, and monomial dynamics.

pub mod error;
pub mod padic;
pub mod grid;
pub mod transform;
pub mod operators;
pub mod evolution;
pub mod dynamics;
pub mod io;
pub mod verify;

pub use error::{PadiqError, Result};
