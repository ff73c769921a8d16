//! Exact computation of the infinitesimal variation of Hodge structure for
//! Calabi-Yau double octics branched over eight-plane arrangements in P^3.
//!
//! The crate builds the bigraded Jacobian ring of an arrangement, the Higgs
//! multiplication maps on its sign-change-invariant pieces, and the
//! characteristic-subvariety ideals in nine variables, then analyzes those
//! ideals with an exact Groebner engine (Hilbert series, elimination,
//! radical membership, saturation) and finite-field factorization probes.
//! Everything is exact: rationals with arbitrary-precision integers, or
//! prime fields with explicitly chosen moduli cross-checked in pairs.

pub mod arrangement;
pub mod error;
pub mod factor;
pub mod field;
pub mod groebner;
pub mod ivhs;
pub mod matrix;
pub mod pipeline;
pub mod poly;

pub use error::{Error, Result};
