//! Cochains on the simplex over GF(2): coboundaries, minimality, cofilling
//! bounds, pagodas and planar intersection cochains.

pub mod cochain;
pub mod constructions;
pub mod error;
pub mod geometry;
pub mod golden;
pub mod inequalities;
pub mod minimality;
pub mod numeric;
pub mod pagoda;
pub mod profile;

pub use cochain::{Bits, Cochain, CochainJson, GroundSet, NormalizedSize};
pub use error::{Error, Result};
pub use minimality::{is_minimal, is_minimal_exact, minimize_in_class, Method, Verdict};
