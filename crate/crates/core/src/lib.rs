//! Exact TRIP-Stern sequences for the 216 triangle partition maps.

pub mod algebra;
pub mod analysis;
pub mod cli;
pub mod error;
pub mod family;
pub mod geometry;
pub mod germ;
pub mod limits;
pub mod recurrence;
pub mod reference;
pub mod stern;

pub use algebra::{Mat3, Perm3, Scalar, Triple};
pub use error::{Error, Result};
pub use family::{all_maps, make_trip_map, RationalPoint, TripMap};
pub use limits::Limits;
pub use stern::{BinaryWord, Level};
