//! Exact construction, composition and certification of birational
//! diffeomorphisms of real rational surfaces.

pub mod catalog;
pub mod cli;
pub mod exactfield;
pub mod geom;
pub mod polyrat;
pub mod regulous;
pub mod twist;
