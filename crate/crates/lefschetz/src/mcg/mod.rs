//! Mapping class groups of pages.

pub mod free;
pub mod genus1;
pub mod planar;

pub use genus1::{Genus1Factorization, HandlePage, NamedCurve};
pub use planar::{dehn_twist, mc_equal, product, Curve, Direction, Factorization, MappingClass, Page};
