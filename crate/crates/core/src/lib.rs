//! Enumeration, counting and estimation of non-crossing paths and polygons
//! on planar point sets with exact integer coordinates.

pub mod cli;
pub mod constructions;
pub mod counting;
pub mod error;
pub mod generators;
pub mod geom;
pub mod io;
pub mod oracle;
pub mod params;
pub mod paths;
pub mod structure;
pub mod surround;
pub mod svg;

pub use error::{Error, Result};
pub use geom::{Point, PointSet};
pub use structure::{EnumOptions, EnumerationOutcome, Mode, PathSeq, Polygon, StructureClass};
