//! Stabbing pairwise-intersecting disks with four or five points in linear time.

pub mod bench;
pub mod error;
pub mod framing;
pub mod geom;
pub mod instances;
pub mod min_stabber;
pub mod numfmt;
pub mod report;
pub mod rng;
pub mod stabbing;
pub mod svg;
pub mod verifier;

pub use error::{Error, Result};
pub use geom::{Disk, Line, Point, Similarity, Tolerance};
pub use min_stabber::{evaluate_objective, smallest_intersecting_disk, MinStabResult};
