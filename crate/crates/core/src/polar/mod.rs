//! Polar spaces as point-line geometries.

pub mod frame;
pub mod geometry;
pub mod space;
pub mod star;

pub use frame::{check_partial_frame, extend_frame, find_partial_frame, frame_span, FrameError, PartialFrame};
pub use geometry::{Geometry, GeometryError, SubspaceProfile};
pub use space::{PolarError, PolarSpace};
pub use star::{star_space, StarSpace};
