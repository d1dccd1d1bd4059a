//! Perfect planar networks in a disk.

pub mod embed;
pub mod flags;
pub mod gen;
pub mod geom;
pub mod model;
pub mod path;
pub mod validate;

pub use geom::Point;
pub use model::{edges_off_paths, Color, Edge, Kind, Network, NetworkError, Role, Vertex};
pub use path::{closed_curve, concordance, decompose_path, enumerate_paths, path_sign, path_weight, Closure, Path, PathError};
pub use validate::{validate, Violation};
pub use flags::{
    assign_flag_variables, assign_flag_variables_with, gauge_transform, BracketSpec, FlagConvention, FLAG_CONVENTION,
};
