//! Combinatorial maps and local orientation-preserving symmetry-preserving
//! (lopsp) operations on them.
//!
//! The crate covers rotation-system maps, barycentric subdivisions, the lopsp
//! operation type with its cut-paths and patches, application of operations to
//! maps, classification of operations, the `rotsys v1` text format, and checks
//! of the connectivity results for operations on small corpora.

pub mod apply;
pub mod bary;
pub mod bridges;
pub mod canon;
pub mod catalog;
pub mod classify;
pub mod connectivity;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod lopsp;
pub mod map;
pub mod soup;
pub mod verify;

pub use error::{ApplyError, BaryError, MapError};
pub use apply::{apply_lopsp, ApplicationResult};
pub use bary::TypedMap;
pub use classify::{classify, ClassTag, OperationClass};
pub use io::{parse_rotsys, print_rotsys, Document, FormatError};
pub use lopsp::{CutPath, LopspOperation};
pub use map::{build_map, edge_of, inv, Dart, EmbeddedMap, FaceWalk};
