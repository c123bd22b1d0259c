//! Exact combinatorics of log-regular degenerations: fine saturated monoids,
//! Kato fans, skeletons, weight functions, and the topology of quotients and
//! symmetric products of the resulting complexes.

pub mod bipartite;
pub mod cone;
pub mod corpus;
pub mod error;
pub mod fan;
pub mod io;
pub mod lattice;
pub mod lp;
pub mod monoid;
pub mod skeleton;
pub mod subdivision;
pub mod topology;
pub mod weight;

pub use error::{Error, Result};
pub use fan::{FanPoint, KatoFan, ProductFan, StratifiedModel};
pub use io::Document;
pub use monoid::{AffineMonoid, MonoidHom};
pub use skeleton::{PolyhedralComplex, ProductSkeleton, SkeletonFace};
pub use topology::{CellComplex, DeltaComplex, GroupAction, HomologyResult, SimplicialComplex};
pub use weight::{LogDivisor, PLWeight};
