//! Regular cell complexes, their canonical triangulations, finite group
//! actions and quotients, symmetric products, and integral homology.

mod action;
mod cell;
mod delta;
mod homology;
mod kummer;
mod quotient;
mod simplicial;
mod surface;
mod symmetric;

pub use action::GroupAction;
pub use cell::{product_complex, CellComplex};
pub use delta::DeltaComplex;
pub use homology::{euler_characteristic, homology, homology_threads, smith_invariants, HomologyGroup, HomologyResult};
pub use kummer::{circle_kernel, kummer_kernel, torus_kernel, KernelComplex};
pub use quotient::{group_quotient, orbit_complex, QuotientOptions};
pub use simplicial::SimplicialComplex;
pub use surface::{classify_closed_surface, SurfaceClass};
pub use symmetric::{symmetric_product, SymmetricProduct};

use crate::skeleton::PolyhedralComplex;
use crate::{Error, Result};

/// Order complex of the face poset of a bounded polyhedral complex.
pub fn triangulate(p: &PolyhedralComplex) -> Result<SimplicialComplex> {
    if let Some(f) = p.faces.iter().find(|f| !f.is_bounded()) {
        return Err(Error::UnboundedFace(f.point.clone()));
    }
    Ok(p.bounded_cell_complex().0.order_complex())
}
