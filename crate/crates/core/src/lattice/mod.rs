//! Lattice-set geometry: hulls, exact point counting, classification
//! predicates, lattice diameter and lattice width.

mod classify;
mod diameter;
mod hull;
mod pick;
mod width;
mod witness;

pub use classify::{is_digital_convex, is_hv_convex, is_parallelogram_free, is_polyomino};
pub use diameter::{diameter_line, lattice_diameter, DiameterLine};
pub use hull::{convex_hull, convex_hull_of, lattice_points_in_convex, orient};
pub use pick::{count_lattice_points, PickDecomposition, PolygonError};
pub use width::{
    extent, extent_of, lattice_width, lattice_width_bounded, lattice_width_of, width_of_hull,
    width_search_bound, WidthCertificate,
};
pub use witness::{blaschke_witness, BlaschkeWitness, WitnessError};
