//! Finite incidence geometry toolkit: liners (pairwise line-closed point/line
//! systems), flat hulls and ranks, the exchange/ranked/regularity/modularity
//! axiom hierarchy, parallelity profiles, counting identities, and the Steiner
//! midpoint algebra, plus a gallery of classical example geometries.

pub mod axioms;
pub mod counting;
pub mod error;
pub mod field;
pub mod gallery;
pub mod hull;
pub mod model;
pub mod parallels;
pub mod pointset;
pub mod report;
pub mod steiner;

pub use error::{LinerError, Result};
pub use gallery::{gallery_catalog, gallery_entry, Expected, GalleryEntry};
pub use hull::{
    enumerate_flats, flat_hull, is_flat, is_independent, maximal_independent_subset, rank,
    relative_rank, Flat, FlatLattice, RankBudget,
};
pub use model::{build_liner, liner_from_json, liner_to_json, Liner, SublinerMap};
pub use pointset::PointSet;
pub use report::{check_axiom, evaluate_flag, generate_report, Report, ReportOptions, REPORT_BATTERY};
