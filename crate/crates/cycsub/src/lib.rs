//! Cyclic subgroup graphs of finite groups.
//!
//! Builds finite groups from Cayley tables, permutation generators and the
//! standard small-group families; enumerates their cyclic subgroup posets;
//! counts Hasse-diagram edges both structurally and by the exact rational
//! sum over element orders; constructs order-divisibility bijections onto
//! the cyclic group of the same order; and scans small orders for where the
//! cyclic group minimizes the edge count.

pub mod bijection;
pub mod catalog;
pub mod error;
pub mod group;
pub mod harness;
pub mod lattice;
pub mod numtheory;
pub mod spec;

pub use bijection::{
    find_order_bijection, order_histogram, verify_order_bijection, BijectionOutcome,
    BijectionVerdict, OrderBijection, OrderHistogram,
};
pub use catalog::{groups_of_order, CatalogEntry, OrderCatalog, MAX_CATALOG_ORDER};
pub use error::{Error, Result};
pub use harness::{
    bijection_report, dot_graph, group_report, scan, verify_order, MinimalityReport,
    MinimalityVerdict, Parity, ScanFinding,
};
pub use group::{BuildOptions, FiniteGroup, DEFAULT_CLOSURE_BOUND};
pub use lattice::{
    coprime_product_edge_count, cyclic_poset, cyclic_subgroups, edge_count_formula,
    edge_count_hasse, hasse_cover_edges, CyclicPoset, CyclicSubgroup,
};
pub use numtheory::{cyclic_edge_count, factorize, omega_phi, ratio, Factorization, Rational};
pub use spec::GroupSpec;
