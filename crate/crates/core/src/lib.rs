//! Homology of simplicial networks through k-order spanning trees and
//! discrete Morse filtrations.
//!
//! The pipeline: build a [`SimplicialNetwork`], [`classify`] its simplices
//! into spanning trees, pairs and generators, turn that into a Morse
//! filtration with [`assign_morse`], then read off barcodes
//! ([`persistence_pairs`]) and representative cycles ([`solve_cavities`]).

pub mod boundary;
pub mod cavity;
pub mod complex;
pub mod error;
pub mod graph;
pub mod ingest;
pub mod linalg;
pub mod morse;
pub mod persistence;
pub mod shortening;
pub mod simplex;

pub use boundary::{apply_boundary, boundary_matrix, hodge_betti, hodge_laplacian, is_cycle, BoundaryMatrixBundle, Chain};
pub use cavity::{
    basis_to_json, basis_to_text, length_histogram, solve_basis, solve_cavities, solve_cavities_oriented,
    validate_basis, BasisReport, CavityBasis, RepresentativeCycle,
};
pub use complex::{clique_complex, euler_characteristic, explicit_complex, explicit_complex_labeled, SimplicialNetwork};
pub use error::{Error, Result};
pub use graph::Graph;
pub use ingest::{
    ba_generate, load_network, parse_edge_list, parse_simplex_list, save_network, vr_complex, BAConfig,
    DistanceFiltration, EdgeListOptions, PointCloud,
};
pub use morse::{
    assign_morse, betti_numbers, classify, parse_morse_text, spanning_tree, validate_morse, BettiVector, Cell,
    MorseFiltration, Promotion, Step, TreeDecomposition, ValidationReport,
};
pub use persistence::{export_barcode, order_from_morse, persistence_pairs, Bar, Barcode, FiltrationOrder};
pub use shortening::{minimal_one_cavities, move_log_text, shorten_basis, MoveKind, ShorteningMove};
pub use simplex::Simplex;
