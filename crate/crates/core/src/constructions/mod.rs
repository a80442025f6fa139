//! Explicit ETF constructions: harmonic frames from difference sets,
//! Steiner ETFs, redundancy-two frames from conference matrices, and real
//! frames from strongly regular graphs and graphical Hadamard matrices.

pub mod conference;
pub mod difference_sets;
pub mod graphs;
pub mod steiner;

pub use conference::{
    conference_to_etf, hadamard_matrix, is_hadamard, paley_conference, skew_conference, symmetric_from_skew,
    ConferenceMatrix, IntMatrix, Symmetry,
};
pub use difference_sets::{
    brute_force_difference_sets, harmonic_etf, is_difference_set, mcfarland_difference_set, paley_difference_set,
    singer_difference_set, DifferenceSet,
};
pub use graphs::{
    graphical_hadamard, graphical_hadamard_complement_etf, graphical_hadamard_etf, paley_graph, realizes,
    srg_to_real_etf, SrgParameters, MAX_KRONECKER_POWER,
};
pub use steiner::{
    steiner_etf, steiner_from_geometry, steiner_from_plane, steiner_pairs, steiner_triples, Geometry, SteinerSystem,
};
