//! Plane sub-stochastic forms and random sums of them.

mod deviation;
mod matrix;
mod maurey;
mod sigma;
mod substochastic;

pub use deviation::{
    centered_deviation, rademacher_deviation, sampled_centered_deviation, CenteredDeviationExperiment, DeviationExperiment,
    DeviationRow, MeanKind,
};
pub use matrix::{graph_slice_matrix, matrix_deviation, MatrixDeviationExperiment, TailFrequency};
pub use maurey::{maurey_sparsify, net_size_log, MaureyReport, SparsifiedForm};
pub use sigma::sigma;
pub use substochastic::{cayley_slice, is_plane_substochastic, PlaneSubstochasticForm, SubstochasticReport};
