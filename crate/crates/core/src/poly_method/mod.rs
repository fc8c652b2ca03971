//! Polynomials over F_p and the rectangle construction built from them.
//!
//! Points of F_p^n are addressed by their lexicographic rank
//! ([`FpVec::index`](crate::field_group::FpVec::index)), and point sets are
//! bitsets over those ranks.

mod densecap;
mod interp;
mod lines;
mod poly;
mod sets;
mod space;

pub use densecap::{densecap_construct, line_system, DensecapOptions, DensecapResult};
pub use interp::{homogeneous_monomials, interpolate_homogeneous};
pub use lines::{count_all_lines, count_lines, ldlines_identity_check, lines_with_directions, LdLinesCheck, Rectangle};
pub use poly::FpPolynomial;
pub use sets::{
    chevalley_warning_check, dlsz_bound_check, level_set, set_points, set_size, values, zero_set, ChevalleyWarningReport,
    DlszReport, PointSet,
};
pub use space::{direction_set_from_json, direction_set_to_json};
