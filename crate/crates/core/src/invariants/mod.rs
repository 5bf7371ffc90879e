//! Exact graph invariants and class recognizers.
//!
//! Everything here is exact. Inputs beyond the documented limits are refused
//! with [`Error::LimitExceeded`](crate::Error::LimitExceeded) rather than
//! approximated.

pub(crate) mod bits;
pub mod chordal;
pub mod classes;
pub mod cover;
pub mod matching;

pub use chordal::{chordality, is_chordal, is_cochordal, Chordality};
pub use classes::{recognize_class, GraphClass, CLASS_VERTEX_LIMIT};
pub use cover::{
    benzaken_prefix_check, cochord_cover, cochord_cover_number, cochordal_edge_order, verify_cover, CochordalCover,
    CoverVerdict, PrefixCheck, COVER_EDGE_LIMIT, COVER_VERTEX_LIMIT,
};
pub use matching::{induced_matching_number, matching_number, min_maximal_matching, nu_gh};
