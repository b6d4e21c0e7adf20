//! Distinguishing numbers, motion, and orbit equivalence for permutation
//! group actions: finite actions given by generators, and lazily enumerated
//! countable actions queried through finite windows.

pub mod chain;
pub mod corpus;
pub mod distinguish;
pub mod ex41;
pub mod graph;
pub mod error;
pub mod gl;
pub mod orbit_equiv;
pub mod perm;
pub mod stream;

pub use distinguish::{
    distinguishing_number, motion, motion_lemma_certify, verify_coloring, Coloring, MotionReport,
    Verdict,
};
pub use error::{Error, Result};
pub use perm::{
    enumerate_elements, orbit, parse_group_file, parse_permutation, point_stabilizer,
    setwise_stabilizer_order, FiniteAction, Permutation, DEFAULT_CAP,
};
