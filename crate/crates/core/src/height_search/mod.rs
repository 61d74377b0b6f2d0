//! Search for heights t where the phases t·log p_j sit near chosen targets,
//! through an integer lattice and exact LLL reduction, then Newton polishing
//! of nearby solutions of ζ(s) = 1 and ζ′(s) = 0.

mod extract;
mod lattice;
mod lll;
mod refine;

pub use extract::{diagnose_limits, extract_heights, phase_perturbation_bound, HeightCandidate};
pub use lattice::{basis_coordinates, build_lattice, gram_determinant, LatticeBasis, LatticeParams, DEFAULT_WEIGHTS_BASE};
pub use lll::{is_lll_reduced, lll_reduce, lll_reduce_default};
pub use refine::{
    paired_search, refine_root, refine_root_limited, verify_height, ExtremalPair, HeightVerification, PairedSearch, RefinedRoot, RootKind,
};
