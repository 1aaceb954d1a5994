//! Exact certification of copositivity, minimal zeros and extremality for
//! symmetric rational matrices, with a census of unit-diagonal `{-1,0,1}`
//! matrices.
//!
//! All arithmetic is exact; there is no floating-point path.

pub mod census;
pub mod copositivity;
pub mod error;
pub mod extremality;
pub mod graph;
pub mod io;
pub mod linalg;
mod lp;
pub mod matrices;
pub mod scaling;
pub mod support;
pub mod zeros;

pub use census::{
    analyze_candidate, canonical_form, census_totals, iterate_candidates, run_census,
    verify_lemma_2to1, verify_main_theorem, Candidate, CensusOptions, CensusRecord,
    CensusTotals, LemmaReport, MainTheoremReport,
};
pub use copositivity::{
    copositive_quick, is_copositive, min_on_simplex, subdivision_falsifier, CopositivityVerdict,
};
pub use error::{Error, Result};
pub use extremality::{
    build_system, certificate_from_zeros, extremality_certificate, ExtremalityCertificate,
    ExtremalitySystem,
};
pub use graph::{
    build_graph, component_analysis, dimension_via_graph, reconstruct_pattern, ComponentReport,
    EntryVertex, StructureGraph,
};
pub use linalg::{
    eval_quadratic, kernel_basis, rank_nullity, solve_affine, strictly_positive_point,
    AffineSolutionSet, RatMatrix, Rational, SymMatrix, Vector,
};
pub use scaling::{
    condition_ii_scaling_test, extract_pattern, scale, DiagonalScaling, ScalingDecomposition,
};
pub use support::Support;
pub use zeros::{minimal_zeros, pair_zero, zeros_with_support, MinimalZeroList, Precondition, Zero};
