//! Analysis of Boolean and vectorial Boolean functions with a focus on APN
//! permutations in even dimension.
//!
//! * [`boolfn`]: truth tables, ANF, Walsh spectra, derivatives, linear
//!   structures and bent / partially bent classification.
//! * [`vectfn`]: S-boxes, difference distribution tables, (weak) APN tests,
//!   component statistics and EA transforms.
//! * [`constructions`]: finite fields, power maps, the trace-based APN
//!   families and bundled fixtures.
//! * [`search`]: exhaustive backtracking search for APN permutations.
//! * [`suites`]: campaigns that check the structural statements about APN
//!   functions computationally.
//!
//! Bit convention: variable `x_{j+1}` is bit `j` of an index, for truth
//! tables, ANF masks, directions and component masks alike.

pub mod boolfn;
pub mod constructions;
mod error;
pub mod linalg;
pub mod search;
pub mod suites;
pub mod vectfn;

pub use boolfn::{affine_transform, Anf, BoolFn, LinearStructureSpace, QuadCanonicalForm, QuadKind, ShapeProfile, WalshSpectrum};
pub use constructions::{family_bc1, family_bc2, load_fixture, open_butterfly, power_map, GfContext};
pub use error::{Error, Result};
pub use linalg::{AffineMap, BitMatrix};
pub use search::{search_apn_permutation, InputOrder, Reductions, SearchConfig, SearchOutcome, SearchResult, SearchStats};
pub use suites::{ScanReport, TheoremCheck, TheoremReport, Verdict};
pub use vectfn::{ea_transform, ComponentProfile, Ddt, DegreeStats, StructuralFlags, VectFn, WeakUniformity};

/// Worker count from `VBF_WORKERS`, defaulting to the available parallelism.
pub fn default_workers() -> usize {
    std::env::var("VBF_WORKERS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}
