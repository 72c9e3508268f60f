//! Moment-based entanglement detection and quantification.
//!
//! The crate covers three layers:
//!
//! * [`numerics`]: a small dense complex matrix type with Jacobi-based
//!   Hermitian eigensolver and SVD.
//! * [`states`], [`moments`], [`criteria`]: density matrices, the partial
//!   transpose / realignment index maps, trace moments, the characteristic
//!   polynomial coefficients obtained from them, and the entanglement tests
//!   built on top (two-moment realignment test, coefficient sign test, plus
//!   the exact PPT and realignment references).
//! * [`measures`], [`convexroof`]: concurrence and its moment lower bound,
//!   the reduced-state moment measure for bipartite and tripartite systems,
//!   and a stochastic convex-roof upper-bound estimator.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod convexroof;
pub mod criteria;
mod error;
pub mod measures;
pub mod moments;
pub mod numerics;
pub mod states;

pub use error::{Error, Invariant, Result};
pub use num_complex::Complex64;

pub use convexroof::{
    decompose, estimate_roof, random_isometry, EnsembleDecomposition, RoofConfig, RoofEstimate, RoofMeasure,
};
pub use criteria::{
    analyze, ppt_criterion, q_from_moments, q_statistic, realignment_criterion, theorem1_test, theorem2_test,
    Criterion, CriterionReport, RankSource, Verdict,
};
pub use measures::{
    concurrence_fill, concurrence_lower_bound, concurrence_pure, emmrs_direct, emmrs_pure, gme_concurrence_direct,
    gte_emmrs_direct, gte_emmrs_pure, moment_functional, wootters_concurrence, ConcurrenceBound, MeasureMode,
    MeasureValue, Side,
};
pub use moments::{
    newton_coefficients, pt_moments, rank_from_coefficients, rank_from_spectrum, realignment_moments,
    CoefficientVector, MomentKind, MomentVector,
};
pub use numerics::CMatrix;
pub use states::{
    family, partial_trace, partial_transpose, realign, schmidt_spectrum, validate, DensityMatrix, Family, PureState,
    SchmidtSpectrum, State,
};
