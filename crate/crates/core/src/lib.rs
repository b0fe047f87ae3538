//! Numerical toolkit for absolute matrix summability of series.
//!
//! The crate works with finite prefixes of infinite sequences: a horizon `N`
//! fixes indices `0..=N`. On top of that it provides
//!
//! - sequence plumbing and finite-horizon growth witnesses ([`seq`], [`witness`]),
//! - lower-triangular (normal) matrix transforms and their derived row-suffix
//!   and difference matrices ([`matrices`]),
//! - Cesaro, weighted-mean and general matrix summability indexes with a dyadic
//!   block convergence diagnostic ([`summability`]),
//! - hypothesis checkers for the factor/weight/moment conditions used by
//!   absolute-summability theorems ([`conditions`]),
//! - the four-term Abel decomposition of the factored transform ([`decomposition`]),
//! - generators for the built-in term/weight/factor families ([`families`]).
//!
//! Everything is generic over the scalar type through [`Scalar`] (`f32` or
//! `f64`); the `*64` aliases at the crate root pin the common `f64` case.

pub mod conditions;
pub mod decomposition;
mod error;
pub mod families;
pub mod matrices;
pub mod report;
mod scalar;
pub mod seq;
pub mod summability;
pub mod witness;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use conditions::{
    check_factor_conditions, check_lemma_conclusions, check_moment_condition,
    check_weight_conditions, x_non_decreasing, CheckParams, ConditionEntry, ConditionPreset,
    FactorSystem, HypothesisReport, MomentVariant,
};
pub use decomposition::{
    abel_split, abel_splits_all, factored_terms, term_index_partials, AbelSplit,
};
pub use matrices::{
    check_matrix_conditions, DerivedMatrices, MatrixConditionReport, MatrixKind, NormalMatrix,
};
pub use report::{CheckOutcome, Rollup, ViolationAt};
pub use seq::{RealSequence, SequenceOrigin, WeightSequence};
pub use summability::{
    cesaro_coeff, cesaro_index, cesaro_mean, dyadic_blocks, dyadic_diagnostic, matrix_index,
    riesz_mean, weighted_index, ConvergenceDiagnostic, IndexMethod, IndexSeries, TrendVerdict,
};
pub use witness::{
    almost_increasing_witness, growth_witness, AlmostIncreasingWitness, GrowthWitness,
    WitnessVerdict,
};

/// Concrete `f64` aliases for the common case.
pub type Seq64 = RealSequence<f64>;
pub type Weights64 = WeightSequence<f64>;
pub type Matrix64 = NormalMatrix<f64>;
pub type Derived64 = DerivedMatrices<f64>;
pub type Witness64 = GrowthWitness<f64>;
pub type Index64 = IndexSeries<f64>;
pub type System64 = FactorSystem<f64>;
pub type Split64 = AbelSplit<f64>;

/// Default tolerances and knobs shared by the library and the CLI.
pub mod defaults {
    /// Least-squares log-log slope above which a ratio trend counts as unbounded.
    pub const SLOPE_TOL: f64 = 0.05;
    /// First index included in growth-witness ratios.
    pub const START_INDEX: usize = 1;
    /// Dyadic block ratio threshold for the summable-trend verdict.
    pub const BLOCK_RHO: f64 = 0.95;
    /// Guarded tolerance for the Abel split residual.
    pub const RESIDUAL_TOL: f64 = 1e-9;
    /// Tail-maximum threshold for the beta -> 0 check.
    pub const BETA_TOL: f64 = 1e-3;
    /// Absolute slack for exact pointwise comparisons.
    pub const ABS_TOL: f64 = 1e-12;
    /// Largest accepted envelope/value ratio in the almost-increasing witness.
    pub const RATIO_CAP: f64 = 100.0;
    /// Default scenario horizon.
    pub const HORIZON: usize = 4096;
    /// Default index exponent k.
    pub const EXPONENT: f64 = 1.0;
    /// Smallest horizon on which the dyadic diagnostic is meaningful.
    pub const MIN_DIAGNOSTIC_HORIZON: usize = 128;
}
