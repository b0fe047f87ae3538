//! Hypothesis checkers for the factor, weight, moment and conclusion
//! conditions of the absolute-summability theorems.
//!
//! Most conditions are `O(...)` claims and become [`GrowthWitness`]es; a few
//! are exact pointwise inequalities ([`CheckOutcome`]) or series-convergence
//! claims (dyadic [`ConvergenceDiagnostic`]). Every checker returns a
//! [`HypothesisReport`] keyed by short condition ids (see [`condition_id`])
//! so reports compose across checkers.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::report::{CheckOutcome, Rollup, ViolationAt};
use crate::scalar::Scalar;
use crate::seq::{RealSequence, SequenceOrigin, WeightSequence};
use crate::summability::{dyadic_diagnostic, ConvergenceDiagnostic};
use crate::witness::{growth_witness, least_squares_slope, GrowthWitness};

/// Identifiers for every condition the checkers can report.
pub mod condition_id {
    /// `|lambda_n - lambda_{n+1}| <= beta_n`.
    pub const DIFF_BOUND: &str = "C10";
    /// `beta_n -> 0`.
    pub const BETA_VANISHES: &str = "C11";
    /// `sum n |beta_n - beta_{n+1}| X_n = O(1)`.
    pub const BETA_VARIATION: &str = "C12";
    /// `|lambda_n| X_n = O(1)`.
    pub const LAMBDA_X_BOUNDED: &str = "C13";
    /// `sum_{n<=m} |s_n|^k / n = O(X_m)`.
    pub const MOMENT_PLAIN: &str = "C14";
    /// `P_n = O(n p_n)`.
    pub const WEIGHT_RATIO: &str = "C15";
    /// `P_n (p_n - p_{n+1}) = O(p_n p_{n+1})`.
    pub const WEIGHT_DIFF: &str = "C16";
    /// `sum_{n<=m} |s_n|^k / (n X_n^{k-1}) = O(X_m)`.
    pub const MOMENT_SCALED: &str = "C17";
    /// `n X_n beta_n = O(1)`.
    pub const NXB_BOUNDED: &str = "L26";
    /// `sum beta_n X_n < infinity`.
    pub const BX_SUMMABLE: &str = "L27";
    /// `P_n/(n p_n) - P_{n+1}/((n+1) p_{n+1}) = O(1/n)`.
    pub const WEIGHT_SMOOTH: &str = "L32";
    /// `lambda_n = O(1)`.
    pub const LAMBDA_BOUNDED: &str = "R1";
    /// `lambda_n - lambda_{n+1} = O(1/n)`.
    pub const LAMBDA_DIFF_DECAY: &str = "R2";
    /// `X` nondecreasing, exactly.
    pub const X_NON_DECREASING: &str = "XND";
    /// `X` almost increasing (sandwiched by a nondecreasing envelope).
    pub const X_ALMOST_INCREASING: &str = "XAI";
    /// All matrix entries nonnegative.
    pub const MATRIX_NONNEGATIVE: &str = "MPOS";
    /// `abar(n,0) = 1`.
    pub const MATRIX_UNIT_COLUMN: &str = "M22";
    /// Matrix columns nonincreasing in `n`.
    pub const MATRIX_COLUMN_MONOTONE: &str = "M23";
    /// `a(n,n) = O(p_n/P_n)`.
    pub const MATRIX_DIAGONAL_RATIO: &str = "M24";
    /// `sum_{v=1..n-1} a(v,v) ahat(n,v+1) = O(a(n,n))`.
    pub const MATRIX_DIAGONAL_DOMINATION: &str = "M25";
}

/// Shared tolerances and windowing knobs for all checkers.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckParams<T> {
    /// Log-log tail slope above which a witness reads unbounded.
    pub slope_tol: T,
    /// Slack for exact pointwise comparisons.
    pub abs_tol: T,
    /// Tail maximum below which `beta -> 0` is accepted.
    pub beta_tol: T,
    /// Dyadic block ratio threshold.
    pub block_rho: T,
    /// Cap on the almost-increasing envelope ratio.
    pub ratio_cap: T,
    /// First index growth witnesses look at.
    pub start_index: usize,
}

impl<T: Scalar> Default for CheckParams<T> {
    fn default() -> Self {
        CheckParams {
            slope_tol: T::from_config(crate::defaults::SLOPE_TOL),
            abs_tol: T::from_config(crate::defaults::ABS_TOL),
            beta_tol: T::from_config(crate::defaults::BETA_TOL),
            block_rho: T::from_config(crate::defaults::BLOCK_RHO),
            ratio_cap: T::from_config(crate::defaults::RATIO_CAP),
            start_index: crate::defaults::START_INDEX,
        }
    }
}

/// One checked condition: a growth witness, an exact check, or a convergence
/// trend.
#[derive(Debug, Clone, PartialEq)]
pub enum ConditionEntry<T> {
    Witness(GrowthWitness<T>),
    Check(CheckOutcome),
    Trend(ConvergenceDiagnostic<T>),
}

impl<T: Scalar> ConditionEntry<T> {
    pub fn rollup(&self) -> Rollup {
        match self {
            ConditionEntry::Witness(w) => w.rollup(),
            ConditionEntry::Check(c) => c.rollup(),
            ConditionEntry::Trend(t) => t.rollup(),
        }
    }
}

/// Conditions keyed by id, with a fail-dominant overall verdict.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct HypothesisReport<T> {
    entries: BTreeMap<String, ConditionEntry<T>>,
}

impl<T: Scalar> HypothesisReport<T> {
    pub fn new() -> Self {
        HypothesisReport {
            entries: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, id: &str, entry: ConditionEntry<T>) {
        self.entries.insert(id.to_string(), entry);
    }

    pub fn get(&self, id: &str) -> Option<&ConditionEntry<T>> {
        self.entries.get(id)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &ConditionEntry<T>)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Moves all entries of `other` into `self`.
    pub fn absorb(&mut self, other: HypothesisReport<T>) {
        self.entries.extend(other.entries);
    }

    pub fn overall(&self) -> Rollup {
        Rollup::combine_all(self.entries.values().map(|e| e.rollup()))
    }

    /// Overall verdict over a subset of ids; missing ids count inconclusive.
    pub fn overall_of(&self, ids: &[&str]) -> Rollup {
        Rollup::combine_all(ids.iter().map(|id| {
            self.entries
                .get(*id)
                .map(|e| e.rollup())
                .unwrap_or(Rollup::Inconclusive)
        }))
    }
}

/// The factor data `(X, lambda, beta)` with weights and exponent, horizon
/// aligned.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorSystem<T> {
    x: RealSequence<T>,
    lambda: RealSequence<T>,
    beta: RealSequence<T>,
    weights: WeightSequence<T>,
    k: T,
    auto_beta: bool,
}

impl<T: Scalar> FactorSystem<T> {
    /// Builds a system from explicit `beta`. All four sequences must share a
    /// horizon; `X` must be strictly positive, `beta` nonnegative, `k >= 1`.
    pub fn new(
        x: RealSequence<T>,
        lambda: RealSequence<T>,
        beta: RealSequence<T>,
        weights: WeightSequence<T>,
        k: T,
    ) -> Result<Self> {
        Self::validated(x, lambda, beta, weights, k, false)
    }

    /// Builds a system with `beta_n = |lambda_n - lambda_{n+1}|`, the
    /// smallest admissible choice. Consumes one index: the result lives on
    /// horizon `N - 1`.
    pub fn with_auto_beta(
        x: RealSequence<T>,
        lambda: RealSequence<T>,
        weights: WeightSequence<T>,
        k: T,
    ) -> Result<Self> {
        let beta = lambda.forward_diff()?.abs();
        let cut = beta.horizon();
        Self::validated(
            x.truncated(cut.min(x.horizon()))?,
            lambda.truncated(cut.min(lambda.horizon()))?,
            beta,
            weights.truncated(cut.min(weights.horizon()))?,
            k,
            true,
        )
    }

    fn validated(
        x: RealSequence<T>,
        lambda: RealSequence<T>,
        beta: RealSequence<T>,
        weights: WeightSequence<T>,
        k: T,
        auto_beta: bool,
    ) -> Result<Self> {
        let n = x.horizon();
        for other in [lambda.horizon(), beta.horizon(), weights.horizon()] {
            if other != n {
                return Err(Error::HorizonMismatch { left: n, right: other });
            }
        }
        for (i, &v) in x.values().iter().enumerate() {
            if v <= T::zero() {
                return Err(Error::NonPositive {
                    index: i,
                    value: v.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        for (i, &v) in beta.values().iter().enumerate() {
            if v < T::zero() {
                return Err(Error::Negative {
                    index: i,
                    value: v.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        if !k.is_finite() || k < T::one() {
            return Err(Error::InvalidExponent(k.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(FactorSystem {
            x,
            lambda,
            beta,
            weights,
            k,
            auto_beta,
        })
    }

    pub fn x(&self) -> &RealSequence<T> {
        &self.x
    }

    pub fn lambda(&self) -> &RealSequence<T> {
        &self.lambda
    }

    pub fn beta(&self) -> &RealSequence<T> {
        &self.beta
    }

    pub fn weights(&self) -> &WeightSequence<T> {
        &self.weights
    }

    pub fn k(&self) -> T {
        self.k
    }

    pub fn auto_beta(&self) -> bool {
        self.auto_beta
    }

    pub fn horizon(&self) -> usize {
        self.x.horizon()
    }
}

fn ones<T: Scalar>(horizon: usize) -> RealSequence<T> {
    RealSequence::from_fn(horizon, SequenceOrigin::Tabulated, |_| T::one())
        .expect("constant sequence is finite")
}

/// `1/n` with a placeholder at index 0, for witnesses starting at 1.
fn reciprocal_index<T: Scalar>(horizon: usize) -> RealSequence<T> {
    RealSequence::from_fn(horizon, SequenceOrigin::Tabulated, |n| {
        if n == 0 {
            T::one()
        } else {
            T::one() / T::from_index(n)
        }
    })
    .expect("reciprocal sequence is finite")
}

/// Checks the factor conditions: difference bound (C10), vanishing beta
/// (C11), bounded weighted beta variation (C12), and bounded `lambda X`
/// (C13).
pub fn check_factor_conditions<T: Scalar>(
    fs: &FactorSystem<T>,
    params: &CheckParams<T>,
) -> Result<HypothesisReport<T>> {
    let n_max = fs.horizon();
    if n_max < 3 {
        return Err(Error::HorizonTooSmall { need: 3, got: n_max });
    }
    let mut report = HypothesisReport::new();

    let mut diff_bound = CheckOutcome::passed();
    for n in 0..n_max {
        let step = (fs.lambda.at(n) - fs.lambda.at(n + 1)).abs();
        if step > fs.beta.at(n) + params.abs_tol {
            diff_bound = CheckOutcome::failed_at(ViolationAt::Index(n));
            break;
        }
    }
    report.insert(condition_id::DIFF_BOUND, ConditionEntry::Check(diff_bound));

    let tail_lo = n_max - n_max / 4;
    let mut tail_max = T::zero();
    let mut tail_argmax = tail_lo;
    let mut points = Vec::with_capacity(n_max - tail_lo + 1);
    for n in tail_lo..=n_max {
        let b = fs.beta.at(n);
        if b > tail_max {
            tail_max = b;
            tail_argmax = n;
        }
        points.push((T::from_index(n), b));
    }
    let beta_slope = least_squares_slope(&points);
    let vanishes = tail_max < params.beta_tol && beta_slope <= params.abs_tol;
    let entry = if vanishes {
        CheckOutcome::passed()
    } else {
        CheckOutcome::failed_at(ViolationAt::Index(tail_argmax))
    };
    report.insert(condition_id::BETA_VANISHES, ConditionEntry::Check(entry));

    let mut variation = Vec::with_capacity(n_max);
    variation.push(T::zero());
    let mut acc = T::zero();
    for n in 1..n_max {
        let dbeta = (fs.beta.at(n) - fs.beta.at(n + 1)).abs();
        acc += T::from_index(n) * dbeta * fs.x.at(n);
        variation.push(acc);
    }
    let variation = RealSequence::new(variation, SequenceOrigin::Tabulated)?;
    let w12 = growth_witness(
        &variation,
        &ones(n_max - 1),
        params.start_index.max(1),
        params.slope_tol,
    )?;
    report.insert(condition_id::BETA_VARIATION, ConditionEntry::Witness(w12));

    let lambda_x = RealSequence::from_fn(n_max, SequenceOrigin::Tabulated, |n| {
        fs.lambda.at(n).abs() * fs.x.at(n)
    })?;
    let w13 = growth_witness(&lambda_x, &ones(n_max), params.start_index, params.slope_tol)?;
    report.insert(condition_id::LAMBDA_X_BOUNDED, ConditionEntry::Witness(w13));

    Ok(report)
}

/// Which moment sum a theorem asks for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentVariant {
    /// `sum |s_n|^k / n = O(X_m)`.
    Plain,
    /// `sum |s_n|^k / (n X_n^{k-1}) = O(X_m)`.
    Scaled,
}

impl MomentVariant {
    pub fn id(self) -> &'static str {
        match self {
            MomentVariant::Plain => condition_id::MOMENT_PLAIN,
            MomentVariant::Scaled => condition_id::MOMENT_SCALED,
        }
    }
}

/// Checks a moment condition for the partial sums `s` against `X`.
pub fn check_moment_condition<T: Scalar>(
    s: &RealSequence<T>,
    x: &RealSequence<T>,
    k: T,
    variant: MomentVariant,
    params: &CheckParams<T>,
) -> Result<GrowthWitness<T>> {
    if !k.is_finite() || k < T::one() {
        return Err(Error::InvalidExponent(k.to_f64().unwrap_or(f64::NAN)));
    }
    let n_max = s.horizon().min(x.horizon());
    if n_max < 1 {
        return Err(Error::HorizonTooSmall { need: 1, got: n_max });
    }
    for n in 0..=n_max {
        if x.at(n) <= T::zero() {
            return Err(Error::NonPositive {
                index: n,
                value: x.at(n).to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    let km1 = k - T::one();
    let mut sums = Vec::with_capacity(n_max + 1);
    sums.push(T::zero());
    let mut acc = T::zero();
    for n in 1..=n_max {
        let term = match variant {
            MomentVariant::Plain => s.at(n).abs().powf(k) / T::from_index(n),
            MomentVariant::Scaled => {
                s.at(n).abs().powf(k) / (T::from_index(n) * x.at(n).powf(km1))
            }
        };
        acc += term;
        sums.push(acc);
    }
    let sums = RealSequence::new(sums, SequenceOrigin::Tabulated)?;
    let x_cut = x.truncated(n_max)?;
    growth_witness(&sums, &x_cut, params.start_index.max(1), params.slope_tol)
}

/// Checks the weight conditions: `P_n = O(n p_n)` (C15) and the difference
/// bound `P_n (p_n - p_{n+1}) = O(p_n p_{n+1})` (C16).
pub fn check_weight_conditions<T: Scalar>(
    weights: &WeightSequence<T>,
    params: &CheckParams<T>,
) -> Result<HypothesisReport<T>> {
    let n_max = weights.horizon();
    if n_max < 2 {
        return Err(Error::HorizonTooSmall { need: 2, got: n_max });
    }
    let mut report = HypothesisReport::new();

    let np = RealSequence::from_fn(n_max, SequenceOrigin::Tabulated, |n| {
        if n == 0 {
            T::one()
        } else {
            T::from_index(n) * weights.weight(n)
        }
    })?;
    let w15 = growth_witness(
        weights.partials(),
        &np,
        params.start_index.max(1),
        params.slope_tol,
    )?;
    report.insert(condition_id::WEIGHT_RATIO, ConditionEntry::Witness(w15));

    let num = RealSequence::from_fn(n_max - 1, SequenceOrigin::Tabulated, |n| {
        weights.partial(n) * (weights.weight(n) - weights.weight(n + 1))
    })?;
    let den = RealSequence::from_fn(n_max - 1, SequenceOrigin::Tabulated, |n| {
        weights.weight(n) * weights.weight(n + 1)
    })?;
    let w16 = growth_witness(&num, &den, params.start_index.max(1), params.slope_tol)?;
    report.insert(condition_id::WEIGHT_DIFF, ConditionEntry::Witness(w16));

    Ok(report)
}

/// Checks the conclusion-side conditions: `n X_n beta_n = O(1)` (L26),
/// `sum beta_n X_n` convergent (L27), the weight smoothness bound (L32), and
/// the factor decay pair `lambda_n = O(1)` (R1), `Delta lambda_n = O(1/n)`
/// (R2).
pub fn check_lemma_conclusions<T: Scalar>(
    fs: &FactorSystem<T>,
    params: &CheckParams<T>,
) -> Result<HypothesisReport<T>> {
    let n_max = fs.horizon();
    if n_max < 3 {
        return Err(Error::HorizonTooSmall { need: 3, got: n_max });
    }
    let mut report = HypothesisReport::new();

    let nxb = RealSequence::from_fn(n_max, SequenceOrigin::Tabulated, |n| {
        T::from_index(n) * fs.x.at(n) * fs.beta.at(n)
    })?;
    let w26 = growth_witness(&nxb, &ones(n_max), params.start_index, params.slope_tol)?;
    report.insert(condition_id::NXB_BOUNDED, ConditionEntry::Witness(w26));

    let mut bx = Vec::with_capacity(n_max + 1);
    bx.push(T::zero());
    let mut acc = T::zero();
    for n in 1..=n_max {
        acc += fs.beta.at(n) * fs.x.at(n);
        bx.push(acc);
    }
    let bx = RealSequence::new(bx, SequenceOrigin::Tabulated)?;
    let trend = if n_max >= crate::defaults::MIN_DIAGNOSTIC_HORIZON {
        dyadic_diagnostic(&bx, params.block_rho)?
    } else {
        ConvergenceDiagnostic::insufficient(&bx, params.block_rho)
    };
    report.insert(condition_id::BX_SUMMABLE, ConditionEntry::Trend(trend));

    let q = RealSequence::from_fn(n_max, SequenceOrigin::Tabulated, |n| {
        if n == 0 {
            T::zero()
        } else {
            fs.weights.partial(n) / (T::from_index(n) * fs.weights.weight(n))
        }
    })?;
    let dq = q.forward_diff()?;
    let w32 = growth_witness(
        &dq,
        &reciprocal_index(n_max - 1),
        params.start_index.max(1),
        params.slope_tol,
    )?;
    report.insert(condition_id::WEIGHT_SMOOTH, ConditionEntry::Witness(w32));

    let w_r1 = growth_witness(&fs.lambda, &ones(n_max), params.start_index, params.slope_tol)?;
    report.insert(condition_id::LAMBDA_BOUNDED, ConditionEntry::Witness(w_r1));

    let dl = fs.lambda.forward_diff()?;
    let w_r2 = growth_witness(
        &dl,
        &reciprocal_index(n_max - 1),
        params.start_index.max(1),
        params.slope_tol,
    )?;
    report.insert(condition_id::LAMBDA_DIFF_DECAY, ConditionEntry::Witness(w_r2));

    Ok(report)
}

/// Exact nondecreasing check for `X`, with `abs_tol` slack.
pub fn x_non_decreasing<T: Scalar>(x: &RealSequence<T>, params: &CheckParams<T>) -> CheckOutcome {
    for n in 0..x.horizon() {
        if x.at(n + 1) < x.at(n) - params.abs_tol {
            return CheckOutcome::failed_at(ViolationAt::Index(n));
        }
    }
    CheckOutcome::passed()
}

/// Bundled hypothesis sets the `theorem` driver can ask for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionPreset {
    /// Nondecreasing `X`, plain moment condition.
    Thm21,
    /// Nondecreasing `X`, scaled moment condition.
    Thm22,
    /// Almost-increasing `X`, scaled moment condition, plus the matrix
    /// conditions of the general transform.
    Thm31,
}

impl ConditionPreset {
    pub fn label(self) -> &'static str {
        match self {
            ConditionPreset::Thm21 => "thm21",
            ConditionPreset::Thm22 => "thm22",
            ConditionPreset::Thm31 => "thm31",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "thm21" => Some(ConditionPreset::Thm21),
            "thm22" => Some(ConditionPreset::Thm22),
            "thm31" => Some(ConditionPreset::Thm31),
            _ => None,
        }
    }

    pub fn moment_variant(self) -> MomentVariant {
        match self {
            ConditionPreset::Thm21 => MomentVariant::Plain,
            _ => MomentVariant::Scaled,
        }
    }

    /// Does the preset accept an almost-increasing `X` instead of an exactly
    /// nondecreasing one?
    pub fn almost_increasing_x(self) -> bool {
        matches!(self, ConditionPreset::Thm31)
    }

    pub fn needs_matrix_conditions(self) -> bool {
        matches!(self, ConditionPreset::Thm31)
    }

    /// Hypothesis ids whose verdicts gate the preset.
    pub fn required_ids(self) -> &'static [&'static str] {
        use condition_id::*;
        match self {
            ConditionPreset::Thm21 => &[
                DIFF_BOUND,
                BETA_VANISHES,
                BETA_VARIATION,
                LAMBDA_X_BOUNDED,
                MOMENT_PLAIN,
                WEIGHT_RATIO,
                WEIGHT_DIFF,
                X_NON_DECREASING,
            ],
            ConditionPreset::Thm22 => &[
                DIFF_BOUND,
                BETA_VANISHES,
                BETA_VARIATION,
                LAMBDA_X_BOUNDED,
                MOMENT_SCALED,
                WEIGHT_RATIO,
                WEIGHT_DIFF,
                X_NON_DECREASING,
            ],
            ConditionPreset::Thm31 => &[
                DIFF_BOUND,
                BETA_VANISHES,
                BETA_VARIATION,
                LAMBDA_X_BOUNDED,
                MOMENT_SCALED,
                WEIGHT_RATIO,
                WEIGHT_DIFF,
                X_ALMOST_INCREASING,
                MATRIX_NONNEGATIVE,
                MATRIX_UNIT_COLUMN,
                MATRIX_COLUMN_MONOTONE,
                MATRIX_DIAGONAL_RATIO,
                MATRIX_DIAGONAL_DOMINATION,
            ],
        }
    }
}
