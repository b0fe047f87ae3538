//! Cesaro and weighted means, absolute summability indexes, and the dyadic
//! block convergence diagnostic.
//!
//! An *index series* for a series with terms `a_n` accumulates
//! `T_n = sum_{m=1..n} w_m |delta_m|^k`, where `delta_m` is the step of the
//! chosen transform of the partial sums and `w_m` the method's weight:
//!
//! - Cesaro order alpha: `w_m = m^{k-1}`, `delta_m = u_m - u_{m-1}` for the
//!   Cesaro means `u`,
//! - weighted mean: `w_m = (P_m/p_m)^{k-1}`, `delta_m = w_m - w_{m-1}` for the
//!   weighted means,
//! - general matrix: `w_m = (P_m/p_m)^{k-1}`, `delta_m = A_m(s) - A_{m-1}(s)`
//!   for the matrix transform rows.
//!
//! Boundedness of `T_n` as `n` grows is the finite-horizon stand-in for the
//! series being absolutely summable by the method; the dyadic diagnostic
//! classifies the trend from block increments `T_{2^{j+1}} - T_{2^j}`.

use crate::error::{Error, Result};
use crate::matrices::NormalMatrix;
use crate::report::Rollup;
use crate::scalar::Scalar;
use crate::seq::{RealSequence, SequenceOrigin, WeightSequence};

/// Binomial-type Cesaro coefficient `A_n^alpha` with `A_0^alpha = 1` and
/// `A_n^alpha / A_{n-1}^alpha = (alpha + n) / n`; zero for negative `n`.
///
/// Orders `alpha <= -1` are rejected: the coefficients then vanish or
/// alternate and no longer normalise a mean.
pub fn cesaro_coeff<T: Scalar>(alpha: T, n: isize) -> Result<T> {
    if !alpha.is_finite() || alpha <= -T::one() {
        return Err(Error::InvalidOrder(alpha.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(cesaro_coeff_raw(alpha, n))
}

/// Coefficient for any order, including the `(-2, -1]` range the derived
/// matrices need; callers own the domain question.
pub(crate) fn cesaro_coeff_raw<T: Scalar>(alpha: T, n: isize) -> T {
    if n < 0 {
        return T::zero();
    }
    if n == 0 {
        return T::one();
    }
    let neg_one = -T::one();
    if alpha == neg_one {
        return T::zero();
    }
    if alpha == T::zero() {
        return T::one();
    }
    if alpha == T::one() {
        return T::from_index(n as usize + 1);
    }
    let n = n as usize;
    if n <= 1000 {
        let mut acc = T::one();
        for i in 1..=n {
            let fi = T::from_index(i);
            acc = acc * (alpha + fi);
            acc = acc / fi;
        }
        acc
    } else {
        let mut sign = T::one();
        let mut log_acc = T::zero();
        for i in 1..=n {
            let fi = T::from_index(i);
            let factor = (alpha + fi) / fi;
            if factor == T::zero() {
                return T::zero();
            }
            if factor < T::zero() {
                sign = -sign;
            }
            log_acc += factor.abs().ln();
        }
        sign * log_acc.exp()
    }
}

/// Table `A_m^alpha` for `m = 0..=n_max`, built by the ratio recurrence.
///
/// For `m <= 1000` the entries agree bitwise with [`cesaro_coeff_raw`], which
/// runs the same operation sequence.
pub(crate) fn cesaro_coeff_table<T: Scalar>(alpha: T, n_max: usize) -> Vec<T> {
    let mut table = Vec::with_capacity(n_max + 1);
    let mut acc = T::one();
    table.push(acc);
    for m in 1..=n_max {
        let fm = T::from_index(m);
        acc = acc * (alpha + fm);
        acc = acc / fm;
        table.push(acc);
    }
    table
}

/// Cesaro mean of order `alpha` of the sequence `s` at index `n`:
/// `u_n = (1/A_n^alpha) sum_{v=0..n} A_{n-v}^{alpha-1} s_v`.
pub fn cesaro_mean<T: Scalar>(s: &RealSequence<T>, alpha: T, n: usize) -> Result<T> {
    if !alpha.is_finite() || alpha <= -T::one() {
        return Err(Error::InvalidOrder(alpha.to_f64().unwrap_or(f64::NAN)));
    }
    if n > s.horizon() {
        return Err(Error::OutOfHorizon {
            index: n,
            horizon: s.horizon(),
        });
    }
    let kernel = cesaro_coeff_table(alpha - T::one(), n);
    let den = cesaro_coeff_table(alpha, n)[n];
    if den == T::zero() {
        return Err(Error::ZeroDenominator(n));
    }
    let mut num = T::zero();
    for v in 0..=n {
        num += kernel[n - v] * s.at(v);
    }
    Ok(num / den)
}

/// Weighted mean of `s` at index `n`: `(1/P_n) sum_{v=0..n} p_v s_v`.
pub fn riesz_mean<T: Scalar>(s: &RealSequence<T>, weights: &WeightSequence<T>, n: usize) -> Result<T> {
    let horizon = s.horizon().min(weights.horizon());
    if n > horizon {
        return Err(Error::OutOfHorizon { index: n, horizon });
    }
    let mut num = T::zero();
    for v in 0..=n {
        num += weights.weight(v) * s.at(v);
    }
    Ok(num / weights.partial(n))
}

/// Which transform an index series is built on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IndexMethod<T> {
    Cesaro { alpha: T },
    Weighted,
    Matrix,
}

impl<T: Scalar> IndexMethod<T> {
    pub fn label(&self) -> String {
        match self {
            IndexMethod::Cesaro { alpha } => format!("cesaro(alpha={alpha})"),
            IndexMethod::Weighted => "weighted".to_string(),
            IndexMethod::Matrix => "matrix".to_string(),
        }
    }
}

/// Accumulated index partials `T_0 = 0, T_1, ..., T_{n_max}` for one series
/// and method.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexSeries<T> {
    method: IndexMethod<T>,
    k: T,
    partials: RealSequence<T>,
}

impl<T: Scalar> IndexSeries<T> {
    pub(crate) fn from_partials(method: IndexMethod<T>, k: T, partials: RealSequence<T>) -> Self {
        IndexSeries {
            method,
            k,
            partials,
        }
    }

    pub fn method(&self) -> &IndexMethod<T> {
        &self.method
    }

    pub fn k(&self) -> T {
        self.k
    }

    /// `T_n` for `n = 0..=n_max`; nondecreasing, `T_0 = 0`.
    pub fn partials(&self) -> &RealSequence<T> {
        &self.partials
    }

    pub fn horizon(&self) -> usize {
        self.partials.horizon()
    }

    /// `T_{n_max}`.
    pub fn final_value(&self) -> T {
        self.partials.at(self.partials.horizon())
    }

    /// Dyadic block increments of the partials.
    pub fn blocks(&self) -> Vec<T> {
        dyadic_blocks(&self.partials)
    }

    /// Classifies the tail trend of the partials.
    pub fn diagnostic(&self, rho: T) -> Result<ConvergenceDiagnostic<T>> {
        dyadic_diagnostic(&self.partials, rho)
    }
}

fn validate_exponent<T: Scalar>(k: T) -> Result<()> {
    if !k.is_finite() || k < T::one() {
        return Err(Error::InvalidExponent(k.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(())
}

fn check_horizon(label_horizon: usize, n_max: usize) -> Result<()> {
    if n_max > label_horizon {
        return Err(Error::OutOfHorizon {
            index: n_max,
            horizon: label_horizon,
        });
    }
    Ok(())
}

/// Accumulates `T_n = sum m^{k-1} |u_m - u_{m-1}|^k` for the Cesaro means of
/// order `alpha` of the series with terms `a`.
pub fn cesaro_index<T: Scalar>(
    terms: &RealSequence<T>,
    alpha: T,
    k: T,
    n_max: usize,
) -> Result<IndexSeries<T>> {
    if !alpha.is_finite() || alpha <= -T::one() {
        return Err(Error::InvalidOrder(alpha.to_f64().unwrap_or(f64::NAN)));
    }
    validate_exponent(k)?;
    check_horizon(terms.horizon(), n_max)?;
    let s = terms.partial_sums()?;

    let kernel = cesaro_coeff_table(alpha - T::one(), n_max);
    let dens = cesaro_coeff_table(alpha, n_max);
    let km1 = k - T::one();

    let mut partials = Vec::with_capacity(n_max + 1);
    partials.push(T::zero());
    let mut acc = T::zero();
    let mut prev_mean = s.at(0);
    for n in 1..=n_max {
        if dens[n] == T::zero() {
            return Err(Error::ZeroDenominator(n));
        }
        let mut num = T::zero();
        for v in 0..=n {
            num += kernel[n - v] * s.at(v);
        }
        let mean = num / dens[n];
        let step = (mean - prev_mean).abs();
        acc += T::from_index(n).powf(km1) * step.powf(k);
        partials.push(acc);
        prev_mean = mean;
    }
    Ok(IndexSeries::from_partials(
        IndexMethod::Cesaro { alpha },
        k,
        RealSequence::new(partials, SequenceOrigin::Tabulated)?,
    ))
}

/// Accumulates `T_n = sum (P_m/p_m)^{k-1} |w_m - w_{m-1}|^k` for the weighted
/// means of the series with terms `a`.
pub fn weighted_index<T: Scalar>(
    terms: &RealSequence<T>,
    weights: &WeightSequence<T>,
    k: T,
    n_max: usize,
) -> Result<IndexSeries<T>> {
    validate_exponent(k)?;
    check_horizon(terms.horizon().min(weights.horizon()), n_max)?;
    let s = terms.partial_sums()?;
    let km1 = k - T::one();

    let mut partials = Vec::with_capacity(n_max + 1);
    partials.push(T::zero());
    let mut acc = T::zero();
    let mut weighted_sum = weights.weight(0) * s.at(0);
    let mut prev_mean = weighted_sum / weights.partial(0);
    for n in 1..=n_max {
        weighted_sum += weights.weight(n) * s.at(n);
        let mean = weighted_sum / weights.partial(n);
        let step = (mean - prev_mean).abs();
        let ratio = weights.partial(n) / weights.weight(n);
        acc += ratio.powf(km1) * step.powf(k);
        partials.push(acc);
        prev_mean = mean;
    }
    Ok(IndexSeries::from_partials(
        IndexMethod::Weighted,
        k,
        RealSequence::new(partials, SequenceOrigin::Tabulated)?,
    ))
}

/// Accumulates `T_n = sum (P_m/p_m)^{k-1} |A_m(s) - A_{m-1}(s)|^k` for the
/// rows of a normal matrix applied to the partial sums of the series.
pub fn matrix_index<T: Scalar>(
    matrix: &NormalMatrix<T>,
    weights: &WeightSequence<T>,
    terms: &RealSequence<T>,
    k: T,
    n_max: usize,
) -> Result<IndexSeries<T>> {
    validate_exponent(k)?;
    let horizon = terms
        .horizon()
        .min(weights.horizon())
        .min(matrix.horizon());
    check_horizon(horizon, n_max)?;
    let s = terms.partial_sums()?;
    let km1 = k - T::one();

    let mut partials = Vec::with_capacity(n_max + 1);
    partials.push(T::zero());
    let mut acc = T::zero();
    let mut prev_row = matrix.apply_row(&s, 0)?;
    for n in 1..=n_max {
        let row = matrix.apply_row(&s, n)?;
        let step = (row - prev_row).abs();
        let ratio = weights.partial(n) / weights.weight(n);
        acc += ratio.powf(km1) * step.powf(k);
        partials.push(acc);
        prev_row = row;
    }
    Ok(IndexSeries::from_partials(
        IndexMethod::Matrix,
        k,
        RealSequence::new(partials, SequenceOrigin::Tabulated)?,
    ))
}

/// Trend verdict of the dyadic block diagnostic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrendVerdict {
    /// The last block ratios sit at or below the threshold.
    SummableTrend,
    /// The last three blocks are nondecreasing.
    DivergentTrend,
    /// Neither pattern: decaying blocks, but too slowly to call.
    Inconclusive,
}

impl TrendVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            TrendVerdict::SummableTrend => "summable_trend",
            TrendVerdict::DivergentTrend => "divergent_trend",
            TrendVerdict::Inconclusive => "inconclusive",
        }
    }

    pub fn rollup(self) -> Rollup {
        match self {
            TrendVerdict::SummableTrend => Rollup::Pass,
            TrendVerdict::DivergentTrend => Rollup::Fail,
            TrendVerdict::Inconclusive => Rollup::Inconclusive,
        }
    }
}

/// Dyadic block summary of nondecreasing partials.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceDiagnostic<T> {
    verdict: TrendVerdict,
    blocks: Vec<T>,
    ratios: Vec<T>,
    rho: T,
}

impl<T: Scalar> ConvergenceDiagnostic<T> {
    pub fn verdict(&self) -> TrendVerdict {
        self.verdict
    }

    /// `T_{2^{j+1}} - T_{2^j}` for each dyadic level within the horizon.
    pub fn blocks(&self) -> &[T] {
        &self.blocks
    }

    /// Successive block ratios, with `0/0 = 0` and `x/0 = +inf`.
    pub fn ratios(&self) -> &[T] {
        &self.ratios
    }

    pub fn rho(&self) -> T {
        self.rho
    }

    pub fn rollup(&self) -> Rollup {
        self.verdict.rollup()
    }

    /// Diagnostic for a horizon too short to classify.
    pub(crate) fn insufficient(partials: &RealSequence<T>, rho: T) -> Self {
        let blocks = dyadic_blocks(partials);
        let ratios = block_ratios(&blocks);
        ConvergenceDiagnostic {
            verdict: TrendVerdict::Inconclusive,
            blocks,
            ratios,
            rho,
        }
    }
}

/// Block increments `T_{2^{j+1}} - T_{2^j}` while `2^{j+1}` stays within the
/// horizon.
pub fn dyadic_blocks<T: Scalar>(partials: &RealSequence<T>) -> Vec<T> {
    let mut blocks = Vec::new();
    let mut lo = 1usize;
    while lo * 2 <= partials.horizon() {
        blocks.push(partials.at(lo * 2) - partials.at(lo));
        lo *= 2;
    }
    blocks
}

fn block_ratios<T: Scalar>(blocks: &[T]) -> Vec<T> {
    blocks
        .windows(2)
        .map(|w| {
            if w[0] == T::zero() {
                if w[1] == T::zero() {
                    T::zero()
                } else {
                    T::infinity()
                }
            } else {
                w[1] / w[0]
            }
        })
        .collect()
}

/// Classifies the tail trend of nondecreasing partials from their dyadic
/// blocks. Requires a horizon of at least 128 so that at least seven blocks
/// exist; the verdict looks at the last three.
pub fn dyadic_diagnostic<T: Scalar>(
    partials: &RealSequence<T>,
    rho: T,
) -> Result<ConvergenceDiagnostic<T>> {
    if partials.horizon() < 128 {
        return Err(Error::HorizonTooSmall {
            need: 128,
            got: partials.horizon(),
        });
    }
    let blocks = dyadic_blocks(partials);
    let ratios = block_ratios(&blocks);
    let m = blocks.len();
    debug_assert!(m >= 7);

    let verdict = if ratios[m - 3] <= rho && ratios[m - 2] <= rho {
        TrendVerdict::SummableTrend
    } else if blocks[m - 3] <= blocks[m - 2] && blocks[m - 2] <= blocks[m - 1] {
        TrendVerdict::DivergentTrend
    } else {
        TrendVerdict::Inconclusive
    };
    Ok(ConvergenceDiagnostic {
        verdict,
        blocks,
        ratios,
        rho,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrices::MatrixKind;

    fn from_fn(horizon: usize, f: impl Fn(usize) -> f64) -> RealSequence<f64> {
        RealSequence::from_fn(horizon, SequenceOrigin::Tabulated, f).unwrap()
    }

    fn unit_weights(horizon: usize) -> WeightSequence<f64> {
        WeightSequence::from_values(vec![1.0; horizon + 1]).unwrap()
    }

    #[test]
    fn coeff_small_integer_orders_are_exact() {
        assert_eq!(cesaro_coeff(1.0, 3).unwrap(), 4.0);
        assert_eq!(cesaro_coeff(0.0, 5).unwrap(), 1.0);
        assert_eq!(cesaro_coeff(2.0, 3).unwrap(), 10.0);
        assert_eq!(cesaro_coeff(0.5, 0).unwrap(), 1.0);
        assert_eq!(cesaro_coeff(2.0, -3).unwrap(), 0.0);
    }

    #[test]
    fn coeff_rejects_orders_at_or_below_minus_one() {
        assert!(matches!(
            cesaro_coeff(-1.0f64, 3).unwrap_err(),
            Error::InvalidOrder(_)
        ));
        assert!(matches!(
            cesaro_coeff(-1.5f64, 3).unwrap_err(),
            Error::InvalidOrder(_)
        ));
    }

    #[test]
    fn coeff_satisfies_ratio_recurrence() {
        let alpha = 0.5f64;
        for n in 1..=50isize {
            let cur = cesaro_coeff(alpha, n).unwrap();
            let prev = cesaro_coeff(alpha, n - 1).unwrap();
            let expect = prev * (alpha + n as f64) / n as f64;
            assert!((cur - expect).abs() <= 1e-12 * expect.abs(), "n={n}");
        }
    }

    #[test]
    fn coeff_log_path_matches_direct_product() {
        let alpha = 0.5f64;
        let n = 1200usize;
        let via_log = cesaro_coeff(alpha, n as isize).unwrap();
        let mut direct = 1.0f64;
        for i in 1..=n {
            direct = direct * (alpha + i as f64) / i as f64;
        }
        assert!((via_log - direct).abs() <= 1e-10 * direct.abs());
    }

    #[test]
    fn coeff_table_matches_single_point_evaluation() {
        let alpha = 0.3f64;
        let table = cesaro_coeff_table(alpha, 600);
        for n in (0..=600).step_by(37) {
            assert_eq!(table[n], cesaro_coeff_raw(alpha, n as isize), "n={n}");
        }
    }

    #[test]
    fn negative_order_kernel_has_one_sign_change() {
        // order in (-2, -1): first factor negative, the rest positive
        let a = cesaro_coeff_raw(-1.5f64, 1);
        assert!(a < 0.0);
        let b = cesaro_coeff_raw(-1.5f64, 2);
        assert!(b < 0.0);
        assert_eq!(cesaro_coeff_raw(-2.0f64, 2), 0.0);
    }

    #[test]
    fn first_order_mean_is_arithmetic_mean() {
        let s = RealSequence::tabulated(vec![1.0, 0.0, 1.0]).unwrap();
        assert_eq!(cesaro_mean(&s, 1.0, 2).unwrap(), 2.0 / 3.0);
        assert_eq!(cesaro_mean(&s, 0.0, 1).unwrap(), 0.0);
        assert_eq!(cesaro_mean(&s, 0.0, 2).unwrap(), 1.0);
    }

    #[test]
    fn mean_of_constant_sequence_is_the_constant() {
        let s = from_fn(64, |_| 2.5);
        for alpha in [0.25, 0.5, 1.5, 3.0] {
            let u = cesaro_mean(&s, alpha, 64).unwrap();
            assert!((u - 2.5).abs() <= 1e-12, "alpha={alpha}");
        }
    }

    #[test]
    fn mean_out_of_horizon_rejected() {
        let s = RealSequence::tabulated(vec![1.0, 2.0]).unwrap();
        assert!(matches!(
            cesaro_mean(&s, 1.0, 5).unwrap_err(),
            Error::OutOfHorizon { index: 5, horizon: 1 }
        ));
    }

    #[test]
    fn riesz_mean_with_unit_weights_is_arithmetic_mean() {
        let s = RealSequence::tabulated(vec![1.0, 0.0, 1.0]).unwrap();
        let w = unit_weights(2);
        assert_eq!(riesz_mean(&s, &w, 2).unwrap(), 2.0 / 3.0);
    }

    #[test]
    fn riesz_mean_of_constant_is_the_constant() {
        let s = from_fn(16, |_| 4.0);
        let w = WeightSequence::from_values((1..=17).map(f64::from).collect()).unwrap();
        assert_eq!(riesz_mean(&s, &w, 16).unwrap(), 4.0);
    }

    #[test]
    fn riesz_equals_first_order_cesaro_for_unit_weights() {
        let s = from_fn(100, |n| ((n * 7919) % 13) as f64 - 6.0);
        let w = unit_weights(100);
        for n in [0, 1, 7, 50, 100] {
            assert_eq!(
                riesz_mean(&s, &w, n).unwrap(),
                cesaro_mean(&s, 1.0, n).unwrap(),
                "n={n}"
            );
        }
    }

    #[test]
    fn index_exponent_below_one_rejected() {
        let a = from_fn(200, |n| if n == 0 { 0.0 } else { 1.0 });
        assert!(matches!(
            cesaro_index(&a, 1.0, 0.5, 200).unwrap_err(),
            Error::InvalidExponent(_)
        ));
        let w = unit_weights(200);
        assert!(matches!(
            weighted_index(&a, &w, 0.99, 200).unwrap_err(),
            Error::InvalidExponent(_)
        ));
    }

    #[test]
    fn index_of_constant_terms_after_zero_is_flat() {
        // a_n = 0 for all n: every transform is constant, so T stays 0
        let a = from_fn(300, |_| 0.0);
        let w = unit_weights(300);
        let ix = weighted_index(&a, &w, 2.0, 300).unwrap();
        assert!(ix.partials().values().iter().all(|&t| t == 0.0));
        assert_eq!(ix.final_value(), 0.0);
    }

    #[test]
    fn weighted_index_equals_first_order_cesaro_index_at_k_one() {
        let a = from_fn(4096, |n| {
            if n == 0 {
                0.0
            } else if n % 2 == 1 {
                1.0
            } else {
                -1.0
            }
        });
        let w = unit_weights(4096);
        let wx = weighted_index(&a, &w, 1.0, 4096).unwrap();
        let cx = cesaro_index(&a, 1.0, 1.0, 4096).unwrap();
        assert_eq!(wx.partials().values(), cx.partials().values());
    }

    #[test]
    fn matrix_index_with_weighted_mean_matrix_matches_weighted_index() {
        let n_max = 500;
        let a = from_fn(n_max, |n| {
            if n == 0 {
                0.0
            } else {
                (if n % 2 == 1 { 1.0 } else { -1.0 }) / (n as f64).powf(0.3)
            }
        });
        let w = WeightSequence::from_values((0..=n_max).map(|n| n as f64 + 1.0).collect()).unwrap();
        let wm = NormalMatrix::weighted_mean(&w).unwrap();
        for k in [1.0, 2.0] {
            let mx = matrix_index(&wm, &w, &a, k, n_max).unwrap();
            let wx = weighted_index(&a, &w, k, n_max).unwrap();
            assert_eq!(mx.partials().values(), wx.partials().values(), "k={k}");
        }
    }

    #[test]
    fn identity_matrix_with_unit_weights_counts_raw_terms() {
        let n_max = 500;
        let a = from_fn(n_max, |n| {
            if n == 0 {
                0.0
            } else if n % 2 == 1 {
                1.0
            } else {
                -1.0
            }
        });
        let w = unit_weights(n_max);
        let id = NormalMatrix::identity(n_max);
        let ix = matrix_index(&id, &w, &a, 1.0, n_max).unwrap();
        for n in 0..=n_max {
            assert_eq!(ix.partials().at(n), n as f64, "n={n}");
        }
    }

    #[test]
    fn matrix_kind_accessor_survives_index_use() {
        let w = unit_weights(200);
        let wm = NormalMatrix::weighted_mean(&w).unwrap();
        assert!(matches!(wm.kind(), MatrixKind::WeightedMean));
    }

    #[test]
    fn quadratically_decaying_steps_read_as_summable() {
        let partials = from_fn(2048, |n| {
            (1..=n).map(|m| 1.0 / (m as f64 * m as f64)).sum()
        });
        let d = dyadic_diagnostic(&partials, 0.95).unwrap();
        assert_eq!(d.verdict(), TrendVerdict::SummableTrend);
    }

    #[test]
    fn harmonic_partials_read_as_divergent() {
        let partials = from_fn(2048, |n| (1..=n).map(|m| 1.0 / m as f64).sum());
        let d = dyadic_diagnostic(&partials, 0.95).unwrap();
        assert_eq!(d.verdict(), TrendVerdict::DivergentTrend);
    }

    #[test]
    fn slowly_decaying_blocks_read_as_inconclusive() {
        let partials = from_fn(4096, |n| (1..=n).map(|m| (m as f64).powf(-1.05)).sum());
        let d = dyadic_diagnostic(&partials, 0.95).unwrap();
        assert_eq!(d.verdict(), TrendVerdict::Inconclusive);
        let r = d.ratios();
        assert!(r[r.len() - 2] > 0.95 && r[r.len() - 2] < 1.0);
    }

    #[test]
    fn zero_partials_read_as_summable() {
        let partials = from_fn(256, |_| 0.0);
        let d = dyadic_diagnostic(&partials, 0.95).unwrap();
        assert_eq!(d.verdict(), TrendVerdict::SummableTrend);
        assert!(d.ratios().iter().all(|&r| r == 0.0));
    }

    #[test]
    fn geometric_decay_reads_as_summable() {
        let partials = from_fn(512, |n| (1..=n).map(|m| 0.5f64.powi(m as i32)).sum());
        let d = dyadic_diagnostic(&partials, 0.95).unwrap();
        assert_eq!(d.verdict(), TrendVerdict::SummableTrend);
    }

    #[test]
    fn diagnostic_needs_horizon_128() {
        let partials = from_fn(100, |n| n as f64);
        assert!(matches!(
            dyadic_diagnostic(&partials, 0.95).unwrap_err(),
            Error::HorizonTooSmall { need: 128, got: 100 }
        ));
    }

    #[test]
    fn blocks_follow_doubling_indices() {
        let partials = from_fn(16, |n| n as f64);
        // [T2-T1, T4-T2, T8-T4, T16-T8]
        assert_eq!(dyadic_blocks(&partials), vec![1.0, 2.0, 4.0, 8.0]);
    }
}
