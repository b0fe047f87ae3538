//! Finite-horizon growth witnesses.
//!
//! A growth witness summarises how `|num_n| / |den_n|` behaves over the
//! checked range: the supremum with its first attaining index, and the
//! least-squares slope of `log ratio` against `log n` over the upper half of
//! the range. The slope stands in for the exponent of a power-law trend, so a
//! clearly positive slope reads as evidence of unboundedness even when the
//! finite supremum is small.

use crate::error::{Error, Result};
use crate::report::Rollup;
use crate::scalar::Scalar;
use crate::seq::RealSequence;

/// Boundedness verdict at finite horizon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessVerdict {
    /// Finite supremum and a tail slope at most the tolerance.
    Bounded,
    /// Tail slope above the tolerance.
    UnboundedTrend,
    /// The data does not support either call (non-finite ratios, or a
    /// cap-exceeding but flat envelope in the almost-increasing witness).
    Inconclusive,
}

impl WitnessVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            WitnessVerdict::Bounded => "bounded",
            WitnessVerdict::UnboundedTrend => "unbounded_trend",
            WitnessVerdict::Inconclusive => "inconclusive",
        }
    }

    pub fn rollup(self) -> Rollup {
        match self {
            WitnessVerdict::Bounded => Rollup::Pass,
            WitnessVerdict::UnboundedTrend => Rollup::Fail,
            WitnessVerdict::Inconclusive => Rollup::Inconclusive,
        }
    }
}

/// Evidence gathered for one `num = O(den)` claim.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthWitness<T> {
    ratio_sup: T,
    argmax_index: usize,
    tail_slope: T,
    start_index: usize,
    horizon: usize,
    slope_tol: T,
    verdict: WitnessVerdict,
}

impl<T: Scalar> GrowthWitness<T> {
    /// Supremum of `|num_n| / |den_n|` over the checked range.
    pub fn ratio_sup(&self) -> T {
        self.ratio_sup
    }

    /// First index attaining the supremum.
    pub fn argmax_index(&self) -> usize {
        self.argmax_index
    }

    /// Least-squares slope of `log ratio` vs `log n` over the upper half of
    /// the checked range.
    pub fn tail_slope(&self) -> T {
        self.tail_slope
    }

    pub fn start_index(&self) -> usize {
        self.start_index
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn slope_tol(&self) -> T {
        self.slope_tol
    }

    pub fn verdict(&self) -> WitnessVerdict {
        self.verdict
    }

    pub fn rollup(&self) -> Rollup {
        self.verdict.rollup()
    }
}

/// Slope of the least-squares line through `points`; 0 with fewer than two.
pub(crate) fn least_squares_slope<T: Scalar>(points: &[(T, T)]) -> T {
    if points.len() < 2 {
        return T::zero();
    }
    let n = T::from_index(points.len());
    let mut mx = T::zero();
    let mut my = T::zero();
    for &(x, y) in points {
        mx += x;
        my += y;
    }
    mx = mx / n;
    my = my / n;
    let mut sxy = T::zero();
    let mut sxx = T::zero();
    for &(x, y) in points {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    if sxx == T::zero() {
        T::zero()
    } else {
        sxy / sxx
    }
}

/// Builds a growth witness for `num_n = O(den_n)` over `start_index..=N`.
///
/// Both sequences must share a horizon, and `den` must be nonzero on the
/// checked range. Indices below `start_index` are ignored entirely.
pub fn growth_witness<T: Scalar>(
    num: &RealSequence<T>,
    den: &RealSequence<T>,
    start_index: usize,
    slope_tol: T,
) -> Result<GrowthWitness<T>> {
    let n_max = num.horizon();
    if den.horizon() != n_max {
        return Err(Error::HorizonMismatch {
            left: n_max,
            right: den.horizon(),
        });
    }
    if start_index > n_max {
        return Err(Error::OutOfHorizon {
            index: start_index,
            horizon: n_max,
        });
    }

    let mut ratio_sup = T::neg_infinity();
    let mut argmax_index = start_index;
    let mut ratios = Vec::with_capacity(n_max - start_index + 1);
    for n in start_index..=n_max {
        let d = den.at(n);
        if d == T::zero() {
            return Err(Error::ZeroDenominator(n));
        }
        let r = num.at(n).abs() / d.abs();
        if r > ratio_sup {
            ratio_sup = r;
            argmax_index = n;
        }
        ratios.push(r);
    }

    let tail_lo = start_index + (n_max - start_index + 1) / 2;
    let mut points = Vec::with_capacity(n_max - tail_lo + 1);
    for n in tail_lo.max(1)..=n_max {
        let r = ratios[n - start_index];
        if r > T::zero() && r.is_finite() {
            points.push((T::from_index(n).ln(), r.ln()));
        }
    }
    let tail_slope = least_squares_slope(&points);

    let verdict = if !ratio_sup.is_finite() || !tail_slope.is_finite() {
        WitnessVerdict::Inconclusive
    } else if tail_slope <= slope_tol {
        WitnessVerdict::Bounded
    } else {
        WitnessVerdict::UnboundedTrend
    };

    Ok(GrowthWitness {
        ratio_sup,
        argmax_index,
        tail_slope,
        start_index,
        horizon: n_max,
        slope_tol,
        verdict,
    })
}

/// Witness that a positive sequence is almost increasing, i.e. sandwiched
/// `A z_n <= b_n <= B z_n` for some nondecreasing `z` and constants
/// `0 < A <= B`.
///
/// The envelope is the running maximum, which makes `B = 1` and
/// `A = 1 / sup(z_n / b_n)`; the claim holds at finite horizon iff that
/// supremum stays bounded.
#[derive(Debug, Clone, PartialEq)]
pub struct AlmostIncreasingWitness<T> {
    witness: GrowthWitness<T>,
    envelope: RealSequence<T>,
    lower: T,
    upper: T,
    ratio_cap: T,
}

impl<T: Scalar> AlmostIncreasingWitness<T> {
    /// Underlying growth witness for `envelope = O(b)`.
    pub fn witness(&self) -> &GrowthWitness<T> {
        &self.witness
    }

    /// The nondecreasing envelope `z` (running maximum of `b`).
    pub fn envelope(&self) -> &RealSequence<T> {
        &self.envelope
    }

    /// Sandwich constant `A`.
    pub fn lower(&self) -> T {
        self.lower
    }

    /// Sandwich constant `B` (always 1 for the running-maximum envelope).
    pub fn upper(&self) -> T {
        self.upper
    }

    pub fn ratio_cap(&self) -> T {
        self.ratio_cap
    }

    pub fn verdict(&self) -> WitnessVerdict {
        self.witness.verdict
    }

    pub fn rollup(&self) -> Rollup {
        self.verdict().rollup()
    }
}

/// Builds an almost-increasing witness for a strictly positive sequence.
///
/// A flat tail slope with `sup(z/b)` beyond `ratio_cap` is reported as
/// inconclusive: the sandwich would need a constant larger than the cap.
pub fn almost_increasing_witness<T: Scalar>(
    b: &RealSequence<T>,
    ratio_cap: T,
    slope_tol: T,
) -> Result<AlmostIncreasingWitness<T>> {
    for (i, &v) in b.values().iter().enumerate() {
        if v <= T::zero() {
            return Err(Error::NonPositive {
                index: i,
                value: v.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    let envelope = b.running_max();
    let mut witness = growth_witness(&envelope, b, 0, slope_tol)?;
    if witness.verdict == WitnessVerdict::Bounded && witness.ratio_sup > ratio_cap {
        witness.verdict = WitnessVerdict::Inconclusive;
    }
    let lower = if witness.ratio_sup.is_finite() {
        T::one() / witness.ratio_sup
    } else {
        T::zero()
    };
    Ok(AlmostIncreasingWitness {
        witness,
        envelope,
        lower,
        upper: T::one(),
        ratio_cap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::SequenceOrigin;

    fn from_fn(horizon: usize, f: impl Fn(usize) -> f64) -> RealSequence<f64> {
        RealSequence::from_fn(horizon, SequenceOrigin::Tabulated, f).unwrap()
    }

    #[test]
    fn ratio_below_one_is_bounded() {
        let num = from_fn(2000, |n| n as f64);
        let den = from_fn(2000, |n| n as f64 + 1.0);
        let w = growth_witness(&num, &den, 1, 0.05).unwrap();
        assert_eq!(w.verdict(), WitnessVerdict::Bounded);
        assert!(w.ratio_sup() < 1.0);
        assert_eq!(w.argmax_index(), 2000);
        assert!(w.tail_slope().abs() < 0.01);
    }

    #[test]
    fn linear_ratio_growth_is_unbounded_trend() {
        let num = from_fn(2000, |n| (n as f64).powi(2));
        let den = from_fn(2000, |n| n as f64);
        let w = growth_witness(&num, &den, 1, 0.05).unwrap();
        assert_eq!(w.verdict(), WitnessVerdict::UnboundedTrend);
        assert!((w.tail_slope() - 1.0).abs() < 1e-6);
        assert_eq!(w.argmax_index(), 2000);
    }

    #[test]
    fn slope_recovers_power_law_exponent() {
        let num = from_fn(4096, |n| (n as f64).powf(0.3));
        let den = from_fn(4096, |_| 1.0);
        let w = growth_witness(&num, &den, 1, 0.05).unwrap();
        assert!((w.tail_slope() - 0.3).abs() < 1e-9);
        assert_eq!(w.verdict(), WitnessVerdict::UnboundedTrend);
    }

    #[test]
    fn equal_sequences_peak_at_start() {
        let num = from_fn(100, |n| n as f64 + 2.0);
        let w = growth_witness(&num, &num, 1, 0.05).unwrap();
        assert_eq!(w.ratio_sup(), 1.0);
        assert_eq!(w.argmax_index(), 1);
        assert_eq!(w.tail_slope(), 0.0);
        assert_eq!(w.verdict(), WitnessVerdict::Bounded);
    }

    #[test]
    fn zero_numerator_is_bounded_with_zero_sup() {
        let num = from_fn(300, |_| 0.0);
        let den = from_fn(300, |n| n as f64 + 1.0);
        let w = growth_witness(&num, &den, 1, 0.05).unwrap();
        assert_eq!(w.ratio_sup(), 0.0);
        assert_eq!(w.tail_slope(), 0.0);
        assert_eq!(w.verdict(), WitnessVerdict::Bounded);
    }

    #[test]
    fn zero_denominator_inside_range_is_reported() {
        let num = from_fn(10, |_| 1.0);
        let den = from_fn(10, |n| if n == 3 { 0.0 } else { 1.0 });
        let err = growth_witness(&num, &den, 1, 0.05).unwrap_err();
        assert!(matches!(err, Error::ZeroDenominator(3)));
    }

    #[test]
    fn zero_denominator_before_start_is_ignored() {
        let num = from_fn(10, |n| n as f64);
        let den = from_fn(10, |n| n as f64);
        let w = growth_witness(&num, &den, 1, 0.05).unwrap();
        assert_eq!(w.ratio_sup(), 1.0);
    }

    #[test]
    fn horizon_mismatch_rejected() {
        let num = from_fn(10, |_| 1.0);
        let den = from_fn(11, |_| 1.0);
        assert!(matches!(
            growth_witness(&num, &den, 1, 0.05).unwrap_err(),
            Error::HorizonMismatch { left: 10, right: 11 }
        ));
    }

    #[test]
    fn start_past_horizon_rejected() {
        let s = from_fn(10, |_| 1.0);
        assert!(matches!(
            growth_witness(&s, &s, 11, 0.05).unwrap_err(),
            Error::OutOfHorizon { index: 11, horizon: 10 }
        ));
    }

    #[test]
    fn overflowing_ratio_is_inconclusive() {
        let num = from_fn(200, |_| 1e300);
        let den = from_fn(200, |_| 1e-300);
        let w = growth_witness(&num, &den, 1, 0.05).unwrap();
        assert_eq!(w.verdict(), WitnessVerdict::Inconclusive);
        assert!(w.ratio_sup().is_infinite());
    }

    #[test]
    fn strictly_increasing_sequence_is_its_own_envelope() {
        let b = from_fn(500, |n| n as f64 + 1.0);
        let a = almost_increasing_witness(&b, 100.0, 0.05).unwrap();
        assert_eq!(a.verdict(), WitnessVerdict::Bounded);
        assert_eq!(a.lower(), 1.0);
        assert_eq!(a.upper(), 1.0);
        assert_eq!(a.envelope().values(), b.values());
    }

    #[test]
    fn bounded_oscillation_is_almost_increasing() {
        let b = from_fn(2000, |n| (n as f64 + 1.0) * (2.0 + if n % 2 == 0 { 1.0 } else { -1.0 }));
        let a = almost_increasing_witness(&b, 100.0, 0.05).unwrap();
        assert_eq!(a.verdict(), WitnessVerdict::Bounded);
        assert!(a.witness().ratio_sup() < 3.0 + 1e-12);
        assert!(a.lower() > 0.33);
    }

    #[test]
    fn decaying_sequence_is_not_almost_increasing() {
        let b = from_fn(2000, |n| 1.0 / (n as f64 + 1.0));
        let a = almost_increasing_witness(&b, 100.0, 0.05).unwrap();
        assert_eq!(a.verdict(), WitnessVerdict::UnboundedTrend);
        // Ratio of envelope to sequence grows like n; slope of ln(n + 1)
        // against ln(n) over a finite tail sits just under 1.
        assert!((a.witness().tail_slope() - 1.0).abs() < 0.01);
    }

    #[test]
    fn cap_exceeding_flat_ratio_is_inconclusive() {
        let b = from_fn(2000, |n| if n == 0 { 1e4 } else { 1.0 });
        let a = almost_increasing_witness(&b, 100.0, 0.05).unwrap();
        assert_eq!(a.verdict(), WitnessVerdict::Inconclusive);
        assert_eq!(a.witness().ratio_sup(), 1e4);
    }

    #[test]
    fn nonpositive_input_rejected() {
        let b = RealSequence::tabulated(vec![1.0, 0.0, 2.0]).unwrap();
        assert!(matches!(
            almost_increasing_witness(&b, 100.0, 0.05).unwrap_err(),
            Error::NonPositive { index: 1, .. }
        ));
    }

    #[test]
    fn single_precision_slope() {
        let num = RealSequence::<f32>::from_fn(1024, SequenceOrigin::Tabulated, |n| {
            (n as f32).powf(0.3)
        })
        .unwrap();
        let den = RealSequence::<f32>::from_fn(1024, SequenceOrigin::Tabulated, |_| 1.0).unwrap();
        let w = growth_witness(&num, &den, 1, 0.05f32).unwrap();
        assert!((w.tail_slope() - 0.3).abs() < 1e-3);
    }
}
