//! Lower-triangular (normal) matrix transforms and their derived matrices.
//!
//! For a normal matrix `a(n,v)` with nonzero diagonal, two derived matrices
//! drive everything else:
//!
//! - the row-suffix sums `abar(n,v) = sum_{i=v..n} a(n,i)`,
//! - the difference matrix `ahat(0,0) = a(0,0)`,
//!   `ahat(n,v) = abar(n,v) - abar(n-1,v)`.
//!
//! If `s` are the partial sums of a series with terms `t_v`, the transform and
//! its step can be written against the terms instead of the partial sums:
//! `A_n(s) = sum_v abar(n,v) t_v` and
//! `A_n(s) - A_{n-1}(s) = sum_v ahat(n,v) t_v`. Both identities hold for any
//! terms, including `t_0 != 0`, and are the backbone of the test oracles.
//!
//! The built-in kinds (weighted mean, Cesaro, identity) carry closed forms for
//! `abar`/`ahat`; custom matrices fall back to summation.

use std::path::Path;

use crate::conditions::{condition_id, CheckParams, ConditionEntry, HypothesisReport};
use crate::error::{Error, Result};
use crate::report::{CheckOutcome, Rollup, ViolationAt};
use crate::scalar::Scalar;
use crate::seq::{RealSequence, WeightSequence};
use crate::summability::cesaro_coeff_table;
use crate::witness::{growth_witness, GrowthWitness};

/// The construction a normal matrix came from.
#[derive(Debug, Clone, PartialEq)]
pub enum MatrixKind<T> {
    /// `a(n,v) = p_v / P_n`.
    WeightedMean,
    /// `a(n,v) = A_{n-v}^{alpha-1} / A_n^alpha`.
    Cesaro { alpha: T },
    /// `a(n,v) = 1` iff `v = n`.
    Identity,
    /// Explicit rows.
    Custom,
}

impl<T: Scalar> MatrixKind<T> {
    pub fn label(&self) -> String {
        match self {
            MatrixKind::WeightedMean => "weighted_mean".to_string(),
            MatrixKind::Cesaro { alpha } => format!("cesaro(alpha={alpha})"),
            MatrixKind::Identity => "identity".to_string(),
            MatrixKind::Custom => "custom".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Repr<T> {
    WeightedMean { weights: WeightSequence<T> },
    Cesaro { kernel: Vec<T>, norm: Vec<T> },
    Identity,
    Custom { rows: Vec<Vec<T>> },
}

/// A lower-triangular matrix with nonzero diagonal over indices `0..=N`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalMatrix<T> {
    horizon: usize,
    kind: MatrixKind<T>,
    repr: Repr<T>,
}

impl<T: Scalar> NormalMatrix<T> {
    /// Weighted-mean matrix of the given weights, same horizon.
    pub fn weighted_mean(weights: &WeightSequence<T>) -> Result<Self> {
        Ok(NormalMatrix {
            horizon: weights.horizon(),
            kind: MatrixKind::WeightedMean,
            repr: Repr::WeightedMean {
                weights: weights.clone(),
            },
        })
    }

    /// Cesaro matrix of order `alpha > -1`.
    pub fn cesaro(alpha: T, horizon: usize) -> Result<Self> {
        if !alpha.is_finite() || alpha <= -T::one() {
            return Err(Error::InvalidOrder(alpha.to_f64().unwrap_or(f64::NAN)));
        }
        let kernel = cesaro_coeff_table(alpha - T::one(), horizon);
        let norm = cesaro_coeff_table(alpha, horizon);
        for (n, value) in kernel.iter().chain(norm.iter()).enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite(n % (horizon + 1)));
            }
        }
        if let Some(n) = norm.iter().position(|&x| x == T::zero()) {
            return Err(Error::ZeroDiagonal(n));
        }
        Ok(NormalMatrix {
            horizon,
            kind: MatrixKind::Cesaro { alpha },
            repr: Repr::Cesaro { kernel, norm },
        })
    }

    /// Identity matrix.
    pub fn identity(horizon: usize) -> Self {
        NormalMatrix {
            horizon,
            kind: MatrixKind::Identity,
            repr: Repr::Identity,
        }
    }

    /// Custom matrix from explicit rows; row `n` must hold the `n + 1` entries
    /// `a(n,0), ..., a(n,n)`, all finite, with `a(n,n) != 0`.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptySequence);
        }
        for (n, row) in rows.iter().enumerate() {
            if row.len() != n + 1 {
                return Err(Error::BadRowLength {
                    row: n,
                    got: row.len(),
                    expect: n + 1,
                });
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite(n));
            }
            if row[n] == T::zero() {
                return Err(Error::ZeroDiagonal(n));
            }
        }
        Ok(NormalMatrix {
            horizon: rows.len() - 1,
            kind: MatrixKind::Custom,
            repr: Repr::Custom { rows },
        })
    }

    /// Loads a custom matrix from a text file: row `n` on line `n + 1` as
    /// `n + 1` comma-separated entries. Blank lines and `#` comments are
    /// skipped.
    pub fn from_csv(path: &Path) -> Result<Self> {
        let shown = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: shown.clone(),
            source,
        })?;
        let mut rows: Vec<Vec<T>> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut row = Vec::new();
            for piece in line.split(',') {
                let piece = piece.trim();
                let value: f64 = piece.parse().map_err(|_| Error::Parse {
                    path: shown.clone(),
                    line: lineno + 1,
                    msg: format!("invalid number {piece:?}"),
                })?;
                row.push(T::from_config(value));
            }
            let expect = rows.len() + 1;
            if row.len() != expect {
                return Err(Error::Parse {
                    path: shown.clone(),
                    line: lineno + 1,
                    msg: format!("row {} has {} entries, expected {}", rows.len(), row.len(), expect),
                });
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::Parse {
                path: shown,
                line: 0,
                msg: "no matrix rows".to_string(),
            });
        }
        Self::from_rows(rows)
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn kind(&self) -> &MatrixKind<T> {
        &self.kind
    }

    /// `a(n,v)`; zero above the diagonal. Panics past the horizon.
    pub fn entry(&self, n: usize, v: usize) -> T {
        assert!(n <= self.horizon, "row {n} past horizon {}", self.horizon);
        if v > n {
            return T::zero();
        }
        match &self.repr {
            Repr::WeightedMean { weights } => weights.weight(v) / weights.partial(n),
            Repr::Cesaro { kernel, norm } => kernel[n - v] / norm[n],
            Repr::Identity => {
                if v == n {
                    T::one()
                } else {
                    T::zero()
                }
            }
            Repr::Custom { rows } => rows[n][v],
        }
    }

    /// Row transform `A_n(s) = sum_{v=0..n} a(n,v) s_v`, evaluated in the
    /// factored form of the kind.
    pub fn apply_row(&self, s: &RealSequence<T>, n: usize) -> Result<T> {
        let horizon = self.horizon.min(s.horizon());
        if n > horizon {
            return Err(Error::OutOfHorizon { index: n, horizon });
        }
        Ok(match &self.repr {
            Repr::WeightedMean { weights } => {
                let mut acc = T::zero();
                for v in 0..=n {
                    acc += weights.weight(v) * s.at(v);
                }
                acc / weights.partial(n)
            }
            Repr::Cesaro { kernel, norm } => {
                let mut acc = T::zero();
                for v in 0..=n {
                    acc += kernel[n - v] * s.at(v);
                }
                acc / norm[n]
            }
            Repr::Identity => s.at(n),
            Repr::Custom { rows } => {
                let mut acc = T::zero();
                for v in 0..=n {
                    acc += rows[n][v] * s.at(v);
                }
                acc
            }
        })
    }

    /// Transform step `A_n(s) - A_{n-1}(s)`, with `A_{-1}(s) = 0`.
    pub fn delta_transform_direct(&self, s: &RealSequence<T>, n: usize) -> Result<T> {
        if n == 0 {
            return self.apply_row(s, 0);
        }
        Ok(self.apply_row(s, n)? - self.apply_row(s, n - 1)?)
    }
}

/// A normal matrix together with O(1) access to `abar` and `ahat`.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedMatrices<T> {
    source: NormalMatrix<T>,
    /// Materialised rows for custom matrices; built-in kinds use closed forms.
    custom: Option<(Vec<Vec<T>>, Vec<Vec<T>>)>,
}

impl<T: Scalar> DerivedMatrices<T> {
    /// Derives `abar`/`ahat` for the matrix. Custom matrices are materialised
    /// in O(N^2); built-in kinds answer from closed forms.
    pub fn derive(source: NormalMatrix<T>) -> Self {
        let custom = match &source.repr {
            Repr::Custom { rows } => Some(materialise(rows)),
            _ => None,
        };
        DerivedMatrices { source, custom }
    }

    pub fn source(&self) -> &NormalMatrix<T> {
        &self.source
    }

    pub fn horizon(&self) -> usize {
        self.source.horizon
    }

    /// `abar(n,v) = sum_{i=v..n} a(n,i)`; zero for `v > n`.
    pub fn abar(&self, n: usize, v: usize) -> T {
        assert!(n <= self.horizon(), "row {n} past horizon {}", self.horizon());
        if v > n {
            return T::zero();
        }
        match &self.source.repr {
            Repr::WeightedMean { weights } => {
                if v == 0 {
                    T::one()
                } else {
                    T::one() - weights.partial(v - 1) / weights.partial(n)
                }
            }
            Repr::Cesaro { norm, .. } => norm[n - v] / norm[n],
            Repr::Identity => T::one(),
            Repr::Custom { .. } => self.custom.as_ref().unwrap().0[n][v],
        }
    }

    /// `ahat(n,v)`; zero for `v > n`, so the `ahat(n, n+1) = 0` convention of
    /// the decomposition holds automatically.
    pub fn ahat(&self, n: usize, v: usize) -> T {
        assert!(n <= self.horizon(), "row {n} past horizon {}", self.horizon());
        if v > n {
            return T::zero();
        }
        if n == 0 {
            return self.source.entry(0, 0);
        }
        match &self.source.repr {
            Repr::WeightedMean { weights } => {
                if v == 0 {
                    T::zero()
                } else if v == n {
                    weights.weight(n) / weights.partial(n)
                } else {
                    weights.partial(v - 1) * weights.weight(n)
                        / (weights.partial(n) * weights.partial(n - 1))
                }
            }
            Repr::Cesaro { .. } => {
                if v == n {
                    self.abar(n, n)
                } else {
                    self.abar(n, v) - self.abar(n - 1, v)
                }
            }
            Repr::Identity => {
                if v == n {
                    T::one()
                } else {
                    T::zero()
                }
            }
            Repr::Custom { .. } => self.custom.as_ref().unwrap().1[n][v],
        }
    }

    /// Transform written against the series terms:
    /// `A_n(s) = sum_{v=0..n} abar(n,v) t_v`.
    pub fn transform_from_terms(&self, terms: &RealSequence<T>, n: usize) -> Result<T> {
        let horizon = self.horizon().min(terms.horizon());
        if n > horizon {
            return Err(Error::OutOfHorizon { index: n, horizon });
        }
        let mut acc = T::zero();
        for v in 0..=n {
            acc += self.abar(n, v) * terms.at(v);
        }
        Ok(acc)
    }

    /// Transform step written against the series terms:
    /// `A_n(s) - A_{n-1}(s) = sum_{v=0..n} ahat(n,v) t_v`.
    pub fn delta_from_terms(&self, terms: &RealSequence<T>, n: usize) -> Result<T> {
        let horizon = self.horizon().min(terms.horizon());
        if n > horizon {
            return Err(Error::OutOfHorizon { index: n, horizon });
        }
        let mut acc = T::zero();
        for v in 0..=n {
            acc += self.ahat(n, v) * terms.at(v);
        }
        Ok(acc)
    }
}

/// Builds `abar` rows by right-to-left suffix sums and `ahat` rows by fusing
/// the entrywise difference term by term, which keeps cancellation local:
/// `ahat(n,v) = a(n,n) + sum_{i=v..n-1} (a(n,i) - a(n-1,i))`.
fn materialise<T: Scalar>(rows: &[Vec<T>]) -> (Vec<Vec<T>>, Vec<Vec<T>>) {
    let count = rows.len();
    let mut abar: Vec<Vec<T>> = Vec::with_capacity(count);
    let mut ahat: Vec<Vec<T>> = Vec::with_capacity(count);
    for n in 0..count {
        let mut abar_row = vec![T::zero(); n + 1];
        let mut acc = T::zero();
        for v in (0..=n).rev() {
            acc += rows[n][v];
            abar_row[v] = acc;
        }
        let mut ahat_row = vec![T::zero(); n + 1];
        if n == 0 {
            ahat_row[0] = rows[0][0];
        } else {
            let mut acc = rows[n][n];
            ahat_row[n] = acc;
            for v in (0..n).rev() {
                acc += rows[n][v] - rows[n - 1][v];
                ahat_row[v] = acc;
            }
        }
        abar.push(abar_row);
        ahat.push(ahat_row);
    }
    (abar, ahat)
}

/// Verdicts for the matrix-side hypotheses of the main theorem.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixConditionReport<T> {
    /// All entries nonnegative.
    pub nonnegative: CheckOutcome,
    /// `abar(n,0) = 1` for every row.
    pub unit_first_column: CheckOutcome,
    /// Columns nonincreasing in `n`: `a(n-1,v) >= a(n,v)` for `n >= v + 1`.
    pub column_monotone: CheckOutcome,
    /// `a(n,n) = O(p_n / P_n)`.
    pub diagonal_weight_ratio: GrowthWitness<T>,
    /// `sum_{v=1..n-1} a(v,v) ahat(n,v+1) = O(a(n,n))`.
    pub diagonal_domination: GrowthWitness<T>,
}

impl<T: Scalar> MatrixConditionReport<T> {
    pub fn rollup(&self) -> Rollup {
        Rollup::combine_all([
            self.nonnegative.rollup(),
            self.unit_first_column.rollup(),
            self.column_monotone.rollup(),
            self.diagonal_weight_ratio.rollup(),
            self.diagonal_domination.rollup(),
        ])
    }

    /// Re-keys the five verdicts under their condition ids so they compose
    /// with the factor and weight reports.
    pub fn as_report(&self) -> HypothesisReport<T> {
        let mut report = HypothesisReport::new();
        report.insert(
            condition_id::MATRIX_NONNEGATIVE,
            ConditionEntry::Check(self.nonnegative),
        );
        report.insert(
            condition_id::MATRIX_UNIT_COLUMN,
            ConditionEntry::Check(self.unit_first_column),
        );
        report.insert(
            condition_id::MATRIX_COLUMN_MONOTONE,
            ConditionEntry::Check(self.column_monotone),
        );
        report.insert(
            condition_id::MATRIX_DIAGONAL_RATIO,
            ConditionEntry::Witness(self.diagonal_weight_ratio.clone()),
        );
        report.insert(
            condition_id::MATRIX_DIAGONAL_DOMINATION,
            ConditionEntry::Witness(self.diagonal_domination.clone()),
        );
        report
    }
}

/// Checks the matrix-side hypotheses against a weight sequence.
///
/// The exact checks allow `params.abs_tol` of rounding slack; the two `O(...)`
/// conditions become growth witnesses with `params.slope_tol`.
pub fn check_matrix_conditions<T: Scalar>(
    derived: &DerivedMatrices<T>,
    weights: &WeightSequence<T>,
    params: &CheckParams<T>,
) -> Result<MatrixConditionReport<T>> {
    let n_max = derived.horizon().min(weights.horizon());
    let matrix = derived.source();
    let abs_tol = params.abs_tol;

    let mut nonnegative = CheckOutcome::passed();
    'pos: for n in 0..=n_max {
        for v in 0..=n {
            if matrix.entry(n, v) < T::zero() {
                nonnegative = CheckOutcome::failed_at(ViolationAt::Cell { row: n, col: v });
                break 'pos;
            }
        }
    }

    let mut unit_first_column = CheckOutcome::passed();
    for n in 0..=n_max {
        if (derived.abar(n, 0) - T::one()).abs() > abs_tol {
            unit_first_column = CheckOutcome::failed_at(ViolationAt::Index(n));
            break;
        }
    }

    let mut column_monotone = CheckOutcome::passed();
    'mono: for n in 1..=n_max {
        for v in 0..n {
            if matrix.entry(n, v) > matrix.entry(n - 1, v) + abs_tol {
                column_monotone = CheckOutcome::failed_at(ViolationAt::Cell { row: n, col: v });
                break 'mono;
            }
        }
    }

    let diag = RealSequence::from_fn(n_max, crate::seq::SequenceOrigin::Tabulated, |n| {
        matrix.entry(n, n)
    })?;
    let weight_ratio = RealSequence::from_fn(n_max, crate::seq::SequenceOrigin::Tabulated, |n| {
        weights.weight(n) / weights.partial(n)
    })?;
    let diagonal_weight_ratio =
        growth_witness(&diag, &weight_ratio, params.start_index, params.slope_tol)?;

    let domination = RealSequence::from_fn(n_max, crate::seq::SequenceOrigin::Tabulated, |n| {
        let mut acc = T::zero();
        for v in 1..n {
            acc += matrix.entry(v, v) * derived.ahat(n, v + 1);
        }
        acc
    })?;
    let diagonal_domination = growth_witness(
        &domination,
        &diag,
        params.start_index.max(1),
        params.slope_tol,
    )?;

    Ok(MatrixConditionReport {
        nonnegative,
        unit_first_column,
        column_monotone,
        diagonal_weight_ratio,
        diagonal_domination,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::WitnessVerdict;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn unit_weights(horizon: usize) -> WeightSequence<f64> {
        WeightSequence::from_values(vec![1.0; horizon + 1]).unwrap()
    }

    fn linear_weights(horizon: usize) -> WeightSequence<f64> {
        WeightSequence::from_values((0..=horizon).map(|n| n as f64 + 1.0).collect()).unwrap()
    }

    fn wm_rows(w: &WeightSequence<f64>) -> Vec<Vec<f64>> {
        (0..=w.horizon())
            .map(|n| (0..=n).map(|v| w.weight(v) / w.partial(n)).collect())
            .collect()
    }

    /// Independent per-entry oracle: `abar` by direct summation, `ahat` as the
    /// difference of separately computed `abar` rows.
    fn naive_derived(rows: &[Vec<f64>]) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
        let count = rows.len();
        let abar_at = |n: usize, v: usize| -> f64 {
            if v > n {
                0.0
            } else {
                (v..=n).map(|i| rows[n][i]).sum()
            }
        };
        let mut abar = Vec::with_capacity(count);
        let mut ahat = Vec::with_capacity(count);
        for n in 0..count {
            abar.push((0..=n).map(|v| abar_at(n, v)).collect::<Vec<_>>());
            let row: Vec<f64> = (0..=n)
                .map(|v| {
                    if n == 0 {
                        rows[0][0]
                    } else {
                        abar_at(n, v) - abar_at(n - 1, v)
                    }
                })
                .collect();
            ahat.push(row);
        }
        (abar, ahat)
    }

    fn random_matrix(rng: &mut ChaCha8Rng, horizon: usize) -> NormalMatrix<f64> {
        let rows: Vec<Vec<f64>> = (0..=horizon)
            .map(|n| {
                (0..=n)
                    .map(|v| {
                        if v == n {
                            rng.gen_range(0.1..=1.0)
                        } else {
                            rng.gen_range(0.0..=1.0)
                        }
                    })
                    .collect()
            })
            .collect();
        NormalMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn weighted_mean_unit_entries_are_reciprocal_row_lengths() {
        let w = unit_weights(5);
        let m = NormalMatrix::weighted_mean(&w).unwrap();
        for n in 0..=5 {
            for v in 0..=n {
                assert_eq!(m.entry(n, v), 1.0 / (n as f64 + 1.0));
            }
            assert_eq!(m.entry(n, n), w.weight(n) / w.partial(n));
        }
        assert_eq!(m.entry(3, 4), 0.0);
    }

    #[test]
    fn weighted_mean_rows_sum_to_one() {
        let w = linear_weights(40);
        let m = NormalMatrix::weighted_mean(&w).unwrap();
        for n in 0..=40 {
            let sum: f64 = (0..=n).map(|v| m.entry(n, v)).sum();
            assert!((sum - 1.0).abs() <= 1e-12, "n={n}");
        }
    }

    #[test]
    fn first_order_cesaro_matches_unit_weighted_mean_bitwise() {
        let n_max = 300;
        let c = NormalMatrix::cesaro(1.0, n_max).unwrap();
        let m = NormalMatrix::weighted_mean(&unit_weights(n_max)).unwrap();
        for n in 0..=n_max {
            for v in 0..=n {
                assert_eq!(c.entry(n, v), m.entry(n, v), "n={n} v={v}");
            }
        }
    }

    #[test]
    fn zeroth_order_cesaro_is_identity() {
        let c = NormalMatrix::cesaro(0.0, 20).unwrap();
        let id = NormalMatrix::identity(20);
        for n in 0..=20 {
            for v in 0..=n {
                assert_eq!(c.entry(n, v), id.entry(n, v), "n={n} v={v}");
            }
        }
    }

    #[test]
    fn cesaro_rows_sum_to_one() {
        let c = NormalMatrix::cesaro(0.5, 60).unwrap();
        for n in 0..=60 {
            let sum: f64 = (0..=n).map(|v| c.entry(n, v)).sum();
            assert!((sum - 1.0).abs() <= 1e-12, "n={n}");
        }
    }

    #[test]
    fn cesaro_rejects_low_orders() {
        assert!(matches!(
            NormalMatrix::cesaro(-1.0, 10).unwrap_err(),
            Error::InvalidOrder(_)
        ));
    }

    #[test]
    fn from_rows_validates_shape_and_diagonal() {
        assert!(matches!(
            NormalMatrix::from_rows(vec![vec![1.0], vec![1.0, 2.0, 3.0]]).unwrap_err(),
            Error::BadRowLength { row: 1, got: 3, expect: 2 }
        ));
        assert!(matches!(
            NormalMatrix::from_rows(vec![vec![1.0], vec![1.0, 0.0]]).unwrap_err(),
            Error::ZeroDiagonal(1)
        ));
        assert!(matches!(
            NormalMatrix::from_rows(vec![vec![f64::INFINITY]]).unwrap_err(),
            Error::NonFinite(0)
        ));
        assert!(matches!(
            NormalMatrix::<f64>::from_rows(vec![]).unwrap_err(),
            Error::EmptySequence
        ));
    }

    #[test]
    fn csv_round_trip_and_errors() {
        let dir = tempfile::tempdir().unwrap();
        let good = dir.path().join("m.csv");
        std::fs::write(&good, "# comment\n1\n0.5, 0.5\n0.25,0.25,0.5\n").unwrap();
        let m = NormalMatrix::<f64>::from_csv(&good).unwrap();
        assert_eq!(m.horizon(), 2);
        assert_eq!(m.entry(1, 0), 0.5);
        assert_eq!(m.entry(2, 2), 0.5);

        let bad_number = dir.path().join("bad_number.csv");
        std::fs::write(&bad_number, "1\n0.5, abc\n").unwrap();
        let err = NormalMatrix::<f64>::from_csv(&bad_number).unwrap_err();
        assert!(err.to_string().contains("bad_number.csv:2"), "{err}");

        let bad_shape = dir.path().join("bad_shape.csv");
        std::fs::write(&bad_shape, "1\n0.5\n").unwrap();
        let err = NormalMatrix::<f64>::from_csv(&bad_shape).unwrap_err();
        assert!(err.to_string().contains("bad_shape.csv:2"), "{err}");
        assert!(err.to_string().contains("expected 2"), "{err}");
    }

    #[test]
    fn apply_row_examples() {
        let s = RealSequence::tabulated(vec![1.0, 0.0, 1.0]).unwrap();
        let id = NormalMatrix::identity(2);
        assert_eq!(id.apply_row(&s, 1).unwrap(), 0.0);
        let wm = NormalMatrix::weighted_mean(&unit_weights(2)).unwrap();
        assert_eq!(wm.apply_row(&s, 2).unwrap(), 2.0 / 3.0);
        assert!(matches!(
            wm.apply_row(&s, 3).unwrap_err(),
            Error::OutOfHorizon { index: 3, horizon: 2 }
        ));
    }

    #[test]
    fn delta_transform_of_identity_recovers_terms() {
        let terms = RealSequence::tabulated(vec![0.0, 1.0, -1.0, 2.0]).unwrap();
        let s = terms.partial_sums().unwrap();
        let id = NormalMatrix::identity(3);
        for n in 0..=3 {
            assert_eq!(id.delta_transform_direct(&s, n).unwrap(), terms.at(n));
        }
    }

    #[test]
    fn weighted_mean_closed_forms_match_hand_values() {
        let d = DerivedMatrices::derive(NormalMatrix::weighted_mean(&unit_weights(3)).unwrap());
        assert_eq!(d.abar(3, 2), 0.5);
        assert_eq!(d.abar(3, 0), 1.0);
        assert!((d.ahat(3, 2) - 1.0 / 6.0).abs() <= 1e-15);
        assert_eq!(d.ahat(3, 0), 0.0);
        assert_eq!(d.ahat(0, 0), 1.0);
    }

    #[test]
    fn first_column_of_abar_is_one_for_all_kinds() {
        let kinds: Vec<DerivedMatrices<f64>> = vec![
            DerivedMatrices::derive(NormalMatrix::weighted_mean(&linear_weights(30)).unwrap()),
            DerivedMatrices::derive(NormalMatrix::cesaro(0.5, 30).unwrap()),
            DerivedMatrices::derive(NormalMatrix::identity(30)),
        ];
        for d in &kinds {
            for n in 0..=30 {
                assert_eq!(d.abar(n, 0), 1.0, "kind={:?} n={n}", d.source().kind());
            }
        }
    }

    #[test]
    fn ahat_diagonal_equals_matrix_diagonal_bitwise() {
        let w = linear_weights(50);
        let mats = vec![
            NormalMatrix::weighted_mean(&w).unwrap(),
            NormalMatrix::cesaro(0.5, 50).unwrap(),
            NormalMatrix::identity(50),
        ];
        for m in mats {
            let diag_src = m.clone();
            let d = DerivedMatrices::derive(m);
            for n in 0..=50 {
                assert_eq!(d.ahat(n, n), diag_src.entry(n, n), "n={n}");
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m = random_matrix(&mut rng, 40);
        let diag: Vec<f64> = (0..=40).map(|n| m.entry(n, n)).collect();
        let d = DerivedMatrices::derive(m);
        for (n, &a) in diag.iter().enumerate() {
            assert_eq!(d.ahat(n, n), a, "n={n}");
        }
    }

    #[test]
    fn custom_derivation_matches_naive_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for round in 0..5 {
            let m = random_matrix(&mut rng, 60);
            let rows: Vec<Vec<f64>> = (0..=60)
                .map(|n| (0..=n).map(|v| m.entry(n, v)).collect())
                .collect();
            let (abar_o, ahat_o) = naive_derived(&rows);
            let d = DerivedMatrices::derive(m);
            for n in 0..=60 {
                for v in 0..=n {
                    let da = (d.abar(n, v) - abar_o[n][v]).abs();
                    assert!(
                        da <= 1e-12 * (1.0 + abar_o[n][v].abs()),
                        "abar round={round} n={n} v={v}"
                    );
                    let dh = (d.ahat(n, v) - ahat_o[n][v]).abs();
                    assert!(
                        dh <= 1e-12 * (1.0 + ahat_o[n][v].abs()),
                        "ahat round={round} n={n} v={v}"
                    );
                }
            }
        }
    }

    #[test]
    fn closed_form_ahat_matches_generic_route_for_weighted_mean() {
        let w = linear_weights(80);
        let closed = DerivedMatrices::derive(NormalMatrix::weighted_mean(&w).unwrap());
        let generic = DerivedMatrices::derive(NormalMatrix::from_rows(wm_rows(&w)).unwrap());
        for n in 0..=80 {
            for v in 0..=n {
                let diff = (closed.ahat(n, v) - generic.ahat(n, v)).abs();
                assert!(diff <= 1e-12 * (1.0 + generic.ahat(n, v).abs()), "n={n} v={v}");
            }
        }
    }

    #[test]
    fn transform_identities_hold_with_nonzero_leading_term() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = random_matrix(&mut rng, 40);
        let values: Vec<f64> = (0..=40).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let terms = RealSequence::tabulated(values).unwrap();
        assert!(terms.at(0) != 0.0 || terms.at(1) != 0.0);
        let s = terms.partial_sums().unwrap();
        let d = DerivedMatrices::derive(m);
        for n in 0..=40 {
            let direct = d.source().apply_row(&s, n).unwrap();
            let via_abar = d.transform_from_terms(&terms, n).unwrap();
            assert!(
                (direct - via_abar).abs() <= 1e-10 * (1.0 + direct.abs()),
                "transform n={n}"
            );
            let delta_direct = d.source().delta_transform_direct(&s, n).unwrap();
            let via_ahat = d.delta_from_terms(&terms, n).unwrap();
            assert!(
                (delta_direct - via_ahat).abs() <= 1e-10 * (1.0 + delta_direct.abs()),
                "delta n={n}"
            );
        }
    }

    #[test]
    fn weighted_mean_satisfies_all_matrix_conditions() {
        let params = CheckParams::default();
        let geometric =
            WeightSequence::from_values((0..=600).map(|n| 1.02f64.powi(n as i32)).collect())
                .unwrap();
        for (name, w) in [
            ("unit", unit_weights(600)),
            ("linear", linear_weights(600)),
            ("geometric", geometric),
        ] {
            let d = DerivedMatrices::derive(NormalMatrix::weighted_mean(&w).unwrap());
            let r = check_matrix_conditions(&d, &w, &params).unwrap();
            assert!(r.nonnegative.pass, "{name}");
            assert!(r.unit_first_column.pass, "{name}");
            assert!(r.column_monotone.pass, "{name}");
            assert_eq!(r.diagonal_weight_ratio.ratio_sup(), 1.0, "{name}");
            assert_eq!(
                r.diagonal_weight_ratio.verdict(),
                WitnessVerdict::Bounded,
                "{name}"
            );
            assert!(r.diagonal_domination.ratio_sup() <= 1.0 + 1e-12, "{name}");
            assert_eq!(
                r.diagonal_domination.verdict(),
                WitnessVerdict::Bounded,
                "{name}"
            );
            assert_eq!(r.rollup(), Rollup::Pass, "{name}");
        }
    }

    #[test]
    fn identity_with_unit_weights_fails_only_the_diagonal_ratio() {
        let params = CheckParams::default();
        let w = unit_weights(800);
        let d = DerivedMatrices::derive(NormalMatrix::identity(800));
        let r = check_matrix_conditions(&d, &w, &params).unwrap();
        assert!(r.nonnegative.pass);
        assert!(r.unit_first_column.pass);
        assert!(r.column_monotone.pass);
        assert_eq!(
            r.diagonal_weight_ratio.verdict(),
            WitnessVerdict::UnboundedTrend
        );
        // The diagonal stays at 1 while p_n/P_n = 1/(n+1): the ratio grows
        // like n, so the finite-tail slope sits just under 1.
        assert!((r.diagonal_weight_ratio.tail_slope() - 1.0).abs() < 0.01);
        assert_eq!(r.diagonal_domination.verdict(), WitnessVerdict::Bounded);
        assert_eq!(r.rollup(), Rollup::Fail);
    }

    #[test]
    fn half_order_cesaro_with_unit_weights_fails_diagonal_ratio() {
        let params = CheckParams::default();
        let w = unit_weights(1000);
        let d = DerivedMatrices::derive(NormalMatrix::cesaro(0.5, 1000).unwrap());
        let r = check_matrix_conditions(&d, &w, &params).unwrap();
        assert!(r.nonnegative.pass);
        assert!(r.unit_first_column.pass);
        assert!(r.column_monotone.pass);
        assert_eq!(
            r.diagonal_weight_ratio.verdict(),
            WitnessVerdict::UnboundedTrend
        );
        assert!((r.diagonal_weight_ratio.tail_slope() - 0.5).abs() < 0.02);
    }

    #[test]
    fn planted_monotonicity_violation_is_located_exactly() {
        let w = unit_weights(60);
        let mut rows = wm_rows(&w);
        rows[5][2] += 0.05;
        let d = DerivedMatrices::derive(NormalMatrix::from_rows(rows).unwrap());
        let r = check_matrix_conditions(&d, &w, &CheckParams::default()).unwrap();
        assert!(!r.column_monotone.pass);
        assert_eq!(
            r.column_monotone.violation,
            Some(ViolationAt::Cell { row: 5, col: 2 })
        );
        assert_eq!(r.rollup(), Rollup::Fail);
    }

    #[test]
    fn negative_entry_is_flagged() {
        let rows = vec![vec![1.0], vec![-0.25, 1.0]];
        let d = DerivedMatrices::derive(NormalMatrix::from_rows(rows).unwrap());
        let r = check_matrix_conditions(&d, &unit_weights(1), &CheckParams::default());
        // horizon 1 is too short for a tail window but the checks still run
        let r = r.unwrap();
        assert!(!r.nonnegative.pass);
        assert_eq!(
            r.nonnegative.violation,
            Some(ViolationAt::Cell { row: 1, col: 0 })
        );
    }
}
