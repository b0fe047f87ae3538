//! Four-term decomposition of the factored transform step.
//!
//! Given series terms `a`, weights `p`, and factors `lambda`, the factored
//! series has terms `t_v = a_v P_v lambda_v / (v p_v)` (with `t_0 = 0`). The
//! step of the matrix transform of that series splits, by Abel summation,
//! into four pieces:
//!
//! 1. the boundary term `a(n,n) P_n lambda_n s_n / (n p_n)`,
//! 2. the `ahat`-difference sum over `ahat(n,v) - ahat(n,v+1)`,
//! 3. the weight-ratio-difference sum over `Delta(P_v/(v p_v))`,
//! 4. the factor-difference sum over `Delta lambda_v`,
//!
//! where all differences are `x_v - x_{v+1}` and `ahat(n, n+1) = 0`. The
//! residual against the direct evaluation `sum_v ahat(n,v) t_v` measures how
//! exactly the identity holds; it should sit at rounding level whenever
//! `a_0 = 0`.

use crate::error::{Error, Result};
use crate::matrices::DerivedMatrices;
use crate::scalar::Scalar;
use crate::seq::{RealSequence, SequenceOrigin, WeightSequence};
use crate::summability::{IndexMethod, IndexSeries};

/// The four split terms, the direct evaluation, and their gap at one index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbelSplit<T> {
    pub n: usize,
    /// Boundary, `ahat`-difference, ratio-difference, and factor-difference
    /// terms, in that order.
    pub terms: [T; 4],
    /// `sum_{v=1..n} ahat(n,v) t_v`.
    pub direct: T,
    /// `|terms[0] + terms[1] + terms[2] + terms[3] - direct|`.
    pub residual: T,
}

impl<T: Scalar> AbelSplit<T> {
    /// Sum of the four split terms.
    pub fn recombined(&self) -> T {
        self.terms[0] + self.terms[1] + self.terms[2] + self.terms[3]
    }
}

fn aligned_horizon<T: Scalar>(
    terms: &RealSequence<T>,
    weights: &WeightSequence<T>,
    lambda: &RealSequence<T>,
) -> Result<usize> {
    let n = terms.horizon();
    for other in [weights.horizon(), lambda.horizon()] {
        if other != n {
            return Err(Error::HorizonMismatch { left: n, right: other });
        }
    }
    Ok(n)
}

/// Terms of the factored series: `t_0 = 0`,
/// `t_n = a_n P_n lambda_n / (n p_n)`.
pub fn factored_terms<T: Scalar>(
    terms: &RealSequence<T>,
    weights: &WeightSequence<T>,
    lambda: &RealSequence<T>,
) -> Result<RealSequence<T>> {
    let n_max = aligned_horizon(terms, weights, lambda)?;
    let values = (0..=n_max)
        .map(|n| {
            if n == 0 {
                T::zero()
            } else {
                terms.at(n) * lambda.at(n) * weights.partial(n)
                    / (T::from_index(n) * weights.weight(n))
            }
        })
        .collect();
    RealSequence::new(values, SequenceOrigin::Tabulated)
}

struct SplitContext<'a, T> {
    derived: &'a DerivedMatrices<T>,
    lambda: &'a RealSequence<T>,
    s: RealSequence<T>,
    /// `q_v = P_v / (v p_v)`, with `q_0 = 0` unused.
    q: Vec<T>,
    /// Factored series terms.
    t: Vec<T>,
}

impl<'a, T: Scalar> SplitContext<'a, T> {
    fn new(
        derived: &'a DerivedMatrices<T>,
        terms: &RealSequence<T>,
        weights: &'a WeightSequence<T>,
        lambda: &'a RealSequence<T>,
    ) -> Result<Self> {
        let n_max = aligned_horizon(terms, weights, lambda)?;
        if derived.horizon() != n_max {
            return Err(Error::HorizonMismatch {
                left: derived.horizon(),
                right: n_max,
            });
        }
        let s = terms.partial_sums()?;
        let mut q = Vec::with_capacity(n_max + 1);
        q.push(T::zero());
        for v in 1..=n_max {
            q.push(weights.partial(v) / (T::from_index(v) * weights.weight(v)));
        }
        let t = factored_terms(terms, weights, lambda)?.values().to_vec();
        Ok(SplitContext {
            derived,
            lambda,
            s,
            q,
            t,
        })
    }

    fn split_at(&self, n: usize) -> AbelSplit<T> {
        let d = self.derived;
        let lam = self.lambda;
        let boundary = d.source().entry(n, n) * self.q[n] * lam.at(n) * self.s.at(n);
        let mut ahat_diff = T::zero();
        let mut ratio_diff = T::zero();
        let mut factor_diff = T::zero();
        for v in 1..n {
            let hv = d.ahat(n, v);
            let hv1 = d.ahat(n, v + 1);
            let sv = self.s.at(v);
            ahat_diff += (hv - hv1) * self.q[v] * lam.at(v) * sv;
            ratio_diff += hv1 * lam.at(v) * (self.q[v] - self.q[v + 1]) * sv;
            factor_diff += hv1 * self.q[v + 1] * (lam.at(v) - lam.at(v + 1)) * sv;
        }
        let mut direct = T::zero();
        for v in 1..=n {
            direct += d.ahat(n, v) * self.t[v];
        }
        let terms = [boundary, ahat_diff, ratio_diff, factor_diff];
        let residual = (terms[0] + terms[1] + terms[2] + terms[3] - direct).abs();
        AbelSplit {
            n,
            terms,
            direct,
            residual,
        }
    }
}

/// Splits the factored transform step at one index `n >= 1`.
pub fn abel_split<T: Scalar>(
    derived: &DerivedMatrices<T>,
    terms: &RealSequence<T>,
    weights: &WeightSequence<T>,
    lambda: &RealSequence<T>,
    n: usize,
) -> Result<AbelSplit<T>> {
    if n == 0 {
        return Err(Error::HorizonTooSmall { need: 1, got: 0 });
    }
    let ctx = SplitContext::new(derived, terms, weights, lambda)?;
    if n > terms.horizon() {
        return Err(Error::OutOfHorizon {
            index: n,
            horizon: terms.horizon(),
        });
    }
    Ok(ctx.split_at(n))
}

/// Splits at every index `1..=n_max`.
pub fn abel_splits_all<T: Scalar>(
    derived: &DerivedMatrices<T>,
    terms: &RealSequence<T>,
    weights: &WeightSequence<T>,
    lambda: &RealSequence<T>,
    n_max: usize,
) -> Result<Vec<AbelSplit<T>>> {
    if n_max > terms.horizon() {
        return Err(Error::OutOfHorizon {
            index: n_max,
            horizon: terms.horizon(),
        });
    }
    let ctx = SplitContext::new(derived, terms, weights, lambda)?;
    Ok((1..=n_max).map(|n| ctx.split_at(n)).collect())
}

/// Index partials for each of the four split terms: series `r` accumulates
/// `(P_n/p_n)^{k-1} |terms[r]|^k` over the splits, which must cover
/// `n = 1..=N` in order.
pub fn term_index_partials<T: Scalar>(
    splits: &[AbelSplit<T>],
    weights: &WeightSequence<T>,
    k: T,
) -> Result<[IndexSeries<T>; 4]> {
    if !k.is_finite() || k < T::one() {
        return Err(Error::InvalidExponent(k.to_f64().unwrap_or(f64::NAN)));
    }
    if let Some(last) = splits.last() {
        if last.n > weights.horizon() {
            return Err(Error::OutOfHorizon {
                index: last.n,
                horizon: weights.horizon(),
            });
        }
    }
    let km1 = k - T::one();
    let mut out = Vec::with_capacity(4);
    for r in 0..4 {
        let mut partials = Vec::with_capacity(splits.len() + 1);
        partials.push(T::zero());
        let mut acc = T::zero();
        for split in splits {
            let n = split.n;
            let ratio = weights.partial(n) / weights.weight(n);
            acc += ratio.powf(km1) * split.terms[r].abs().powf(k);
            partials.push(acc);
        }
        out.push(IndexSeries::from_partials(
            IndexMethod::Matrix,
            k,
            RealSequence::new(partials, SequenceOrigin::Tabulated)?,
        ));
    }
    Ok(out.try_into().expect("built exactly four series"))
}
