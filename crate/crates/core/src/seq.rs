//! Finite prefixes of real sequences and positive weight sequences.
//!
//! A sequence with horizon `N` stores the `N + 1` values at indices `0..=N`.
//! Constructors validate that every stored value is finite; weight sequences
//! additionally require strict positivity and carry their partial sums.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Where a sequence's values came from.
#[derive(Debug, Clone, PartialEq)]
pub enum SequenceOrigin {
    /// Generated by a named family, with its numeric parameters.
    Family {
        name: String,
        params: Vec<(String, f64)>,
    },
    /// Supplied value by value.
    Tabulated,
}

impl SequenceOrigin {
    pub fn family(name: &str) -> Self {
        SequenceOrigin::Family {
            name: name.to_string(),
            params: Vec::new(),
        }
    }

    pub fn family_with(name: &str, params: &[(&str, f64)]) -> Self {
        SequenceOrigin::Family {
            name: name.to_string(),
            params: params
                .iter()
                .map(|(k, v)| (k.to_string(), *v))
                .collect(),
        }
    }

    /// Compact text form, e.g. `alternating_power(delta=0.5)` or `tabulated`.
    pub fn label(&self) -> String {
        match self {
            SequenceOrigin::Tabulated => "tabulated".to_string(),
            SequenceOrigin::Family { name, params } => {
                if params.is_empty() {
                    name.clone()
                } else {
                    let args: Vec<String> =
                        params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    format!("{}({})", name, args.join(","))
                }
            }
        }
    }
}

/// A finite prefix `x_0, ..., x_N` of a real sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct RealSequence<T> {
    values: Vec<T>,
    origin: SequenceOrigin,
}

impl<T: Scalar> RealSequence<T> {
    /// Builds a sequence, rejecting empty input and non-finite values.
    pub fn new(values: Vec<T>, origin: SequenceOrigin) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySequence);
        }
        for (i, v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite(i));
            }
        }
        Ok(RealSequence { values, origin })
    }

    /// Builds a tabulated sequence.
    pub fn tabulated(values: Vec<T>) -> Result<Self> {
        Self::new(values, SequenceOrigin::Tabulated)
    }

    /// Builds a sequence by evaluating `f` at each index `0..=horizon`.
    pub fn from_fn(horizon: usize, origin: SequenceOrigin, f: impl Fn(usize) -> T) -> Result<Self> {
        Self::new((0..=horizon).map(f).collect(), origin)
    }

    /// Wraps values that are finite by construction.
    fn from_validated(values: Vec<T>, origin: SequenceOrigin) -> Self {
        debug_assert!(values.iter().all(|v| v.is_finite()));
        RealSequence { values, origin }
    }

    /// Largest stored index `N`.
    pub fn horizon(&self) -> usize {
        self.values.len() - 1
    }

    /// Number of stored values, `N + 1`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn origin(&self) -> &SequenceOrigin {
        &self.origin
    }

    pub fn get(&self, n: usize) -> Option<T> {
        self.values.get(n).copied()
    }

    /// Value at index `n`; panics past the horizon.
    pub fn at(&self, n: usize) -> T {
        self.values[n]
    }

    /// Partial sums `s_n = x_0 + ... + x_n`, same horizon.
    ///
    /// Fails only if the running sum overflows the scalar range.
    pub fn partial_sums(&self) -> Result<Self> {
        let mut acc = T::zero();
        let mut out = Vec::with_capacity(self.values.len());
        for (i, &v) in self.values.iter().enumerate() {
            acc = acc + v;
            if !acc.is_finite() {
                return Err(Error::NonFinite(i));
            }
            out.push(acc);
        }
        Ok(Self::from_validated(out, SequenceOrigin::Tabulated))
    }

    /// Forward differences `d_n = x_n - x_{n+1}` for `n = 0..=N-1`.
    ///
    /// The horizon shrinks by one; fails on horizon 0.
    pub fn forward_diff(&self) -> Result<Self> {
        if self.horizon() == 0 {
            return Err(Error::HorizonTooSmall { need: 1, got: 0 });
        }
        let out: Vec<T> = self
            .values
            .windows(2)
            .map(|w| w[0] - w[1])
            .collect();
        Ok(Self::from_validated(out, SequenceOrigin::Tabulated))
    }

    /// Pointwise absolute value.
    pub fn abs(&self) -> Self {
        let out: Vec<T> = self.values.iter().map(|v| v.abs()).collect();
        Self::from_validated(out, self.origin.clone())
    }

    /// Running maximum `z_n = max(x_0, ..., x_n)`.
    pub fn running_max(&self) -> Self {
        let mut best = self.values[0];
        let out: Vec<T> = self
            .values
            .iter()
            .map(|&v| {
                best = best.max(v);
                best
            })
            .collect();
        Self::from_validated(out, SequenceOrigin::Tabulated)
    }

    /// Prefix of the sequence up to index `horizon`.
    pub fn truncated(&self, horizon: usize) -> Result<Self> {
        if horizon > self.horizon() {
            return Err(Error::OutOfHorizon {
                index: horizon,
                horizon: self.horizon(),
            });
        }
        Ok(Self::from_validated(
            self.values[..=horizon].to_vec(),
            self.origin.clone(),
        ))
    }
}

/// A strictly positive weight sequence `p_n` with its partial sums
/// `P_n = p_0 + ... + p_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSequence<T> {
    weights: RealSequence<T>,
    partials: RealSequence<T>,
}

impl<T: Scalar> WeightSequence<T> {
    /// Validates positivity and accumulates partial sums.
    ///
    /// Positivity makes `P_n` strictly increasing; the constructor also rejects
    /// weights so small that the floating-point partial sums stall, and partial
    /// sums that overflow.
    pub fn new(weights: RealSequence<T>) -> Result<Self> {
        for (i, &p) in weights.values().iter().enumerate() {
            if p <= T::zero() {
                return Err(Error::NonPositiveWeight {
                    index: i,
                    value: p.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        let partials = weights.partial_sums()?;
        for i in 1..partials.len() {
            if partials.at(i) <= partials.at(i - 1) {
                return Err(Error::DegeneratePartials(i));
            }
        }
        Ok(WeightSequence { weights, partials })
    }

    /// Convenience constructor from raw values.
    pub fn from_values(values: Vec<T>) -> Result<Self> {
        Self::new(RealSequence::tabulated(values)?)
    }

    pub fn horizon(&self) -> usize {
        self.weights.horizon()
    }

    /// `p_n`.
    pub fn weight(&self, n: usize) -> T {
        self.weights.at(n)
    }

    /// `P_n`.
    pub fn partial(&self, n: usize) -> T {
        self.partials.at(n)
    }

    /// `P_{n-1}`, with `P_{-1} = 0`.
    pub fn partial_before(&self, n: usize) -> T {
        if n == 0 {
            T::zero()
        } else {
            self.partials.at(n - 1)
        }
    }

    pub fn weights(&self) -> &RealSequence<T> {
        &self.weights
    }

    pub fn partials(&self) -> &RealSequence<T> {
        &self.partials
    }

    pub fn truncated(&self, horizon: usize) -> Result<Self> {
        Self::new(self.weights.truncated(horizon)?)
    }
}
