//! Built-in generator families for series terms, weights, and the factor
//! sequences `X` and `lambda`.
//!
//! Term families emit 0 at index 0: the decomposition and the worked
//! identities treat the series as starting at `n = 1`, so the index-0 slot
//! only pads the horizon.

use crate::error::Result;
use crate::scalar::Scalar;
use crate::seq::{RealSequence, SequenceOrigin, WeightSequence};

/// `a_0 = 0`, `a_n = (-1)^{n+1}`.
pub fn terms_alternating<T: Scalar>(horizon: usize) -> Result<RealSequence<T>> {
    RealSequence::from_fn(horizon, SequenceOrigin::family("alternating"), |n| {
        if n == 0 {
            T::zero()
        } else if n % 2 == 1 {
            T::one()
        } else {
            -T::one()
        }
    })
}

/// `a_0 = 0`, `a_n = (-1)^{n+1} (n+1)^{-delta}`.
pub fn terms_alternating_power<T: Scalar>(horizon: usize, delta: f64) -> Result<RealSequence<T>> {
    let d = T::from_config(delta);
    RealSequence::from_fn(
        horizon,
        SequenceOrigin::family_with("alternating_power", &[("delta", delta)]),
        |n| {
            if n == 0 {
                T::zero()
            } else {
                let sign = if n % 2 == 1 { T::one() } else { -T::one() };
                sign * T::from_index(n + 1).powf(-d)
            }
        },
    )
}

/// `p_n = 1`.
pub fn weights_unit<T: Scalar>(horizon: usize) -> Result<WeightSequence<T>> {
    WeightSequence::new(RealSequence::from_fn(
        horizon,
        SequenceOrigin::family("unit"),
        |_| T::one(),
    )?)
}

/// `p_n = n + 1`.
pub fn weights_linear<T: Scalar>(horizon: usize) -> Result<WeightSequence<T>> {
    WeightSequence::new(RealSequence::from_fn(
        horizon,
        SequenceOrigin::family("linear"),
        |n| T::from_index(n + 1),
    )?)
}

/// `p_n = q^n` for `q > 0`.
pub fn weights_geometric<T: Scalar>(horizon: usize, q: f64) -> Result<WeightSequence<T>> {
    let base = T::from_config(q);
    WeightSequence::new(RealSequence::from_fn(
        horizon,
        SequenceOrigin::family_with("geometric", &[("q", q)]),
        |n| base.powi(n as i32),
    )?)
}

/// `p_n = 1/(n+1)`, a weight sequence with logarithmic partial sums.
pub fn weights_log_slow<T: Scalar>(horizon: usize) -> Result<WeightSequence<T>> {
    WeightSequence::new(RealSequence::from_fn(
        horizon,
        SequenceOrigin::family("log_slow"),
        |n| T::one() / T::from_index(n + 1),
    )?)
}

/// `X_n = 1 + sum_{m=1..n} 1/m`.
pub fn x_harmonic_plus_one<T: Scalar>(horizon: usize) -> Result<RealSequence<T>> {
    let mut acc = T::one();
    let values = (0..=horizon)
        .map(|n| {
            if n > 0 {
                acc += T::one() / T::from_index(n);
            }
            acc
        })
        .collect();
    RealSequence::new(values, SequenceOrigin::family("harmonic_plus_one"))
}

/// `X_n = (n+1)^epsilon`.
pub fn x_power<T: Scalar>(horizon: usize, epsilon: f64) -> Result<RealSequence<T>> {
    let e = T::from_config(epsilon);
    RealSequence::from_fn(
        horizon,
        SequenceOrigin::family_with("power", &[("epsilon", epsilon)]),
        |n| T::from_index(n + 1).powf(e),
    )
}

/// `lambda_n = X_n^{-2}`.
pub fn lambda_inverse_x_squared<T: Scalar>(x: &RealSequence<T>) -> Result<RealSequence<T>> {
    RealSequence::new(
        x.values().iter().map(|&v| T::one() / (v * v)).collect(),
        SequenceOrigin::family("inverse_x_squared"),
    )
}

/// `lambda_n = X_n^{-1}`.
pub fn lambda_inverse_x<T: Scalar>(x: &RealSequence<T>) -> Result<RealSequence<T>> {
    RealSequence::new(
        x.values().iter().map(|&v| T::one() / v).collect(),
        SequenceOrigin::family("inverse_x"),
    )
}

/// `lambda_n = c`.
pub fn lambda_constant<T: Scalar>(horizon: usize, c: f64) -> Result<RealSequence<T>> {
    let value = T::from_config(c);
    RealSequence::from_fn(
        horizon,
        SequenceOrigin::family_with("constant", &[("c", c)]),
        |_| value,
    )
}
