//! Value oracles: `g(X)` for a fixed trailer assignment.

use alloc::vec::Vec;
use core::fmt::Debug;
use core::ops::{Add, Sub};

use crate::error::Result;
use crate::model::{Instance, TrailerAssignment};
use crate::rational::{to_f64, Rational};

/// Objective values the planners can compare and add.
pub trait Score: Copy + PartialOrd + Debug + Add<Output = Self> + Sub<Output = Self> + Send + Sync {
    fn zero() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn to_f64(&self) -> f64;
}

impl Score for Rational {
    fn zero() -> Self {
        <Rational as num_traits::Zero>::zero()
    }

    fn from_rational(r: &Rational) -> Self {
        *r
    }

    fn to_f64(&self) -> f64 {
        to_f64(self)
    }
}

impl Score for f64 {
    fn zero() -> Self {
        0.0
    }

    fn from_rational(r: &Rational) -> Self {
        to_f64(r)
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

/// Result of one oracle call.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation<V, W> {
    /// `None` when no allocation satisfies the constraints for this `x`.
    pub value: Option<V>,
    /// State that may speed up later calls on neighbouring assignments.
    pub warm: Option<W>,
    pub converged: bool,
    /// Largest marginal violation left by an iterative solver; 0 when exact.
    pub residual: f64,
}

impl<V, W> Evaluation<V, W> {
    pub fn exact(value: Option<V>) -> Self {
        Self {
            value,
            warm: None,
            converged: true,
            residual: 0.0,
        }
    }
}

pub trait ValueOracle: Sync {
    type Value: Score;
    type Warm: Clone + Send + Sync;

    /// Instance the oracle answers for, after shelf trimming.
    fn instance(&self) -> &Instance;

    fn evaluate(
        &self,
        x: &TrailerAssignment,
        warm: Option<&Self::Warm>,
    ) -> Result<Evaluation<Self::Value, Self::Warm>>;
}

/// Runs independent candidate evaluations; results keep input order.
pub trait CandidateExecutor {
    fn map<T, R, F>(&self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl CandidateExecutor for Sequential {
    fn map<T, R, F>(&self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync,
    {
        items.into_iter().map(f).collect()
    }
}
