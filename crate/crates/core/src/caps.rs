//! Resource limits for the exact computations.
//!
//! Every potentially explosive computation takes a [`Caps`] and fails with a
//! [`CapError`] naming the limit that fired.

use std::fmt;
use std::time::{Duration, Instant};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CapError {
    #[error("order cap exceeded (order_cap = {0})")]
    Order(u128),
    #[error("exponent cap exceeded: group order above exponent_cap = {0}")]
    Exponent(u128),
    #[error("point cap exceeded: degree {degree} above max_points = {cap}")]
    Points { degree: usize, cap: usize },
    #[error("algebra cap exceeded: dimension {dim} above max_algebra_dim = {cap}")]
    AlgebraDim { dim: usize, cap: usize },
    #[error("time cap exceeded")]
    Time,
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest group order a stabilizer chain may reach.
    pub order_cap: u128,
    /// Largest group order for full element enumeration.
    pub exponent_cap: u128,
    /// Largest permutation degree (number of graph vertices).
    pub max_points: usize,
    /// Largest group-algebra dimension q^2.
    pub max_algebra_dim: usize,
    pub deadline: Option<Instant>,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            order_cap: 1 << 64,
            exponent_cap: 1 << 20,
            max_points: 1 << 12,
            max_algebra_dim: 1 << 10,
            deadline: None,
        }
    }
}

impl fmt::Debug for Caps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Caps")
            .field("order_cap", &self.order_cap)
            .field("exponent_cap", &self.exponent_cap)
            .field("max_points", &self.max_points)
            .field("max_algebra_dim", &self.max_algebra_dim)
            .field("deadline", &self.deadline.is_some())
            .finish()
    }
}

impl Caps {
    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.deadline = Some(Instant::now() + limit);
        self
    }

    pub fn check_order(&self, order: u128) -> Result<(), CapError> {
        if order > self.order_cap {
            Err(CapError::Order(self.order_cap))
        } else {
            Ok(())
        }
    }

    pub fn check_points(&self, degree: usize) -> Result<(), CapError> {
        if degree > self.max_points {
            Err(CapError::Points { degree, cap: self.max_points })
        } else {
            Ok(())
        }
    }

    pub fn check_algebra_dim(&self, dim: usize) -> Result<(), CapError> {
        if dim > self.max_algebra_dim {
            Err(CapError::AlgebraDim { dim, cap: self.max_algebra_dim })
        } else {
            Ok(())
        }
    }

    pub fn check_time(&self) -> Result<(), CapError> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(CapError::Time),
            _ => Ok(()),
        }
    }
}
