//! Scalar weights shared by the shortest-path machinery.
//!
//! Algorithms are generic over [`Weight`] so the same code runs exact on
//! rational tiling metrics and approximate on solver output.

use std::cmp::Ordering;

use crate::rat::Rat;

pub trait Weight: Clone + Ord + std::fmt::Debug {
    fn zero() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn to_f64(&self) -> f64;
    /// Exact rational embedding (binary64 values are dyadic rationals).
    fn to_rat(&self) -> Rat;
    /// Equality used for membership in the shortest-path subgraph. Exact for
    /// rationals; small relative slack for binary64, where distance sums of
    /// equal value can differ in the last bits depending on addition order.
    fn close(&self, rhs: &Self) -> bool;
}

/// Finite binary64 with a total order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct R64(pub f64);

impl Eq for R64 {}

impl PartialOrd for R64 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for R64 {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl Weight for R64 {
    fn zero() -> Self {
        R64(0.0)
    }

    fn add(&self, rhs: &Self) -> Self {
        R64(self.0 + rhs.0)
    }

    fn to_f64(&self) -> f64 {
        self.0
    }

    fn to_rat(&self) -> Rat {
        Rat::from_f64_exact(self.0).expect("finite weight")
    }

    fn close(&self, rhs: &Self) -> bool {
        let scale = 1.0f64.max(self.0.abs()).max(rhs.0.abs());
        (self.0 - rhs.0).abs() <= 1e-12 * scale
    }
}

impl Weight for Rat {
    fn zero() -> Self {
        Rat::zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn to_f64(&self) -> f64 {
        Rat::to_f64(self)
    }

    fn to_rat(&self) -> Rat {
        self.clone()
    }

    fn close(&self, rhs: &Self) -> bool {
        self == rhs
    }
}
