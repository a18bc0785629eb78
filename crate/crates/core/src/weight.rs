//! Scalar edge weights, weight vectors and Pareto dominance.

use std::cmp::Ordering;
use std::fmt::{self, Debug, Display};
use std::ops::{Add, Sub};

use crate::error::{Error, Result};

/// A scalar edge weight.
///
/// Implemented for `i64` (exact arithmetic, used by every constructed graph
/// family) and `f64` (random Euclidean instances).
pub trait Weight:
    Copy + PartialOrd + Add<Output = Self> + Sub<Output = Self> + Debug + Display + Send + Sync + 'static
{
    const ZERO: Self;
    /// Sums are independent of summation order.
    const EXACT: bool;

    fn to_f64(self) -> f64;

    /// Multiplication by a non-negative integer factor.
    fn scale(self, factor: u64) -> Self;

    fn parse_weight(s: &str) -> Option<Self>;

    /// Strictly positive and finite.
    fn is_valid_edge_weight(self) -> bool;

    fn total_cmp(&self, other: &Self) -> Ordering {
        self.partial_cmp(other).unwrap_or(Ordering::Equal)
    }
}

impl Weight for i64 {
    const ZERO: Self = 0;
    const EXACT: bool = true;

    fn to_f64(self) -> f64 {
        self as f64
    }

    fn scale(self, factor: u64) -> Self {
        self * factor as i64
    }

    fn parse_weight(s: &str) -> Option<Self> {
        s.parse().ok()
    }

    fn is_valid_edge_weight(self) -> bool {
        self > 0
    }
}

impl Weight for f64 {
    const ZERO: Self = 0.0;
    const EXACT: bool = false;

    fn to_f64(self) -> f64 {
        self
    }

    fn scale(self, factor: u64) -> Self {
        self * factor as f64
    }

    fn parse_weight(s: &str) -> Option<Self> {
        s.parse().ok().filter(|v: &f64| v.is_finite())
    }

    fn is_valid_edge_weight(self) -> bool {
        self.is_finite() && self > 0.0
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        f64::total_cmp(self, other)
    }
}

/// One or two weight components. Unused trailing components are held at
/// zero so that componentwise sums stay well defined.
#[derive(Clone, Copy, PartialEq)]
pub struct WeightVec<W> {
    comps: [W; 2],
    dim: u8,
}

impl<W: Weight> WeightVec<W> {
    pub fn single(w: W) -> Self {
        WeightVec { comps: [w, W::ZERO], dim: 1 }
    }

    pub fn pair(w1: W, w2: W) -> Self {
        WeightVec { comps: [w1, w2], dim: 2 }
    }

    pub fn zero(dim: usize) -> Self {
        debug_assert!(dim == 1 || dim == 2);
        WeightVec { comps: [W::ZERO; 2], dim: dim as u8 }
    }

    pub fn from_slice(values: &[W]) -> Result<Self> {
        match *values {
            [w] => Ok(Self::single(w)),
            [w1, w2] => Ok(Self::pair(w1, w2)),
            _ => Err(Error::usage(format!("weight vectors have 1 or 2 components, got {}", values.len()))),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn as_slice(&self) -> &[W] {
        &self.comps[..self.dim as usize]
    }

    /// Component `i` (0-based).
    pub fn get(&self, i: usize) -> W {
        self.as_slice()[i]
    }

    pub fn first(&self) -> W {
        self.comps[0]
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.as_slice().iter().map(|w| w.to_f64()).collect()
    }

    pub fn weakly_dominates(&self, other: &Self) -> bool {
        debug_assert_eq!(self.dim, other.dim);
        self.as_slice().iter().zip(other.as_slice()).all(|(a, b)| a <= b)
    }

    pub fn strictly_dominates(&self, other: &Self) -> bool {
        self.weakly_dominates(other) && self != other
    }

    /// Lexicographic order on the components; a total order used for
    /// sorting fronts.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.as_slice()
            .iter()
            .zip(other.as_slice())
            .map(|(a, b)| a.total_cmp(b))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

impl<W: Weight> Add for WeightVec<W> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.dim, rhs.dim);
        WeightVec { comps: [self.comps[0] + rhs.comps[0], self.comps[1] + rhs.comps[1]], dim: self.dim }
    }
}

impl<W: Weight> Sub for WeightVec<W> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        debug_assert_eq!(self.dim, rhs.dim);
        WeightVec { comps: [self.comps[0] - rhs.comps[0], self.comps[1] - rhs.comps[1]], dim: self.dim }
    }
}

impl<W: Debug> Debug for WeightVec<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.dim {
            1 => write!(f, "{:?}", self.comps[0]),
            _ => write!(f, "({:?}, {:?})", self.comps[0], self.comps[1]),
        }
    }
}

impl<W: Display> Display for WeightVec<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.dim {
            1 => write!(f, "{}", self.comps[0]),
            _ => write!(f, "({}, {})", self.comps[0], self.comps[1]),
        }
    }
}

/// Outcome of comparing two weight vectors under Pareto dominance
/// (minimization).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dominance {
    FirstStrictlyDominates,
    SecondStrictlyDominates,
    /// All components match, so each weakly dominates the other.
    Equal,
    Incomparable,
}

impl Dominance {
    pub fn first_weakly_dominates(self) -> bool {
        matches!(self, Dominance::FirstStrictlyDominates | Dominance::Equal)
    }

    pub fn second_weakly_dominates(self) -> bool {
        matches!(self, Dominance::SecondStrictlyDominates | Dominance::Equal)
    }
}

pub fn dominance<W: Weight>(a: &WeightVec<W>, b: &WeightVec<W>) -> Result<Dominance> {
    if a.dim() != b.dim() {
        return Err(Error::usage(format!("cannot compare weight vectors of dimension {} and {}", a.dim(), b.dim())));
    }
    let a_weak = a.weakly_dominates(b);
    let b_weak = b.weakly_dominates(a);
    Ok(match (a_weak, b_weak) {
        (true, true) => Dominance::Equal,
        (true, false) => Dominance::FirstStrictlyDominates,
        (false, true) => Dominance::SecondStrictlyDominates,
        (false, false) => Dominance::Incomparable,
    })
}
