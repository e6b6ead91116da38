//! Pairwise summation with a fixed split order, so that accumulated results
//! are reproducible bit-for-bit regardless of how callers chunk their data.

use std::ops::Add;

use num_complex::Complex64;

pub trait Accumulate: Copy + Add<Output = Self> {
    fn zero() -> Self;
}

impl Accumulate for f64 {
    fn zero() -> Self {
        0.0
    }
}

impl Accumulate for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
}

/// Sum `xs` by recursive halving (linear below 32 elements). Error grows like
/// O(log n) in contrast to the O(n) of a running sum, and the association
/// order depends only on the slice length.
pub fn pairwise_sum<T: Accumulate>(xs: &[T]) -> T {
    if xs.len() <= 32 {
        let mut acc = T::zero();
        for &x in xs {
            acc = acc + x;
        }
        acc
    } else {
        let mid = xs.len() / 2;
        pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
    }
}
