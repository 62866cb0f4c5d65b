//! Compensated and order-deterministic reductions.
//!
//! Double sums over index pairs are split into rows. Each row is
//! accumulated serially with Neumaier compensation, rows may be evaluated
//! in parallel, and the row totals are combined serially in index order.
//! The floating point result therefore does not depend on the number of
//! worker threads.

use rayon::prelude::*;

use crate::geom::Vec3;
use crate::Real;

/// Neumaier compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum<T> {
    sum: T,
    comp: T,
}

impl<T: Real> NeumaierSum<T> {
    pub fn new() -> Self {
        Self {
            sum: T::zero(),
            comp: T::zero(),
        }
    }

    #[inline]
    pub fn add(&mut self, v: T) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp = self.comp + ((self.sum - t) + v);
        } else {
            self.comp = self.comp + ((v - t) + self.sum);
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> T {
        self.sum + self.comp
    }
}

impl<T: Real> FromIterator<T> for NeumaierSum<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut acc = Self::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// Compensated sum of a sequence, in iteration order.
pub fn compensated_sum<T: Real, I: IntoIterator<Item = T>>(values: I) -> T {
    values.into_iter().collect::<NeumaierSum<T>>().value()
}

/// Compensated accumulator for vectors (componentwise).
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum3<T> {
    x: NeumaierSum<T>,
    y: NeumaierSum<T>,
    z: NeumaierSum<T>,
}

impl<T: Real> NeumaierSum3<T> {
    pub fn new() -> Self {
        Self {
            x: NeumaierSum::new(),
            y: NeumaierSum::new(),
            z: NeumaierSum::new(),
        }
    }

    #[inline]
    pub fn add(&mut self, v: Vec3<T>) {
        self.x.add(v.x);
        self.y.add(v.y);
        self.z.add(v.z);
    }

    #[inline]
    pub fn value(&self) -> Vec3<T> {
        Vec3::new(self.x.value(), self.y.value(), self.z.value())
    }
}

impl<T: Real> FromIterator<Vec3<T>> for NeumaierSum3<T> {
    fn from_iter<I: IntoIterator<Item = Vec3<T>>>(iter: I) -> Self {
        let mut acc = Self::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// Sums `row(j)` over `j in 0..n`: rows in parallel, totals serially.
pub fn sum_rows<T, F>(n: usize, row: F) -> T
where
    T: Real,
    F: Fn(usize) -> T + Sync + Send,
{
    let rows: Vec<T> = (0..n).into_par_iter().map(row).collect();
    compensated_sum(rows)
}

/// Row reduction that carries an auxiliary value per row, merged serially
/// in index order with `merge`. Used when a sum and a diagnostic (count,
/// maximum) are produced in the same pass.
pub fn reduce_rows<R, F, M>(n: usize, init: R, row: F, mut merge: M) -> R
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
    M: FnMut(R, R) -> R,
{
    let rows: Vec<R> = (0..n).into_par_iter().map(row).collect();
    rows.into_iter().fold(init, &mut merge)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neumaier_recovers_small_terms() {
        let vals = [1.0e16_f64, 1.0, -1.0e16, 1.0];
        assert_eq!(compensated_sum(vals), 2.0);
        let naive: f64 = vals.iter().sum();
        assert_ne!(naive, 2.0);
    }

    #[test]
    fn row_sum_independent_of_pool_size() {
        let f = |j: usize| {
            let x = j as f64;
            (x * 0.37).sin() / (1.0 + x)
        };
        let one = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| sum_rows(10_000, f));
        let four = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap()
            .install(|| sum_rows(10_000, f));
        assert_eq!(one.to_bits(), four.to_bits());
    }

    #[test]
    fn vector_accumulator() {
        let mut acc = NeumaierSum3::new();
        acc.add(Vec3::new(1.0, 2.0, 3.0));
        acc.add(Vec3::new(-1.0, 0.5, 0.0));
        assert_eq!(acc.value(), Vec3::new(0.0, 2.5, 3.0));
    }
}
