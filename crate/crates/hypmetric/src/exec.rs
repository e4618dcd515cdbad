//! Parallel/sequential execution helpers.
//!
//! Every helper is deterministic: parallel results are merged in index order
//! (or with index-based tie-breaking), so output is byte-identical whether the
//! `parallel` feature is enabled or not, and for any thread count.

/// Sequential implementations. Always compiled; used directly by benchmarks.
pub mod seq {
    /// Maps `f` over `0..n` and collects the results in index order.
    pub fn map_collect<T, F>(n: usize, f: F) -> Vec<T>
    where
        F: Fn(usize) -> T + Sync + Send,
        T: Send,
    {
        (0..n).map(f).collect()
    }

    /// Index and value of the minimum of `f` over `0..n`, ignoring NaN;
    /// ties break toward the smaller index. `None` when every value is NaN
    /// or `n == 0`.
    pub fn argmin<F>(n: usize, f: F) -> Option<(usize, f64)>
    where
        F: Fn(usize) -> f64 + Sync + Send,
    {
        let mut best: Option<(usize, f64)> = None;
        for i in 0..n {
            let v = f(i);
            if v.is_nan() {
                continue;
            }
            match best {
                Some((_, bv)) if bv <= v => {}
                _ => best = Some((i, v)),
            }
        }
        best
    }

    /// Chunked sum with a fixed association order.
    pub fn sum(values: &[f64]) -> f64 {
        values.chunks(4096).map(|c| c.iter().sum::<f64>()).sum()
    }

    /// Dot product with the same association order as [`sum`].
    pub fn dot(a: &[f64], b: &[f64]) -> f64 {
        a.chunks(4096)
            .zip(b.chunks(4096))
            .map(|(ca, cb)| ca.iter().zip(cb).map(|(x, y)| x * y).sum::<f64>())
            .sum()
    }

    /// Applies `f` to each element in place.
    pub fn for_each_mut<T, F>(items: &mut [T], f: F)
    where
        T: Send,
        F: Fn(usize, &mut T) + Sync + Send,
    {
        for (i, item) in items.iter_mut().enumerate() {
            f(i, item);
        }
    }
}

/// Rayon-backed implementations mirroring [`seq`].
#[cfg(feature = "parallel")]
pub mod par {
    use rayon::prelude::*;

    pub fn map_collect<T, F>(n: usize, f: F) -> Vec<T>
    where
        F: Fn(usize) -> T + Sync + Send,
        T: Send,
    {
        (0..n).into_par_iter().map(f).collect()
    }

    pub fn argmin<F>(n: usize, f: F) -> Option<(usize, f64)>
    where
        F: Fn(usize) -> f64 + Sync + Send,
    {
        (0..n)
            .into_par_iter()
            .filter_map(|i| {
                let v = f(i);
                if v.is_nan() {
                    None
                } else {
                    Some((i, v))
                }
            })
            .reduce_with(|x, y| {
                // smaller value wins; on exact ties the smaller index wins
                if y.1 < x.1 || (y.1 == x.1 && y.0 < x.0) {
                    y
                } else {
                    x
                }
            })
    }

    /// Chunk sums are computed in parallel but accumulated in index order,
    /// matching [`seq::sum`] bit for bit.
    pub fn sum(values: &[f64]) -> f64 {
        values
            .par_chunks(4096)
            .map(|c| c.iter().sum::<f64>())
            .collect::<Vec<_>>()
            .into_iter()
            .sum()
    }

    pub fn dot(a: &[f64], b: &[f64]) -> f64 {
        a.par_chunks(4096)
            .zip(b.par_chunks(4096))
            .map(|(ca, cb)| ca.iter().zip(cb).map(|(x, y)| x * y).sum::<f64>())
            .collect::<Vec<_>>()
            .into_iter()
            .sum()
    }

    pub fn for_each_mut<T, F>(items: &mut [T], f: F)
    where
        T: Send,
        F: Fn(usize, &mut T) + Sync + Send,
    {
        items
            .par_iter_mut()
            .enumerate()
            .for_each(|(i, item)| f(i, item));
    }
}

macro_rules! dispatch {
    ($name:ident) => {
        #[cfg(feature = "parallel")]
        pub use par::$name;
        #[cfg(not(feature = "parallel"))]
        pub use seq::$name;
    };
}

dispatch!(map_collect);
dispatch!(argmin);
dispatch!(sum);
dispatch!(dot);
dispatch!(for_each_mut);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn argmin_breaks_ties_toward_smaller_index() {
        let data = [3.0, 1.0, 1.0, 2.0];
        assert_eq!(seq::argmin(data.len(), |i| data[i]), Some((1, 1.0)));
        #[cfg(feature = "parallel")]
        assert_eq!(par::argmin(data.len(), |i| data[i]), Some((1, 1.0)));
    }

    #[test]
    fn argmin_skips_nan() {
        let data = [f64::NAN, 2.0];
        assert_eq!(seq::argmin(data.len(), |i| data[i]), Some((1, 2.0)));
        assert_eq!(seq::argmin(1, |_| f64::NAN), None);
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn par_sum_matches_seq_bitwise() {
        let values: Vec<f64> = (0..20000).map(|i| (i as f64).sin() * 1e-3).collect();
        assert_eq!(seq::sum(&values).to_bits(), par::sum(&values).to_bits());
        let other: Vec<f64> = (0..20000).map(|i| (i as f64).cos()).collect();
        assert_eq!(
            seq::dot(&values, &other).to_bits(),
            par::dot(&values, &other).to_bits()
        );
    }
}
