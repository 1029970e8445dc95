//! Order-preserving batch maps.
//!
//! Kernel values are immutable, so independent evaluations can run on the
//! rayon pool. With the `parallel` feature disabled every entry point falls
//! back to a plain sequential iterator; results are identical either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `items` sequentially.
pub fn map_sequential<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

/// Map `f` over `items` on the rayon pool, keeping input order.
#[cfg(feature = "parallel")]
pub fn map_parallel<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_parallel<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    map_sequential(items, f)
}

/// Map with the default strategy for this build.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    map_parallel(items, f)
}

/// Index of the first item failing `pred`, or `None` if all pass.
pub fn find_failure<T, F>(items: &[T], pred: F) -> Option<usize>
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().position_first(|x| !pred(x))
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().position(|x| !pred(x))
    }
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree_and_keep_order() {
        let xs: Vec<u64> = (0..1000).collect();
        let seq = map_sequential(&xs, |x| x * x);
        assert_eq!(map_parallel(&xs, |x| x * x), seq);
        assert_eq!(map(&xs, |x| x * x), seq);
        assert_eq!(seq[999], 999 * 999);
    }

    #[test]
    fn find_failure_reports_first() {
        let xs: Vec<u32> = (0..500).collect();
        assert_eq!(find_failure(&xs, |&x| x < 1000), None);
        assert_eq!(find_failure(&xs, |&x| x % 97 != 96), Some(96));
    }
}
