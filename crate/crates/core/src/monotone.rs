use std::cmp::Ordering;

use crate::coloring::Coloring;
use crate::error::ParamError;
use crate::homogeneous::find_homogeneous;

/// Pair colors of the monotone-subsequence coloring.
pub const INCREASING: u32 = 0;
pub const CONSTANT: u32 = 1;
pub const DECREASING: u32 = 2;

/// Colors `{i, j}` (i < j) of index pairs by comparing `xs[i]` with `xs[j]`.
pub fn comparison_coloring<T: Ord>(xs: &[T]) -> Result<Coloring, ParamError> {
    let m = u32::try_from(xs.len()).map_err(|_| ParamError::Invalid("sequence too long".into()))?;
    Coloring::from_fn(m, 2, 3, |s| match xs[s[0] as usize].cmp(&xs[s[1] as usize]) {
        Ordering::Less => INCREASING,
        Ordering::Equal => CONSTANT,
        Ordering::Greater => DECREASING,
    })
}

/// Indices of a longest homogeneous set of the comparison coloring: a
/// strictly increasing, constant or strictly decreasing subsequence.
pub fn monotone_subsequence<T: Ord>(xs: &[T]) -> Result<Vec<usize>, ParamError> {
    if xs.is_empty() {
        return Err(ParamError::Invalid("monotone_subsequence needs a nonempty sequence".into()));
    }
    let p = comparison_coloring(xs)?;
    // Grow k until the search fails; only the last search is exhaustive.
    let mut best = None;
    for k in 1..=xs.len() {
        match find_homogeneous(&p, k, false)? {
            Some(w) => best = Some(w),
            None => break,
        }
    }
    let w = best.expect("a singleton is always homogeneous");
    Ok(w.set.elements().iter().map(|&i| i as usize).collect())
}

/// Checks that `idx` is increasing and picks out a monotone subsequence.
pub fn is_monotone_selection<T: Ord>(xs: &[T], idx: &[usize]) -> bool {
    if idx.windows(2).any(|w| w[0] >= w[1]) || idx.iter().any(|&i| i >= xs.len()) {
        return false;
    }
    let seq: Vec<&T> = idx.iter().map(|&i| &xs[i]).collect();
    let all = |o: Ordering| seq.windows(2).all(|w| w[0].cmp(w[1]) == o);
    all(Ordering::Less) || all(Ordering::Equal) || all(Ordering::Greater)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_sequence() {
        assert_eq!(monotone_subsequence(&[5, 5, 5]).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn three_one_two() {
        let idx = monotone_subsequence(&[3, 1, 2]).unwrap();
        assert_eq!(idx.len(), 2);
        assert!(is_monotone_selection(&[3, 1, 2], &idx));
        assert_eq!(idx, vec![0, 1]);
    }

    #[test]
    fn empty_is_an_error() {
        assert!(monotone_subsequence::<i32>(&[]).is_err());
    }

    #[test]
    fn single_element() {
        assert_eq!(monotone_subsequence(&[7]).unwrap(), vec![0]);
    }
}
