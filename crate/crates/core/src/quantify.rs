//! Quantifier enumeration shared by the checkers.
//!
//! Checkers express their outermost quantifier as a set of k-element index
//! tuples. Exhaustive mode visits every tuple in lexicographic order, so the
//! first failure found is the least witness. Sampled mode visits a seeded
//! random subset, still in lexicographic order.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::incidence::{IncidenceStructure, Sort};

/// Default largest sort size checked exhaustively.
pub const DEFAULT_MAX_ELEMENTS: usize = 512;

/// How the checkers run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    /// Run theorem checks even when the axioms fail.
    pub force: bool,
    /// Visit this many random outer tuples per statement instead of all.
    pub sample: Option<usize>,
    pub seed: u64,
    /// Exhaustive checks refuse structures with a larger sort.
    pub max_elements: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            force: false,
            sample: None,
            seed: 0,
            max_elements: DEFAULT_MAX_ELEMENTS,
        }
    }
}

impl CheckOptions {
    pub fn sampled(samples: usize, seed: u64) -> Self {
        CheckOptions {
            sample: Some(samples),
            seed,
            ..Self::default()
        }
    }

    pub fn forced(self) -> Self {
        CheckOptions {
            force: true,
            ..self
        }
    }

    pub(crate) fn guard(&self, s: &IncidenceStructure) -> Result<()> {
        if self.sample.is_some() {
            return Ok(());
        }
        for (sort, size) in [(Sort::Point, s.n_points()), (Sort::Plane, s.n_planes())] {
            if size > self.max_elements {
                return Err(Error::TooLarge {
                    sort,
                    size,
                    bound: self.max_elements,
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Combo {
    /// Strictly increasing tuples.
    Distinct,
    /// Non-decreasing tuples (repeats allowed).
    Multiset,
}

/// Calls `f` on each K-tuple over `0..n` of the given kind.
///
/// `salt` separates the sample streams of different statements; the same
/// salt on both sorts of a statement keeps dual runs in lockstep.
pub(crate) fn for_each_tuple<const K: usize>(
    n: usize,
    combo: Combo,
    opts: &CheckOptions,
    salt: u64,
    mut f: impl FnMut([usize; K]),
) {
    match opts.sample {
        None => exhaustive(n, combo, &mut f),
        Some(count) => {
            for t in sample_tuples::<K>(n, combo, count, opts.seed ^ salt) {
                f(t);
            }
        }
    }
}

fn exhaustive<const K: usize>(n: usize, combo: Combo, f: &mut impl FnMut([usize; K])) {
    if K == 0 {
        f([0; K]);
        return;
    }
    let step = usize::from(combo == Combo::Distinct);
    let mut t: [usize; K] = std::array::from_fn(|i| i * step);
    if t[K - 1] >= n {
        return;
    }
    loop {
        f(t);
        // advance the rightmost position that still has room
        let mut i = K;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            let limit = n - (K - 1 - i) * step;
            if t[i] + 1 < limit {
                t[i] += 1;
                for j in i + 1..K {
                    t[j] = t[j - 1] + step;
                }
                break;
            }
        }
    }
}

fn sample_tuples<const K: usize>(
    n: usize,
    combo: Combo,
    count: usize,
    seed: u64,
) -> Vec<[usize; K]> {
    if n == 0 || (combo == Combo::Distinct && n < K) {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut t = [0usize; K];
        for slot in t.iter_mut() {
            *slot = rng.random_range(0..n);
        }
        t.sort_unstable();
        if combo == Combo::Distinct && t.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        out.push(t);
    }
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn collect<const K: usize>(n: usize, combo: Combo) -> Vec<[usize; K]> {
        let mut out = Vec::new();
        for_each_tuple::<K>(n, combo, &CheckOptions::default(), 0, |t| out.push(t));
        out
    }

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn exhaustive_counts_and_order() {
        for n in 0..8 {
            let d3 = collect::<3>(n, Combo::Distinct);
            assert_eq!(d3.len(), if n >= 3 { binom(n, 3) } else { 0 });
            assert!(d3.windows(2).all(|w| w[0] < w[1]));
            assert!(d3.iter().all(|t| t[0] < t[1] && t[1] < t[2] && t[2] < n));

            let m2 = collect::<2>(n, Combo::Multiset);
            assert_eq!(m2.len(), binom(n + 1, 2));
            assert!(m2.windows(2).all(|w| w[0] < w[1]));

            let m3 = collect::<3>(n, Combo::Multiset);
            assert_eq!(m3.len(), binom(n + 2, 3));
            assert_eq!(collect::<1>(n, Combo::Distinct).len(), n);
        }
    }

    #[test]
    fn sampling_is_seeded_and_sorted() {
        let opts = CheckOptions::sampled(50, 9);
        let run = || {
            let mut v = Vec::new();
            for_each_tuple::<3>(20, Combo::Distinct, &opts, 1, |t| v.push(t));
            v
        };
        let a = run();
        assert_eq!(a, run());
        assert!(!a.is_empty() && a.len() <= 50);
        assert!(a.windows(2).all(|w| w[0] < w[1]));
        assert!(a.iter().all(|t| t[0] < t[1] && t[1] < t[2]));
        let mut none = Vec::new();
        for_each_tuple::<3>(2, Combo::Distinct, &opts, 1, |t| none.push(t));
        assert!(none.is_empty());
    }

    #[test]
    fn guard_respects_bound() {
        let s = IncidenceStructure::from_fn(5, 3, |_, _| true);
        let tight = CheckOptions {
            max_elements: 4,
            ..CheckOptions::default()
        };
        assert!(matches!(
            tight.guard(&s),
            Err(Error::TooLarge {
                sort: Sort::Point,
                size: 5,
                bound: 4
            })
        ));
        let sampled = CheckOptions {
            max_elements: 4,
            ..CheckOptions::sampled(10, 0)
        };
        assert!(sampled.guard(&s).is_ok());
    }
}
