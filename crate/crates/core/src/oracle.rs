//! Exhaustive ground truth for small windows.
//!
//! Everything here uses only series and matrix arithmetic: candidates are
//! enumerated and squared, nothing else. The constructive side lives in
//! `idempotent_core` and is never consulted.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mat2::{Mat2, Mat2Json};
use crate::tseries::{Series, TruncationContext};

/// Default cap on the number of candidates any single search may visit.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// Size of an exhaustive search, checked against a budget before it starts.
#[derive(Debug, Clone)]
pub struct SearchSpace {
    context: TruncationContext,
    digits: usize,
    total: u128,
}

impl SearchSpace {
    fn with_digits(ctx: &TruncationContext, digits: usize, budget: u128) -> Result<Self> {
        let total = (ctx.n() as u128).checked_pow(digits as u32);
        match total {
            Some(total) if total <= budget => Ok(SearchSpace {
                context: ctx.clone(),
                digits,
                total,
            }),
            Some(total) => Err(Error::BudgetExceeded {
                required: total.to_string(),
                budget,
            }),
            None => Err(Error::BudgetExceeded {
                required: format!("{}^{}", ctx.n(), digits),
                budget,
            }),
        }
    }

    /// All 2x2 matrices over the window: `n^(4M)` candidates.
    pub fn matrices(ctx: &TruncationContext, budget: u128) -> Result<Self> {
        Self::with_digits(ctx, 4 * ctx.len(), budget)
    }

    /// All series over the window: `n^M` candidates.
    pub fn series(ctx: &TruncationContext, budget: u128) -> Result<Self> {
        Self::with_digits(ctx, ctx.len(), budget)
    }

    pub fn context(&self) -> &TruncationContext {
        &self.context
    }

    pub fn total(&self) -> u128 {
        self.total
    }

    // Odometer digits of `index`, most significant first.
    fn digits_of(&self, mut index: u64) -> Vec<u64> {
        let n = self.context.n();
        let mut out = vec![0u64; self.digits];
        for d in out.iter_mut().rev() {
            *d = index % n;
            index /= n;
        }
        out
    }

    fn candidates<T, F>(&self, build: F) -> Vec<T>
    where
        T: Send + Ord,
        F: Fn(Vec<u64>) -> Option<T> + Sync,
    {
        // total <= budget, and any useful budget fits in u64
        let total = u64::try_from(self.total).expect("search space fits in u64");
        let mut found: Vec<T> = (0..total)
            .into_par_iter()
            .filter_map(|i| build(self.digits_of(i)))
            .collect();
        found.sort();
        found
    }
}

/// Every idempotent matrix over the window, sorted.
pub fn brute_force_idempotents(ctx: &TruncationContext, budget: u128) -> Result<Vec<Mat2>> {
    let space = SearchSpace::matrices(ctx, budget)?;
    let m = ctx.len();
    Ok(space.candidates(|digits| {
        let entry = |k: usize| {
            Series::from_coeffs(ctx, digits[k * m..(k + 1) * m].to_vec()).expect("window length")
        };
        let a = Mat2::new(entry(0), entry(1), entry(2), entry(3)).expect("one context");
        a.is_idempotent().then_some(a)
    }))
}

/// Every idempotent series over the window, sorted.
pub fn brute_force_series_idempotents(
    ctx: &TruncationContext,
    budget: u128,
) -> Result<Vec<Series>> {
    let space = SearchSpace::series(ctx, budget)?;
    Ok(space.candidates(|digits| {
        let f = Series::from_coeffs(ctx, digits).expect("window length");
        f.is_idempotent().then_some(f)
    }))
}

/// Set comparison of a constructed list against the brute-force list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompareReport {
    pub passed: bool,
    pub count_constructed: usize,
    pub count_brute: usize,
    /// In the brute-force set but not constructed.
    pub missing: Vec<Mat2>,
    /// Constructed but not in the brute-force set.
    pub extra: Vec<Mat2>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompareReportJson {
    pub passed: bool,
    pub count_constructed: usize,
    pub count_brute: usize,
    pub missing: Vec<Mat2Json>,
    pub extra: Vec<Mat2Json>,
}

impl CompareReport {
    pub fn to_json(&self) -> CompareReportJson {
        CompareReportJson {
            passed: self.passed,
            count_constructed: self.count_constructed,
            count_brute: self.count_brute,
            missing: self.missing.iter().map(Mat2::to_json).collect(),
            extra: self.extra.iter().map(Mat2::to_json).collect(),
        }
    }
}

pub fn compare_sets(constructed: &[Mat2], brute: &[Mat2]) -> CompareReport {
    use std::collections::BTreeSet;
    let built: BTreeSet<&Mat2> = constructed.iter().collect();
    let truth: BTreeSet<&Mat2> = brute.iter().collect();
    let missing: Vec<Mat2> = truth.difference(&built).map(|m| (*m).clone()).collect();
    let extra: Vec<Mat2> = built.difference(&truth).map(|m| (*m).clone()).collect();
    CompareReport {
        passed: missing.is_empty() && extra.is_empty(),
        count_constructed: built.len(),
        count_brute: truth.len(),
        missing,
        extra,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: u64, vars: usize, trunc: u32) -> TruncationContext {
        TruncationContext::for_modulus(n, vars, trunc).unwrap()
    }

    fn constants(list: &[Series]) -> Vec<u64> {
        assert!(list.iter().all(Series::is_constant));
        list.iter().map(|s| s.constant_term().value()).collect()
    }

    #[test]
    fn scalar_matrix_counts() {
        assert_eq!(brute_force_idempotents(&ctx(2, 0, 0), DEFAULT_BUDGET).unwrap().len(), 8);
        assert_eq!(brute_force_idempotents(&ctx(3, 0, 0), DEFAULT_BUDGET).unwrap().len(), 14);
    }

    #[test]
    fn output_is_sorted_and_deterministic() {
        let c = ctx(4, 1, 1);
        let a = brute_force_idempotents(&c, DEFAULT_BUDGET).unwrap();
        let b = brute_force_idempotents(&c, DEFAULT_BUDGET).unwrap();
        assert!(a.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(a, b);
        assert!(a.iter().all(Mat2::is_idempotent));
    }

    #[test]
    fn series_idempotents_are_constants() {
        let s = brute_force_series_idempotents(&ctx(4, 1, 2), DEFAULT_BUDGET).unwrap();
        assert_eq!(constants(&s), vec![0, 1]);
        let s = brute_force_series_idempotents(&ctx(6, 1, 1), DEFAULT_BUDGET).unwrap();
        assert_eq!(constants(&s), vec![0, 1, 3, 4]);
        let s = brute_force_series_idempotents(&ctx(2, 2, 1), DEFAULT_BUDGET).unwrap();
        assert_eq!(constants(&s), vec![0, 1]);
    }

    #[test]
    fn prime_power_series_lemma_up_to_sixteen() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            for d in 0..=3 {
                let s = brute_force_series_idempotents(&ctx(q, 1, d), DEFAULT_BUDGET).unwrap();
                assert_eq!(constants(&s), vec![0, 1], "n={q} D={d}");
            }
        }
    }

    #[test]
    fn budget_is_a_hard_precondition() {
        let err = brute_force_idempotents(&ctx(2, 0, 0), 10).unwrap_err();
        assert_eq!(
            err,
            Error::BudgetExceeded {
                required: "16".into(),
                budget: 10
            }
        );
        assert!(SearchSpace::matrices(&ctx(1000, 3, 5), DEFAULT_BUDGET).is_err());
        assert_eq!(SearchSpace::series(&ctx(4, 1, 2), 64).unwrap().total(), 64);
    }

    #[test]
    fn compare_reports() {
        let c = ctx(2, 0, 0);
        let all = brute_force_idempotents(&c, DEFAULT_BUDGET).unwrap();
        let r = compare_sets(&all, &all);
        assert!(r.passed);
        assert_eq!((r.missing.len(), r.extra.len()), (0, 0));
        assert_eq!((r.count_constructed, r.count_brute), (8, 8));

        let dropped = all[3].clone();
        let partial: Vec<Mat2> = all.iter().filter(|m| **m != dropped).cloned().collect();
        let r = compare_sets(&partial, &all);
        assert!(!r.passed);
        assert_eq!(r.missing, vec![dropped]);
        assert!(r.extra.is_empty());

        let mut bogus = all.clone();
        bogus.push(Mat2::from_constants(&c, [1, 1, 0, 1]));
        let r = compare_sets(&bogus, &all);
        assert_eq!(r.extra.len(), 1);
        let js = serde_json::to_value(r.to_json()).unwrap();
        assert_eq!(js["passed"], false);
        assert_eq!(js["count_constructed"], 9);
    }
}
