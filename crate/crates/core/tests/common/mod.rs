#![allow(dead_code)]

use idem2::{
    factorize, solve_gamma, validate_spec, CoprimeSplit, IdempotentSpec, Mat2, Series,
    TruncationContext,
};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn random_series<R: Rng>(rng: &mut R, ctx: &TruncationContext) -> Series {
    let coeffs = (0..ctx.len()).map(|_| rng.gen_range(0..ctx.n())).collect();
    Series::from_coeffs(ctx, coeffs).unwrap()
}

pub fn random_matrix<R: Rng>(rng: &mut R, ctx: &TruncationContext) -> Mat2 {
    Mat2::new(
        random_series(rng, ctx),
        random_series(rng, ctx),
        random_series(rng, ctx),
        random_series(rng, ctx),
    )
    .unwrap()
}

/// Counts how often each sampling stratum produced a spec.
#[derive(Debug, Default, Clone, Copy)]
pub struct SamplerStats {
    pub trivial: usize,
    pub unit_beta: usize,
    pub nonunit_beta: usize,
}

const GAMMA_RETRIES: usize = 64;

/// A uniformly drawn valid spec for `split`: alpha and beta uniform; gamma
/// solved when beta has a unit constant term, otherwise drawn and rejected
/// until the constraint holds (resampling alpha, beta after a bounded number
/// of retries).
pub fn sample_spec_for<R: Rng>(
    rng: &mut R,
    split: &CoprimeSplit,
    vars: usize,
    trunc: u32,
    stats: &mut SamplerStats,
) -> IdempotentSpec {
    if split.p() == 1 {
        stats.trivial += 1;
        return IdempotentSpec::trivial(split.clone(), vars, trunc).unwrap();
    }
    let pctx = TruncationContext::for_modulus(split.p(), vars, trunc).unwrap();
    loop {
        let alpha = random_series(rng, &pctx);
        let beta = random_series(rng, &pctx);
        if let Ok(gamma) = solve_gamma(&alpha, &beta) {
            stats.unit_beta += 1;
            let spec = IdempotentSpec::with_params(split.clone(), alpha, beta, gamma).unwrap();
            assert!(validate_spec(&spec));
            return spec;
        }
        for _ in 0..GAMMA_RETRIES {
            let gamma = random_series(rng, &pctx);
            let spec =
                IdempotentSpec::with_params(split.clone(), alpha.clone(), beta.clone(), gamma)
                    .unwrap();
            if validate_spec(&spec) {
                stats.nonunit_beta += 1;
                return spec;
            }
        }
    }
}

/// Random valid spec over `n <= max_n`, `v <= max_vars`, `D <= max_trunc`.
pub fn sample_spec<R: Rng>(
    rng: &mut R,
    max_n: u64,
    max_vars: usize,
    max_trunc: u32,
    stats: &mut SamplerStats,
) -> IdempotentSpec {
    let n = rng.gen_range(2..=max_n);
    let vars = rng.gen_range(0..=max_vars);
    let trunc = rng.gen_range(0..=max_trunc);
    let splits = CoprimeSplit::all(&factorize(n).unwrap());
    let split = splits.choose(rng).unwrap();
    sample_spec_for(rng, split, vars, trunc, stats)
}
