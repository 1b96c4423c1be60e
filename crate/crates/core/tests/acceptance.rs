//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any fails. All checks are exact; tolerances are zero.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use common::{random_matrix, sample_spec, SamplerStats};
use idem2::cli::DEFAULT_GRID;
use idem2::idempotent_core::specs_for_split;
use idem2::{
    brute_force_idempotents, brute_force_series_idempotents, classify, compare_sets,
    construct_case, construct_crt, enumerate_all, factorize, idempotents_of_zn, mod_pow, totient,
    CoprimeSplit, IdempotentSpec, Mat2, Residue, Series, TruncationContext, DEFAULT_BUDGET,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const RANDOM_SPECS: usize = 10_000;
const RANDOM_MATRICES_PER_RING: usize = 10_000;
const SEED: u64 = 0x1de4_2017;

fn ctx(n: u64, vars: usize, trunc: u32) -> TruncationContext {
    TruncationContext::for_modulus(n, vars, trunc).unwrap()
}

fn random_specs() -> Vec<IdempotentSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut stats = SamplerStats::default();
    let specs: Vec<_> = (0..RANDOM_SPECS)
        .map(|_| sample_spec(&mut rng, 1000, 2, 3, &mut stats))
        .collect();
    assert!(stats.unit_beta > 0 && stats.nonunit_beta > 0, "{stats:?}");
    specs
}

/// 1. enumerate_all equals the brute-force idempotent set on every grid cell.
fn completeness_grid() -> Result<String, String> {
    let mut lines = Vec::new();
    for (n, v, d) in DEFAULT_GRID {
        let c = ctx(n, v, d);
        let built: Vec<Mat2> = enumerate_all(&c, DEFAULT_BUDGET)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|x| x.matrix)
            .collect();
        let brute = brute_force_idempotents(&c, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let report = compare_sets(&built, &brute);
        if !report.passed {
            return Err(format!(
                "cell ({n},{v},{d}): {} missing, {} extra",
                report.missing.len(),
                report.extra.len()
            ));
        }
        lines.push(format!("({n},{v},{d})={}", report.count_brute));
    }
    Ok(lines.join(" "))
}

/// 2. Series idempotents are exactly the constant idempotents of Z_n.
fn scalar_lemma() -> Result<String, String> {
    let mut windows = 0;
    for n in [2u64, 3, 4, 6, 8, 9] {
        let expected: Vec<u64> = idempotents_of_zn(&factorize(n).unwrap())
            .iter()
            .map(Residue::value)
            .collect();
        for v in [1usize, 2] {
            for d in 0..=2u32 {
                let c = ctx(n, v, d);
                let found = brute_force_series_idempotents(&c, DEFAULT_BUDGET)
                    .map_err(|e| e.to_string())?;
                let want: Vec<Series> = expected.iter().map(|&e| Series::constant(&c, e)).collect();
                if found != want {
                    return Err(format!("n={n} v={v} D={d}: got {} idempotents", found.len()));
                }
                windows += 1;
            }
        }
    }
    Ok(format!("{windows} windows"))
}

/// 3. Every sampled valid spec yields an idempotent.
fn soundness(specs: &[IdempotentSpec]) -> Result<String, String> {
    for spec in specs {
        let m = construct_case(spec).map_err(|e| format!("{spec}: {e}"))?;
        if !m.is_idempotent() {
            return Err(format!("not idempotent: {spec}"));
        }
    }
    Ok(format!("{} specs", specs.len()))
}

/// 4. The closed formulas and CRT gluing give the same matrix.
fn dual_path(specs: &[IdempotentSpec]) -> Result<String, String> {
    for spec in specs {
        if construct_case(spec).unwrap() != construct_crt(spec).unwrap() {
            return Err(format!("paths differ: {spec}"));
        }
    }
    let mut exhaustive = 0;
    for n in [6u64, 30] {
        for split in CoprimeSplit::all(&factorize(n).unwrap()) {
            for spec in specs_for_split(&split, 0, 0).unwrap() {
                if construct_case(&spec).unwrap() != construct_crt(&spec).unwrap() {
                    return Err(format!("paths differ: {spec}"));
                }
                exhaustive += 1;
            }
        }
    }
    Ok(format!("{} random + {exhaustive} exhaustive", specs.len()))
}

/// 5. classify inverts construct_case on canonical specs.
fn roundtrip(specs: &[IdempotentSpec]) -> Result<String, String> {
    let mut exhaustive = 0;
    for (n, v, d) in DEFAULT_GRID {
        for split in CoprimeSplit::all(&factorize(n).unwrap()) {
            for spec in specs_for_split(&split, v, d).unwrap() {
                let back = classify(&construct_case(&spec).unwrap()).map_err(|e| e.to_string())?;
                if back != spec {
                    return Err(format!("{spec} came back as {back}"));
                }
                exhaustive += 1;
            }
        }
    }
    for spec in specs {
        let back = classify(&construct_case(spec).unwrap()).map_err(|e| e.to_string())?;
        if back != *spec {
            return Err(format!("{spec} came back as {back}"));
        }
    }
    Ok(format!("{exhaustive} exhaustive + {} random", specs.len()))
}

/// 6. A^2 - tr(A) A + det(A) I vanishes.
fn cayley_hamilton() -> Result<String, String> {
    let rings = [(2u64, 0usize, 0u32), (6, 1, 2), (9, 1, 3), (12, 2, 1), (30, 2, 2), (997, 1, 3)];
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    for (n, v, d) in rings {
        let c = ctx(n, v, d);
        for _ in 0..RANDOM_MATRICES_PER_RING {
            let a = random_matrix(&mut rng, &c);
            if !a.cayley_hamilton_residual().is_zero() {
                return Err(format!("nonzero residual for {a}"));
            }
        }
    }
    Ok(format!("{} rings x {RANDOM_MATRICES_PER_RING}", rings.len()))
}

/// 7. P^phi(Q) = 1 mod Q for every split with P, Q > 1.
fn euler_fermat() -> Result<String, String> {
    let mut checked = 0;
    for n in 2..=200u64 {
        for split in CoprimeSplit::all(&factorize(n).unwrap()) {
            if split.p() > 1 && split.q() > 1 {
                let r = mod_pow(Residue::new(split.p(), split.q()), totient(split.q()));
                if r.value() != 1 {
                    return Err(format!("n={n} P={} Q={}", split.p(), split.q()));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} splits"))
}

/// 8. Counts re-derived by the oracle, then compared with frozen values.
fn derived_counts() -> Result<String, String> {
    let frozen = [(2u64, 8usize), (3, 14), (6, 112)];
    for (n, want) in frozen {
        let got = brute_force_idempotents(&ctx(n, 0, 0), DEFAULT_BUDGET)
            .map_err(|e| e.to_string())?
            .len();
        if got != want {
            return Err(format!("|Idem(M2(Z_{n}))| = {got}, frozen {want}"));
        }
    }
    Ok("8, 14, 112".into())
}

type Check<'a> = Box<dyn Fn() -> Result<String, String> + 'a>;

fn main() -> ExitCode {
    let specs = random_specs();
    let criteria: Vec<(&str, Check)> = vec![
        ("C1 completeness grid", Box::new(completeness_grid)),
        ("C2 scalar lemma", Box::new(scalar_lemma)),
        ("C3 soundness", Box::new(|| soundness(&specs))),
        ("C4 dual-path agreement", Box::new(|| dual_path(&specs))),
        ("C5 classify roundtrip", Box::new(|| roundtrip(&specs))),
        ("C6 cayley-hamilton", Box::new(cayley_hamilton)),
        ("C7 euler-fermat", Box::new(euler_fermat)),
        ("C8 derived counts", Box::new(derived_counts)),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail} ({secs:.1}s)"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail} ({secs:.1}s)");
            }
        }
    }
    println!("{} / {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
