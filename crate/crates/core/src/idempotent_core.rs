//! Construction and classification of idempotents in `M_2(Z_n[[X]])`.
//!
//! An idempotent is determined by a split `n = P * Q * R` and, when `P > 1`,
//! three series `alpha, beta, gamma` mod `P` with
//! `alpha (1 - alpha) = beta gamma`. Modulo `P` the matrix is
//! `(alpha, beta; gamma, 1 - alpha)`, modulo `Q` it is the identity and
//! modulo `R` it is zero.
//!
//! There are two independent ways to build the matrix mod `n`:
//! [`construct_case`] evaluates closed formulas with Euler-totient exponents,
//! one branch per combination of nontrivial parts, and [`construct_crt`]
//! glues the three residue matrices together coefficient by coefficient.
//! They must agree.

use std::collections::BTreeMap;
use std::fmt;

use indexmap::IndexMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mat2::{Mat2, Mat2Json};
use crate::tseries::{Series, SeriesJson, TruncationContext};
use crate::zn_arith::{crt_combine, pow_mod, sub_mod, totient, CoprimeSplit, Modulus, Role};

/// The three parameter series, all with coefficients mod `P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecParams {
    pub alpha: Series,
    pub beta: Series,
    pub gamma: Series,
}

/// Parameters of one idempotent: a coprime split plus, when `P > 1`, the
/// series `alpha, beta, gamma` mod `P` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentSpec {
    split: CoprimeSplit,
    vars: usize,
    trunc: u32,
    params: Option<SpecParams>,
}

impl IdempotentSpec {
    /// Checks the structure (parameters present exactly when `P > 1`, living
    /// in the window mod `P`) but not the quadratic constraint; see
    /// [`validate_spec`].
    pub fn new(
        split: CoprimeSplit,
        vars: usize,
        trunc: u32,
        params: Option<SpecParams>,
    ) -> Result<Self> {
        match (&params, split.p()) {
            (None, 1) => {}
            (Some(_), 1) => {
                return Err(Error::InvalidSpec(
                    "parameters given but P = 1".into(),
                ))
            }
            (None, p) => {
                return Err(Error::InvalidSpec(format!(
                    "P = {p} requires alpha, beta, gamma"
                )))
            }
            (Some(ps), p) => {
                for (name, s) in [("alpha", &ps.alpha), ("beta", &ps.beta), ("gamma", &ps.gamma)] {
                    let c = s.context();
                    if c.n() != p || c.vars() != vars || c.trunc() != trunc {
                        return Err(Error::InvalidSpec(format!(
                            "{name} lives in {c}, expected Z_{p}[v={vars}]/deg>{trunc}"
                        )));
                    }
                }
            }
        }
        Ok(IdempotentSpec {
            split,
            vars,
            trunc,
            params,
        })
    }

    /// Spec for a split with `P = 1`.
    pub fn trivial(split: CoprimeSplit, vars: usize, trunc: u32) -> Result<Self> {
        Self::new(split, vars, trunc, None)
    }

    /// Spec with parameters; the window is taken from `alpha`.
    pub fn with_params(
        split: CoprimeSplit,
        alpha: Series,
        beta: Series,
        gamma: Series,
    ) -> Result<Self> {
        let (vars, trunc) = (alpha.context().vars(), alpha.context().trunc());
        Self::new(split, vars, trunc, Some(SpecParams { alpha, beta, gamma }))
    }

    pub fn split(&self) -> &CoprimeSplit {
        &self.split
    }

    pub fn params(&self) -> Option<&SpecParams> {
        self.params.as_ref()
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    /// The window mod `n` in which the constructed matrix lives.
    pub fn target_context(&self) -> TruncationContext {
        match &self.params {
            Some(ps) => ps.alpha.context().with_modulus(self.split.modulus().clone()),
            None => TruncationContext::new(self.split.modulus().clone(), self.vars, self.trunc),
        }
    }

    pub fn to_json(&self) -> SpecJson {
        let roles = self
            .split
            .modulus()
            .factors()
            .iter()
            .zip(self.split.roles())
            .map(|(f, r)| (f.value().to_string(), *r))
            .collect();
        let series = |f: fn(&SpecParams) -> &Series| self.params.as_ref().map(|p| f(p).to_json());
        SpecJson {
            n: self.split.modulus().n(),
            vars: Some(self.vars),
            trunc: Some(self.trunc),
            roles,
            alpha: series(|p| &p.alpha),
            beta: series(|p| &p.beta),
            gamma: series(|p| &p.gamma),
        }
    }

    pub fn from_json(json: &SpecJson) -> Result<Self> {
        let modulus = Modulus::new(json.n).map_err(|e| Error::InvalidSpec(e.to_string()))?;
        let mut roles = Vec::with_capacity(modulus.factors().len());
        for f in modulus.factors() {
            let mut keys = vec![f.value().to_string()];
            if f.exponent > 1 {
                keys.push(f.to_string());
            }
            let hits: Vec<Role> = keys
                .iter()
                .filter_map(|k| json.roles.get(k).copied())
                .collect();
            match hits.as_slice() {
                [r] => roles.push(*r),
                [] => return Err(Error::InvalidSpec(format!("no role for factor {f}"))),
                _ => return Err(Error::InvalidSpec(format!("factor {f} given twice"))),
            }
        }
        if json.roles.len() != roles.len() {
            return Err(Error::InvalidSpec(format!(
                "roles {:?} do not match the factors of {}",
                json.roles.keys().collect::<Vec<_>>(),
                json.n
            )));
        }
        let split = CoprimeSplit::new(modulus, roles)?;

        let header = json.alpha.as_ref().map(|a| (a.vars, a.trunc));
        let vars = json.vars.or(header.map(|h| h.0)).unwrap_or(0);
        let trunc = json.trunc.or(header.map(|h| h.1)).unwrap_or(0);

        let params = match (&json.alpha, &json.beta, &json.gamma) {
            (None, None, None) => None,
            (Some(a), Some(b), Some(g)) => {
                let p = split.p();
                if p == 1 {
                    return Err(Error::InvalidSpec("parameters given but P = 1".into()));
                }
                let ctx = TruncationContext::for_modulus(p, vars, trunc)?;
                let parse = |name: &str, s: &SeriesJson| {
                    Series::from_json_in(s, &ctx)
                        .map_err(|e| Error::InvalidSpec(format!("{name}: {e}")))
                };
                Some(SpecParams {
                    alpha: parse("alpha", a)?,
                    beta: parse("beta", b)?,
                    gamma: parse("gamma", g)?,
                })
            }
            _ => {
                return Err(Error::InvalidSpec(
                    "alpha, beta, gamma must be given together".into(),
                ))
            }
        };
        IdempotentSpec::new(split, vars, trunc, params)
    }
}

impl fmt::Display for IdempotentSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.split;
        write!(f, "P={} Q={} R={}", s.p(), s.q(), s.r())?;
        if let Some(ps) = &self.params {
            write!(f, " alpha={} beta={} gamma={}", ps.alpha, ps.beta, ps.gamma)?;
        }
        Ok(())
    }
}

/// JSON form of a spec. `roles` maps each prime-power factor (written as its
/// value, e.g. `"4"`; `"2^2"` is also accepted on input) to `"P"`, `"Q"` or
/// `"R"`. The parameter series are absent when `P = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecJson {
    pub n: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vars: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trunc: Option<u32>,
    pub roles: IndexMap<String, Role>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<SeriesJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<SeriesJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<SeriesJson>,
}

/// A spec together with the matrix it produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifiedIdempotent {
    pub spec: IdempotentSpec,
    pub matrix: Mat2,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifiedJson {
    #[serde(flatten)]
    pub spec: SpecJson,
    pub matrix: Mat2Json,
}

impl ClassifiedIdempotent {
    pub fn to_json(&self) -> ClassifiedJson {
        ClassifiedJson {
            spec: self.spec.to_json(),
            matrix: self.matrix.to_json(),
        }
    }
}

/// `alpha (1 - alpha) == beta gamma` mod `P`; vacuously true when `P = 1`.
pub fn validate_spec(spec: &IdempotentSpec) -> bool {
    match &spec.params {
        None => true,
        Some(SpecParams { alpha, beta, gamma }) => {
            let one = Series::one(alpha.context());
            (alpha * &(&one - alpha)) == (beta * gamma)
        }
    }
}

/// The `gamma` completing `alpha, beta` to a valid spec:
/// `beta^-1 alpha (1 - alpha)`. Needs a unit constant term in `beta`.
pub fn solve_gamma(alpha: &Series, beta: &Series) -> Result<Series> {
    let one = Series::one(alpha.context());
    let numerator = alpha.checked_mul(&(&one - alpha))?;
    beta.inverse()?.checked_mul(&numerator)
}

/// Which of `P`, `Q`, `R` exceed 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Case {
    /// `P, Q, R > 1`
    I,
    /// `P, Q > 1`, `R = 1`
    II,
    /// `P, R > 1`, `Q = 1`
    III,
    /// `P = 1`, `Q, R > 1`
    IV,
    /// `P > 1`, `Q = R = 1`
    V,
    /// `P = R = 1`, `Q > 1`
    VI,
    /// `P = Q = 1`, `R > 1`
    VII,
}

impl Case {
    pub fn of(split: &CoprimeSplit) -> Result<Case> {
        match (split.p() > 1, split.q() > 1, split.r() > 1) {
            (true, true, true) => Ok(Case::I),
            (true, true, false) => Ok(Case::II),
            (true, false, true) => Ok(Case::III),
            (false, true, true) => Ok(Case::IV),
            (true, false, false) => Ok(Case::V),
            (false, true, false) => Ok(Case::VI),
            (false, false, true) => Ok(Case::VII),
            (false, false, false) => Err(Error::InvalidSpec("P = Q = R = 1".into())),
        }
    }
}

/// Builds the matrix mod `n` from the closed formulas, one branch per case.
///
/// With `s = P^phi(Q)`, `t = (PQ)^phi(R)`, `u = P^(phi(Q) phi(R))`:
///
/// | case | top-left | off-diagonal factor | bottom-right |
/// |------|----------|---------------------|--------------|
/// | I    | `(a + (1-a)s)(1-t)` | `1-u` | `((1-a) + a s)(1-t)` |
/// | II   | `a + (1-a)s` | `1-s` | `(1-a) + a s` |
/// | III  | `a(1-P^phi(R))` | `1-P^phi(R)` | `(1-a)(1-P^phi(R))` |
/// | IV   | `1-Q^phi(R)` | `0` | `1-Q^phi(R)` |
/// | V    | `a` | `1` | `1-a` |
/// | VI   | identity | | |
/// | VII  | zero | | |
///
/// The bottom-right entry is `1 - a` mod `P`, `1` mod `Q` and `0` mod `R`;
/// it equals `1 - top-left` only when `Q = R = 1`.
pub fn construct_case(spec: &IdempotentSpec) -> Result<Mat2> {
    if !validate_spec(spec) {
        return Err(Error::InvalidSpec(format!(
            "alpha(1 - alpha) != beta gamma mod {}",
            spec.split.p()
        )));
    }
    let ctx = spec.target_context();
    let n = ctx.n();
    let (p, q, r) = (spec.split.p(), spec.split.q(), spec.split.r());
    let one = Series::one(&ctx);
    let one_minus = |c: u64| sub_mod(1 % n, c, n);

    let case = Case::of(&spec.split)?;
    let lifted = match (&spec.params, case) {
        (Some(ps), _) => Some((
            ps.alpha.lift_to(&ctx)?,
            ps.beta.lift_to(&ctx)?,
            ps.gamma.lift_to(&ctx)?,
        )),
        (None, Case::IV | Case::VI | Case::VII) => None,
        (None, _) => return Err(Error::InvalidSpec(format!("P = {p} requires parameters"))),
    };

    let matrix = match (case, lifted) {
        (Case::I, Some((a, b, g))) => {
            let s = pow_mod(p, totient(q), n);
            let t = pow_mod(mul_u64(p, q, n), totient(r), n);
            let u = pow_mod(s, totient(r), n);
            let ones = &one - &a;
            let top = (&a + &ones.scale_raw(s)).scale_raw(one_minus(t));
            let bottom = (&ones + &a.scale_raw(s)).scale_raw(one_minus(t));
            Mat2::new(top, b.scale_raw(one_minus(u)), g.scale_raw(one_minus(u)), bottom)?
        }
        (Case::II, Some((a, b, g))) => {
            let s = pow_mod(p, totient(q), n);
            let ones = &one - &a;
            let top = &a + &ones.scale_raw(s);
            let bottom = &ones + &a.scale_raw(s);
            Mat2::new(top, b.scale_raw(one_minus(s)), g.scale_raw(one_minus(s)), bottom)?
        }
        (Case::III, Some((a, b, g))) => {
            let k = one_minus(pow_mod(p, totient(r), n));
            let ones = &one - &a;
            Mat2::new(a.scale_raw(k), b.scale_raw(k), g.scale_raw(k), ones.scale_raw(k))?
        }
        (Case::IV, _) => {
            let diag = Series::constant(&ctx, one_minus(pow_mod(q, totient(r), n)));
            let zero = Series::zero(&ctx);
            Mat2::new(diag.clone(), zero.clone(), zero, diag)?
        }
        (Case::V, Some((a, b, g))) => {
            let ones = &one - &a;
            Mat2::new(a, b, g, ones)?
        }
        (Case::VI, _) => Mat2::identity(&ctx),
        (Case::VII, _) => Mat2::zero(&ctx),
        (_, None) => unreachable!("parameter presence checked above"),
    };
    Ok(matrix)
}

fn mul_u64(a: u64, b: u64, n: u64) -> u64 {
    crate::zn_arith::mul_mod(a % n, b % n, n)
}

fn prime_power_context(ctx: &TruncationContext, prime: u64, exponent: u32) -> TruncationContext {
    let m = Modulus::from_factors(&[(prime, exponent)]).expect("factor of a valid modulus");
    ctx.with_modulus(m)
}

/// Builds the matrix mod `n` by CRT: the trace-one matrix mod each `P`
/// factor, the identity mod each `Q` factor, zero mod each `R` factor.
pub fn construct_crt(spec: &IdempotentSpec) -> Result<Mat2> {
    if !validate_spec(spec) {
        return Err(Error::InvalidSpec(format!(
            "alpha(1 - alpha) != beta gamma mod {}",
            spec.split.p()
        )));
    }
    Case::of(&spec.split)?;
    let ctx = spec.target_context();
    let modulus = spec.split.modulus();

    let components: Vec<Mat2> = modulus
        .factors()
        .iter()
        .zip(spec.split.roles())
        .map(|(f, role)| {
            let local = prime_power_context(&ctx, f.prime, f.exponent);
            Ok(match role {
                Role::Q => Mat2::identity(&local),
                Role::R => Mat2::zero(&local),
                Role::P => {
                    let ps = spec
                        .params
                        .as_ref()
                        .ok_or_else(|| Error::InvalidSpec("P part without parameters".into()))?;
                    let a = ps.alpha.reduce_to(&local)?;
                    let d = &Series::one(&local) - &a;
                    Mat2::new(a, ps.beta.reduce_to(&local)?, ps.gamma.reduce_to(&local)?, d)?
                }
            })
        })
        .collect::<Result<_>>()?;

    let mut entries = Vec::with_capacity(4);
    for e in 0..4 {
        let coeffs = (0..ctx.len())
            .map(|k| {
                let parts: Vec<u64> = components.iter().map(|c| c.entries()[e].coeffs()[k]).collect();
                crt_combine(modulus, &parts).map(|r| r.value())
            })
            .collect::<Result<Vec<u64>>>()?;
        entries.push(Series::from_coeffs(&ctx, coeffs)?);
    }
    let [a, b, c, d]: [Series; 4] = entries.try_into().expect("four entries");
    Mat2::new(a, b, c, d)
}

/// Role of one prime-power reduction of an idempotent: identity gives `Q`,
/// zero gives `R`, the trace-one shape with `a(1-a) = bc` gives `P`.
pub fn classify_component(local: &Mat2) -> Result<Role> {
    let ctx = local.context();
    let is_q = local.is_identity();
    let is_r = local.is_zero();
    let a = local.a11();
    let one = Series::one(ctx);
    let is_p = *local.a22() == &one - a && a * &(&one - a) == local.a12() * local.a21();
    // the identity and zero matrices both fail a22 = 1 - a11 in a nonzero ring
    assert!(
        [is_p, is_q, is_r].iter().filter(|&&b| b).count() <= 1,
        "overlapping shapes mod {}",
        ctx.n()
    );
    match (is_p, is_q, is_r) {
        (true, _, _) => Ok(Role::P),
        (_, true, _) => Ok(Role::Q),
        (_, _, true) => Ok(Role::R),
        _ => Err(Error::ShapeViolation {
            prime_power: ctx.n(),
        }),
    }
}

/// Recovers the canonical spec of an idempotent matrix.
pub fn classify(matrix: &Mat2) -> Result<IdempotentSpec> {
    if !matrix.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    let ctx = matrix.context();
    let modulus = ctx.modulus();
    let roles = modulus
        .factors()
        .iter()
        .map(|f| {
            let local = prime_power_context(ctx, f.prime, f.exponent);
            classify_component(&matrix.reduce_to(&local)?)
        })
        .collect::<Result<Vec<Role>>>()?;
    let split = CoprimeSplit::new(modulus.clone(), roles)?;
    if split.p() == 1 {
        return IdempotentSpec::trivial(split, ctx.vars(), ctx.trunc());
    }
    let pctx = ctx.with_modulus(Modulus::new(split.p())?);
    IdempotentSpec::with_params(
        split,
        matrix.a11().reduce_to(&pctx)?,
        matrix.a12().reduce_to(&pctx)?,
        matrix.a21().reduce_to(&pctx)?,
    )
}

/// Work done by [`enumerate_all`]: `P^(3M)` parameter triples for the
/// largest part `P = n`, where `M` is the window size.
pub fn enumeration_cost(ctx: &TruncationContext) -> Option<u128> {
    (ctx.n() as u128).checked_pow(3 * ctx.len() as u32)
}

fn all_series(ctx: &TruncationContext) -> Vec<Series> {
    let n = ctx.n();
    let m = ctx.len();
    let total = (n as usize).pow(m as u32);
    (0..total)
        .map(|mut idx| {
            let mut coeffs = vec![0u64; m];
            for c in coeffs.iter_mut().rev() {
                *c = (idx % n as usize) as u64;
                idx /= n as usize;
            }
            Series::from_coeffs(ctx, coeffs).expect("window length")
        })
        .collect()
}

/// Every valid canonical spec for one split.
pub fn specs_for_split(
    split: &CoprimeSplit,
    vars: usize,
    trunc: u32,
) -> Result<Vec<IdempotentSpec>> {
    if split.p() == 1 {
        return Ok(vec![IdempotentSpec::trivial(split.clone(), vars, trunc)?]);
    }
    let pctx = TruncationContext::for_modulus(split.p(), vars, trunc)?;
    let window = all_series(&pctx);
    let one = Series::one(&pctx);
    let pairs: Vec<(usize, usize)> = (0..window.len())
        .flat_map(|a| (0..window.len()).map(move |b| (a, b)))
        .collect();
    pairs
        .par_iter()
        .flat_map_iter(|&(a, b)| {
            let alpha = &window[a];
            let beta = &window[b];
            let target = alpha * &(&one - alpha);
            window
                .iter()
                .filter(move |gamma| beta * *gamma == target)
                .map(move |gamma| {
                    IdempotentSpec::with_params(
                        split.clone(),
                        alpha.clone(),
                        beta.clone(),
                        gamma.clone(),
                    )
                })
        })
        .collect()
}

/// All idempotents of `M_2` over the window, sorted by matrix and without
/// duplicates, each paired with its spec.
pub fn enumerate_all(ctx: &TruncationContext, budget: u128) -> Result<Vec<ClassifiedIdempotent>> {
    match enumeration_cost(ctx) {
        Some(cost) if cost <= budget => {}
        cost => {
            return Err(Error::BudgetExceeded {
                required: cost.map_or_else(
                    || format!("{}^{}", ctx.n(), 3 * ctx.len()),
                    |c| c.to_string(),
                ),
                budget,
            })
        }
    }
    let mut found: BTreeMap<Mat2, IdempotentSpec> = BTreeMap::new();
    for split in CoprimeSplit::all(ctx.modulus()) {
        let specs = specs_for_split(&split, ctx.vars(), ctx.trunc())?;
        let built: Vec<(Mat2, IdempotentSpec)> = specs
            .into_par_iter()
            .map(|spec| construct_case(&spec).map(|m| (m, spec)))
            .collect::<Result<_>>()?;
        for (matrix, spec) in built {
            found.entry(matrix).or_insert(spec);
        }
    }
    Ok(found
        .into_iter()
        .map(|(matrix, spec)| ClassifiedIdempotent { spec, matrix })
        .collect())
}
