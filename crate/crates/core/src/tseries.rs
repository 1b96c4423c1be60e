//! Truncated multivariate power series over Z_n.
//!
//! A [`TruncationContext`] fixes the modulus, the number of variables and the
//! total-degree bound `D`. Series live in the quotient of `Z_n[[x_1..x_v]]` by
//! all monomials of degree `> D`; products drop those terms.
//!
//! Coefficients are stored densely, one slot per monomial of the window in
//! graded-lex order. Zero slots are simply zero, so equality on the stored
//! vector is coefficientwise equality.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::zn_arith::{add_mod, inv_mod, mul_mod, sub_mod, Modulus, Residue};

/// Exponent vector of a monomial.
pub type Monomial = Vec<u32>;

#[derive(Debug)]
struct Window {
    modulus: Modulus,
    vars: usize,
    trunc: u32,
    monomials: Vec<Monomial>,
    degrees: Vec<u32>,
    index: HashMap<Monomial, usize>,
    // products[i] lists (j, k): monomial i times monomial j is monomial k
    products: Vec<Vec<(usize, usize)>>,
}

/// Shared description of a truncation window. Cheap to clone.
#[derive(Debug, Clone)]
pub struct TruncationContext {
    inner: Arc<Window>,
}

impl PartialEq for TruncationContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.modulus.n() == other.inner.modulus.n()
                && self.inner.vars == other.inner.vars
                && self.inner.trunc == other.inner.trunc)
    }
}

impl Eq for TruncationContext {}

fn monomials_of_degree(vars: usize, degree: u32, out: &mut Vec<Monomial>) {
    fn rec(prefix: &mut Monomial, left: usize, remaining: u32, out: &mut Vec<Monomial>) {
        if left == 1 {
            prefix.push(remaining);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=remaining).rev() {
            prefix.push(e);
            rec(prefix, left - 1, remaining - e, out);
            prefix.pop();
        }
    }
    if vars == 0 {
        if degree == 0 {
            out.push(Vec::new());
        }
        return;
    }
    rec(&mut Vec::with_capacity(vars), vars, degree, out);
}

/// Number of monomials of total degree `<= trunc` in `vars` variables,
/// i.e. `C(vars + trunc, trunc)`, or `None` on overflow.
pub fn window_size(vars: usize, trunc: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for i in 1..=trunc as u128 {
        acc = acc.checked_mul(vars as u128 + i)? / i;
    }
    Some(acc)
}

impl TruncationContext {
    pub fn new(modulus: Modulus, vars: usize, trunc: u32) -> Self {
        let mut monomials = Vec::new();
        for d in 0..=trunc {
            monomials_of_degree(vars, d, &mut monomials);
        }
        let degrees: Vec<u32> = monomials.iter().map(|m| m.iter().sum()).collect();
        let index: HashMap<Monomial, usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let products = monomials
            .iter()
            .enumerate()
            .map(|(i, a)| {
                monomials
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| degrees[i] + degrees[*j] <= trunc)
                    .map(|(j, b)| {
                        let prod: Monomial = a.iter().zip(b).map(|(x, y)| x + y).collect();
                        (j, index[&prod])
                    })
                    .collect()
            })
            .collect();
        TruncationContext {
            inner: Arc::new(Window {
                modulus,
                vars,
                trunc,
                monomials,
                degrees,
                index,
                products,
            }),
        }
    }

    /// Convenience constructor factoring `n`.
    pub fn for_modulus(n: u64, vars: usize, trunc: u32) -> Result<Self> {
        Ok(Self::new(Modulus::new(n)?, vars, trunc))
    }

    pub fn modulus(&self) -> &Modulus {
        &self.inner.modulus
    }

    pub fn n(&self) -> u64 {
        self.inner.modulus.n()
    }

    pub fn vars(&self) -> usize {
        self.inner.vars
    }

    pub fn trunc(&self) -> u32 {
        self.inner.trunc
    }

    /// Monomials of the window in graded-lex order.
    pub fn monomials(&self) -> &[Monomial] {
        &self.inner.monomials
    }

    pub fn len(&self) -> usize {
        self.inner.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.monomials.is_empty()
    }

    pub fn index_of(&self, monomial: &[u32]) -> Option<usize> {
        self.inner.index.get(monomial).copied()
    }

    /// Same variables and truncation with a different modulus.
    pub fn with_modulus(&self, modulus: Modulus) -> Self {
        if modulus.n() == self.n() {
            return self.clone();
        }
        TruncationContext::new(modulus, self.vars(), self.trunc())
    }

    /// Same modulus and variables with a smaller degree bound.
    pub fn with_trunc(&self, trunc: u32) -> Self {
        TruncationContext::new(self.modulus().clone(), self.vars(), trunc)
    }

    fn check(&self, other: &TruncationContext) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ContextMismatch(format!("{self} vs {other}")))
        }
    }
}

impl fmt::Display for TruncationContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{}[v={}]/deg>{}", self.n(), self.vars(), self.trunc())
    }
}

/// A truncated power series in a fixed window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    ctx: TruncationContext,
    coeffs: Vec<u64>,
}

impl Series {
    pub fn zero(ctx: &TruncationContext) -> Self {
        Series {
            ctx: ctx.clone(),
            coeffs: vec![0; ctx.len()],
        }
    }

    pub fn one(ctx: &TruncationContext) -> Self {
        Self::constant(ctx, 1)
    }

    pub fn constant(ctx: &TruncationContext, c: u64) -> Self {
        let mut s = Self::zero(ctx);
        s.coeffs[0] = c % ctx.n();
        s
    }

    /// A single term `coef * x^exponents`.
    pub fn monomial(ctx: &TruncationContext, exponents: &[u32], coef: u64) -> Result<Self> {
        let idx = ctx.index_of(exponents).ok_or_else(|| {
            Error::OutOfRange(format!("monomial {exponents:?} outside {ctx}"))
        })?;
        let mut s = Self::zero(ctx);
        s.coeffs[idx] = coef % ctx.n();
        Ok(s)
    }

    /// Builds a series from a dense coefficient vector in window order.
    pub fn from_coeffs(ctx: &TruncationContext, coeffs: Vec<u64>) -> Result<Self> {
        if coeffs.len() != ctx.len() {
            return Err(Error::LengthMismatch {
                expected: ctx.len(),
                got: coeffs.len(),
            });
        }
        let n = ctx.n();
        Ok(Series {
            ctx: ctx.clone(),
            coeffs: coeffs.into_iter().map(|c| c % n).collect(),
        })
    }

    /// Builds a series from `(exponents, coefficient)` pairs; repeated
    /// monomials accumulate.
    pub fn from_terms<'a, I>(ctx: &TruncationContext, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a [u32], u64)>,
    {
        let mut s = Self::zero(ctx);
        for (exp, c) in terms {
            let idx = ctx.index_of(exp).ok_or_else(|| {
                Error::OutOfRange(format!("monomial {exp:?} outside {ctx}"))
            })?;
            s.coeffs[idx] = add_mod(s.coeffs[idx], c % ctx.n(), ctx.n());
        }
        Ok(s)
    }

    pub fn context(&self) -> &TruncationContext {
        &self.ctx
    }

    /// Dense coefficients in graded-lex window order.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Nonzero terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, Residue)> + '_ {
        let n = self.ctx.n();
        self.ctx
            .monomials()
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, &c)| c != 0)
            .map(move |(m, &c)| (m, Residue::new(c, n)))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn checked_add(&self, other: &Series) -> Result<Series> {
        self.ctx.check(&other.ctx)?;
        let n = self.ctx.n();
        Ok(self.zip_with(other, |a, b| add_mod(a, b, n)))
    }

    pub fn checked_sub(&self, other: &Series) -> Result<Series> {
        self.ctx.check(&other.ctx)?;
        let n = self.ctx.n();
        Ok(self.zip_with(other, |a, b| sub_mod(a, b, n)))
    }

    fn zip_with(&self, other: &Series, f: impl Fn(u64, u64) -> u64) -> Series {
        Series {
            ctx: self.ctx.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn negate(&self) -> Series {
        let n = self.ctx.n();
        Series {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|&a| sub_mod(0, a, n)).collect(),
        }
    }

    pub fn checked_scale(&self, c: Residue) -> Result<Series> {
        let n = self.ctx.n();
        if c.modulus() != n {
            return Err(Error::ModulusMismatch {
                left: n,
                right: c.modulus(),
            });
        }
        Ok(self.scale_raw(c.value()))
    }

    pub(crate) fn scale_raw(&self, c: u64) -> Series {
        let n = self.ctx.n();
        Series {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|&a| mul_mod(a, c, n)).collect(),
        }
    }

    /// Truncated product.
    pub fn checked_mul(&self, other: &Series) -> Result<Series> {
        self.ctx.check(&other.ctx)?;
        let n = self.ctx.n();
        let mut out = vec![0u64; self.coeffs.len()];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for &(j, k) in &self.ctx.inner.products[i] {
                let b = other.coeffs[j];
                if b != 0 {
                    out[k] = add_mod(out[k], mul_mod(a, b, n), n);
                }
            }
        }
        Ok(Series {
            ctx: self.ctx.clone(),
            coeffs: out,
        })
    }

    pub fn constant_term(&self) -> Residue {
        Residue::new(self.coeffs[0], self.ctx.n())
    }

    /// The graded piece of total degree `degree`.
    pub fn homogeneous_component(&self, degree: u32) -> Result<Series> {
        if degree > self.ctx.trunc() {
            return Err(Error::OutOfRange(format!(
                "degree {degree} above truncation {}",
                self.ctx.trunc()
            )));
        }
        let degrees = &self.ctx.inner.degrees;
        Ok(Series {
            ctx: self.ctx.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(degrees)
                .map(|(&c, &d)| if d == degree { c } else { 0 })
                .collect(),
        })
    }

    pub fn is_idempotent(&self) -> bool {
        self.checked_mul(self).map(|sq| sq == *self).unwrap_or(false)
    }

    /// Inverse of a series whose constant term is a unit mod n.
    pub fn inverse(&self) -> Result<Series> {
        let n = self.ctx.n();
        let c0_inv = if n == 1 {
            0
        } else {
            inv_mod(self.coeffs[0], n)
                .ok_or_else(|| Error::NonUnit(format!("constant term {}", self.constant_term())))?
        };
        // g <- c0^-1 (1 - (f - c0) g); each pass fixes one more degree
        let mut tail = self.clone();
        tail.coeffs[0] = 0;
        let one = Series::one(&self.ctx);
        let mut g = Series::constant(&self.ctx, c0_inv);
        for _ in 0..self.ctx.trunc() {
            g = (&one - &(&tail * &g)).scale_raw(c0_inv);
        }
        Ok(g)
    }

    /// Image under Z_n -> Z_m in the same window, for `m` dividing `n`.
    pub fn reduce_to(&self, target: &TruncationContext) -> Result<Series> {
        self.check_window(target)?;
        let m = target.n();
        if !self.ctx.n().is_multiple_of(m) {
            return Err(Error::ModulusMismatch {
                left: self.ctx.n(),
                right: m,
            });
        }
        Ok(Series {
            ctx: target.clone(),
            coeffs: self.coeffs.iter().map(|&c| c % m).collect(),
        })
    }

    /// Reinterprets the stored coefficients (integers in `[0, n)`) in another
    /// modulus with the same window.
    pub fn lift_to(&self, target: &TruncationContext) -> Result<Series> {
        self.check_window(target)?;
        let m = target.n();
        Ok(Series {
            ctx: target.clone(),
            coeffs: self.coeffs.iter().map(|&c| c % m).collect(),
        })
    }

    /// Drops all terms of degree above `target.trunc()`.
    pub fn truncate_to(&self, target: &TruncationContext) -> Result<Series> {
        if target.n() != self.ctx.n()
            || target.vars() != self.ctx.vars()
            || target.trunc() > self.ctx.trunc()
        {
            return Err(Error::ContextMismatch(format!(
                "cannot truncate {} to {target}",
                self.ctx
            )));
        }
        // graded order puts the kept monomials in a prefix
        Ok(Series {
            ctx: target.clone(),
            coeffs: self.coeffs[..target.len()].to_vec(),
        })
    }

    fn check_window(&self, target: &TruncationContext) -> Result<()> {
        if target.vars() != self.ctx.vars() || target.trunc() != self.ctx.trunc() {
            return Err(Error::ContextMismatch(format!("{} vs {target}", self.ctx)));
        }
        Ok(())
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            n: self.ctx.n(),
            vars: self.ctx.vars(),
            trunc: self.ctx.trunc(),
            terms: self
                .terms()
                .map(|(m, c)| TermJson {
                    exp: m.clone(),
                    coef: c.value(),
                })
                .collect(),
        }
    }

    /// Parses the JSON form into `ctx`, which must match its header.
    pub fn from_json_in(json: &SeriesJson, ctx: &TruncationContext) -> Result<Series> {
        if json.n != ctx.n() || json.vars != ctx.vars() || json.trunc != ctx.trunc() {
            return Err(Error::ContextMismatch(format!(
                "series header (n={}, vars={}, trunc={}) vs {ctx}",
                json.n, json.vars, json.trunc
            )));
        }
        let mut s = Series::zero(ctx);
        for term in &json.terms {
            if term.exp.len() != ctx.vars() {
                return Err(Error::Parse(format!(
                    "exponent {:?} has {} entries, expected {}",
                    term.exp,
                    term.exp.len(),
                    ctx.vars()
                )));
            }
            if term.coef >= ctx.n() {
                return Err(Error::Parse(format!(
                    "coefficient {} not in [0, {})",
                    term.coef,
                    ctx.n()
                )));
            }
            let idx = ctx.index_of(&term.exp).ok_or_else(|| {
                Error::Parse(format!("monomial {:?} exceeds degree {}", term.exp, ctx.trunc()))
            })?;
            if s.coeffs[idx] != 0 {
                return Err(Error::Parse(format!("duplicate monomial {:?}", term.exp)));
            }
            s.coeffs[idx] = term.coef;
        }
        Ok(s)
    }

    pub fn from_json(json: &SeriesJson) -> Result<Series> {
        let ctx = TruncationContext::for_modulus(json.n, json.vars, json.trunc)?;
        Series::from_json_in(json, &ctx)
    }
}

impl PartialOrd for Series {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Series {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ctx.n(), self.ctx.vars(), self.ctx.trunc())
            .cmp(&(other.ctx.n(), other.ctx.vars(), other.ctx.trunc()))
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, e)
                    }
                })
                .collect();
            match (c.value(), vars.is_empty()) {
                (c, true) => write!(f, "{c}")?,
                (1, false) => write!(f, "{}", vars.join("*"))?,
                (c, false) => write!(f, "{c}*{}", vars.join("*"))?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Series> for &Series {
            type Output = Series;
            /// Panics if the operands live in different windows.
            fn $method(self, rhs: &Series) -> Series {
                self.$checked(rhs).expect("series operands share a context")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.negate()
    }
}

/// One term of the JSON form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coef: u64,
}

/// JSON form: `{"n", "vars", "trunc", "terms": [{"exp", "coef"}]}` with
/// terms in graded-lex order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesJson {
    pub n: u64,
    pub vars: usize,
    pub trunc: u32,
    pub terms: Vec<TermJson>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx(n: u64, vars: usize, trunc: u32) -> TruncationContext {
        TruncationContext::for_modulus(n, vars, trunc).unwrap()
    }

    fn poly(c: &TruncationContext, terms: &[(&[u32], u64)]) -> Series {
        Series::from_terms(c, terms.iter().copied()).unwrap()
    }

    #[test]
    fn window_is_graded_lex() {
        let c = ctx(5, 2, 2);
        assert_eq!(
            c.monomials(),
            &[
                vec![0, 0],
                vec![1, 0],
                vec![0, 1],
                vec![2, 0],
                vec![1, 1],
                vec![0, 2]
            ]
        );
        assert_eq!(window_size(2, 2), Some(6));
        assert_eq!(window_size(3, 4), Some(35));
        assert_eq!(ctx(5, 0, 3).len(), 1);
        assert_eq!(ctx(5, 3, 0).len(), 1);
    }

    #[test]
    fn additive_examples() {
        let c = ctx(6, 1, 2);
        let f = poly(&c, &[(&[0], 3), (&[1], 2), (&[2], 5)]);
        assert_eq!(&f + &Series::zero(&c), f);
        assert!((&f - &f).is_zero());
        let c2 = ctx(2, 1, 2);
        let g = poly(&c2, &[(&[1], 1), (&[0], 1)]);
        assert!((&g + &g).is_zero());
        assert_eq!(&(-&f) + &f, Series::zero(&c));
        assert_eq!(f.checked_scale(Residue::new(2, 6)).unwrap(), &f + &f);
    }

    #[test]
    fn multiplicative_examples() {
        let c = ctx(7, 2, 3);
        let f = poly(&c, &[(&[0, 0], 3), (&[1, 0], 2), (&[1, 2], 6)]);
        assert_eq!(&Series::one(&c) * &f, f);

        let c1 = ctx(5, 1, 1);
        let x = Series::monomial(&c1, &[1], 1).unwrap();
        assert!((&x * &x).is_zero());

        let c3 = ctx(2, 1, 3);
        let f = poly(&c3, &[(&[1], 1), (&[2], 1)]);
        let x = Series::monomial(&c3, &[1], 1).unwrap();
        assert_eq!(&f * &x, poly(&c3, &[(&[2], 1), (&[3], 1)]));
    }

    #[test]
    fn graded_pieces() {
        let c = ctx(6, 2, 2);
        let f = poly(&c, &[(&[0, 0], 3), (&[1, 0], 2), (&[1, 1], 1)]);
        assert_eq!(f.constant_term(), Residue::new(3, 6));
        assert_eq!(
            f.homogeneous_component(2).unwrap(),
            poly(&c, &[(&[1, 1], 1)])
        );
        let mut sum = Series::zero(&c);
        for i in 0..=2 {
            sum = &sum + &f.homogeneous_component(i).unwrap();
        }
        assert_eq!(sum, f);
        assert!(matches!(
            f.homogeneous_component(3),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn idempotent_examples() {
        let c = ctx(6, 1, 2);
        assert!(Series::one(&c).is_idempotent());
        assert!(Series::constant(&c, 3).is_idempotent());
        let c4 = ctx(4, 1, 2);
        assert!(!poly(&c4, &[(&[0], 1), (&[1], 1)]).is_idempotent());
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let a = Series::one(&ctx(6, 1, 2));
        let b = Series::one(&ctx(6, 1, 3));
        assert!(matches!(a.checked_add(&b), Err(Error::ContextMismatch(_))));
        assert!(matches!(a.checked_mul(&b), Err(Error::ContextMismatch(_))));
        let c = Series::one(&ctx(5, 1, 2));
        assert!(a.checked_sub(&c).is_err());
    }

    #[test]
    fn inverse_of_unit_series() {
        let c = ctx(9, 2, 3);
        let f = poly(&c, &[(&[0, 0], 2), (&[1, 0], 4), (&[1, 1], 7), (&[0, 3], 1)]);
        let g = f.inverse().unwrap();
        assert_eq!(&f * &g, Series::one(&c));
        let h = poly(&c, &[(&[0, 0], 3), (&[1, 0], 1)]);
        assert!(matches!(h.inverse(), Err(Error::NonUnit(_))));
    }

    #[test]
    fn json_shape() {
        let c = ctx(6, 2, 2);
        let f = poly(&c, &[(&[1, 1], 1), (&[0, 0], 3), (&[0, 1], 2)]);
        let js = serde_json::to_string(&f.to_json()).unwrap();
        assert_eq!(
            js,
            r#"{"n":6,"vars":2,"trunc":2,"terms":[{"exp":[0,0],"coef":3},{"exp":[0,1],"coef":2},{"exp":[1,1],"coef":1}]}"#
        );
        let back = Series::from_json(&serde_json::from_str(&js).unwrap()).unwrap();
        assert_eq!(back, f);

        let bad: SeriesJson =
            serde_json::from_str(r#"{"n":6,"vars":1,"trunc":1,"terms":[{"exp":[2],"coef":1}]}"#)
                .unwrap();
        assert!(matches!(Series::from_json(&bad), Err(Error::Parse(_))));
        let bad: SeriesJson =
            serde_json::from_str(r#"{"n":6,"vars":1,"trunc":1,"terms":[{"exp":[0],"coef":6}]}"#)
                .unwrap();
        assert!(Series::from_json(&bad).is_err());
    }

    fn arb_series(c: TruncationContext) -> impl Strategy<Value = Series> {
        let n = c.n();
        proptest::collection::vec(0..n, c.len())
            .prop_map(move |v| Series::from_coeffs(&c, v).unwrap())
    }

    fn arb_triple() -> impl Strategy<Value = (Series, Series, Series)> {
        (2u64..40, 0usize..3, 0u32..4).prop_flat_map(|(n, v, d)| {
            let c = ctx(n, v, d);
            (arb_series(c.clone()), arb_series(c.clone()), arb_series(c))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn ring_axioms((f, g, h) in arb_triple()) {
            prop_assert_eq!(&f * &g, &g * &f);
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        }
    }

    proptest! {
        #[test]
        fn truncation_commutes_with_ring_ops((f, g, _h) in arb_triple(), drop in 0u32..4) {
            let c = f.context().clone();
            let lower = c.with_trunc(c.trunc().saturating_sub(drop));
            let t = |s: &Series| s.truncate_to(&lower).unwrap();
            prop_assert_eq!(t(&(&f + &g)), &t(&f) + &t(&g));
            prop_assert_eq!(t(&(&f * &g)), &t(&f) * &t(&g));
        }

        #[test]
        fn json_roundtrip((f, _g, _h) in arb_triple()) {
            let js = serde_json::to_string(&f.to_json()).unwrap();
            let back = Series::from_json(&serde_json::from_str(&js).unwrap()).unwrap();
            prop_assert_eq!(back, f);
        }
    }
}
