//! 2x2 matrices over truncated series.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tseries::{Series, SeriesJson, TruncationContext};
use crate::zn_arith::Residue;

/// A 2x2 matrix whose four entries share one truncation window.
///
/// Ordering compares the entries `a11, a12, a21, a22` in turn, which is the
/// canonical ordering used for enumeration output.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Mat2 {
    entries: [Series; 4],
}

impl Mat2 {
    pub fn new(a11: Series, a12: Series, a21: Series, a22: Series) -> Result<Self> {
        let ctx = a11.context();
        for e in [&a12, &a21, &a22] {
            if e.context() != ctx {
                return Err(Error::ContextMismatch(format!(
                    "matrix entries in {ctx} and {}",
                    e.context()
                )));
            }
        }
        Ok(Mat2 {
            entries: [a11, a12, a21, a22],
        })
    }

    pub fn identity(ctx: &TruncationContext) -> Self {
        let (o, z) = (Series::one(ctx), Series::zero(ctx));
        Mat2 {
            entries: [o.clone(), z.clone(), z, o],
        }
    }

    pub fn zero(ctx: &TruncationContext) -> Self {
        let z = Series::zero(ctx);
        Mat2 {
            entries: [z.clone(), z.clone(), z.clone(), z],
        }
    }

    /// Matrix of constants `(a, b; c, d)`.
    pub fn from_constants(ctx: &TruncationContext, [a, b, c, d]: [u64; 4]) -> Self {
        Mat2 {
            entries: [
                Series::constant(ctx, a),
                Series::constant(ctx, b),
                Series::constant(ctx, c),
                Series::constant(ctx, d),
            ],
        }
    }

    pub fn context(&self) -> &TruncationContext {
        self.entries[0].context()
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[Series; 4] {
        &self.entries
    }

    pub fn a11(&self) -> &Series {
        &self.entries[0]
    }

    pub fn a12(&self) -> &Series {
        &self.entries[1]
    }

    pub fn a21(&self) -> &Series {
        &self.entries[2]
    }

    pub fn a22(&self) -> &Series {
        &self.entries[3]
    }

    fn check(&self, other: &Mat2) -> Result<()> {
        if self.context() != other.context() {
            return Err(Error::ContextMismatch(format!(
                "{} vs {}",
                self.context(),
                other.context()
            )));
        }
        Ok(())
    }

    fn map(&self, f: impl Fn(&Series) -> Series) -> Mat2 {
        Mat2 {
            entries: [
                f(&self.entries[0]),
                f(&self.entries[1]),
                f(&self.entries[2]),
                f(&self.entries[3]),
            ],
        }
    }

    pub fn add(&self, other: &Mat2) -> Result<Mat2> {
        self.check(other)?;
        let [a, b, c, d] = &self.entries;
        let [e, f, g, h] = &other.entries;
        Ok(Mat2 {
            entries: [a + e, b + f, c + g, d + h],
        })
    }

    pub fn sub(&self, other: &Mat2) -> Result<Mat2> {
        self.check(other)?;
        let [a, b, c, d] = &self.entries;
        let [e, f, g, h] = &other.entries;
        Ok(Mat2 {
            entries: [a - e, b - f, c - g, d - h],
        })
    }

    pub fn mul(&self, other: &Mat2) -> Result<Mat2> {
        self.check(other)?;
        let [a, b, c, d] = &self.entries;
        let [e, f, g, h] = &other.entries;
        Ok(Mat2 {
            entries: [
                &(a * e) + &(b * g),
                &(a * f) + &(b * h),
                &(c * e) + &(d * g),
                &(c * f) + &(d * h),
            ],
        })
    }

    pub fn scale(&self, c: Residue) -> Result<Mat2> {
        if c.modulus() != self.context().n() {
            return Err(Error::ModulusMismatch {
                left: self.context().n(),
                right: c.modulus(),
            });
        }
        Ok(self.map(|s| s.scale_raw(c.value())))
    }

    /// Multiplies every entry by the series `s`.
    pub fn scale_series(&self, s: &Series) -> Result<Mat2> {
        if s.context() != self.context() {
            return Err(Error::ContextMismatch(format!(
                "{} vs {}",
                s.context(),
                self.context()
            )));
        }
        Ok(self.map(|e| e * s))
    }

    pub fn trace(&self) -> Series {
        &self.entries[0] + &self.entries[3]
    }

    pub fn det(&self) -> Series {
        let [a, b, c, d] = &self.entries;
        &(a * d) - &(b * c)
    }

    /// `A^2 - tr(A) A + det(A) I`, which vanishes for every 2x2 matrix over a
    /// commutative ring.
    pub fn cayley_hamilton_residual(&self) -> Mat2 {
        let sq = self.mul(self).expect("same context");
        let tr_a = self.scale_series(&self.trace()).expect("same context");
        let det_i = Mat2::identity(self.context())
            .scale_series(&self.det())
            .expect("same context");
        sq.sub(&tr_a)
            .and_then(|m| m.add(&det_i))
            .expect("same context")
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self).map(|sq| sq == *self).unwrap_or(false)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Series::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2::identity(self.context())
    }

    /// Entrywise reduction into `target`, whose modulus must divide ours.
    pub fn reduce_to(&self, target: &TruncationContext) -> Result<Mat2> {
        let [a, b, c, d] = &self.entries;
        Ok(Mat2 {
            entries: [
                a.reduce_to(target)?,
                b.reduce_to(target)?,
                c.reduce_to(target)?,
                d.reduce_to(target)?,
            ],
        })
    }

    pub fn to_json(&self) -> Mat2Json {
        let [a, b, c, d] = &self.entries;
        Mat2Json {
            entries: [[a.to_json(), b.to_json()], [c.to_json(), d.to_json()]],
        }
    }

    pub fn from_json(json: &Mat2Json) -> Result<Mat2> {
        let first = &json.entries[0][0];
        let ctx = TruncationContext::for_modulus(first.n, first.vars, first.trunc)?;
        let [[a, b], [c, d]] = &json.entries;
        Mat2::new(
            Series::from_json_in(a, &ctx)?,
            Series::from_json_in(b, &ctx)?,
            Series::from_json_in(c, &ctx)?,
            Series::from_json_in(d, &ctx)?,
        )
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.entries;
        write!(f, "({a}, {b}; {c}, {d}) over {}", self.context())
    }
}

/// JSON form: `{"entries": [[a11, a12], [a21, a22]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Mat2Json {
    pub entries: [[SeriesJson; 2]; 2],
}
