//! Arithmetic in the residue ring Z_n.
//!
//! Every modulus carries its prime-power factorization, which drives the
//! Chinese remainder combination and the splits of `n` into the three
//! pairwise coprime parts `P`, `Q`, `R`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// One prime-power factor `p^d` of a modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePower {
    pub prime: u64,
    pub exponent: u32,
}

impl PrimePower {
    pub fn value(&self) -> u64 {
        self.prime.pow(self.exponent)
    }

    pub fn totient(&self) -> u64 {
        self.prime.pow(self.exponent - 1) * (self.prime - 1)
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 1 {
            write!(f, "{}", self.prime)
        } else {
            write!(f, "{}^{}", self.prime, self.exponent)
        }
    }
}

/// A modulus `n > 1` together with its complete factorization.
///
/// Primes are strictly increasing; the product of the prime powers is `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Modulus {
    n: u64,
    factors: Vec<PrimePower>,
}

impl Modulus {
    pub fn new(n: u64) -> Result<Self> {
        factorize(n)
    }

    /// Rebuilds a modulus from explicit `(p, d)` pairs, checking every invariant.
    pub fn from_factors(pairs: &[(u64, u32)]) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidModulus(1));
        }
        let mut n: u64 = 1;
        let mut factors = Vec::with_capacity(pairs.len());
        let mut last = 0;
        for &(prime, exponent) in pairs {
            if prime <= last || exponent == 0 || !is_prime(prime) {
                return Err(Error::OutOfRange(format!(
                    "bad factor ({prime}, {exponent})"
                )));
            }
            last = prime;
            let pp = prime
                .checked_pow(exponent)
                .and_then(|v| n.checked_mul(v))
                .ok_or_else(|| Error::OutOfRange("factorization overflows u64".into()))?;
            n = pp;
            factors.push(PrimePower { prime, exponent });
        }
        Ok(Modulus { n, factors })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[PrimePower] {
        &self.factors
    }

    pub fn residue(&self, value: u64) -> Residue {
        Residue::new(value, self.n)
    }

    pub fn totient(&self) -> u64 {
        self.factors.iter().map(PrimePower::totient).product()
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.n)
    }
}

impl Serialize for Modulus {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<(u64, u32)> = self.factors.iter().map(|f| (f.prime, f.exponent)).collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Modulus {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<(u64, u32)>::deserialize(deserializer)?;
        Modulus::from_factors(&pairs).map_err(D::Error::custom)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Factors `n > 1` by trial division up to `sqrt(n)`.
pub fn factorize(n: u64) -> Result<Modulus> {
    if n <= 1 {
        return Err(Error::InvalidModulus(n));
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        if rest.is_multiple_of(p) {
            let mut exponent = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                exponent += 1;
            }
            factors.push(PrimePower { prime: p, exponent });
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push(PrimePower {
            prime: rest,
            exponent: 1,
        });
    }
    Ok(Modulus { n, factors })
}

/// Euler's totient with the convention `totient(1) = 1`.
pub fn totient(m: u64) -> u64 {
    match factorize(m) {
        Ok(modulus) => modulus.totient(),
        Err(_) => 1,
    }
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 + b as u128) % n as u128) as u64
}

#[inline]
pub(crate) fn sub_mod(a: u64, b: u64, n: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        n - (b - a)
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    let mut acc = 1 % n;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `n`, if `gcd(a, n) = 1`.
pub(crate) fn inv_mod(a: u64, n: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % n as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(n as i128) as u64)
}

/// An element of Z_n. The modulus is identified by its value; operations
/// between residues of different moduli are programming errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    /// Reduces `value` modulo `modulus`. Panics on a zero modulus.
    pub fn new(value: u64, modulus: u64) -> Self {
        assert!(modulus > 0, "residue modulus must be positive");
        Residue {
            value: value % modulus,
            modulus,
        }
    }

    pub fn from_i128(value: i128, modulus: u64) -> Self {
        Residue::new(value.rem_euclid(modulus as i128) as u64, modulus)
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_ring(&self, other: &Residue) -> Result<u64> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        Ok(self.modulus)
    }

    pub fn checked_add(self, other: Residue) -> Result<Residue> {
        let n = self.same_ring(&other)?;
        Ok(Residue::new(add_mod(self.value, other.value, n), n))
    }

    pub fn checked_sub(self, other: Residue) -> Result<Residue> {
        let n = self.same_ring(&other)?;
        Ok(Residue::new(sub_mod(self.value, other.value, n), n))
    }

    pub fn checked_mul(self, other: Residue) -> Result<Residue> {
        let n = self.same_ring(&other)?;
        Ok(Residue::new(mul_mod(self.value, other.value, n), n))
    }

    pub fn pow(self, exp: u64) -> Residue {
        mod_pow(self, exp)
    }

    pub fn inverse(self) -> Option<Residue> {
        if self.modulus == 1 {
            return Some(self);
        }
        inv_mod(self.value, self.modulus).map(|v| Residue::new(v, self.modulus))
    }

    /// Image under the projection Z_n -> Z_m, for `m` dividing `n`.
    pub fn reduce(self, m: u64) -> Result<Residue> {
        if m == 0 || !self.modulus.is_multiple_of(m) {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: m,
            });
        }
        Ok(Residue::new(self.value, m))
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

impl Add for Residue {
    type Output = Residue;
    fn add(self, rhs: Residue) -> Residue {
        self.checked_add(rhs).expect("residue addition across moduli")
    }
}

impl Sub for Residue {
    type Output = Residue;
    fn sub(self, rhs: Residue) -> Residue {
        self.checked_sub(rhs).expect("residue subtraction across moduli")
    }
}

impl Mul for Residue {
    type Output = Residue;
    fn mul(self, rhs: Residue) -> Residue {
        self.checked_mul(rhs).expect("residue multiplication across moduli")
    }
}

impl Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        Residue::new(sub_mod(0, self.value, self.modulus), self.modulus)
    }
}

/// Square-and-multiply exponentiation; `exp = 0` yields 1.
pub fn mod_pow(base: Residue, exp: u64) -> Residue {
    Residue::new(pow_mod(base.value, exp, base.modulus), base.modulus)
}

/// Combines one residue per prime-power factor (in factor order) into the
/// unique residue mod `n` with those reductions.
pub fn crt_combine(modulus: &Modulus, residues: &[u64]) -> Result<Residue> {
    if residues.len() != modulus.factors.len() {
        return Err(Error::LengthMismatch {
            expected: modulus.factors.len(),
            got: residues.len(),
        });
    }
    let n = modulus.n;
    let mut acc = 0u64;
    for (factor, &r) in modulus.factors.iter().zip(residues) {
        let q = factor.value();
        let cofactor = n / q;
        // cofactor is a unit mod q since the factors are coprime
        let inv = inv_mod(cofactor % q, q).unwrap_or(0);
        let coeff = mul_mod(cofactor, inv, n);
        acc = add_mod(acc, mul_mod(r % q, coeff, n), n);
    }
    Ok(Residue::new(acc, n))
}

/// All idempotents of Z_n in ascending order: one per subset of the prime
/// factors, since each Z_{p^d} has only 0 and 1.
pub fn idempotents_of_zn(modulus: &Modulus) -> Vec<Residue> {
    let k = modulus.factors.len();
    let mut out: Vec<Residue> = (0..1u64 << k)
        .map(|mask| {
            let bits: Vec<u64> = (0..k).map(|i| (mask >> i) & 1).collect();
            crt_combine(modulus, &bits).expect("aligned residues")
        })
        .collect();
    out.sort();
    out
}

/// Role of a prime-power factor in a split `n = P * Q * R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Role {
    P,
    Q,
    R,
}

/// Assignment of every prime-power factor of `n` to one of `P`, `Q`, `R`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoprimeSplit {
    modulus: Modulus,
    roles: Vec<Role>,
    p: u64,
    q: u64,
    r: u64,
}

impl CoprimeSplit {
    pub fn new(modulus: Modulus, roles: Vec<Role>) -> Result<Self> {
        if roles.len() != modulus.factors.len() {
            return Err(Error::LengthMismatch {
                expected: modulus.factors.len(),
                got: roles.len(),
            });
        }
        let part = |want: Role| -> u64 {
            modulus
                .factors
                .iter()
                .zip(&roles)
                .filter(|(_, &r)| r == want)
                .map(|(f, _)| f.value())
                .product()
        };
        let (p, q, r) = (part(Role::P), part(Role::Q), part(Role::R));
        debug_assert_eq!(p as u128 * q as u128 * r as u128, modulus.n as u128);
        debug_assert!(gcd(p, q) == 1 && gcd(p, r) == 1 && gcd(q, r) == 1);
        Ok(CoprimeSplit {
            modulus,
            roles,
            p,
            q,
            r,
        })
    }

    /// All `3^k` splits, in odometer order over the factors with P < Q < R.
    pub fn all(modulus: &Modulus) -> Vec<CoprimeSplit> {
        let k = modulus.factors.len();
        let total = 3usize.pow(k as u32);
        (0..total)
            .map(|mut idx| {
                let mut roles = vec![Role::P; k];
                for role in roles.iter_mut().rev() {
                    *role = [Role::P, Role::Q, Role::R][idx % 3];
                    idx /= 3;
                }
                CoprimeSplit::new(modulus.clone(), roles).expect("role count matches")
            })
            .collect()
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn r(&self) -> u64 {
        self.r
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
