//! Exact arithmetic in `Z_n`.
//!
//! Residues are always stored as least nonnegative representatives. Moduli fit
//! in 63 bits so that signed integer input can be reduced without overflow;
//! products go through `u128`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The modulus `n >= 2` of the base ring `Z_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(n: u64) -> Result<Self> {
        if n < 2 || n > i64::MAX as u64 {
            Err(Error::InvalidModulus(n))
        } else {
            Ok(Modulus(n))
        }
    }

    pub(crate) const fn new_unchecked(n: u64) -> Self {
        Modulus(n)
    }

    #[inline]
    pub const fn get(self) -> u64 {
        self.0
    }

    /// Least nonnegative representative of `v`.
    #[inline]
    pub fn reduce(self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.0 as i128) as u64
    }

    #[inline]
    pub fn reduce_u(self, v: u64) -> u64 {
        v % self.0
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.0 as u128) as u64
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        ((a as u128 + self.0 as u128 - (b % self.0) as u128) % self.0 as u128) as u64
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        self.sub(0, a)
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    pub fn pow(self, base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.0;
        let mut b = base % self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }

    pub fn residue(self, v: i64) -> Residue {
        Residue {
            value: self.reduce(v),
            modulus: self,
        }
    }

    pub fn is_unit(self, v: u64) -> bool {
        v.gcd(&self.0) == 1
    }

    pub fn inverse(self, v: u64) -> Result<u64> {
        let v = v % self.0;
        let eg = (v as i128).extended_gcd(&(self.0 as i128));
        if eg.gcd != 1 {
            return Err(Error::NotAUnit {
                value: v,
                modulus: self.0,
            });
        }
        Ok(eg.x.rem_euclid(self.0 as i128) as u64)
    }

    /// `v` is nilpotent iff every prime factor of `n` divides it.
    pub fn is_nilpotent(self, v: u64) -> bool {
        let k = 64 - self.0.leading_zeros();
        self.pow(v, k as u64) == 0
    }

    /// Units of `Z_n` in ascending order.
    pub fn units(self) -> impl Iterator<Item = u64> {
        let n = self.0;
        (1..n).filter(move |v| v.gcd(&n) == 1)
    }

    pub fn factorize(self) -> Vec<(u64, u32)> {
        factorize(self)
    }

    /// Product of the distinct prime factors of `n`.
    pub fn radical(self) -> u64 {
        self.factorize().iter().map(|&(p, _)| p).product()
    }

    /// Largest prime exponent in `n`; this is the nilpotency index of `Z_n`.
    pub fn max_exponent(self) -> u32 {
        self.factorize().iter().map(|&(_, e)| e).max().unwrap_or(1)
    }

    pub fn is_squarefree(self) -> bool {
        self.max_exponent() == 1
    }

    /// Euler's totient.
    pub fn phi(self) -> u64 {
        self.factorize()
            .iter()
            .map(|&(p, e)| (p - 1) * p.pow(e - 1))
            .product()
    }

    /// Positive divisors of `n`, ascending.
    pub fn divisors(self) -> Vec<u64> {
        let n = self.0;
        let mut small = Vec::new();
        let mut large = Vec::new();
        let mut d = 1;
        while d * d <= n {
            if n.is_multiple_of(d) {
                small.push(d);
                if d * d != n {
                    large.push(n / d);
                }
            }
            d += 1;
        }
        small.extend(large.into_iter().rev());
        small
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<u64> for Modulus {
    type Error = Error;
    fn try_from(n: u64) -> Result<Self> {
        Modulus::new(n)
    }
}

impl From<Modulus> for u64 {
    fn from(m: Modulus) -> u64 {
        m.0
    }
}

/// An element of `Z_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: Modulus,
}

impl Residue {
    pub fn new(value: i64, modulus: Modulus) -> Self {
        modulus.residue(value)
    }

    pub fn from_u64(value: u64, modulus: Modulus) -> Self {
        Residue {
            value: value % modulus.0,
            modulus,
        }
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn is_unit(self) -> bool {
        self.modulus.is_unit(self.value)
    }

    pub fn inverse(self) -> Result<Residue> {
        Ok(Residue {
            value: self.modulus.inverse(self.value)?,
            modulus: self.modulus,
        })
    }

    pub fn is_nilpotent(self) -> bool {
        self.modulus.is_nilpotent(self.value)
    }

    pub fn pow(self, exp: u64) -> Residue {
        Residue {
            value: self.modulus.pow(self.value, exp),
            modulus: self.modulus,
        }
    }

    fn check(self, other: Residue) {
        assert_eq!(self.modulus, other.modulus, "residue modulus mismatch");
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Residue {
    type Output = Residue;
    fn add(self, rhs: Residue) -> Residue {
        self.check(rhs);
        Residue {
            value: self.modulus.add(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Sub for Residue {
    type Output = Residue;
    fn sub(self, rhs: Residue) -> Residue {
        self.check(rhs);
        Residue {
            value: self.modulus.sub(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Mul for Residue {
    type Output = Residue;
    fn mul(self, rhs: Residue) -> Residue {
        self.check(rhs);
        Residue {
            value: self.modulus.mul(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        Residue {
            value: self.modulus.neg(self.value),
            modulus: self.modulus,
        }
    }
}

/// gcd of `xs` together with `n`. Always a positive divisor of `n`.
pub fn gcd_all(xs: &[i64], n: Modulus) -> u64 {
    xs.iter()
        .fold(n.get() as i128, |g, &x| g.gcd(&(x as i128))) as u64
}

/// All `c` with `a*c = b (mod n)`, ascending. Empty iff `gcd(a, n)` does not
/// divide `b`.
pub fn solve_linear(a: Residue, b: Residue) -> Result<Vec<Residue>> {
    if a.modulus != b.modulus {
        return Err(Error::ModulusMismatch(a.modulus.0, b.modulus.0));
    }
    let m = a.modulus;
    let n = m.0;
    let g = a.value.gcd(&n);
    if !b.value.is_multiple_of(g) {
        return Ok(Vec::new());
    }
    let step = n / g;
    let base = if step == 1 {
        0
    } else {
        let sub = Modulus(step);
        sub.mul(sub.inverse(a.value / g)?, b.value / g)
    };
    Ok((0..g)
        .map(|t| Residue::from_u64(base + t * step, m))
        .collect())
}

/// A `k >= 0` with `gcd(a + k*b, n) = 1`, constructed as in the classical
/// argument: with `r` the product of the primes of `n` not dividing `b`,
/// take the least `k = (1 - a) * b^-1 (mod r)`.
pub fn unit_in_progression(a: u64, b: u64, n: Modulus) -> Result<u64> {
    if a == 0 || b == 0 || a.gcd(&b) != 1 {
        return Err(Error::BadInput(format!(
            "unit_in_progression needs positive coprime a, b (got {a}, {b})"
        )));
    }
    let r: u64 = factorize(n)
        .iter()
        .map(|&(p, _)| p)
        .filter(|p| !b.is_multiple_of(*p))
        .product();
    let k = if r == 1 {
        0
    } else {
        let rm = Modulus(r);
        rm.mul(rm.sub(1, a % r), rm.inverse(b % r)?)
    };
    let value = a as u128 + k as u128 * b as u128;
    if value.gcd(&(n.0 as u128)) != 1 {
        return Err(Error::InternalCheckFailed(format!(
            "gcd({a} + {k}*{b}, {n}) != 1"
        )));
    }
    Ok(k)
}

/// Trial-division factorization, primes ascending.
pub fn factorize(n: Modulus) -> Vec<(u64, u32)> {
    let mut m = n.0;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}
