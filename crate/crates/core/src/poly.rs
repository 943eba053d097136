//! Dense univariate polynomials over `Z_n`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::residues::{Modulus, Residue};

/// A polynomial over `Z_n`, coefficients ascending by degree.
///
/// Always normalized: the coefficient vector is empty for the zero polynomial
/// and otherwise ends in a nonzero entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    modulus: Modulus,
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn zero(modulus: Modulus) -> Self {
        Poly {
            modulus,
            coeffs: Vec::new(),
        }
    }

    pub fn one(modulus: Modulus) -> Self {
        Self::constant(modulus, 1)
    }

    pub fn constant(modulus: Modulus, c: i64) -> Self {
        Self::from_coeffs(modulus, &[c])
    }

    /// The indeterminate `x`.
    pub fn x(modulus: Modulus) -> Self {
        Self::monomial(modulus, 1, 1)
    }

    pub fn monomial(modulus: Modulus, c: i64, degree: usize) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = modulus.reduce(c);
        Self::from_raw(modulus, coeffs)
    }

    /// Builds a polynomial from integer coefficients, reducing each mod `n`.
    pub fn from_coeffs(modulus: Modulus, coeffs: &[i64]) -> Self {
        Self::from_raw(modulus, coeffs.iter().map(|&c| modulus.reduce(c)).collect())
    }

    /// Builds a polynomial from nonnegative coefficients, reducing each mod `n`.
    pub fn from_u64s(modulus: Modulus, coeffs: &[u64]) -> Self {
        Self::from_raw(modulus, coeffs.iter().map(|&c| modulus.reduce_u(c)).collect())
    }

    pub(crate) fn from_raw(modulus: Modulus, mut coeffs: Vec<u64>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c < modulus.get()));
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { modulus, coeffs }
    }

    /// Parses an ascending coefficient array literal such as `[1,2,3]`.
    pub fn parse(modulus: Modulus, literal: &str) -> Result<Self> {
        let coeffs: Vec<i64> = serde_json::from_str(literal.trim())
            .map_err(|e| Error::Parse(format!("polynomial literal {literal:?}: {e}")))?;
        Ok(Self::from_coeffs(modulus, &coeffs))
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of `x^i`; zero past the degree.
    #[inline]
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn residue(&self, i: usize) -> Residue {
        Residue::from_u64(self.coeff(i), self.modulus)
    }

    /// `None` for the zero polynomial.
    #[inline]
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True for the zero polynomial and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    pub fn is_x(&self) -> bool {
        self.coeffs == [0, 1]
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.modulus != other.modulus {
            Err(Error::ModulusMismatch(
                self.modulus.get(),
                other.modulus.get(),
            ))
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let m = self.modulus;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| m.add(self.coeff(i), other.coeff(i)))
            .collect();
        Ok(Poly::from_raw(m, coeffs))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let m = self.modulus;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| m.sub(self.coeff(i), other.coeff(i)))
            .collect();
        Ok(Poly::from_raw(m, coeffs))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.modulus));
        }
        let m = self.modulus;
        let n = m.get() as u128;
        let mut acc = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u128 * b as u128) % n;
            }
        }
        Ok(Poly::from_raw(m, acc.into_iter().map(|c| c as u64).collect()))
    }

    /// `c * self` for a scalar `c`.
    pub fn scale(&self, c: u64) -> Poly {
        let m = self.modulus;
        Poly::from_raw(m, self.coeffs.iter().map(|&a| m.mul(a, c)).collect())
    }

    /// `x^k * self`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly::from_raw(self.modulus, coeffs)
    }

    pub fn pow(&self, mut exp: u32) -> Poly {
        let mut acc = Poly::one(self.modulus);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(s(x))`, by Horner's rule.
    pub fn compose(&self, s: &Poly) -> Result<Poly> {
        self.check(s)?;
        let m = self.modulus;
        let mut acc = Poly::zero(m);
        for &c in self.coeffs.iter().rev() {
            acc = &acc * s;
            acc = &acc + &Poly::from_raw(m, vec![c]);
        }
        Ok(acc)
    }

    pub fn eval(&self, at: u64) -> u64 {
        let m = self.modulus;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| m.add(m.mul(acc, at), c))
    }

    /// Nilpotent iff every coefficient is nilpotent in `Z_n`.
    pub fn is_nilpotent(&self) -> bool {
        self.coeffs.iter().all(|&c| self.modulus.is_nilpotent(c))
    }

    /// Unit iff the constant term is a unit and every higher coefficient is
    /// nilpotent.
    pub fn is_unit(&self) -> bool {
        self.modulus.is_unit(self.coeff(0))
            && self.coeffs.iter().skip(1).all(|&c| self.modulus.is_nilpotent(c))
    }

    /// Division with remainder by a divisor whose leading coefficient is a
    /// unit: `self = q * d + r` with `r = 0` or `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        self.check(d)?;
        let m = self.modulus;
        let dd = d.degree().ok_or(Error::BadDivisor)?;
        let lc_inv = m
            .inverse(d.leading_coeff().unwrap())
            .map_err(|_| Error::BadDivisor)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(m), self.clone()));
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = m.mul(rem[k + dd], lc_inv);
            quot[k] = c;
            if c != 0 {
                for (i, &dc) in d.coeffs.iter().enumerate() {
                    rem[k + i] = m.sub(rem[k + i], m.mul(c, dc));
                }
            }
        }
        rem.truncate(dd);
        Ok((Poly::from_raw(m, quot), Poly::from_raw(m, rem)))
    }
}

/// Base-`f` digits of `g`: `g = sum g_k f^k` with each `g_k` zero or of degree
/// below `deg f`, and the last digit nonzero. The leading coefficient of `f`
/// must be a unit.
pub fn f_adic_expand(g: &Poly, f: &Poly) -> Result<Vec<Poly>> {
    g.check(f)?;
    match (f.degree(), f.leading_coeff()) {
        (Some(d), Some(lc)) if d >= 1 && f.modulus.is_unit(lc) => {}
        _ => return Err(Error::BadDivisor),
    }
    if g.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut digits = Vec::new();
    let mut rest = g.clone();
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(f)?;
        digits.push(r);
        rest = q;
    }
    let back = reassemble(&digits, f);
    if &back != g {
        return Err(Error::InternalCheckFailed(format!(
            "f-adic digits of {g} in base {f} reassemble to {back}"
        )));
    }
    Ok(digits)
}

/// `sum digits[k] * f^k`.
pub fn reassemble(digits: &[Poly], f: &Poly) -> Poly {
    let mut acc = Poly::zero(f.modulus);
    for d in digits.iter().rev() {
        acc = &(&acc * f) + d;
    }
    acc
}

/// Membership of `g` in the subring `R[f]`.
pub fn in_subring(g: &Poly, f: &Poly) -> Result<bool> {
    g.check(f)?;
    if f.is_constant() {
        return Ok(g.is_constant());
    }
    if g.is_zero() {
        // still validate the divisor
        f_adic_expand(f, f)?;
        return Ok(true);
    }
    Ok(f_adic_expand(g, f)?.iter().all(Poly::is_constant))
}

/// Whether `R[f]` is a polynomial ring over `Z_n`: the positive-degree
/// coefficients of `f` must have zero annihilator, i.e. gcd 1 with `n`.
pub fn generates_polynomial_ring(f: &Poly) -> bool {
    let n = f.modulus.get();
    f.coeffs
        .iter()
        .skip(1)
        .fold(n, |g, &c| g.gcd(&c))
        == 1
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{c}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

macro_rules! poly_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        /// Panics if the moduli differ.
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).expect("polynomial modulus mismatch")
            }
        }

        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);
poly_binop!(Mul, mul, checked_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let m = self.modulus;
        Poly::from_raw(m, self.coeffs.iter().map(|&c| m.neg(c)).collect())
    }
}
