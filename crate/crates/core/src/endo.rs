//! `Z_n`-endomorphisms of `Z_n[x]`, each determined by the image of `x`.
//!
//! Composition follows `(s ∘ t)(g) = s(t(g))`, so the image of `s ∘ t` is
//! `t.image(s.image)`. With this convention `s⁻¹ ∘ a ∘ s` reproduces the
//! hand computations `σ⁻¹ασ(x)` of the classical examples literally.

use std::collections::HashMap;
use std::fmt;

use crate::error::{guard, Error, Result};
use crate::poly::Poly;
use crate::residues::{Modulus, Residue};

/// An endomorphism `x ↦ image`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Endo {
    image: Poly,
}

/// The unique decomposition `image = a + u x + x² f(x)` of an automorphism,
/// with `u` a unit and `f` nilpotent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GilmerForm {
    pub a: Residue,
    pub u: Residue,
    pub f: Poly,
}

impl GilmerForm {
    pub fn image(&self) -> Poly {
        let m = self.f.modulus();
        let linear = Poly::from_u64s(m, &[self.a.value(), self.u.value()]);
        &linear + &self.f.shift(2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotAutomorphism {
    /// The coefficient of `x` is not a unit.
    LinearNotUnit(u64),
    /// A coefficient of degree at least 2 is not nilpotent.
    NotNilpotent { degree: usize, coeff: u64 },
}

impl fmt::Display for NotAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotAutomorphism::LinearNotUnit(c) => {
                write!(f, "coefficient of x ({c}) is not a unit")
            }
            NotAutomorphism::NotNilpotent { degree, coeff } => {
                write!(f, "coefficient of x^{degree} ({coeff}) is not nilpotent")
            }
        }
    }
}

impl Endo {
    pub fn new(image: Poly) -> Self {
        Endo { image }
    }

    pub fn identity(modulus: Modulus) -> Self {
        Endo {
            image: Poly::x(modulus),
        }
    }

    pub fn image(&self) -> &Poly {
        &self.image
    }

    pub fn modulus(&self) -> Modulus {
        self.image.modulus()
    }

    pub fn is_identity(&self) -> bool {
        self.image.is_x()
    }

    /// Gilmer's criterion. The relaxed shape `b + v x + g` with `g` nilpotent
    /// is covered because `v + g_1` is again a unit.
    pub fn classify(&self) -> std::result::Result<GilmerForm, NotAutomorphism> {
        let m = self.modulus();
        let u = self.image.coeff(1);
        if !m.is_unit(u) {
            return Err(NotAutomorphism::LinearNotUnit(u));
        }
        if let Some((i, &c)) = self
            .image
            .coeffs()
            .iter()
            .enumerate()
            .skip(2)
            .find(|(_, &c)| !m.is_nilpotent(c))
        {
            return Err(NotAutomorphism::NotNilpotent {
                degree: i,
                coeff: c,
            });
        }
        let f = Poly::from_u64s(m, self.image.coeffs().get(2..).unwrap_or(&[]));
        Ok(GilmerForm {
            a: self.image.residue(0),
            u: self.image.residue(1),
            f,
        })
    }

    pub fn is_automorphism(&self) -> bool {
        self.classify().is_ok()
    }

    /// `g ↦ g(image)`.
    pub fn apply(&self, g: &Poly) -> Result<Poly> {
        g.compose(&self.image)
    }

    /// `self ∘ t`, i.e. apply `t` first and then `self`.
    pub fn compose(&self, t: &Endo) -> Result<Endo> {
        Ok(Endo {
            image: t.image.compose(&self.image)?,
        })
    }

    pub fn pow(&self, k: u64) -> Endo {
        let mut acc = Endo::identity(self.modulus());
        for _ in 0..k {
            acc = acc.compose(self).expect("same modulus");
        }
        acc
    }

    /// Inverse by fixed-point iteration on `h = u⁻¹(x - a - h² f(h))`,
    /// starting from `u⁻¹(x - a)`. Each step gains a factor from the
    /// nilradical, so the iteration is stationary within the nilpotency index.
    pub fn invert(&self) -> Result<Endo> {
        let form = self
            .classify()
            .map_err(|e| Error::NotInvertible(e.to_string()))?;
        let m = self.modulus();
        let u_inv = form.u.inverse()?.value();
        let base = Poly::from_u64s(m, &[m.neg(form.a.value()), 1]);
        let mut h = base.scale(u_inv);
        let limit = m.max_exponent() as usize + 2;
        let mut stationary = false;
        for _ in 0..limit {
            let tail = &(&h * &h) * &form.f.compose(&h)?;
            let next = (&base - &tail).scale(u_inv);
            if next == h {
                stationary = true;
                break;
            }
            h = next;
        }
        let inv = Endo { image: h };
        if !stationary || !self.compose(&inv)?.is_identity() || !inv.compose(self)?.is_identity() {
            return Err(Error::InternalCheckFailed(format!(
                "inverse iteration for x -> {} did not verify",
                self.image
            )));
        }
        Ok(inv)
    }

    /// Least `m >= 1` with `self^m = id`. The default cap is `4 n²`.
    pub fn order(&self, cap: Option<u64>) -> Result<u64> {
        if let Err(e) = self.classify() {
            return Err(Error::NotInvertible(e.to_string()));
        }
        let n = self.modulus().get();
        let cap = cap.unwrap_or(4 * n * n);
        let mut power = self.clone();
        let mut k = 1;
        while !power.is_identity() {
            if k >= cap {
                return Err(Error::OrderExceedsCap(cap));
            }
            power = power.compose(self)?;
            k += 1;
        }
        Ok(k)
    }

    /// `g⁻¹ ∘ self ∘ g`.
    pub fn conjugate_by(&self, g: &Endo) -> Result<Endo> {
        g.invert()?.compose(self)?.compose(g)
    }
}

impl fmt::Display for Endo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x -> {}", self.image)
    }
}

fn power_vectors(s: &Poly, count: usize, width: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::with_capacity(count);
    let mut p = Poly::one(s.modulus());
    for _ in 0..count {
        out.push((0..width).map(|i| p.coeff(i)).collect());
        p = &p * s;
    }
    out
}

fn digits_iter(n: u64, len: usize) -> impl Iterator<Item = Vec<u64>> {
    let total = n.pow(len as u32);
    (0..total).map(move |mut idx| {
        (0..len)
            .map(|_| {
                let d = idx % n;
                idx /= n;
                d
            })
            .collect()
    })
}

fn combine(m: Modulus, digits: &[u64], vecs: &[Vec<u64>], width: usize) -> Vec<u64> {
    let mut acc = vec![0u64; width];
    for (d, v) in digits.iter().zip(vecs) {
        if *d != 0 {
            for (a, &c) in acc.iter_mut().zip(v) {
                *a = m.add(*a, m.mul(*d, c));
            }
        }
    }
    acc
}

/// Exhaustive search for a two-sided inverse of degree at most `deg_cap`.
///
/// Every candidate `t = sum t_i x^i` is covered: `t(s) = x` is linear in the
/// coefficients, so the candidates are split into a low half and a high half
/// and matched through a table of high-half partial sums. Matches are then
/// checked on both sides.
pub fn is_automorphism_bruteforce(s: &Endo, deg_cap: usize) -> Result<bool> {
    let m = s.modulus();
    let n = m.get();
    guard((n as u128).saturating_pow(deg_cap as u32 + 2))?;
    let img = s.image();
    let width = deg_cap * img.degree().unwrap_or(0) + 2;
    let vecs = power_vectors(img, deg_cap + 1, width);
    let split = deg_cap.div_ceil(2);
    let (low, high) = vecs.split_at(split);

    let mut table: HashMap<Vec<u64>, Vec<Vec<u64>>> = HashMap::new();
    for hd in digits_iter(n, high.len()) {
        table
            .entry(combine(m, &hd, high, width))
            .or_default()
            .push(hd);
    }
    let mut target = vec![0u64; width];
    target[1] = 1 % n;
    for ld in digits_iter(n, low.len()) {
        let part = combine(m, &ld, low, width);
        let need: Vec<u64> = target.iter().zip(&part).map(|(&t, &p)| m.sub(t, p)).collect();
        if let Some(highs) = table.get(&need) {
            for hd in highs {
                let coeffs: Vec<u64> = ld.iter().chain(hd).copied().collect();
                let t = Endo::new(Poly::from_u64s(m, &coeffs));
                if s.compose(&t)?.is_identity() && t.compose(s)?.is_identity() {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Data exhibiting that the basic automorphisms do not form a normal
/// subgroup when `Z_n` has nonzero nilpotents.
#[derive(Clone, Debug)]
pub struct NonNormalityWitness {
    /// Nonzero square-zero element used in `sigma`.
    pub r: u64,
    pub m: u32,
    /// `x ↦ x + 1`.
    pub alpha: Endo,
    /// `x ↦ x + r x² + r x^m`.
    pub sigma: Endo,
    /// `sigma⁻¹ ∘ alpha ∘ sigma`.
    pub conjugate: Endo,
}

pub fn nonnormality_witness(n: Modulus) -> Result<NonNormalityWitness> {
    if n.is_squarefree() {
        return Err(Error::RingIsReduced(n.get()));
    }
    let r = (1..n.get())
        .find(|&r| n.mul(r, r) == 0)
        .expect("non-reduced ring has a square-zero element");
    let m = (3u32..)
        .find(|&k| n.mul((k as u64 * (k as u64 - 1) / 2) % n.get(), r) != 0)
        .expect("three consecutive vanishing triangular multiples force r = 0");
    let alpha = Endo::new(Poly::from_u64s(n, &[1, 1]));
    let sigma = Endo::new(
        &(&Poly::x(n) + &Poly::monomial(n, r as i64, 2)) + &Poly::monomial(n, r as i64, m as usize),
    );
    let conjugate = alpha.conjugate_by(&sigma)?;
    if !conjugate.image().coeffs().iter().skip(2).any(|&c| c != 0) {
        return Err(Error::InternalCheckFailed(format!(
            "conjugate {conjugate} is basic"
        )));
    }
    Ok(NonNormalityWitness {
        r,
        m,
        alpha,
        sigma,
        conjugate,
    })
}
