//! The automorphism group `G(Z_4)` of `Z_4[x]`.
//!
//! Every automorphism is `α_f: x ↦ x + f` or `β_f: x ↦ -x + 1 + f` with
//! `f ∈ 2Z_4[x]`. Products are written so that `st` is the composition
//! `s ∘ t` (apply `t` first), matching [`Endo::compose`]:
//!
//! * `α_g α_h = α_{g+h}`, `β_g β_h = α_{g+h'}`,
//! * `α_g β_h = β_{g+h}`, `β_g α_h = β_{g+h'}`,
//!
//! where `h'` is `h(-x+1)`. A polynomial is in `Z_4[y]`, `y = x - x²`,
//! exactly when it equals its prime.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::endo::Endo;
use crate::error::{guard, Error, Result};
use crate::poly::Poly;
use crate::residues::Modulus;

pub(crate) const Z4: Modulus = Modulus::new_unchecked(4);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Alpha,
    Beta,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Wire", try_from = "Wire")]
pub struct GAut4 {
    kind: Kind,
    f: Poly,
}

#[derive(Serialize, Deserialize)]
struct Wire {
    kind: Kind,
    f: Vec<i64>,
}

impl From<GAut4> for Wire {
    fn from(s: GAut4) -> Wire {
        Wire {
            kind: s.kind,
            f: s.f.coeffs().iter().map(|&c| c as i64).collect(),
        }
    }
}

impl TryFrom<Wire> for GAut4 {
    type Error = Error;

    fn try_from(w: Wire) -> Result<GAut4> {
        GAut4::new(w.kind, Poly::from_coeffs(Z4, &w.f))
    }
}

/// `f(-x + 1)`.
pub fn prime(f: &Poly) -> Poly {
    f.compose(&Poly::from_coeffs(f.modulus(), &[1, -1]))
        .expect("same modulus")
}

pub fn is_prime_fixed(f: &Poly) -> bool {
    prime(f) == *f
}

fn require_z4(m: Modulus) -> Result<()> {
    if m.get() != 4 {
        return Err(Error::NotZ4(m.get()));
    }
    Ok(())
}

impl GAut4 {
    pub fn new(kind: Kind, f: Poly) -> Result<Self> {
        require_z4(f.modulus())?;
        if !f.is_nilpotent() {
            return Err(Error::BadInput(format!("{f} has an odd coefficient")));
        }
        Ok(GAut4 { kind, f })
    }

    pub fn alpha(f: Poly) -> Result<Self> {
        GAut4::new(Kind::Alpha, f)
    }

    pub fn beta(f: Poly) -> Result<Self> {
        GAut4::new(Kind::Beta, f)
    }

    pub fn identity() -> Self {
        GAut4 {
            kind: Kind::Alpha,
            f: Poly::zero(Z4),
        }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn is_identity(&self) -> bool {
        self.kind == Kind::Alpha && self.f.is_zero()
    }

    pub fn to_endo(&self) -> Endo {
        let linear = match self.kind {
            Kind::Alpha => Poly::x(Z4),
            Kind::Beta => Poly::from_coeffs(Z4, &[1, -1]),
        };
        Endo::new(&linear + &self.f)
    }

    /// `None` unless `s` is an automorphism of `Z_4[x]`.
    pub fn from_endo(s: &Endo) -> Option<GAut4> {
        if s.modulus().get() != 4 || !s.is_automorphism() {
            return None;
        }
        let img = s.image();
        if img.coeff(0).is_multiple_of(2) {
            GAut4::alpha(img - &Poly::x(Z4)).ok()
        } else {
            GAut4::beta(img - &Poly::from_coeffs(Z4, &[1, -1])).ok()
        }
    }

    pub fn inverse(&self) -> GAut4 {
        match self.kind {
            Kind::Alpha => self.clone(),
            Kind::Beta => GAut4 {
                kind: Kind::Beta,
                f: prime(&self.f),
            },
        }
    }

    /// `s⁻¹ · self · s` from the closed forms.
    pub fn conjugate_by(&self, s: &GAut4) -> GAut4 {
        let (g, h) = (&s.f, &self.f);
        match (s.kind, self.kind) {
            (Kind::Alpha, Kind::Alpha) => self.clone(),
            (Kind::Beta, Kind::Alpha) => GAut4 {
                kind: Kind::Alpha,
                f: prime(h),
            },
            (Kind::Alpha, Kind::Beta) => GAut4 {
                kind: Kind::Beta,
                f: &(&prime(g) + h) + g,
            },
            (Kind::Beta, Kind::Beta) => GAut4 {
                kind: Kind::Beta,
                f: &(g + &prime(h)) + &prime(g),
            },
        }
    }

    /// Center is `{α_f : f = f'}`.
    pub fn is_central(&self) -> bool {
        self.kind == Kind::Alpha && is_prime_fixed(&self.f)
    }

    pub fn order(&self) -> u64 {
        match self.kind {
            Kind::Alpha if self.f.is_zero() => 1,
            Kind::Alpha => 2,
            Kind::Beta if is_prime_fixed(&self.f) => 2,
            Kind::Beta => 4,
        }
    }

    /// `x ↦ ux + a`.
    pub fn is_basic(&self) -> bool {
        self.f.degree().unwrap_or(0) <= 1
    }

    /// Parses `alpha:[c0,c1,...]` or `beta:[...]`.
    pub fn parse(s: &str) -> Result<Self> {
        let (kind, lit) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected kind:[coeffs], got {s:?}")))?;
        let kind = match kind.trim() {
            "alpha" => Kind::Alpha,
            "beta" => Kind::Beta,
            other => return Err(Error::Parse(format!("unknown kind {other:?}"))),
        };
        GAut4::new(kind, Poly::parse(Z4, lit)?)
    }
}

impl Ord for GAut4 {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.kind, self.f.degree(), self.f.coeffs().iter().rev().collect::<Vec<_>>()).cmp(&(
            other.kind,
            other.f.degree(),
            other.f.coeffs().iter().rev().collect::<Vec<_>>(),
        ))
    }
}

impl PartialOrd for GAut4 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for &GAut4 {
    type Output = GAut4;

    fn mul(self, t: &GAut4) -> GAut4 {
        let (g, h) = (&self.f, &t.f);
        let (kind, f) = match (self.kind, t.kind) {
            (Kind::Alpha, Kind::Alpha) => (Kind::Alpha, g + h),
            (Kind::Beta, Kind::Beta) => (Kind::Alpha, g + &prime(h)),
            (Kind::Alpha, Kind::Beta) => (Kind::Beta, g + h),
            (Kind::Beta, Kind::Alpha) => (Kind::Beta, g + &prime(h)),
        };
        GAut4 { kind, f }
    }
}

impl fmt::Display for GAut4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            Kind::Alpha => "alpha",
            Kind::Beta => "beta",
        };
        write!(f, "{name}[{}]", self.f)
    }
}

/// Conjugacy in all of `G(Z_4)`: alphas pair `f` with `f'`; betas are
/// conjugate when `g - h` or `g - h'` lies in `Z_4[y]`.
pub fn are_conjugate_g4(s: &GAut4, t: &GAut4) -> bool {
    match (s.kind, t.kind) {
        (Kind::Alpha, Kind::Alpha) => t.f == s.f || t.f == prime(&s.f),
        (Kind::Beta, Kind::Beta) => {
            is_prime_fixed(&(&s.f - &t.f)) || is_prime_fixed(&(&s.f - &prime(&t.f)))
        }
        _ => false,
    }
}

/// A finite subgroup, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSubgroup {
    elements: BTreeSet<GAut4>,
}

impl GSubgroup {
    /// Checks closure under products; inverses follow by finiteness.
    pub fn from_elements(elements: BTreeSet<GAut4>) -> Result<Self> {
        if !elements.contains(&GAut4::identity()) {
            return Err(Error::NotAGroup);
        }
        for s in &elements {
            for t in &elements {
                if !elements.contains(&(s * t)) {
                    return Err(Error::NotAGroup);
                }
            }
        }
        Ok(GSubgroup { elements })
    }

    pub fn elements(&self) -> &BTreeSet<GAut4> {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, s: &GAut4) -> bool {
        self.elements.contains(s)
    }

    /// Elements of kind alpha, the subgroup `H ∩ A`.
    pub fn alpha_part(&self) -> BTreeSet<GAut4> {
        self.elements
            .iter()
            .filter(|s| s.kind == Kind::Alpha)
            .cloned()
            .collect()
    }

    pub fn has_beta(&self) -> bool {
        self.elements.iter().any(|s| s.kind == Kind::Beta)
    }

    /// Sorted list of elements.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.elements).expect("serializable")
    }
}

pub fn closure(gens: &[GAut4]) -> GSubgroup {
    let mut elements: BTreeSet<GAut4> = BTreeSet::from([GAut4::identity()]);
    let mut frontier: Vec<GAut4> = vec![GAut4::identity()];
    while let Some(s) = frontier.pop() {
        for g in gens {
            let p = &s * g;
            if elements.insert(p.clone()) {
                frontier.push(p);
            }
        }
    }
    GSubgroup { elements }
}

fn nilpotent_polys(d: usize) -> Vec<Poly> {
    (0u64..1 << (d + 1))
        .map(|bits| {
            let coeffs: Vec<u64> = (0..=d).map(|i| 2 * ((bits >> i) & 1)).collect();
            Poly::from_u64s(Z4, &coeffs)
        })
        .collect()
}

/// All `α_f`, `β_f` with `deg f <= d`; a subgroup since products never raise
/// the degree of `f`. Sorted.
pub fn pool(d: usize) -> Result<Vec<GAut4>> {
    guard(2u128.saturating_pow(d as u32 + 2))?;
    let fs = nilpotent_polys(d);
    let mut out: Vec<GAut4> = [Kind::Alpha, Kind::Beta]
        .into_iter()
        .flat_map(|kind| fs.iter().map(move |f| GAut4 { kind, f: f.clone() }))
        .collect();
    out.sort();
    Ok(out)
}

/// Elements of the degree-`d` pool fixing every polynomial in `ring_gens`.
pub fn stabilizer(ring_gens: &[Poly], d: usize) -> Result<GSubgroup> {
    for g in ring_gens {
        require_z4(g.modulus())?;
    }
    let mut elements = BTreeSet::new();
    for s in pool(d)? {
        let e = s.to_endo();
        let mut fixes = true;
        for g in ring_gens {
            if e.apply(g)? != *g {
                fixes = false;
                break;
            }
        }
        if fixes {
            elements.insert(s);
        }
    }
    GSubgroup::from_elements(elements)
}

/// The eight basic automorphisms `x ↦ ux + a` of `Z_4[x]`.
pub fn basic_elements() -> Vec<GAut4> {
    let mut out: Vec<GAut4> = [1i64, 3]
        .iter()
        .flat_map(|&u| (0..4).map(move |a| Endo::new(Poly::from_coeffs(Z4, &[a, u]))))
        .map(|e| GAut4::from_endo(&e).expect("basic maps are automorphisms"))
        .collect();
    out.sort();
    out
}

/// Whether `s` is conjugate to a basic automorphism by some element of the
/// degree-`d` pool.
pub fn in_basic_union(s: &GAut4, d: usize) -> Result<bool> {
    Ok(pool(d)?.iter().any(|g| s.conjugate_by(g).is_basic()))
}

/// Orbit of `s` under conjugation by the degree-`d` pool.
pub fn pool_orbit(s: &GAut4, d: usize) -> Result<BTreeSet<GAut4>> {
    Ok(pool(d)?.iter().map(|g| s.conjugate_by(g)).collect())
}

/// The degree-`d` pool partitioned by conjugacy in `G(Z_4)`, classes in
/// order of their least element.
pub fn conjugacy_classes(d: usize) -> Result<Vec<Vec<GAut4>>> {
    let mut classes: Vec<Vec<GAut4>> = Vec::new();
    for s in pool(d)? {
        match classes.iter_mut().find(|c| are_conjugate_g4(&c[0], &s)) {
            Some(c) => c.push(s),
            None => classes.push(vec![s]),
        }
    }
    Ok(classes)
}
