//! Degree-truncated invariant subrings `Z_n[x]^H` and subring spans, both
//! carried as `Z_n`-modules of polynomials of degree at most `D`.
//!
//! Module rows index coefficients from degree `D` down to degree `0`, so the
//! Howell form restricted to degree `D' < D` is a tail of the rows.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::basic::BasicAut;
use crate::endo::Endo;
use crate::error::{guard, Error, Result};
use crate::gz4::{self, closure, GAut4, Kind, Z4};
use crate::howell::{left_kernel, Howell};
use crate::poly::Poly;
use crate::residues::Modulus;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffModule {
    degree_bound: usize,
    howell: Howell,
}

#[derive(Serialize, Deserialize)]
struct ModuleWire {
    modulus: u64,
    degree_bound: usize,
    basis: Vec<Vec<u64>>,
}

fn descending(p: &Poly, d: usize) -> Vec<u64> {
    (0..=d).rev().map(|i| p.coeff(i)).collect()
}

impl CoeffModule {
    fn from_rows(modulus: Modulus, degree_bound: usize, rows: Vec<Vec<u64>>) -> Self {
        CoeffModule {
            degree_bound,
            howell: Howell::new(modulus, degree_bound + 1, rows),
        }
    }

    /// Span of `polys`, each of degree at most `degree_bound`.
    pub fn span(modulus: Modulus, degree_bound: usize, polys: &[Poly]) -> Result<Self> {
        let mut rows = Vec::with_capacity(polys.len());
        for p in polys {
            if p.modulus() != modulus {
                return Err(Error::ModulusMismatch(modulus.get(), p.modulus().get()));
            }
            if p.degree().unwrap_or(0) > degree_bound {
                return Err(Error::BadInput(format!(
                    "{p} exceeds degree bound {degree_bound}"
                )));
            }
            rows.push(descending(p, degree_bound));
        }
        Ok(CoeffModule::from_rows(modulus, degree_bound, rows))
    }

    pub fn modulus(&self) -> Modulus {
        self.howell.modulus()
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn howell(&self) -> &Howell {
        &self.howell
    }

    /// Basis polynomials in Howell order (highest pivot degree first).
    pub fn basis(&self) -> Vec<Poly> {
        self.howell
            .rows()
            .iter()
            .map(|r| {
                let asc: Vec<u64> = r.iter().rev().copied().collect();
                Poly::from_u64s(self.modulus(), &asc)
            })
            .collect()
    }

    pub fn contains(&self, p: &Poly) -> bool {
        p.modulus() == self.modulus()
            && p.degree().unwrap_or(0) <= self.degree_bound
            && self.howell.contains(&descending(p, self.degree_bound))
    }

    /// The submodule of elements of degree at most `d`.
    pub fn restrict(&self, d: usize) -> Result<Self> {
        if d > self.degree_bound {
            return Err(Error::BadInput(format!(
                "cannot restrict degree bound {} to {d}",
                self.degree_bound
            )));
        }
        Ok(CoeffModule {
            degree_bound: d,
            howell: self.howell.tail(self.degree_bound - d),
        })
    }

    pub fn cardinality(&self) -> u128 {
        self.howell.cardinality()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ModuleWire {
            modulus: self.modulus().get(),
            degree_bound: self.degree_bound,
            basis: self.basis().iter().map(|p| p.coeffs().to_vec()).collect(),
        })
        .expect("serializable")
    }

    /// Inverse of [`CoeffModule::to_json`]; rejects bases not in Howell form.
    pub fn from_json(s: &str) -> Result<Self> {
        let w: ModuleWire = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let m = Modulus::new(w.modulus)?;
        let polys: Vec<Poly> = w.basis.iter().map(|c| Poly::from_u64s(m, c)).collect();
        let module = CoeffModule::span(m, w.degree_bound, &polys)?;
        if module.basis() != polys {
            return Err(Error::Parse("basis is not in Howell form".into()));
        }
        Ok(module)
    }
}

impl fmt::Display for CoeffModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "module over Z_{}, degree <= {}, {} elements",
            self.modulus(),
            self.degree_bound,
            self.cardinality()
        )?;
        for p in self.basis() {
            writeln!(f, "  {p}")?;
        }
        Ok(())
    }
}

/// Generators of a subgroup of `G(Z_n)`, each checked to be an automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupSpec {
    modulus: Modulus,
    generators: Vec<Endo>,
}

impl SubgroupSpec {
    pub fn new(modulus: Modulus, generators: Vec<Endo>) -> Result<Self> {
        for g in &generators {
            if g.modulus() != modulus {
                return Err(Error::ModulusMismatch(modulus.get(), g.modulus().get()));
            }
            if let Err(reason) = g.classify() {
                return Err(Error::BadInput(format!("generator {g}: {reason}")));
            }
        }
        Ok(SubgroupSpec {
            modulus,
            generators,
        })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn generators(&self) -> &[Endo] {
        &self.generators
    }
}

/// `{g : deg g <= D, σ(g) = g}` for every generator `σ`, with `σ(g)`
/// compared in full.
pub fn fixed_module(h: &SubgroupSpec, d: usize) -> Result<CoeffModule> {
    let m = h.modulus;
    let max_deg = h
        .generators
        .iter()
        .map(|s| s.image().degree().unwrap_or(0))
        .max()
        .unwrap_or(1)
        .max(1);
    let width = d * max_deg + 1;
    let total = width * h.generators.len();
    guard(((d + 1) * (total + d + 1)) as u128)?;

    let mut rows = vec![Vec::with_capacity(total); d + 1];
    for s in &h.generators {
        let mut power = Poly::one(m);
        let mut images = Vec::with_capacity(d + 1);
        for j in 0..=d {
            let diff = &power - &Poly::monomial(m, 1, j);
            images.push(diff);
            power = &power * s.image();
        }
        for (row, j) in rows.iter_mut().zip((0..=d).rev()) {
            row.extend((0..width).map(|i| images[j].coeff(i)));
        }
    }
    let module = CoeffModule {
        degree_bound: d,
        howell: left_kernel(m, total, &rows),
    };
    for b in module.basis() {
        for s in &h.generators {
            if s.apply(&b)? != b {
                return Err(Error::InternalCheckFailed(format!(
                    "{b} is not fixed by {s}"
                )));
            }
        }
    }
    Ok(module)
}

/// Span of all products of `gens` of formal degree at most `w`, cut down to
/// degree at most `d`. Includes the constants.
pub fn span_module(modulus: Modulus, gens: &[Poly], d: usize, w: usize) -> Result<CoeffModule> {
    if w < d {
        return Err(Error::BadInput(format!("work bound {w} below degree bound {d}")));
    }
    let mut factors: Vec<(&Poly, usize)> = Vec::new();
    for g in gens {
        if g.modulus() != modulus {
            return Err(Error::ModulusMismatch(modulus.get(), g.modulus().get()));
        }
        if let Some(k) = g.degree().filter(|&k| k > 0) {
            factors.push((g, k));
        }
    }

    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut stack: Vec<(usize, Poly, usize)> = vec![(0, Poly::one(modulus), 0)];
    while let Some((start, p, deg)) = stack.pop() {
        rows.push(descending(&p, w));
        guard(rows.len() as u128)?;
        for (i, &(g, k)) in factors.iter().enumerate().skip(start) {
            if deg + k <= w {
                stack.push((i, &p * g, deg + k));
            }
        }
    }
    let full = Howell::new(modulus, w + 1, rows);
    Ok(CoeffModule {
        degree_bound: d,
        howell: full.tail(w - d),
    })
}

/// Identical Howell bases.
pub fn modules_equal(a: &CoeffModule, b: &CoeffModule) -> Result<bool> {
    if a.modulus() != b.modulus() {
        return Err(Error::ModulusMismatch(a.modulus().get(), b.modulus().get()));
    }
    if a.degree_bound != b.degree_bound {
        return Err(Error::BoundMismatch(a.degree_bound, b.degree_bound));
    }
    Ok(a.howell == b.howell)
}

/// Invariant subrings of `Z_4[x]` under finite subgroups of `G(Z_4)`,
/// with `y = x - x²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Z4Ring {
    /// `R[x]`.
    FullRing,
    /// `R[x², 2x]`.
    X2And2X,
    /// `R[y², 2y]`.
    Y2And2Y,
    /// `R[y + x f]` for `f ∈ N(R[y])`.
    YPlusXF(Poly),
}

impl Z4Ring {
    pub fn token(&self) -> &'static str {
        match self {
            Z4Ring::FullRing => "FULL_RING",
            Z4Ring::X2And2X => "X2_2X",
            Z4Ring::Y2And2Y => "Y2_2Y",
            Z4Ring::YPlusXF(_) => "Y_PLUS_XF",
        }
    }

    pub fn generators(&self) -> Vec<Poly> {
        let p = |c: &[i64]| Poly::from_coeffs(Z4, c);
        let y = p(&[0, 1, -1]);
        match self {
            Z4Ring::FullRing => vec![p(&[0, 1])],
            Z4Ring::X2And2X => vec![p(&[0, 0, 1]), p(&[0, 2])],
            Z4Ring::Y2And2Y => vec![&y * &y, y.scale(2)],
            Z4Ring::YPlusXF(f) => vec![&y + &(&p(&[0, 1]) * f)],
        }
    }

    pub fn catalog_module(&self, d: usize, w: usize) -> Result<CoeffModule> {
        span_module(Z4, &self.generators(), d, w)
    }
}

impl fmt::Display for Z4Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Z4Ring::FullRing => write!(f, "R[x]"),
            Z4Ring::X2And2X => write!(f, "R[x^2, 2x]"),
            Z4Ring::Y2And2Y => write!(f, "R[y^2, 2y]"),
            Z4Ring::YPlusXF(g) => write!(f, "R[y + x*({g})]"),
        }
    }
}

/// Classifies the subgroup generated by `h` by its structure, then checks
/// the computed fixed module against the catalog ring at `(d, w)`.
pub fn identify_z4(h: &SubgroupSpec, d: usize, w: usize) -> Result<Z4Ring> {
    if h.modulus.get() != 4 {
        return Err(Error::NotZ4(h.modulus.get()));
    }
    let gens: Vec<GAut4> = h
        .generators
        .iter()
        .map(|s| GAut4::from_endo(s).expect("validated automorphism"))
        .collect();
    let group = closure(&gens);
    let nontrivial_alpha = group.alpha_part().len() > 1;
    let verdict = if !group.has_beta() {
        if nontrivial_alpha {
            Z4Ring::X2And2X
        } else {
            Z4Ring::FullRing
        }
    } else if nontrivial_alpha {
        Z4Ring::Y2And2Y
    } else {
        let beta = group
            .elements()
            .iter()
            .find(|s| s.kind() == Kind::Beta)
            .expect("has a beta");
        if !gz4::is_prime_fixed(beta.f()) {
            return Err(Error::InternalCheckFailed(format!(
                "{beta} generates a group meeting A trivially but has order 4"
            )));
        }
        Z4Ring::YPlusXF(beta.f().clone())
    };
    let fixed = fixed_module(h, d)?;
    let catalog = verdict.catalog_module(d, w)?;
    if !modules_equal(&fixed, &catalog)? {
        return Err(Error::InconsistentWithCatalog {
            catalog: verdict.to_string(),
            degree: d,
            work: w,
        });
    }
    Ok(verdict)
}

/// `Π_{h ∈ H} (u_h x + a_h)`, after checking that `H` is a group.
pub fn norm_of_x(h: &[BasicAut]) -> Result<Poly> {
    let first = h.first().ok_or(Error::NotAGroup)?;
    let m = first.modulus();
    let set: std::collections::BTreeSet<BasicAut> = h.iter().copied().collect();
    if set.len() != h.len() {
        return Err(Error::BadInput("repeated group element".into()));
    }
    for s in &set {
        for t in &set {
            if !set.contains(&s.checked_mul(t)?) {
                return Err(Error::NotAGroup);
            }
        }
    }
    Ok(set.iter().fold(Poly::one(m), |acc, s| {
        &acc * &Poly::from_u64s(m, &[s.a(), s.u()])
    }))
}

/// Checks `Z_p[x]^{B(Z_p)} = Z_p[(x^p - x)^{p-1}]` up to degree `d`.
pub fn samuel_check(p: u64, d: usize) -> Result<bool> {
    if ![2, 3, 5].contains(&p) {
        return Err(Error::BadInput(format!("prime {p} outside {{2, 3, 5}}")));
    }
    let m = Modulus::new(p)?;
    let gens: Vec<Endo> = crate::basic::elements(m).iter().map(BasicAut::to_endo).collect();
    let fixed = fixed_module(&SubgroupSpec::new(m, gens)?, d)?;
    let base = &Poly::monomial(m, 1, p as usize) - &Poly::x(m);
    let invariant = base.pow(p as u32 - 1);
    let span = span_module(m, &[invariant], d, d)?;
    modules_equal(&fixed, &span)
}
